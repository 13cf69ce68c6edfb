//! Reference computations that share no code with the evaluation paths of
//! the library: dense square matrices and explicit path sums.

#![allow(dead_code)]

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng;

use ut_waring::algebra::rational::int;
use ut_waring::algebra::{CPoly, Monomial, NcPoly, Rational, SymId, Word};
use ut_waring::structure::{coefficient_poly, commutative_image, instantiate_slots};
use ut_waring::triangular::UTMatrix;
use ut_waring::witness::WitnessBundle;

pub type Dense = Vec<Vec<Rational>>;

pub fn dense(u: &UTMatrix) -> Dense {
    let n = u.n();
    (1..=n)
        .map(|i| (1..=n).map(|j| if j >= i { u.get(i, j).clone() } else { Rational::zero() }).collect())
        .collect()
}

fn dense_identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `p` at the inputs, one full product per word.
pub fn oracle_eval(p: &NcPoly, inputs: &[UTMatrix]) -> Dense {
    let n = inputs[0].n();
    let mats: Vec<Dense> = inputs.iter().map(dense).collect();
    let mut total = vec![vec![Rational::zero(); n]; n];
    for (w, c) in p.terms() {
        let mut prod = dense_identity(n);
        for &l in w.letters() {
            prod = dense_mul(&prod, &mats[l - 1]);
        }
        for i in 0..n {
            for j in 0..n {
                total[i][j] += c * &prod[i][j];
            }
        }
    }
    total
}

pub fn dense_eq(d: &Dense, u: &UTMatrix) -> bool {
    let n = u.n();
    d.len() == n
        && (0..n).all(|i| (0..n).all(|j| if j >= i { &d[i][j] == u.get(i + 1, j + 1) } else { d[i][j].is_zero() }))
}

/// The bundle's tuples evaluated and summed independently of the library.
pub fn oracle_bundle_ok(b: &WitnessBundle) -> bool {
    let n = b.n;
    let mut total = vec![vec![Rational::zero(); n]; n];
    for t in &b.tuples {
        let v = oracle_eval(&b.poly, t);
        for i in 0..n {
            for j in 0..n {
                total[i][j] += &v[i][j];
            }
        }
    }
    dense_eq(&total, &b.target)
}

/// Entry `(s, t)` of generic `p(u)` as a sum over strict paths of
/// coefficient polynomials times strict-step symbols.
pub fn path_sum_entry(p: &NcPoly, s: usize, t: usize) -> CPoly {
    if s == t {
        return commutative_image(p).rename(|z| SymId::diag(s, z.var));
    }
    let m = p.var_count();
    let mut total = CPoly::zero();
    for k in 1..=t - s {
        for inner in (s + 1..t).combinations(k - 1) {
            let mut path = vec![s];
            path.extend(inner);
            path.push(t);
            for w in Word::all_of_length(m, k) {
                let coeff = coefficient_poly(p, &w);
                if coeff.is_zero() {
                    continue;
                }
                let steps = Monomial::from_factors(
                    w.letters().iter().enumerate().map(|(i, &v)| (SymId::entry(path[i], path[i + 1], v), 1)),
                );
                total = &total + &(&instantiate_slots(&coeff, &path) * &CPoly::term(steps, Rational::one()));
            }
        }
    }
    total
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> UTMatrix {
    let mut a = UTMatrix::zeros(n);
    for s in 1..=n {
        for t in s..=n {
            a.set(s, t, int(rng.gen_range(-9..=9)));
        }
    }
    a
}

pub fn random_band_target(rng: &mut impl Rng, n: usize, r: usize, nonzero_band: bool) -> UTMatrix {
    let mut a = UTMatrix::zeros(n);
    for s in 1..=n {
        for t in s + r..=n {
            let mut v = rng.gen_range(-9..=9);
            while nonzero_band && t == s + r && v == 0 {
                v = rng.gen_range(-9..=9);
            }
            a.set(s, t, int(v));
        }
    }
    a
}

pub fn random_ncpoly(rng: &mut impl Rng, m: usize, d: usize) -> NcPoly {
    loop {
        let terms: Vec<(Word, Rational)> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let len = rng.gen_range(1..=d);
                (Word::new((0..len).map(|_| rng.gen_range(1..=m)).collect::<Vec<_>>()), int(rng.gen_range(-9..=9)))
            })
            .collect();
        let p = NcPoly::from_terms(terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// Values of `u` as a symbol assignment for generic matrices.
pub fn assignment(inputs: &[UTMatrix]) -> std::collections::BTreeMap<SymId, Rational> {
    let mut out = std::collections::BTreeMap::new();
    for (v, u) in inputs.iter().enumerate() {
        let n = u.n();
        for i in 1..=n {
            for j in i..=n {
                out.insert(SymId::at(i, j, v + 1), u.get(i, j).clone());
            }
        }
    }
    out
}
