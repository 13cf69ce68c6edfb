//! A scaled-down run of the acceptance checks, used by the `selftest`
//! command.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::int;
use crate::algebra::{parse_ncpoly, NcPoly, Rational, SymId, Word};
use crate::search::{constrained_linear_solve, AffineForm};
use crate::structure::{compute_order, DEFAULT_ORDER_CAP};
use crate::triangular::{band_check, mat_eval, sym_eval, BandSpec, UTMatrix};
use crate::witness::{decompose_sum, image_witness, witness_corner_case};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub millis: u128,
}

impl CheckRow {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Random element of the band below which entries vanish, entries in
/// `[-9, 9]`. With `nonzero_band` the leading band avoids zero.
pub fn random_band_target(rng: &mut impl Rng, n: usize, r: usize, nonzero_band: bool) -> UTMatrix {
    let mut a = UTMatrix::zeros(n);
    for s in 1..=n {
        for t in s + r..=n {
            let v = if nonzero_band && t == s + r {
                let v = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) {
                    -v
                } else {
                    v
                }
            } else {
                rng.gen_range(-9..=9)
            };
            a.set(s, t, int(v));
        }
    }
    a
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

/// Random polynomial with at most `m` variables and degree at most `d`.
pub fn random_ncpoly(rng: &mut impl Rng, m: usize, d: usize) -> NcPoly {
    loop {
        let count = rng.gen_range(1..=5);
        let terms = (0..count).map(|_| {
            let len = rng.gen_range(1..=d);
            let w = Word::new((0..len).map(|_| rng.gen_range(1..=m)).collect::<Vec<_>>());
            (w, int(rng.gen_range(-9..=9)))
        });
        let p = NcPoly::from_terms(terms.collect::<Vec<_>>()).expect("no empty words");
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random instance of the constrained solve with its preconditions met.
pub fn random_solve_instance(rng: &mut impl Rng) -> (AffineForm, Rational, Vec<AffineForm>, SymId) {
    let vars: Vec<SymId> = (1..=rng.gen_range(1..=5)).map(|i| SymId::entry(1, i + 1, 1)).collect();
    let pivot = vars[rng.gen_range(0..vars.len())];
    let side_count = rng.gen_range(0..=6);
    let mut form = |force: Option<SymId>| loop {
        let f = AffineForm::linear(vars.iter().map(|&v| (v, int(rng.gen_range(-9..=9)))));
        if force.map_or(!f.coeffs.is_empty(), |s| !f.coeff(&s).is_zero()) {
            return f;
        }
    };
    let target = form(Some(pivot));
    let side = (0..side_count).map(|_| form(None)).collect();
    let mut b = 0;
    while b == 0 {
        b = rng.gen_range(-9..=9);
    }
    (target, int(b), side, pivot)
}

fn count(total: usize, mut f: impl FnMut(usize) -> bool) -> usize {
    (0..total).filter(|&i| f(i)).count()
}

fn timed(name: &'static str, total: usize, f: impl FnOnce() -> usize) -> CheckRow {
    let start = Instant::now();
    let passed = f();
    CheckRow { name, passed, total, millis: start.elapsed().as_millis() }
}

/// Runs every check with `trials` random cases where a check is random.
pub fn run(trials: usize, seed: u64) -> Vec<CheckRow> {
    let sq = parse_ncpoly("[x1,x2]^2").expect("literal");
    let cube = parse_ncpoly("[x1,x2]^3").expect("literal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();

    rows.push(timed("order of commutator powers", 3, || {
        count(3, |i| {
            let p = NcPoly::commutator(&NcPoly::var(1), &NcPoly::var(2)).pow(i as u32 + 1).expect("positive");
            compute_order(&p, DEFAULT_ORDER_CAP).is_ok_and(|rep| rep.order == i + 1)
        })
    }));

    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    rows.push(timed("sum decomposition", trials, || {
        count(trials, |i| {
            let mut r = ChaCha8Rng::seed_from_u64(seeds[i]);
            let (p, n, ord) = if i % 4 == 3 { (&cube, 6, 3) } else { (&sq, 5, 2) };
            let a = random_band_target(&mut r, n, ord, false);
            decompose_sum(p, n, &a, seeds[i]).is_ok_and(|b| b.verified)
        })
    }));

    rows.push(timed("single witness", trials, || {
        count(trials, |i| {
            let mut r = ChaCha8Rng::seed_from_u64(seeds[i] ^ 1);
            let a = random_band_target(&mut r, 6, 2, true);
            image_witness(&sq, 6, &a, seeds[i]).is_ok_and(|b| b.verified)
        })
    }));

    rows.push(timed("order n-2 witness", trials, || {
        count(trials, |i| {
            let mut r = ChaCha8Rng::seed_from_u64(seeds[i] ^ 2);
            let (p, n) = if i % 2 == 0 { (&sq, 4) } else { (&cube, 5) };
            let mut a = random_band_target(&mut r, n, n - 2, false);
            if i % 3 == 0 {
                a.set(1, n - 1, Rational::zero());
            }
            witness_corner_case(p, n, &a, seeds[i]).is_ok_and(|b| b.verified)
        })
    }));

    rows.push(timed("image stays in band", trials + 1, || {
        let sym = sym_eval(&sq, 5);
        let symbolic = (1..=5).all(|s| (s..=(s + 1).min(5)).all(|t| sym.get(s, t).is_zero()));
        usize::from(symbolic)
            + count(trials, |_| {
                let u = [random_matrix(&mut rng, 5), random_matrix(&mut rng, 5)];
                band_check(&mat_eval(&sq, &u).expect("arity"), BandSpec { t: 1 })
            })
    }));

    let obstruction_trials = trials * 5;
    rows.push(timed("obstruction pattern never occurs", obstruction_trials, || {
        count(obstruction_trials, |_| {
            let u = [random_matrix(&mut rng, 5), random_matrix(&mut rng, 5)];
            let a = mat_eval(&sq, &u).expect("arity");
            !(!a.get(1, 3).is_zero() && a.get(2, 4).is_zero() && !a.get(3, 5).is_zero())
        })
    }));

    rows.push(timed("symbolic and numeric evaluation agree", trials, || {
        count(trials, |_| {
            let p = random_ncpoly(&mut rng, 3, 4);
            let n = rng.gen_range(1..=4);
            let u: Vec<UTMatrix> = (0..p.var_count()).map(|_| random_matrix(&mut rng, n)).collect();
            let point = (1..=n)
                .flat_map(|row| (row..=n).map(move |col| (row, col)))
                .flat_map(|(row, col)| {
                    u.iter().enumerate().map(move |(v, m)| (SymId::at(row, col, v + 1), m.get(row, col).clone()))
                })
                .collect();
            sym_eval(&p, n).specialize(&point).ok() == mat_eval(&p, &u).ok()
        })
    }));

    let solve_trials = trials * 10;
    rows.push(timed("constrained linear solve", solve_trials, || {
        count(solve_trials, |i| {
            let (target, b, side, pivot) = random_solve_instance(&mut rng);
            constrained_linear_solve(&target, &b, &side, pivot, i as u64).is_ok_and(|(pt, _)| {
                target.eval(&pt.values).ok() == Some(b.clone())
                    && side.iter().all(|f| f.eval(&pt.values).is_ok_and(|v| !v.is_zero()))
            })
        })
    }));

    const CORPUS: [&str; 6] =
        ["[x1,x2]^2", "x1*x2 - x2*x1", "-3/2*x1*x2 + 7*x2", "[x1,[x2,x3]]", "(x1 + x2)^3", "[x1,x2]*[x3,x1]"];
    rows.push(timed("parser round trip", CORPUS.len(), || {
        count(CORPUS.len(), |i| {
            parse_ncpoly(CORPUS[i]).is_ok_and(|p| parse_ncpoly(&p.to_string()).ok() == Some(p))
        })
    }));
    rows
}

pub fn format_table(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "{:<4} {:<width$}  {:>5}/{:<5} {:>7} ms\n",
            if r.ok() { "PASS" } else { "FAIL" },
            r.name,
            r.passed,
            r.total,
            r.millis,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let rows = run(2, 0);
        assert!(rows.iter().all(CheckRow::ok), "{}", format_table(&rows));
        assert_eq!(rows.len(), 9);
    }
}
