mod common;

use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{assignment, dense_eq, oracle_eval, path_sum_entry, random_matrix, random_ncpoly};
use ut_waring::algebra::rational::int;
use ut_waring::algebra::{parse_ncpoly, CPoly, NcPoly, SymId};
use ut_waring::search::{nonvanishing_point, subset_tuple_point};
use ut_waring::structure::{
    coefficient_poly, commutative_image, compute_order, instantiate_slots, DEFAULT_ORDER_CAP,
};
use ut_waring::triangular::{entry_polynomial, mat_eval, sym_eval, UTMatrix};

fn inputs(rng: &mut ChaCha8Rng, count: usize, n: usize) -> Vec<UTMatrix> {
    (0..count).map(|_| random_matrix(rng, n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn specialization_commutes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ncpoly(&mut rng, 3, 4);
        let n = rng.gen_range(1..=4);
        let u = inputs(&mut rng, p.var_count(), n);
        let numeric = mat_eval(&p, &u).unwrap();
        prop_assert_eq!(sym_eval(&p, n).specialize(&assignment(&u)).unwrap(), numeric.clone());
        prop_assert!(dense_eq(&oracle_eval(&p, &u), &numeric));
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ncpoly(&mut rng, 3, 3);
        let q = random_ncpoly(&mut rng, 3, 3);
        let n = rng.gen_range(1..=4);
        let u = inputs(&mut rng, 3, n);
        let at = |f: &NcPoly| mat_eval(f, &u[..f.var_count()]).unwrap();
        let sum = &p + &q;
        if !sum.is_zero() {
            prop_assert_eq!(at(&sum), &at(&p) + &at(&q));
        }
        prop_assert_eq!(at(&(&p * &q)), &at(&p) * &at(&q));
    }

    #[test]
    fn diagonal_is_the_commutative_image(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ncpoly(&mut rng, 3, 4);
        let n = rng.gen_range(1..=4);
        let u = inputs(&mut rng, p.var_count(), n);
        let value = mat_eval(&p, &u).unwrap();
        let image = commutative_image(&p);
        for s in 1..=n {
            let point: BTreeMap<SymId, _> =
                u.iter().enumerate().map(|(v, m)| (SymId::diag(1, v + 1), m.get(s, s).clone())).collect();
            prop_assert_eq!(&image.eval(&point).unwrap(), value.get(s, s));
        }
    }

    #[test]
    fn single_entries_match_full_expansion(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ncpoly(&mut rng, 3, 4);
        let n = rng.gen_range(1..=4);
        let sym = sym_eval(&p, n);
        for s in 1..=n {
            for t in s..=n {
                prop_assert_eq!(&entry_polynomial(&p, n, s, t, &BTreeMap::new()), sym.get(s, t));
            }
        }
    }

    #[test]
    fn partial_substitution_commutes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ncpoly(&mut rng, 2, 4);
        let n = rng.gen_range(2..=4);
        let u = inputs(&mut rng, p.var_count(), n);
        let fixed: BTreeMap<SymId, _> = assignment(&u).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        let whole = sym_eval(&p, n).get(1, n).substitute(&fixed);
        prop_assert_eq!(entry_polynomial(&p, n, 1, n, &fixed), whole);
    }

    #[test]
    fn entries_are_path_sums_of_coefficient_polynomials(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ncpoly(&mut rng, 2, 4);
        let n = rng.gen_range(1..=4);
        let sym = sym_eval(&p, n);
        for s in 1..=n {
            for t in s..=n {
                prop_assert_eq!(&path_sum_entry(&p, s, t), sym.get(s, t));
            }
        }
    }

    #[test]
    fn nonvanishing_points_are_deterministic_and_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars: Vec<SymId> = (1..=3).map(|v| SymId::diag(1, v)).collect();
        let polys: Vec<CPoly> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let mut f = CPoly::one();
                for _ in 0..rng.gen_range(1..=3) {
                    let a = vars[rng.gen_range(0..3)];
                    let b = vars[rng.gen_range(0..3)];
                    let linear = &(&CPoly::var(a) - &CPoly::var(b).scale(&int(rng.gen_range(0..=2))))
                        - &CPoly::constant(int(rng.gen_range(0..=3)));
                    if !linear.is_zero() {
                        f = &f * &linear;
                    }
                }
                f
            })
            .collect();
        let pt = nonvanishing_point(&polys, &vars, seed).unwrap();
        prop_assert_eq!(&pt, &nonvanishing_point(&polys, &vars, seed).unwrap());
        for f in &polys {
            prop_assert!(!f.eval(&pt.values).unwrap().is_zero());
        }
    }
}

#[test]
fn order_report_invariants_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        // Products of commutators push the order up.
        let mut p = random_ncpoly(&mut rng, 3, 2);
        for _ in 0..rng.gen_range(0..=2) {
            let a = NcPoly::var(rng.gen_range(1..=3));
            let b = NcPoly::var(rng.gen_range(1..=3));
            p = &p * &NcPoly::commutator(&a, &b);
        }
        if p.is_zero() {
            continue;
        }
        let rep = compute_order(&p, DEFAULT_ORDER_CAP).unwrap();
        let r = rep.order;
        assert!(!sym_eval(&p, r + 1).is_zero());
        if r >= 1 {
            assert!(commutative_image(&p).is_zero());
            for k in 1..=r {
                assert!(sym_eval(&p, k).is_zero(), "downward closure for {p}");
            }
            let w = rep.certificate.unwrap();
            assert_eq!(w.len(), r);
            assert!(!coefficient_poly(&p, &w).is_zero());
        }
        // The image of T_n lies in the band below the order.
        if r > 1 {
            let n = r + 2;
            let sym = sym_eval(&p, n);
            for s in 1..=n {
                for t in s..(s + r).min(n + 1) {
                    assert!(sym.get(s, t).is_zero(), "{p} at ({s},{t})");
                }
            }
        }
    }
}

#[test]
fn subset_tuples_are_nonzero_on_every_subset() {
    for (text, n) in [("[x1,x2]^2", 6), ("[x1,x2]^3", 6), ("[x1,x2]*[x3,x1]", 5)] {
        let p = parse_ncpoly(text).unwrap();
        let rep = compute_order(&p, DEFAULT_ORDER_CAP).unwrap();
        let poly = coefficient_poly(&p, rep.certificate.as_ref().unwrap());
        let tuples = subset_tuple_point(&poly, rep.order + 1, p.var_count(), n, 9).unwrap();
        let point: BTreeMap<SymId, _> = tuples
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().enumerate().map(move |(v, x)| (SymId::diag(j + 1, v + 1), x.clone())))
            .collect();
        use itertools::Itertools;
        for subset in (1..=n).combinations(rep.order + 1) {
            assert!(!instantiate_slots(&poly, &subset).eval(&point).unwrap().is_zero());
        }
    }
}

#[test]
fn obstruction_pattern_never_occurs() {
    for r in [2u32, 3] {
        let n = r as usize + 3;
        let p = NcPoly::commutator(&NcPoly::var(1), &NcPoly::var(2)).pow(r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(r));
        for _ in 0..500 {
            let u = inputs(&mut rng, 2, n);
            let a = mat_eval(&p, &u).unwrap();
            let r = r as usize;
            let pattern =
                !a.get(1, r + 1).is_zero() && a.get(2, r + 2).is_zero() && !a.get(3, r + 3).is_zero();
            assert!(!pattern);
        }
    }
}
