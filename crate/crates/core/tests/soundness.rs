//! Every returned witness reproduces its target, across sizes and orders.

mod common;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_bundle_ok, random_band_target};
use ut_waring::algebra::parse_ncpoly;
use ut_waring::structure::{compute_order, DEFAULT_ORDER_CAP};
use ut_waring::triangular::{band_check, mat_eval, BandSpec};
use ut_waring::witness::{
    decompose_sum, image_witness, image_witness_with_plan, verify_bundle, witness_corner_case, BundleMode,
};

const CASES: usize = 100;

fn run_config(texts: &[&str], n: usize, r: usize, seed: u64) {
    let polys: Vec<_> = texts.iter().map(|t| parse_ncpoly(t).unwrap()).collect();
    for p in &polys {
        assert_eq!(compute_order(p, DEFAULT_ORDER_CAP).unwrap().order, r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..CASES {
        let p = &polys[i % polys.len()];
        let a = random_band_target(&mut rng, n, r, false);
        let mut b = decompose_sum(p, n, &a, rng.gen()).unwrap_or_else(|e| panic!("{p} n={n}: {e}"));
        assert_eq!(b.mode, BundleMode::Sum);
        assert!(b.verified && verify_bundle(&mut b) && oracle_bundle_ok(&b));
        for tuple in &b.tuples {
            assert!(band_check(&mat_eval(p, tuple).unwrap(), BandSpec { t: r - 1 }));
        }
        if r + 2 == n {
            let mut c = witness_corner_case(p, n, &a, rng.gen()).unwrap();
            assert!(verify_bundle(&mut c) && oracle_bundle_ok(&c));
        }
    }
}

#[test]
fn order_two_size_five() {
    run_config(&["[x1,x2]^2", "[x1,x2]*[x3,x1] + [x2,x3]^2"], 5, 2, 1);
}

#[test]
fn order_two_size_six() {
    run_config(&["[x1,x2]^2", "[x1,x2]*[x3,x1]"], 6, 2, 2);
}

#[test]
fn order_three_size_six() {
    run_config(&["[x1,x2]^3", "[x1,x2]*[x2,x3]*[x1,x3]"], 6, 3, 3);
}

#[test]
fn order_two_size_four() {
    run_config(&["[x1,x2]^2", "[x1,x2]^2 + 2*[x1,x2]*[x2,x1]*x1"], 4, 2, 4);
}

#[test]
fn order_three_size_five() {
    run_config(&["[x1,x2]^3", "[x1,x2]^2*[x1,x3]"], 5, 3, 5);
}

#[test]
fn leading_coefficients_stay_nonzero() {
    let p = parse_ncpoly("[x1,x2]*[x2,x3]*[x1,x3]").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let a = random_band_target(&mut rng, 6, 3, true);
        let (b, plan) = image_witness_with_plan(&p, 6, &a, rng.gen()).unwrap();
        assert!(b.verified);
        assert!(plan.f_table.values().all(|v| !v.is_zero()));
        assert_eq!(plan.step_order.len(), 6);
        let mut sorted = plan.step_order.clone();
        sorted.sort_by_key(|&(s, t)| (t - s, s));
        assert_eq!(sorted, plan.step_order);
    }
}

#[test]
fn same_seed_same_witness() {
    let p = parse_ncpoly("[x1,x2]^2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_band_target(&mut rng, 6, 2, true);
    assert_eq!(image_witness(&p, 6, &a, 42).unwrap(), image_witness(&p, 6, &a, 42).unwrap());
    assert_eq!(decompose_sum(&p, 6, &a, 42).unwrap(), decompose_sum(&p, 6, &a, 42).unwrap());
}
