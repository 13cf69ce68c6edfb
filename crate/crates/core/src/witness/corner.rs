//! Single witnesses when the order is `n - 2`.
//!
//! The target then has only three free entries, `(1, n-1)`, `(2, n)` and
//! `(1, n)`, and a handful of off-diagonal unknowns suffices. With
//! `(1, n-1)` nonzero the unknowns are `(1,2)`, `(n-1,n)` and `(n-2,n)`;
//! otherwise row 1 starts with a jump `(1,3)` and `(2,3)` feeds `(2, n)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_target, single_bundle, symbols_of, Layout, WitnessBundle};
use crate::algebra::{CPoly, Monomial, NcPoly, Rational, SymId};
use crate::error::WitnessError;
use crate::search::{nonvanishing_point, subset_tuple_point};
use crate::structure::{coefficient_poly, compute_order};
use crate::triangular::UTMatrix;

fn first_superdiag(rows: impl Iterator<Item = usize>, m: usize) -> BTreeSet<SymId> {
    rows.flat_map(|j| (1..=m).map(move |v| SymId::entry(j, j + 1, v))).collect()
}

fn coeff(poly: &CPoly, factors: &[SymId], within: &BTreeSet<SymId>) -> CPoly {
    poly.coefficient(&Monomial::from_factors(factors.iter().map(|&s| (s, 1))), within)
}

fn value(poly: &CPoly, point: &BTreeMap<SymId, Rational>) -> Result<Rational, WitnessError> {
    poly.eval(point)
        .map_err(|s| WitnessError::InternalVerificationFailure(format!("unassigned symbol {s}")))
}

/// A single witness `p(u) = target` for any target in the band when `p` has
/// order `n - 2`.
pub fn witness_corner_case(
    p: &NcPoly,
    n: usize,
    target: &UTMatrix,
    seed: u64,
) -> Result<WitnessBundle, WitnessError> {
    let report = compute_order(p, p.degree().max(1))?;
    let r = report.order;
    if r + 2 != n {
        return Err(WitnessError::OrderMismatch { r, expected: n.saturating_sub(2) });
    }
    if n < 4 {
        return Err(WitnessError::OrderOutOfRange { r, n });
    }
    check_target(target, n, r)?;
    let word = report.certificate.expect("positive order has a certificate");
    let (first, last) = (word.letters()[0], word.letters()[r - 1]);
    let m = p.var_count();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag = subset_tuple_point(&coefficient_poly(p, &word), r + 1, m, n, rng.gen())?;
    let mut layout = Layout::new(p, n, diag);
    let (a_top, a_right, a_corner) = (target.get(1, n - 1), target.get(2, n), target.get(1, n));

    if !a_top.is_zero() {
        let x12 = SymId::entry(1, 2, first);
        let x_last = SymId::entry(n - 1, n, last);
        let x_jump = SymId::entry(n - 2, n, last);
        let interior = first_superdiag(2..=n - 2, m);
        let unknowns = BTreeSet::from([x12, x_last, x_jump]);
        let mut symbolic = interior.clone();
        symbolic.extend(&unknowns);

        let top = coeff(&layout.entry(1, n - 1, &symbolic), &[x12], &unknowns);
        let right = coeff(&layout.entry(2, n, &symbolic), &[x_last], &unknowns);
        let corner = layout.entry(1, n, &symbolic);
        let through_jump = coeff(&corner, &[x12, x_jump], &unknowns);
        let through_last = coeff(&corner, &[x12, x_last], &unknowns);

        let polys = [top, right, through_jump];
        let point = nonvanishing_point(&polys, &symbols_of(&polys), rng.gen())?;
        layout.decide(&interior, &point.values);
        let f: Vec<Rational> = polys.iter().map(|q| value(q, &layout.values)).collect::<Result<_, _>>()?;
        let alpha = value(&through_last, &layout.values)?;

        let v12 = a_top / &f[0];
        let v_last = a_right / &f[1];
        let v_jump = (a_corner - &alpha * &v12 * &v_last) / (&f[2] * &v12);
        layout.decide(&unknowns, &BTreeMap::from([(x12, v12), (x_last, v_last), (x_jump, v_jump)]));
    } else {
        let x23 = SymId::entry(2, 3, first);
        let x13 = SymId::entry(1, 3, first);
        let interior = first_superdiag(3..=n - 1, m);
        let unknowns = BTreeSet::from([x13, x23]);
        let mut symbolic = interior.clone();
        symbolic.extend(&unknowns);

        let right = coeff(&layout.entry(2, n, &symbolic), &[x23], &unknowns);
        let corner = coeff(&layout.entry(1, n, &symbolic), &[x13], &unknowns);
        let polys = [right, corner];
        let point = nonvanishing_point(&polys, &symbols_of(&polys), rng.gen())?;
        layout.decide(&interior, &point.values);
        let g: Vec<Rational> = polys.iter().map(|q| value(q, &layout.values)).collect::<Result<_, _>>()?;
        layout.decide(&unknowns, &BTreeMap::from([(x23, a_right / &g[0]), (x13, a_corner / &g[1])]));
    }
    single_bundle(p, layout.assemble(), target, seed)
}
