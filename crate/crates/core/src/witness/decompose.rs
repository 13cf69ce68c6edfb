//! Any band target as a sum of two evaluations.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_target, image_witness, order_in_range, verify_bundle, BundleMode, WitnessBundle};
use crate::algebra::{CPoly, NcPoly, SymId};
use crate::error::WitnessError;
use crate::search::nonvanishing_point;
use crate::triangular::UTMatrix;

/// Writes `target = B + C` with both leading bands nowhere zero, `B`
/// carrying every higher diagonal, and finds single witnesses for `B` and
/// `C`.
pub fn decompose_sum(
    p: &NcPoly,
    n: usize,
    target: &UTMatrix,
    seed: u64,
) -> Result<WitnessBundle, WitnessError> {
    let (r, _) = order_in_range(p, n)?;
    check_target(target, n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut first = target.clone();
    let mut second = UTMatrix::zeros(n);
    for s in 1..=n - r {
        let x = SymId::entry(s, r + s, 1);
        let a = target.get(s, r + s);
        let polys = [&CPoly::constant(a.clone()) - &CPoly::var(x), CPoly::var(x)];
        let point = nonvanishing_point(&polys, &[x], rng.gen())?;
        let b = point.values[&x].clone();
        second.set(s, r + s, a - &b);
        first.set(s, r + s, b);
    }
    debug_assert!((1..=n - r).all(|s| !first.get(s, r + s).is_zero() && !second.get(s, r + s).is_zero()));

    let u = image_witness(p, n, &first, rng.gen())?;
    let v = image_witness(p, n, &second, rng.gen())?;
    let mut bundle = WitnessBundle {
        poly: p.clone(),
        n,
        mode: BundleMode::Sum,
        tuples: vec![u.tuples.into_iter().next().unwrap(), v.tuples.into_iter().next().unwrap()],
        target: target.clone(),
        verified: false,
        seed,
    };
    if !verify_bundle(&mut bundle) {
        return Err(WitnessError::InternalVerificationFailure("summands do not add up to the target".into()));
    }
    Ok(bundle)
}
