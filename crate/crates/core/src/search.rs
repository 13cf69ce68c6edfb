//! Constructive nonvanishing: points where finitely many nonzero
//! polynomials are all nonzero, and a linear solve that keeps side forms
//! nonzero.
//!
//! Every search first tries seeded uniform draws from `{1, ..., 64}` and
//! then falls back to enumerating the grid `{1, ..., D+1}^vars`, where `D`
//! is the total degree of the product of the constraints. A nonzero
//! polynomial of degree `D` cannot vanish on all of that grid, so the
//! fallback always terminates with a point.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::int;
use crate::algebra::{CPoly, Monomial, Rational, SymId};
use crate::error::SearchError;
use crate::structure::instantiate_slots;

const RANDOM_RANGE: i64 = 64;
const RANDOM_ATTEMPTS: usize = 32;

/// A total assignment over a declared set of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointAssignment {
    pub values: BTreeMap<SymId, Rational>,
}

impl PointAssignment {
    pub fn get(&self, sym: &SymId) -> Option<&Rational> {
        self.values.get(sym)
    }
}

/// `sum coeffs[s] * s + constant`, with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: BTreeMap<SymId, Rational>,
    pub constant: Rational,
}

impl AffineForm {
    pub fn new(coeffs: impl IntoIterator<Item = (SymId, Rational)>, constant: Rational) -> Self {
        let mut map = BTreeMap::new();
        for (s, c) in coeffs {
            let slot = map.entry(s).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        AffineForm { coeffs: map, constant }
    }

    pub fn linear(coeffs: impl IntoIterator<Item = (SymId, Rational)>) -> Self {
        Self::new(coeffs, Rational::zero())
    }

    /// Reads a polynomial of total degree at most one.
    pub fn from_cpoly(p: &CPoly) -> Option<AffineForm> {
        let mut coeffs = Vec::new();
        let mut constant = Rational::zero();
        for (m, c) in p.terms() {
            match m.factors() {
                [] => constant = c.clone(),
                [(s, 1)] => coeffs.push((*s, c.clone())),
                _ => return None,
            }
        }
        Some(Self::new(coeffs, constant))
    }

    pub fn to_cpoly(&self) -> CPoly {
        let mut p = CPoly::constant(self.constant.clone());
        for (s, c) in &self.coeffs {
            p.add_term(Monomial::var(*s), c.clone());
        }
        p
    }

    pub fn coeff(&self, sym: &SymId) -> Rational {
        self.coeffs.get(sym).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, point: &BTreeMap<SymId, Rational>) -> Result<Rational, SymId> {
        let mut total = self.constant.clone();
        for (s, c) in &self.coeffs {
            total += c * point.get(s).ok_or(*s)?;
        }
        Ok(total)
    }
}

fn all_nonzero(polys: &[CPoly], point: &BTreeMap<SymId, Rational>) -> bool {
    polys.iter().all(|p| p.eval(point).is_ok_and(|v| !v.is_zero()))
}

/// A point of `vars` at which every polynomial in `polys` is nonzero.
///
/// Deterministic for a fixed seed. Symbols that occur in `polys` must all
/// be listed in `vars`; listed symbols that occur nowhere still get values.
pub fn nonvanishing_point(
    polys: &[CPoly],
    vars: &[SymId],
    seed: u64,
) -> Result<PointAssignment, SearchError> {
    if let Some(index) = polys.iter().position(CPoly::is_zero) {
        return Err(SearchError::ZeroPolynomialInput { index });
    }
    let vars: Vec<SymId> = vars.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let listed: BTreeSet<SymId> = vars.iter().copied().collect();
    for p in polys {
        if let Some(s) = p.symbols().into_iter().find(|s| !listed.contains(s)) {
            return Err(SearchError::UncoveredSymbol(s));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let point: BTreeMap<SymId, Rational> =
            vars.iter().map(|&s| (s, int(rng.gen_range(1..=RANDOM_RANGE)))).collect();
        if all_nonzero(polys, &point) {
            return Ok(PointAssignment { values: point });
        }
    }

    let degree: u64 = polys.iter().map(|p| u64::from(p.total_degree())).sum();
    grid_search(polys, &vars, degree + 1)
        .ok_or_else(|| SearchError::Internal("grid search exhausted a degree-bound grid".into()))
}

/// Enumerates `{1, ..., side}^vars` in odometer order.
fn grid_search(polys: &[CPoly], vars: &[SymId], side: u64) -> Option<PointAssignment> {
    let mut digits = vec![1u64; vars.len()];
    loop {
        let point: BTreeMap<SymId, Rational> =
            vars.iter().zip(&digits).map(|(&s, &d)| (s, int(d as i64))).collect();
        if all_nonzero(polys, &point) {
            return Some(PointAssignment { values: point });
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return None;
            }
            digits[i] += 1;
            if digits[i] <= side {
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

/// Points `c_1, ..., c_n` in `Q^m` such that `poly`, a polynomial in the
/// slot symbols of `slots` slots, is nonzero on every increasing
/// `slots`-subset of them.
///
/// The instantiations over all subsets are handed to
/// [`nonvanishing_point`] together, which is a search for a nonzero of
/// their product.
pub fn subset_tuple_point(
    poly: &CPoly,
    slots: usize,
    m: usize,
    n: usize,
    seed: u64,
) -> Result<Vec<Vec<Rational>>, SearchError> {
    if poly.is_zero() {
        return Err(SearchError::ZeroPolynomialInput { index: 0 });
    }
    if slots > n {
        return Err(SearchError::TooFewPoints { needed: slots, requested: n });
    }
    let instances: Vec<CPoly> =
        (1..=n).combinations(slots).map(|subset| instantiate_slots(poly, &subset)).collect();
    let vars: Vec<SymId> = (1..=n).flat_map(|j| (1..=m).map(move |v| SymId::diag(j, v))).collect();
    let point = nonvanishing_point(&instances, &vars, seed)?;
    if !all_nonzero(&instances, &point.values) {
        return Err(SearchError::Internal("subset tuple verification failed".into()));
    }
    Ok((1..=n).map(|j| (1..=m).map(|v| point.values[&SymId::diag(j, v)].clone()).collect()).collect())
}

/// Which case of the construction a solve went through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveBranch {
    /// Only the pivot is free.
    SingleVariable,
    /// Every side form involves the pivot (vacuously true with no side forms).
    AllPivot,
    /// No side form involves the pivot.
    NoPivot,
    Mixed,
}

/// Solves `target(c) = b` while keeping every form in `keep_nonzero`
/// nonzero.
///
/// The non-pivot variables are chosen by [`nonvanishing_point`] on the
/// forms obtained by eliminating the pivot through the target equation,
/// then the pivot is back-substituted.
pub fn constrained_linear_solve(
    target: &AffineForm,
    b: &Rational,
    keep_nonzero: &[AffineForm],
    pivot: SymId,
    seed: u64,
) -> Result<(PointAssignment, SolveBranch), SearchError> {
    if b.is_zero() {
        return Err(SearchError::TargetZero);
    }
    if !target.constant.is_zero() {
        return Err(SearchError::NonHomogeneousTarget);
    }
    let a11 = target.coeff(&pivot);
    if a11.is_zero() {
        return Err(SearchError::PivotZero);
    }
    for (index, f) in keep_nonzero.iter().enumerate() {
        if !f.constant.is_zero() || f.coeffs.is_empty() {
            return Err(SearchError::DegenerateSideForm { index });
        }
    }

    let others: Vec<SymId> = target
        .coeffs
        .keys()
        .chain(keep_nonzero.iter().flat_map(|f| f.coeffs.keys()))
        .copied()
        .filter(|s| *s != pivot)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let inv = a11.recip();

    // b - sum_{j != pivot} a_1j x_j
    let mut eliminated = AffineForm::new(
        target.coeffs.iter().filter(|(s, _)| **s != pivot).map(|(s, c)| (*s, -c.clone())),
        b.clone(),
    );
    eliminated.coeffs.retain(|_, c| !c.is_zero());
    let mut polys = vec![eliminated.to_cpoly()];
    let (mut with_pivot, mut without_pivot) = (0usize, 0usize);
    for f in keep_nonzero {
        let ai1 = f.coeff(&pivot);
        if ai1.is_zero() {
            without_pivot += 1;
            polys.push(f.to_cpoly());
        } else {
            with_pivot += 1;
            let ratio = &ai1 * &inv;
            let form = AffineForm::new(
                others.iter().map(|s| (*s, f.coeff(s) - &ratio * target.coeff(s))),
                &ratio * b,
            );
            polys.push(form.to_cpoly());
        }
    }
    let branch = if others.is_empty() {
        SolveBranch::SingleVariable
    } else if without_pivot == 0 {
        SolveBranch::AllPivot
    } else if with_pivot == 0 {
        SolveBranch::NoPivot
    } else {
        SolveBranch::Mixed
    };
    if let Some(index) = polys.iter().position(CPoly::is_zero) {
        // Only reachable for a single-variable solve with a side form that
        // does not involve the pivot.
        return Err(SearchError::DegenerateSideForm { index: index.saturating_sub(1) });
    }

    let mut point = nonvanishing_point(&polys, &others, seed)?;
    let rest: Rational = others.iter().map(|s| target.coeff(s) * &point.values[s]).sum();
    point.values.insert(pivot, (b - rest) * inv);

    let ok = target.eval(&point.values).is_ok_and(|v| &v == b)
        && keep_nonzero.iter().all(|f| f.eval(&point.values).is_ok_and(|v| !v.is_zero()));
    if !ok {
        return Err(SearchError::Internal("constrained solve failed verification".into()));
    }
    Ok((point, branch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ncpoly;
    use crate::algebra::rational::frac;
    use crate::algebra::Word;
    use crate::structure::coefficient_poly;

    fn z(i: usize) -> SymId {
        SymId::diag(i, 1)
    }

    fn zp(i: usize) -> CPoly {
        CPoly::var(z(i))
    }

    #[test]
    fn single_polynomial() {
        let pt = nonvanishing_point(&[zp(1)], &[z(1)], 0).unwrap();
        assert!(!pt.values[&z(1)].is_zero());
    }

    #[test]
    fn avoids_several_hypersurfaces() {
        let polys = [zp(1), &zp(1) - &CPoly::one(), zp(2)];
        let pt = nonvanishing_point(&polys, &[z(1), z(2)], 7).unwrap();
        assert!(all_nonzero(&polys, &pt.values));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let polys = [&zp(1) - &zp(2), &zp(2) - &zp(3)];
        let vars = [z(1), z(2), z(3)];
        assert_eq!(nonvanishing_point(&polys, &vars, 11), nonvanishing_point(&polys, &vars, 11));
    }

    #[test]
    fn rejects_zero_and_uncovered() {
        assert_eq!(
            nonvanishing_point(&[zp(1), CPoly::zero()], &[z(1)], 0),
            Err(SearchError::ZeroPolynomialInput { index: 1 })
        );
        assert_eq!(nonvanishing_point(&[zp(2)], &[z(1)], 0), Err(SearchError::UncoveredSymbol(z(2))));
    }

    #[test]
    fn falls_back_to_the_degree_grid() {
        // Vanishes on every value the random phase can draw.
        let mut p = CPoly::one();
        for c in 1..=RANDOM_RANGE {
            p = &p * &(&zp(1) - &CPoly::constant(int(c)));
        }
        let pt = nonvanishing_point(&[p.clone()], &[z(1)], 3).unwrap();
        assert_eq!(pt.values[&z(1)], int(RANDOM_RANGE + 1));

        // Two variables, product vanishing on most of the small grid.
        let q = &(&zp(1) - &zp(2)) * &(&(&zp(1) - &CPoly::one()) * &(&zp(2) - &CPoly::constant(int(2))));
        let pt = grid_search(std::slice::from_ref(&q), &[z(1), z(2)], u64::from(q.total_degree()) + 1).unwrap();
        assert!(all_nonzero(&[q], &pt.values));
    }

    #[test]
    fn grid_bound_suffices_for_exhaustive_small_cases() {
        // Every product of distinct linear factors (z1 - a)(z2 - b)(z1 - z2)
        // over a small range has a nonzero on the degree grid.
        for a in 1..=4 {
            for b in 1..=4 {
                let p = &(&(&zp(1) - &CPoly::constant(int(a))) * &(&zp(2) - &CPoly::constant(int(b))))
                    * &(&zp(1) - &zp(2));
                let side = u64::from(p.total_degree()) + 1;
                assert!(grid_search(&[p], &[z(1), z(2)], side).is_some(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn subset_tuples_for_single_slot() {
        let pts = subset_tuple_point(&zp(1), 1, 1, 3, 0).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|c| !c[0].is_zero()));
    }

    #[test]
    fn subset_tuples_for_commutator_coefficient() {
        let p = parse_ncpoly("[x1,x2]").unwrap();
        let p1 = coefficient_poly(&p, &Word::new([1]));
        let pts = subset_tuple_point(&p1, 2, 2, 3, 5).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_ne!(pts[i][1], pts[j][1]);
            }
        }
        assert_eq!(
            subset_tuple_point(&p1, 2, 2, 1, 0),
            Err(SearchError::TooFewPoints { needed: 2, requested: 1 })
        );
    }

    fn c(i: usize) -> SymId {
        SymId::entry(1, i + 1, 1)
    }

    #[test]
    fn scalar_equation() {
        let target = AffineForm::linear([(c(1), int(2))]);
        let (pt, branch) = constrained_linear_solve(&target, &int(4), &[], c(1), 0).unwrap();
        assert_eq!(pt.values[&c(1)], int(2));
        assert_eq!(branch, SolveBranch::SingleVariable);
    }

    #[test]
    fn side_form_without_pivot() {
        let target = AffineForm::linear([(c(1), int(1)), (c(2), int(1))]);
        let keep = [AffineForm::linear([(c(2), int(1))])];
        let (pt, branch) = constrained_linear_solve(&target, &int(3), &keep, c(1), 0).unwrap();
        assert_eq!(&pt.values[&c(1)] + &pt.values[&c(2)], int(3));
        assert!(!pt.values[&c(2)].is_zero());
        assert_eq!(branch, SolveBranch::NoPivot);
    }

    #[test]
    fn side_form_equal_to_target_variable() {
        let target = AffineForm::linear([(c(1), int(1))]);
        let keep = [AffineForm::linear([(c(1), int(1))])];
        let (pt, _) = constrained_linear_solve(&target, &int(5), &keep, c(1), 0).unwrap();
        assert_eq!(pt.values[&c(1)], int(5));
    }

    #[test]
    fn mixed_branch() {
        let target = AffineForm::linear([(c(1), int(2)), (c(2), int(-1)), (c(3), int(3))]);
        let keep = [
            AffineForm::linear([(c(1), int(1)), (c(2), frac(-1, 2))]),
            AffineForm::linear([(c(3), int(1))]),
            AffineForm::linear([(c(2), int(1)), (c(3), int(-1))]),
        ];
        let (pt, branch) = constrained_linear_solve(&target, &int(7), &keep, c(1), 9).unwrap();
        assert_eq!(branch, SolveBranch::Mixed);
        assert_eq!(target.eval(&pt.values).unwrap(), int(7));
        for f in &keep {
            assert!(!f.eval(&pt.values).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_errors() {
        let target = AffineForm::linear([(c(1), int(1))]);
        assert_eq!(constrained_linear_solve(&target, &int(0), &[], c(1), 0), Err(SearchError::TargetZero));
        assert_eq!(constrained_linear_solve(&target, &int(1), &[], c(2), 0), Err(SearchError::PivotZero));
        let keep = [AffineForm::new([(c(1), int(1))], int(2))];
        assert_eq!(
            constrained_linear_solve(&target, &int(1), &keep, c(1), 0),
            Err(SearchError::DegenerateSideForm { index: 0 })
        );
        let keep = [AffineForm::linear([])];
        assert_eq!(
            constrained_linear_solve(&target, &int(1), &keep, c(1), 0),
            Err(SearchError::DegenerateSideForm { index: 0 })
        );
        // One variable, side form in a different variable only.
        let keep = [AffineForm::linear([(c(2), int(1))])];
        assert!(constrained_linear_solve(&target, &int(1), &keep, c(1), 0).is_ok());
    }
}
