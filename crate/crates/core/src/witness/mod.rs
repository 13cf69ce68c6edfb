//! Explicit preimages of target matrices under polynomial evaluation.
//!
//! [`image_witness`] handles targets whose lowest allowed superdiagonal is
//! nowhere zero, [`witness_corner_case`] covers every target when the order
//! is `n - 2`, and [`decompose_sum`] writes any admissible target as a sum
//! of two evaluations. Every constructor re-evaluates its output before
//! returning it.

mod corner;
mod decompose;
mod plan;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::algebra::{CPoly, NcPoly, Rational, SymId, Word};
use crate::error::{MatrixError, WitnessError};
use crate::structure::compute_order;
use crate::triangular::{band_violation, entry_polynomial, mat_eval, BandSpec, UTMatrix};

pub use corner::witness_corner_case;
pub use decompose::decompose_sum;
pub use plan::{image_witness, image_witness_with_plan, FKey, WitnessPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleMode {
    /// `p(u) = target`.
    Single,
    /// `p(u) + p(v) = target`.
    Sum,
}

impl BundleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BundleMode::Single => "single",
            BundleMode::Sum => "sum",
        }
    }

    fn tuple_count(self) -> usize {
        match self {
            BundleMode::Single => 1,
            BundleMode::Sum => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBundle {
    pub poly: NcPoly,
    pub n: usize,
    pub mode: BundleMode,
    /// One `m`-tuple of matrices per summand.
    pub tuples: Vec<Vec<UTMatrix>>,
    pub target: UTMatrix,
    pub verified: bool,
    pub seed: u64,
}

/// One entry where the re-evaluated sum disagrees with the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDiff {
    pub row: usize,
    pub col: usize,
    pub expected: Rational,
    pub found: Rational,
}

/// Sum of `p` over the bundle's tuples.
pub fn bundle_value(bundle: &WitnessBundle) -> Result<UTMatrix, MatrixError> {
    if bundle.tuples.len() != bundle.mode.tuple_count() {
        return Err(MatrixError::ArityMismatch {
            expected: bundle.mode.tuple_count(),
            found: bundle.tuples.len(),
        });
    }
    if bundle.target.n() != bundle.n {
        return Err(MatrixError::DimensionMismatch { expected: bundle.n, found: bundle.target.n() });
    }
    let mut total = UTMatrix::zeros(bundle.n);
    for tuple in &bundle.tuples {
        if let Some(u) = tuple.iter().find(|u| u.n() != bundle.n) {
            return Err(MatrixError::DimensionMismatch { expected: bundle.n, found: u.n() });
        }
        total = &total + &mat_eval(&bundle.poly, tuple)?;
    }
    Ok(total)
}

/// Entries where the bundle's value differs from its target.
pub fn bundle_diff(bundle: &WitnessBundle) -> Result<Vec<EntryDiff>, MatrixError> {
    let value = bundle_value(bundle)?;
    let n = bundle.n;
    let mut out = Vec::new();
    for row in 1..=n {
        for col in row..=n {
            let (expected, found) = (bundle.target.get(row, col), value.get(row, col));
            if expected != found {
                out.push(EntryDiff { row, col, expected: expected.clone(), found: found.clone() });
            }
        }
    }
    Ok(out)
}

/// Re-evaluates the bundle, records the outcome in `verified` and returns it.
pub fn verify_bundle(bundle: &mut WitnessBundle) -> bool {
    let ok = bundle_value(bundle).is_ok_and(|v| v == bundle.target);
    bundle.verified = ok;
    ok
}

/// Order and certificate word of `p`, required to satisfy `1 < r < n - 1`.
pub(crate) fn order_in_range(p: &NcPoly, n: usize) -> Result<(usize, Word), WitnessError> {
    // The order never exceeds the degree, so this cap cannot be hit.
    let report = compute_order(p, p.degree().max(1))?;
    let r = report.order;
    if r <= 1 || r + 1 >= n {
        return Err(WitnessError::OrderOutOfRange { r, n });
    }
    Ok((r, report.certificate.expect("positive order has a certificate")))
}

pub(crate) fn check_target(target: &UTMatrix, n: usize, r: usize) -> Result<(), WitnessError> {
    if target.n() != n {
        return Err(MatrixError::DimensionMismatch { expected: n, found: target.n() }.into());
    }
    if let Some((row, col)) = band_violation(target, BandSpec { t: r - 1 }) {
        return Err(WitnessError::TargetNotInBand { row, col, band: r - 1 });
    }
    Ok(())
}

/// Partially determined inputs `u_1, ..., u_m`: fixed diagonals plus the
/// off-diagonal entries decided so far. Undecided entries count as zero.
pub(crate) struct Layout<'a> {
    pub p: &'a NcPoly,
    pub n: usize,
    pub m: usize,
    pub diag: Vec<Vec<Rational>>,
    pub values: BTreeMap<SymId, Rational>,
}

impl<'a> Layout<'a> {
    pub fn new(p: &'a NcPoly, n: usize, diag: Vec<Vec<Rational>>) -> Self {
        Layout { p, n, m: p.var_count(), diag, values: BTreeMap::new() }
    }

    fn known(&self, sym: SymId) -> Rational {
        if sym.row == sym.col {
            self.diag[sym.row - 1][sym.var - 1].clone()
        } else {
            self.values.get(&sym).cloned().unwrap_or_else(Rational::zero)
        }
    }

    /// Entry `(s, t)` of `p(u)` with the symbols in `symbolic` left free.
    pub fn entry(&self, s: usize, t: usize, symbolic: &BTreeSet<SymId>) -> CPoly {
        let mut fixed = BTreeMap::new();
        for row in s..=t {
            for col in row..=t {
                for var in 1..=self.m {
                    let sym = SymId::at(row, col, var);
                    if !symbolic.contains(&sym) {
                        fixed.insert(sym, self.known(sym));
                    }
                }
            }
        }
        entry_polynomial(self.p, self.n, s, t, &fixed)
    }

    /// Decides every listed symbol: the value from `point` if present,
    /// zero otherwise.
    pub fn decide(&mut self, syms: &BTreeSet<SymId>, point: &BTreeMap<SymId, Rational>) {
        for s in syms {
            let v = point.get(s).cloned().unwrap_or_else(Rational::zero);
            self.values.insert(*s, v);
        }
    }

    pub fn assemble(&self) -> Vec<UTMatrix> {
        (1..=self.m)
            .map(|var| {
                let mut u = UTMatrix::zeros(self.n);
                for j in 1..=self.n {
                    u.set(j, j, self.diag[j - 1][var - 1].clone());
                }
                for (sym, v) in &self.values {
                    if sym.var == var {
                        u.set(sym.row, sym.col, v.clone());
                    }
                }
                u
            })
            .collect()
    }
}

/// Checks `p(tuple) = target` and wraps the result.
pub(crate) fn single_bundle(
    p: &NcPoly,
    tuple: Vec<UTMatrix>,
    target: &UTMatrix,
    seed: u64,
) -> Result<WitnessBundle, WitnessError> {
    let mut bundle = WitnessBundle {
        poly: p.clone(),
        n: target.n(),
        mode: BundleMode::Single,
        tuples: vec![tuple],
        target: target.clone(),
        verified: false,
        seed,
    };
    if !verify_bundle(&mut bundle) {
        return Err(WitnessError::InternalVerificationFailure(
            "single witness does not evaluate to the target".into(),
        ));
    }
    Ok(bundle)
}

pub(crate) fn symbols_of(polys: &[CPoly]) -> Vec<SymId> {
    polys.iter().flat_map(CPoly::symbols).collect::<BTreeSet<_>>().into_iter().collect()
}
