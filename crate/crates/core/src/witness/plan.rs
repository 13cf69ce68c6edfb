//! Single witness for targets with a nowhere-zero leading band.
//!
//! Inputs are built row by row. Rows `1..r` carry only first-superdiagonal
//! entries, chosen once so that every leading coefficient still has a
//! nonzero part to work with. Rows `r..n` are then filled position by
//! position in band order: first the first superdiagonal, solved with
//! [`constrained_linear_solve`] so that later leading coefficients stay
//! nonzero, then each higher diagonal, where the entry is linear with a
//! known nonzero coefficient.
//!
//! The leading coefficient of entry `(s, r+s+t)` in the unknown at
//! `(r+s-1, r+s+t)` depends on the first-superdiagonal entries of rows
//! `s..=r+s-2` and on the diagonal at `r+s+t`, so it is tracked separately
//! for every `t`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_target, order_in_range, single_bundle, symbols_of, Layout, WitnessBundle};
use crate::algebra::{CPoly, Monomial, NcPoly, Rational, SymId, Word};
use crate::error::WitnessError;
use crate::search::{constrained_linear_solve, nonvanishing_point, subset_tuple_point, AffineForm};
use crate::structure::coefficient_poly;
use crate::triangular::UTMatrix;

/// `(s, j, end)`: prefix of the leading coefficient for row `s` through
/// column `j`, with the last diagonal slot at column `end`.
pub type FKey = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPlan {
    pub n: usize,
    pub r: usize,
    pub word: Word,
    pub diag_tuples: Vec<Vec<Rational>>,
    pub phase_a: BTreeMap<SymId, Rational>,
    /// Target positions `(s, r+s+t)` in the order they were solved.
    pub step_order: Vec<(usize, usize)>,
    pub f_table: BTreeMap<FKey, Rational>,
    /// Forms kept nonzero at each first-superdiagonal step.
    pub protected: Vec<Vec<AffineForm>>,
}

struct Builder<'a> {
    layout: Layout<'a>,
    r: usize,
    word: Vec<usize>,
    letters: BTreeSet<usize>,
    /// Leading coefficient polynomials keyed by `(s, t)`.
    lead: BTreeMap<(usize, usize), CPoly>,
}

impl Builder<'_> {
    /// First-superdiagonal symbols of the given rows. Rows below `r` use
    /// every variable, later rows only the letters of the word.
    fn superdiag(&self, rows: RangeInclusive<usize>) -> BTreeSet<SymId> {
        let mut out = BTreeSet::new();
        for j in rows {
            if j < self.r {
                out.extend((1..=self.layout.m).map(|v| SymId::entry(j, j + 1, v)));
            } else {
                out.extend(self.letters.iter().map(|&v| SymId::entry(j, j + 1, v)));
            }
        }
        out
    }

    /// Product of the word's letters along the given rows, aligned so that
    /// row `s` carries the first letter.
    fn word_monomial(&self, s: usize, rows: RangeInclusive<usize>) -> Monomial {
        Monomial::from_factors(rows.map(|j| (SymId::entry(j, j + 1, self.word[j - s]), 1)))
    }

    fn pivot_letter(&self) -> usize {
        self.word[self.r - 1]
    }

    fn lead_poly(&self, s: usize, t: usize) -> CPoly {
        let rho = self.r + s - 1;
        let jump = SymId::entry(rho, rho + 1 + t, self.pivot_letter());
        let mut symbolic = self.superdiag(s..=rho - 1);
        symbolic.insert(jump);
        self.layout
            .entry(s, rho + 1 + t, &symbolic)
            .coefficient(&Monomial::var(jump), &BTreeSet::from([jump]))
    }

    /// The part of the leading coefficient `(s, t)` that multiplies the word
    /// monomial over the still-undecided rows after `last`.
    fn prefix_part(&self, s: usize, t: usize, last: usize) -> CPoly {
        let later = self.r + s - 2;
        let rows = last + 1..=later;
        self.lead[&(s, t)]
            .substitute(&self.layout.values)
            .coefficient(&self.word_monomial(s, rows.clone()), &self.superdiag(rows))
    }
}

fn internal(msg: impl Into<String>) -> WitnessError {
    WitnessError::InternalVerificationFailure(msg.into())
}

/// A single witness `p(u) = target` for `target` in the order-`r` band
/// with every leading-band entry nonzero.
pub fn image_witness(
    p: &NcPoly,
    n: usize,
    target: &UTMatrix,
    seed: u64,
) -> Result<WitnessBundle, WitnessError> {
    image_witness_with_plan(p, n, target, seed).map(|(b, _)| b)
}

/// As [`image_witness`], also returning the bookkeeping of the run.
pub fn image_witness_with_plan(
    p: &NcPoly,
    n: usize,
    target: &UTMatrix,
    seed: u64,
) -> Result<(WitnessBundle, WitnessPlan), WitnessError> {
    let (r, word) = order_in_range(p, n)?;
    check_target(target, n, r)?;
    if let Some(s) = (1..=n - r).find(|&s| target.get(s, r + s).is_zero()) {
        return Err(WitnessError::ZeroOnRDiagonal { row: s, col: r + s });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = p.var_count();
    let diag = subset_tuple_point(&coefficient_poly(p, &word), r + 1, m, n, rng.gen())?;

    let mut b = Builder {
        layout: Layout::new(p, n, diag.clone()),
        r,
        word: word.letters().to_vec(),
        letters: word.letters().iter().copied().collect(),
        lead: BTreeMap::new(),
    };
    for s in 1..=n - r {
        for t in 0..=n - r - s {
            let poly = b.lead_poly(s, t);
            b.lead.insert((s, t), poly);
        }
    }
    let mut f_table = BTreeMap::new();

    // Rows 1..r-1 at once.
    let keys: Vec<(usize, usize)> =
        (1..=(r - 1).min(n - r)).flat_map(|s| (0..=n - r - s).map(move |t| (s, t))).collect();
    let polys: Vec<CPoly> = keys.iter().map(|&(s, t)| b.prefix_part(s, t, r - 1)).collect();
    let point = nonvanishing_point(&polys, &symbols_of(&polys), rng.gen())?;
    let phase_syms = b.superdiag(1..=r - 1);
    b.layout.decide(&phase_syms, &point.values);
    for (&(s, t), poly) in keys.iter().zip(&polys) {
        f_table.insert((s, r, r + s + t), poly.eval(&b.layout.values).map_err(|_| internal("phase A"))?);
    }
    let phase_a = phase_syms.iter().map(|s| (*s, b.layout.values[s].clone())).collect();

    let mut step_order = Vec::new();
    let mut protected = Vec::new();
    for s in 1..=n - r {
        let rho = r + s - 1;
        let row = b.superdiag(rho..=rho);
        let slice = b.layout.entry(s, rho + 1, &row);
        let form = AffineForm::from_cpoly(&slice).ok_or_else(|| internal("band entry is not affine"))?;
        if !form.constant.is_zero() {
            return Err(internal("band entry has a constant term"));
        }
        let pivot = SymId::entry(rho, rho + 1, b.pivot_letter());
        if form.coeff(&pivot) != f_table[&(s, rho, rho + 1)] {
            return Err(internal("leading coefficient disagrees with its prefix"));
        }

        let keys: Vec<(usize, usize)> = (s + 1..=rho.min(n - r))
            .flat_map(|s2| (0..=n - r - s2).map(move |t| (s2, t)))
            .collect();
        let mut side = Vec::with_capacity(keys.len());
        for &(s2, t2) in &keys {
            let part = b.prefix_part(s2, t2, rho);
            side.push(AffineForm::from_cpoly(&part).ok_or_else(|| internal("side form is not linear"))?);
        }
        let (point, _) = constrained_linear_solve(&form, target.get(s, rho + 1), &side, pivot, rng.gen())?;
        b.layout.decide(&row, &point.values);
        for (&(s2, t2), f) in keys.iter().zip(&side) {
            let v = f.eval(&b.layout.values).map_err(|_| internal("side form"))?;
            f_table.insert((s2, rho + 1, r + s2 + t2), v);
        }
        step_order.push((s, rho + 1));
        protected.push(side);
    }

    for t in 1..n - r {
        for s in 1..=n - r - t {
            let rho = r + s - 1;
            let end = rho + 1 + t;
            let unknowns: BTreeSet<SymId> = b.letters.iter().map(|&v| SymId::entry(rho, end, v)).collect();
            let slice = b.layout.entry(s, end, &unknowns);
            let form = AffineForm::from_cpoly(&slice).ok_or_else(|| internal("band entry is not affine"))?;
            let pivot = SymId::entry(rho, end, b.pivot_letter());
            let lead = form.coeff(&pivot);
            if lead.is_zero() || lead != f_table[&(s, rho, end)] {
                return Err(internal("leading coefficient vanished"));
            }
            let value = (target.get(s, end) - &form.constant) / lead;
            b.layout.decide(&unknowns, &BTreeMap::from([(pivot, value)]));
            step_order.push((s, end));
        }
    }

    if f_table.values().any(Zero::is_zero) {
        return Err(internal("a recorded leading coefficient is zero"));
    }
    let bundle = single_bundle(p, b.layout.assemble(), target, seed)?;
    let plan = WitnessPlan {
        n,
        r,
        word,
        diag_tuples: diag,
        phase_a,
        step_order,
        f_table,
        protected,
    };
    Ok((bundle, plan))
}
