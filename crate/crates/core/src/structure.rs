//! Order of a polynomial on upper triangular matrices and its coefficient
//! polynomials.
//!
//! For a word `w = (i_1, ..., i_k)` the coefficient polynomial `p_w` is the
//! commutative polynomial in the slot symbols `z_j(v)` (`j = 1..=k+1`) that
//! multiplies `a_{12}^{(i_1)} ... a_{k,k+1}^{(i_k)}` in entry `(1, k+1)` of
//! `p` on generic `T_{k+1}` matrices, with `z_j(v)` standing for the
//! diagonal entry `(j,j)` of `u_v`. Slot symbols are [`SymId::diag`].

use crate::algebra::{CPoly, Monomial, NcPoly, Rational, SymId, Word};
use crate::error::OrderError;

pub const DEFAULT_ORDER_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: usize,
    /// Lexicographically least word of length `order` with a nonzero
    /// coefficient polynomial; absent for order 0.
    pub certificate: Option<Word>,
    /// Size of the largest `T_k` examined.
    pub checked_up_to: usize,
}

/// `p` with its variables made commuting, in the symbols `z1(v)`.
pub fn commutative_image(p: &NcPoly) -> CPoly {
    CPoly::from_terms(p.terms().iter().map(|(w, c)| {
        (Monomial::from_factors(w.letters().iter().map(|&v| (SymId::diag(1, v), 1))), c.clone())
    }))
}

/// The coefficient polynomial `p_word`.
///
/// Computed directly from the terms of `p`: every occurrence of `word` as
/// a subsequence of a term marks the strict steps, and the letters between
/// them sit on the diagonal slot they fall into.
pub fn coefficient_poly(p: &NcPoly, word: &Word) -> CPoly {
    let target = word.letters();
    let k = target.len();
    let mut total = CPoly::zero();
    for (term, coeff) in p.terms() {
        if term.len() < k {
            continue;
        }
        // dp[j]: sum over ways to place the first j strict steps so far.
        let mut dp = vec![CPoly::zero(); k + 1];
        dp[0] = CPoly::one();
        for &letter in term.letters() {
            let mut next = vec![CPoly::zero(); k + 1];
            for j in 0..=k {
                if !dp[j].is_zero() {
                    next[j].add_product(&dp[j], &CPoly::var(SymId::diag(j + 1, letter)));
                }
                if j >= 1 && target[j - 1] == letter && !dp[j - 1].is_zero() {
                    next[j].add_assign_ref(&dp[j - 1]);
                }
            }
            dp = next;
        }
        total.add_assign_ref(&dp[k].scale(coeff));
    }
    total
}

/// Renames the slot symbols of a coefficient polynomial onto actual
/// diagonal positions: slot `j` becomes position `positions[j-1]`.
pub fn instantiate_slots(poly: &CPoly, positions: &[usize]) -> CPoly {
    poly.rename(|s| SymId::diag(positions[s.row - 1], s.var))
}

/// Order of `p`: 0 if its commutative image is nonzero, otherwise the least
/// `r` such that `p` vanishes on `T_r` but not on `T_{r+1}`.
///
/// Uses that, once `p` vanishes on `T_k`, the only entry of generic
/// `p(T_{k+1})` that can survive is `(1, k+1)`, and it vanishes exactly
/// when every coefficient polynomial of length `k` does.
pub fn compute_order(p: &NcPoly, cap: usize) -> Result<OrderReport, OrderError> {
    if p.is_zero() {
        return Err(OrderError::ZeroPolynomial);
    }
    if !commutative_image(p).is_zero() {
        return Ok(OrderReport { order: 0, certificate: None, checked_up_to: 1 });
    }
    let m = p.var_count();
    for k in 1..=cap.min(p.degree()) {
        if let Some(w) = Word::all_of_length(m, k).find(|w| !coefficient_poly(p, w).is_zero()) {
            return Ok(OrderReport { order: k, certificate: Some(w), checked_up_to: k + 1 });
        }
    }
    Err(OrderError::OrderExceedsCap { cap })
}

/// Evaluates `p_word` at explicit diagonal tuples, one `m`-vector per slot.
pub fn eval_coefficient_poly(poly: &CPoly, tuples: &[Vec<Rational>]) -> Option<Rational> {
    let point = tuples
        .iter()
        .enumerate()
        .flat_map(|(j, t)| t.iter().enumerate().map(move |(v, x)| (SymId::diag(j + 1, v + 1), x.clone())))
        .collect();
    poly.eval(&point).ok()
}
