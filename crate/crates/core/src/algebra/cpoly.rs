//! Sparse commutative polynomials over the rationals.
//!
//! Indeterminates are [`SymId`]s naming one scalar entry of one generic
//! upper triangular matrix: `a(row,col;var)` is the `(row, col)` entry of
//! the `var`-th matrix. Diagonal symbols double as the "slot" variables of
//! coefficient polynomials, where `row` is the slot number.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Diag,
    Entry,
}

/// One scalar indeterminate. Field order gives the canonical monomial order
/// (role, row, col, var).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymId {
    pub role: Role,
    pub row: usize,
    pub col: usize,
    pub var: usize,
}

impl SymId {
    pub fn diag(pos: usize, var: usize) -> Self {
        SymId { role: Role::Diag, row: pos, col: pos, var }
    }

    pub fn entry(row: usize, col: usize, var: usize) -> Self {
        debug_assert!(row < col);
        SymId { role: Role::Entry, row, col, var }
    }

    /// The symbol at `(row, col)` of matrix `var`, diagonal or not.
    pub fn at(row: usize, col: usize, var: usize) -> Self {
        if row == col {
            Self::diag(row, var)
        } else {
            Self::entry(row, col, var)
        }
    }

    pub fn position(&self) -> (usize, usize) {
        (self.row, self.col)
    }
}

impl fmt::Display for SymId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Diag => write!(f, "z{}({})", self.row, self.var),
            Role::Entry => write!(f, "a{}_{}({})", self.row, self.col, self.var),
        }
    }
}

/// Power product of symbols, sorted by symbol with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(SymId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: SymId) -> Self {
        Monomial(vec![(sym, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (SymId, u32)>) -> Self {
        let mut map: BTreeMap<SymId, u32> = BTreeMap::new();
        for (s, e) in factors {
            *map.entry(s).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(SymId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits into the part over `within` and the rest.
    fn split(&self, within: &BTreeSet<SymId>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) =
            self.0.iter().copied().partition(|(s, _)| within.contains(s));
        (Monomial(inside), Monomial(outside))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse commutative polynomial. The zero polynomial is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = CPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(sym: SymId) -> Self {
        Self::term(Monomial::var(sym), Rational::one())
    }

    pub fn term(mono: Monomial, coeff: Rational) -> Self {
        let mut p = CPoly::zero();
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = CPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The value if the polynomial has no symbols (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> BTreeSet<SymId> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &CPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += factor * other`, the inner loop of path sums.
    pub fn add_product(&mut self, other: &CPoly, factor: &CPoly) {
        for (m1, c1) in &other.terms {
            for (m2, c2) in &factor.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> CPoly {
        if k.is_zero() {
            return CPoly::zero();
        }
        CPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> CPoly {
        let mut acc = CPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a point covering every symbol.
    pub fn eval(&self, point: &BTreeMap<SymId, Rational>) -> Result<Rational, SymId> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(s, e) in m.factors() {
                let x = point.get(&s).ok_or(s)?;
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes the symbols present in `fixed`, leaving the rest symbolic.
    pub fn substitute(&self, fixed: &BTreeMap<SymId, Rational>) -> CPoly {
        let mut out = CPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(s, e) in m.factors() {
                match fixed.get(&s) {
                    Some(x) => {
                        for _ in 0..e {
                            coeff *= x;
                        }
                    }
                    None => rest.push((s, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Renames symbols through `f`. Callers must keep the map injective on
    /// the symbols of `self` or equal monomials will merge.
    pub fn rename(&self, f: impl Fn(SymId) -> SymId) -> CPoly {
        CPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (Monomial::from_factors(m.factors().iter().map(|&(s, e)| (f(s), e))), c.clone())
        }))
    }

    /// Coefficient of `mono` when `self` is viewed as a polynomial in the
    /// symbols of `within` with coefficients in the remaining symbols.
    pub fn coefficient(&self, mono: &Monomial, within: &BTreeSet<SymId>) -> CPoly {
        let mut out = CPoly::zero();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(within);
            if &inside == mono {
                out.add_term(outside, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CPoly {
            type Output = CPoly;
            fn $f(self, rhs: CPoly) -> CPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    fn z(slot: usize, var: usize) -> CPoly {
        CPoly::var(SymId::diag(slot, var))
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = &(&z(1, 1) * &z(2, 1)) + &CPoly::constant(int(3));
        assert_eq!(&p + &CPoly::zero(), p);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn product_of_two_symbols_is_one_monomial() {
        let p = &z(1, 1) * &z(2, 1);
        assert_eq!(p.len(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert!(c.is_one());
        assert_eq!(m.degree(), 2);
    }

    #[test]
    fn evaluation_examples() {
        let p = &z(2, 2) - &z(1, 2);
        let mut pt = BTreeMap::new();
        pt.insert(SymId::diag(1, 2), int(3));
        pt.insert(SymId::diag(2, 2), int(3));
        assert_eq!(p.eval(&pt), Ok(int(0)));
        pt.insert(SymId::diag(1, 2), int(1));
        pt.insert(SymId::diag(2, 2), int(4));
        assert_eq!(p.eval(&pt), Ok(int(3)));
        pt.remove(&SymId::diag(2, 2));
        assert_eq!(p.eval(&pt), Err(SymId::diag(2, 2)));
    }

    #[test]
    fn coefficient_extraction() {
        // p = 3*x*y + 2*y + x*y^2
        let x = CPoly::var(SymId::entry(1, 2, 1));
        let y = CPoly::var(SymId::entry(2, 3, 1));
        let p = &(&(&x * &y).scale(&int(3)) + &y.scale(&int(2))) + &(&x * &(&y * &y));
        let within: BTreeSet<_> = [SymId::entry(2, 3, 1)].into_iter().collect();
        let c = p.coefficient(&Monomial::var(SymId::entry(2, 3, 1)), &within);
        assert_eq!(c, &x.scale(&int(3)) + &CPoly::constant(int(2)));
    }

    fn arb_cpoly() -> impl Strategy<Value = CPoly> {
        let sym = (1usize..=3, 1usize..=2).prop_map(|(r, v)| SymId::diag(r, v));
        let mono = proptest::collection::vec((sym, 1u32..=2), 0..3).prop_map(Monomial::from_factors);
        proptest::collection::vec((mono, -9i64..=9), 0..5)
            .prop_map(|ts| CPoly::from_terms(ts.into_iter().map(|(m, c)| (m, int(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_laws(a in arb_cpoly(), b in arb_cpoly(), c in arb_cpoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }
    }
}
