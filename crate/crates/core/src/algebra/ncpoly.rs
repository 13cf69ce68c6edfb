//! Polynomials in the free associative algebra over the rationals.
//!
//! An [`NcPoly`] is a finite sum of words in the noncommuting variables
//! `x1, x2, ...` with a zero constant term: the empty word is never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{self, Rational};
use crate::error::AlgebraError;

/// A monomial `x_{i1} x_{i2} ... x_{ik}` stored as its 1-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Self {
        Word(letters.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Every word of length `k` over `1..=m` in lexicographic order.
    pub fn all_of_length(m: usize, k: usize) -> impl Iterator<Item = Word> {
        let total = if m == 0 && k > 0 { 0 } else { m.pow(k as u32) };
        (0..total).map(move |mut idx| {
            let mut letters = vec![0; k];
            for slot in letters.iter_mut().rev() {
                *slot = idx % m + 1;
                idx /= m;
            }
            Word(letters)
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Word-indexed coefficient map. The empty word is allowed here and is the
/// constant term; [`NcPoly`] wraps it with that term forbidden.
pub(crate) type WordMap = BTreeMap<Word, Rational>;

pub(crate) fn wm_add_term(map: &mut WordMap, word: Word, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let slot = map.entry(word.clone()).or_insert_with(Rational::zero);
    *slot += coeff;
    if slot.is_zero() {
        map.remove(&word);
    }
}

pub(crate) fn wm_add(a: &WordMap, b: &WordMap, sign: &Rational) -> WordMap {
    let mut out = a.clone();
    for (w, c) in b {
        wm_add_term(&mut out, w.clone(), c * sign);
    }
    out
}

pub(crate) fn wm_mul(a: &WordMap, b: &WordMap) -> WordMap {
    let mut out = WordMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            wm_add_term(&mut out, wa.concat(wb), ca * cb);
        }
    }
    out
}

pub(crate) fn wm_pow(a: &WordMap, exp: u32) -> WordMap {
    let mut acc = WordMap::new();
    acc.insert(Word::default(), Rational::one());
    for _ in 0..exp {
        acc = wm_mul(&acc, a);
    }
    acc
}

/// Noncommutative polynomial with zero constant term.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: WordMap,
    var_count: usize,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    /// The variable `x_index`.
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are 1-based");
        let mut terms = WordMap::new();
        terms.insert(Word(vec![index]), Rational::one());
        NcPoly { terms, var_count: index }
    }

    /// Builds a polynomial from explicit terms. Fails if a term is the empty
    /// word with a nonzero coefficient or uses a variable index 0.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut map = WordMap::new();
        for (w, c) in terms {
            if w.0.contains(&0) {
                return Err(AlgebraError::BadVariable);
            }
            wm_add_term(&mut map, w, c);
        }
        Self::from_word_map(map)
    }

    pub(crate) fn from_word_map(mut map: WordMap) -> Result<Self, AlgebraError> {
        if let Some(c) = map.remove(&Word::default()) {
            return Err(AlgebraError::NonzeroConstantTerm(rational::format_rational(&c)));
        }
        let var_count = map.keys().flat_map(|w| w.0.iter().copied()).max().unwrap_or(0);
        Ok(NcPoly { terms: map, var_count })
    }

    /// Rejects the zero polynomial.
    pub fn nonzero(self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            Err(AlgebraError::ZeroPolynomial)
        } else {
            Ok(self)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest variable index occurring in a term.
    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &Rational) -> NcPoly {
        let mut map = WordMap::new();
        for (w, c) in &self.terms {
            wm_add_term(&mut map, w.clone(), c * k);
        }
        Self::from_word_map(map).expect("scaling keeps the constant term zero")
    }

    /// `self^exp` for `exp >= 1`.
    pub fn pow(&self, exp: u32) -> Result<NcPoly, AlgebraError> {
        if exp == 0 {
            return Err(AlgebraError::ZeroExponent);
        }
        Ok(Self::from_word_map(wm_pow(&self.terms, exp)).expect("positive power of a constant-free polynomial"))
    }

    /// `a*b - b*a`.
    pub fn commutator(a: &NcPoly, b: &NcPoly) -> NcPoly {
        &(a * b) - &(b * a)
    }
}

impl fmt::Display for NcPoly {
    /// Prints in a form the parser accepts and maps back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-{abs}*")?;
                } else if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
            }
            for (j, l) in w.0.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "x{l}")?;
            }
        }
        Ok(())
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        NcPoly::from_word_map(wm_add(&self.terms, &rhs.terms, &Rational::one())).expect("no constant term")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        NcPoly::from_word_map(wm_add(&self.terms, &rhs.terms, &-Rational::one())).expect("no constant term")
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        NcPoly::from_word_map(wm_mul(&self.terms, &rhs.terms)).expect("no constant term")
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    fn w(l: &[usize]) -> Word {
        Word(l.to_vec())
    }

    #[test]
    fn product_of_variables() {
        let p = &NcPoly::var(1) * &NcPoly::var(2);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coeff(&w(&[1, 2])), int(1));
    }

    #[test]
    fn cancellation_is_rejected_in_strict_mode() {
        let x = NcPoly::var(1);
        let z = &x + &(-&x);
        assert!(z.is_zero());
        assert_eq!(z.nonzero(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn commutator_square_by_repeated_multiplication() {
        let c = NcPoly::commutator(&NcPoly::var(1), &NcPoly::var(2));
        let sq = c.pow(2).unwrap();
        assert_eq!(sq, &c * &c);
        let expected = NcPoly::from_terms([
            (w(&[1, 2, 1, 2]), int(1)),
            (w(&[1, 2, 2, 1]), int(-1)),
            (w(&[2, 1, 1, 2]), int(-1)),
            (w(&[2, 1, 2, 1]), int(1)),
        ])
        .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.degree(), 4);
        assert_eq!(sq.var_count(), 2);
    }

    #[test]
    fn constant_terms_are_refused() {
        assert!(matches!(
            NcPoly::from_terms([(Word::default(), int(2))]),
            Err(AlgebraError::NonzeroConstantTerm(_))
        ));
        assert!(NcPoly::var(1).pow(0).is_err());
    }

    #[test]
    fn lexicographic_word_enumeration() {
        let words: Vec<_> = Word::all_of_length(2, 2).collect();
        assert_eq!(words, vec![w(&[1, 1]), w(&[1, 2]), w(&[2, 1]), w(&[2, 2])]);
        assert_eq!(Word::all_of_length(3, 0).count(), 1);
    }

    pub(crate) fn arb_ncpoly(max_m: usize, max_d: usize) -> impl Strategy<Value = NcPoly> {
        let word = proptest::collection::vec(1..=max_m, 1..=max_d).prop_map(Word);
        proptest::collection::vec((word, -9i64..=9), 1..5)
            .prop_map(|ts| NcPoly::from_terms(ts.into_iter().map(|(w, c)| (w, int(c)))).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_laws(a in arb_ncpoly(3, 3), b in arb_ncpoly(3, 3), c in arb_ncpoly(3, 3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert!(!(&a * &b).terms().contains_key(&Word::default()));
        }
    }
}
