//! Upper triangular matrices over the rationals and over commutative
//! polynomials, and evaluation of noncommutative polynomials on them.
//!
//! All positions are 1-based. The generic matrix `u_v` has the symbol
//! [`SymId::at`]`(row, col, v)` at every upper triangular position, so
//! [`sym_eval`] and [`entry_polynomial`] compute the entries of
//! `p(u_1, ..., u_m)` as polynomials in those symbols.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::algebra::{CPoly, NcPoly, Rational, SymId};
use crate::error::MatrixError;

fn packed_index(n: usize, row: usize, col: usize) -> usize {
    assert!(1 <= row && row <= col && col <= n, "({row},{col}) outside T_{n}");
    (row - 1) * (n + 1) - (row - 1) * row / 2 + (col - row)
}

/// Upper triangular `n x n` rational matrix stored as its packed upper
/// triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UTMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl UTMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1);
        UTMatrix { n, data: vec![Rational::zero(); n * (n + 1) / 2] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    /// Matrix unit `e_{row,col}`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(row, col, Rational::from_integer(1.into()));
        m
    }

    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(n);
        for (row, col, v) in entries {
            if !(1 <= row && row <= col && col <= n) {
                return Err(MatrixError::BadEntry { row, col, n });
            }
            m.set(row, col, v);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[packed_index(self.n, row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        let idx = packed_index(self.n, row, col);
        self.data[idx] = value;
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (i..=n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, self.get(i, j)))
            .filter(|(_, _, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> UTMatrix {
        UTMatrix { n: self.n, data: self.data.iter().map(|v| v * k).collect() }
    }

    fn check_same(&self, other: &UTMatrix) {
        assert_eq!(self.n, other.n, "matrix size mismatch");
    }
}

impl Add for &UTMatrix {
    type Output = UTMatrix;
    fn add(self, rhs: &UTMatrix) -> UTMatrix {
        self.check_same(rhs);
        UTMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &UTMatrix {
    type Output = UTMatrix;
    fn sub(self, rhs: &UTMatrix) -> UTMatrix {
        self.check_same(rhs);
        UTMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &UTMatrix {
    type Output = UTMatrix;
    fn mul(self, rhs: &UTMatrix) -> UTMatrix {
        self.check_same(rhs);
        let n = self.n;
        let mut out = UTMatrix::zeros(n);
        for i in 1..=n {
            for k in i..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in k..=n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = packed_index(n, i, j);
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Upper triangular matrix with commutative polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymUTMatrix {
    n: usize,
    data: Vec<CPoly>,
}

impl SymUTMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &CPoly {
        &self.data[packed_index(self.n, row, col)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CPoly::is_zero)
    }

    /// Substitutes a full numeric point. Fails with the first symbol that
    /// the point does not cover.
    pub fn specialize(&self, point: &BTreeMap<SymId, Rational>) -> Result<UTMatrix, SymId> {
        let data = self.data.iter().map(|p| p.eval(point)).collect::<Result<_, _>>()?;
        Ok(UTMatrix { n: self.n, data })
    }
}

/// `T_n^{(t)}`: every entry with `col - row <= t` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandSpec {
    pub t: usize,
}

pub fn band_check(a: &UTMatrix, band: BandSpec) -> bool {
    band_violation(a, band).is_none()
}

/// First nonzero entry that lies on or below the band, if any.
pub fn band_violation(a: &UTMatrix, band: BandSpec) -> Option<(usize, usize)> {
    a.nonzero_entries().find(|(i, j, _)| j - i <= band.t).map(|(i, j, _)| (i, j))
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Evaluates `p` at a tuple of numeric matrices.
pub fn mat_eval(p: &NcPoly, inputs: &[UTMatrix]) -> Result<UTMatrix, MatrixError> {
    if inputs.len() != p.var_count() {
        return Err(MatrixError::ArityMismatch { expected: p.var_count(), found: inputs.len() });
    }
    let n = match inputs.first() {
        Some(u) => u.n(),
        None => return Err(MatrixError::ArityMismatch { expected: 1, found: 0 }),
    };
    if let Some(u) = inputs.iter().find(|u| u.n() != n) {
        return Err(MatrixError::DimensionMismatch { expected: n, found: u.n() });
    }
    // Terms are visited in lexicographic word order, so consecutive words
    // share prefixes and the prefix products can be kept on a stack.
    let mut stack = vec![UTMatrix::identity(n)];
    let mut prev: &[usize] = &[];
    let mut total = UTMatrix::zeros(n);
    for (word, coeff) in p.terms() {
        let letters = word.letters();
        stack.truncate(common_prefix(prev, letters) + 1);
        for &v in &letters[stack.len() - 1..] {
            let next = stack.last().unwrap() * &inputs[v - 1];
            stack.push(next);
        }
        total = &total + &stack[letters.len()].scale(coeff);
        prev = letters;
    }
    Ok(total)
}

/// Symbolic evaluation: entry `(s,t)` of `p(u_1, ..., u_m)` for generic
/// upper triangular `u_v`.
pub fn sym_eval(p: &NcPoly, n: usize) -> SymUTMatrix {
    assert!(n >= 1);
    let empty = BTreeMap::new();
    let mut data = Vec::with_capacity(n * (n + 1) / 2);
    for s in 1..=n {
        for t in s..=n {
            data.push(entry_polynomial(p, n, s, t, &empty));
        }
    }
    SymUTMatrix { n, data }
}

/// The single entry `(s,t)` of `p(u_1, ..., u_m)`, with every symbol in
/// `fixed` replaced by its value.
///
/// Sums over weakly increasing index paths `s = j_1 <= ... <= j_{k+1} = t`
/// for each word, as a dynamic program over the path's current column.
/// Paths through a fixed zero are dropped as soon as they reach it.
pub fn entry_polynomial(
    p: &NcPoly,
    n: usize,
    s: usize,
    t: usize,
    fixed: &BTreeMap<SymId, Rational>,
) -> CPoly {
    assert!(1 <= s && s <= t && t <= n, "({s},{t}) outside T_{n}");
    let m = p.var_count();
    let width = t - s + 1;
    // step[v][j][l]: the entry at (s+j, s+l) of u_v, None when it is zero.
    let step: Vec<Vec<Vec<Option<CPoly>>>> = (1..=m)
        .map(|v| {
            (0..width)
                .map(|j| {
                    (0..width)
                        .map(|l| {
                            if l < j {
                                return None;
                            }
                            let sym = SymId::at(s + j, s + l, v);
                            match fixed.get(&sym) {
                                Some(x) if x.is_zero() => None,
                                Some(x) => Some(CPoly::constant(x.clone())),
                                None => Some(CPoly::var(sym)),
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut start = vec![CPoly::zero(); width];
    start[0] = CPoly::one();
    let mut stack = vec![start];
    let mut prev: &[usize] = &[];
    let mut total = CPoly::zero();
    for (word, coeff) in p.terms() {
        let letters = word.letters();
        stack.truncate(common_prefix(prev, letters) + 1);
        for &v in &letters[stack.len() - 1..] {
            let cur = stack.last().unwrap();
            let mut next = vec![CPoly::zero(); width];
            for (j, from) in cur.iter().enumerate() {
                if from.is_zero() {
                    continue;
                }
                for (l, slot) in next.iter_mut().enumerate().skip(j) {
                    if let Some(e) = &step[v - 1][j][l] {
                        slot.add_product(from, e);
                    }
                }
            }
            stack.push(next);
        }
        total.add_assign_ref(&stack[letters.len()][width - 1].scale(coeff));
        prev = letters;
    }
    total
}
