//! Exact scalar fields (ℚ and 𝔽_p) and dense reduced-row-echelon linear algebra.
//!
//! Everything here is exact: rationals are arbitrary precision and residues
//! are kept in `[0, p)`. Operator impls panic when the two operands live in
//! different fields; the `checked_*` methods report that as an [`ArithError`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// The coefficient field: either the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    /// Builds `𝔽_p`, rejecting composites and anything at or above 2^31.
    pub fn prime(p: u64) -> Result<FieldSpec, ArithError> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// Field size for finite fields.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p as u64),
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match *self {
            FieldSpec::Rationals => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => FieldElem::Mod {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field. Fails for 𝔽_p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem, ArithError> {
        match *self {
            FieldSpec::Rationals => Ok(FieldElem::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let reduce = |n: &BigInt| -> i64 {
                    (n % BigInt::from(p)).to_i64().expect("residue fits in i64")
                };
                let num = self.from_i64(reduce(q.numer()));
                let den = self.from_i64(reduce(q.denom()));
                num.checked_div(&den)
            }
        }
    }

    /// Every element of a finite field, in residue order.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        let p = self.order()?;
        Some((0..p as i64).map(|v| self.from_i64(v)).collect())
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, ArithError> {
        let q = BigRational::from_str(s.trim()).map_err(|_| ArithError::Parse(s.to_string()))?;
        self.from_rational(&q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ArithError;

    /// Accepts `Q`, `QQ`, `F7`, `GF7` or a bare prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| ArithError::Parse(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Rational(BigRational),
    Mod { value: u32, modulus: u32 },
}

impl FieldElem {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElem::Rational(_) => FieldSpec::Rationals,
            FieldElem::Mod { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Mod { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &FieldElem) -> Result<(), ArithError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn checked_eq(&self, other: &FieldElem) -> Result<bool, ArithError> {
        self.same_field(other)?;
        Ok(self == other)
    }

    pub fn inv(&self) -> Result<FieldElem, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Mod { value, modulus } => FieldElem::Mod {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// Additive inverse (`-self`).
    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(-q),
            FieldElem::Mod { value, modulus } => FieldElem::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// The rational value of a ℚ element, or the canonical representative of a residue.
    pub fn to_rational(&self) -> BigRational {
        match self {
            FieldElem::Rational(q) => q.clone(),
            FieldElem::Mod { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    fn is_negative(&self) -> bool {
        matches!(self, FieldElem::Rational(q) if q.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &FieldElem, b: &FieldElem) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Mod { value: a, modulus: p }, FieldElem::Mod { value: b, modulus: q })
                if p == q =>
            {
                FieldElem::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (FieldElem::Mod { value: a, modulus: p }, FieldElem::Mod { value: b, modulus: q })
                if p == q =>
            {
                FieldElem::Mod {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Mod { value: a, modulus: p }, FieldElem::Mod { value: b, modulus: q })
                if p == q =>
            {
                FieldElem::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

/// Writes `c·x` in a sum, e.g. `+ 3*t^5`, `- t^2`. Used by polynomial printers.
pub(crate) fn fmt_signed_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &FieldElem,
    monomial: &str,
    first: bool,
) -> fmt::Result {
    let negative = coeff.is_negative();
    let magnitude = if negative { coeff.neg() } else { coeff.clone() };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if monomial.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{magnitude}*{monomial}")
    }
}

/// Dense row-major matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input or foreign entries.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElem>>, cols: usize) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            for x in &row {
                assert_eq!(x.field(), field, "matrix entry from another field");
            }
            data.extend(row);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form and pivot columns. Pivots are chosen as the
    /// first row (from the current one down) with a nonzero entry in the
    /// leftmost remaining column, so the output is deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for k in c..self.cols {
                let x = &self[(r, k)] * &inv;
                self[(r, k)] = x;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for k in c..self.cols {
                    if self[(r, k)].is_zero() {
                        continue;
                    }
                    let x = &self[(i, k)] - &(&factor * &self[(r, k)]);
                    self[(i, k)] = x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self·v = 0}`; one vector per free column.
    pub fn solve_homogeneous(&self) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[(i, free)].neg();
            }
            basis.push(v);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElem;

    fn index(&self, (r, c): (usize, usize)) -> &FieldElem {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElem {
        &mut self.data[r * self.cols + c]
    }
}

/// Row-reduces `rows` (all of length `cols`) and returns the nonzero rows of
/// the reduced echelon form together with their pivot columns.
pub fn echelon_basis(
    field: FieldSpec,
    rows: Vec<Vec<FieldElem>>,
    cols: usize,
) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
    let mut m = Matrix::from_rows(field, rows, cols);
    let pivots = m.rref_in_place();
    let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
    (rows, pivots)
}
