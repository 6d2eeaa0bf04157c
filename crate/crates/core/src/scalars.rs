//! Exact field arithmetic and certified linear solving.
//!
//! Two kinds of field are supported: the rationals (arbitrary precision,
//! always in lowest terms) and prime fields `GF(p)` with `p < 2^32`.
//! There is no floating point anywhere in this crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("cannot read {literal:?} as an element of {field}: {reason}")]
    Parse {
        literal: String,
        field: FieldSpec,
        reason: String,
    },
    #[error("{0} is not a supported prime (need a prime below 2^32)")]
    NotPrime(u64),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} system")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry at ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// The ground field `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "p")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Residue {
                    value: r.to_u64().expect("residue below modulus"),
                    modulus: *p,
                }
            }
        }
    }

    /// Reads a scalar literal: a decimal integer, or `p/q` over the rationals.
    pub fn parse(&self, literal: &str) -> Result<Scalar, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            literal: literal.to_string(),
            field: *self,
            reason: reason.to_string(),
        };
        let s = literal.trim();
        let int = |t: &str| -> Result<BigInt, ScalarError> {
            let t = t.trim();
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("not a decimal integer"));
            }
            BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| err("not a decimal integer"))
        };
        match (self, s.split_once('/')) {
            (_, None) => Ok(self.from_bigint(&int(s)?)),
            (FieldSpec::Rationals, Some((n, d))) => {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(err("zero denominator"));
                }
                Ok(Scalar::Rational(BigRational::new(int(n)?, d)))
            }
            (FieldSpec::Prime(_), Some(_)) => Err(err("fractions are not residues of a prime field")),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    /// Accepts `Q`, `rationals`, `GF(p)`, `gf(p)` or a bare prime `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p: u64 = inner.trim().parse().map_err(|_| ScalarError::Parse {
            literal: s.to_string(),
            field: FieldSpec::Rationals,
            reason: "expected Q, GF(p) or a prime".into(),
        })?;
        FieldSpec::prime(p)
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// Canonical residue in `[0, modulus)`.
    Residue { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let m = *modulus as u128;
                let (mut base, mut exp, mut acc) = (*value as u128, modulus - 2, 1u128);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Scalar::Residue {
                    value: acc as u64,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn apply(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
        match op {
            ArithOp::Add => a.checked_add(b),
            ArithOp::Sub => a.checked_sub(b),
            ArithOp::Mul => a.checked_mul(b),
            ArithOp::Div => a.checked_div(b),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator forms panic on mixed fields. Every container in this crate
// carries a single FieldSpec, so mixing can only come from caller bugs;
// use the checked_* methods at trust boundaries.
macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar operands from different fields")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

/// `Σ a_i b_i`; both slices must have the same length.
pub fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| acc + x * y)
}

/// Renders `Σ c·label` as `"2*x - y + 1/2"`. An empty label (or `"1"`)
/// stands for the unit and prints the bare coefficient. Zero terms are skipped.
pub fn format_combination<'a>(terms: impl IntoIterator<Item = (&'a Scalar, &'a str)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = label.is_empty() || label == "1";
        match (unit, magnitude.as_str()) {
            (true, m) => out.push_str(m),
            (false, "1") => out.push_str(label),
            (false, m) => {
                out.push_str(m);
                out.push('*');
                out.push_str(label);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| dot(self.field, &self.data[r * self.cols..(r + 1) * self.cols], v))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for c in 0..other.cols {
            let col = self.mul_vec(&other.column(c));
            for (r, v) in col.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }
}

/// `A·z = rhs` with sparse triplet storage for `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
    rhs: Vec<Scalar>,
}

impl LinearSystem {
    pub fn new(field: FieldSpec, rows: usize, cols: usize) -> Self {
        LinearSystem {
            field,
            rows,
            cols,
            entries: BTreeMap::new(),
            rhs: vec![field.zero(); rows],
        }
    }

    pub fn from_dense(a: &Matrix, rhs: Vec<Scalar>) -> Result<Self, ScalarError> {
        if rhs.len() != a.rows() {
            return Err(ScalarError::Dimension {
                expected: a.rows(),
                got: rhs.len(),
            });
        }
        let mut sys = LinearSystem::new(a.field(), a.rows(), a.cols());
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                sys.insert(r, c, a.get(r, c).clone())?;
            }
            sys.set_rhs(r, rhs[r].clone())?;
        }
        Ok(sys)
    }

    fn check_index(&self, row: usize, col: usize) -> Result<(), ScalarError> {
        if row >= self.rows || col >= self.cols {
            return Err(ScalarError::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn check_field(&self, v: &Scalar) -> Result<(), ScalarError> {
        if v.field() != self.field {
            return Err(ScalarError::FieldMismatch(self.field, v.field()));
        }
        Ok(())
    }

    /// Stores a single entry. Zero values are not stored but still claim the slot.
    pub fn insert(&mut self, row: usize, col: usize, v: Scalar) -> Result<(), ScalarError> {
        self.check_index(row, col)?;
        self.check_field(&v)?;
        if self.entries.contains_key(&(row, col)) {
            return Err(ScalarError::DuplicateEntry(row, col));
        }
        self.entries.insert((row, col), v);
        Ok(())
    }

    /// Adds `v` to the entry at `(row, col)`.
    pub fn accumulate(&mut self, row: usize, col: usize, v: &Scalar) -> Result<(), ScalarError> {
        self.check_index(row, col)?;
        self.check_field(v)?;
        if v.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry((row, col)).or_insert_with(|| self.field.zero());
        *slot = &*slot + v;
        Ok(())
    }

    pub fn set_rhs(&mut self, row: usize, v: Scalar) -> Result<(), ScalarError> {
        if row >= self.rows {
            return Err(ScalarError::IndexOutOfRange {
                row,
                col: 0,
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.check_field(&v)?;
        self.rhs[row] = v;
        Ok(())
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
    pub fn rhs(&self) -> &[Scalar] {
        &self.rhs
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, c, v) in self.entries() {
            m.set(r, c, v.clone());
        }
        m
    }

    /// `A·z`.
    pub fn apply(&self, z: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, v) in self.entries() {
            out[r] = &out[r] + &(v * &z[c]);
        }
        out
    }

    /// `uᵀ·A`.
    pub fn apply_transpose(&self, u: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.cols];
        for (r, c, v) in self.entries() {
            out[c] = &out[c] + &(v * &u[r]);
        }
        out
    }

    /// Exact residual check `A·z = rhs`.
    pub fn satisfied_by(&self, z: &[Scalar]) -> bool {
        z.len() == self.cols && self.apply(z) == self.rhs
    }

    /// Exact certificate check `uᵀA = 0` and `uᵀ·rhs ≠ 0`.
    pub fn refuted_by(&self, u: &[Scalar]) -> bool {
        u.len() == self.rows
            && is_zero_vector(&self.apply_transpose(u))
            && !dot(self.field, u, &self.rhs).is_zero()
    }

    pub fn solve(&self) -> SolveOutcome {
        solve_linear(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SolveOutcome {
    Feasible {
        /// One particular solution, with every free variable set to zero.
        witness: Vec<Scalar>,
        nullity: usize,
        /// One basis vector per free column, in column order.
        nullspace: Vec<Vec<Scalar>>,
    },
    Infeasible {
        /// Normalized so that `uᵀ·rhs = 1`.
        certificate: Vec<Scalar>,
    },
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }

    /// Re-checks the witness (and nullspace) or certificate against `system`.
    pub fn verify(&self, system: &LinearSystem) -> bool {
        match self {
            SolveOutcome::Feasible { witness, nullspace, nullity } => {
                system.satisfied_by(witness)
                    && nullspace.len() == *nullity
                    && nullspace
                        .iter()
                        .all(|v| v.len() == system.cols() && is_zero_vector(&system.apply(v)))
            }
            SolveOutcome::Infeasible { certificate } => system.refuted_by(certificate),
        }
    }
}

/// Gauss-Jordan elimination that also tracks the row transform, so a zero
/// row with nonzero right-hand side yields the Farkas multiplier directly.
///
/// Pivots are chosen column by column, taking the first row at or below the
/// current pivot row with a nonzero entry.
pub fn solve_linear(system: &LinearSystem) -> SolveOutcome {
    let field = system.field;
    let (rows, cols) = (system.rows, system.cols);
    let width = cols + 1 + rows;
    let mut m: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row = vec![field.zero(); width];
            row[cols] = system.rhs[r].clone();
            row[cols + 1 + r] = field.one();
            row
        })
        .collect();
    for (r, c, v) in system.entries() {
        m[r][c] = v.clone();
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(found) = (prow..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, found);
        let inv = m[prow][col].inverse().expect("pivot is nonzero");
        for v in m[prow].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = m[prow].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == prow || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }

    if let Some(row) = m[prow..].iter().find(|row| !row[cols].is_zero()) {
        let scale = row[cols].inverse().expect("nonzero rhs");
        let certificate = row[cols + 1..].iter().map(|v| v * &scale).collect();
        return SolveOutcome::Infeasible { certificate };
    }

    let mut witness = vec![field.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        witness[c] = m[r][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][f];
            }
            v
        })
        .collect::<Vec<_>>();
    SolveOutcome::Feasible {
        witness,
        nullity: free.len(),
        nullspace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rationals.parse(s).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-6/-4").to_string(), "3/2");
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(Scalar::apply(ArithOp::Div, &q("1"), &q("0")), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn prime_field_arithmetic() {
        let gf2 = FieldSpec::prime(2).unwrap();
        assert!((gf2.one() + gf2.one()).is_zero());
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(gf5.parse("-1").unwrap().to_string(), "4");
        assert_eq!(gf5.from_i64(3).inverse().unwrap(), gf5.from_i64(2));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let gf3 = FieldSpec::prime(3).unwrap();
        let err = q("1").checked_add(&gf3.one()).unwrap_err();
        assert_eq!(err, ScalarError::FieldMismatch(FieldSpec::Rationals, gf3));
    }

    #[test]
    fn fraction_under_prime_field_is_a_parse_error() {
        let gf2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(gf2.parse("1/2"), Err(ScalarError::Parse { .. })));
        assert!(FieldSpec::Rationals.parse("1/0").is_err());
        assert!(FieldSpec::Rationals.parse("x").is_err());
        assert!(FieldSpec::Rationals.parse("1.5").is_err());
    }

    #[test]
    fn field_spec_from_str() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert!("GF(9)".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn identity_system() {
        let f = FieldSpec::Rationals;
        let b = vec![q("3"), q("-1/2"), q("0")];
        let sys = LinearSystem::from_dense(&Matrix::identity(f, 3), b.clone()).unwrap();
        match sys.solve() {
            SolveOutcome::Feasible { witness, nullity, .. } => {
                assert_eq!(witness, b);
                assert_eq!(nullity, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_pair_certificate() {
        let f = FieldSpec::Rationals;
        let mut sys = LinearSystem::new(f, 2, 1);
        sys.insert(0, 0, f.one()).unwrap();
        sys.insert(1, 0, f.one()).unwrap();
        sys.set_rhs(0, f.one()).unwrap();
        let out = sys.solve();
        assert_eq!(out, SolveOutcome::Infeasible { certificate: vec![q("1"), q("-1")] });
        assert!(out.verify(&sys));
    }

    #[test]
    fn nullspace_is_reported() {
        let f = FieldSpec::Rationals;
        // z0 + z1 = 2
        let mut sys = LinearSystem::new(f, 1, 2);
        sys.insert(0, 0, f.one()).unwrap();
        sys.insert(0, 1, f.one()).unwrap();
        sys.set_rhs(0, f.from_i64(2)).unwrap();
        let out = sys.solve();
        assert!(out.verify(&sys));
        match out {
            SolveOutcome::Feasible { witness, nullity, nullspace } => {
                assert_eq!(witness, vec![q("2"), q("0")]);
                assert_eq!(nullity, 1);
                assert_eq!(nullspace, vec![vec![q("-1"), q("1")]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn system_validation() {
        let f = FieldSpec::Rationals;
        let mut sys = LinearSystem::new(f, 2, 2);
        assert!(matches!(sys.insert(2, 0, f.one()), Err(ScalarError::IndexOutOfRange { .. })));
        sys.insert(0, 0, f.one()).unwrap();
        assert_eq!(sys.insert(0, 0, f.one()), Err(ScalarError::DuplicateEntry(0, 0)));
        let gf2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(sys.insert(1, 1, gf2.one()), Err(ScalarError::FieldMismatch(..))));
    }

    #[test]
    fn empty_column_system() {
        let f = FieldSpec::Rationals;
        let mut sys = LinearSystem::new(f, 1, 0);
        sys.set_rhs(0, f.one()).unwrap();
        let out = sys.solve();
        assert_eq!(out, SolveOutcome::Infeasible { certificate: vec![q("1")] });
    }
}
