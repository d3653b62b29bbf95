//! Exact linear algebra over a field.
//!
//! Two backends: arbitrary-precision rationals ([`Rationals`], the default)
//! and residues modulo a prime ([`PrimeField`]). Matrices are dense and
//! row-major; elimination pivots on the first nonzero entry of each column.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0} is not a prime modulus below 2^32")]
    NotPrime(u64),
    #[error("unknown field {0:?} (expected \"rat\" or \"gf:<prime>\")")]
    UnknownField(String),
}

/// A field whose elements are plain values; all arithmetic goes through the
/// field so that runtime parameters such as the modulus stay in one place.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

/// GF(q) for a prime `q < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, AlgebraError> {
        if modulus >= 1 << 32 || !is_prime(modulus) {
            return Err(AlgebraError::NotPrime(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            exp >>= 1;
        }
        acc
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

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.modulus - 2)
    }
}

/// Runtime choice of coefficient field, as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(u64),
}

impl FromStr for FieldSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rat" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(q) = s.strip_prefix("gf:") {
            let q: u64 = q
                .parse()
                .map_err(|_| AlgebraError::UnknownField(s.to_string()))?;
            PrimeField::new(q)?;
            return Ok(FieldSpec::Prime(q));
        }
        Err(AlgebraError::UnknownField(s.to_string()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rat"),
            FieldSpec::Prime(q) => write!(f, "gf:{q}"),
        }
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from its rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, rows: usize, columns: &[Vec<E>]) -> Self {
        let cols = columns.len();
        let mut data = vec![field.zero(); rows * cols];
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (r, x) in col.iter().enumerate() {
                data[r * cols + c] = x.clone();
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: E) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let acc = field.add(out.get(i, j), &field.mul(a, other.get(k, j)));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    pub reduced: Matrix<E>,
    pub pivots: Vec<usize>,
}

pub fn row_reduce<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..a.cols {
        if lead == a.rows {
            break;
        }
        let Some(p) = (lead..a.rows).find(|&r| !field.is_zero(a.get(r, c))) else {
            continue;
        };
        if p != lead {
            for k in 0..a.cols {
                a.data.swap(p * a.cols + k, lead * a.cols + k);
            }
        }
        let inv = field.inv(a.get(lead, c));
        for k in c..a.cols {
            let x = field.mul(a.get(lead, k), &inv);
            a.set(lead, k, x);
        }
        for r in 0..a.rows {
            if r == lead {
                continue;
            }
            let factor = a.get(r, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for k in c..a.cols {
                let x = field.sub(a.get(r, k), &field.mul(&factor, a.get(lead, k)));
                a.set(r, k, x);
            }
        }
        pivots.push(c);
        lead += 1;
    }
    Echelon { reduced: a, pivots }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    row_reduce(field, m).pivots.len()
}

/// Basis of the right null space `{v : Mv = 0}`, one vector per free column.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let Echelon { reduced, pivots } = row_reduce(field, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(reduced.get(row, free));
            }
            v
        })
        .collect()
}

/// Rank of a list of equal-length vectors.
pub fn span_rank<F: Field>(field: &F, vectors: &[Vec<F::Elem>], len: usize) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    rank(field, &Matrix::from_rows(len, vectors.to_vec()))
}

/// A basis of the span of `vectors` (the nonzero rows of the echelon form).
pub fn span_basis<F: Field>(field: &F, vectors: &[Vec<F::Elem>], len: usize) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() || len == 0 {
        return Vec::new();
    }
    let e = row_reduce(field, &Matrix::from_rows(len, vectors.to_vec()));
    (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceDims {
    pub dim_u: usize,
    pub dim_w: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
}

/// Dimensions of `U`, `W`, `U + W` and `U ∩ W` for spanning sets of vectors
/// of length `len`.
pub fn subspace_dims<F: Field>(
    field: &F,
    u: &[Vec<F::Elem>],
    w: &[Vec<F::Elem>],
    len: usize,
) -> Result<SubspaceDims, AlgebraError> {
    for v in u.iter().chain(w) {
        if v.len() != len {
            return Err(AlgebraError::LengthMismatch {
                expected: len,
                got: v.len(),
            });
        }
    }
    let dim_u = span_rank(field, u, len);
    let dim_w = span_rank(field, w, len);
    let both: Vec<_> = u.iter().chain(w).cloned().collect();
    let dim_sum = span_rank(field, &both, len);
    Ok(SubspaceDims {
        dim_u,
        dim_w,
        dim_sum,
        dim_intersection: dim_u + dim_w - dim_sum,
    })
}

/// Solves `A x = b`, returning one solution if any exists.
pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let mut rows = Vec::with_capacity(a.rows);
    for r in 0..a.rows {
        let mut row = a.row(r).to_vec();
        row.push(b[r].clone());
        rows.push(row);
    }
    let e = row_reduce(field, &Matrix::from_rows(a.cols + 1, rows));
    if e.pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols];
    for (row, &p) in e.pivots.iter().enumerate() {
        x[p] = e.reduced.get(row, a.cols).clone();
    }
    Some(x)
}

/// Scales a rational vector to coprime integers with a positive leading entry.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num::Integer;
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &gcd * &sign).collect()
}
