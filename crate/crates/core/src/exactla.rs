//! Exact scalar arithmetic and dense linear algebra over `Q` and prime fields.
//!
//! Everything downstream (weight-block kernels, straightening, span checks)
//! funnels through [`nullspace`], [`rank`] and [`solve`]. Row reduction always
//! takes the first nonzero entry in column order as pivot, so kernel bases are
//! reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Smallest admissible modulus for kernel computations.
pub const MIN_PRIME: u64 = 1 << 16;

/// Default primary prime.
pub const DEFAULT_PRIME: u64 = 1_000_003;
/// Default confirming prime.
pub const CONFIRM_PRIME: u64 = 65_537;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("at least two primes are required, got {0}")]
    TooFewPrimes(usize),
    #[error("modulus {0} is not a prime above 2^16")]
    BadPrime(u64),
    #[error("unlucky prime {prime}: nullity {nullity} disagrees with consensus {consensus}")]
    UnluckyPrime {
        prime: u64,
        nullity: usize,
        consensus: usize,
    },
}

/// Arithmetic of a field whose elements are plain values.
///
/// The modulus of a prime field lives in the field object rather than in the
/// elements, so element vectors stay compact.
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `None` when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    fn tag(&self) -> FieldTag;
}

/// Which field a matrix or scalar belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
}

/// The field `Z/pZ` with residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Accepts any prime below 2^32 (products must fit in `u64`).
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(LinalgError::BadPrime(p));
        }
        Ok(Self { p })
    }

    /// Like [`PrimeField::new`] but also enforces `p > 2^16`.
    pub fn checked(p: u64) -> Result<Self, LinalgError> {
        if p <= MIN_PRIME {
            return Err(LinalgError::BadPrime(p));
        }
        Self::new(p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(&self.reduce_bigint(q.numer()), &self.inv(&den)))
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field-tagged exact value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Rational(Rational::from_integer(v.into()))
    }

    pub fn residue(v: i64, modulus: u64) -> Self {
        Scalar::Residue {
            value: v.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rationals,
            Scalar::Residue { modulus, .. } => FieldTag::Prime(*modulus),
        }
    }

    /// Reduction into a prime field; `None` if a denominator vanishes or the
    /// residue belongs to a different modulus.
    pub fn to_residue(&self, field: &PrimeField) -> Option<u64> {
        match self {
            Scalar::Rational(q) => field.from_rational(q),
            Scalar::Residue { value, modulus } => (*modulus == field.modulus()).then_some(*value),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

/// Dense row-major matrix; the field is supplied by the caller of each
/// operation and recorded in `tag`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
    tag: FieldTag,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            tag: field.tag(),
        }
    }

    pub fn from_rows<F: Field<Elem = E>>(
        field: &F,
        cols: usize,
        rows: Vec<Vec<E>>,
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
            tag: field.tag(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn into_rows(self) -> Vec<Vec<E>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }
}

/// Matrix-vector product.
pub fn apply<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    v: &[F::Elem],
) -> Result<Vec<F::Elem>, LinalgError> {
    if v.len() != m.cols {
        return Err(LinalgError::DimensionMismatch {
            expected: m.cols,
            found: v.len(),
        });
    }
    Ok((0..m.rows)
        .map(|r| {
            m.row(r).iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                if field.is_zero(a) || field.is_zero(b) {
                    acc
                } else {
                    field.add(&acc, &field.mul(a, b))
                }
            })
        })
        .collect())
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
fn rref<F: Field>(
    field: &F,
    rows: Vec<Vec<F::Elem>>,
    cols: usize,
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut rows = rows;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(&rows[rank][col]);
        for v in rows[rank][col..].iter_mut() {
            if !field.is_zero(v) {
                *v = field.mul(v, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if field.is_zero(&other[col]) {
                continue;
            }
            let factor = other[col].clone();
            for (o, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                if !field.is_zero(p) {
                    *o = field.sub(o, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let cols = m.cols;
    rref(field, m.clone().into_rows(), cols).1.len()
}

/// Basis of `{ v : M v = 0 }`, one vector per free column in increasing
/// column order, with a `1` in that column.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let cols = m.cols;
    let (reduced, pivots) = rref(field, m.clone().into_rows(), cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

pub fn nullity<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    m.cols - rank(field, m)
}

/// Unique solution of `M x = b`, `None` if inconsistent or underdetermined.
pub fn solve<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    b: &[F::Elem],
) -> Result<Option<Vec<F::Elem>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let cols = m.cols;
    let rows: Vec<Vec<F::Elem>> = m
        .clone()
        .into_rows()
        .into_iter()
        .zip(b)
        .map(|(mut r, x)| {
            r.push(x.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(field, rows, cols + 1);
    if pivots.last() == Some(&cols) || pivots.len() < cols {
        return Ok(None);
    }
    let mut x = vec![field.zero(); cols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}

/// Nullity computed independently modulo each prime; all must agree.
///
/// The outlier in a disagreement is the prime with the largest nullity
/// (reduction mod `p` can only drop rank).
pub fn multi_prime_nullity<B>(builder: B, primes: &[u64]) -> Result<usize, LinalgError>
where
    B: Fn(&PrimeField) -> Matrix<u64>,
{
    let fields = checked_fields(primes)?;
    let nullities: Vec<usize> = fields.iter().map(|f| nullity(f, &builder(f))).collect();
    consensus(primes, &nullities)
}

pub fn checked_fields(primes: &[u64]) -> Result<Vec<PrimeField>, LinalgError> {
    if primes.len() < 2 {
        return Err(LinalgError::TooFewPrimes(primes.len()));
    }
    primes.iter().map(|&p| PrimeField::checked(p)).collect()
}

/// Agreement check over per-prime values.
pub fn consensus(primes: &[u64], values: &[usize]) -> Result<usize, LinalgError> {
    let min = *values.iter().min().expect("nonempty");
    for (&p, &v) in primes.iter().zip(values) {
        if v != min {
            return Err(LinalgError::UnluckyPrime {
                prime: p,
                nullity: v,
                consensus: min,
            });
        }
    }
    Ok(min)
}

/// Lowest-terms rational from an integer pair.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Integer gcd of the numerators after scaling to a common denominator;
/// used when normalizing coefficient vectors to primitive integer form.
pub fn primitive_scale(values: &[Rational]) -> Rational {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let mut g = BigInt::zero();
    for v in values {
        let n = (v * Rational::from_integer(lcm.clone())).to_integer();
        g = g.gcd(&n);
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(lcm, g.abs())
}

/// Row echelon form over `Z/pZ` grown one vector at a time.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl IncrementalEchelon {
    pub fn new(field: PrimeField) -> Self {
        Self {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; keeps it and returns `true`
    /// when it is independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.field.modulus();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                let f = p - c;
                for (x, r) in v.iter_mut().zip(row) {
                    if *r != 0 {
                        *x = (*x + f * r) % p;
                    }
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(piv) => {
                let inv = self.field.inv(&v[piv]);
                for x in v.iter_mut() {
                    *x = *x * inv % p;
                }
                self.rows.push((piv, v));
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn identity_has_empty_kernel() {
        let m = Matrix::from_rows(&Rationals, 2, vec![vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        assert!(nullspace(&Rationals, &m).is_empty());
    }

    #[test]
    fn single_row_mod_101() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_rows(&f, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(nullspace(&f, &m), vec![vec![100, 1]]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = Matrix::from_rows(&Rationals, 2, vec![vec![q(1)]]).unwrap_err();
        assert_eq!(
            err,
            LinalgError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn zero_matrix_nullity_is_cols() {
        let n = multi_prime_nullity(|f| Matrix::zeros(f, 3, 7), &[65537, 1_000_003]).unwrap();
        assert_eq!(n, 7);
    }

    #[test]
    fn prime_checks() {
        assert!(matches!(
            multi_prime_nullity(|f| Matrix::zeros(f, 1, 1), &[65537]),
            Err(LinalgError::TooFewPrimes(1))
        ));
        assert!(matches!(
            multi_prime_nullity(|f| Matrix::zeros(f, 1, 1), &[17, 65537]),
            Err(LinalgError::BadPrime(17))
        ));
        assert!(PrimeField::new(1_000_001).is_err());
    }

    #[test]
    fn unlucky_prime_named() {
        // det = 65537 * 2, singular only mod 65537
        let build = |f: &PrimeField| {
            Matrix::from_rows(f, 2, vec![vec![f.from_i64(131074), 0], vec![0, 1]]).unwrap()
        };
        let err = multi_prime_nullity(build, &[65537, 1_000_003]).unwrap_err();
        assert_eq!(
            err,
            LinalgError::UnluckyPrime {
                prime: 65537,
                nullity: 1,
                consensus: 0
            }
        );
    }

    #[test]
    fn solve_square() {
        let m = Matrix::from_rows(&Rationals, 2, vec![vec![q(2), q(1)], vec![q(1), q(3)]]).unwrap();
        let x = solve(&Rationals, &m, &[q(3), q(4)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let sing =
            Matrix::from_rows(&Rationals, 2, vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        assert_eq!(solve(&Rationals, &sing, &[q(1), q(2)]).unwrap(), None);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&ratio(1, 3)), Some(5));
        assert_eq!(f.from_rational(&ratio(1, 7)), None);
        assert_eq!(primitive_scale(&[ratio(1, 2), ratio(3, 4)]), q(4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
            (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                (
                    Just(c),
                    prop::collection::vec(prop::collection::vec(-3i64..4, c), r),
                )
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(( cols, rows) in small_matrix()) {
                let qm = Matrix::from_rows(&Rationals, cols,
                    rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap();
                let kernel = nullspace(&Rationals, &qm);
                prop_assert_eq!(kernel.len() + rank(&Rationals, &qm), cols);
                for v in &kernel {
                    prop_assert!(apply(&Rationals, &qm, v).unwrap().iter().all(|x| x.is_zero()));
                }
                for p in [65537u64, 1_000_003] {
                    let f = PrimeField::new(p).unwrap();
                    let pm = Matrix::from_rows(&f, cols,
                        rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect()).unwrap();
                    prop_assert_eq!(nullity(&f, &pm), kernel.len());
                    let mut ech = IncrementalEchelon::new(f);
                    for r in pm.clone().into_rows() {
                        ech.insert(r);
                    }
                    prop_assert_eq!(ech.rank(), cols - kernel.len());
                }
            }
        }
    }
}
