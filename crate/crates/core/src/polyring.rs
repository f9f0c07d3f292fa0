//! Exact multivariate polynomials over the named variable families.
//!
//! Every variable lives in one global table of [`NVARS`] slots, grouped into
//! families (`a0..a9`, `x1..x3`, `u1..u3`, ...). Monomials are dense exponent
//! arrays; polynomials are sorted term maps with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::repcalc::Weight;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow")]
    Overflow,
    #[error("division is not exact")]
    NotDivisible,
}

/// Variable families, in slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    X,
    U,
    B,
    C,
    D,
    Q,
    S,
    T,
    M,
    K,
    Y,
    V,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::A,
        Family::X,
        Family::U,
        Family::B,
        Family::C,
        Family::D,
        Family::Q,
        Family::S,
        Family::T,
        Family::M,
        Family::K,
        Family::Y,
        Family::V,
    ];

    pub fn arity(self) -> usize {
        match self {
            Family::A => 10,
            Family::Q => 6,
            Family::S | Family::T => 1,
            _ => 3,
        }
    }

    pub fn offset(self) -> usize {
        Family::ALL
            .iter()
            .take_while(|f| **f != self)
            .map(|f| f.arity())
            .sum()
    }

    pub fn prefix(self) -> char {
        match self {
            Family::A => 'a',
            Family::X => 'x',
            Family::U => 'u',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
            Family::Q => 'q',
            Family::S => 's',
            Family::T => 't',
            Family::M => 'm',
            Family::K => 'k',
            Family::Y => 'y',
            Family::V => 'v',
        }
    }

    /// Slot of the `i`-th variable (0-based) of this family.
    pub fn var(self, i: usize) -> Var {
        assert!(i < self.arity(), "{:?} has no variable {i}", self);
        Var(self.offset() + i)
    }

    pub fn vars(self) -> impl Iterator<Item = Var> {
        (0..self.arity()).map(move |i| self.var(i))
    }
}

pub const NVARS: usize = 45;

/// Exponent vectors `(i1,i2,i3)` of the cubic monomials in graded-lex order;
/// `a_r` is the coefficient of `x^CUBIC_EXPONENTS[r]`.
pub const CUBIC_EXPONENTS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Exponents of the six quadratic monomials, in the same order.
pub const QUADRATIC_EXPONENTS: [[u8; 3]; 6] = [
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
];

/// Index `r` of the cubic monomial with the given exponents.
pub fn cubic_index(e: [u8; 3]) -> usize {
    CUBIC_EXPONENTS
        .iter()
        .position(|c| *c == e)
        .expect("degree-3 exponent")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

impl Var {
    pub fn family(self) -> Family {
        let mut off = 0;
        for f in Family::ALL {
            if self.0 < off + f.arity() {
                return f;
            }
            off += f.arity();
        }
        panic!("variable slot {} out of range", self.0)
    }

    /// 0-based index within the family.
    pub fn index(self) -> usize {
        self.0 - self.family().offset()
    }

    pub fn name(self) -> String {
        let f = self.family();
        match f {
            Family::A => format!("a{}", self.index()),
            Family::S | Family::T => f.prefix().to_string(),
            _ => format!("{}{}", f.prefix(), self.index() + 1),
        }
    }

    /// Torus weight of the variable.
    pub fn weight(self) -> [i64; 3] {
        let i = self.index();
        let unit = |s: i64| {
            let mut w = [0; 3];
            w[i] = s;
            w
        };
        match self.family() {
            Family::A => CUBIC_EXPONENTS[i].map(i64::from),
            Family::Q => QUADRATIC_EXPONENTS[i].map(i64::from),
            Family::X | Family::Y => unit(-1),
            Family::S | Family::T => [0; 3],
            _ => unit(1),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || PolyError::UnknownVariable(s.to_string());
        let mut chars = s.chars();
        let p = chars.next().ok_or_else(unknown)?;
        let fam = Family::ALL
            .into_iter()
            .find(|f| f.prefix() == p)
            .ok_or_else(unknown)?;
        let rest = chars.as_str();
        let idx = match fam {
            Family::S | Family::T if rest.is_empty() => 0,
            Family::S | Family::T => return Err(unknown()),
            Family::A => rest.parse::<usize>().map_err(|_| unknown())?,
            _ => rest
                .parse::<usize>()
                .map_err(|_| unknown())?
                .checked_sub(1)
                .ok_or_else(unknown)?,
        };
        if idx >= fam.arity() || (fam == Family::A && rest.len() != 1) {
            return Err(unknown());
        }
        Ok(fam.var(idx))
    }
}

/// Dense exponent vector. Ordered graded-lex: higher total degree first,
/// then larger exponent in the earliest variable first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial([u8; NVARS]);

impl Default for Monomial {
    fn default() -> Self {
        Monomial([0; NVARS])
    }
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::one();
        m.0[v.0] = 1;
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u8)>>(it: I) -> Self {
        let mut m = Self::one();
        for (v, e) in it {
            m.0[v.0] += e;
        }
        m
    }

    pub fn exp(&self, v: Var) -> u8 {
        self.0[v.0]
    }

    pub fn set_exp(&mut self, v: Var, e: u8) {
        self.0[v.0] = e;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn family_degree(&self, f: Family) -> u32 {
        f.vars().map(|v| self.0[v.0] as u32).sum()
    }

    /// Exponents of a family's variables.
    pub fn family_exponents(&self, f: Family) -> Vec<u8> {
        f.vars().map(|v| self.0[v.0]).collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let mut out = [0u8; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .checked_add(other.0[i])
                .ok_or(PolyError::Overflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u8; NVARS];
        for i in 0..NVARS {
            out[i] = other.0[i].checked_sub(self.0[i])?;
        }
        Some(Monomial(out))
    }

    /// Split into the part in `families` and the rest.
    pub fn split(&self, families: &[Family]) -> (Monomial, Monomial) {
        let mut inside = Monomial::one();
        let mut outside = *self;
        for f in families {
            for v in f.vars() {
                inside.0[v.0] = self.0[v.0];
                outside.0[v.0] = 0;
            }
        }
        (inside, outside)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var(i), e))
    }
}

/// Torus weight of a monomial, normalized.
pub fn weight_of(m: &Monomial) -> Weight {
    let mut w = [0i64; 3];
    for (v, e) in m.vars() {
        let vw = v.weight();
        for i in 0..3 {
            w[i] += vw[i] * e as i64;
        }
    }
    Weight::new(w)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .vars()
            .map(|(v, e)| {
                if e == 1 {
                    v.name()
                } else {
                    format!("{}^{e}", v.name())
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl FromStr for Monomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut m = Monomial::one();
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<u8>()
                        .map_err(|_| PolyError::UnknownVariable(factor.to_string()))?,
                ),
                None => (factor, 1),
            };
            let v: Var = name.parse()?;
            m.0[v.0] = m.0[v.0].checked_add(exp).ok_or(PolyError::Overflow)?;
        }
        Ok(m)
    }
}

/// Sparse polynomial; terms iterate in graded-lex order, leading term first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * vars[i]`.
    pub fn linear(
        vars: impl IntoIterator<Item = Var>,
        coeffs: impl IntoIterator<Item = Poly>,
    ) -> Self {
        vars.into_iter()
            .zip(coeffs)
            .fold(Poly::zero(), |acc, (v, c)| &acc + &(&Poly::var(v) * &c))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
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

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exp(v) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// `Some(d)` if every term has degree `d` in the family.
    pub fn family_degree(&self, f: Family) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.family_degree(f));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Replace variables by polynomials; unassigned variables stay.
    pub fn substitute(&self, assign: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u8), Poly> = BTreeMap::new();
        let mut images: BTreeMap<Var, Option<Poly>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.vars() {
                let img = images.entry(v).or_insert_with(|| assign(v)).clone();
                match img {
                    None => kept.0[v.0] = e,
                    Some(p) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e as u32));
                        acc = &acc * pw;
                    }
                }
            }
            if !kept.is_one() {
                acc = acc.mul_monomial(&kept);
            }
            out = &out + &acc;
        }
        out
    }

    /// Substitute rational values for variables.
    pub fn evaluate(&self, assign: &dyn Fn(Var) -> Option<Rational>) -> Poly {
        self.substitute(&|v| assign(v).map(Poly::constant))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m).expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    /// Partition by the sub-monomial in `families`; coefficients are in the rest.
    pub fn collect(&self, families: &[Family]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(families);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out
    }

    /// Coefficients in powers of one variable: `result[k]` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v.0] = 0;
            out[m.exp(v) as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut n = *m;
                n.0[v.0] -= 1;
                out.add_term(n, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact division; `Err` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (lm, lc) = d.leading().ok_or(PolyError::NotDivisible)?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let q = lm.quotient_of(m).ok_or(PolyError::NotDivisible)?;
            let qc = c / &lc;
            let t = Poly::term(q, qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(q, qc);
        }
        Ok(quot)
    }

    /// Scale to coprime integer coefficients with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        let Some((_, lead)) = self.leading() else {
            return Poly::zero();
        };
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, (c * Rational::from_integer(den.clone())).to_integer());
        }
        let mut s = Rational::new(den, g);
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// One summand per line, `coeff * monomial`, leading term first.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&format!("{c} * {m}\n"));
        }
        s
    }

    pub fn from_text(src: &str) -> Result<Poly, PolyError> {
        let mut p = Poly::zero();
        for (i, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| PolyError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let (c, m) = line.split_once(" * ").unwrap_or((line, "1"));
            let c: Rational = c.trim().parse().map_err(|_| err("bad coefficient"))?;
            let m: Monomial = m.parse().map_err(|e: PolyError| err(&e.to_string()))?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Sylvester resultant with respect to `v`.
    pub fn resultant(&self, other: &Poly, v: Var) -> Poly {
        let f = self.coeffs_in(v);
        let g = other.coeffs_in(v);
        let (m, n) = (f.len() - 1, g.len() - 1);
        let size = m + n;
        if size == 0 {
            return Poly::one();
        }
        let mut mat = vec![vec![Poly::zero(); size]; size];
        for r in 0..n {
            for (k, c) in f.iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in g.iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        determinant(&mat)
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)` in the variable `v`.
    pub fn discriminant(&self, v: Var) -> Poly {
        let n = self.degree_in(v) as usize;
        let lc = self.coeffs_in(v).pop().expect("nonempty");
        let r = self.resultant(&self.derivative(v), v);
        let r = if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -&r
        } else {
            r
        };
        r.div_exact(&lc)
            .expect("leading coefficient divides the resultant")
    }
}

/// Laplace expansion along the first row; small matrices only.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut out, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: rustc_hash::FxHashMap<Monomial, Rational> = rustc_hash::FxHashMap::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2).expect("exponent overflow");
                *acc.entry(m).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Generic cubic `sum_r a_r x^r`, or with any other point family.
pub fn generic_cubic(point: Family) -> Poly {
    let mut p = Poly::zero();
    for (r, e) in CUBIC_EXPONENTS.iter().enumerate() {
        let mut m = Monomial::var(Family::A.var(r));
        for i in 0..3 {
            m.set_exp(point.var(i), e[i]);
        }
        p.add_term(m, Rational::one());
    }
    p
}

/// Read off `a_r` as the coefficients of a cubic form in `x`.
pub fn cubic_coefficients(f: &Poly) -> [Poly; 10] {
    let coll = f.collect(&[Family::X]);
    std::array::from_fn(|r| {
        let e = CUBIC_EXPONENTS[r];
        let m = Monomial::from_pairs((0..3).map(|i| (Family::X.var(i), e[i])));
        coll.get(&m).cloned().unwrap_or_default()
    })
}

/// Cubic form in `x` with the given coefficient vector.
pub fn cubic_from_coefficients(a: &[Rational]) -> Poly {
    let mut p = Poly::zero();
    for (r, e) in CUBIC_EXPONENTS.iter().enumerate() {
        let m = Monomial::from_pairs((0..3).map(|i| (Family::X.var(i), e[i])));
        p.add_term(m, a[r].clone());
    }
    p
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> Var {
        Family::A.var(i)
    }
    fn x(i: usize) -> Var {
        Family::X.var(i - 1)
    }
    fn u(i: usize) -> Var {
        Family::U.var(i - 1)
    }
    fn b(i: usize) -> Var {
        Family::B.var(i - 1)
    }

    #[test]
    fn variable_table() {
        assert_eq!(Family::V.offset() + 3, NVARS);
        assert_eq!(a(9).name(), "a9");
        assert_eq!(x(1).name(), "x1");
        assert_eq!(Family::S.var(0).name(), "s");
        assert_eq!("q6".parse::<Var>().unwrap(), Family::Q.var(5));
        assert_eq!("t".parse::<Var>().unwrap(), Family::T.var(0));
        assert!("x4".parse::<Var>().is_err());
        assert!("x0".parse::<Var>().is_err());
        assert!("a10".parse::<Var>().is_err());
        for v in (0..NVARS).map(Var) {
            assert_eq!(v.name().parse::<Var>().unwrap(), v);
        }
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&Monomial::var(a(0))), Weight::new([3, 0, 0]));
        let m = Monomial::from_pairs([(a(0), 1), (a(9), 1)]);
        assert_eq!(weight_of(&m), Weight::new([3, 0, 3]));
        let m = Monomial::from_pairs([(x(1), 1), (u(1), 1)]);
        assert_eq!(weight_of(&m), Weight::ZERO);
        assert_eq!(cubic_index([1, 1, 1]), 4);
    }

    #[test]
    fn substitution() {
        let p = Poly::var(a(0));
        let img = p.substitute(&|v| (v == a(0)).then(|| Poly::var(b(1)).pow(3)));
        assert_eq!(img, Poly::var(b(1)).pow(3));
        let l = Poly::linear(Family::B.vars(), Family::X.vars().map(Poly::var));
        let coeffs = cubic_coefficients(&l.pow(3));
        let expect = Poly::term(Monomial::from_pairs([(b(1), 2), (b(2), 1)]), rat(3));
        assert_eq!(coeffs[1], expect);
    }

    #[test]
    fn collect_by_family() {
        let p = &(&Poly::var(x(1)) * &Poly::var(a(0))) + &(&Poly::var(x(2)) * &Poly::var(a(1)));
        let c = p.collect(&[Family::X]);
        assert_eq!(c.len(), 2);
        assert_eq!(c[&Monomial::var(x(1))], Poly::var(a(0)));
        assert_eq!(c[&Monomial::var(x(2))], Poly::var(a(1)));
    }

    #[test]
    fn text_round_trip() {
        let p = Poly::from_text("3 * a0^2*x1*u3\n-1/2 * a4\n7\n").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(Poly::from_text(&p.to_text()).unwrap(), p);
        assert_eq!(p.to_text().lines().next().unwrap(), "3 * a0^2*x1*u3");
        assert!(Poly::from_text("3 * z1").is_err());
    }

    #[test]
    fn division_and_primitive() {
        let f = &Poly::var(x(1)) + &Poly::var(x(2));
        let g = &Poly::var(x(1)) - &Poly::var(b(3));
        let h = &f * &g;
        assert_eq!(h.div_exact(&f).unwrap(), g);
        assert!(f.div_exact(&g).is_err());
        let p = Poly::from_text("-4 * x1\n6 * x2").unwrap();
        assert_eq!(p.primitive(), Poly::from_text("2 * x1\n-3 * x2").unwrap());
        let p = Poly::from_text("1/2 * x1\n1/3 * x2").unwrap();
        assert_eq!(p.primitive(), Poly::from_text("3 * x1\n2 * x2").unwrap());
    }

    #[test]
    fn quadratic_discriminant() {
        let t = x(1);
        let (pa, pb, pc) = (Poly::var(b(1)), Poly::var(b(2)), Poly::var(b(3)));
        let f = &(&(&pa * &Poly::var(t).pow(2)) + &(&pb * &Poly::var(t))) + &pc;
        let disc = f.discriminant(t);
        let expect = &pb.pow(2) - &(&Poly::int(4) * &(&pa * &pc));
        assert_eq!(disc, expect);
        let l = &(&Poly::var(b(2)) * &Poly::var(t)) + &Poly::var(b(3));
        let res = f.resultant(&l, t);
        let expect = &(&(&pa * &pc.pow(2)) - &(&pb * &(&pc * &pb))) + &(&pc * &pb.pow(2));
        assert_eq!(res, expect);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec((0usize..4, 0u8..3, 0usize..4, 0u8..3, -5i64..6), 0..5).prop_map(
                |ts| {
                    Poly::from_terms(ts.into_iter().map(|(v1, e1, v2, e2, c)| {
                        (
                            Monomial::from_pairs([
                                (Family::X.var(v1 % 3), e1),
                                (Family::A.var(v2), e2),
                            ]),
                            rat(c),
                        )
                    }))
                },
            )
        }

        proptest! {
            #[test]
            fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
                prop_assert_eq!(&p * &q, &q * &p);
                prop_assert!((&p - &p).is_zero());
            }

            #[test]
            fn substitute_is_homomorphism(p in small_poly(), q in small_poly(), img in small_poly()) {
                let assign = |v: Var| (v == Family::A.var(1)).then(|| img.clone());
                prop_assert_eq!((&p * &q).substitute(&assign), &p.substitute(&assign) * &q.substitute(&assign));
                prop_assert_eq!((&p + &q).substitute(&assign), &p.substitute(&assign) + &q.substitute(&assign));
            }

            #[test]
            fn collect_reassembles(p in small_poly()) {
                let back = p.collect(&[Family::X]).into_iter()
                    .fold(Poly::zero(), |acc, (m, c)| &acc + &c.mul_monomial(&m));
                prop_assert_eq!(back, p);
            }

            #[test]
            fn division_round_trip(p in small_poly(), q in small_poly()) {
                prop_assume!(!q.is_zero());
                prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
            }
        }
    }
}
