//! The symbolic method for ternary cubics.
//!
//! Expressions are sums of products of brackets `(a b c)` (3x3 determinants
//! whose rows are Greek symbols or the line variables `u`, `v`) and pairings
//! `s_x` / `s_y` (a Greek or line symbol against a point variable). Each
//! Greek letter is a formal copy of the cubic, `F = alpha_x^3`; after
//! multiplying out, a Greek monomial `alpha^i` (`|i| = 3`) stands for
//! `(i1! i2! i3! / 3!) a_r`.
//!
//! Expansion works on packed exponent keys with `i128` coefficients and
//! replaces each letter by its `a`-coefficient as soon as its third
//! occurrence has been multiplied in.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::polyring::{Family, Monomial, Poly, Rational, CUBIC_EXPONENTS};

pub const GREEK: [&str; 8] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at byte {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("unknown point variable `{name}` at byte {pos}")]
    UnknownPointVar { pos: usize, name: String },
    #[error("term {term}: Greek letter {letter} occurs {count} times, expected 3")]
    GreekDegree {
        term: usize,
        letter: String,
        count: u32,
    },
    #[error("term {term}: determinant has repeated row {row}")]
    RepeatedRow { term: usize, row: String },
    #[error("terms have different types: {0} vs {1}")]
    MixedType(ConcomitantType, ConcomitantType),
    #[error("expression has no terms")]
    Empty,
    #[error("exponent of {0} exceeds the packed range")]
    ExponentRange(String),
    #[error("coefficient overflow during expansion")]
    Overflow,
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
}

/// A row of a determinant or the left side of a pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Greek(u8),
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointVar {
    X,
    Y,
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Greek(g) => f.write_str(GREEK[*g as usize]),
            Sym::U => f.write_str("u"),
            Sym::V => f.write_str("v"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Det3([Sym; 3]),
    Pair(Sym, PointVar),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Det3([a, b, c]) => write!(f, "({a} {b} {c})"),
            Factor::Pair(s, PointVar::X) => write!(f, "{s}_x"),
            Factor::Pair(s, PointVar::Y) => write!(f, "{s}_y"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    /// Factors with their powers.
    pub factors: Vec<(Factor, u32)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BracketExpr {
    pub terms: Vec<Term>,
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !t.coeff.is_one() {
                write!(f, "{} ", t.coeff)?;
            }
            let parts: Vec<String> = t
                .factors
                .iter()
                .map(|(fa, p)| {
                    if *p == 1 {
                        fa.to_string()
                    } else {
                        format!("{fa}^{p}")
                    }
                })
                .collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Degree in the coefficients, order in `x`, class in `u`, and the degrees
/// in the auxiliary copies `y`, `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ConcomitantType {
    pub degree: u32,
    pub order: u32,
    pub class: u32,
    pub order_y: u32,
    pub class_v: u32,
}

impl ConcomitantType {
    pub fn new(degree: u32, order: u32, class: u32) -> Self {
        Self {
            degree,
            order,
            class,
            ..Self::default()
        }
    }
}

impl fmt::Display for ConcomitantType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.degree, self.order, self.class)?;
        if self.order_y > 0 || self.class_v > 0 {
            write!(f, "+y{}v{}", self.order_y, self.class_v)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Caret,
    Underscore,
    Plus,
    Minus,
    Word(String),
    Number(String),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, BracketError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '^' => Tok::Caret,
            '_' => Tok::Underscore,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Word(src[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_digit() || bytes[i] == b'/') {
                    i += 1;
                }
                out.push((start, Tok::Number(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(BracketError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, BracketError> {
        Err(BracketError::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self) -> Result<Sym, BracketError> {
        let pos = self.offset();
        match self.next() {
            Some(Tok::Word(w)) => match w.as_str() {
                "u" => Ok(Sym::U),
                "v" => Ok(Sym::V),
                _ => GREEK
                    .iter()
                    .position(|g| *g == w)
                    .map(|g| Sym::Greek(g as u8))
                    .ok_or(BracketError::UnknownSymbol { pos, name: w }),
            },
            _ => {
                self.pos -= 1;
                self.err("expected a symbol")
            }
        }
    }

    fn atom(&mut self) -> Result<Factor, BracketError> {
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            let rows = [self.sym()?, self.sym()?, self.sym()?];
            if self.next() != Some(Tok::RParen) {
                self.pos -= 1;
                return self.err("expected `)` closing a determinant of three rows");
            }
            return Ok(Factor::Det3(rows));
        }
        let s = self.sym()?;
        if self.next() != Some(Tok::Underscore) {
            self.pos -= 1;
            return self.err("expected `_` in a pairing");
        }
        let pos = self.offset();
        match self.next() {
            Some(Tok::Word(w)) if w == "x" => Ok(Factor::Pair(s, PointVar::X)),
            Some(Tok::Word(w)) if w == "y" => Ok(Factor::Pair(s, PointVar::Y)),
            Some(Tok::Word(w)) => Err(BracketError::UnknownPointVar { pos, name: w }),
            _ => {
                self.pos -= 1;
                self.err("expected a point variable")
            }
        }
    }

    fn term(&mut self, sign: i64) -> Result<Term, BracketError> {
        let mut coeff = Rational::from_integer(sign.into());
        if let Some(Tok::Number(n)) = self.peek().cloned() {
            let c: Rational = n.parse().map_err(|_| BracketError::Syntax {
                pos: self.offset(),
                msg: format!("bad coefficient `{n}`"),
            })?;
            self.next();
            coeff *= c;
        }
        let mut factors = Vec::new();
        while matches!(self.peek(), Some(Tok::LParen) | Some(Tok::Word(_))) {
            let f = self.atom()?;
            let mut power = 1;
            if self.peek() == Some(&Tok::Caret) {
                self.next();
                match self.next() {
                    Some(Tok::Number(n)) => {
                        power = n.parse().or_else(|_| {
                            self.pos -= 1;
                            self.err("bad exponent")
                        })?
                    }
                    _ => {
                        self.pos -= 1;
                        return self.err("expected an exponent");
                    }
                }
            }
            factors.push((f, power));
        }
        if factors.is_empty() {
            return self.err("expected a factor");
        }
        Ok(Term { coeff, factors })
    }
}

pub fn parse(src: &str) -> Result<BracketExpr, BracketError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
    };
    let mut terms = Vec::new();
    let mut sign = 1;
    if p.peek() == Some(&Tok::Minus) {
        p.next();
        sign = -1;
    }
    loop {
        terms.push(p.term(sign)?);
        match p.next() {
            None => break,
            Some(Tok::Plus) => sign = 1,
            Some(Tok::Minus) => sign = -1,
            Some(_) => {
                p.pos -= 1;
                return p.err("expected `+`, `-` or end of input");
            }
        }
    }
    Ok(BracketExpr { terms })
}

// ------------------------------------------------------------- validation

fn term_type(idx: usize, t: &Term) -> Result<ConcomitantType, BracketError> {
    let mut greek = [0u32; 8];
    let mut ty = ConcomitantType::default();
    let mut count = |s: Sym, k: u32, ty: &mut ConcomitantType| match s {
        Sym::Greek(g) => greek[g as usize] += k,
        Sym::U => ty.class += k,
        Sym::V => ty.class_v += k,
    };
    for (f, k) in &t.factors {
        match f {
            Factor::Det3(rows) => {
                for (i, r) in rows.iter().enumerate() {
                    if rows[..i].contains(r) {
                        return Err(BracketError::RepeatedRow {
                            term: idx,
                            row: r.to_string(),
                        });
                    }
                    count(*r, *k, &mut ty);
                }
            }
            Factor::Pair(s, pv) => {
                count(*s, *k, &mut ty);
                match pv {
                    PointVar::X => ty.order += k,
                    PointVar::Y => ty.order_y += k,
                }
            }
        }
    }
    for (g, &c) in greek.iter().enumerate() {
        if c != 0 && c != 3 {
            return Err(BracketError::GreekDegree {
                term: idx,
                letter: GREEK[g].to_string(),
                count: c,
            });
        }
    }
    ty.degree = greek.iter().filter(|&&c| c == 3).count() as u32;
    Ok(ty)
}

pub fn validate(e: &BracketExpr) -> Result<ConcomitantType, BracketError> {
    let mut ty: Option<ConcomitantType> = None;
    for (i, t) in e.terms.iter().enumerate() {
        let tt = term_type(i, t)?;
        match ty {
            None => ty = Some(tt),
            Some(prev) if prev != tt => return Err(BracketError::MixedType(prev, tt)),
            _ => {}
        }
    }
    ty.ok_or(BracketError::Empty)
}

// -------------------------------------------------------------- expansion

/// 46 four-bit slots: Greek letter components 0..24, `a` 24..34, `x` 34..37,
/// `u` 37..40, `y` 40..43, `v` 43..46.
type Key = [u64; 3];

const SLOT_A: usize = 24;
const SLOT_X: usize = 34;
const SLOT_U: usize = 37;
const SLOT_Y: usize = 40;
const SLOT_V: usize = 43;

#[inline]
fn nib(k: &Key, slot: usize) -> u64 {
    (k[slot / 16] >> ((slot % 16) * 4)) & 0xf
}

#[inline]
fn unit(slot: usize) -> Key {
    let mut k = [0u64; 3];
    k[slot / 16] = 1u64 << ((slot % 16) * 4);
    k
}

#[inline]
fn key_add(a: &Key, b: &Key) -> Key {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sym_slot(s: Sym, comp: usize) -> usize {
    match s {
        Sym::Greek(g) => g as usize * 3 + comp,
        Sym::U => SLOT_U + comp,
        Sym::V => SLOT_V + comp,
    }
}

const PERMS: [([usize; 3], i128); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
    ([1, 0, 2], -1),
];

fn factor_terms(f: &Factor) -> Vec<(Key, i128)> {
    match f {
        Factor::Det3(rows) => PERMS
            .iter()
            .map(|(p, s)| {
                let k = (0..3).fold([0u64; 3], |acc, r| {
                    key_add(&acc, &unit(sym_slot(rows[r], p[r])))
                });
                (k, *s)
            })
            .collect(),
        Factor::Pair(s, pv) => (0..3)
            .map(|i| {
                let base = match pv {
                    PointVar::X => SLOT_X,
                    PointVar::Y => SLOT_Y,
                };
                (key_add(&unit(sym_slot(*s, i)), &unit(base + i)), 1)
            })
            .collect(),
    }
}

fn greek_in(f: &Factor) -> Vec<u8> {
    let syms: Vec<Sym> = match f {
        Factor::Det3(r) => r.to_vec(),
        Factor::Pair(s, _) => vec![*s],
    };
    syms.into_iter()
        .filter_map(|s| match s {
            Sym::Greek(g) => Some(g),
            _ => None,
        })
        .collect()
}

/// Greedy factor order keeping few letters open at a time. Returns the
/// factor sequence and, per step, the letters completed by that step.
fn schedule(t: &Term) -> Vec<(Factor, Vec<u8>)> {
    let mut pending: Vec<Factor> = t
        .factors
        .iter()
        .flat_map(|(f, k)| std::iter::repeat_n(f.clone(), *k as usize))
        .collect();
    let mut remaining = [0u32; 8];
    for f in &pending {
        for g in greek_in(f) {
            remaining[g as usize] += 1;
        }
    }
    let mut open = [false; 8];
    let mut out = Vec::new();
    while !pending.is_empty() {
        let score = |f: &Factor| {
            let mut rem = remaining;
            let mut op = open;
            for g in greek_in(f) {
                rem[g as usize] -= 1;
                op[g as usize] = true;
            }
            let open_after = (0..8).filter(|&g| op[g] && rem[g] > 0).count();
            let newly = greek_in(f).iter().filter(|g| !open[**g as usize]).count();
            (open_after, newly)
        };
        let (best, _) = pending
            .iter()
            .enumerate()
            .min_by_key(|(i, f)| (score(f), *i))
            .expect("nonempty");
        let f = pending.remove(best);
        for g in greek_in(&f) {
            remaining[g as usize] -= 1;
            open[g as usize] = true;
        }
        let closed: Vec<u8> = (0..8u8)
            .filter(|&g| open[g as usize] && remaining[g as usize] == 0)
            .collect();
        for &g in &closed {
            open[g as usize] = false;
        }
        out.push((f, closed));
    }
    out
}

/// `r` with `CUBIC_EXPONENTS[r] = (i1, i2, 3 - i1 - i2)`, indexed `[i1][i2]`.
const CUBIC_LOOKUP: [[usize; 4]; 4] = {
    let mut t = [[usize::MAX; 4]; 4];
    let mut r = 0;
    while r < 10 {
        let e = CUBIC_EXPONENTS[r];
        t[e[0] as usize][e[1] as usize] = r;
        r += 1;
    }
    t
};

/// `i1! i2! i3!`, six times the symbolic weight `(i!)/3!`.
fn greek_weight(e: [u64; 3]) -> i128 {
    let fact = |n: u64| (1..=n as i128).product::<i128>();
    fact(e[0]) * fact(e[1]) * fact(e[2])
}

type TermMap = FxHashMap<Key, i128>;

fn add_into(map: &mut TermMap, k: Key, c: i128) -> Result<(), BracketError> {
    let e = map.entry(k).or_insert(0);
    *e = e.checked_add(c).ok_or(BracketError::Overflow)?;
    Ok(())
}

fn step(state: &TermMap, terms: &[(Key, i128)], closed: &[u8]) -> Result<TermMap, BracketError> {
    let work = |chunk: &[(&Key, &i128)]| -> Result<TermMap, BracketError> {
        let mut out = TermMap::default();
        for (k, c) in chunk {
            for (dk, dc) in terms {
                let mut nk = key_add(k, dk);
                let mut coef = c.checked_mul(*dc).ok_or(BracketError::Overflow)?;
                for &g in closed {
                    let base = g as usize * 3;
                    let e = [nib(&nk, base), nib(&nk, base + 1), nib(&nk, base + 2)];
                    for (i, ei) in e.iter().enumerate() {
                        let s = base + i;
                        nk[s / 16] -= ei << ((s % 16) * 4);
                    }
                    let r = CUBIC_LOOKUP[e[0] as usize][e[1] as usize];
                    nk = key_add(&nk, &unit(SLOT_A + r));
                    coef = coef
                        .checked_mul(greek_weight(e))
                        .ok_or(BracketError::Overflow)?;
                }
                add_into(&mut out, nk, coef)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    };
    let items: Vec<(&Key, &i128)> = state.iter().collect();
    if items.len() < 4096 {
        return work(&items);
    }
    items
        .par_chunks(2048)
        .map(work)
        .try_reduce(TermMap::default, |mut a, b| {
            let (mut big, small) = if a.len() >= b.len() {
                (std::mem::take(&mut a), b)
            } else {
                (b, a)
            };
            for (k, c) in small {
                add_into(&mut big, k, c)?;
            }
            big.retain(|_, c| *c != 0);
            Ok(big)
        })
}

fn expand_term(t: &Term) -> Result<TermMap, BracketError> {
    let mut state = TermMap::default();
    state.insert([0; 3], 1);
    for (f, closed) in schedule(t) {
        state = step(&state, &factor_terms(&f), &closed)?;
        if state.is_empty() {
            break;
        }
    }
    Ok(state)
}

fn key_to_monomial(k: &Key) -> Monomial {
    let mut m = Monomial::one();
    for r in 0..10 {
        m.set_exp(Family::A.var(r), nib(k, SLOT_A + r) as u8);
    }
    for i in 0..3 {
        m.set_exp(Family::X.var(i), nib(k, SLOT_X + i) as u8);
        m.set_exp(Family::U.var(i), nib(k, SLOT_U + i) as u8);
        m.set_exp(Family::Y.var(i), nib(k, SLOT_Y + i) as u8);
        m.set_exp(Family::V.var(i), nib(k, SLOT_V + i) as u8);
    }
    m
}

/// An expanded concomitant, normalized to primitive integer coefficients
/// with positive leading coefficient. May be zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Concomitant {
    pub ty: ConcomitantType,
    pub poly: Poly,
}

impl Concomitant {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Specialize the coefficients `a_r` to the given values.
    pub fn evaluate(&self, a: &[Rational]) -> Poly {
        self.poly
            .evaluate(&|v| (v.family() == Family::A).then(|| a[v.index()].clone()))
    }

    /// Coefficient polynomials in `a`, one per monomial in the covariant variables.
    pub fn coefficients(&self) -> BTreeMap<Monomial, Poly> {
        self.poly
            .collect(&[Family::X, Family::U, Family::Y, Family::V])
    }
}

pub fn expand(e: &BracketExpr) -> Result<Concomitant, BracketError> {
    let ty = validate(e)?;
    for (name, v) in [
        ("x", ty.order),
        ("u", ty.class),
        ("y", ty.order_y),
        ("v", ty.class_v),
    ] {
        if v > 15 {
            return Err(BracketError::ExponentRange(name.to_string()));
        }
    }
    if ty.degree > 15 {
        return Err(BracketError::ExponentRange("a".to_string()));
    }
    // Terms with rational weights: scale to a common integer denominator.
    let mut den = BigInt::one();
    for t in &e.terms {
        den = num_integer::lcm(den, t.coeff.denom().clone());
    }
    let mut total: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for t in &e.terms {
        let w = (&t.coeff * Rational::from_integer(den.clone())).to_integer();
        for (k, c) in expand_term(t)? {
            *total
                .entry(key_to_monomial(&k))
                .or_insert_with(BigInt::zero) += &w * BigInt::from(c);
        }
    }
    let poly = Poly::from_terms(
        total
            .into_iter()
            .map(|(m, c)| (m, Rational::from_integer(c))),
    );
    Ok(Concomitant {
        ty,
        poly: poly.primitive(),
    })
}

// ---------------------------------------------------------------- catalog

pub const CATALOG: [(&str, &str); 14] = [
    ("Phi222", "(alpha beta u)^2 alpha_x beta_x"),
    ("Phi303", "(alpha beta gamma) (alpha beta u) (alpha gamma u) (beta gamma u)"),
    ("Phi330", "(alpha beta gamma)^2 alpha_x beta_x gamma_x"),
    ("Phi406", "(alpha beta u)^2 (gamma delta u)^2 (alpha delta u) (beta gamma u)"),
    ("Phi406_dualcurve", "(alpha beta u)^2 (gamma delta u)^2 (alpha gamma u) (beta delta u)"),
    ("Phi441", "(alpha beta gamma) (alpha gamma delta) (alpha beta u) beta_x gamma_x delta_x^2"),
    ("Phi400", "(alpha beta gamma) (alpha beta delta) (alpha gamma delta) (beta gamma delta)"),
    ("Phi503", "(alpha beta gamma) (alpha beta delta) (beta gamma epsilon) (alpha gamma u) (delta epsilon u)^2"),
    (
        "Phi600",
        "(alpha beta gamma) (alpha beta delta) (beta gamma epsilon) (alpha gamma zeta) (delta epsilon zeta)^2",
    ),
    (
        "Phi814",
        "alpha_x (alpha beta gamma) (alpha beta delta) (beta gamma epsilon) (gamma zeta u) \
         (delta epsilon u) (delta eta u) (epsilon theta u) (zeta eta theta)^2",
    ),
    ("Psi54", "(alpha u v)^2 alpha_y v_x^2"),
    ("Psi51", "alpha_x alpha_y^2 v_x u_y^2"),
    ("Psi42", "(alpha u v) alpha_x alpha_y v_x u_y"),
    ("Psi21", "(alpha u v) alpha_x^2 u_y"),
];

pub fn catalog_source(name: &str) -> Result<&'static str, BracketError> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| BracketError::UnknownName(name.to_string()))
}

pub fn catalog(name: &str) -> Result<BracketExpr, BracketError> {
    parse(catalog_source(name)?)
}

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

// ---------------------------------------------------------------- oracles

/// `det(d^2 F / dx_i dx_j)` for the cubic with coefficients `a`.
pub fn hessian_oracle(a: &[Rational]) -> Poly {
    let f = crate::polyring::cubic_from_coefficients(a);
    let xs: Vec<_> = Family::X.vars().collect();
    let m: Vec<Vec<Poly>> = xs
        .iter()
        .map(|&xi| {
            xs.iter()
                .map(|&xj| f.derivative(xi).derivative(xj))
                .collect()
        })
        .collect();
    crate::polyring::determinant(&m)
}
