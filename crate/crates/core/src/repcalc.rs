//! `SL3` weight and character calculus.
//!
//! Characters are finitely supported integer functions on torus weights,
//! stored modulo `(1,1,1)` (normalized so the smallest coordinate is zero).
//! Plethysms are only ever needed for complete (`h`), elementary (`e`) and
//! hook Schur functors, which come from Newton's identities driven by Adams
//! operations. Decomposition into irreducibles is the greedy peel off the
//! lexicographically largest weight.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("character is not Weyl-symmetric at weight {0}")]
    NotWeylSymmetric(Weight),
    #[error("operation needs a genuine character, found multiplicity {mult} at {weight}")]
    Virtual { weight: Weight, mult: i64 },
    #[error("not a dominant weight: ({0}, {1})")]
    NotDominant(i64, i64),
    #[error("cannot parse irreducible label `{0}`")]
    BadLabel(String),
}

/// Torus weight of `SL3`, taken modulo `(1,1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight([i64; 3]);

impl Weight {
    pub fn new(w: [i64; 3]) -> Self {
        let m = w.iter().copied().min().unwrap_or(0);
        Weight([w[0] - m, w[1] - m, w[2] - m])
    }

    pub const ZERO: Weight = Weight([0, 0, 0]);

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight::new([k * self.0[0], k * self.0[1], k * self.0[2]])
    }

    pub fn neg(&self) -> Weight {
        Weight::new([-self.0[0], -self.0[1], -self.0[2]])
    }

    /// The six images under coordinate permutations (with repeats).
    pub fn orbit(&self) -> [Weight; 6] {
        let [a, b, c] = self.0;
        [
            Weight([a, b, c]),
            Weight([a, c, b]),
            Weight([b, a, c]),
            Weight([b, c, a]),
            Weight([c, a, b]),
            Weight([c, b, a]),
        ]
    }

    /// Sorted-descending representative, as a dominant label.
    pub fn dominant(&self) -> DominantWeight {
        let mut w = self.0;
        w.sort_unstable_by(|x, y| y.cmp(x));
        DominantWeight::new((w[0] - w[2]) as u32, (w[1] - w[2]) as u32).expect("sorted")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Label `(a, b)` with `a >= b >= 0` of the irreducible `S_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    pub a: u32,
    pub b: u32,
}

impl DominantWeight {
    pub fn new(a: u32, b: u32) -> Result<Self, RepError> {
        if a < b {
            return Err(RepError::NotDominant(a as i64, b as i64));
        }
        Ok(Self { a, b })
    }

    /// Shorthand for literals known to be dominant.
    pub const fn of(a: u32, b: u32) -> Self {
        assert!(a >= b);
        Self { a, b }
    }

    pub fn weight(&self) -> Weight {
        Weight([self.a as i64, self.b as i64, 0])
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a < 10 {
            write!(f, "{}{}", self.a, self.b)
        } else {
            write!(f, "{},{}", self.a, self.b)
        }
    }
}

/// Parses the compact `{ab}` labels: `"54"` is `S_{5,4}`, `"11,1"` is `S_{11,1}`.
impl FromStr for DominantWeight {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RepError::BadLabel(s.to_string());
        let s = s.trim();
        let (a, b) = if let Some((a, b)) = s.split_once(',') {
            (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            )
        } else {
            let digits: Vec<u32> = s
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            match digits.as_slice() {
                [a, b] => (*a, *b),
                _ => return Err(bad()),
            }
        };
        DominantWeight::new(a, b).map_err(|_| bad())
    }
}

impl Serialize for DominantWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DominantWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(m+1)(n+1)(m+n+2)/2` with `m = a - b`, `n = b`.
pub fn dim_irrep(w: DominantWeight) -> u64 {
    let m = (w.a - w.b) as u64;
    let n = w.b as u64;
    (m + 1) * (n + 1) * (m + n + 2) / 2
}

/// `S_{a,b}^* = S_{a,a-b}`.
pub fn dual(w: DominantWeight) -> DominantWeight {
    DominantWeight {
        a: w.a,
        b: w.a - w.b,
    }
}

/// A virtual character.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    mults: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn trivial() -> Self {
        Self::scalar(1)
    }

    /// `n` copies of the trivial representation.
    pub fn scalar(n: i64) -> Self {
        let mut c = Self::zero();
        c.add_weight(Weight::ZERO, n);
        c
    }

    pub fn from_weights<I: IntoIterator<Item = (Weight, i64)>>(it: I) -> Self {
        let mut c = Self::zero();
        for (w, m) in it {
            c.add_weight(w, m);
        }
        c
    }

    fn from_map(map: FxHashMap<Weight, i64>) -> Self {
        Self {
            mults: map.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    pub fn add_weight(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mults.entry(Weight::new(w.0)).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&Weight::new(w.0));
        }
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.mults.get(&Weight::new(w.0)).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.mults.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Sum of multiplicities.
    pub fn dim(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.mults.values().all(|&m| m > 0)
    }

    fn check_genuine(&self) -> Result<(), RepError> {
        match self.mults.iter().find(|(_, &m)| m < 0) {
            Some((w, &m)) => Err(RepError::Virtual {
                weight: *w,
                mult: m,
            }),
            None => Ok(()),
        }
    }

    pub fn check_weyl_symmetric(&self) -> Result<(), RepError> {
        for (w, &m) in &self.mults {
            for s in w.orbit() {
                if self.mult(&s) != m {
                    return Err(RepError::NotWeylSymmetric(*w));
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, &m) in &other.mults {
            out.add_weight(*w, m);
        }
        out
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Character {
        if k == 0 {
            return Character::zero();
        }
        Character {
            mults: self.mults.iter().map(|(w, m)| (*w, m * k)).collect(),
        }
    }

    /// Weight-multiset convolution.
    pub fn tensor(&self, other: &Character) -> Character {
        let (small, large) = if self.mults.len() <= other.mults.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: FxHashMap<Weight, i64> = FxHashMap::default();
        acc.reserve(large.mults.len() * 2);
        for (w1, m1) in &small.mults {
            for (w2, m2) in &large.mults {
                *acc.entry(w1.add(w2)).or_insert(0) += m1 * m2;
            }
        }
        Character::from_map(acc)
    }

    /// Weights reflected, `w -> -w`.
    pub fn dual(&self) -> Character {
        Character {
            mults: self.mults.iter().map(|(w, m)| (w.neg(), *m)).collect(),
        }
    }

    /// Lexicographically greatest support weight.
    pub fn top_weight(&self) -> Option<(Weight, i64)> {
        self.mults.iter().next_back().map(|(w, m)| (*w, *m))
    }
}

/// Complete homogeneous character `h_k(V)`: all weights of degree `k`.
pub fn sym_fundamental(k: u32) -> Character {
    let k = k as i64;
    let mut c = Character::zero();
    for i in 0..=k {
        for j in 0..=k - i {
            c.add_weight(Weight::new([i, j, k - i - j]), 1);
        }
    }
    c
}

/// Character of the defining representation `V = S_{1,0}`.
pub fn fundamental() -> Character {
    sym_fundamental(1)
}

/// Jacobi-Trudi: `s_{(a,b)} = h_a h_b - h_{a+1} h_{b-1}`.
pub fn weyl_character(w: DominantWeight) -> Character {
    if w.b == 0 {
        return sym_fundamental(w.a);
    }
    sym_fundamental(w.a)
        .tensor(&sym_fundamental(w.b))
        .sub(&sym_fundamental(w.a + 1).tensor(&sym_fundamental(w.b - 1)))
}

/// Irreducible constituents with (possibly negative) multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    terms: BTreeMap<DominantWeight, i64>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_labels<I: IntoIterator<Item = DominantWeight>>(labels: I) -> Self {
        let mut d = Self::new();
        for l in labels {
            d.add(l, 1);
        }
        d
    }

    pub fn add(&mut self, w: DominantWeight, m: i64) {
        let e = self.terms.entry(w).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn mult(&self, w: DominantWeight) -> i64 {
        self.terms.get(&w).copied().unwrap_or(0)
    }

    /// Terms in descending label order, as the modules are usually listed.
    pub fn terms(&self) -> impl Iterator<Item = (DominantWeight, i64)> + '_ {
        self.terms.iter().rev().map(|(w, m)| (*w, *m))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.terms
            .iter()
            .map(|(w, m)| dim_irrep(*w) as i64 * m)
            .sum()
    }

    /// Labels with repetition; panics on negative multiplicities.
    pub fn labels(&self) -> Vec<DominantWeight> {
        self.terms()
            .flat_map(|(w, m)| {
                assert!(m >= 0, "virtual decomposition has no label list");
                std::iter::repeat_n(w, m as usize)
            })
            .collect()
    }

    pub fn character(&self) -> Character {
        self.terms.iter().fold(Character::zero(), |acc, (w, m)| {
            acc.add(&weyl_character(*w).scale(*m))
        })
    }

    pub fn dual(&self) -> Decomposition {
        let mut d = Decomposition::new();
        for (w, m) in &self.terms {
            d.add(dual(*w), *m);
        }
        d
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(w, m)| {
                if m == 1 {
                    w.to_string()
                } else {
                    format!("{m}*{w}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Greedy peel into irreducibles. Exact: the result reassembles to `c`.
pub fn decompose(c: &Character) -> Result<Decomposition, RepError> {
    c.check_weyl_symmetric()?;
    let mut rest = c.clone();
    let mut out = Decomposition::new();
    while let Some((w, m)) = rest.top_weight() {
        let label = w.dominant();
        debug_assert_eq!(label.weight(), w);
        out.add(label, m);
        rest = rest.sub(&weyl_character(label).scale(m));
    }
    Ok(out)
}

pub fn multiplicity(c: &Character, w: DominantWeight) -> Result<i64, RepError> {
    Ok(decompose(c)?.mult(w))
}

/// Adams operation: every weight scaled by `k`.
pub fn adams(k: u32, c: &Character) -> Character {
    assert!(k >= 1, "Adams operations start at 1");
    Character {
        mults: c
            .mults
            .iter()
            .map(|(w, m)| (w.scale(k as i64), *m))
            .collect::<FxHashMap<_, _>>()
            .into_iter()
            .fold(BTreeMap::new(), |mut acc, (w, m)| {
                *acc.entry(w).or_insert(0) += m;
                acc
            }),
    }
}

fn exact_div(c: Character, k: i64) -> Character {
    Character {
        mults: c
            .mults
            .into_iter()
            .map(|(w, m)| {
                assert_eq!(m % k, 0, "Newton recurrence left a remainder");
                (w, m / k)
            })
            .collect(),
    }
}

/// `h_0 .. h_l` of `c` via `l h_l = sum_i psi^i(c) h_{l-i}`.
pub fn sym_powers(l: u32, c: &Character) -> Result<Vec<Character>, RepError> {
    c.check_genuine()?;
    let psi: Vec<Character> = (1..=l).map(|i| adams(i, c)).collect();
    let mut h = vec![Character::trivial()];
    for n in 1..=l as usize {
        let mut acc = Character::zero();
        for i in 1..=n {
            acc = acc.add(&psi[i - 1].tensor(&h[n - i]));
        }
        h.push(exact_div(acc, n as i64));
    }
    Ok(h)
}

pub fn sym_power(l: u32, c: &Character) -> Result<Character, RepError> {
    Ok(sym_powers(l, c)?.pop().expect("h_l"))
}

/// `e_0 .. e_k` of `c` via `k e_k = sum_i (-1)^(i-1) psi^i(c) e_{k-i}`.
/// Powers past `dim c` come out as zero.
pub fn ext_powers(k: u32, c: &Character) -> Vec<Character> {
    let psi: Vec<Character> = (1..=k).map(|i| adams(i, c)).collect();
    let mut e = vec![Character::trivial()];
    for n in 1..=k as usize {
        let mut acc = Character::zero();
        for i in 1..=n {
            let term = psi[i - 1].tensor(&e[n - i]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        e.push(exact_div(acc, n as i64));
    }
    e
}

pub fn ext_power(k: u32, c: &Character) -> Character {
    ext_powers(k, c).pop().expect("e_k")
}

/// Schur functor of the hook `(a, 1^b)`:
/// `sum_{i=0}^{b} (-1)^i h_{a+i} e_{b-i}`.
pub fn hook_schur(a: u32, b: u32, c: &Character) -> Result<Character, RepError> {
    assert!(a >= 1, "hook needs a first row");
    let h = sym_powers(a + b, c)?;
    let e = ext_powers(b, c);
    let mut acc = Character::zero();
    for i in 0..=b {
        let term = h[(a + i) as usize].tensor(&e[(b - i) as usize]);
        acc = if i % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dw(a: u32, b: u32) -> DominantWeight {
        DominantWeight::of(a, b)
    }

    fn decomp(labels: &[(u32, u32)]) -> Decomposition {
        Decomposition::from_labels(labels.iter().map(|&(a, b)| dw(a, b)))
    }

    /// Gelfand-Tsetlin patterns with top row `(a, b, 0)`; weight from row sums.
    fn gt_character(w: DominantWeight) -> Character {
        let (l1, l2, l3) = (w.a as i64, w.b as i64, 0i64);
        let mut c = Character::zero();
        for m1 in l2..=l1 {
            for m2 in l3..=l2 {
                for k in m2..=m1 {
                    let wt = [k, m1 + m2 - k, l1 + l2 + l3 - m1 - m2];
                    c.add_weight(Weight::new(wt), 1);
                }
            }
        }
        c
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_irrep(dw(0, 0)), 1);
        assert_eq!(dim_irrep(dw(4, 2)), 27);
        assert_eq!(dim_irrep(dw(3, 0)), 10);
    }

    #[test]
    fn small_characters() {
        let v = weyl_character(dw(1, 0));
        assert_eq!(v, fundamental());
        let vd = weyl_character(dw(1, 1));
        assert_eq!(vd, fundamental().dual());
        let adj = weyl_character(dw(2, 1));
        assert_eq!(adj.mult(&Weight::ZERO), 2);
        assert_eq!(adj.mult(&Weight::new([2, 1, 0])), 1);
        assert_eq!(adj.dim(), 8);
        assert_eq!(adj, gt_character(dw(2, 1)));
    }

    #[test]
    fn weyl_matches_gelfand_tsetlin() {
        for a in 0..9 {
            for b in 0..=a {
                let w = dw(a, b);
                let c = weyl_character(w);
                assert_eq!(c, gt_character(w), "{w}");
                assert_eq!(c.dim() as u64, dim_irrep(w));
            }
        }
    }

    #[test]
    fn duals() {
        assert_eq!(dual(dw(5, 4)), dw(5, 1));
        assert_eq!(dual(dw(0, 0)), dw(0, 0));
        assert_eq!(dual(dw(6, 3)), dw(6, 3));
        assert_eq!(weyl_character(dw(5, 4)).dual(), weyl_character(dw(5, 1)));
    }

    #[test]
    fn decomposition_examples() {
        let adj = fundamental().tensor(&fundamental().dual());
        assert_eq!(decompose(&adj).unwrap(), decomp(&[(2, 1), (0, 0)]));
        let s3 = weyl_character(dw(3, 0));
        assert_eq!(
            decompose(&sym_power(2, &s3).unwrap()).unwrap(),
            decomp(&[(6, 0), (4, 2)])
        );
        assert_eq!(
            decompose(&sym_power(3, &s3).unwrap()).unwrap(),
            decomp(&[(9, 0), (7, 2), (6, 3), (3, 3), (3, 0)])
        );
    }

    #[test]
    fn asymmetric_input_rejected() {
        let c = Character::from_weights([(Weight::new([1, 0, 0]), 1)]);
        assert!(matches!(decompose(&c), Err(RepError::NotWeylSymmetric(_))));
    }

    #[test]
    fn tensor_examples() {
        let s3 = weyl_character(dw(3, 0));
        let d = decompose(&s3.tensor(&s3)).unwrap();
        assert_eq!(d, decomp(&[(6, 0), (5, 1), (4, 2), (3, 3)]));
        assert_eq!(d.dim(), 100);
        let d = decompose(&weyl_character(dw(2, 1)).tensor(&weyl_character(dw(3, 3)))).unwrap();
        assert_eq!(d.mult(dw(3, 3)), 1);
        let tens: Vec<_> = d.terms().filter(|(w, _)| dim_irrep(*w) == 10).collect();
        assert_eq!(tens, vec![(dw(3, 3), 1)]);
    }

    #[test]
    fn adams_preserves_dimension() {
        let c = weyl_character(dw(4, 1));
        assert_eq!(adams(1, &c), c);
        assert_eq!(adams(3, &c).dim(), c.dim());
        let v2 = adams(2, &fundamental());
        assert_eq!(v2.mult(&Weight::new([2, 0, 0])), 1);
        assert_eq!(v2.mult(&Weight::new([1, 0, 0])), 0);
    }

    #[test]
    fn symmetric_powers() {
        let s3 = weyl_character(dw(3, 0));
        assert_eq!(sym_power(1, &s3).unwrap(), s3);
        let s33 = weyl_character(dw(3, 3));
        assert_eq!(
            decompose(&sym_power(2, &s33).unwrap()).unwrap(),
            decomp(&[(6, 6), (4, 2)])
        );
        let s8 = sym_power(8, &s3).unwrap();
        assert_eq!(s8.dim(), 24310);
        let d = decompose(&s8).unwrap();
        assert_eq!(d.mult(dw(5, 4)), 1);
        assert_eq!(d.mult(dw(5, 1)), 1);
        assert!(sym_power(2, &s3.scale(-1)).is_err());
    }

    #[test]
    fn exterior_powers() {
        let s2 = weyl_character(dw(2, 0));
        assert_eq!(
            decompose(&ext_power(3, &s2)).unwrap(),
            decomp(&[(3, 3), (3, 0)])
        );
        assert_eq!(decompose(&ext_power(6, &s2)).unwrap(), decomp(&[(0, 0)]));
        assert!(ext_power(7, &s2).is_zero());
        let e4v = ext_power(4, &s2).tensor(&fundamental());
        assert_eq!(decompose(&e4v).unwrap(), decomp(&[(4, 2), (3, 3), (2, 1)]));
    }

    #[test]
    fn hooks() {
        let s3 = weyl_character(dw(3, 0));
        assert_eq!(hook_schur(3, 0, &s3).unwrap(), sym_power(3, &s3).unwrap());
        for k in 0..5 {
            assert_eq!(hook_schur(1, k, &s3).unwrap(), ext_power(k + 1, &s3));
        }
        let h = hook_schur(4, 3, &s3).unwrap();
        assert_eq!(h.dim(), 34320);
        assert!(decompose(&h).unwrap().is_nonnegative());
    }

    #[test]
    fn multiplicities() {
        let s42 = weyl_character(dw(4, 2));
        assert_eq!(multiplicity(&s42.tensor(&s42), dw(0, 0)).unwrap(), 1);
        let sym2 = sym_power(2, &weyl_character(dw(3, 0))).unwrap();
        assert_eq!(multiplicity(&sym2, dw(4, 2)).unwrap(), 1);
        let m = decomp(&[(5, 4), (3, 3)]).character().tensor(&sym2);
        assert_eq!(multiplicity(&m, dw(0, 0)).unwrap(), 0);
    }

    #[test]
    fn newton_h_e_orthogonality() {
        for base in [weyl_character(dw(2, 0)), weyl_character(dw(3, 0))] {
            let h = sym_powers(6, &base).unwrap();
            let e = ext_powers(6, &base);
            for l in 1..=6usize {
                let mut acc = Character::zero();
                for k in 0..=l {
                    let t = e[k].tensor(&h[l - k]);
                    acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                }
                assert!(acc.is_zero(), "l = {l}");
            }
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!("54".parse::<DominantWeight>().unwrap(), dw(5, 4));
        assert_eq!("11,1".parse::<DominantWeight>().unwrap(), dw(11, 1));
        assert!("45".parse::<DominantWeight>().is_err());
        assert_eq!(dw(14, 1).to_string(), "14,1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn genuine() -> impl Strategy<Value = Decomposition> {
            prop::collection::vec((0u32..6, 0u32..6, 1i64..3), 1..4).prop_map(|v| {
                let mut d = Decomposition::new();
                for (a, b, m) in v {
                    d.add(dw(a.max(b), a.min(b)), m);
                }
                d
            })
        }

        proptest! {
            #[test]
            fn decompose_reassembles(d in genuine(), e in genuine()) {
                let c = d.character().sub(&e.character());
                let back = decompose(&c).unwrap();
                prop_assert_eq!(back.character(), c);
            }

            #[test]
            fn dual_commutes_with_decompose(d in genuine()) {
                let c = d.character();
                prop_assert_eq!(decompose(&c.dual()).unwrap(), decompose(&c).unwrap().dual());
                prop_assert_eq!(c.dual().dual(), c);
            }

            #[test]
            fn tensor_commutative_and_multiplicative(d in genuine(), e in genuine()) {
                let (c1, c2) = (d.character(), e.character());
                let t = c1.tensor(&c2);
                prop_assert_eq!(&t, &c2.tensor(&c1));
                prop_assert_eq!(t.dim(), c1.dim() * c2.dim());
            }

            #[test]
            fn adams_keeps_dim(d in genuine(), k in 1u32..5) {
                let c = d.character();
                prop_assert_eq!(adams(k, &c).dim(), c.dim());
            }
        }
    }
}
