//! The six loci of decomposable cubics and their parameterizations.
//!
//! Each locus is the closure of the image of a polynomial map from a
//! parameter space to `P^9`: write `F` as a product of generic forms and read
//! off `a_r = phi_r(params)` as the coefficient of the `r`-th cubic monomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::PrimeField;
use crate::polyring::{
    cubic_coefficients, rat, Family, Monomial, Poly, Rational, Var, QUADRATIC_EXPONENTS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LociError {
    #[error("unknown locus `{0}` (expected equiv|neq|y|delta|tact|empty)")]
    UnknownLocus(String),
    #[error("no generator set computed for {0}; run the degree-0 kernel first")]
    MissingGenerators(LocusId),
    #[error("sampler drew the zero cubic {0} times in a row")]
    SamplerExhausted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusId {
    Equiv,
    Neq,
    Y,
    Delta,
    Tact,
    Empty,
}

impl LocusId {
    pub const ALL: [LocusId; 6] = [
        LocusId::Equiv,
        LocusId::Neq,
        LocusId::Y,
        LocusId::Delta,
        LocusId::Tact,
        LocusId::Empty,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LocusId::Equiv => "equiv",
            LocusId::Neq => "neq",
            LocusId::Y => "y",
            LocusId::Delta => "delta",
            LocusId::Tact => "tact",
            LocusId::Empty => "empty",
        }
    }

    /// Projective dimension of the locus.
    pub fn dimension(self) -> u32 {
        match self {
            LocusId::Equiv => 2,
            LocusId::Neq => 4,
            LocusId::Y => 5,
            LocusId::Delta | LocusId::Tact => 6,
            LocusId::Empty => 7,
        }
    }

    pub fn codimension(self) -> u32 {
        9 - self.dimension()
    }

    /// Loci contained in this one.
    pub fn sublocii(self) -> &'static [LocusId] {
        match self {
            LocusId::Equiv => &[],
            LocusId::Neq => &[LocusId::Equiv],
            LocusId::Y => &[LocusId::Equiv, LocusId::Neq],
            LocusId::Delta => &[LocusId::Equiv, LocusId::Neq, LocusId::Y],
            LocusId::Tact => &[LocusId::Equiv, LocusId::Neq, LocusId::Y],
            LocusId::Empty => &[
                LocusId::Equiv,
                LocusId::Neq,
                LocusId::Y,
                LocusId::Delta,
                LocusId::Tact,
            ],
        }
    }

    /// Degrees of the minimal generators.
    pub fn generator_degrees(self) -> &'static [u32] {
        match self {
            LocusId::Equiv => &[2],
            LocusId::Neq => &[3, 4],
            LocusId::Y => &[3],
            LocusId::Delta => &[4],
            LocusId::Tact => &[4, 5],
            LocusId::Empty => &[8],
        }
    }
}

impl fmt::Display for LocusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LocusId {
    type Err = LociError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LocusId::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| LociError::UnknownLocus(s.to_string()))
    }
}

/// `phi_r` as integer-coefficient terms over the parameter list.
#[derive(Debug, Clone)]
pub struct SparseMap {
    pub params: Vec<Var>,
    /// For each `r`: `(coefficient, exponent per parameter)`.
    pub terms: Vec<Vec<(i64, Vec<u8>)>>,
}

impl SparseMap {
    fn from_polys(params: &[Var], phi: &[Poly; 10]) -> Self {
        let terms = phi
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(m, c)| {
                        let c = c.to_integer().to_i64().expect("small coefficient");
                        (c, params.iter().map(|v| m.exp(*v)).collect())
                    })
                    .collect()
            })
            .collect();
        Self {
            params: params.to_vec(),
            terms,
        }
    }

    pub fn eval_mod(&self, field: &PrimeField, x: &[u64]) -> [u64; 10] {
        let p = field.modulus();
        std::array::from_fn(|r| {
            self.terms[r].iter().fold(0u64, |acc, (c, e)| {
                let mut t = field.reduce_i128(*c as i128);
                for (xi, &k) in x.iter().zip(e) {
                    if k > 0 {
                        t = (t as u128 * field.pow(*xi, k as u64) as u128 % p as u128) as u64;
                    }
                }
                (acc + t) % p
            })
        })
    }

    pub fn eval_int(&self, x: &[i64]) -> [BigInt; 10] {
        std::array::from_fn(|r| {
            self.terms[r].iter().fold(BigInt::zero(), |acc, (c, e)| {
                let mut t = BigInt::from(*c);
                for (xi, &k) in x.iter().zip(e) {
                    t *= BigInt::from(*xi).pow(k as u32);
                }
                acc + t
            })
        })
    }
}

#[derive(Debug, Clone)]
pub struct LocusSpec {
    pub id: LocusId,
    /// Parameter families, in order.
    pub families: Vec<Family>,
    pub params: Vec<Var>,
    pub phi: [Poly; 10],
    pub sparse: SparseMap,
}

impl LocusSpec {
    pub fn dimension(&self) -> u32 {
        self.id.dimension()
    }

    pub fn apply(&self, values: &[Rational]) -> [Rational; 10] {
        let lookup: BTreeMap<Var, Rational> = self
            .params
            .iter()
            .copied()
            .zip(values.iter().cloned())
            .collect();
        std::array::from_fn(|r| {
            self.phi[r]
                .evaluate(&|v| lookup.get(&v).cloned())
                .constant_term()
        })
    }
}

fn linear(f: Family, point: Family) -> Poly {
    Poly::linear(point.vars(), f.vars().map(Poly::var))
}

fn quadric(point: Family) -> Poly {
    let mut q = Poly::zero();
    for (i, e) in QUADRATIC_EXPONENTS.iter().enumerate() {
        let mut m = Monomial::var(Family::Q.var(i));
        for k in 0..3 {
            m.set_exp(point.var(k), e[k]);
        }
        q.add_term(m, rat(1));
    }
    q
}

/// The cubic form in `x` parameterizing a locus.
pub fn parametric_form(id: LocusId) -> (Vec<Family>, Poly) {
    let l = |f| linear(f, Family::X);
    match id {
        LocusId::Equiv => (vec![Family::B], l(Family::B).pow(3)),
        LocusId::Neq => (
            vec![Family::B, Family::C],
            &l(Family::B).pow(2) * &l(Family::C),
        ),
        LocusId::Delta => (
            vec![Family::B, Family::C, Family::D],
            &(&l(Family::B) * &l(Family::C)) * &l(Family::D),
        ),
        LocusId::Y => {
            let l3 = &(&Poly::var(Family::S.var(0)) * &l(Family::B))
                + &(&Poly::var(Family::T.var(0)) * &l(Family::C));
            (
                vec![Family::B, Family::C, Family::S, Family::T],
                &(&l(Family::B) * &l(Family::C)) * &l3,
            )
        }
        LocusId::Tact => {
            let lb = l(Family::B);
            let conic = &(&lb * &l(Family::M)) + &l(Family::K).pow(2);
            (vec![Family::B, Family::M, Family::K], &lb * &conic)
        }
        LocusId::Empty => (
            vec![Family::Q, Family::B],
            &quadric(Family::X) * &l(Family::B),
        ),
    }
}

pub fn substitution_map(id: LocusId) -> &'static LocusSpec {
    static SPECS: OnceLock<Vec<LocusSpec>> = OnceLock::new();
    let specs = SPECS.get_or_init(|| {
        LocusId::ALL
            .iter()
            .map(|&id| {
                let (families, form) = parametric_form(id);
                let params: Vec<Var> = families.iter().flat_map(|f| f.vars()).collect();
                let phi = cubic_coefficients(&form);
                let sparse = SparseMap::from_polys(&params, &phi);
                LocusSpec {
                    id,
                    families,
                    params,
                    phi,
                    sparse,
                }
            })
            .collect()
    });
    &specs[LocusId::ALL.iter().position(|l| *l == id).expect("listed")]
}

/// A point of `P^9`, given by integer or residue coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CubicPoint {
    Integer(Vec<BigInt>),
    Residue { values: Vec<u64>, modulus: u64 },
}

impl CubicPoint {
    pub fn is_zero(&self) -> bool {
        match self {
            CubicPoint::Integer(v) => v.iter().all(Zero::is_zero),
            CubicPoint::Residue { values, .. } => values.iter().all(|&x| x == 0),
        }
    }

    pub fn rationals(&self) -> Option<Vec<Rational>> {
        match self {
            CubicPoint::Integer(v) => Some(
                v.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect(),
            ),
            CubicPoint::Residue { .. } => None,
        }
    }

    pub fn residues(&self, field: &PrimeField) -> Vec<u64> {
        match self {
            CubicPoint::Integer(v) => v.iter().map(|x| field.reduce_bigint(x)).collect(),
            CubicPoint::Residue { values, modulus } => {
                assert_eq!(
                    *modulus,
                    field.modulus(),
                    "residue point over another prime"
                );
                values.clone()
            }
        }
    }
}

const MAX_REDRAWS: usize = 64;

/// Integer parameters in `[-20, 20]`, substituted into the map.
pub fn sample(id: LocusId, seed: u64) -> Result<CubicPoint, LociError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(id, &mut rng)
}

pub fn sample_with<R: Rng>(id: LocusId, rng: &mut R) -> Result<CubicPoint, LociError> {
    let spec = substitution_map(id);
    for _ in 0..MAX_REDRAWS {
        let x: Vec<i64> = (0..spec.params.len())
            .map(|_| rng.gen_range(-20..=20))
            .collect();
        let p = CubicPoint::Integer(spec.sparse.eval_int(&x).to_vec());
        if !p.is_zero() {
            return Ok(p);
        }
    }
    Err(LociError::SamplerExhausted(MAX_REDRAWS))
}

/// Uniform residue parameters, substituted modulo the prime.
pub fn sample_mod<R: Rng>(
    id: LocusId,
    field: &PrimeField,
    rng: &mut R,
) -> Result<[u64; 10], LociError> {
    let spec = substitution_map(id);
    for _ in 0..MAX_REDRAWS {
        let x: Vec<u64> = (0..spec.params.len())
            .map(|_| rng.gen_range(0..field.modulus()))
            .collect();
        let a = spec.sparse.eval_mod(field, &x);
        if a.iter().any(|&v| v != 0) {
            return Ok(a);
        }
    }
    Err(LociError::SamplerExhausted(MAX_REDRAWS))
}

/// Integer point with integer parameters, for the cubics given by hand.
pub fn point_from_params(id: LocusId, params: &[i64]) -> CubicPoint {
    CubicPoint::Integer(substitution_map(id).sparse.eval_int(params).to_vec())
}

// ---------------------------------------------------------- tact invariant

/// Variables of the affine conic `q1 x1^2 + q2 x2^2 + q3 x1 x2 + q4 x1 + q5 x2 + q6`
/// and line `b1 x1 + b2 x2 + b3`.
fn affine_q(i: usize) -> Var {
    Family::Q.var(i - 1)
}
fn affine_b(i: usize) -> Var {
    Family::B.var(i - 1)
}

pub fn affine_conic() -> Poly {
    let (x1, x2) = (Poly::var(Family::X.var(0)), Poly::var(Family::X.var(1)));
    let q = |i| Poly::var(affine_q(i));
    let terms = [
        &q(1) * &x1.pow(2),
        &q(2) * &x2.pow(2),
        &(&q(3) * &x1) * &x2,
        &q(4) * &x1,
        &q(5) * &x2,
        q(6),
    ];
    terms.iter().fold(Poly::zero(), |acc, t| &acc + t)
}

pub fn affine_line() -> Poly {
    let (x1, x2) = (Poly::var(Family::X.var(0)), Poly::var(Family::X.var(1)));
    let b = |i| Poly::var(affine_b(i));
    &(&(&b(1) * &x1) + &(&b(2) * &x2)) + &b(3)
}

/// `-Disc_{x1}(Res_{x2}(Q, L)) / b2^2`, computed symbolically. The sign
/// makes a secant line of a real ellipse negative.
pub fn tact_polynomial() -> &'static Poly {
    static T: OnceLock<Poly> = OnceLock::new();
    T.get_or_init(|| {
        let res = affine_conic().resultant(&affine_line(), Family::X.var(1));
        let t_prime = res.discriminant(Family::X.var(0));
        -&t_prime
            .div_exact(&Poly::var(affine_b(2)).pow(2))
            .expect("b2^2 divides the discriminant")
    })
}

/// The twelve-term expansion as usually printed.
pub fn tact_printed() -> Poly {
    let mono = |qs: &[usize], bs: &[usize]| {
        Monomial::from_pairs(
            qs.iter()
                .map(|&i| (affine_q(i), 1))
                .chain(bs.iter().map(|&i| (affine_b(i), 1))),
        )
    };
    let terms: [(i64, &[usize], &[usize]); 12] = [
        (4, &[2, 6], &[1, 1]),
        (-4, &[2, 4], &[1, 3]),
        (4, &[1, 2], &[3, 3]),
        (-1, &[5, 5], &[1, 1]),
        (-4, &[3, 6], &[1, 2]),
        (2, &[4, 5], &[1, 2]),
        (2, &[3, 5], &[1, 3]),
        (-1, &[4, 4], &[2, 2]),
        (-4, &[1, 5], &[2, 3]),
        (2, &[3, 4], &[2, 3]),
        (-1, &[3, 3], &[3, 3]),
        (4, &[1, 6], &[2, 2]),
    ];
    Poly::from_terms(terms.iter().map(|(c, q, b)| (mono(q, b), rat(*c))))
}

/// Value of the tact invariant at a conic `q1..q6` and line `b1..b3`.
pub fn tact_invariant(q: &[Rational; 6], b: &[Rational; 3]) -> Rational {
    tact_polynomial()
        .evaluate(&|v| match v.family() {
            Family::Q => Some(q[v.index()].clone()),
            Family::B => Some(b[v.index()].clone()),
            _ => None,
        })
        .constant_term()
}

/// Chart `x3 = 1` of a projective conic with coefficients in
/// `QUADRATIC_EXPONENTS` order, rewritten in the affine convention.
pub fn conic_to_affine(c: &[Rational; 6]) -> [Rational; 6] {
    // x1^2, x1x2, x1x3, x2^2, x2x3, x3^2  ->  x1^2, x2^2, x1x2, x1, x2, 1
    [
        c[0].clone(),
        c[3].clone(),
        c[1].clone(),
        c[2].clone(),
        c[4].clone(),
        c[5].clone(),
    ]
}

/// Concurrency determinant `det(b; c; d)`.
pub fn concurrency_determinant(
    b: &[Rational; 3],
    c: &[Rational; 3],
    d: &[Rational; 3],
) -> Rational {
    &b[0] * (&c[1] * &d[2] - &c[2] * &d[1]) - &b[1] * (&c[0] * &d[2] - &c[2] * &d[0])
        + &b[2] * (&c[0] * &d[1] - &c[1] * &d[0])
}

// -------------------------------------------------------- on-locus checks

/// Generators of `I_X` in the minimal degrees, as sparse polynomials in `a`
/// with residue coefficients.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub locus: LocusId,
    pub prime: u64,
    pub generators: Vec<Vec<([u8; 10], u64)>>,
}

impl GeneratorSet {
    pub fn vanishes_at(&self, a: &[u64]) -> bool {
        let field = PrimeField::new(self.prime).expect("prime");
        let p = self.prime as u128;
        self.generators.iter().all(|g| {
            let v = g.iter().fold(0u128, |acc, (e, c)| {
                let mut t = *c as u128;
                for (r, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t = t * field.pow(a[r], k as u64) as u128 % p;
                    }
                }
                (acc + t) % p
            });
            v == 0
        })
    }
}

/// Registry of computed generator sets.
#[derive(Debug, Clone, Default)]
pub struct GeneratorRegistry {
    sets: BTreeMap<LocusId, GeneratorSet>,
}

impl GeneratorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, set: GeneratorSet) {
        self.sets.insert(set.locus, set);
    }

    pub fn get(&self, id: LocusId) -> Option<&GeneratorSet> {
        self.sets.get(&id)
    }
}

/// True iff every minimal generator of `I_X` vanishes at `F`.
pub fn on_locus_check(
    reg: &GeneratorRegistry,
    id: LocusId,
    f: &CubicPoint,
) -> Result<bool, LociError> {
    let set = reg.get(id).ok_or(LociError::MissingGenerators(id))?;
    let field = PrimeField::new(set.prime).expect("prime");
    Ok(set.vanishes_at(&f.residues(&field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::weight_of;

    #[test]
    fn ids_round_trip() {
        for id in LocusId::ALL {
            assert_eq!(id.as_str().parse::<LocusId>().unwrap(), id);
        }
        assert_eq!("Y".parse::<LocusId>().unwrap(), LocusId::Y);
        assert!("cusp".parse::<LocusId>().is_err());
        let dims: Vec<u32> = LocusId::ALL.iter().map(|l| l.dimension()).collect();
        assert_eq!(dims, vec![2, 4, 5, 6, 6, 7]);
    }

    #[test]
    fn veronese_map() {
        let s = substitution_map(LocusId::Equiv);
        let b = |i| Poly::var(Family::B.var(i));
        assert_eq!(s.phi[0], b(0).pow(3));
        assert_eq!(s.phi[1], &b(0).pow(2) * &b(1).scale(&rat(3)));
    }

    #[test]
    fn maps_are_equivariant() {
        for id in LocusId::ALL {
            let s = substitution_map(id);
            for r in 0..10 {
                let target = weight_of(&Monomial::var(Family::A.var(r)));
                assert!(!s.phi[r].is_zero(), "{id} phi_{r}");
                for (m, _) in s.phi[r].terms() {
                    assert_eq!(weight_of(m), target, "{id} phi_{r}");
                }
            }
        }
    }

    #[test]
    fn coordinate_triangle() {
        // b = e1, c = e2, d = e3.
        let mut params = vec![0i64; 9];
        params[0] = 1;
        params[4] = 1;
        params[8] = 1;
        let p = point_from_params(LocusId::Delta, &params);
        let mut expect = vec![BigInt::zero(); 10];
        expect[4] = BigInt::from(1);
        assert_eq!(p, CubicPoint::Integer(expect));
        let p = point_from_params(LocusId::Equiv, &[1, 0, 0]);
        let mut expect = vec![BigInt::zero(); 10];
        expect[0] = BigInt::from(1);
        assert_eq!(p, CubicPoint::Integer(expect));
    }

    #[test]
    fn y_samples_concurrent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let b: [Rational; 3] = std::array::from_fn(|_| rat(rng.gen_range(-20..=20)));
            let c: [Rational; 3] = std::array::from_fn(|_| rat(rng.gen_range(-20..=20)));
            let (s, t) = (rat(rng.gen_range(-20..=20)), rat(rng.gen_range(-20..=20)));
            let d: [Rational; 3] = std::array::from_fn(|i| &s * &b[i] + &t * &c[i]);
            assert!(concurrency_determinant(&b, &c, &d).is_zero());
        }
    }

    #[test]
    fn sampling_is_seeded() {
        for id in LocusId::ALL {
            assert_eq!(sample(id, 3).unwrap(), sample(id, 3).unwrap());
            assert!(!sample(id, 3).unwrap().is_zero());
        }
        assert_ne!(
            sample(LocusId::Empty, 1).unwrap(),
            sample(LocusId::Empty, 2).unwrap()
        );
    }

    #[test]
    fn tact_matches_printed_formula() {
        assert_eq!(tact_polynomial(), &tact_printed());
    }

    #[test]
    fn tact_examples() {
        let circle = [rat(1), rat(1), rat(0), rat(0), rat(0), rat(-1)];
        assert_eq!(tact_invariant(&circle, &[rat(0), rat(1), rat(-1)]), rat(0));
        assert_eq!(tact_invariant(&circle, &[rat(0), rat(1), rat(0)]), rat(-4));
        assert_eq!(tact_invariant(&circle, &[rat(1), rat(0), rat(-1)]), rat(0));
    }

    #[test]
    fn tact_family_is_tangent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
                (0..3).map(|_| rng.gen_range(-20..=20)).collect()
            };
            let (b, m, k) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let lin = |v: &[i64], f: Family| {
                Poly::linear(Family::X.vars(), f.vars().map(Poly::var))
                    .evaluate(&|var| (var.family() == f).then(|| rat(v[var.index()])))
            };
            let conic = &(&lin(&b, Family::B) * &lin(&m, Family::M)) + &lin(&k, Family::K).pow(2);
            let coeff = |e: [u8; 3]| {
                conic.coeff(&Monomial::from_pairs(
                    (0..3).map(|i| (Family::X.var(i), e[i])),
                ))
            };
            let c: [Rational; 6] = std::array::from_fn(|i| coeff(QUADRATIC_EXPONENTS[i]));
            let bq: [Rational; 3] = std::array::from_fn(|i| rat(b[i]));
            assert!(tact_invariant(&conic_to_affine(&c), &bq).is_zero());
        }
    }
}
