//! Graded pieces of the ideals `I_X` of the loci.
//!
//! The degree-`l` piece of `I_X` is the kernel of the substitution map
//! `R_l -> C[params]`, `a_r -> phi_r`. The map commutes with the torus, so
//! it is assembled and solved one weight block at a time; the block
//! nullities are the weight multiplicities of the kernel's character.
//!
//! Substitution images are integer polynomials in the parameters, stored
//! with exponents packed into a `u128` (8 bits per parameter) and `i128`
//! coefficients. Kernels are taken modulo each configured prime and the
//! per-block nullities must agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::brackets::{self, BracketError, Concomitant};
use crate::exactla::{
    self, consensus, Field, IncrementalEchelon, LinalgError, Matrix, PrimeField, Rational,
};
use crate::loci::{sample_mod, substitution_map, GeneratorSet, LociError, LocusId};
use crate::polyring::{Family, Monomial, Poly, CUBIC_EXPONENTS};
use crate::repcalc::{
    decompose, dim_irrep, weyl_character, Character, Decomposition, DominantWeight, RepError,
    Weight,
};
use crate::tableaux::{self, Bigrading, TableauError};

#[derive(Debug, Error)]
pub enum IdealError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Loci(#[from] LociError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("degree {0} out of range")]
    Degree(u32),
    #[error("coefficient overflow in the substitution image")]
    Overflow,
    #[error("no first-syzygy computation for ({locus}, {degree})")]
    Unsupported { locus: LocusId, degree: u32 },
    #[error("coefficient polynomial is not homogeneous of degree {0} in a")]
    NotHomogeneous(u32),
    #[error("unknown relation concomitant `{0}`")]
    UnknownRelation(String),
}

/// Exponent vector of a monomial in `a_0..a_9`.
pub type AExp = [u8; 10];

/// `dim R_l = C(l+9, 9)`.
pub fn dim_r(l: u32) -> u64 {
    num_integer::binomial(l as u64 + 9, 9)
}

/// All degree-`l` monomials, `a_0^l` first.
pub fn a_monomials(l: u32) -> Vec<AExp> {
    fn rec(pos: usize, left: u8, cur: &mut AExp, out: &mut Vec<AExp>) {
        if pos == 9 {
            cur[9] = left;
            out.push(*cur);
            return;
        }
        for k in (0..=left).rev() {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::with_capacity(dim_r(l) as usize);
    rec(0, l as u8, &mut [0; 10], &mut out);
    out
}

/// Unnormalized torus weight: the sum of the exponent vectors.
pub fn a_weight(e: &AExp) -> [i64; 3] {
    let mut w = [0i64; 3];
    for (r, &k) in e.iter().enumerate() {
        for i in 0..3 {
            w[i] += k as i64 * CUBIC_EXPONENTS[r][i] as i64;
        }
    }
    w
}

fn shift(w: [i64; 3], r: usize) -> [i64; 3] {
    [
        w[0] + CUBIC_EXPONENTS[r][0] as i64,
        w[1] + CUBIC_EXPONENTS[r][1] as i64,
        w[2] + CUBIC_EXPONENTS[r][2] as i64,
    ]
}

/// Degree-`l` monomials grouped by weight, in weight order.
pub fn weight_blocks(l: u32) -> BTreeMap<[i64; 3], Vec<AExp>> {
    let mut out: BTreeMap<[i64; 3], Vec<AExp>> = BTreeMap::new();
    for e in a_monomials(l) {
        out.entry(a_weight(&e)).or_default().push(e);
    }
    out
}

/// Polynomial `a^e` as a [`Poly`].
pub fn a_poly(e: &AExp) -> Monomial {
    Monomial::from_pairs(e.iter().enumerate().map(|(r, &k)| (Family::A.var(r), k)))
}

/// Sparse `a`-polynomial from a [`Poly`] in the `a` variables only.
pub fn a_terms(p: &Poly, degree: u32) -> Result<Vec<(AExp, Rational)>, IdealError> {
    p.terms()
        .map(|(m, c)| {
            if m.degree() != degree || m.family_degree(Family::A) != degree {
                return Err(IdealError::NotHomogeneous(degree));
            }
            let ex = m.family_exponents(Family::A);
            Ok((std::array::from_fn(|r| ex[r]), c.clone()))
        })
        .collect()
}

// ------------------------------------------------------------ substitution

/// Parameter polynomial with packed exponents, sorted by key.
pub type Image = Vec<(u128, i128)>;

fn pack(e: &[u8]) -> u128 {
    e.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &k)| acc | (k as u128) << (8 * i))
}

fn mul_images(a: &Image, b: &Image) -> Result<Image, IdealError> {
    let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let c = ca.checked_mul(*cb).ok_or(IdealError::Overflow)?;
            let e = acc.entry(ka + kb).or_insert(0);
            *e = e.checked_add(c).ok_or(IdealError::Overflow)?;
        }
    }
    let mut v: Image = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort_unstable_by_key(|t| t.0);
    Ok(v)
}

fn first_var(e: &AExp) -> usize {
    e.iter().position(|&k| k > 0).expect("positive degree")
}

/// Images of all monomials of degree `degree - 1`; degree-`degree` images
/// are produced on demand with one more multiplication.
pub struct SubstitutionImages {
    pub locus: LocusId,
    pub degree: u32,
    phi: [Image; 10],
    below: FxHashMap<AExp, Image>,
}

impl SubstitutionImages {
    pub fn new(id: LocusId, degree: u32) -> Result<Self, IdealError> {
        let spec = substitution_map(id);
        // Packed exponents are 8-bit; a parameter appears at most 3l times.
        if degree == 0 || degree > 80 || spec.params.len() > 16 {
            return Err(IdealError::Degree(degree));
        }
        let phi: [Image; 10] = std::array::from_fn(|r| {
            let mut v: Image = spec.sparse.terms[r]
                .iter()
                .map(|(c, e)| (pack(e), *c as i128))
                .collect();
            v.sort_unstable_by_key(|t| t.0);
            v
        });
        let mut below: FxHashMap<AExp, Image> = FxHashMap::default();
        below.insert([0; 10], vec![(0, 1)]);
        for k in 1..degree {
            let prev = &below;
            let next: Result<Vec<(AExp, Image)>, IdealError> = a_monomials(k)
                .into_par_iter()
                .map(|e| {
                    let r = first_var(&e);
                    let mut q = e;
                    q[r] -= 1;
                    Ok((e, mul_images(&prev[&q], &phi[r])?))
                })
                .collect();
            below = next?.into_iter().collect();
        }
        Ok(Self {
            locus: id,
            degree,
            phi,
            below,
        })
    }

    pub fn image(&self, e: &AExp) -> Result<Image, IdealError> {
        let r = first_var(e);
        let mut q = *e;
        q[r] -= 1;
        mul_images(&self.below[&q], &self.phi[r])
    }

    /// Exact image of an integer combination of degree-`degree` monomials.
    pub fn apply(&self, f: &[(AExp, BigInt)]) -> Result<BTreeMap<u128, BigInt>, IdealError> {
        let mut acc: BTreeMap<u128, BigInt> = BTreeMap::new();
        for (e, c) in f {
            for (k, v) in self.image(e)? {
                *acc.entry(k).or_insert_with(BigInt::zero) += c * BigInt::from(v);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(acc)
    }
}

fn fields(primes: &[u64]) -> Result<Vec<PrimeField>, IdealError> {
    if primes.is_empty() {
        return Err(LinalgError::TooFewPrimes(0).into());
    }
    Ok(primes
        .iter()
        .map(|&p| PrimeField::checked(p))
        .collect::<Result<_, _>>()?)
}

fn agree(primes: &[u64], values: &[usize]) -> Result<usize, IdealError> {
    if values.len() == 1 {
        return Ok(values[0]);
    }
    Ok(consensus(primes, values)?)
}

fn character_of(blocks: impl IntoIterator<Item = ([i64; 3], usize)>) -> Character {
    Character::from_weights(blocks.into_iter().map(|(w, n)| (Weight::new(w), n as i64)))
}

// ---------------------------------------------------------- graded kernels

#[derive(Debug, Clone)]
pub struct KernelBlock {
    pub weight: [i64; 3],
    pub monomials: Vec<AExp>,
    pub nullity: usize,
    /// Kernel basis over `monomials`, one list per prime.
    pub bases: Vec<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub locus: LocusId,
    pub degree: u32,
    pub primes: Vec<u64>,
    /// Blocks with nonzero kernel, in weight order.
    pub blocks: Vec<KernelBlock>,
    pub block_count: usize,
    pub dimension: usize,
    pub character: Character,
    pub decomposition: Decomposition,
}

#[derive(Serialize)]
struct BlockJson {
    weight: [i64; 3],
    nullity: usize,
}

impl GradedPiece {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "locus": self.locus,
            "degree": self.degree,
            "blocks": self.blocks.iter().map(|b| BlockJson { weight: b.weight, nullity: b.nullity }).collect::<Vec<_>>(),
            "character": self.decomposition.terms().map(|(w, m)| json!({"a": w.a, "b": w.b, "mult": m})).collect::<Vec<_>>(),
        })
    }

    /// Kernel basis over the prime with index `pi`, as sparse polynomials.
    pub fn basis(&self, pi: usize) -> Vec<Vec<(AExp, u64)>> {
        self.blocks
            .iter()
            .flat_map(|b| {
                b.bases[pi].iter().map(move |v| {
                    b.monomials
                        .iter()
                        .zip(v)
                        .filter(|(_, &c)| c != 0)
                        .map(|(m, &c)| (*m, c))
                        .collect()
                })
            })
            .collect()
    }

    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet {
            locus: self.locus,
            prime: self.primes[0],
            generators: self.basis(0),
        }
    }

    /// Whether every basis element over prime `pi` vanishes at `a`.
    pub fn vanishes_at(&self, pi: usize, a: &[u64; 10]) -> bool {
        GeneratorSet {
            locus: self.locus,
            prime: self.primes[pi],
            generators: self.basis(pi),
        }
        .vanishes_at(a)
    }
}

fn block_kernel(field: &PrimeField, images: &[Image]) -> Vec<Vec<u64>> {
    let mut keys: Vec<u128> = images
        .iter()
        .flat_map(|im| im.iter().map(|t| t.0))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let row_of: FxHashMap<u128, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m = Matrix::zeros(field, keys.len(), images.len());
    for (j, im) in images.iter().enumerate() {
        for (k, c) in im {
            m.set(row_of[k], j, field.reduce_i128(*c));
        }
    }
    exactla::nullspace(field, &m)
}

/// Degree-`l` piece of `I_X`, computed modulo each prime.
pub fn graded_kernel(id: LocusId, l: u32, primes: &[u64]) -> Result<GradedPiece, IdealError> {
    if l == 0 {
        return Err(IdealError::Degree(0));
    }
    let fields = fields(primes)?;
    let subs = SubstitutionImages::new(id, l)?;
    let blocks = weight_blocks(l);
    let block_count = blocks.len();
    let solved: Result<Vec<Option<KernelBlock>>, IdealError> = blocks
        .into_par_iter()
        .map(|(weight, monomials)| {
            let images = monomials
                .iter()
                .map(|e| subs.image(e))
                .collect::<Result<Vec<_>, _>>()?;
            let bases: Vec<Vec<Vec<u64>>> =
                fields.iter().map(|f| block_kernel(f, &images)).collect();
            let nullity = agree(primes, &bases.iter().map(Vec::len).collect::<Vec<_>>())?;
            Ok((nullity > 0).then_some(KernelBlock {
                weight,
                monomials,
                nullity,
                bases,
            }))
        })
        .collect();
    let blocks: Vec<KernelBlock> = solved?.into_iter().flatten().collect();
    let dimension = blocks.iter().map(|b| b.nullity).sum();
    let character = character_of(blocks.iter().map(|b| (b.weight, b.nullity)));
    let decomposition = decompose(&character)?;
    Ok(GradedPiece {
        locus: id,
        degree: l,
        primes: primes.to_vec(),
        blocks,
        block_count,
        dimension,
        character,
        decomposition,
    })
}

// ---------------------------------------------------------- Hilbert values

/// Extra sample points beyond the block size, and the number of
/// consecutive dependent rows that counts as saturation.
const MARGIN: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertValue {
    pub locus: LocusId,
    pub degree: u32,
    pub prime: u64,
    pub seed: u64,
    pub value: u64,
    /// `false` if some block never stabilized; `value` is then a lower bound.
    pub saturated: bool,
}

/// `dim (R/I_X)_l` as the rank of the evaluation map at random locus points.
pub fn hilbert_value(
    id: LocusId,
    l: u32,
    prime: u64,
    seed: u64,
) -> Result<HilbertValue, IdealError> {
    let field = PrimeField::checked(prime)?;
    let mut out = HilbertValue {
        locus: id,
        degree: l,
        prime,
        seed,
        value: 1,
        saturated: true,
    };
    if l == 0 {
        return Ok(out);
    }
    let blocks = weight_blocks(l);
    let n_max = blocks.values().map(Vec::len).max().unwrap_or(0);
    let pool_size = 2 * (n_max + MARGIN);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loc = LocusId::ALL.iter().position(|x| *x == id).expect("listed") as u64;
    rng.set_stream(loc << 40 | (l as u64) << 32 | (prime & 0xffff_ffff));
    let p = field.modulus();
    let stride = l as usize + 1;
    let mut powers: Vec<u64> = Vec::with_capacity(pool_size * 10 * stride);
    for _ in 0..pool_size {
        let a = sample_mod(id, &field, &mut rng)?;
        for x in a {
            let mut acc = 1u64;
            for _ in 0..stride {
                powers.push(acc);
                acc = acc * x % p;
            }
        }
    }
    let ranks: Vec<(usize, bool)> = blocks
        .into_par_iter()
        .map(|(_, monos)| {
            let n = monos.len();
            let mut ech = IncrementalEchelon::new(field);
            let mut misses = 0;
            for pt in 0..2 * (n + MARGIN) {
                let base = &powers[pt * 10 * stride..(pt + 1) * 10 * stride];
                let row: Vec<u64> = monos
                    .iter()
                    .map(|e| {
                        e.iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .fold(1u64, |acc, (r, &k)| acc * base[r * stride + k as usize] % p)
                    })
                    .collect();
                if ech.insert(row) {
                    misses = 0;
                } else {
                    misses += 1;
                }
                if ech.rank() == n || misses >= MARGIN {
                    return (ech.rank(), true);
                }
            }
            (ech.rank(), false)
        })
        .collect();
    out.value = ranks.iter().map(|r| r.0 as u64).sum();
    out.saturated = ranks.iter().all(|r| r.1);
    Ok(out)
}

// --------------------------------------------------------- first syzygies

#[derive(Debug, Clone)]
pub struct SyzygyPiece {
    pub locus: LocusId,
    pub generator_degree: u32,
    pub relation_degree: u32,
    pub generators: usize,
    pub dimension: usize,
    pub blocks: Vec<([i64; 3], usize)>,
    pub character: Character,
    pub decomposition: Decomposition,
}

/// Linear relations among the degree-`j` generators: the kernel of
/// `I_j (x) R_1 -> R_{j+1}`.
pub fn syzygy_kernel(id: LocusId, j: u32, primes: &[u64]) -> Result<SyzygyPiece, IdealError> {
    if id == LocusId::Tact || id.generator_degrees().first() != Some(&j) {
        return Err(IdealError::Unsupported {
            locus: id,
            degree: j,
        });
    }
    let piece = graded_kernel(id, j, primes)?;
    let fields = fields(primes)?;
    // Domain elements by target weight: (block, basis vector, r).
    let mut targets: BTreeMap<[i64; 3], Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (bi, b) in piece.blocks.iter().enumerate() {
        for k in 0..b.nullity {
            for r in 0..10 {
                targets
                    .entry(shift(b.weight, r))
                    .or_default()
                    .push((bi, k, r));
            }
        }
    }
    let solved: Result<Vec<([i64; 3], usize)>, IdealError> = targets
        .into_par_iter()
        .map(|(w, domain)| {
            let nullities: Vec<usize> = fields
                .iter()
                .enumerate()
                .map(|(pi, f)| {
                    let mut row_of: FxHashMap<AExp, usize> = FxHashMap::default();
                    let mut entries = Vec::new();
                    for (col, &(bi, k, r)) in domain.iter().enumerate() {
                        let b = &piece.blocks[bi];
                        for (m, &c) in b.monomials.iter().zip(&b.bases[pi][k]) {
                            if c != 0 {
                                let mut e = *m;
                                e[r] += 1;
                                let n = row_of.len();
                                entries.push((*row_of.entry(e).or_insert(n), col, c));
                            }
                        }
                    }
                    let mut mat = Matrix::zeros(f, row_of.len(), domain.len());
                    for (row, col, c) in entries {
                        mat.set(row, col, c);
                    }
                    exactla::nullity(f, &mat)
                })
                .collect();
            Ok((w, agree(primes, &nullities)?))
        })
        .collect();
    let blocks: Vec<([i64; 3], usize)> = solved?.into_iter().filter(|b| b.1 > 0).collect();
    let character = character_of(blocks.iter().copied());
    Ok(SyzygyPiece {
        locus: id,
        generator_degree: j,
        relation_degree: j + 1,
        generators: piece.dimension,
        dimension: blocks.iter().map(|b| b.1).sum(),
        decomposition: decompose(&character)?,
        blocks,
        character,
    })
}

// ------------------------------------------------------- isotypic matches

#[derive(Debug, Clone, Serialize)]
pub struct IsotypicReport {
    pub locus: LocusId,
    pub degree: u32,
    pub expected: DominantWeight,
    pub coefficients: usize,
    /// First weight block holding a coefficient outside the kernel.
    pub witness: Option<[i64; 3]>,
    pub span_dimension: usize,
    pub expected_dimension: usize,
    pub character_matches: bool,
    pub kernel_dimension: usize,
}

impl IsotypicReport {
    pub fn members(&self) -> bool {
        self.witness.is_none()
    }

    pub fn fills_kernel(&self) -> bool {
        self.span_dimension == self.kernel_dimension
    }

    pub fn passed(&self) -> bool {
        self.members() && self.span_dimension == self.expected_dimension && self.character_matches
    }
}

/// Checks that the coefficients of a concomitant of order `m`, class `n`
/// lie in `I_X` and span a copy of `S_{m+n,n}`.
pub fn isotypic_match(
    conc: &Concomitant,
    piece: &GradedPiece,
) -> Result<IsotypicReport, IdealError> {
    let l = piece.degree;
    if conc.ty.degree != l {
        return Err(IdealError::NotHomogeneous(l));
    }
    let expected = DominantWeight::new(conc.ty.order + conc.ty.class, conc.ty.class)?;
    let coeffs: Vec<Vec<(AExp, Rational)>> = conc
        .coefficients()
        .values()
        .map(|p| a_terms(p, l))
        .collect::<Result<_, _>>()?;

    let subs = SubstitutionImages::new(piece.locus, l)?;
    let mut witness = None;
    for f in &coeffs {
        let den = f
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<(AExp, BigInt)> = f
            .iter()
            .map(|(e, c)| (*e, (c * Rational::from_integer(den.clone())).to_integer()))
            .collect();
        if !subs.apply(&ints)?.is_empty() {
            witness = Some(a_weight(&f[0].0));
            break;
        }
    }

    let mut by_weight: BTreeMap<[i64; 3], Vec<&Vec<(AExp, Rational)>>> = BTreeMap::new();
    for f in &coeffs {
        by_weight.entry(a_weight(&f[0].0)).or_default().push(f);
    }
    let fields = fields(&piece.primes)?;
    let mut ranks = Vec::new();
    for (w, fs) in &by_weight {
        let mut index: BTreeMap<AExp, usize> = BTreeMap::new();
        for f in fs {
            for (e, _) in f.iter() {
                let n = index.len();
                index.entry(*e).or_insert(n);
            }
        }
        let per_prime: Vec<usize> = fields
            .iter()
            .map(|field| {
                let rows = fs
                    .iter()
                    .map(|f| {
                        let mut v = vec![0u64; index.len()];
                        for (e, c) in f.iter() {
                            v[index[e]] = field.from_rational(c).expect("integral coefficients");
                        }
                        v
                    })
                    .collect();
                exactla::rank(
                    field,
                    &Matrix::from_rows(field, index.len(), rows).expect("rectangular"),
                )
            })
            .collect();
        ranks.push((*w, agree(&piece.primes, &per_prime)?));
    }
    let span = character_of(ranks.iter().copied());
    Ok(IsotypicReport {
        locus: piece.locus,
        degree: l,
        expected,
        coefficients: coeffs.len(),
        witness,
        span_dimension: ranks.iter().map(|r| r.1).sum(),
        expected_dimension: dim_irrep(expected) as usize,
        character_matches: span == weyl_character(expected),
        kernel_dimension: piece.dimension,
    })
}

// ------------------------------------------------------ syzygy scholium

/// Relation concomitants with their expected relation counts.
pub const RELATIONS: [(&str, usize); 4] =
    [("Psi54", 35), ("Psi51", 35), ("Psi42", 27), ("Psi21", 8)];

/// Invariant pairing `<x^a u^b, x^c u^d> = [a=d][b=c] a! b!`, applied to the
/// `(x, u)`-parts with the remaining variables multiplied.
pub fn apolar_pairing(p: &Poly, q: &Poly) -> Poly {
    let fam = [Family::X, Family::U];
    let qc = q.collect(&fam);
    let mut acc = Poly::zero();
    for (m, c) in p.collect(&fam) {
        let mut partner = Monomial::one();
        let mut weight = BigInt::one();
        for i in 0..3 {
            let (ex, eu) = (m.exp(Family::X.var(i)), m.exp(Family::U.var(i)));
            partner.set_exp(Family::X.var(i), eu);
            partner.set_exp(Family::U.var(i), ex);
            for k in 2..=ex.max(eu) {
                if k <= ex {
                    weight *= k;
                }
                if k <= eu {
                    weight *= k;
                }
            }
        }
        if let Some(d) = qc.get(&partner) {
            acc = &acc + &(&c * d).scale(&Rational::from_integer(weight));
        }
    }
    acc
}

/// The 27 quadrics of the Veronese ideal, from the harmonic part of
/// `Phi222` paired against the `X_T` basis.
pub fn veronese_quadrics() -> Result<(Vec<Poly>, Vec<Poly>), IdealError> {
    let phi = brackets::expand(&brackets::catalog("Phi222")?)?;
    let harmonic = tableaux::harmonic_part(&phi.poly, Bigrading::XU)?;
    let paired = tableaux::enumerate(2, 2)
        .iter()
        .map(|t| {
            apolar_pairing(
                &tableaux::tableau_poly_in(t, Family::X, Family::U),
                &harmonic,
            )
        })
        .collect();
    let naive = tableaux::straighten(&phi.poly, Bigrading::XU)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    Ok((paired, naive))
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub name: String,
    pub expected: usize,
    pub relations: usize,
    /// First relation index with a nonzero residual.
    pub offending: Option<usize>,
    /// Whether the relations also hold for the raw straightening
    /// coordinates of `Phi222` in place of the paired quadrics.
    pub naive_holds: bool,
    pub rank: usize,
    /// `h_ij` as 27 x 10 rational matrices, one per relation.
    #[serde(skip)]
    pub vectors: Vec<Vec<Rational>>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.offending.is_none() && self.relations == self.expected && self.rank == self.expected
    }
}

fn linear_a_vector(p: &Poly) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 10];
    for (m, c) in p.terms() {
        let (var, _) = m.vars().next().expect("linear");
        v[var.index()] = c.clone();
    }
    v
}

fn rational_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(&exactla::Rationals, vectors[0].len(), vectors.to_vec())
        .expect("rectangular");
    exactla::rank(&exactla::Rationals, &m)
}

/// Extracts the relations `sum_i h_ij f_i = 0` encoded by a relation
/// concomitant and verifies each one exactly.
pub fn syzygy_relation_check(name: &str) -> Result<RelationReport, IdealError> {
    let expected = RELATIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| *k)
        .ok_or_else(|| IdealError::UnknownRelation(name.to_string()))?;
    let (quadrics, naive) = veronese_quadrics()?;
    let psi = brackets::expand(&brackets::catalog(name)?)?;
    let parts: Vec<Poly> = tableaux::straighten(&psi.poly, Bigrading::YV)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let mut offending = None;
    let mut naive_holds = true;
    let mut vectors = Vec::with_capacity(parts.len());
    for (j, sigma) in parts.iter().enumerate() {
        let h: Vec<Poly> = tableaux::straighten(sigma, Bigrading::XU)?
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        let combine = |fs: &[Poly]| {
            h.iter()
                .zip(fs)
                .fold(Poly::zero(), |acc, (hi, fi)| &acc + &(hi * fi))
        };
        if offending.is_none() && !combine(&quadrics).is_zero() {
            offending = Some(j);
        }
        naive_holds &= combine(&naive).is_zero();
        vectors.push(h.iter().flat_map(linear_a_vector).collect::<Vec<_>>());
    }
    Ok(RelationReport {
        name: name.to_string(),
        expected,
        relations: parts.len(),
        offending,
        naive_holds,
        rank: rational_rank(&vectors),
        vectors,
    })
}

/// Rank of all relation vectors together.
pub fn scholium_rank(reports: &[RelationReport]) -> usize {
    let all: Vec<Vec<Rational>> = reports
        .iter()
        .flat_map(|r| r.vectors.iter().cloned())
        .collect();
    rational_rank(&all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{CONFIRM_PRIME, DEFAULT_PRIME};
    use crate::repcalc::sym_fundamental;
    use crate::repcalc::sym_power;
    use rand::Rng;

    const PRIMES: [u64; 2] = [DEFAULT_PRIME, CONFIRM_PRIME];

    fn labels(d: &Decomposition) -> String {
        d.to_string()
    }

    #[test]
    fn monomial_counts_and_weights() {
        for l in 0..6 {
            assert_eq!(a_monomials(l).len() as u64, dim_r(l));
        }
        assert_eq!(dim_r(8), 24310);
        // The block sizes are the weight multiplicities of sym^l(S_3).
        let ch = sym_power(3, &sym_fundamental(3)).unwrap();
        for (w, monos) in weight_blocks(3) {
            assert_eq!(ch.mult(&Weight::new(w)), monos.len() as i64);
        }
    }

    #[test]
    fn veronese_quadrics_kernel() {
        let g = graded_kernel(LocusId::Equiv, 2, &PRIMES).unwrap();
        assert_eq!(g.dimension, 27);
        assert_eq!(labels(&g.decomposition), "{42}");
        let json = g.to_json();
        assert_eq!(json["character"][0]["a"], 4);
    }

    #[test]
    fn small_kernels() {
        let g = graded_kernel(LocusId::Neq, 3, &PRIMES).unwrap();
        assert_eq!(
            (g.dimension, labels(&g.decomposition)),
            (20, "{33,30}".to_string())
        );
        let g = graded_kernel(LocusId::Tact, 4, &PRIMES).unwrap();
        assert_eq!(
            (g.dimension, labels(&g.decomposition)),
            (1, "{00}".to_string())
        );
        let g = graded_kernel(LocusId::Empty, 3, &PRIMES).unwrap();
        assert_eq!(g.dimension, 0);
    }

    #[test]
    fn kernel_vanishes_on_locus() {
        let g = graded_kernel(LocusId::Neq, 3, &PRIMES).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (pi, &p) in PRIMES.iter().enumerate() {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..10 {
                assert!(g.vanishes_at(pi, &sample_mod(LocusId::Neq, &f, &mut rng).unwrap()));
            }
            let random: [u64; 10] = std::array::from_fn(|_| rng.gen_range(0..p));
            assert!(!g.vanishes_at(pi, &random));
        }
    }

    #[test]
    fn hilbert_plus_kernel_is_full() {
        for (id, l) in [
            (LocusId::Equiv, 2),
            (LocusId::Equiv, 3),
            (LocusId::Neq, 3),
            (LocusId::Y, 3),
        ] {
            let h = hilbert_value(id, l, DEFAULT_PRIME, 1).unwrap();
            assert!(h.saturated);
            let g = graded_kernel(id, l, &PRIMES).unwrap();
            assert_eq!(h.value + g.dimension as u64, dim_r(l), "{id} {l}");
        }
        assert_eq!(
            hilbert_value(LocusId::Equiv, 2, DEFAULT_PRIME, 9)
                .unwrap()
                .value,
            28
        );
        assert_eq!(
            hilbert_value(LocusId::Equiv, 0, DEFAULT_PRIME, 9)
                .unwrap()
                .value,
            1
        );
    }

    #[test]
    fn veronese_syzygies() {
        let s = syzygy_kernel(LocusId::Equiv, 2, &PRIMES).unwrap();
        assert_eq!(s.dimension, 105);
        assert_eq!(labels(&s.decomposition), "{54,51,42,21}");
        assert!(matches!(
            syzygy_kernel(LocusId::Tact, 4, &PRIMES),
            Err(IdealError::Unsupported { .. })
        ));
        assert!(syzygy_kernel(LocusId::Neq, 4, &PRIMES).is_err());
    }

    #[test]
    fn phi222_fills_veronese_kernel() {
        let g = graded_kernel(LocusId::Equiv, 2, &PRIMES).unwrap();
        let phi = brackets::expand(&brackets::catalog("Phi222").unwrap()).unwrap();
        let rep = isotypic_match(&phi, &g).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.fills_kernel());
        // Not in the ideal of a smaller locus's complement: Phi222 is not
        // in I of the triangle locus.
        let d = graded_kernel(LocusId::Delta, 2, &PRIMES).unwrap();
        assert_eq!(d.dimension, 0);
        assert!(!isotypic_match(&phi, &d).unwrap().members());
    }

    #[test]
    fn apolar_pairing_is_symmetric() {
        let (x1, u1, u2) = (Family::X.var(0), Family::U.var(0), Family::U.var(1));
        let p = Poly::from_terms([(Monomial::from_pairs([(x1, 2), (u2, 1)]), Rational::one())]);
        let q = Poly::from_terms([(Monomial::from_pairs([(x1, 1), (u1, 2)]), Rational::one())]);
        assert!(apolar_pairing(&p, &q).is_zero());
        let q = Poly::from_terms([(
            Monomial::from_pairs([(Family::X.var(1), 1), (u1, 2)]),
            Rational::one(),
        )]);
        assert_eq!(apolar_pairing(&p, &q), Poly::int(2));
        assert_eq!(apolar_pairing(&q, &p), Poly::int(2));
    }

    #[test]
    fn psi21_relations() {
        let r = syzygy_relation_check("Psi21").unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.relations, 8);
        assert!(syzygy_relation_check("Phi222").is_err());
    }
}
