//! The verification suite: every acceptance check as a named [`CheckResult`],
//! run in a fixed order and rendered as JSON, CSV or Markdown.
//!
//! Results depend only on the [`Config`]; with `timings` off the rendered
//! report is byte-identical across runs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brackets::{self, Concomitant, CATALOG};
use crate::exactla::{Field, PrimeField, CONFIRM_PRIME, DEFAULT_PRIME};
use crate::ideals::{self, GradedPiece};
use crate::loci::{self, LocusId};
use crate::polyring::{rat, Family, Poly, Rational};
use crate::repcalc::{dim_irrep, multiplicity, sym_power, weyl_character, DominantWeight};
use crate::resolution::{self, IdentityContext};
use crate::tableaux;

pub const REPORT_VERSION: u32 = 1;
/// Wall-time budget for the whole suite.
pub const TIME_BUDGET_MS: u128 = 15 * 60 * 1000;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("at least one prime is required")]
    NoPrimes,
    #[error("unknown output format `{0}`")]
    Format(String),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(SuiteError::Format(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    pub primes: Vec<u64>,
    pub seed: u64,
    /// `0` uses rayon's default.
    pub threads: usize,
    pub format: Format,
    /// Largest degree in the Hilbert-series comparison.
    pub l_max: u32,
    /// Record per-check milliseconds. Off for byte-identical reports.
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            primes: vec![DEFAULT_PRIME, CONFIRM_PRIME],
            seed: 1,
            threads: 0,
            format: Format::Json,
            l_max: 8,
            timings: true,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.primes.is_empty() {
            return Err(SuiteError::NoPrimes);
        }
        Ok(())
    }

    /// The two seeds used for Monte-Carlo Hilbert values.
    pub fn seeds(&self) -> [u64; 2] {
        [self.seed, self.seed.wrapping_add(1)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ms: Option<u64>,
}

impl CheckResult {
    /// Acceptance criterion number, the prefix of the id.
    pub fn criterion(&self) -> u32 {
        self.id
            .split('.')
            .next()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub config: Config,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn render(&self, format: Format) -> Result<String, SuiteError> {
        match format {
            Format::Json => {
                Ok(serde_json::to_string_pretty(self).expect("report serializes") + "\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["id", "status", "expected", "actual", "ms"])?;
                for c in &self.checks {
                    let ms = c.ms.map(|m| m.to_string()).unwrap_or_default();
                    w.write_record([
                        c.id.as_str(),
                        &c.status.to_string(),
                        &c.expected,
                        &c.actual,
                        &ms,
                    ])?;
                }
                Ok(String::from_utf8(
                    w.into_inner()
                        .map_err(|e| csv::Error::from(e.into_error()))?,
                )
                .expect("utf-8"))
            }
            Format::Md => {
                let esc = |s: &str| s.replace('|', "\\|");
                let mut out = String::from(
                    "| id | status | expected | actual | ms |\n|---|---|---|---|---|\n",
                );
                for c in &self.checks {
                    let ms = c.ms.map(|m| m.to_string()).unwrap_or_default();
                    out += &format!(
                        "| {} | {} | {} | {} | {} |\n",
                        c.id,
                        c.status,
                        esc(&c.expected),
                        esc(&c.actual),
                        ms
                    );
                }
                Ok(out)
            }
        }
    }
}

// ------------------------------------------------------------------ checks

type Outcome = Result<(bool, String, String), String>;

struct Check {
    id: String,
    run: Box<dyn Fn(&Config) -> Outcome + Send + Sync>,
}

fn check(id: impl Into<String>, run: impl Fn(&Config) -> Outcome + Send + Sync + 'static) -> Check {
    Check {
        id: id.into(),
        run: Box::new(run),
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expanded(name: &str) -> Result<&'static Concomitant, String> {
    static CACHE: OnceLock<Vec<OnceLock<Result<Concomitant, String>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| CATALOG.iter().map(|_| OnceLock::new()).collect());
    let i = CATALOG
        .iter()
        .position(|(n, _)| *n == name)
        .ok_or_else(|| format!("unknown concomitant {name}"))?;
    cache[i]
        .get_or_init(|| {
            brackets::catalog(name)
                .and_then(|e| brackets::expand(&e))
                .map_err(err)
        })
        .as_ref()
        .map_err(Clone::clone)
}

type KernelSlot = Arc<OnceLock<Result<Arc<GradedPiece>, String>>>;

fn kernel(id: LocusId, l: u32, primes: &[u64]) -> Result<Arc<GradedPiece>, String> {
    static CACHE: OnceLock<Mutex<HashMap<(LocusId, u32, Vec<u64>), KernelSlot>>> = OnceLock::new();
    let slot = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("kernel cache")
        .entry((id, l, primes.to_vec()))
        .or_default()
        .clone();
    slot.get_or_init(|| {
        ideals::graded_kernel(id, l, primes)
            .map(Arc::new)
            .map_err(err)
    })
    .clone()
}

fn dimension_formula() -> Outcome {
    let mut bad = Vec::new();
    for m in 0..=8usize {
        for n in 0..=8usize {
            let count = tableaux::enumerate(m, n).len() as u64;
            if count != dim_irrep(DominantWeight::of((m + n) as u32, n as u32)) {
                bad.push(format!("({m},{n}): {count}"));
            }
        }
    }
    let actual = if bad.is_empty() {
        "81 shapes agree".to_string()
    } else {
        bad.join("; ")
    };
    Ok((
        bad.is_empty(),
        "SSYT count = (m+1)(n+1)(m+n+2)/2 for 0<=m,n<=8".into(),
        actual,
    ))
}

fn degree_zero_kernel(id: LocusId, l: u32, cfg: &Config) -> Outcome {
    let expected = resolution::ideal_piece(id, l).map_err(err)?;
    let piece = kernel(id, l, &cfg.primes)?;
    let ok = piece.dimension as i64 == expected.dim() && piece.decomposition == expected;
    Ok((
        ok,
        format!("{} {expected}", expected.dim()),
        format!("{} {}", piece.dimension, piece.decomposition),
    ))
}

fn first_syzygies(id: LocusId, j: u32, cfg: &Config) -> Outcome {
    let expected = resolution::module(id, j, 1);
    let table = resolution::betti_table(id)
        .cells
        .get(&(j, 1))
        .copied()
        .unwrap_or(0);
    let s = ideals::syzygy_kernel(id, j, &cfg.primes).map_err(err)?;
    let ok = s.dimension as u64 == table && s.decomposition == expected;
    Ok((
        ok,
        format!("{table} {expected}"),
        format!("{} {}", s.dimension, s.decomposition),
    ))
}

fn ledger_dims() -> Outcome {
    let checks = resolution::ledger_dim_check();
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| c.table != c.summed)
        .map(|c| format!("{} M{}{}: {} vs {}", c.locus, c.j, c.p, c.table, c.summed))
        .collect();
    let actual = if bad.is_empty() {
        format!("{} cells agree", checks.len())
    } else {
        bad.join("; ")
    };
    Ok((
        bad.is_empty(),
        "table entry = summed irreducible dimensions".into(),
        actual,
    ))
}

fn hilbert(id: LocusId, cfg: &Config) -> Outcome {
    let mut bad = Vec::new();
    for seed in cfg.seeds() {
        for row in
            resolution::hilbert_consistency(id, cfg.l_max, cfg.primes[0], seed).map_err(err)?
        {
            if !row.agrees() {
                let bound = if row.saturated { "" } else { " (unsaturated)" };
                bad.push(format!(
                    "seed {seed} l={}: {} vs {}{bound}",
                    row.degree, row.expected, row.actual
                ));
            }
        }
    }
    let actual = if bad.is_empty() {
        "all agree".to_string()
    } else {
        bad.join("; ")
    };
    Ok((
        bad.is_empty(),
        format!(
            "numerator coefficients = evaluation ranks, l=0..{}, two seeds",
            cfg.l_max
        ),
        actual,
    ))
}

fn hilbert_anchors() -> Outcome {
    let anchors = [
        (LocusId::Equiv, 2, 28),
        (LocusId::Equiv, 3, 55),
        (LocusId::Delta, 4, 680),
        (LocusId::Neq, 4, 532),
    ];
    let got: Vec<i64> = anchors
        .iter()
        .map(|(id, l, _)| {
            resolution::hilbert_coefficient(
                &resolution::numerator(&resolution::betti_table(*id)),
                *l,
            )
        })
        .collect();
    let show =
        |v: &mut dyn Iterator<Item = i64>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let ok = anchors.iter().zip(&got).all(|(a, g)| a.2 == *g);
    Ok((
        ok,
        show(&mut anchors.iter().map(|a| a.2)),
        show(&mut got.into_iter()),
    ))
}

fn identity(name: &str, cfg: &Config) -> Outcome {
    let ctx = IdentityContext {
        hilbert: Some((cfg.primes[0], cfg.seed)),
    };
    let r = resolution::spectral_identity(name, &ctx).map_err(err)?;
    let actual = if r.passed {
        "equal".to_string()
    } else {
        r.details.join("; ")
    };
    Ok((r.passed, "equal".into(), actual))
}

fn eagon_northcott(j: u32) -> Outcome {
    let terms = resolution::eagon_northcott_terms().map_err(err)?;
    let expected = resolution::module(LocusId::Y, 3, j);
    let got = &terms[j as usize];
    Ok((*got == expected, expected.to_string(), got.to_string()))
}

fn duality(name: &'static str) -> Outcome {
    let d = resolution::duality_check()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or("unknown duality")?;
    Ok((
        d.holds,
        "holds".into(),
        if d.holds { "holds" } else { "fails" }.into(),
    ))
}

fn expansion(name: &'static str) -> Outcome {
    let c = expanded(name)?;
    let ty = c.ty;
    let degs = [
        (Family::A, ty.degree),
        (Family::X, ty.order),
        (Family::U, ty.class),
        (Family::Y, ty.order_y),
        (Family::V, ty.class_v),
    ];
    let homogeneous = degs
        .iter()
        .all(|(f, d)| c.poly.family_degree(*f) == Some(*d));
    let ok = !c.is_zero() && homogeneous;
    let actual = if c.is_zero() {
        "zero".to_string()
    } else {
        format!(
            "{} terms{}",
            c.poly.len(),
            if homogeneous { "" } else { ", wrong type" }
        )
    };
    Ok((ok, format!("nonzero of type {ty}"), actual))
}

fn isotypic(name: &'static str, id: LocusId, cfg: &Config) -> Outcome {
    let c = expanded(name)?;
    let piece = kernel(id, c.ty.degree, &cfg.primes)?;
    let r = ideals::isotypic_match(c, &piece).map_err(err)?;
    let actual = format!(
        "members={} span={} character={}",
        r.members(),
        r.span_dimension,
        if r.character_matches { "ok" } else { "differs" }
    );
    Ok((
        r.passed(),
        format!("members=true span={} character=ok", r.expected_dimension),
        actual,
    ))
}

const SAMPLES: usize = 50;

fn vanishing(name: &'static str, id: LocusId, cfg: &Config) -> Outcome {
    let c = expanded(name)?;
    let field = PrimeField::checked(cfg.primes[0]).map_err(err)?;
    let coeffs: Vec<Vec<(ideals::AExp, u64)>> = c
        .coefficients()
        .values()
        .map(|p| {
            ideals::a_terms(p, c.ty.degree)
                .map_err(err)?
                .into_iter()
                .map(|(e, q)| {
                    Ok((
                        e,
                        field
                            .from_rational(&q)
                            .ok_or("denominator divisible by p")?,
                    ))
                })
                .collect()
        })
        .collect::<Result<_, String>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0009);
    let mut nonzero = 0;
    for _ in 0..SAMPLES {
        let a = loci::sample_mod(id, &field, &mut rng).map_err(err)?;
        let pows: Vec<Vec<u64>> = a
            .iter()
            .map(|&x| {
                (0..=c.ty.degree)
                    .scan(1u64, |acc, _| {
                        let v = *acc;
                        *acc = v * x % field.modulus();
                        Some(v)
                    })
                    .collect()
            })
            .collect();
        let vanishes = coeffs.iter().all(|f| {
            f.iter().fold(0u64, |acc, (e, q)| {
                let m = e
                    .iter()
                    .enumerate()
                    .fold(*q, |m, (r, &k)| m * pows[r][k as usize] % field.modulus());
                (acc + m) % field.modulus()
            }) == 0
        });
        if !vanishes {
            nonzero += 1;
        }
    }
    Ok((
        nonzero == 0,
        format!("0 of {SAMPLES} nonzero"),
        format!("{nonzero} of {SAMPLES} nonzero"),
    ))
}

fn random_cubic(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..10).map(|_| rat(rng.gen_range(-9..=9))).collect()
}

fn hessian_oracle(cfg: &Config) -> Outcome {
    let h = expanded("Phi330")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x4e55_1a4e);
    let mut constant: Option<Rational> = None;
    let mut bad = 0;
    for _ in 0..20 {
        let a = random_cubic(&mut rng);
        let sym = h.evaluate(&a);
        let det = brackets::hessian_oracle(&a);
        let ratio = match (sym.leading(), det.leading()) {
            (Some((m, c)), Some(_)) => c / det.coeff(m),
            (None, None) => continue,
            _ => {
                bad += 1;
                continue;
            }
        };
        if ratio.is_zero() || det.scale(&ratio) != sym {
            bad += 1;
            continue;
        }
        match &constant {
            None => constant = Some(ratio),
            Some(k) if *k != ratio => bad += 1,
            _ => {}
        }
    }
    let k = constant
        .map(|k| k.to_string())
        .unwrap_or_else(|| "none".into());
    Ok((
        bad == 0,
        "proportional, one constant".into(),
        format!("constant {k}, {bad} of 20 off"),
    ))
}

fn tact_identity() -> Outcome {
    let ok = *loci::tact_polynomial() == loci::tact_printed();
    Ok((
        ok,
        "identical".into(),
        if ok { "identical" } else { "differ" }.into(),
    ))
}

fn aronhold() -> Outcome {
    let s = expanded("Phi400")?;
    let mut fermat = vec![rat(0); 10];
    fermat[0] = rat(1);
    fermat[6] = rat(1);
    fermat[9] = rat(1);
    let mut cube = vec![rat(0); 10];
    cube[0] = rat(1);
    let mut rng = ChaCha8Rng::seed_from_u64(0xa404);
    let random = random_cubic(&mut rng);
    let v = [
        s.evaluate(&fermat).is_zero(),
        s.evaluate(&cube).is_zero(),
        s.evaluate(&random).is_zero(),
    ];
    let ok = v == [true, true, false];
    let show = |z: bool| if z { "0" } else { "nonzero" };
    Ok((
        ok,
        "fermat 0, x1^3 0, random nonzero".into(),
        format!(
            "fermat {}, x1^3 {}, random {}",
            show(v[0]),
            show(v[1]),
            show(v[2])
        ),
    ))
}

fn octic_multiplicities() -> Outcome {
    let s8 = sym_power(8, &weyl_character(DominantWeight::of(3, 0))).map_err(err)?;
    let m54 = multiplicity(&s8, DominantWeight::of(5, 4)).map_err(err)?;
    let m51 = multiplicity(&s8, DominantWeight::of(5, 1)).map_err(err)?;
    let ok = m54 == 1 && m51 == 1;
    Ok((ok, "54:1 51:1".into(), format!("54:{m54} 51:{m51}")))
}

fn aronhold_times_441() -> Outcome {
    let p = expanded("Phi400")?.poly.clone();
    let q = &expanded("Phi441")?.poly;
    let prod: Poly = &p * q;
    let ty = [Family::A, Family::X, Family::U].map(|f| prod.family_degree(f));
    let ok = !prod.is_zero() && ty == [Some(8), Some(4), Some(1)];
    let actual = if prod.is_zero() {
        "zero".into()
    } else {
        format!("{} terms, type {:?}", prod.len(), ty)
    };
    Ok((ok, "nonzero of type (8,4,1)".into(), actual))
}

fn scholium_relations(name: &'static str) -> Outcome {
    let r = ideals::syzygy_relation_check(name).map_err(err)?;
    let actual = format!(
        "{} relations, rank {}{}",
        r.relations,
        r.rank,
        r.offending
            .map(|j| format!(", relation {j} fails"))
            .unwrap_or_default()
    );
    Ok((
        r.passed(),
        format!("{} relations, rank {}", r.expected, r.expected),
        actual,
    ))
}

fn scholium_total() -> Outcome {
    let reports = ideals::RELATIONS
        .iter()
        .map(|(n, _)| ideals::syzygy_relation_check(n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let rank = ideals::scholium_rank(&reports);
    let cell = resolution::betti_table(LocusId::Equiv)
        .cells
        .get(&(2, 1))
        .copied()
        .unwrap_or(0);
    Ok((
        rank as u64 == cell,
        format!("rank {cell}"),
        format!("rank {rank}"),
    ))
}

/// Every check, in acceptance order. Criterion 12 is appended by [`verify_all`].
fn checks() -> Vec<Check> {
    use LocusId::*;
    let mut v = vec![check("1.dimension-formula", |_| dimension_formula())];
    for (id, l) in [
        (Equiv, 2),
        (Neq, 3),
        (Y, 3),
        (Delta, 4),
        (Tact, 4),
        (Tact, 5),
        (Empty, 8),
    ] {
        v.push(check(format!("2.kernel.{id}.{l}"), move |c| {
            degree_zero_kernel(id, l, c)
        }));
    }
    for (id, j) in [(Equiv, 2), (Neq, 3), (Y, 3), (Delta, 4), (Empty, 8)] {
        v.push(check(format!("3.syzygy.{id}.{j}"), move |c| {
            first_syzygies(id, j, c)
        }));
    }
    v.push(check("4.ledger-dimensions", |_| ledger_dims()));
    for id in LocusId::ALL {
        v.push(check(format!("5.hilbert.{id}"), move |c| hilbert(id, c)));
    }
    v.push(check("5.anchors", |_| hilbert_anchors()));
    let mut names: Vec<&'static str> = resolution::REQUIRED_IDENTITIES.to_vec();
    for i in resolution::identity_catalog() {
        if !names.contains(&i.name.as_str()) {
            names.push(i.name.as_str());
        }
    }
    for name in names {
        v.push(check(format!("6.identity.{name}"), move |c| {
            identity(name, c)
        }));
    }
    for j in 0..4 {
        v.push(check(format!("7.eagon-northcott.{j}"), move |_| {
            eagon_northcott(j)
        }));
    }
    for name in [
        "equiv M25 = M20*",
        "equiv M24 = M21*",
        "equiv M23 = M22*",
        "equiv all modules self-dual",
        "delta M42 = M44*",
        "delta M45* = M41 + {00}",
        "delta M43 = M43*",
    ] {
        v.push(check(format!("8.duality.{name}"), move |_| duality(name)));
    }
    for (name, _) in CATALOG {
        v.push(check(format!("9.expand.{name}"), move |_| expansion(name)));
    }
    let pairs = [
        ("Phi222", Equiv),
        ("Phi303", Neq),
        ("Phi330", Neq),
        ("Phi406", Neq),
        ("Phi406_dualcurve", Neq),
        ("Phi441", Delta),
        ("Phi400", Tact),
        ("Phi503", Tact),
        ("Phi814", Empty),
    ];
    for (name, id) in pairs {
        v.push(check(format!("9.isotypic.{name}.{id}"), move |c| {
            isotypic(name, id, c)
        }));
    }
    for (name, id) in pairs {
        v.push(check(format!("9.vanishing.{name}.{id}"), move |c| {
            vanishing(name, id, c)
        }));
    }
    v.push(check("10.hessian-oracle", hessian_oracle));
    v.push(check("10.tact-invariant", |_| tact_identity()));
    v.push(check("10.aronhold", |_| aronhold()));
    v.push(check("10.octic-multiplicities", |_| octic_multiplicities()));
    v.push(check("10.aronhold-times-441", |_| aronhold_times_441()));
    for (name, _) in ideals::RELATIONS {
        v.push(check(format!("11.scholium.{name}"), move |_| {
            scholium_relations(name)
        }));
    }
    v.push(check("11.scholium.total", |_| scholium_total()));
    v
}

/// Ids of every check [`verify_all`] produces, in order.
pub fn check_ids() -> Vec<String> {
    let mut ids: Vec<String> = checks().into_iter().map(|c| c.id).collect();
    ids.push("12.wall-time".into());
    ids
}

fn run_one(c: &Check, cfg: &Config) -> CheckResult {
    let start = Instant::now();
    let (status, expected, actual) = match (c.run)(cfg) {
        Ok((true, e, a)) => (Status::Pass, e, a),
        Ok((false, e, a)) => (Status::Fail, e, a),
        Err(e) => (Status::Fail, String::new(), format!("error: {e}")),
    };
    CheckResult {
        id: c.id.clone(),
        status,
        expected,
        actual,
        ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs the checks whose id starts with one of `filters` (all if empty).
pub fn verify(cfg: &Config, filters: &[String]) -> Result<Report, SuiteError> {
    cfg.validate()?;
    let start = Instant::now();
    let selected: Vec<Check> = checks()
        .into_iter()
        .filter(|c| filters.is_empty() || filters.iter().any(|f| c.id.starts_with(f.as_str())))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cfg.threads > 0 {
        builder = builder.num_threads(cfg.threads);
    }
    let pool = builder
        .build()
        .map_err(|e| SuiteError::Pool(e.to_string()))?;
    let mut results: Vec<CheckResult> =
        pool.install(|| selected.par_iter().map(|c| run_one(c, cfg)).collect());
    if filters.is_empty()
        || filters
            .iter()
            .any(|f| "12.wall-time".starts_with(f.as_str()))
    {
        let elapsed = start.elapsed().as_millis();
        let within = elapsed < TIME_BUDGET_MS;
        results.push(CheckResult {
            id: "12.wall-time".into(),
            status: if within { Status::Pass } else { Status::Fail },
            expected: format!("under {} s", TIME_BUDGET_MS / 1000),
            actual: if cfg.timings {
                format!("{elapsed} ms")
            } else if within {
                "within budget".into()
            } else {
                "over budget".into()
            },
            ms: cfg.timings.then_some(elapsed as u64),
        });
    }
    Ok(Report {
        version: REPORT_VERSION,
        config: cfg.clone(),
        checks: results,
    })
}

pub fn verify_all(cfg: &Config) -> Result<Report, SuiteError> {
    verify(cfg, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_ordered() {
        let ids = check_ids();
        let mut sorted = ids.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        let crit: Vec<u32> = ids
            .iter()
            .map(|i| i.split('.').next().unwrap().parse().unwrap())
            .collect();
        assert!(crit.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(crit.first(), Some(&1));
        assert_eq!(crit.last(), Some(&12));
    }

    #[test]
    fn cheap_checks_and_rendering() {
        let cfg = Config {
            timings: false,
            ..Config::default()
        };
        let r = verify(&cfg, &["1.".into(), "4.".into(), "7.".into(), "8.".into()]).unwrap();
        assert_eq!(r.checks.len(), 1 + 1 + 4 + 7);
        assert!(r.all_passed(), "{:?}", r.checks);
        let csv = r.render(Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), r.checks.len() + 1);
        assert!(csv.starts_with("id,status,expected,actual,ms\n"));
        let md = r.render(Format::Md).unwrap();
        assert_eq!(md.lines().count(), r.checks.len() + 2);
        let json: Report = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json.checks, r.checks);
        assert_eq!(
            r.render(Format::Json).unwrap(),
            verify(&cfg, &["1.".into(), "4.".into(), "7.".into(), "8.".into()])
                .unwrap()
                .render(Format::Json)
                .unwrap()
        );
    }

    #[test]
    fn tiny_prime_is_reported() {
        let cfg = Config {
            primes: vec![17],
            timings: false,
            ..Config::default()
        };
        let r = verify(&cfg, &["2.kernel.neq".into(), "5.hilbert.neq".into()]).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.checks.iter().all(|c| c.status == Status::Fail));
        assert!(!r.all_passed());
        assert!(Config {
            primes: vec![],
            ..Config::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn formats_parse() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("md".parse::<Format>().unwrap(), Format::Md);
        assert!("xml".parse::<Format>().is_err());
    }
}
