//! `cubics`: command-line front end for the library.
//!
//! Exit codes: 0 success, 1 a check failed or a computation errored,
//! 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cubics::brackets;
use cubics::ideals;
use cubics::loci::{self, CubicPoint, LocusId};
use cubics::polyring::{rat, Rational};
use cubics::repcalc::decompose;
use cubics::resolution::{self, expr::Env, IdentityContext};
use cubics::suite::{self, Config, Format};
use cubics::tableaux;

#[derive(Parser)]
#[command(
    name = "cubics",
    version,
    about = "Exact algebra for decomposable ternary cubics"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Prime for modular linear algebra (repeatable, or comma-separated).
    #[arg(
        long = "prime",
        global = true,
        env = "CUBICS_PRIMES",
        value_delimiter = ','
    )]
    primes: Vec<u64>,
    #[arg(long, global = true, env = "CUBICS_SEED", default_value_t = 1)]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: suite::SuiteError| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a virtual-character expression, e.g. "sym(2, S(3,0))".
    Char { expr: String },
    /// List semistandard tableaux of shape (m+n, n).
    Tableau {
        m: usize,
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    #[command(subcommand)]
    Concomitant(ConcomitantCmd),
    #[command(subcommand)]
    Locus(LocusCmd),
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Print a published Betti table with its module lists.
    Betti {
        #[arg(long)]
        locus: LocusId,
    },
    #[command(subcommand)]
    Specseq(SpecseqCmd),
    /// Run every acceptance check and write a report.
    VerifyAll {
        /// Only run checks whose id starts with this prefix (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Largest degree in the Hilbert-series comparison.
        #[arg(long, default_value_t = 8)]
        l_max: u32,
        /// Leave out per-check timings so reports are byte-identical.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Subcommand)]
enum ConcomitantCmd {
    /// Catalog names and their bracket sources.
    List,
    /// Expand a catalog entry and report its type and size.
    Expand {
        name: String,
        /// Also print the polynomial.
        #[arg(long)]
        show: bool,
    },
    /// Evaluate a catalog entry at a named cubic.
    Eval {
        name: String,
        #[arg(long, value_enum)]
        cubic: NamedCubic,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum NamedCubic {
    /// x1^3 + x2^3 + x3^3
    Fermat,
    /// x1 x2 x3
    Triangle,
    /// x1^3 - x2^2 x3
    Cuspidal,
}

impl NamedCubic {
    fn coefficients(self) -> Vec<Rational> {
        let mut a = vec![rat(0); 10];
        match self {
            NamedCubic::Fermat => {
                a[0] = rat(1);
                a[6] = rat(1);
                a[9] = rat(1);
            }
            NamedCubic::Triangle => a[4] = rat(1),
            NamedCubic::Cuspidal => {
                a[0] = rat(1);
                a[7] = rat(-1);
            }
        }
        a
    }
}

#[derive(Subcommand)]
enum LocusCmd {
    /// Dimension, codimension and generator degrees of every locus.
    Info,
    /// A seeded integer point of the locus.
    Sample {
        #[arg(long)]
        locus: LocusId,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    /// dim of the degree-l piece of the ideal.
    Dim {
        #[arg(long)]
        locus: LocusId,
        #[arg(long)]
        degree: u32,
    },
    /// Character of the degree-l piece of the ideal.
    Char {
        #[arg(long)]
        locus: LocusId,
        #[arg(long)]
        degree: u32,
    },
    /// dim (R/I)_l by evaluation rank at random locus points.
    Hilbert {
        #[arg(long)]
        locus: LocusId,
        #[arg(long)]
        degree: u32,
    },
    /// Linear syzygies among the generators of the given degree.
    Syzygy {
        #[arg(long)]
        locus: LocusId,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum SpecseqCmd {
    /// Names and descriptions of the identity catalog.
    List,
    /// Check one identity.
    Verify { name: String },
}

/// Error that maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn primes(g: &Global) -> Vec<u64> {
    if g.primes.is_empty() {
        Config::default().primes
    } else {
        g.primes.clone()
    }
}

fn json_mode(g: &Global) -> bool {
    matches!(g.format, Some(Format::Json))
}

fn emit(g: &Global, text: String) -> Result<()> {
    match &g.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn line(g: &Global, text: String, value: serde_json::Value) -> Result<()> {
    if json_mode(g) {
        emit(g, serde_json::to_string_pretty(&value)? + "\n")
    } else {
        emit(g, text + "\n")
    }
}

fn concomitant(name: &str) -> Result<brackets::Concomitant> {
    let e = brackets::catalog(name).map_err(|e| Usage(e.to_string()))?;
    Ok(brackets::expand(&e)?)
}

/// Returns whether everything that was checked passed.
fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    match cli.command {
        Command::Char { expr } => {
            let c =
                resolution::evaluate(&expr, &mut Env::new()).map_err(|e| Usage(e.to_string()))?;
            let d = decompose(&c)?;
            line(
                g,
                format!("{d}  dim {}", d.dim()),
                json!({"decomposition": d.to_string(), "dim": d.dim()}),
            )?;
        }
        Command::Tableau { m, n, count } => {
            let ts = tableaux::enumerate(m, n);
            if count || json_mode(g) {
                let list: Vec<String> = ts.iter().map(ToString::to_string).collect();
                line(
                    g,
                    ts.len().to_string(),
                    json!({"m": m, "n": n, "count": ts.len(), "tableaux": list}),
                )?;
            } else {
                let mut out: String = ts.iter().map(|t| format!("{t}\n")).collect();
                out += &format!("{} tableaux\n", ts.len());
                emit(g, out)?;
            }
        }
        Command::Concomitant(ConcomitantCmd::List) => {
            let out: String = brackets::CATALOG
                .iter()
                .map(|(n, s)| format!("{n:18} {s}\n"))
                .collect();
            emit(g, out)?;
        }
        Command::Concomitant(ConcomitantCmd::Expand { name, show }) => {
            let c = concomitant(&name)?;
            let mut text = format!("{name}: type {}, {} terms", c.ty, c.poly.len());
            if show {
                text += &format!("\n{}", c.poly);
            }
            line(
                g,
                text,
                json!({"name": name, "type": c.ty.to_string(), "terms": c.poly.len(), "zero": c.is_zero()}),
            )?;
        }
        Command::Concomitant(ConcomitantCmd::Eval { name, cubic }) => {
            let value = concomitant(&name)?.evaluate(&cubic.coefficients());
            line(
                g,
                value.to_string(),
                json!({"name": name, "value": value.to_string()}),
            )?;
        }
        Command::Locus(LocusCmd::Info) => {
            let rows: Vec<serde_json::Value> = LocusId::ALL
                .iter()
                .map(|id| {
                    json!({"locus": id, "dimension": id.dimension(), "codimension": id.codimension(),
                           "generator_degrees": id.generator_degrees()})
                })
                .collect();
            let text = LocusId::ALL
                .iter()
                .map(|id| {
                    format!(
                        "{:6} dim {} codim {} generators in degrees {:?}",
                        id.as_str(),
                        id.dimension(),
                        id.codimension(),
                        id.generator_degrees()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            line(g, text, json!(rows))?;
        }
        Command::Locus(LocusCmd::Sample { locus }) => {
            let p = loci::sample(locus, g.seed)?;
            let coords: Vec<String> = match &p {
                CubicPoint::Integer(v) => v.iter().map(ToString::to_string).collect(),
                CubicPoint::Residue { values, .. } => {
                    values.iter().map(ToString::to_string).collect()
                }
            };
            line(
                g,
                format!("[{}]", coords.join(", ")),
                json!({"locus": locus, "seed": g.seed, "a": coords}),
            )?;
        }
        Command::Ideal(cmd) => return ideal(g, cmd),
        Command::Betti { locus } => {
            let ledger = resolution::locus_ledger(locus);
            if json_mode(g) {
                emit(g, serde_json::to_string_pretty(ledger)? + "\n")?;
            } else {
                let mut out = format!("{locus}: (j, p) dim modules\n");
                for c in &ledger.cells {
                    let mods: Vec<String> = c.modules.iter().map(ToString::to_string).collect();
                    out += &format!("({}, {}) {:5} {{{}}}\n", c.j, c.p, c.dim, mods.join(","));
                }
                emit(g, out)?;
            }
        }
        Command::Specseq(SpecseqCmd::List) => {
            let out: String = resolution::identity_catalog()
                .iter()
                .map(|i| format!("{:8} {}\n", i.name, i.description))
                .collect();
            emit(g, out)?;
        }
        Command::Specseq(SpecseqCmd::Verify { name }) => {
            let ctx = IdentityContext {
                hilbert: Some((primes(g)[0], g.seed)),
            };
            let r = resolution::spectral_identity(&name, &ctx).map_err(|e| match e {
                resolution::ResolutionError::UnknownIdentity(_) => {
                    anyhow::Error::new(Usage(e.to_string()))
                }
                other => other.into(),
            })?;
            let mut text = if r.passed { "PASS" } else { "FAIL" }.to_string();
            for d in &r.details {
                text += &format!("\n  {d}");
            }
            line(g, text, serde_json::to_value(&r)?)?;
            return Ok(r.passed);
        }
        Command::VerifyAll {
            only,
            l_max,
            no_timings,
        } => {
            let cfg = Config {
                primes: primes(g),
                seed: g.seed,
                threads: g.threads,
                format: g.format.unwrap_or(Format::Json),
                l_max,
                timings: !no_timings,
            };
            let report = suite::verify(&cfg, &only).map_err(|e| Usage(e.to_string()))?;
            if report.checks.is_empty() {
                bail!(Usage("no check matches the --only filters".into()));
            }
            emit(g, report.render(cfg.format)?)?;
            let failed = report
                .checks
                .iter()
                .filter(|c| c.status == suite::Status::Fail)
                .count();
            if g.out.is_some() {
                eprintln!("{} checks, {failed} failed", report.checks.len());
            }
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn ideal(g: &Global, cmd: IdealCmd) -> Result<bool> {
    let ps = primes(g);
    match cmd {
        IdealCmd::Dim { locus, degree } => {
            let piece = ideals::graded_kernel(locus, degree, &ps)?;
            line(
                g,
                piece.dimension.to_string(),
                json!({"locus": locus, "degree": degree, "dimension": piece.dimension}),
            )?;
        }
        IdealCmd::Char { locus, degree } => {
            let piece = ideals::graded_kernel(locus, degree, &ps)?;
            line(
                g,
                format!("{}  dim {}", piece.decomposition, piece.dimension),
                json!({"locus": locus, "degree": degree, "dimension": piece.dimension,
                       "decomposition": piece.decomposition.to_string()}),
            )?;
        }
        IdealCmd::Hilbert { locus, degree } => {
            let h = ideals::hilbert_value(locus, degree, ps[0], g.seed)?;
            let text = if h.saturated {
                h.value.to_string()
            } else {
                format!(">= {} (unsaturated)", h.value)
            };
            line(g, text, serde_json::to_value(&h)?)?;
            return Ok(h.saturated);
        }
        IdealCmd::Syzygy { locus, degree } => {
            let s = ideals::syzygy_kernel(locus, degree, &ps)?;
            line(
                g,
                format!("{}  dim {}", s.decomposition, s.dimension),
                json!({"locus": locus, "generator_degree": degree, "dimension": s.dimension,
                       "decomposition": s.decomposition.to_string()}),
            )?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        // A second initialization only fails if the pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
