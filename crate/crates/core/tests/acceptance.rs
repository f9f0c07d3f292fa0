//! One pass/fail line per acceptance criterion, aggregated from the suite.
//!
//! All comparisons are exact equality; the only tolerances are the runtime
//! limits below, checked against per-check wall time.

use std::time::{Duration, Instant};

use cubics::suite::{verify_all, CheckResult, Config, Format, Status};

const TITLES: [&str; 12] = [
    "dimension formula equals SSYT count, 0<=m,n<=8",
    "degree-0 kernels: dimension and character, two primes",
    "first-syzygy kernels",
    "ledger dimension check",
    "Hilbert-series consistency, l<=8, two seeds",
    "character identity catalog",
    "Eagon-Northcott terms",
    "duality patterns",
    "concomitant catalog: expansion, isotypic match, vanishing",
    "oracles: Hessian, tact, Aronhold, octic multiplicities",
    "syzygy scholium relations",
    "verify-all wall time and determinism",
];

/// `(id prefix, limit)`; a check matching the prefix must finish within the limit.
const LIMITS: [(&str, u64); 7] = [
    ("1.", 1_000),
    ("2.kernel.empty", 600_000),
    ("2.", 30_000),
    ("4.", 1_000),
    ("6.", 60_000),
    ("9.expand.Phi814", 300_000),
    ("12.", 900_000),
];

fn limit(id: &str) -> Option<u64> {
    LIMITS.iter().find(|(p, _)| id.starts_with(p)).map(|l| l.1)
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let timed = verify_all(&Config::default()).expect("suite runs");
    let wall = start.elapsed();

    let quiet = Config {
        timings: false,
        ..Config::default()
    };
    let first = verify_all(&quiet).unwrap().render(Format::Json).unwrap();
    let second = verify_all(&quiet).unwrap().render(Format::Json).unwrap();
    let deterministic = first == second;

    let mut all = true;
    println!();
    for (i, title) in TITLES.iter().enumerate() {
        let n = i as u32 + 1;
        let checks: Vec<&CheckResult> =
            timed.checks.iter().filter(|c| c.criterion() == n).collect();
        let mut problems: Vec<String> = Vec::new();
        for c in &checks {
            if c.status == Status::Fail {
                problems.push(format!(
                    "{}: expected {} got {}",
                    c.id, c.expected, c.actual
                ));
            }
            if let (Some(ms), Some(max)) = (c.ms, limit(&c.id)) {
                if ms > max {
                    problems.push(format!("{}: {ms} ms over {max} ms", c.id));
                }
            }
        }
        if n == 12 {
            if wall > Duration::from_secs(900) {
                problems.push(format!("wall time {wall:?}"));
            }
            if !deterministic {
                problems.push("reports differ between identical runs".into());
            }
        }
        let ok = !checks.is_empty() && problems.is_empty();
        all &= ok;
        println!(
            "criterion {n:>2} {}: {title} ({} checks)",
            if ok { "PASS" } else { "FAIL" },
            checks.len()
        );
        for p in problems {
            println!("    {p}");
        }
    }
    println!("wall time {:.1} s", wall.as_secs_f64());
    assert!(all, "some acceptance criteria failed");
}
