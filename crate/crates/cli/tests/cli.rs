use std::process::{Command, Output};

fn cubics(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubics"))
        .args(args)
        .env_remove("CUBICS_PRIMES")
        .env_remove("CUBICS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ideal_dimension() {
    let o = cubics(&["ideal", "dim", "--locus", "neq", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "20");
    let o = cubics(&[
        "ideal", "char", "--locus", "delta", "--degree", "4", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 35);
    assert_eq!(v["decomposition"], "{51}");
}

#[test]
fn spectral_identity_and_aronhold() {
    let o = cubics(&["specseq", "verify", "Z1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS");
    let o = cubics(&["concomitant", "eval", "Phi400", "--cubic", "fermat"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = cubics(&["concomitant", "eval", "Phi400", "--cubic", "triangle"]);
    assert_ne!(stdout(&o).trim(), "0");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        cubics(&["ideal", "dim", "--locus", "nowhere", "--degree", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cubics(&["specseq", "verify", "Z9"]).status.code(), Some(2));
    assert_eq!(
        cubics(&["concomitant", "expand", "Phi999"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cubics(&["verify-all", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(cubics(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tiny_prime_fails_with_report() {
    let o = cubics(&[
        "--prime",
        "17",
        "verify-all",
        "--only",
        "2.kernel.y",
        "--no-timings",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["status"], "fail");
    assert_eq!(v["config"]["primes"][0], 17);
}

#[test]
fn csv_has_one_row_per_check() {
    let o = cubics(&["verify-all", "--only", "8.", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,status,expected,actual,ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    assert!(rows
        .iter()
        .all(|r| r.starts_with("8.duality.") && r.contains(",pass,")));
}

#[test]
fn reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("cubics-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let args = [
            "verify-all",
            "--only",
            "5.hilbert.delta",
            "--only",
            "6.identity.Z1",
            "--no-timings",
        ];
        let mut all: Vec<&str> = args.to_vec();
        let p = path.to_str().unwrap().to_string();
        all.extend(["--out", &p, "--threads", "2"]);
        let o = cubics(&all);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["version"], 1);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["5.hilbert.delta", "6.identity.Z1"]);
    assert!(v["checks"][0].get("ms").is_none());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn environment_overrides_primes() {
    let o = Command::new(env!("CARGO_BIN_EXE_cubics"))
        .args(["verify-all", "--only", "1.", "--no-timings"])
        .env("CUBICS_PRIMES", "1000003,65537")
        .env("CUBICS_SEED", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["primes"], serde_json::json!([1000003, 65537]));
    assert_eq!(v["config"]["seed"], 7);
}

#[test]
fn small_commands() {
    assert_eq!(
        stdout(&cubics(&["tableau", "2", "2", "--count"])).trim(),
        "27"
    );
    assert!(stdout(&cubics(&["char", "sym(2, S(3,0))"])).starts_with("{60,42}"));
    let betti = stdout(&cubics(&["betti", "--locus", "neq"]));
    assert!(betti.contains("(4, 3)   200"));
    let info = stdout(&cubics(&["locus", "info"]));
    assert_eq!(info.lines().count(), 6);
}
