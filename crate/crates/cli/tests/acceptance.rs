//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use carlitz_core::suite::{self, CriterionResult, Level};

/// Wall-clock budget for `verify all --level quick`.
const QUICK_BUDGET: Duration = Duration::from_secs(120);
/// Minimum number of cases per property test.
const MIN_CASES: u32 = 1000;
const WORKER_COUNTS: [&str; 3] = ["1", "2", "8"];

fn line(id: u32, title: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {id:>2} {} {title}{}", if pass { "PASS" } else { "FAIL" }, if detail.is_empty() { String::new() } else { format!(" ({detail})") });
    pass
}

fn summarize(c: &CriterionResult) -> String {
    let failed: Vec<String> = c
        .reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {}", r.identity, serde_json::Value::Object(r.params.clone())))
        .collect();
    if failed.is_empty() {
        format!("{} checks", c.reports.len())
    } else {
        format!("failed: {}", failed.join("; "))
    }
}

fn run_quick(workers: &str) -> (Vec<u8>, Duration, Option<i32>) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(["verify", "all", "--level", "quick", "--workers", workers])
        .output()
        .expect("spawn carlitz");
    (out.stdout, start.elapsed(), out.status.code())
}

/// Every property file routes its case count through a `CASES` constant; read them back.
fn property_case_counts() -> Vec<(String, u32)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests");
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).expect("core tests dir") {
        let path = entry.unwrap().path();
        let src = std::fs::read_to_string(&path).unwrap();
        if !src.contains("proptest!") {
            continue;
        }
        let cases = src
            .lines()
            .find_map(|l| l.trim().strip_prefix("const CASES: u32 = ").and_then(|v| v.trim_end_matches(';').parse().ok()))
            .unwrap_or(0);
        out.push((path.file_name().unwrap().to_string_lossy().into_owned(), cases));
    }
    out.sort();
    out
}

fn main() {
    // tail bounds, Fitting ideals and beta extraction run at full coverage here
    let levels = [Level::Quick, Level::Quick, Level::Quick, Level::Quick, Level::Quick, Level::Quick, Level::Full, Level::Full, Level::Quick, Level::Full];
    let fns: [fn(Level) -> carlitz_core::Result<CriterionResult>; 10] = [
        suite::criterion1,
        suite::criterion2,
        suite::criterion3,
        suite::criterion4,
        suite::criterion5,
        suite::criterion6,
        suite::criterion7,
        suite::criterion8,
        suite::criterion9,
        suite::criterion10,
    ];
    let mut all = true;
    for (i, (f, level)) in fns.iter().zip(levels).enumerate() {
        let id = i as u32 + 1;
        all &= match f(level) {
            Ok(c) => line(id, c.title, c.pass(), &summarize(&c)),
            Err(e) => line(id, "", false, &format!("error: {e}")),
        };
    }

    let runs: Vec<_> = WORKER_COUNTS.iter().map(|w| run_quick(w)).collect();
    let identical = runs.iter().all(|r| r.0 == runs[0].0) && !runs[0].0.is_empty();
    let exit_ok = runs.iter().all(|r| r.2 == Some(0));
    let slowest = runs.iter().map(|r| r.1).max().unwrap();
    let props = property_case_counts();
    let props_ok = !props.is_empty() && props.iter().all(|(_, c)| *c >= MIN_CASES);
    let detail = format!(
        "byte-identical for workers {}: {identical}; exit 0: {exit_ok}; slowest quick run {:.1}s; property cases {}",
        WORKER_COUNTS.join("/"),
        slowest.as_secs_f64(),
        props.iter().map(|(f, c)| format!("{f}={c}")).collect::<Vec<_>>().join(", ")
    );
    all &= line(11, "property suites and deterministic quick suite", identical && exit_ok && slowest < QUICK_BUDGET && props_ok, &detail);

    if !all {
        std::process::exit(1);
    }
}
