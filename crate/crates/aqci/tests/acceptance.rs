//! Acceptance criteria. Each test writes one `criterion N: PASS|FAIL` line
//! straight to stderr (bypassing the test harness capture) and then asserts.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use aqci::report::run_suite_parallel;
use aqci_core::invariants::{group_order, group_order_oracle, main_bound};
use aqci_core::lct::{lct_datum, lct_lp};
use aqci_core::rational::from_uint;
use aqci_core::verify::{ceiling_lemma_grid, concavity_lemma_grid, VerificationReport};
use aqci_core::{enumerate, CheckId, EnumerationBudget, OracleBudget, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use serde_json::Value;

fn budget() -> EnumerationBudget {
    EnumerationBudget { n_max: 4, max_ratio: 3, oracle: OracleBudget { k_max: 12, point_ceiling: 5_000_000 } }
}

fn suite() -> &'static (VerificationReport, Duration) {
    static SUITE: OnceLock<(VerificationReport, Duration)> = OnceLock::new();
    SUITE.get_or_init(|| {
        let t = Instant::now();
        let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
        let r = run_suite_parallel(&budget(), jobs).expect("thread pool");
        (r, t.elapsed())
    })
}

fn report_line(n: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {n}: {status} - {detail}");
}

fn aqci_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_aqci")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

#[test]
fn criterion_1_fixtures() {
    let start = Instant::now();
    let mut slowest = Duration::ZERO;
    let mut problems = Vec::new();
    for a in 2i64..=5 {
        let t = Instant::now();
        let f = fixture(&format!("hypersurface_a{a}.json"));
        let info = aqci_json(&["--json", "info", &f]);
        let mult = aqci_json(&["--json", "mult", &f]);
        let oracle = aqci_json(&["--json", "mult", "--method", "oracle", &f]);
        let lct = if 3 > a { q(3, a) } else { q(1, 1) };
        let e = a.min(3);
        if info["emb"] != 4 {
            problems.push(format!("a={a}: emb {}", info["emb"]));
        }
        if info["group_order"]["recursion"] != a * a || info["group_order"]["lattice"] != a * a {
            problems.push(format!("a={a}: |G| {}", info["group_order"]));
        }
        if info["lct"]["recursion"] != lct.to_string() || info["lct"]["lp"] != lct.to_string() {
            problems.push(format!("a={a}: lct {}", info["lct"]));
        }
        if mult["value"] != e || oracle["e"] != e {
            problems.push(format!("a={a}: e {} / oracle {}", mult["value"], oracle["e"]));
        }
        slowest = slowest.max(t.elapsed());
    }
    let t = Instant::now();
    let f = fixture("two_pairs.json");
    let info = aqci_json(&["--json", "info", &f]);
    let mult = aqci_json(&["--json", "mult", &f]);
    let oracle = aqci_json(&["--json", "mult", "--method", "oracle", &f]);
    let main = &info["upper_bounds"]["two_pow_n_minus_ceil_lct"];
    if info["emb"] != 6 || info["emb"] != 2 * 4 - 2 {
        problems.push(format!("two pairs: emb {}", info["emb"]));
    }
    if info["group_order"]["recursion"] != 4 || info["group_order"]["lattice"] != 4 {
        problems.push(format!("two pairs: |G| {}", info["group_order"]));
    }
    if info["lct"]["recursion"] != "2" || info["lct"]["lp"] != "2" {
        problems.push(format!("two pairs: lct {}", info["lct"]));
    }
    if mult["value"] != 4 || oracle["e"] != 4 || main != "4" {
        problems.push(format!("two pairs: e {} oracle {} bound {main}", mult["value"], oracle["e"]));
    }
    slowest = slowest.max(t.elapsed());
    let elapsed = start.elapsed();
    let ok = problems.is_empty() && slowest < Duration::from_secs(1);
    report_line(
        1,
        ok,
        &format!("5 fixtures in {elapsed:.2?} (slowest {slowest:.2?}, 3 CLI runs each), mismatches {problems:?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_2_lct_cross_validation() {
    let start = Instant::now();
    let data = enumerate(&budget());
    let mismatches: Vec<String> = data
        .iter()
        .filter_map(|d| {
            let (r, l) = (lct_datum(d), lct_lp(&d.monomial_ideal()));
            (r != l).then(|| format!("{d:?}: {r} vs {l}"))
        })
        .collect();
    let elapsed = start.elapsed();
    let ok = mismatches.is_empty() && elapsed < Duration::from_secs(60);
    report_line(2, ok, &format!("{} classes, {} mismatches, {elapsed:.2?}", data.len(), mismatches.len()));
    assert!(ok, "{mismatches:?}");
}

#[test]
fn criterion_3_group_order_cross_validation() {
    let data = enumerate(&budget());
    let mut mismatches = Vec::new();
    let mut scaled = 0;
    for d in &data {
        if group_order(d) != group_order_oracle(d) {
            mismatches.push(format!("{d:?}"));
        }
        if d.is_connected() {
            for a in [2u32, 3] {
                let s = d.scale(&BigUint::from(a)).unwrap();
                let expect = Pow::pow(BigUint::from(a), (d.n() - 1) as u32) * group_order(d);
                scaled += 1;
                if group_order_oracle(&s) != expect || group_order(&s) != expect {
                    mismatches.push(format!("{d:?} scaled by {a}"));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    report_line(3, ok, &format!("{} classes, {scaled} scalings, {} mismatches", data.len(), mismatches.len()));
    assert!(ok, "{mismatches:?}");
}

#[test]
fn criterion_4_multiplicity_soundness() {
    let (r, elapsed) = suite();
    let ids = [CheckId::Soundness, CheckId::C5, CheckId::C6, CheckId::C7, CheckId::C10, CheckId::C11, CheckId::C12];
    let fails: usize = ids.iter().map(|id| r.tallies[id].fail).sum();
    let stabilized = r.records.iter().filter(|x| x.analysis.oracle.stabilized).count();
    let rate = r.skip_rate();
    let ok = fails == 0 && rate <= q(1, 5) && *elapsed < Duration::from_secs(600);
    report_line(
        4,
        ok,
        &format!(
            "{} classes, oracle stabilized on {stabilized}, {fails} fails, skip rate {rate}, {} unresolved intervals, {elapsed:.2?}",
            r.records.len(),
            r.intervals
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_5_sharp_upper_bound() {
    let (r, _) = suite();
    let mut exceptions = Vec::new();
    let mut equal = 0;
    let mut missing = 0;
    for rec in &r.records {
        let s = &rec.analysis.summary;
        let Some(e) = rec.analysis.oracle_e() else {
            missing += 1;
            continue;
        };
        let e = from_uint(&e);
        let bound = main_bound(s.n, &s.lct);
        let tight = BigInt::from(s.emb) == BigInt::from(2 * s.n) - &s.ceil_lct;
        let holds = if tight { e == bound } else { e < bound };
        if tight {
            equal += 1;
        }
        if !holds {
            exceptions.push(format!("{}: e={e} bound={bound} emb={}", aqci::json::forest_text(&rec.analysis.forest), s.emb));
        }
    }
    let ok = exceptions.is_empty() && missing == 0;
    report_line(
        5,
        ok,
        &format!("{} classes, {equal} with equality, {} exceptions, {missing} without oracle value", r.records.len(), exceptions.len()),
    );
    assert!(ok, "{exceptions:?}");
}

#[test]
fn criterion_6_closure_criterion() {
    let (r, _) = suite();
    let mut exceptions = Vec::new();
    let mut powers = 0;
    for rec in &r.records {
        let s = &rec.analysis.summary;
        let d = &rec.analysis.datum;
        match &s.closure_power {
            Err(e) => exceptions.push(format!("closure test refused: {e}")),
            Ok(Some(qq)) => {
                powers += 1;
                let n = Rational::from_integer(BigInt::from(s.n));
                let ok = s.alpha_product == s.volume_bound
                    && from_uint(qq) == n / &s.lct
                    && d.singleton_weights().iter().all(|w| w == qq);
                if !ok {
                    exceptions.push(format!("{:?}", d));
                }
            }
            Ok(None) => {
                if s.alpha_product <= s.volume_bound {
                    exceptions.push(format!("{:?}", d));
                }
            }
        }
    }
    let ok = exceptions.is_empty() && r.tallies[&CheckId::C8].fail == 0;
    report_line(6, ok, &format!("{} classes, {powers} with closure a power of m, {} exceptions", r.records.len(), exceptions.len()));
    assert!(ok, "{exceptions:?}");
}

#[test]
fn criterion_7_lemma_grids() {
    let start = Instant::now();
    let c = ceiling_lemma_grid();
    let k = concavity_lemma_grid();
    let elapsed = start.elapsed();
    let ok = c.passed() && k.passed() && c.equalities > 0 && k.equalities > 0 && elapsed < Duration::from_secs(10);
    report_line(
        7,
        ok,
        &format!(
            "ceiling {} points ({} equalities), concavity {} points ({} equalities), {} failures, {elapsed:.2?}",
            c.points,
            c.equalities,
            k.points,
            k.equalities,
            c.failures.len() + k.failures.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let p = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_aqci"))
            .args(["verify", "--n-max", "4", "--max-ratio", "3", "--jobs", jobs, "--report"])
            .arg(&p)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0));
        (std::fs::read(&p).unwrap(), std::fs::read(p.with_extension("jsonl")).unwrap(), out.stdout)
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    let c = run("c.json", "4");
    let ok = a == b && a == c;
    report_line(8, ok, &format!("3 runs (jobs 1, 1, 4): summary {} bytes, records {} bytes, identical = {ok}", a.0.len(), a.1.len()));
    assert!(ok);
}
