//! Parallel verification runs and their on-disk reports.
//!
//! A report is a summary JSON object plus a JSONL file with one record per
//! datum. Records are ordered by dimension and canonical forest, and no
//! timing or host information is written, so equal budgets give
//! byte-identical files regardless of the number of worker threads.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use aqci_core::canon::Shape;
use aqci_core::verify::{analyze, assemble, check, lemma_reports, Analysis, DatumRecord, VerificationReport};
use aqci_core::{enumerate, CheckId, EnumerationBudget};
use anyhow::Context;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::json;

/// Runs the suite on `jobs` worker threads.
pub fn run_suite_parallel(budget: &EnumerationBudget, jobs: usize) -> anyhow::Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    Ok(pool.install(|| {
        let data = enumerate(budget);
        let analyses: BTreeMap<Vec<Shape>, Analysis> = data
            .par_iter()
            .map(|d| {
                let a = analyze(d, budget);
                (a.forest.clone(), a)
            })
            .collect();
        let keys: Vec<&Analysis> = analyses.values().collect();
        let records: Vec<DatumRecord> = keys.par_iter().map(|a| check(a, &analyses)).collect();
        assemble(*budget, records, lemma_reports())
    }))
}

pub fn summary(report: &VerificationReport) -> Value {
    let mut checks = serde_json::Map::new();
    for id in CheckId::ALL {
        let t = report.tallies.get(&id).copied().unwrap_or_default();
        checks.insert(
            id.code().into(),
            json!({
                "description": id.description(),
                "pass": t.pass,
                "fail": t.fail,
                "skip": t.skip,
                "not_applicable": t.not_applicable,
            }),
        );
    }
    let lemmas: Vec<Value> = report
        .lemmas
        .iter()
        .map(|l| json!({"name": l.name, "points": l.points, "equalities": l.equalities, "failures": l.failures}))
        .collect();
    let b = &report.budget;
    json!({
        "budget": {
            "n_max": b.n_max,
            "max_ratio": b.max_ratio,
            "k_max": b.oracle.k_max,
            "point_ceiling": b.oracle.point_ceiling,
        },
        "data": report.records.len(),
        "failing_records": report.failing_records,
        "skipped_records": report.skipped_records,
        "skip_rate": json::rational(&report.skip_rate()),
        "unresolved_intervals": report.intervals,
        "alpha_product_without_alpha_beta_equality": report.alpha_product_without_equality,
        "checks": checks,
        "lemmas": lemmas,
        "fails": report.total_fails(),
        "all_pass": report.all_pass(),
    })
}

pub fn record(index: usize, r: &DatumRecord) -> Value {
    let a = &r.analysis;
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"id": c.id.code(), "outcome": c.outcome.as_str(), "witness": json::witness(&c.witness)}))
        .collect();
    json!({
        "index": index,
        "forest": json::forest_text(&a.forest),
        "datum": json::datum(&a.datum),
        "invariants": json::summary(&a.summary),
        "multiplicity": json::multiplicity(&a.multiplicity),
        "bounds": {"lower": json::rational(&a.lower), "upper": json::rational(&a.upper)},
        "oracle": json::oracle(&a.oracle),
        "checks": checks,
    })
}

/// The JSONL file written next to a summary path: `report.json` →
/// `report.jsonl`.
pub fn records_path(summary_path: &Path) -> PathBuf {
    summary_path.with_extension("jsonl")
}

pub fn write_report(path: &Path, report: &VerificationReport) -> anyhow::Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(&summary(report))?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    let lines = records_path(path);
    let mut f = std::io::BufWriter::new(
        fs::File::create(&lines).with_context(|| format!("writing {}", lines.display()))?,
    );
    for (i, r) in report.records.iter().enumerate() {
        serde_json::to_writer(&mut f, &record(i, r))?;
        f.write_all(b"\n")?;
    }
    f.flush()?;
    Ok(lines)
}
