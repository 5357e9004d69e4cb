use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aqci::dot::to_dot;
use aqci::json;
use aqci::report::{run_suite_parallel, summary, write_report};
use aqci::{read_input, LoadError};
use aqci_core::invariants::{main_bound, summarize, two_pow_n_minus_1};
use aqci_core::lct::{closure_is_power_with_ceiling, lct_datum, lct_lp, DEFAULT_LATTICE_CEILING};
use aqci_core::multiplicity::{mult_exact, mult_lower, mult_oracle, mult_upper};
use aqci_core::verify::Outcome;
use aqci_core::{
    enumerate_dimension, CheckId, EnumerationBudget, LctCache, OracleBudget, SpecialDatum, ValidationReport,
};
use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "aqci", version, about = "Invariants of special data of abelian quotient complete intersections")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    /// Largest power of the maximal ideal tabulated by the oracle.
    #[arg(long, default_value_t = 12, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    k_max: usize,
    /// Maximum number of lattice points the oracle may touch.
    #[arg(long, default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    point_ceiling: u64,
}

impl OracleArgs {
    fn budget(self) -> OracleBudget {
        OracleBudget { k_max: self.k_max, point_ceiling: self.point_ceiling }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LctMethod {
    Recursion,
    Lp,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MultMethod {
    Auto,
    Oracle,
    Bounds,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms and list every violation.
    Validate { file: PathBuf },
    /// Embedding dimension, group order, lct, m(D), alpha/beta and bounds.
    Info { file: PathBuf },
    /// Log canonical threshold of the maximal ideal.
    Lct {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LctMethod::Recursion)]
        method: LctMethod,
    },
    /// Hilbert-Samuel multiplicity.
    Mult {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MultMethod::Auto)]
        method: MultMethod,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Whether the integral closure of a_D is a power of the maximal ideal.
    Closure {
        file: PathBuf,
        /// Refuse when more lattice points than this would be tested.
        #[arg(long, default_value_t = DEFAULT_LATTICE_CEILING, value_parser = clap::value_parser!(u64).range(1..))]
        ceiling: u64,
    },
    /// Graphviz rendering of the member forest.
    Dot { file: PathBuf },
    /// List one datum per isomorphism class in dimension n.
    Enumerate {
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_ratio: u64,
        /// One JSON datum per line.
        #[arg(long)]
        jsonl: bool,
    },
    /// Run every check over all data up to the given size.
    Verify {
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
        n_max: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_ratio: u64,
        /// Write the summary here and the per-datum records next to it (.jsonl).
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
        jobs: usize,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

enum Failure {
    /// Unreadable or malformed input: exit 2.
    Input(anyhow::Error),
    /// Axiom violations: exit 1.
    Invalid(ValidationReport),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn load(path: &Path) -> Result<SpecialDatum, Failure> {
    let text = read_input(path).map_err(|e| Failure::Input(anyhow::anyhow!("{}: {e}", path.display())))?;
    json::datum_from_str(&text).map_err(|e| match e {
        LoadError::Invalid(r) => Failure::Invalid(r),
        m @ LoadError::Malformed(_) => Failure::Input(anyhow::anyhow!("{}: {m}", path.display())),
    })
}

fn violations_json(r: &ValidationReport) -> Value {
    let list: Vec<Value> =
        r.violations.iter().map(|v| json!({"axiom": v.axiom(), "message": v.to_string()})).collect();
    json!({"valid": r.is_valid(), "violations": list})
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn sets_text(d: &SpecialDatum) -> String {
    d.members()
        .iter()
        .map(|m| {
            let e: Vec<String> = m.elements().iter().map(usize::to_string).collect();
            format!("{{{}}}:{}", e.join(","), m.weight())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let as_json = cli.json;
    match cli.command {
        Command::Validate { file } => {
            let text = read_input(&file).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
            let raw = json::raw_from_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
            let report = aqci_core::datum::validate(&raw);
            if as_json {
                print_json(&violations_json(&report));
            } else if report.is_valid() {
                println!("valid");
            } else {
                println!("invalid");
                for v in &report.violations {
                    println!("  {v}");
                }
            }
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Info { file } => {
            let d = load(&file)?;
            let s = summarize(&d, &mut LctCache::new());
            if as_json {
                let mut v = json::summary(&s);
                v["datum"] = json::datum(&d);
                print_json(&v);
                return Ok(0);
            }
            println!("n = {}", s.n);
            println!("emb = {}", s.emb);
            println!("maximal members = {} ({})", s.maximal_count, if s.connected { "connected" } else { "disconnected" });
            println!("|G| = {} (recursion), {} (lattice)", s.group_order, s.group_order_oracle);
            println!("lct = {} (recursion), {} (LP)", s.lct, s.lct_lp);
            println!("m(D) = {}", s.m_of_d);
            println!("prod alpha = {}", s.alpha_product);
            println!("(1/|G|)(n/lct)^n = {}", s.volume_bound);
            println!("2^(n-1) = {}", two_pow_n_minus_1(s.n));
            println!("2^(n-ceil(lct)) = {}", main_bound(s.n, &s.lct));
            match &s.closure_power {
                Ok(Some(q)) => println!("closure of a_D = m^{q}"),
                Ok(None) => println!("closure of a_D is not a power of m"),
                Err(e) => println!("closure test refused: {e}"),
            }
            println!("members:");
            for m in &s.members {
                let e: Vec<String> = m.elements.iter().map(usize::to_string).collect();
                println!(
                    "  {{{}}} w={} delta={} alpha={} beta={}",
                    e.join(","),
                    m.weight,
                    m.delta,
                    m.alpha,
                    m.beta
                );
            }
            Ok(0)
        }
        Command::Lct { file, method } => {
            let d = load(&file)?;
            let rec = (method != LctMethod::Lp).then(|| lct_datum(&d));
            let lp = (method != LctMethod::Recursion).then(|| lct_lp(&d.monomial_ideal()));
            let agree = match (&rec, &lp) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
            if as_json {
                let mut v = serde_json::Map::new();
                if let Some(r) = &rec {
                    v.insert("recursion".into(), json::rational(r));
                }
                if let Some(r) = &lp {
                    v.insert("lp".into(), json::rational(r));
                }
                if method == LctMethod::Both {
                    v.insert("equal".into(), Value::Bool(agree));
                }
                print_json(&Value::Object(v));
            } else {
                match (&rec, &lp) {
                    (Some(a), Some(b)) => {
                        println!("{a} (recursion)");
                        println!("{b} (LP)");
                    }
                    (Some(a), None) | (None, Some(a)) => println!("{a}"),
                    (None, None) => unreachable!(),
                }
            }
            if !agree {
                eprintln!("lct methods disagree");
            }
            Ok(if agree { 0 } else { 1 })
        }
        Command::Mult { file, method, oracle } => {
            let d = load(&file)?;
            match method {
                MultMethod::Bounds => {
                    let (lo, hi) = (mult_lower(&d), mult_upper(&d));
                    if as_json {
                        print_json(&json!({"lower": json::rational(&lo), "upper": json::rational(&hi)}));
                    } else {
                        println!("{lo} <= e <= {hi}");
                    }
                }
                MultMethod::Oracle => {
                    let t = mult_oracle(&d, oracle.budget());
                    if as_json {
                        print_json(&json::oracle(&t));
                    } else {
                        match t.e {
                            Some(e) => println!("e = {e} (oracle)"),
                            None => println!("oracle {} after {} points", t.status(), t.points),
                        }
                        for (k, l) in t.values.iter().enumerate() {
                            println!("  l(R/m^{}) = {l}", k + 1);
                        }
                    }
                }
                MultMethod::Auto => {
                    let m = mult_exact(&d);
                    let t = (!m.is_exact()).then(|| mult_oracle(&d, oracle.budget()));
                    if as_json {
                        let mut v = json::multiplicity(&m);
                        if let Some(t) = &t {
                            v["oracle"] = json::oracle(t);
                        }
                        print_json(&v);
                    } else {
                        match &m.value {
                            Some(v) => println!("e = {v}"),
                            None => println!("{} <= e <= {}", m.lower, m.upper),
                        }
                        for step in &m.trace {
                            println!("  {step}");
                        }
                        if let Some(t) = &t {
                            match t.e {
                                Some(e) => println!("oracle: e = {e}"),
                                None => println!("oracle {} after {} points", t.status(), t.points),
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Closure { file, ceiling } => {
            let d = load(&file)?;
            let a = d.monomial_ideal();
            let q = a.degrees().into_iter().min().expect("a_D has generators");
            match closure_is_power_with_ceiling(&a, &q, ceiling) {
                Ok(is_power) => {
                    if as_json {
                        print_json(&json!({"power": if is_power { json::integer(&q) } else { Value::Null }}));
                    } else if is_power {
                        println!("closure of a_D = m^{q}");
                    } else {
                        println!("closure of a_D is not a power of m");
                    }
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(1)
                }
            }
        }
        Command::Dot { file } => {
            let d = load(&file)?;
            print!("{}", to_dot(&d));
            Ok(0)
        }
        Command::Enumerate { n, max_ratio, jsonl } => {
            let data = enumerate_dimension(n, max_ratio);
            if jsonl {
                for d in &data {
                    println!("{}", json::datum(d));
                }
            } else if as_json {
                print_json(&Value::Array(data.iter().map(json::datum).collect()));
            } else {
                for (i, d) in data.iter().enumerate() {
                    println!("{}\t{}\t{}", i + 1, json::forest_text(&aqci_core::canon::forest(d)), sets_text(d));
                }
            }
            Ok(0)
        }
        Command::Verify { n_max, max_ratio, report, jobs, oracle } => {
            let budget = EnumerationBudget { n_max, max_ratio, oracle: oracle.budget() };
            let result = run_suite_parallel(&budget, jobs)?;
            if let Some(path) = &report {
                let lines = write_report(path, &result)?;
                eprintln!("wrote {} and {}", path.display(), lines.display());
            }
            for r in &result.records {
                for c in r.checks.iter().filter(|c| c.outcome == Outcome::Fail) {
                    eprintln!("fail {} {} {}", c.id, json::datum(&r.analysis.datum), json::witness(&c.witness));
                }
            }
            if as_json {
                print_json(&summary(&result));
            } else {
                for id in CheckId::ALL {
                    let t = result.tallies.get(&id).copied().unwrap_or_default();
                    println!(
                        "{:<10} pass {:>5}  fail {:>3}  skip {:>3}  n/a {:>5}  {}",
                        id.code(),
                        t.pass,
                        t.fail,
                        t.skip,
                        t.not_applicable,
                        id.description()
                    );
                }
                for l in &result.lemmas {
                    println!(
                        "{:<10} {} points, {} equality cases, {} failures",
                        l.name,
                        l.points,
                        l.equalities,
                        l.failures.len()
                    );
                }
                println!(
                    "{} data, {} with failures, {} with skips (rate {}), {} unresolved intervals",
                    result.records.len(),
                    result.failing_records,
                    result.skipped_records,
                    result.skip_rate(),
                    result.intervals
                );
            }
            Ok(if result.all_pass() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(r)) => {
            eprintln!("invalid special datum:");
            for v in &r.violations {
                eprintln!("  {v}");
            }
            ExitCode::from(1)
        }
    }
}
