//! `trigonal`: verification reports for slope bounds on trigonal loci.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
//! usage error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use trigonal_core::catalog::{self, Parity, RowReport, TestCurveRow};
use trigonal_core::orbifold::{self, ChiQuery};
use trigonal_core::rational::{self, Rational};
use trigonal_core::report::{class_records, ClassRecord, Record, ReportEnvelope, SweepRecord};
use trigonal_core::sweep::{sharp_slope, sweep_genus};
use trigonal_core::verify::{run_suite, Perturbation, SuiteConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "trigonal", version, about = "Exact divisor-class checks for trigonal covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every test-curve row of one parity against its closed form.
    Tables(TablesArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
    /// Exact orbifold correction chi(n, a, b) with a numeric cross-check.
    Chi(ChiArgs),
    /// Coefficients of the extremal effective divisor class in genus g.
    Class(ClassArgs),
    /// Invariants and slopes of the sweeping families.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long, value_enum)]
    parity: ParityArg,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(i64).range(3..))]
    n_max: i64,
    /// Base degrees `L,M` (rationals allowed); repeat for several samples.
    #[arg(long = "lm", value_name = "L,M", value_parser = parse_lm)]
    lm: Vec<(Rational, Rational)>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Shorthand for `--format json`.
    #[arg(long, conflicts_with = "format")]
    json: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Perturb one catalog constant before running (negative control).
    #[arg(long, hide = true, value_name = "KIND:ROW")]
    inject_fault: Vec<Perturbation>,
}

#[derive(Args)]
struct ChiArgs {
    #[arg(allow_negative_numbers = true)]
    n: i64,
    #[arg(allow_negative_numbers = true)]
    a: i64,
    #[arg(allow_negative_numbers = true)]
    b: i64,
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long, value_enum)]
    parity: ParityArg,
    #[arg(long)]
    g: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    g_min: i64,
    #[arg(long)]
    g_max: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_lm(s: &str) -> Result<(Rational, Rational), String> {
    let (l, m) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `L,M`, got `{s}`"))?;
    let parse = |t: &str| rational::parse(t.trim()).map_err(|e| e.to_string());
    Ok((parse(l)?, parse(m)?))
}

enum Failure {
    Usage(String),
    Check(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Tables(a) => cmd_tables(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Chi(a) => cmd_chi(a),
        Command::Class(a) => cmd_class(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match outcome {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn emit<R: Record>(env: &ReportEnvelope<R>, format: Format, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => env.to_json() + "\n",
        Format::Csv => env.to_csv(),
        Format::Text => text(),
    }
}

fn params(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn cmd_tables(a: TablesArgs) -> Outcome {
    let parity = Parity::from(a.parity);
    let samples = if a.lm.is_empty() {
        catalog::default_lm_samples()
    } else {
        a.lm
    };
    let rows = catalog::rows_for(parity);
    let reports = catalog::sweep_rows(&rows, a.n_max, &samples)
        .map_err(|e| Failure::Check(e.to_string()))?;
    let parameters = params(json!({
        "parity": parity.name(),
        "nMax": a.n_max,
        "lmSamples": samples
            .iter()
            .map(|(l, m)| json!([rational::format(l), rational::format(m)]))
            .collect::<Vec<_>>(),
    }));
    let env = ReportEnvelope::new("tables", parameters, reports);
    let out = emit(&env, a.format, || tables_text(&rows, &env.results, a.n_max));
    Ok((out, env.all_pass))
}

fn tables_text(rows: &[TestCurveRow], reports: &[RowReport], n_max: i64) -> String {
    let mut out = String::new();
    for row in rows {
        let mine: Vec<&RowReport> = reports.iter().filter(|r| r.row == row.id).collect();
        let passed = mine.iter().filter(|r| r.pass).count();
        let boundary = match &row.boundary {
            None => "-".to_string(),
            Some(b) => match &b.genera {
                Some((g1, g2)) => format!("{}(g1={g1}, g2={g2}) x{}", b.kind, b.multiplicity),
                None => format!("{} x{}", b.kind, b.multiplicity),
            },
        };
        let constraints = if row.b_constraints.is_empty() {
            String::new()
        } else {
            let parts: Vec<String> = row.b_constraints.iter().map(|c| c.to_string()).collect();
            format!("  [{}]", parts.join(", "))
        };
        let verdict = if passed == mine.len() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<6} {}  E = {}{constraints}",
            row.id, row.surface, row.description
        );
        let _ = writeln!(out, "       boundary: {boundary}");
        let _ = writeln!(out, "       residual: {}", row.expected_residual);
        let _ = writeln!(out, "       {verdict} {passed}/{} cases", mine.len());
        for r in mine.iter().filter(|r| !r.pass).take(5) {
            let _ = writeln!(
                out,
                "       n={} b={} l={} m={}: computed {} expected {}",
                r.n,
                r.b.map_or("-".into(), |b| b.to_string()),
                rational::format(&r.l),
                rational::format(&r.m),
                rational::format(&r.residual),
                rational::format(&r.expected)
            );
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let _ = writeln!(
        out,
        "{} rows, n <= {n_max}: {passed}/{} cases pass",
        rows.len(),
        reports.len()
    );
    out
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let format = if a.json { Format::Json } else { a.format };
    let mut cfg = SuiteConfig::default();
    for p in &a.inject_fault {
        cfg = cfg
            .with_perturbation(p)
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let records = run_suite(&cfg);
    let faults: Vec<String> = a.inject_fault.iter().map(|p| p.to_string()).collect();
    let parameters = params(json!({
        "tableNMax": cfg.table_n_max,
        "evenGMax": cfg.even_g_max,
        "oddGMax": cfg.odd_g_max,
        "sweepNMax": cfg.sweep_n_max,
        "chiNMax": cfg.chi_n_max,
        "injectedFaults": faults,
    }));
    let env = ReportEnvelope::new("verify", parameters, records);
    let out = emit(&env, format, || {
        let mut out = String::new();
        for r in &env.results {
            let row = r.row.as_deref().map_or(String::new(), |id| format!(" [{id}]"));
            let mark = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {}{row} ({} cases): {}", r.check, r.cases, r.detail);
        }
        let failed = env.results.iter().filter(|r| !r.pass).count();
        let _ = writeln!(out, "{} checks, {failed} failed", env.results.len());
        out
    });
    Ok((out, env.all_pass))
}

fn cmd_chi(a: ChiArgs) -> Outcome {
    let q = ChiQuery::new(a.n, a.a, a.b).map_err(|e| Failure::Usage(e.to_string()))?;
    let exact = orbifold::chi(q).map_err(|e| Failure::Check(e.to_string()))?;
    let numeric = orbifold::chi_numeric(q).map_err(|e| Failure::Check(e.to_string()))?;
    let gap = (rational::to_f64(&exact) - numeric).abs();
    let out = format!(
        "chi({}, {}, {}) = {}\nnumeric {numeric:.15}  |exact - numeric| = {gap:.3e}\n",
        a.n,
        a.a,
        a.b,
        rational::format(&exact)
    );
    Ok((out, gap < 1e-9))
}

fn cmd_class(a: ClassArgs) -> Outcome {
    let parity = Parity::from(a.parity);
    if a.g < parity.min_genus() || Parity::of_genus(a.g) != parity {
        return Err(Failure::Usage(format!(
            "--g {} is not a valid {} genus (need >= {})",
            a.g,
            parity.name(),
            parity.min_genus()
        )));
    }
    let class = catalog::assemble_class(parity, a.g).map_err(|e| Failure::Check(e.to_string()))?;
    let records = class_records(&class);
    let parameters = params(json!({ "parity": parity.name(), "g": a.g }));
    let env = ReportEnvelope::new("class", parameters, records);
    let out = emit(&env, a.format, || class_text(&env.results, parity, a.g, env.all_pass));
    Ok((out, env.all_pass))
}

fn class_text(records: &[ClassRecord], parity: Parity, g: i64, all_pass: bool) -> String {
    let coeff = |term: &str| {
        records
            .iter()
            .find(|r| r.term == term)
            .map(|r| rational::format(&r.coefficient))
            .unwrap_or_default()
    };
    let divisor = match parity {
        Parity::Even => "mu",
        Parity::Odd => "tau",
    };
    let mut out = format!(
        "g = {g}: {}[{divisor}] = {} lambda - {} delta - sum c_i Delta_i\n",
        coeff("lead"),
        coeff("lambda"),
        coeff("delta")
    );
    for r in records.iter().filter(|r| r.row.is_some()) {
        let split = match (r.g1, r.g2) {
            (Some(g1), Some(g2)) => format!("({g1},{g2})"),
            _ => String::new(),
        };
        let label = format!("{}{split}", r.term);
        let _ = writeln!(
            out,
            "  {label:<16} {:>12}  {}",
            rational::format(&r.coefficient),
            r.row.as_deref().unwrap_or_default()
        );
    }
    let verdict = if all_pass { "all c_i >= 0" } else { "NEGATIVE coefficient present" };
    let _ = writeln!(out, "{verdict}");
    out
}

fn cmd_sweep(a: SweepArgs) -> Outcome {
    if a.g_min < 4 || a.g_min > a.g_max {
        return Err(Failure::Usage(format!(
            "need 4 <= g-min <= g-max, got {}..{}",
            a.g_min, a.g_max
        )));
    }
    let mut records = Vec::new();
    for g in a.g_min..=a.g_max {
        let r = sweep_genus(g).map_err(|e| Failure::Check(e.to_string()))?;
        let want = sharp_slope(g).map_err(|e| Failure::Check(e.to_string()))?;
        records.push(SweepRecord::new(&r, want));
    }
    let parameters = params(json!({ "gMin": a.g_min, "gMax": a.g_max }));
    let env = ReportEnvelope::new("sweep", parameters, records);
    let out = emit(&env, a.format, || {
        let mut out = format!(
            "{:>4} {:>8} {:>8} {:>8} {:>10}\n",
            "g", "lambda", "kappa", "delta", "slope"
        );
        for r in &env.results {
            let _ = writeln!(
                out,
                "{:>4} {:>8} {:>8} {:>8} {:>10}{}",
                r.g,
                rational::format(&r.lambda),
                rational::format(&r.kappa),
                rational::format(&r.delta),
                rational::format(&r.slope),
                if r.pass { "" } else { "  FAIL" }
            );
        }
        out
    });
    Ok((out, env.all_pass))
}
