//! Command-line front end: certified computation (`compute`), closed-form
//! evaluation (`identity`), equivalence sweeps (`verify`) and the exact
//! proof-inequality suite (`proofcheck`).
//!
//! Exit codes: 0 success / all pass; 1 mismatch or check failure; 2 usage
//! error; 3 undecided. Output formats: human text (default), `--format json`
//! (one lossless object), `--format csv` (verify/proofcheck tables only).
//! The `RUST_LOG` environment variable controls log verbosity and nothing
//! else; all semantics go through flags.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lucas_recip::identities::{fib_recip_floor, gen_fib_cubed_floor, pell_recip_floor};
use lucas_recip::proofcheck::{run_proof_suite_filtered, CheckKind};
use lucas_recip::sequence::SequenceParams;
use lucas_recip::tailsum::{floor_recip_sum, FloorResult, PowerSumQuery, TailSumError};
use num_bigint::BigInt;

use lucas_recip_cli::output::{CheckRow, Evidence, OutputRecord, RecordResult, VerifyRow};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lucas-recip",
    version,
    about = "Certified reciprocal-sum floors for generalized Fibonacci sequences",
    after_help = "Ranges are inclusive: `--n 2..20` runs n = 2, 3, ..., 20."
)]
struct Cli {
    /// Output format (csv applies to verify/proofcheck tables)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Fibonacci numbers, (p, q) = (1, 1)
    Fib,
    /// Pell numbers, (p, q) = (2, 1)
    Pell,
    /// G_n = U_n(a, -1), the cubed identity
    GenCubed,
}

#[derive(Subcommand)]
enum Command {
    /// Certified floor((sum_{k>=n} 1/U_k^s)^-1) with enclosure evidence
    Compute {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: i64,
        /// Refinement cap (exact partial-sum terms)
        #[arg(long, default_value_t = lucas_recip::tailsum::DEFAULT_MAX_TERMS)]
        max_terms: u32,
    },
    /// Closed-form value of one floor identity
    Identity {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Recurrence parameter a >= 3 (gen-cubed only)
        #[arg(long)]
        a: Option<i64>,
        /// Power s (fib: 1..2, pell: 1..3)
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        n: i64,
    },
    /// Sweep: closed form vs certified evaluator, row by row
    Verify {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Range of a (gen-cubed only), e.g. 3..5
        #[arg(long, value_parser = parse_range)]
        a: Option<RangeInclusive<i64>>,
        #[arg(long)]
        s: Option<u32>,
        /// Range of n, e.g. 2..20
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<i64>,
        /// Worker threads for the sweep
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exact proof-inequality suite over an (a, n) grid
    Proofcheck {
        #[arg(long, value_parser = parse_range)]
        a: RangeInclusive<i64>,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<i64>,
        /// Run only checks whose id contains this substring
        #[arg(long)]
        only: Option<String>,
        /// Worker threads for the grid
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn parse_range(text: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (
            lo.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad range start {lo:?}: {e}"))?,
            hi.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad range end {hi:?}: {e}"))?,
        ),
        None => {
            let v = text.trim().parse::<i64>().map_err(|e| {
                format!("expected `lo..hi` or a single integer, got {text:?}: {e}")
            })?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi} (ranges are inclusive)"));
    }
    Ok(lo..=hi)
}

/// Errors that map onto the documented nonzero exit codes.
enum CliError {
    Usage(String),
    Undecided(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Undecided(_) => EXIT_UNDECIDED,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Undecided(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Compute { p, q, s, n, max_terms } => {
            cmd_compute(cli.format, p, q, s, n, max_terms)
        }
        Command::Identity { family, a, s, n } => cmd_identity(cli.format, family, a, s, n),
        Command::Verify { family, a, s, n, jobs } => {
            with_jobs(jobs, || cmd_verify(cli.format, family, a.clone(), s, n.clone()))
        }
        Command::Proofcheck { a, n, only, jobs } => with_jobs(jobs, || {
            cmd_proofcheck(cli.format, a.clone(), n.clone(), only.clone())
        }),
    }
}

/// Runs `body` inside a dedicated rayon pool when `--jobs` is given. Sweep
/// rows are pure and the output is sorted before emission, so the thread
/// count never changes results.
fn with_jobs<T>(
    jobs: Option<usize>,
    body: impl Fn() -> Result<T, CliError> + Send,
) -> Result<T, CliError>
where
    T: Send,
{
    match jobs {
        None => body(),
        Some(0) => Err(usage("--jobs must be >= 1")),
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| usage(format!("cannot build worker pool: {e}")))?
            .install(body),
    }
}

fn reject_csv(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(usage(format!(
            "--format csv applies to verify/proofcheck tables, not {command}"
        )));
    }
    Ok(())
}

fn cmd_compute(
    format: Format,
    p: i64,
    q: i64,
    s: u32,
    n: i64,
    max_terms: u32,
) -> Result<u8, CliError> {
    reject_csv(format, "compute")?;
    let params = SequenceParams::new(p, q).map_err(|e| usage(e.to_string()))?;
    let query = PowerSumQuery::new(params, s, n)
        .and_then(|q| q.with_max_terms(max_terms))
        .map_err(|e| usage(e.to_string()))?;
    log::debug!("compute: ({p}, {q}) s={s} n={n} cap={max_terms}");
    let result = match floor_recip_sum(&query) {
        Ok(result) => result,
        Err(TailSumError::Undecided { terms_used, enclosure }) => {
            return Err(CliError::Undecided(format!(
                "undecided after {terms_used} terms; final enclosure {enclosure}"
            )));
        }
        Err(other) => return Err(usage(other.to_string())),
    };
    let record = compute_record(p, q, s, n, max_terms, &result);
    match format {
        Format::Json => println!("{}", to_json(&record)),
        _ => {
            println!("value = {}", result.value);
            println!("terms_used = {}", result.terms_used);
            let ev = Evidence::from_floor_result(&result);
            println!(
                "enclosure = [{}, {}]  (~{}, ~{})",
                ev.enclosure_lo.fraction,
                ev.enclosure_hi.fraction,
                ev.enclosure_lo.decimal,
                ev.enclosure_hi.decimal
            );
        }
    }
    Ok(0)
}

fn compute_record(
    p: i64,
    q: i64,
    s: u32,
    n: i64,
    max_terms: u32,
    result: &FloorResult,
) -> OutputRecord {
    let mut params = BTreeMap::new();
    params.insert("p".into(), p.to_string());
    params.insert("q".into(), q.to_string());
    params.insert("s".into(), s.to_string());
    params.insert("n".into(), n.to_string());
    params.insert("max_terms".into(), max_terms.to_string());
    OutputRecord {
        command: "compute".into(),
        params,
        result: RecordResult::Value(result.value.to_string()),
        evidence: Some(Evidence::from_floor_result(result)),
        summary: None,
    }
}

fn cmd_identity(
    format: Format,
    family: FamilyArg,
    a: Option<i64>,
    s: Option<u32>,
    n: i64,
) -> Result<u8, CliError> {
    reject_csv(format, "identity")?;
    let value = identity_value(family, a, s, n)?;
    let mut params = BTreeMap::new();
    params.insert("family".into(), family_name(family).into());
    if let Some(a) = a {
        params.insert("a".into(), a.to_string());
    }
    if let Some(s) = s {
        params.insert("s".into(), s.to_string());
    }
    params.insert("n".into(), n.to_string());
    let record = OutputRecord {
        command: "identity".into(),
        params,
        result: RecordResult::Value(value.to_string()),
        evidence: None,
        summary: None,
    };
    match format {
        Format::Json => println!("{}", to_json(&record)),
        _ => println!("value = {value}"),
    }
    Ok(0)
}

fn family_name(family: FamilyArg) -> &'static str {
    match family {
        FamilyArg::Fib => "fib",
        FamilyArg::Pell => "pell",
        FamilyArg::GenCubed => "gen-cubed",
    }
}

fn identity_value(
    family: FamilyArg,
    a: Option<i64>,
    s: Option<u32>,
    n: i64,
) -> Result<BigInt, CliError> {
    match family {
        FamilyArg::Fib | FamilyArg::Pell => {
            if a.is_some() {
                return Err(usage("--a applies to --family gen-cubed only"));
            }
            let s = s.ok_or_else(|| usage("--s is required for fib/pell identities"))?;
            let value = match family {
                FamilyArg::Fib => fib_recip_floor(n, s),
                _ => pell_recip_floor(n, s),
            };
            value.map_err(|e| usage(e.to_string()))
        }
        FamilyArg::GenCubed => {
            if s.is_some() {
                return Err(usage(
                    "--s does not apply to gen-cubed (the identity has s = 3)",
                ));
            }
            let a = a.ok_or_else(|| usage("--a is required for gen-cubed"))?;
            gen_fib_cubed_floor(a, n).map_err(|e| usage(e.to_string()))
        }
    }
}

fn cmd_verify(
    format: Format,
    family: FamilyArg,
    a: Option<RangeInclusive<i64>>,
    s: Option<u32>,
    n_range: RangeInclusive<i64>,
) -> Result<u8, CliError> {
    // validate the sweep shape up front so bad ranges are usage errors
    let cells: Vec<(Option<i64>, u32, i64)> = match family {
        FamilyArg::GenCubed => {
            if s.is_some() {
                return Err(usage("--s does not apply to gen-cubed"));
            }
            let a_range = a.clone().ok_or_else(|| usage("--a range is required for gen-cubed"))?;
            if *a_range.start() < 3 {
                return Err(usage(format!(
                    "gen-cubed needs a >= 3, got {}",
                    a_range.start()
                )));
            }
            if *n_range.start() < 2 {
                return Err(usage(format!(
                    "gen-cubed needs n >= 2, got {}",
                    n_range.start()
                )));
            }
            a_range
                .flat_map(|a| n_range.clone().map(move |n| (Some(a), 3u32, n)))
                .collect()
        }
        FamilyArg::Fib | FamilyArg::Pell => {
            if a.is_some() {
                return Err(usage("--a applies to gen-cubed only"));
            }
            let s = s.ok_or_else(|| usage("--s is required for fib/pell sweeps"))?;
            let max_s = if matches!(family, FamilyArg::Fib) { 2 } else { 3 };
            if s < 1 || s > max_s {
                return Err(usage(format!(
                    "{} identities cover s in 1..={max_s}, got {s}",
                    family_name(family)
                )));
            }
            if *n_range.start() < 1 {
                return Err(usage(format!(
                    "identities need n >= 1, got {}",
                    n_range.start()
                )));
            }
            n_range.clone().map(|n| (None, s, n)).collect()
        }
    };
    log::debug!("verify: {} rows", cells.len());

    let rows: Vec<VerifyRow> = cells
        .par_iter()
        .map(|&(a, s, n)| verify_row(family, a, s, n))
        .collect::<Result<Vec<_>, CliError>>()?;

    let total = rows.len() as u64;
    let matched = rows.iter().filter(|r| r.status == "match").count() as u64;
    let mismatched = rows.iter().filter(|r| r.status == "mismatch").count() as u64;
    let undecided = total - matched - mismatched;
    let mut summary = BTreeMap::new();
    summary.insert("rows".to_string(), total);
    summary.insert("matched".to_string(), matched);
    summary.insert("mismatched".to_string(), mismatched);
    summary.insert("undecided".to_string(), undecided);

    let mut params = BTreeMap::new();
    params.insert("family".into(), family_name(family).into());
    if let Some(a_range) = &a {
        params.insert("a".into(), format!("{}..{}", a_range.start(), a_range.end()));
    }
    if let Some(s) = s {
        params.insert("s".into(), s.to_string());
    }
    params.insert(
        "n".into(),
        format!("{}..{}", n_range.start(), n_range.end()),
    );

    let record = OutputRecord {
        command: "verify".into(),
        params,
        result: RecordResult::VerifyRows(rows.clone()),
        evidence: None,
        summary: Some(summary),
    };

    match format {
        Format::Json => println!("{}", to_json(&record)),
        Format::Csv => write_verify_csv(&rows)?,
        Format::Text => {
            for row in &rows {
                let a_col = row.a.map_or(String::new(), |a| format!(" a={a}"));
                let s_col = row.s.map_or(String::new(), |s| format!(" s={s}"));
                println!(
                    "{}{}{} n={:<3} closed={} certified={} {}",
                    row.family, a_col, s_col, row.n, row.closed_form, row.certified, row.status
                );
            }
            println!(
                "rows={total} matched={matched} mismatched={mismatched} undecided={undecided}"
            );
        }
    }
    if mismatched > 0 {
        Ok(EXIT_FAILURE)
    } else if undecided > 0 {
        Ok(EXIT_UNDECIDED)
    } else {
        Ok(0)
    }
}

fn verify_row(family: FamilyArg, a: Option<i64>, s: u32, n: i64) -> Result<VerifyRow, CliError> {
    let closed = match family {
        FamilyArg::Fib => fib_recip_floor(n, s),
        FamilyArg::Pell => pell_recip_floor(n, s),
        FamilyArg::GenCubed => gen_fib_cubed_floor(a.expect("validated"), n),
    }
    .map_err(|e| usage(e.to_string()))?;
    let params = match family {
        FamilyArg::Fib => SequenceParams::fibonacci(),
        FamilyArg::Pell => SequenceParams::pell(),
        FamilyArg::GenCubed => {
            SequenceParams::g_family(a.expect("validated")).map_err(|e| usage(e.to_string()))?
        }
    };
    let query = PowerSumQuery::new(params, s, n).map_err(|e| usage(e.to_string()))?;
    let (certified, status) = match floor_recip_sum(&query) {
        Ok(result) => {
            let status = if result.value == closed { "match" } else { "mismatch" };
            (result.value.to_string(), status)
        }
        Err(TailSumError::Undecided { .. }) => ("undecided".to_string(), "undecided"),
        Err(other) => return Err(usage(other.to_string())),
    };
    Ok(VerifyRow {
        family: family_name(family).to_string(),
        a,
        s: (family != FamilyArg::GenCubed).then_some(s),
        n,
        closed_form: closed.to_string(),
        certified,
        status: status.to_string(),
    })
}

fn cmd_proofcheck(
    format: Format,
    a_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
    only: Option<String>,
) -> Result<u8, CliError> {
    let kinds: Vec<CheckKind> = match &only {
        None => CheckKind::ALL.to_vec(),
        Some(filter) => {
            let matched: Vec<CheckKind> = CheckKind::ALL
                .into_iter()
                .filter(|k| k.id().contains(filter.as_str()))
                .collect();
            if matched.is_empty() {
                return Err(usage(format!(
                    "--only {filter:?} matches no check; ids: {}",
                    CheckKind::ALL.map(|k| k.id()).join(", ")
                )));
            }
            matched
        }
    };
    log::debug!(
        "proofcheck: {} kinds over a={a_range:?} n={n_range:?}",
        kinds.len()
    );
    let reports = run_proof_suite_filtered(a_range.clone(), n_range.clone(), &kinds)
        .map_err(|e| usage(e.to_string()))?;

    let total = reports.len() as u64;
    let passed = reports.iter().filter(|r| r.claimed && r.passed).count() as u64;
    let failed = reports.iter().filter(|r| r.claimed && !r.passed).count() as u64;
    let probes = reports.iter().filter(|r| !r.claimed).count() as u64;
    let mut summary = BTreeMap::new();
    summary.insert("reports".to_string(), total);
    summary.insert("passed".to_string(), passed);
    summary.insert("failed".to_string(), failed);
    summary.insert("probes".to_string(), probes);

    let mut params = BTreeMap::new();
    params.insert("a".into(), format!("{}..{}", a_range.start(), a_range.end()));
    params.insert(
        "n".into(),
        format!("{}..{}", n_range.start(), n_range.end()),
    );
    if let Some(filter) = &only {
        params.insert("only".into(), filter.clone());
    }

    let rows: Vec<CheckRow> = reports.iter().map(CheckRow::from).collect();
    let record = OutputRecord {
        command: "proofcheck".into(),
        params,
        result: RecordResult::CheckRows(rows.clone()),
        evidence: None,
        summary: Some(summary),
    };

    match format {
        Format::Json => println!("{}", to_json(&record)),
        Format::Csv => write_check_csv(&rows)?,
        Format::Text => {
            for report in &reports {
                println!("{report}");
                if report.claimed && !report.passed {
                    println!("    {}", report.witness);
                }
            }
            println!("reports={total} passed={passed} failed={failed} probes={probes}");
        }
    }
    Ok(if failed > 0 { EXIT_FAILURE } else { 0 })
}

fn write_verify_csv(rows: &[VerifyRow]) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_writer(std::io::stdout());
    writer
        .write_record(["family", "a", "s", "n", "closed_form", "certified", "status"])
        .and_then(|()| {
            for row in rows {
                writer.write_record([
                    row.family.as_str(),
                    &row.a.map_or(String::new(), |a| a.to_string()),
                    &row.s.map_or(String::new(), |s| s.to_string()),
                    &row.n.to_string(),
                    &row.closed_form,
                    &row.certified,
                    &row.status,
                ])?;
            }
            writer.flush().map_err(csv::Error::from)
        })
        .map_err(|e| usage(format!("csv output failed: {e}")))
}

fn write_check_csv(rows: &[CheckRow]) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_writer(std::io::stdout());
    writer
        .write_record(["check", "a", "index", "status", "witness"])
        .and_then(|()| {
            for row in rows {
                writer.write_record([
                    row.check.as_str(),
                    &row.a.to_string(),
                    &row.index.to_string(),
                    &row.status,
                    &row.witness,
                ])?;
            }
            writer.flush().map_err(csv::Error::from)
        })
        .map_err(|e| usage(format!("csv output failed: {e}")))
}

fn to_json(record: &OutputRecord) -> String {
    serde_json::to_string(record).expect("records serialize")
}
