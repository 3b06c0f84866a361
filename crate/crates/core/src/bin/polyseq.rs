use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use polyseq::congruence::{valuation, verify, verify_perturbed, IdentityId, Params};
use polyseq::families::{method_values, Family, FamilyError};
use polyseq::rational::format_rational;
use polyseq::table::{parse_range, Format, OutputTable, MAX_ABS_K, MAX_N};

const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "polyseq", version, about = "Exact polycosecant, polycotangent and poly-Bernoulli numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a table of values, rows n and columns k.
    Table {
        #[arg(long)]
        family: Family,
        /// Row range `a..b` or a single index.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        /// Column range `a..b`, may be negative.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Check an identity or congruence and print the report as JSON.
    Verify {
        identity: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        l: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long)]
        lmax: Option<i64>,
        #[arg(long)]
        nmax: Option<i64>,
        /// Add 1 to the left side of this instance; the check must then fail.
        #[arg(long)]
        perturb: Option<usize>,
    },
    /// Compare every closed form against series extraction.
    OracleDiff {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        nmax: usize,
        #[arg(long, allow_negative_numbers = true)]
        kmin: i64,
        #[arg(long, allow_negative_numbers = true)]
        kmax: i64,
    },
    /// Denominator orders of B_{2n}, D_{2n}^{(1)} and β_{2n}^{(1)}, one JSON line per n.
    Valuation {
        #[arg(long)]
        p: u64,
        /// Half index range; the order is 2n.
        #[arg(long)]
        n: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table { family, n, k, format } => cmd_table(family, &n, &k, &format),
        Command::Verify { identity, p, big_n, n, m, k, l, j, a, lmax, nmax, perturb } => {
            let params = Params { p, big_n, n, m, k, l, j, a, lmax, nmax };
            cmd_verify(&identity, &params, perturb)
        }
        Command::OracleDiff { family, nmax, kmin, kmax } => cmd_oracle_diff(family, nmax, kmin, kmax),
        Command::Valuation { p, n } => cmd_valuation(p, &n),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends output quietly.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn cmd_table(family: Family, n: &str, k: &str, format: &str) -> Result<u8, String> {
    let format: Format = format.parse().map_err(|e| format!("{e}"))?;
    let ns = parse_range::<usize>(n).map_err(|e| e.to_string())?;
    let ks = parse_range::<i64>(k).map_err(|e| e.to_string())?;
    let table = OutputTable::compute(family, ns, ks).map_err(|e| e.to_string())?;
    emit(&table.render(format));
    Ok(0)
}

fn cmd_verify(identity: &str, params: &Params, perturb: Option<usize>) -> Result<u8, String> {
    let id: IdentityId = identity.parse().map_err(|e| format!("{e}"))?;
    let report = match perturb {
        Some(index) => verify_perturbed(id, params, index),
        None => verify(id, params),
    }
    .map_err(|e| e.to_string())?;
    emit(&format!("{}\n", report.to_json()));
    if report.passed() {
        return Ok(0);
    }
    for w in report.failures() {
        eprintln!("FAIL {}: lhs = {}, rhs = {}", w.instance, w.lhs, w.rhs);
    }
    Ok(FAIL)
}

#[derive(Serialize)]
struct Mismatch {
    n: usize,
    k: i64,
    method: &'static str,
    value: String,
    series: String,
}

#[derive(Serialize)]
struct OracleSummary {
    family: &'static str,
    nmax: usize,
    kmin: i64,
    kmax: i64,
    cells: usize,
    comparisons: usize,
    note: Option<&'static str>,
    mismatch: Option<Mismatch>,
}

fn cmd_oracle_diff(family: Family, nmax: usize, kmin: i64, kmax: i64) -> Result<u8, String> {
    if nmax > MAX_N || kmin.abs() > MAX_ABS_K || kmax.abs() > MAX_ABS_K || kmin > kmax {
        return Err(format!("need n <= {MAX_N}, |k| <= {MAX_ABS_K} and kmin <= kmax"));
    }
    let mut summary = OracleSummary {
        family: family.id(),
        nmax,
        kmin,
        kmax,
        cells: 0,
        comparisons: 0,
        note: None,
        mismatch: None,
    };
    if family == Family::TildeD {
        summary.note = Some("single method");
        summary.cells = (nmax + 1) * (kmin..=kmax).count();
        emit(&format!("{}\n", serde_json::to_string_pretty(&summary).expect("summary serializes")));
        return Ok(0);
    }
    'outer: for n in 0..=nmax {
        for k in kmin..=kmax {
            summary.cells += 1;
            let mut values = method_values(family, n, k);
            let (_, series) = values.pop().expect("series is listed last");
            let series = series.map_err(|e| format!("series at n = {n}, k = {k}: {e}"))?;
            for (method, value) in values {
                let value = match value {
                    Ok(v) => v,
                    Err(FamilyError::MethodDomain { .. } | FamilyError::IndexParity(_)) => continue,
                    Err(e) => return Err(format!("{method} at n = {n}, k = {k}: {e}")),
                };
                summary.comparisons += 1;
                if value != series {
                    summary.mismatch = Some(Mismatch {
                        n,
                        k,
                        method,
                        value: format_rational(&value),
                        series: format_rational(&series),
                    });
                    break 'outer;
                }
            }
        }
    }
    emit(&format!("{}\n", serde_json::to_string_pretty(&summary).expect("summary serializes")));
    Ok(if summary.mismatch.is_some() { FAIL } else { 0 })
}

fn cmd_valuation(p: u64, n: &str) -> Result<u8, String> {
    let ns = parse_range::<u64>(n).map_err(|e| e.to_string())?;
    for half in ns {
        let report = valuation(p, half).map_err(|e| e.to_string())?;
        emit(&format!("{}\n", serde_json::to_string(&report).expect("report serializes")));
    }
    Ok(0)
}
