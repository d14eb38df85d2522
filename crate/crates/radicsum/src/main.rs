use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use radicsum::calculus::{self, DifferenceScheme, DEFAULT_R_LADDER};
use radicsum::closed_form;
use radicsum::experiments::{self, ClaimId, ClaimReport, ClaimStatus, GridSpec};
use radicsum::oracle::RootIndex;
use radicsum::{Error, LN_SQRT_2PI};

const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming a small text config that overrides the
/// default verification grid (lines `n = 1,2,3` and `r = 1,1.5,2`).
const GRID_FILE_ENV: &str = "RADICSUM_GRID_FILE";

#[derive(Parser)]
#[command(
    name = "radicsum",
    version,
    about = "Closed-form root sums, the phi correction term, and factorial/hyperfactorial estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum XiSource {
    Sqrt2pi,
    Identity,
    Limit,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the sum of r'th roots of 1..n, exactly and/or in closed form
    Sum {
        n: u64,
        r: f64,
        /// Print the brute-force sum only
        #[arg(long, conflicts_with_all = ["approx", "both"])]
        exact: bool,
        /// Print the closed-form value only
        #[arg(long, conflicts_with = "both")]
        approx: bool,
        /// Print exact, closed form, and phi (default)
        #[arg(long)]
        both: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Estimate ln n! from the (n+1)-centered formula, with Stirling baseline
    Factorial {
        n: u64,
        /// Source of the xi constant in the estimate
        #[arg(long, value_enum, default_value = "sqrt2pi")]
        xi: XiSource,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Run verification claims and report pass/fail/measured
    Verify {
        /// Claim id (PHI_BOUNDS, PHI_MONOTONE, PHI_LIMIT_HALF, EQ3_IDENTITY,
        /// XI_SQRT_2PI, XI_TWO_ROUTES, HYPERFACT_RESIDUAL, SPEEDUP) or "all"
        #[arg(long, default_value = "all")]
        claim: String,
        /// Inline grid override, e.g. "n=1,2,10;r=1,2,8"
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        /// Also write the report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Speed/accuracy benchmark of the O(n) oracle vs the O(1) closed form
    Bench {
        #[arg(long, default_value_t = 1_000_000)]
        n_max: u64,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 5)]
        reps: u32,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

/// 17 significant digits; round-trip safe for f64.
fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

fn fmt17_opt(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => fmt17(v),
        _ => String::new(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> radicsum::Result<ExitCode> {
    match cli.command {
        Command::Sum {
            n,
            r,
            exact,
            approx,
            both,
            format,
        } => cmd_sum(n, r, exact, approx, both, format),
        Command::Factorial { n, xi, format } => cmd_factorial(n, xi, format),
        Command::Verify {
            claim,
            grid,
            format,
            out,
        } => cmd_verify(&claim, grid.as_deref(), format, out.as_deref()),
        Command::Bench {
            n_max,
            r,
            reps,
            format,
        } => cmd_bench(n_max, r, reps, format),
    }
}

fn cmd_sum(
    n: u64,
    r: f64,
    exact: bool,
    approx: bool,
    both: bool,
    format: Format,
) -> radicsum::Result<ExitCode> {
    let r = RootIndex::new(r)?;
    let want_both = both || (!exact && !approx);
    let want_exact = exact || want_both;
    let want_approx = approx || want_both;

    let exact_val = if want_exact {
        Some(radicsum::oracle::exact_root_sum(n, r)?)
    } else {
        None
    };
    let approx_val = if want_approx {
        Some(closed_form::approx_root_sum(n, r)?.approx)
    } else {
        None
    };
    let phi = match (exact_val, approx_val) {
        (Some(e), Some(a)) if want_both => Some(a - e),
        _ => None,
    };

    match format {
        Format::Human => {
            if let Some(e) = exact_val {
                println!("exact  {}", fmt17(e));
            }
            if let Some(a) = approx_val {
                println!("approx {}", fmt17(a));
            }
            if let Some(p) = phi {
                println!("phi    {}", fmt17(p));
            }
        }
        Format::Csv => {
            println!("n,r,exact,approx,phi");
            println!(
                "{n},{},{},{},{}",
                fmt17(r.get()),
                fmt17_opt(exact_val),
                fmt17_opt(approx_val),
                fmt17_opt(phi)
            );
        }
        Format::Json => {
            let body = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "n": n,
                "r": r.get(),
                "exact": exact_val,
                "approx": approx_val,
                "phi": phi,
            });
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_factorial(n: u64, xi: XiSource, format: Format) -> radicsum::Result<ExitCode> {
    let xi_value = match xi {
        XiSource::Sqrt2pi => LN_SQRT_2PI,
        XiSource::Identity => calculus::xi_via_identity(n)?,
        XiSource::Limit => {
            calculus::xi_via_limit(n, &DEFAULT_R_LADDER, &DifferenceScheme::default())?.xi_limit
        }
    };
    let est = closed_form::factorial_log_estimate(n, xi_value)?;
    let ratio = (est.log_estimate - est.exact_log).exp();
    match format {
        Format::Human => {
            println!("exact ln n!    {}", fmt17(est.exact_log));
            println!("estimate ln n! {}", fmt17(est.log_estimate));
            println!("stirling ln n! {}", fmt17(est.stirling_log));
            println!("xi used        {}", fmt17(est.xi_used));
            println!("estimate/exact {}", fmt17(ratio));
        }
        Format::Csv => {
            println!("n,exact_log,estimate_log,stirling_log,xi_used,ratio");
            println!(
                "{n},{},{},{},{},{}",
                fmt17(est.exact_log),
                fmt17(est.log_estimate),
                fmt17(est.stirling_log),
                fmt17(est.xi_used),
                fmt17(ratio)
            );
        }
        Format::Json => {
            let body = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "n": n,
                "exact_log": est.exact_log,
                "estimate_log": est.log_estimate,
                "stirling_log": est.stirling_log,
                "xi_used": est.xi_used,
                "ratio": ratio,
            });
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_grid_spec(text: &str) -> radicsum::Result<GridSpec> {
    let mut n_values = None;
    let mut r_values = None;
    for part in text.split([';', '\n']) {
        let part = part.trim();
        if part.is_empty() || part.starts_with('#') {
            continue;
        }
        let (key, list) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("bad grid entry '{part}'")))?;
        let values: Vec<&str> = list.split(',').map(str::trim).collect();
        match key.trim() {
            "n" => {
                n_values = Some(
                    values
                        .iter()
                        .map(|v| {
                            v.parse::<u64>().map_err(|_| {
                                Error::InvalidArgument(format!("bad grid n value '{v}'"))
                            })
                        })
                        .collect::<radicsum::Result<Vec<_>>>()?,
                )
            }
            "r" => {
                r_values = Some(
                    values
                        .iter()
                        .map(|v| {
                            v.parse::<f64>().map_err(|_| {
                                Error::InvalidArgument(format!("bad grid r value '{v}'"))
                            })
                        })
                        .collect::<radicsum::Result<Vec<_>>>()?,
                )
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown grid key '{other}'"
                )))
            }
        }
    }
    match (n_values, r_values) {
        (Some(n), Some(r)) => GridSpec::new(n, r),
        _ => Err(Error::InvalidArgument(
            "grid must define both n and r lists".into(),
        )),
    }
}

fn resolve_grid(inline: Option<&str>) -> radicsum::Result<Option<GridSpec>> {
    if let Some(text) = inline {
        return parse_grid_spec(text).map(Some);
    }
    if let Ok(path) = std::env::var(GRID_FILE_ENV) {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
        return parse_grid_spec(&text).map(Some);
    }
    Ok(None)
}

fn run_claim(claim: ClaimId, grid: Option<&GridSpec>) -> radicsum::Result<ClaimReport> {
    let default_grid = GridSpec::default();
    let phi_grid = grid.unwrap_or(&default_grid);
    match claim {
        ClaimId::PhiBounds => experiments::phi_bounds_scan(phi_grid),
        ClaimId::PhiMonotone => experiments::phi_monotone_scan(phi_grid),
        ClaimId::PhiLimitHalf => {
            let ladder = [8.0, 16.0, 32.0, 64.0, 128.0, 1024.0];
            let n_values: Vec<u64> = grid.map(|g| g.n_values.clone()).unwrap_or(vec![1, 10, 100]);
            let mut merged: Option<ClaimReport> = None;
            for n in n_values {
                let report = experiments::phi_limit_study(n, &ladder)?;
                merged = Some(match merged {
                    None => report,
                    Some(mut acc) => {
                        if report.status == ClaimStatus::Fail {
                            acc.status = ClaimStatus::Fail;
                            acc.worst_case = report.worst_case;
                            acc.summary = report.summary;
                        }
                        acc.details.extend(report.details);
                        acc
                    }
                });
            }
            Ok(merged.unwrap())
        }
        ClaimId::Eq3Identity => {
            let eq3 = experiments::eq3_grid();
            experiments::eq3_identity_scan(grid.unwrap_or(&eq3))
        }
        ClaimId::XiSqrt2Pi => {
            let n_values = grid
                .map(|g| g.n_values.clone())
                .unwrap_or_else(experiments::decade_n_values);
            experiments::xi_sqrt_2pi_report(&n_values)
        }
        ClaimId::XiTwoRoutes => {
            let n_values = grid.map(|g| g.n_values.clone()).unwrap_or(vec![1, 10, 100]);
            experiments::xi_two_routes_report(&n_values)
        }
        ClaimId::HyperfactResidual => {
            let n_values = grid
                .map(|g| g.n_values.clone())
                .unwrap_or_else(experiments::decade_n_values);
            experiments::hyperfactorial_residual_study(&n_values)
        }
        ClaimId::Speedup => {
            let n_values = grid
                .map(|g| g.n_values.clone())
                .unwrap_or(vec![1_000, 10_000, 100_000, 1_000_000]);
            let r = RootIndex::new(2.0)?;
            Ok(experiments::benchmark_speed_accuracy(&n_values, r, 5)?.to_claim_report())
        }
    }
}

fn verify_csv(reports: &[ClaimReport]) -> String {
    let mut out = String::from("claim,n,r,value,target,abs_error,status\n");
    for report in reports {
        for sample in &report.details {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                report.claim.as_str(),
                sample.n,
                fmt17_opt(sample.r),
                fmt17(sample.value),
                fmt17_opt(sample.target),
                fmt17_opt(sample.abs_error),
                report.status.as_str()
            )
            .unwrap();
        }
    }
    out
}

fn verify_json(reports: &[ClaimReport]) -> String {
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|report| {
            serde_json::json!({
                "claim": report.claim.as_str(),
                "status": report.status.as_str(),
                "summary": report.summary,
                "worst_case": report.worst_case,
                "rows": report.details.iter().map(|s| serde_json::json!({
                    "claim": report.claim.as_str(),
                    "n": s.n,
                    "r": s.r,
                    "value": s.value,
                    "target": s.target,
                    "abs_error": s.abs_error,
                    "status": report.status.as_str(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let body = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "reports": rows,
    });
    serde_json::to_string_pretty(&body).unwrap()
}

fn verify_human(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    for report in reports {
        writeln!(
            out,
            "{:<20} {:<8} {}",
            report.claim.as_str(),
            report.status.as_str(),
            report.summary
        )
        .unwrap();
    }
    out
}

fn cmd_verify(
    claim: &str,
    grid: Option<&str>,
    format: Format,
    out: Option<&std::path::Path>,
) -> radicsum::Result<ExitCode> {
    let grid = resolve_grid(grid)?;
    let claims: Vec<ClaimId> = if claim.eq_ignore_ascii_case("all") {
        ClaimId::ALL.to_vec()
    } else {
        vec![claim.parse()?]
    };
    let mut reports = Vec::new();
    for id in claims {
        reports.push(run_claim(id, grid.as_ref())?);
    }
    let emission = match format {
        Format::Human => verify_human(&reports),
        Format::Csv => verify_csv(&reports),
        Format::Json => verify_json(&reports),
    };
    print!("{emission}");
    if let Some(path) = out {
        std::fs::write(path, &emission)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let any_fail = reports.iter().any(|r| r.status == ClaimStatus::Fail);
    Ok(if any_fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn bench_n_ladder(n_max: u64) -> Vec<u64> {
    let mut values = Vec::new();
    let mut n = 1_000u64.min(n_max);
    while n < n_max {
        values.push(n);
        n = n.saturating_mul(10);
    }
    values.push(n_max);
    values.dedup();
    values
}

fn cmd_bench(n_max: u64, r: f64, reps: u32, format: Format) -> radicsum::Result<ExitCode> {
    let r = RootIndex::new(r)?;
    let report = experiments::benchmark_speed_accuracy(&bench_n_ladder(n_max), r, reps)?;
    match format {
        Format::Human => {
            println!(
                "{:>12} {:>24} {:>24} {:>24} {:>14} {:>14}",
                "n", "exact", "approx", "phi", "exact_ns", "approx_ns"
            );
            for rec in &report.records {
                println!(
                    "{:>12} {:>24} {:>24} {:>24} {:>14.0} {:>14.0}",
                    rec.n,
                    fmt17(rec.exact),
                    fmt17(rec.approx),
                    fmt17(rec.phi),
                    rec.exact_ns,
                    rec.approx_ns
                );
            }
            println!("status: {} ({})", report.status.as_str(), report.summary);
        }
        Format::Csv => {
            println!("n,r,exact,approx,phi,exact_ns,approx_ns");
            for rec in &report.records {
                println!(
                    "{},{},{},{},{},{},{}",
                    rec.n,
                    fmt17(rec.r),
                    fmt17(rec.exact),
                    fmt17(rec.approx),
                    fmt17(rec.phi),
                    fmt17(rec.exact_ns),
                    fmt17(rec.approx_ns)
                );
            }
        }
        Format::Json => {
            let body = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "report": report,
            });
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}
