//! Command line front end: tabulate weighted means, scan log-log
//! convexity, run the verification suite, and reproduce the
//! counterexamples. CSV output is stable byte-for-byte for a fixed
//! configuration; numbers are serialized with 17 significant digits so
//! doubles round-trip.

mod funcspec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mixedmeans::convexity::{self, MeanCurve};
use mixedmeans::geometry::{self, Kind};
use mixedmeans::verify::{self, CheckStatus, UnivalenceCriterion};
use mixedmeans::weights::{self, WeightParams};
use mixedmeans::{PowerSeries, QuadratureParams};

#[derive(Parser)]
#[command(name = "mixedmeans", version, about = "Weighted integral means of mixed areas and lengths on the unit disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate mixed ratios and weighted means over a radius grid.
    Means(MeansArgs),
    /// Scan the log-log convexity indicator of a weighted mean.
    Scan(ScanArgs),
    /// Run the full verification suite.
    Verify(ReportArgs),
    /// Run the counterexample pipelines.
    Examples(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

#[derive(Args)]
struct MeansArgs {
    /// Function: named builtin, expression like "z+0.5*z^2", or
    /// comma-separated coefficients.
    #[arg(long = "f")]
    function: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.01)]
    r_min: f64,
    #[arg(long, default_value_t = 0.99)]
    r_max: f64,
    #[arg(long = "grid", default_value_t = 50)]
    grid_points: usize,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long = "f")]
    function: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Which mean to scan.
    #[arg(long, value_enum, default_value_t = ScanKind::Area)]
    kind: ScanKind,
    /// Grid bounds in the squared-radius variable x = r^2.
    #[arg(long, default_value_t = 0.02)]
    x_min: f64,
    #[arg(long, default_value_t = 0.99)]
    x_max: f64,
    #[arg(long = "grid", default_value_t = 40)]
    grid_points: usize,
    /// Indicator tolerance for the verdict; signs are certified beyond
    /// ten times this.
    #[arg(long, default_value_t = 1e-7)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Area,
    Length,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Structured)]
    format: Format,
}

/// Serialize with 17 significant digits so doubles survive a round trip.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn thread_budget() -> usize {
    if let Ok(v) = std::env::var("MIXEDMEANS_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Whether the length quantities are defined for this map: two-term maps
/// always, otherwise a univalence criterion must certify the map.
fn length_defined(f: &PowerSeries) -> bool {
    if f.as_two_term().is_some() || f.is_constant() {
        return true;
    }
    let wedge_normalized = f.coeff(0).norm() <= 1e-12 && (f.coeff(1) - 1.0).norm() <= 1e-12;
    let criterion = if wedge_normalized {
        UnivalenceCriterion::Wedge
    } else {
        UnivalenceCriterion::Nehari
    };
    verify::check_univalence(criterion, "cli", f, 2000).status == CheckStatus::Pass
}

fn run_means(args: &MeansArgs) -> Result<ExitCode, String> {
    if !(args.r_min > 0.0 && args.r_min < args.r_max && args.r_max < 1.0) {
        return Err(format!(
            "need 0 < r_min < r_max < 1, got [{}, {}]",
            args.r_min, args.r_max
        ));
    }
    if args.grid_points < 2 {
        return Err("grid must have at least 2 points".into());
    }
    if !(0.0..=1.0).contains(&args.beta) {
        return Err(format!("beta must lie in [0,1], got {}", args.beta));
    }
    let f = funcspec::parse_function(&args.function)?;
    let params = WeightParams::new(args.alpha, args.beta).map_err(|e| e.to_string())?;
    let quad = QuadratureParams::with_rel_tol(args.tolerance);
    let with_length = length_defined(&f);
    let grid = verify::linspace(args.r_min, args.r_max, args.grid_points);

    struct Row {
        r: f64,
        phi_a: f64,
        phi_l: Option<f64>,
        mean_a: f64,
        mean_l: Option<f64>,
        err_a: f64,
        err_l: Option<f64>,
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &r in &grid {
        let phi_a = geometry::mixed_ratio(Kind::Area, &f, r, args.beta, &quad).map_err(|e| e.to_string())?;
        let mean_a = weights::weighted_mean(Kind::Area, &f, params, r, &quad).map_err(|e| e.to_string())?;
        let (phi_l, mean_l, err_l) = if with_length {
            let pl = geometry::mixed_ratio(Kind::Length, &f, r, args.beta, &quad).map_err(|e| e.to_string())?;
            let ml = weights::weighted_mean(Kind::Length, &f, params, r, &quad).map_err(|e| e.to_string())?;
            (Some(pl.value), Some(ml.value), Some(ml.error_bound))
        } else {
            (None, None, None)
        };
        rows.push(Row {
            r,
            phi_a: phi_a.value,
            phi_l,
            mean_a: mean_a.value,
            mean_l,
            err_a: mean_a.error_bound,
            err_l,
        });
    }

    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let content = match args.format {
        Format::Csv => {
            let mut s = String::from("r,phi_A,phi_L,mean_A,mean_L,err_A,err_L\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    num(row.r),
                    num(row.phi_a),
                    opt(row.phi_l),
                    num(row.mean_a),
                    opt(row.mean_l),
                    num(row.err_a),
                    opt(row.err_l),
                ));
            }
            s
        }
        Format::Structured => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "r": row.r,
                        "phi_A": row.phi_a,
                        "phi_L": row.phi_l,
                        "mean_A": row.mean_a,
                        "mean_L": row.mean_l,
                        "err_A": row.err_a,
                        "err_L": row.err_l,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_scan(args: &ScanArgs) -> Result<ExitCode, String> {
    if !(args.x_min > 0.0 && args.x_min < args.x_max && args.x_max < 1.0) {
        return Err(format!("need 0 < x_min < x_max < 1, got [{}, {}]", args.x_min, args.x_max));
    }
    if args.grid_points < 2 {
        return Err("grid must have at least 2 points".into());
    }
    if !(0.0..=1.0).contains(&args.beta) {
        return Err(format!("beta must lie in [0,1], got {}", args.beta));
    }
    let f = funcspec::parse_function(&args.function)?;
    let quad = QuadratureParams::with_rel_tol(1e-12);
    let curve = match args.kind {
        ScanKind::Area => match f.as_two_term() {
            Some((n, _)) => MeanCurve::area_monomial(n, args.alpha, args.beta),
            None => MeanCurve::area_of_series(&f, args.alpha, args.beta),
        },
        ScanKind::Length => match f.as_two_term() {
            Some((n, _)) => MeanCurve::length_monomial(n, args.alpha, args.beta),
            None => {
                if !length_defined(&f) {
                    return Err("length scan needs a two-term or univalent map".into());
                }
                MeanCurve::length_of_series(&f, args.alpha, args.beta, 2048).map_err(|e| e.to_string())?
            }
        },
    };
    let grid = verify::linspace(args.x_min, args.x_max, args.grid_points);
    let report = convexity::loglog_scan_with_indicator(|x| curve.indicator(x, &quad), &grid, args.tolerance)
        .map_err(|e| e.to_string())?;
    let certified = |ind: f64| -> i8 {
        if ind > 10.0 * args.tolerance {
            1
        } else if ind < -10.0 * args.tolerance {
            -1
        } else {
            0
        }
    };
    let content = match args.format {
        Format::Csv => {
            let mut s = String::from("x,indicator,certified_sign\n");
            for g in &report.grid {
                s.push_str(&format!("{},{},{}\n", num(g.x), num(g.indicator), certified(g.indicator)));
            }
            s.push_str(&format!("# verdict,{}\n", report.verdict));
            s
        }
        Format::Structured => {
            let items: Vec<serde_json::Value> = report
                .grid
                .iter()
                .map(|g| serde_json::json!({"x": g.x, "indicator": g.indicator, "certified_sign": certified(g.indicator)}))
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::json!({
                    "grid": items,
                    "verdict": report.verdict.to_string(),
                }))
                .unwrap()
            )
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn emit_reports(args: &ReportArgs, reports: &[verify::CheckReport]) -> Result<ExitCode, String> {
    let content = match args.format {
        Format::Structured => format!("{}\n", serde_json::to_string_pretty(reports).unwrap()),
        Format::Csv => {
            let mut s = String::from("check_id,status,witnesses,notes\n");
            for r in reports {
                let status = match r.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                };
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.check_id.replace(',', ";"),
                    status,
                    r.witnesses.len(),
                    r.notes.replace(',', ";"),
                ));
            }
            s
        }
    };
    emit(&args.out, &content)?;
    let failed = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
    eprintln!(
        "{} checks: {} passed, {failed} failed, {} skipped",
        reports.len(),
        reports.iter().filter(|r| r.status == CheckStatus::Pass).count(),
        reports.iter().filter(|r| r.status == CheckStatus::Skipped).count(),
    );
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Means(args) => run_means(args),
        Command::Scan(args) => run_scan(args),
        Command::Verify(args) => {
            let reports = verify::default_suite(thread_budget());
            emit_reports(args, &reports)
        }
        Command::Examples(args) => {
            let quad = QuadratureParams::with_rel_tol(1e-12);
            let reports = verify::reproduce_examples(&quad);
            emit_reports(args, &reports)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
