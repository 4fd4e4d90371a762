//! Command-line benchmark driver: error/conditioning sweeps, dense
//! reconstructions, and fits of user-supplied Hermite data, with CSV and
//! SVG output.

use clap::{Args, Parser, Subcommand};
use mockcheb::basis::GradedBasis;
use mockcheb::nodes::{select_mock_chebyshev, select_with_degrees, DegreeParams};
use mockcheb::operator::{fit_with, FitOptions, HermiteSamples};
use mockcheb_bench::config::{parse_config_file, ConfigOverrides, SweepConfig};
use mockcheb_bench::fitfile::read_fit_file;
use mockcheb_bench::records::{
    format_float, render_cond_csv, render_error_csv, render_trace_csv, ErrorRecord, Method,
};
use mockcheb_bench::runner::{run_cond_sweep, run_error_sweep, run_reconstruction};
use mockcheb_bench::svg::{line_chart, reconstruction_chart, Series};
use mockcheb_bench::testfn::TestFunctionId;
use mockcheb_bench::BenchError;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "mockcheb-bench",
    version,
    about = "Benchmarks for constrained mock-Chebyshev least-squares fits of Hermite data"
)]
struct Cli {
    /// Config file with `key = value` lines; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep mean/max approximation errors over grid orders.
    SweepError(SweepArgs),
    /// Sweep the KKT condition number over grid orders.
    SweepCond(SweepArgs),
    /// Tabulate fits against the true functions on a dense point grid.
    Reconstruct(SweepArgs),
    /// Fit Hermite data from a CSV file and write the coefficients.
    Fit(FitArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// First grid order of the sweep.
    #[arg(long)]
    n_start: Option<usize>,
    /// Last grid order (inclusive).
    #[arg(long)]
    n_end: Option<usize>,
    /// Grid-order increment.
    #[arg(long)]
    n_step: Option<usize>,
    /// Derivative order of the Hermite data (0, 1, or 2).
    #[arg(long)]
    k: Option<usize>,
    /// Number of points error statistics are computed on.
    #[arg(long)]
    grid_size: Option<usize>,
    /// Comma-separated test functions (f1, f2, f3, f4).
    #[arg(long, value_delimiter = ',', value_parser = TestFunctionId::from_str)]
    functions: Option<Vec<TestFunctionId>>,
    /// Also fit the value-only baseline on the doubled grid.
    #[arg(long)]
    baseline: bool,
    /// Factor the raw KKT matrix instead of the equilibrated one.
    #[arg(long)]
    no_equilibrate: bool,
    /// Directory output files are written into.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

impl SweepArgs {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            n_start: self.n_start,
            n_end: self.n_end,
            n_step: self.n_step,
            k: self.k,
            eval_grid_size: self.grid_size,
            functions: self.functions.clone(),
            baseline: self.baseline.then_some(true),
            equilibrate: self.no_equilibrate.then_some(false),
            out_dir: self.out_dir.clone(),
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Hermite data CSV with header `x,f0,...,fK`.
    path: PathBuf,
    /// Derivative order to fit (needs columns f0..fk in the file).
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Mock-Chebyshev degree; defaults to the closed-form choice.
    #[arg(long)]
    m: Option<usize>,
    /// Regression surplus; defaults to the closed-form choice.
    #[arg(long)]
    p: Option<usize>,
    /// Directory output files are written into.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Factor the raw KKT matrix instead of the equilibrated one.
    #[arg(long)]
    no_equilibrate: bool,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), BenchError> {
    let file_overrides = match &cli.config {
        Some(path) => Some(parse_config_file(path)?),
        None => None,
    };
    match &cli.command {
        Command::SweepError(args) => {
            let config = SweepConfig::resolve(file_overrides.as_ref(), &args.overrides())?;
            sweep_error(&config)
        }
        Command::SweepCond(args) => {
            let config = SweepConfig::resolve(file_overrides.as_ref(), &args.overrides())?;
            sweep_cond(&config)
        }
        Command::Reconstruct(args) => {
            let base = SweepConfig {
                n_start: 25,
                n_end: 100,
                n_step: 25,
                ..SweepConfig::default()
            };
            let config =
                SweepConfig::resolve_from(base, file_overrides.as_ref(), &args.overrides())?;
            reconstruct(&config)
        }
        Command::Fit(args) => fit_from_file(args, file_overrides.as_ref()),
    }
}

/// Writes `content` to `dir/name`, creating the directory if needed.
fn write_output(dir: &Path, name: &str, content: &str) -> Result<PathBuf, BenchError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    Ok(path)
}

/// One log-scale series per (function, method) pair, in config order.
fn error_series(config: &SweepConfig, records: &[ErrorRecord]) -> Vec<Series> {
    let methods = [Method::Hermite, Method::HermiteDeriv, Method::MockChebLs];
    let mut series = Vec::new();
    for &function in &config.functions {
        for &method in &methods {
            let points: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.function == function && r.method == method)
                .map(|r| (r.n as f64, r.mean_error))
                .collect();
            if !points.is_empty() {
                series.push(Series {
                    label: format!("{} {}", function.name(), method.tag()),
                    points,
                });
            }
        }
    }
    series
}

fn sweep_error(config: &SweepConfig) -> Result<(), BenchError> {
    let outputs = run_error_sweep(config)?;
    let csv = render_error_csv(&outputs.records);
    let svg = line_chart(
        "mean approximation error",
        "grid order n",
        "mean error",
        true,
        &error_series(config, &outputs.records),
    );
    let csv_path = write_output(&config.out_dir, "sweep_error.csv", &csv)?;
    let svg_path = write_output(&config.out_dir, "sweep_error.svg", &svg)?;
    println!(
        "wrote {} and {} ({} records)",
        csv_path.display(),
        svg_path.display(),
        outputs.records.len()
    );
    Ok(())
}

fn sweep_cond(config: &SweepConfig) -> Result<(), BenchError> {
    let records = run_cond_sweep(config)?;
    let csv = render_cond_csv(&records);
    let series = vec![Series {
        label: "kkt condition".to_string(),
        points: records.iter().map(|r| (r.n as f64, r.kkt_cond)).collect(),
    }];
    let svg = line_chart(
        "kkt one-norm condition number",
        "grid order n",
        "condition",
        true,
        &series,
    );
    let csv_path = write_output(&config.out_dir, "sweep_cond.csv", &csv)?;
    let svg_path = write_output(&config.out_dir, "sweep_cond.svg", &svg)?;
    println!(
        "wrote {} and {} ({} records)",
        csv_path.display(),
        svg_path.display(),
        records.len()
    );
    Ok(())
}

fn reconstruct(config: &SweepConfig) -> Result<(), BenchError> {
    let traces = run_reconstruction(config)?;
    let mut written = 0;
    for trace in &traces {
        let stem = format!("reconstruct_{}_n{}", trace.function.name(), trace.n);
        write_output(
            &config.out_dir,
            &format!("{stem}.csv"),
            &render_trace_csv(trace),
        )?;
        write_output(
            &config.out_dir,
            &format!("{stem}.svg"),
            &reconstruction_chart(trace),
        )?;
        written += 2;
    }
    println!(
        "wrote {written} files for {} reconstructions into {}",
        traces.len(),
        config.out_dir.display()
    );
    Ok(())
}

fn fit_from_file(args: &FitArgs, file_overrides: Option<&ConfigOverrides>) -> Result<(), BenchError> {
    let out_dir = args
        .out_dir
        .clone()
        .or_else(|| file_overrides.and_then(|o| o.out_dir.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    let equilibrate = if args.no_equilibrate {
        false
    } else {
        file_overrides.and_then(|o| o.equilibrate).unwrap_or(true)
    };

    let input = read_fit_file(&args.path, args.k)?;
    let (params, grid) = if args.m.is_none() && args.p.is_none() {
        select_mock_chebyshev::<f64>(input.n, args.k)?
    } else {
        let m = args.m.unwrap_or_else(|| DegreeParams::formula_m(input.n));
        let p = args.p.unwrap_or_else(|| DegreeParams::formula_p(input.n));
        select_with_degrees::<f64>(input.n, args.k, m, p)?
    };
    let reordered: Vec<Vec<f64>> = input
        .values
        .iter()
        .map(|row| {
            (0..grid.len())
                .map(|i| row[grid.original_index(i)])
                .collect()
        })
        .collect();
    let samples = HermiteSamples::from_values(params, &grid, reordered)?;
    let basis = GradedBasis::chebyshev(params.r_tilde);
    let approx = fit_with(&samples, &basis, FitOptions { equilibrate })?;

    let mut csv = String::from("j,coefficient\n");
    for (j, c) in approx.coefficients().iter().enumerate() {
        csv.push_str(&format!("{j},{}\n", format_float(*c)));
    }
    let path = write_output(&out_dir, "fit_coefficients.csv", &csv)?;

    let d = approx.diagnostics();
    println!("grid order n = {}", params.n);
    println!("derivative order k = {}", params.k);
    println!("mock-chebyshev degree m = {} ({} mock nodes)", params.m, params.m + 1);
    println!("regression surplus p = {}", params.p);
    println!("fit degree = {}", params.r_tilde);
    println!("kkt condition = {:.6e}", d.kkt_condition);
    println!("solve residual = {:.6e}", d.solve_residual);
    println!(
        "constraint residual = {:.6e} (tolerance {:.6e}, {})",
        d.constraint_residual,
        d.constraint_tolerance,
        if d.constraint_satisfied {
            "satisfied"
        } else {
            "NOT satisfied"
        }
    );
    println!("wrote {}", path.display());
    Ok(())
}
