//! Sweep execution: fits every requested (function, grid order) pair and
//! reduces the results to records.
//!
//! Recoverable failures (a numerically singular KKT solve, or a grid too
//! small to select mock nodes from) are recorded as infinite errors so one
//! bad configuration cannot hide the rest of a sweep; anything else aborts
//! the run.

use crate::config::SweepConfig;
use crate::records::{CondRecord, ErrorRecord, Method, ReconstructionTrace};
use crate::testfn::TestFunctionId;
use crate::BenchError;
use mockcheb::basis::GradedBasis;
use mockcheb::linalg::{one_norm_condition, LinAlgError};
use mockcheb::nodes::{select_mock_chebyshev, NodeError};
use mockcheb::operator::{assemble, fit_with, FitOptions, HermiteSamples, OperatorError};
use mockcheb::Approximant64;
use rayon::prelude::*;

/// Number of points in a reconstruction trace.
pub const TRACE_POINTS: usize = 2000;

/// Equispaced evaluation points t_j = -1 + 2j/(size - 1) on [-1, 1].
pub fn eval_grid(size: usize) -> Vec<f64> {
    assert!(size >= 2, "an evaluation grid needs at least two points");
    (0..size)
        .map(|j| -1.0 + 2.0 * j as f64 / (size - 1) as f64)
        .collect()
}

/// The fit behind one error record, kept so callers can re-examine it.
/// `approximant` is `None` when the fit failed recoverably.
#[derive(Debug, Clone)]
pub struct FitProduct {
    pub function: TestFunctionId,
    pub n: usize,
    pub method: Method,
    pub approximant: Option<Approximant64>,
}

/// Error records plus their fits, index-aligned.
#[derive(Debug, Clone)]
pub struct SweepOutputs {
    pub records: Vec<ErrorRecord>,
    pub fits: Vec<FitProduct>,
}

/// Mean and max absolute error of the order-`order` derivative of the fit
/// against the closed form, over `xs`.
pub fn error_stats(
    approx: &Approximant64,
    xs: &[f64],
    function: TestFunctionId,
    order: usize,
) -> (f64, f64) {
    let fitted = approx.evaluate_many(xs, order);
    let mut sum = 0.0;
    let mut max = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let err = (fitted[i] - function.eval(order, x)).abs();
        sum += err;
        max = max.max(err);
    }
    (sum / xs.len() as f64, max)
}

/// Failures a sweep absorbs as infinite-error records.
fn is_recoverable(err: &OperatorError) -> bool {
    matches!(
        err,
        OperatorError::SingularKkt { .. } | OperatorError::Node(_)
    )
}

/// Selects the mock-Chebyshev grid of order `n`, samples the test function,
/// and solves the constrained least-squares fit.
pub fn fit_for(
    n: usize,
    k: usize,
    equilibrate: bool,
    function: TestFunctionId,
) -> Result<Approximant64, OperatorError> {
    let (params, grid) = select_mock_chebyshev::<f64>(n, k)?;
    let samples = HermiteSamples::from_function(params, &grid, |l, x| function.eval(l, x))?;
    let basis = GradedBasis::chebyshev(params.r_tilde);
    fit_with(&samples, &basis, FitOptions { equilibrate })
}

fn failed_pair(function: TestFunctionId, n: usize, method: Method) -> (ErrorRecord, FitProduct) {
    (
        ErrorRecord {
            function,
            n,
            method,
            mean_error: f64::INFINITY,
            max_error: f64::INFINITY,
            kkt_cond: f64::INFINITY,
        },
        FitProduct {
            function,
            n,
            method,
            approximant: None,
        },
    )
}

fn measured_pair(
    function: TestFunctionId,
    n: usize,
    method: Method,
    order: usize,
    approx: &Approximant64,
    xs: &[f64],
) -> (ErrorRecord, FitProduct) {
    let (mean_error, max_error) = error_stats(approx, xs, function, order);
    (
        ErrorRecord {
            function,
            n,
            method,
            mean_error,
            max_error,
            kkt_cond: approx.diagnostics().kkt_condition,
        },
        FitProduct {
            function,
            n,
            method,
            approximant: Some(approx.clone()),
        },
    )
}

/// Runs the error sweep of `config`: one constrained Hermite fit per
/// (function, grid order), reported twice (value and derivative accuracy),
/// plus the value-only baseline on the doubled grid when requested. The
/// baseline grid order 2n + 1 matches the Hermite data budget at order n.
pub fn run_error_sweep(config: &SweepConfig) -> Result<SweepOutputs, BenchError> {
    let xs = eval_grid(config.eval_grid_size);
    let jobs: Vec<(TestFunctionId, usize)> = config
        .functions
        .iter()
        .flat_map(|&f| config.grid_orders().into_iter().map(move |n| (f, n)))
        .collect();

    let per_job: Vec<Vec<(ErrorRecord, FitProduct)>> = jobs
        .par_iter()
        .map(|&(function, n)| -> Result<Vec<_>, BenchError> {
            let mut pairs = Vec::new();
            match fit_for(n, config.k, config.equilibrate, function) {
                Ok(approx) => {
                    pairs.push(measured_pair(function, n, Method::Hermite, 0, &approx, &xs));
                    pairs.push(measured_pair(
                        function,
                        n,
                        Method::HermiteDeriv,
                        1,
                        &approx,
                        &xs,
                    ));
                }
                Err(e) if is_recoverable(&e) => {
                    pairs.push(failed_pair(function, n, Method::Hermite));
                    pairs.push(failed_pair(function, n, Method::HermiteDeriv));
                }
                Err(e) => return Err(e.into()),
            }
            if config.baseline {
                match fit_for(2 * n + 1, 0, config.equilibrate, function) {
                    Ok(approx) => pairs.push(measured_pair(
                        function,
                        n,
                        Method::MockChebLs,
                        0,
                        &approx,
                        &xs,
                    )),
                    Err(e) if is_recoverable(&e) => {
                        pairs.push(failed_pair(function, n, Method::MockChebLs))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(pairs)
        })
        .collect::<Result<_, _>>()?;

    let mut pairs: Vec<(ErrorRecord, FitProduct)> = per_job.into_iter().flatten().collect();
    pairs.sort_by_key(|(r, _)| (r.function as usize, r.n, r.method));
    if pairs.iter().all(|(r, _)| !r.mean_error.is_finite()) {
        return Err(BenchError::AllRecordsFailed);
    }
    let (records, fits) = pairs.into_iter().unzip();
    Ok(SweepOutputs { records, fits })
}

/// Runs the conditioning sweep: the one-norm condition number of the KKT
/// matrix at each grid order, data-independent by construction. Orders too
/// small to carry a fit are skipped; a singular KKT matrix records as
/// infinite.
pub fn run_cond_sweep(config: &SweepConfig) -> Result<Vec<CondRecord>, BenchError> {
    let mut records = Vec::new();
    for n in config.grid_orders() {
        let (params, grid) = match select_mock_chebyshev::<f64>(n, config.k) {
            Ok(pair) => pair,
            Err(NodeError::GridTooSmall { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        let samples = HermiteSamples::zero(params, &grid);
        let system = assemble(&samples, &GradedBasis::chebyshev(params.r_tilde))?;
        let kkt_cond = match one_norm_condition(&system.kkt) {
            Ok(c) => c,
            Err(LinAlgError::Singular { .. }) => f64::INFINITY,
            Err(e) => return Err(OperatorError::from(e).into()),
        };
        records.push(CondRecord { n, kkt_cond });
    }
    if records.is_empty() {
        return Err(BenchError::AllRecordsFailed);
    }
    records.sort_by_key(|r| r.n);
    Ok(records)
}

/// Fits each (function, grid order) pair and tabulates the fit against the
/// closed form on a dense trace grid. Recoverable failures skip the trace.
pub fn run_reconstruction(config: &SweepConfig) -> Result<Vec<ReconstructionTrace>, BenchError> {
    let xs = eval_grid(TRACE_POINTS);
    let mut traces = Vec::new();
    for &function in &config.functions {
        for n in config.grid_orders() {
            let approx = match fit_for(n, config.k, config.equilibrate, function) {
                Ok(a) => a,
                Err(e) if is_recoverable(&e) => continue,
                Err(e) => return Err(e.into()),
            };
            traces.push(ReconstructionTrace {
                function,
                n,
                xs: xs.clone(),
                f_values: xs.iter().map(|&x| function.eval(0, x)).collect(),
                approx_values: approx.evaluate_many(&xs, 0),
                f_derivs: xs.iter().map(|&x| function.eval(1, x)).collect(),
                approx_derivs: approx.evaluate_many(&xs, 1),
            });
        }
    }
    if traces.is_empty() {
        return Err(BenchError::AllRecordsFailed);
    }
    Ok(traces)
}
