//! Benchmark result records and their deterministic CSV renderings.

use crate::testfn::TestFunctionId;
use std::fmt;

/// Approximation method a record was produced by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    /// Constrained least-squares fit of the full Hermite data.
    Hermite,
    /// Derivative accuracy of the same constrained fit.
    HermiteDeriv,
    /// Value-only least-squares fit on the doubled grid.
    MockChebLs,
}

impl Method {
    /// Stable tag used in CSV output and series labels.
    pub fn tag(self) -> &'static str {
        match self {
            Method::Hermite => "hermite",
            Method::HermiteDeriv => "hermite-deriv",
            Method::MockChebLs => "mock-cheb-ls",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One row of the error sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub function: TestFunctionId,
    pub n: usize,
    pub method: Method,
    pub mean_error: f64,
    pub max_error: f64,
    pub kkt_cond: f64,
}

/// One row of the conditioning sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CondRecord {
    pub n: usize,
    pub kkt_cond: f64,
}

/// Pointwise reconstruction of one fit against the true function.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionTrace {
    pub function: TestFunctionId,
    pub n: usize,
    pub xs: Vec<f64>,
    pub f_values: Vec<f64>,
    pub approx_values: Vec<f64>,
    pub f_derivs: Vec<f64>,
    pub approx_derivs: Vec<f64>,
}

/// Renders a float with enough digits to round-trip f64 exactly.
/// Infinities render as `inf`, which flags failed fits in the CSV.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders the error-sweep CSV, sorted by (function, n, method tag) so the
/// byte output is independent of job scheduling.
pub fn render_error_csv(records: &[ErrorRecord]) -> String {
    let mut sorted: Vec<&ErrorRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.function as usize, r.n, r.method));
    let mut out = String::from("function,n,method,mean_error,max_error,kkt_cond\n");
    for r in sorted {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.function.name(),
            r.n,
            r.method.tag(),
            format_float(r.mean_error),
            format_float(r.max_error),
            format_float(r.kkt_cond),
        ));
    }
    out
}

/// Renders the conditioning-sweep CSV, sorted by grid order.
pub fn render_cond_csv(records: &[CondRecord]) -> String {
    let mut sorted: Vec<&CondRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.n);
    let mut out = String::from("n,kkt_cond\n");
    for r in sorted {
        out.push_str(&format!("{},{}\n", r.n, format_float(r.kkt_cond)));
    }
    out
}

/// Renders one reconstruction trace as CSV, one row per evaluation point.
pub fn render_trace_csv(trace: &ReconstructionTrace) -> String {
    let mut out = String::from("x,f,approx,f_deriv,approx_deriv\n");
    for i in 0..trace.xs.len() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(trace.xs[i]),
            format_float(trace.f_values[i]),
            format_float(trace.approx_values[i]),
            format_float(trace.f_derivs[i]),
            format_float(trace.approx_derivs[i]),
        ));
    }
    out
}
