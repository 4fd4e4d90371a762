//! Benchmark harness for the constrained mock-Chebyshev least-squares fit.
//!
//! The library half of the benchmark binary: test functions with closed-form
//! derivatives, sweep configuration, the sweep runners themselves, CSV and
//! SVG rendering, and the strict reader for user-supplied sample files. The
//! binary in `main.rs` is a thin argument-parsing shell over these modules,
//! so everything observable is exercisable from integration tests.

pub mod config;
pub mod domain;
pub mod fitfile;
pub mod records;
pub mod runner;
pub mod svg;
pub mod testfn;

use crate::config::ConfigError;
use crate::fitfile::FitFileError;
use mockcheb::operator::OperatorError;
use thiserror::Error;

/// Top-level benchmark failure, carrying the exit-code class.
#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    FitFile(#[from] FitFileError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    /// Every requested record failed numerically; there is nothing to write.
    #[error("no recoverable records: every requested fit failed numerically")]
    AllRecordsFailed,
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<mockcheb::nodes::NodeError> for BenchError {
    fn from(e: mockcheb::nodes::NodeError) -> Self {
        BenchError::Operator(OperatorError::Node(e))
    }
}

impl BenchError {
    /// Process exit code: 2 bad configuration, 3 bad input file, 4 numerical
    /// failure, 1 unexpected output error.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 2,
            BenchError::FitFile(_) => 3,
            BenchError::Operator(_) | BenchError::AllRecordsFailed => 4,
            BenchError::Io(_) => 1,
        }
    }
}
