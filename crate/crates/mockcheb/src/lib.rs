//! Constrained mock-Chebyshev least-squares approximation of Hermite data
//! on equispaced grids.
//!
//! Polynomial interpolation on equispaced nodes diverges for analytic
//! functions with nearby poles, yet equispaced derivative data is what
//! measurements usually provide. This crate fits a polynomial of reduced
//! degree by least squares over the whole grid while interpolating exactly
//! on the subset of nodes closest to a Chebyshev-Lobatto configuration,
//! extending the mock-Chebyshev idea to derivative (Hermite) data.
//!
//! The pieces, bottom up:
//!
//! * [`nodes`]: equispaced and Chebyshev-Lobatto grids, mock-Chebyshev
//!   subset selection, and the degree bookkeeping that splits the grid into
//!   interpolation and regression parts.
//! * [`basis`]: graded Chebyshev and monomial bases with derivative
//!   evaluation tables by differentiated three-term recurrences, plus the
//!   two basis constants of the operator-norm bound.
//! * [`linalg`]: dense LU with exact power-of-two equilibration, explicit
//!   inverse and one-norm condition, and QR-based numerical rank.
//! * [`operator`]: the KKT assembly and solve of the constrained fit, its
//!   diagnostics, and both the a-priori and the empirical operator norm.
//! * [`classical`]: Newton-Hermite and barycentric Lagrange reference
//!   interpolants.
//!
//! All numerical types are generic over [`Real`], implemented for `f32` and
//! `f64`; the crate root re-exports concrete aliases for the common case.
//!
//! ```
//! use mockcheb::basis::GradedBasis;
//! use mockcheb::nodes::select_mock_chebyshev;
//! use mockcheb::operator::{fit, HermiteSamples};
//!
//! // Runge function with first-derivative data on 101 equispaced nodes.
//! let (params, grid) = select_mock_chebyshev::<f64>(100, 1).unwrap();
//! let f = |l: usize, x: f64| {
//!     let q = 1.0 + 25.0 * x * x;
//!     if l == 0 { 1.0 / q } else { -50.0 * x / (q * q) }
//! };
//! let samples = HermiteSamples::from_function(params, &grid, f).unwrap();
//! let approx = fit(&samples, &GradedBasis::chebyshev(params.r_tilde)).unwrap();
//! assert!(approx.diagnostics().constraint_satisfied);
//! assert!((approx.evaluate(0.5, 0) - f(0, 0.5)).abs() < 1e-4);
//! ```

pub mod basis;
pub mod classical;
pub mod linalg;
pub mod nodes;
pub mod operator;
mod quad;
mod real;

pub use real::Real;

/// f64 dense matrix.
pub type DenseMatrix64 = linalg::DenseMatrix<f64>;
/// f32 dense matrix.
pub type DenseMatrix32 = linalg::DenseMatrix<f32>;
/// f64 reordered grid.
pub type ReorderedGrid64 = nodes::ReorderedGrid<f64>;
/// f32 reordered grid.
pub type ReorderedGrid32 = nodes::ReorderedGrid<f32>;
/// f64 Hermite samples.
pub type HermiteSamples64 = operator::HermiteSamples<f64>;
/// f32 Hermite samples.
pub type HermiteSamples32 = operator::HermiteSamples<f32>;
/// f64 KKT system.
pub type KktSystem64 = operator::KktSystem<f64>;
/// f32 KKT system.
pub type KktSystem32 = operator::KktSystem<f32>;
/// f64 fitted approximant.
pub type Approximant64 = operator::Approximant<f64>;
/// f32 fitted approximant.
pub type Approximant32 = operator::Approximant<f32>;
/// f64 Newton-Hermite form.
pub type NewtonHermiteForm64 = classical::NewtonHermiteForm<f64>;
/// f32 Newton-Hermite form.
pub type NewtonHermiteForm32 = classical::NewtonHermiteForm<f32>;
/// f64 Lagrange interpolant.
pub type LagrangeInterpolant64 = classical::LagrangeInterpolant<f64>;
/// f32 Lagrange interpolant.
pub type LagrangeInterpolant32 = classical::LagrangeInterpolant<f32>;
