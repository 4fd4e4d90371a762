//! The constrained least-squares operator for Hermite data.
//!
//! Given derivative samples of orders 0..=k on the reordered equispaced
//! grid, the fitted polynomial of degree r_tilde minimizes the squared
//! residual over all grid rows subject to exact interpolation of the rows at
//! the mock-Chebyshev subset. The minimizer is the stationary point of the
//! Lagrangian, computed from one symmetric indefinite KKT system
//!
//! ```text
//!   [ 2 L^T L   Xi^T ] [ c  ]   [ 2 L^T b ]
//!   [   Xi       0   ] [ mu ] = [    d    ]
//! ```
//!
//! where L stacks the basis derivative rows at every node (mock rows first,
//! so Xi is the top block of L), b stacks the samples in the same row order,
//! and d is the mock-node prefix of b.

use crate::basis::{
    basis_grid_sup, basis_l1_norm_max, eval_basis_derivatives, eval_series, GradedBasis,
};
use crate::linalg::{
    inverse, numerical_rank, one_norm_condition, solve, solve_equilibrated, DenseMatrix,
    LinAlgError, PivotedLu, DEFAULT_RANK_TOL,
};
use crate::nodes::{select_with_degrees, DegreeParams, NodeError, ReorderedGrid};
use crate::quad::polynomial_abs_l1;
use crate::real::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Fixed seed for the random candidates of [`empirical_operator_norm`]; the
/// estimate is reproducible run to run.
const EMPIRICAL_NORM_SEED: u64 = 0x6d6f_636b_6368_6562;

/// Errors from sample validation, assembly, and fitting.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("basis degree {basis_degree} does not match the fit degree {expected}")]
    DegreeMismatch { basis_degree: usize, expected: usize },
    #[error("sample shape mismatch: {context}")]
    ShapeMismatch { context: &'static str },
    #[error("non-finite sample at derivative order {order}, node {index}")]
    NonFiniteSample { order: usize, index: usize },
    /// The KKT factorization hit its singularity threshold. The ranks of the
    /// interpolation and constraint blocks localize the failure: full ranks
    /// here mean the system is consistent but too ill-scaled for the chosen
    /// factorization path.
    #[error(
        "kkt system is numerically singular at pivot {pivot_index} \
         (interpolation matrix rank {lambda_rank} of {lambda_cols}, \
         constraint matrix rank {xi_rank} of {xi_rows})"
    )]
    SingularKkt {
        pivot_index: usize,
        lambda_rank: usize,
        lambda_cols: usize,
        xi_rank: usize,
        xi_rows: usize,
    },
    #[error(transparent)]
    Node(#[from] NodeError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Derivative samples of orders 0..=k at every node of a reordered grid.
#[derive(Debug, Clone)]
pub struct HermiteSamples<T> {
    params: DegreeParams,
    grid: ReorderedGrid<T>,
    /// values[l][i] is the order-l sample at reordered node i.
    values: Vec<Vec<T>>,
}

impl<T: Real> HermiteSamples<T> {
    /// Samples `f(order, x)` at every node for orders 0..=k.
    pub fn from_function(
        params: DegreeParams,
        grid: &ReorderedGrid<T>,
        mut f: impl FnMut(usize, T) -> T,
    ) -> Result<Self, OperatorError> {
        let values = (0..=params.k)
            .map(|l| grid.nodes().iter().map(|&x| f(l, x)).collect())
            .collect();
        Self::from_values(params, grid, values)
    }

    /// Wraps explicit per-order sample vectors, validating shape and
    /// finiteness. `values[l][i]` must be the order-l sample at reordered
    /// node i.
    pub fn from_values(
        params: DegreeParams,
        grid: &ReorderedGrid<T>,
        values: Vec<Vec<T>>,
    ) -> Result<Self, OperatorError> {
        if grid.len() != params.n + 1 || grid.mock_count() != params.m + 1 {
            return Err(OperatorError::ShapeMismatch {
                context: "grid layout does not match the degree parameters",
            });
        }
        if values.len() != params.k + 1 {
            return Err(OperatorError::ShapeMismatch {
                context: "one sample vector per derivative order 0..=k is required",
            });
        }
        for (order, row) in values.iter().enumerate() {
            if row.len() != params.n + 1 {
                return Err(OperatorError::ShapeMismatch {
                    context: "each sample vector needs one entry per grid node",
                });
            }
            for (index, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(OperatorError::NonFiniteSample { order, index });
                }
            }
        }
        Ok(HermiteSamples {
            params,
            grid: grid.clone(),
            values,
        })
    }

    /// All-zero samples; used to assemble a data-independent system.
    pub fn zero(params: DegreeParams, grid: &ReorderedGrid<T>) -> Self {
        HermiteSamples {
            params,
            grid: grid.clone(),
            values: vec![vec![T::zero(); params.n + 1]; params.k + 1],
        }
    }

    pub fn params(&self) -> &DegreeParams {
        &self.params
    }

    pub fn grid(&self) -> &ReorderedGrid<T> {
        &self.grid
    }

    /// The order-l samples in reordered node order.
    pub fn values(&self, order: usize) -> &[T] {
        &self.values[order]
    }

    /// The stacked data vector b of length n_tilde + 1, in the row order of
    /// the interpolation matrix: every derivative order at the mock nodes,
    /// then every derivative order at the regression nodes.
    pub fn data_vector(&self) -> Vec<T> {
        let mock = self.params.m + 1;
        let mut b = Vec::with_capacity(self.params.n_tilde + 1);
        for row in &self.values {
            b.extend_from_slice(&row[..mock]);
        }
        for row in &self.values {
            b.extend_from_slice(&row[mock..]);
        }
        b
    }

    /// The constraint data d: the first m_star + 1 entries of the data
    /// vector, covering every derivative order at the mock nodes.
    pub fn constraint_vector(&self) -> Vec<T> {
        let mut d = self.data_vector();
        d.truncate(self.params.m_star + 1);
        d
    }
}

/// The assembled saddle-point system.
///
/// Fields are public so that callers can inspect or build the blocks
/// directly; [`assemble`] guarantees `xi` equals the top rows of `lambda`
/// bitwise and `kkt` is exactly symmetric.
#[derive(Debug, Clone)]
pub struct KktSystem<T> {
    /// Interpolation matrix, (n_tilde + 1) x (r_tilde + 1).
    pub lambda: DenseMatrix<T>,
    /// Constraint block: the top m_star + 1 rows of `lambda`.
    pub xi: DenseMatrix<T>,
    /// Normal-equation block 2 lambda^T lambda, exactly symmetric.
    pub delta: DenseMatrix<T>,
    /// The full KKT matrix of order r_tilde + m_star + 2.
    pub kkt: DenseMatrix<T>,
    /// Right-hand side [2 lambda^T b; d].
    pub rhs: Vec<T>,
    /// The reordered grid nodes the rows were evaluated at.
    pub nodes: Vec<T>,
    /// Highest derivative order of the data.
    pub k: usize,
}

/// Assembles the KKT system for the given samples in the given basis. The
/// basis degree must equal the fit degree r_tilde.
pub fn assemble<T: Real>(
    samples: &HermiteSamples<T>,
    basis: &GradedBasis,
) -> Result<KktSystem<T>, OperatorError> {
    let params = *samples.params();
    if basis.degree != params.r_tilde {
        return Err(OperatorError::DegreeMismatch {
            basis_degree: basis.degree,
            expected: params.r_tilde,
        });
    }
    let k = params.k;
    let width = params.r_tilde + 1;
    let n_rows = params.n_tilde + 1;
    let m_rows = params.m_star + 1;
    let mock = params.m + 1;
    let reg = params.n + 1 - mock;
    let nodes = samples.grid().nodes().to_vec();
    let table = eval_basis_derivatives(basis, &nodes, k);

    let mut lambda_data = vec![T::zero(); n_rows * width];
    for l in 0..=k {
        for i in 0..mock {
            let row = l * mock + i;
            lambda_data[row * width..(row + 1) * width].copy_from_slice(table.row(l, i));
        }
        for i in mock..(params.n + 1) {
            let row = m_rows + l * reg + (i - mock);
            lambda_data[row * width..(row + 1) * width].copy_from_slice(table.row(l, i));
        }
    }
    let lambda = DenseMatrix::from_vec(n_rows, width, lambda_data)?;
    let xi = DenseMatrix::from_fn(m_rows, width, |i, j| lambda.get(i, j))?;

    // Gram accumulation over the upper triangle, mirrored afterwards, so
    // delta is symmetric to the last bit.
    let two = T::from_const(2.0);
    let mut delta = DenseMatrix::zeros(width, width);
    for t in 0..n_rows {
        let row = lambda.row(t);
        for i in 0..width {
            let ri = row[i];
            if ri == T::zero() {
                continue;
            }
            for j in i..width {
                let v = delta.get(i, j) + ri * row[j];
                delta.set(i, j, v);
            }
        }
    }
    for i in 0..width {
        for j in i..width {
            let v = two * delta.get(i, j);
            delta.set(i, j, v);
            delta.set(j, i, v);
        }
    }

    let order = width + m_rows;
    let mut kkt = DenseMatrix::zeros(order, order);
    for i in 0..width {
        for j in 0..width {
            kkt.set(i, j, delta.get(i, j));
        }
    }
    for a in 0..m_rows {
        for j in 0..width {
            let v = xi.get(a, j);
            kkt.set(j, width + a, v);
            kkt.set(width + a, j, v);
        }
    }

    let b = samples.data_vector();
    let mut rhs = Vec::with_capacity(order);
    for v in lambda.matvec_transposed(&b)? {
        rhs.push(two * v);
    }
    rhs.extend_from_slice(&b[..m_rows]);

    Ok(KktSystem {
        lambda,
        xi,
        delta,
        kkt,
        rhs,
        nodes,
        k,
    })
}

/// Fit controls.
#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    /// Solve through the exactly scaled factorization (default). Disabling
    /// it factors the raw KKT matrix, which rejects large Hermite systems
    /// as singular because their natural row scales differ by many orders
    /// of magnitude.
    pub equilibrate: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { equilibrate: true }
    }
}

/// Conditioning and residual diagnostics of one fit.
#[derive(Debug, Clone, Copy)]
pub struct FitDiagnostics<T> {
    /// One-norm condition number of the KKT matrix.
    pub kkt_condition: T,
    /// Relative one-norm residual of the KKT solve.
    pub solve_residual: T,
    /// Sup-norm violation of the interpolation constraints.
    pub constraint_residual: T,
    /// Acceptance threshold 1e-6 * (1 + max |d|).
    pub constraint_tolerance: T,
    /// Whether the constraint residual met the threshold. A fit that missed
    /// it is still returned; the flag carries the warning.
    pub constraint_satisfied: bool,
}

/// A fitted polynomial with its Lagrange multipliers and diagnostics.
#[derive(Debug, Clone)]
pub struct Approximant<T> {
    params: DegreeParams,
    basis: GradedBasis,
    coefficients: Vec<T>,
    multipliers: Vec<T>,
    diagnostics: FitDiagnostics<T>,
}

impl<T: Real> Approximant<T> {
    pub fn params(&self) -> &DegreeParams {
        &self.params
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    /// Basis coefficients of the fitted polynomial, length r_tilde + 1.
    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// Lagrange multipliers of the interpolation constraints.
    pub fn multipliers(&self) -> &[T] {
        &self.multipliers
    }

    pub fn diagnostics(&self) -> &FitDiagnostics<T> {
        &self.diagnostics
    }

    /// Evaluates the ell-th derivative of the fitted polynomial. Orders
    /// beyond the data order k are permitted: they differentiate the fitted
    /// polynomial past anything the samples controlled, so they carry no
    /// approximation guarantee.
    pub fn evaluate(&self, x: T, ell: usize) -> T {
        let table = eval_basis_derivatives(&self.basis, &[x], ell);
        dot(table.row(ell, 0), &self.coefficients)
    }

    /// Evaluates the ell-th derivative at many points with one basis table.
    pub fn evaluate_many(&self, xs: &[T], ell: usize) -> Vec<T> {
        let table = eval_basis_derivatives(&self.basis, xs, ell);
        (0..xs.len())
            .map(|i| dot(table.row(ell, i), &self.coefficients))
            .collect()
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

fn singular_kkt<T: Real>(system: &KktSystem<T>, pivot_index: usize) -> OperatorError {
    let tol = T::from_const(DEFAULT_RANK_TOL);
    OperatorError::SingularKkt {
        pivot_index,
        lambda_rank: numerical_rank(&system.lambda, tol),
        lambda_cols: system.lambda.cols(),
        xi_rank: numerical_rank(&system.xi, tol),
        xi_rows: system.xi.rows(),
    }
}

/// Fits with default options.
pub fn fit<T: Real>(
    samples: &HermiteSamples<T>,
    basis: &GradedBasis,
) -> Result<Approximant<T>, OperatorError> {
    fit_with(samples, basis, FitOptions::default())
}

/// Assembles and solves the KKT system, returning the fitted polynomial.
///
/// A factorization failure is reported as [`OperatorError::SingularKkt`]
/// with the ranks of both blocks. A solved fit whose constraint residual
/// exceeds the tolerance is returned with `constraint_satisfied == false`
/// rather than suppressed.
pub fn fit_with<T: Real>(
    samples: &HermiteSamples<T>,
    basis: &GradedBasis,
    options: FitOptions,
) -> Result<Approximant<T>, OperatorError> {
    let system = assemble(samples, basis)?;
    let solved = if options.equilibrate {
        solve_equilibrated(&system.kkt, &system.rhs)
    } else {
        solve(&system.kkt, &system.rhs)
    };
    let solution = match solved {
        Ok(s) => s,
        Err(LinAlgError::Singular { pivot_index }) => {
            return Err(singular_kkt(&system, pivot_index))
        }
        Err(e) => return Err(e.into()),
    };
    let width = basis.degree + 1;
    let coefficients = solution.x[..width].to_vec();
    let multipliers = solution.x[width..].to_vec();

    let fitted = system.xi.matvec(&coefficients)?;
    let d = &system.rhs[width..];
    let mut constraint_residual = T::zero();
    let mut d_sup = T::zero();
    for (&got, &want) in fitted.iter().zip(d) {
        constraint_residual = constraint_residual.max((got - want).abs());
        d_sup = d_sup.max(want.abs());
    }
    let constraint_tolerance = T::from_const(1.0e-6) * (T::one() + d_sup);
    let kkt_condition = match one_norm_condition(&system.kkt) {
        Ok(c) => c,
        Err(LinAlgError::Singular { pivot_index }) => {
            return Err(singular_kkt(&system, pivot_index))
        }
        Err(e) => return Err(e.into()),
    };

    Ok(Approximant {
        params: *samples.params(),
        basis: *basis,
        coefficients,
        multipliers,
        diagnostics: FitDiagnostics {
            kkt_condition,
            solve_residual: solution.rel_residual,
            constraint_residual,
            constraint_tolerance,
            constraint_satisfied: constraint_residual <= constraint_tolerance,
        },
    })
}

/// The a-priori operator-norm bound and its three factors.
#[derive(Debug, Clone, Copy)]
pub struct NormBound<T> {
    /// c1 * ||K^-1||_1 * (2 c2 (r_tilde + 1) + 1).
    pub bound: T,
    /// Largest integral of |u_j| over [-1, 1].
    pub c1: T,
    /// Largest |u_j^(l)(x_i)| over the grid and orders 0..=k.
    pub c2: T,
    /// One-norm of the explicit KKT inverse.
    pub kkt_inverse_norm: T,
}

/// Computes the data-independent norm bound of the fitting operator from an
/// assembled system.
pub fn norm_bound<T: Real>(
    system: &KktSystem<T>,
    basis: &GradedBasis,
) -> Result<NormBound<T>, OperatorError> {
    let c1 = basis_l1_norm_max(basis);
    let c2 = basis_grid_sup(basis, &system.nodes, system.k);
    let inv = match inverse(&system.kkt) {
        Ok(m) => m,
        Err(LinAlgError::Singular { pivot_index }) => {
            return Err(singular_kkt(system, pivot_index))
        }
        Err(e) => return Err(e.into()),
    };
    let kkt_inverse_norm = inv.one_norm();
    let width = T::from_index(basis.degree + 1);
    let two = T::from_const(2.0);
    let bound = c1 * kkt_inverse_norm * (two * c2 * width + T::one());
    Ok(NormBound {
        bound,
        c1,
        c2,
        kkt_inverse_norm,
    })
}

/// Empirical operator norm: the largest L1 norm of the fitted polynomial
/// over data vectors of unit 1-norm.
///
/// The data-to-polynomial map is linear, so the supremum over the 1-norm
/// ball is attained at a coordinate vector; all n_tilde + 1 of them are
/// tried, plus `trials` random nonnegative unit-1-norm combinations as a
/// cross-check (they can never exceed the vertex maximum).
pub fn empirical_operator_norm<T: Real>(
    params: &DegreeParams,
    basis: &GradedBasis,
    trials: usize,
) -> Result<T, OperatorError> {
    let (params, grid) = select_with_degrees::<T>(params.n, params.k, params.m, params.p)?;
    let samples = HermiteSamples::zero(params, &grid);
    let system = assemble(&samples, basis)?;
    let lu = match PivotedLu::factor_equilibrated(&system.kkt) {
        Ok(lu) => lu,
        Err(LinAlgError::Singular { pivot_index }) => {
            return Err(singular_kkt(&system, pivot_index))
        }
        Err(e) => return Err(e.into()),
    };

    let n_rows = params.n_tilde + 1;
    let m_rows = params.m_star + 1;
    let width = basis.degree + 1;
    let two = T::from_const(2.0);
    let kind = basis.kind;
    let mut best = T::zero();
    let candidate = |b: &[T]| -> Result<T, OperatorError> {
        let mut rhs = Vec::with_capacity(width + m_rows);
        for v in system.lambda.matvec_transposed(b)? {
            rhs.push(two * v);
        }
        rhs.extend_from_slice(&b[..m_rows]);
        let x = lu.solve(&rhs)?;
        let coeffs = &x[..width];
        Ok(polynomial_abs_l1(
            &|t| eval_series(kind, coeffs, t),
            basis.degree,
        ))
    };

    let mut b = vec![T::zero(); n_rows];
    for t in 0..n_rows {
        b[t] = T::one();
        best = best.max(candidate(&b)?);
        b[t] = T::zero();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EMPIRICAL_NORM_SEED);
    for _ in 0..trials {
        let mut sum = T::zero();
        for v in b.iter_mut() {
            *v = T::from_const(rng.gen_range(0.0..1.0));
            sum += *v;
        }
        if sum > T::zero() {
            for v in b.iter_mut() {
                *v /= sum;
            }
        }
        best = best.max(candidate(&b)?);
    }
    Ok(best)
}
