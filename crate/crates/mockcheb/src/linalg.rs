//! Dense real linear algebra at desk scale.
//!
//! Everything here targets the saddle-point systems of this crate: a few
//! hundred rows square, a few thousand rows rectangular. Factorizations are
//! O(N^3) without blocking, which is cheap at that size and keeps the
//! observable semantics simple: row-pivoted LU with an explicit singularity
//! threshold, exact power-of-two equilibration, explicit inverse for the
//! condition number, and Householder QR with column pivoting for rank.

use crate::real::Real;
use thiserror::Error;

/// Default relative tolerance for [`numerical_rank`]: separates genuine rank
/// deficiency from ill conditioning at this crate's problem scales.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Errors from construction and factorization.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: &'static str },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    /// The factorization met a pivot below its singularity threshold at the
    /// given elimination step.
    #[error("matrix is numerically singular at pivot {pivot_index}")]
    Singular { pivot_index: usize },
}

/// Row-major dense matrix with all-finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from row-major data, validating length and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                context: "data length does not equal rows * cols",
            });
        }
        for (idx, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(LinAlgError::NonFiniteEntry {
                    row: idx / cols.max(1),
                    col: idx % cols.max(1),
                });
            }
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds entrywise from a function, validating finiteness.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Result<Self, LinAlgError> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Contiguous view of row i.
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Matrix-vector product A x.
    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>, LinAlgError> {
        if x.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                context: "matvec operand length does not equal cols",
            });
        }
        let mut out = vec![T::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = T::zero();
            for (a, &b) in self.row(i).iter().zip(x) {
                acc += *a * b;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Transposed product A^T x without forming the transpose.
    pub fn matvec_transposed(&self, x: &[T]) -> Result<Vec<T>, LinAlgError> {
        if x.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                context: "transposed matvec operand length does not equal rows",
            });
        }
        let mut out = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * xi;
            }
        }
        Ok(out)
    }

    /// Matrix product A B.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch {
                context: "matmul inner dimensions differ",
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == T::zero() {
                    continue;
                }
                let row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in row.iter_mut().zip(rhs.row(k)) {
                    *o += aik * b;
                }
            }
        }
        Ok(out)
    }

    /// One-norm: the maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        let mut sums = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            for (s, &v) in sums.iter_mut().zip(self.row(i)) {
                *s += v.abs();
            }
        }
        sums.into_iter().fold(T::zero(), |a, b| a.max(b))
    }
}

/// A solved linear system: the solution and its relative one-norm residual
/// ||A x - b||_1 / ||b||_1 (absolute residual when b = 0).
#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub rel_residual: T,
}

/// Exact power-of-two scale factor that brings `max_abs` into [1, 2).
fn pow2_inverse_scale<T: Real>(max_abs: T) -> T {
    if max_abs == T::zero() {
        return T::one();
    }
    let e = max_abs.log2().floor();
    // powi of an exact 2 only multiplies exact powers of two, so the scale
    // introduces no rounding anywhere it is applied.
    T::from_const(2.0).powi(-e.to_i32().expect("finite exponent"))
}

/// Row-pivoted LU factorization with optional exact equilibration.
///
/// The singularity test rejects a pivot whose magnitude falls below
/// 1e3 * epsilon * ||M||_1, where M is the matrix actually factored (the
/// scaled one on the equilibrated path). Solutions are always returned in
/// the original, unscaled variables.
#[derive(Debug, Clone)]
pub struct PivotedLu<T> {
    n: usize,
    lu: Vec<T>,
    pivots: Vec<usize>,
    scales: Option<(Vec<T>, Vec<T>)>,
}

impl<T: Real> PivotedLu<T> {
    /// Factors the matrix as given.
    pub fn factor(a: &DenseMatrix<T>) -> Result<Self, LinAlgError> {
        Self::factor_scaled(a, None)
    }

    /// Equilibrates by exact power-of-two row scaling then column scaling
    /// (each bringing the max magnitude into [1, 2)) and factors the scaled
    /// matrix. Scaling is exact in binary floating point, so the solved
    /// system is the original one in exact arithmetic.
    pub fn factor_equilibrated(a: &DenseMatrix<T>) -> Result<Self, LinAlgError> {
        if a.rows() != a.cols() {
            return Err(LinAlgError::DimensionMismatch {
                context: "lu factorization needs a square matrix",
            });
        }
        let n = a.rows();
        let mut scaled = a.clone();
        let mut row_scale = vec![T::one(); n];
        for i in 0..n {
            let max_abs = scaled.row(i).iter().fold(T::zero(), |m, v| m.max(v.abs()));
            let s = pow2_inverse_scale(max_abs);
            row_scale[i] = s;
            for j in 0..n {
                let v = scaled.get(i, j) * s;
                scaled.set(i, j, v);
            }
        }
        let mut col_scale = vec![T::one(); n];
        for j in 0..n {
            let mut max_abs = T::zero();
            for i in 0..n {
                max_abs = max_abs.max(scaled.get(i, j).abs());
            }
            let s = pow2_inverse_scale(max_abs);
            col_scale[j] = s;
            for i in 0..n {
                let v = scaled.get(i, j) * s;
                scaled.set(i, j, v);
            }
        }
        Self::factor_scaled(&scaled, Some((row_scale, col_scale)))
    }

    fn factor_scaled(
        a: &DenseMatrix<T>,
        scales: Option<(Vec<T>, Vec<T>)>,
    ) -> Result<Self, LinAlgError> {
        if a.rows() != a.cols() {
            return Err(LinAlgError::DimensionMismatch {
                context: "lu factorization needs a square matrix",
            });
        }
        let n = a.rows();
        let threshold = T::from_const(1.0e3) * T::epsilon() * a.one_norm();
        let mut lu = a.data.clone();
        let mut pivots = vec![0usize; n];
        let mut pivot_row = vec![T::zero(); n];
        for col in 0..n {
            let mut piv = col;
            let mut piv_mag = lu[col * n + col].abs();
            for r in (col + 1)..n {
                let mag = lu[r * n + col].abs();
                if mag > piv_mag {
                    piv = r;
                    piv_mag = mag;
                }
            }
            if piv_mag < threshold {
                return Err(LinAlgError::Singular { pivot_index: col });
            }
            pivots[col] = piv;
            if piv != col {
                for j in 0..n {
                    lu.swap(col * n + j, piv * n + j);
                }
            }
            let d = lu[col * n + col];
            pivot_row[col..n].copy_from_slice(&lu[col * n + col..(col + 1) * n]);
            for r in (col + 1)..n {
                let factor = lu[r * n + col] / d;
                lu[r * n + col] = factor;
                for j in (col + 1)..n {
                    lu[r * n + j] = lu[r * n + j] - factor * pivot_row[j];
                }
            }
        }
        Ok(PivotedLu {
            n,
            lu,
            pivots,
            scales,
        })
    }

    /// Solves for one right-hand side in the original variables.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, LinAlgError> {
        if b.len() != self.n {
            return Err(LinAlgError::DimensionMismatch {
                context: "right-hand side length does not equal matrix order",
            });
        }
        let n = self.n;
        let mut y: Vec<T> = match &self.scales {
            Some((row_scale, _)) => b.iter().zip(row_scale).map(|(&v, &s)| v * s).collect(),
            None => b.to_vec(),
        };
        for col in 0..n {
            y.swap(col, self.pivots[col]);
        }
        for i in 1..n {
            let mut acc = y[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * y[j];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * y[j];
            }
            y[i] = acc / self.lu[i * n + i];
        }
        if let Some((_, col_scale)) = &self.scales {
            for (v, &s) in y.iter_mut().zip(col_scale) {
                *v *= s;
            }
        }
        Ok(y)
    }
}

fn solution_with_residual<T: Real>(
    a: &DenseMatrix<T>,
    b: &[T],
    x: Vec<T>,
) -> Result<Solution<T>, LinAlgError> {
    let ax = a.matvec(&x)?;
    let mut err = T::zero();
    let mut b_norm = T::zero();
    for (&axi, &bi) in ax.iter().zip(b) {
        err += (axi - bi).abs();
        b_norm += bi.abs();
    }
    let rel_residual = if b_norm > T::zero() { err / b_norm } else { err };
    Ok(Solution { x, rel_residual })
}

/// Solves A x = b by row-pivoted LU on the matrix exactly as given.
pub fn solve<T: Real>(a: &DenseMatrix<T>, b: &[T]) -> Result<Solution<T>, LinAlgError> {
    let x = PivotedLu::factor(a)?.solve(b)?;
    solution_with_residual(a, b, x)
}

/// Solves A x = b through the equilibrated factorization. Same system, same
/// answer in exact arithmetic, far smaller pivot-growth on badly scaled
/// matrices.
pub fn solve_equilibrated<T: Real>(
    a: &DenseMatrix<T>,
    b: &[T],
) -> Result<Solution<T>, LinAlgError> {
    let x = PivotedLu::factor_equilibrated(a)?.solve(b)?;
    solution_with_residual(a, b, x)
}

/// Explicit inverse via the equilibrated factorization (the result is still
/// the inverse of the unscaled input; power-of-two scaling is exact).
pub fn inverse<T: Real>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>, LinAlgError> {
    let n = a.rows();
    let lu = PivotedLu::factor_equilibrated(a)?;
    let mut data = vec![T::zero(); n * n];
    let mut e = vec![T::zero(); n];
    for j in 0..n {
        e[j] = T::one();
        let col = lu.solve(&e)?;
        e[j] = T::zero();
        for i in 0..n {
            data[i * n + j] = col[i];
        }
    }
    DenseMatrix::from_vec(n, n, data)
}

/// One-norm condition number ||A||_1 ||A^-1||_1 via the explicit inverse.
pub fn one_norm_condition<T: Real>(a: &DenseMatrix<T>) -> Result<T, LinAlgError> {
    Ok(a.one_norm() * inverse(a)?.one_norm())
}

/// Numerical rank: the count of R-diagonal magnitudes of the column-pivoted
/// Householder QR factorization that reach `tol` relative to the largest
/// one. The zero matrix has rank 0.
pub fn numerical_rank<T: Real>(a: &DenseMatrix<T>, tol: T) -> usize {
    assert!(
        tol > T::zero() && tol < T::one(),
        "rank tolerance must lie strictly between 0 and 1"
    );
    let m = a.rows();
    let n = a.cols();
    let steps = m.min(n);
    let mut q = a.data.clone();
    let mut diag = Vec::with_capacity(steps);
    let mut v = vec![T::zero(); m];
    for s in 0..steps {
        // Column pivot by the largest remaining column norm, recomputed from
        // scratch each step so no downdating drift accumulates.
        let mut best_j = s;
        let mut best_norm2 = T::zero();
        for j in s..n {
            let mut norm2 = T::zero();
            for i in s..m {
                let x = q[i * n + j];
                norm2 += x * x;
            }
            if norm2 > best_norm2 {
                best_norm2 = norm2;
                best_j = j;
            }
        }
        if best_norm2 == T::zero() {
            break;
        }
        if best_j != s {
            for i in 0..m {
                q.swap(i * n + s, i * n + best_j);
            }
        }
        let norm = best_norm2.sqrt();
        let x_s = q[s * n + s];
        let alpha = if x_s >= T::zero() { -norm } else { norm };
        for i in s..m {
            v[i] = q[i * n + s];
        }
        v[s] -= alpha;
        let mut beta = T::zero();
        for &vi in &v[s..m] {
            beta += vi * vi;
        }
        if beta == T::zero() {
            diag.push(alpha.abs());
            continue;
        }
        for j in s..n {
            let mut dot = T::zero();
            for i in s..m {
                dot += v[i] * q[i * n + j];
            }
            let c = T::from_const(2.0) * dot / beta;
            for i in s..m {
                q[i * n + j] = q[i * n + j] - c * v[i];
            }
        }
        diag.push(q[s * n + s].abs());
    }
    let max_diag = diag.iter().fold(T::zero(), |a, b| a.max(*b));
    if max_diag == T::zero() {
        return 0;
    }
    diag.iter().filter(|&&d| d >= tol * max_diag).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rank_tol() -> f64 {
        DEFAULT_RANK_TOL
    }

    #[test]
    fn construction_validates_shape_and_finiteness() {
        assert!(DenseMatrix::from_vec(2, 2, vec![1.0f64; 4]).is_ok());
        assert_eq!(
            DenseMatrix::from_vec(2, 2, vec![1.0f64; 3]).unwrap_err(),
            LinAlgError::DimensionMismatch {
                context: "data length does not equal rows * cols"
            }
        );
        assert_eq!(
            DenseMatrix::from_vec(2, 2, vec![1.0, f64::NAN, 0.0, 1.0]).unwrap_err(),
            LinAlgError::NonFiniteEntry { row: 0, col: 1 }
        );
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let a = DenseMatrix::<f64>::identity(4);
        let b = [3.0, -1.0, 0.5, 2.0];
        let sol = solve(&a, &b).unwrap();
        assert_eq!(sol.x, b.to_vec());
        assert_eq!(sol.rel_residual, 0.0);
    }

    #[test]
    fn solve_diagonal_system() {
        let a = DenseMatrix::from_vec(2, 2, vec![2.0f64, 0.0, 0.0, 4.0]).unwrap();
        let sol = solve(&a, &[2.0, 8.0]).unwrap();
        assert_eq!(sol.x, vec![1.0, 2.0]);
    }

    #[test]
    fn solve_recovers_known_vector_on_well_conditioned_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 50;
        // Diagonally dominant, hence condition far below 1e6.
        let a = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                10.0
            } else {
                rng.gen_range(-1.0..1.0) / n as f64
            }
        })
        .unwrap();
        let x_true = vec![1.0f64; n];
        let b = a.matvec(&x_true).unwrap();
        let sol = solve(&a, &b).unwrap();
        for v in &sol.x {
            assert_relative_eq!(*v, 1.0, max_relative = 1e-10);
        }
        assert!(sol.rel_residual < 1e-12);
    }

    #[test]
    fn singular_matrix_reports_pivot_index() {
        let a = DenseMatrix::from_vec(2, 2, vec![1.0f64, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            solve(&a, &[1.0, 2.0]).unwrap_err(),
            LinAlgError::Singular { pivot_index: 1 }
        );
    }

    #[test]
    fn raw_solve_rejects_badly_scaled_system_equilibrated_accepts() {
        // The raw threshold 1e3 * eps * ||A||_1 is 2.2e187 here, far above
        // the small pivot; the equilibrated path scales both rows into
        // [1, 2) and solves exactly.
        let a = DenseMatrix::from_vec(2, 2, vec![1.0e-200f64, 0.0, 0.0, 1.0e200]).unwrap();
        let b = [3.0e-200, 7.0e200];
        assert!(matches!(
            solve(&a, &b),
            Err(LinAlgError::Singular { pivot_index: 0 })
        ));
        let sol = solve_equilibrated(&a, &b).unwrap();
        assert_relative_eq!(sol.x[0], 3.0, max_relative = 1e-15);
        assert_relative_eq!(sol.x[1], 7.0, max_relative = 1e-15);
    }

    #[test]
    fn one_norm_is_max_column_sum() {
        let a = DenseMatrix::from_vec(2, 2, vec![1.0f64, -2.0, 3.0, 4.0]).unwrap();
        assert_eq!(a.one_norm(), 6.0);
    }

    #[test]
    fn inverse_of_two_by_two() {
        let a = DenseMatrix::from_vec(2, 2, vec![4.0f64, 7.0, 2.0, 6.0]).unwrap();
        let inv = inverse(&a).unwrap();
        let expected = [0.6, -0.7, -0.2, 0.4];
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(inv.get(i, j), expected[i * 2 + j], max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 30;
        let a = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                5.0
            } else {
                rng.gen_range(-1.0..1.0) / n as f64
            }
        })
        .unwrap();
        let prod = inverse(&a).unwrap().matmul(&a).unwrap();
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (prod.get(i, j) - expected).abs() <= 1e-8,
                    "entry ({i},{j}) = {}",
                    prod.get(i, j)
                );
            }
        }
    }

    #[test]
    fn condition_of_identity_and_diagonal() {
        let cond = one_norm_condition(&DenseMatrix::<f64>::identity(5)).unwrap();
        assert_eq!(cond, 1.0);
        let a = DenseMatrix::from_vec(2, 2, vec![1.0f64, 0.0, 0.0, 1.0e6]).unwrap();
        assert_relative_eq!(one_norm_condition(&a).unwrap(), 1.0e6, max_relative = 1e-12);
    }

    fn binomial(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }

    #[test]
    fn hilbert_condition_matches_exact_rational_inverse() {
        // The 6x6 Hilbert matrix has an integer inverse with the closed
        // binomial form; its one-norm condition is about 2.9e7.
        let n = 6usize;
        let h = DenseMatrix::from_fn(n, n, |i, j| 1.0f64 / (i + j + 1) as f64).unwrap();
        let mut inv_norm_exact = 0.0f64;
        for j in 1..=n as u64 {
            let mut col_sum = 0.0f64;
            for i in 1..=n as u64 {
                let nn = n as u64;
                let entry = (i + j - 1) as f64
                    * binomial(nn + i - 1, nn - j) as f64
                    * binomial(nn + j - 1, nn - i) as f64
                    * binomial(i + j - 2, i - 1).pow(2) as f64;
                col_sum += entry;
            }
            inv_norm_exact = inv_norm_exact.max(col_sum);
        }
        let cond_exact = h.one_norm() * inv_norm_exact;
        assert!(cond_exact > 2.0e7 && cond_exact < 4.0e7, "{cond_exact}");
        let cond = one_norm_condition(&h).unwrap();
        assert_relative_eq!(cond, cond_exact, max_relative = 1e-6);
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let z = DenseMatrix::<f64>::zeros(4, 3);
        assert_eq!(numerical_rank(&z, rank_tol()), 0);
        let id = DenseMatrix::<f64>::identity(7);
        assert_eq!(numerical_rank(&id, rank_tol()), 7);
    }

    #[test]
    fn rank_of_wide_basis_sample_is_row_count() {
        // {u_0..u_5} evaluated at 4 distinct points: full row rank 4.
        let pts = [-0.8f64, -0.1, 0.3, 0.9];
        let basis = crate::basis::GradedBasis::chebyshev(5);
        let table = crate::basis::eval_basis_derivatives(&basis, &pts, 0);
        let a = DenseMatrix::from_fn(4, 6, |i, j| table.value(0, i, j)).unwrap();
        assert_eq!(numerical_rank(&a, rank_tol()), 4);
    }

    #[test]
    fn rank_detects_deficiency() {
        // Outer product has rank 1; appending a scaled copy keeps it 1.
        let u = [1.0f64, -2.0, 0.5, 3.0, 1.5, -0.25, 2.0, 0.75];
        let a = DenseMatrix::from_fn(8, 8, |i, j| u[i] * u[j]).unwrap();
        assert_eq!(numerical_rank(&a, rank_tol()), 1);
        let b = DenseMatrix::from_vec(2, 2, vec![1.0f64, 0.0, 0.0, 0.5e-10]).unwrap();
        assert_eq!(numerical_rank(&b, 1e-10), 1);
        assert_eq!(numerical_rank(&b, 1e-11), 2);
    }

    #[test]
    #[should_panic(expected = "rank tolerance")]
    fn rank_rejects_out_of_range_tolerance() {
        numerical_rank(&DenseMatrix::<f64>::identity(2), 1.5);
    }

    #[test]
    fn one_norm_is_submultiplicative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let a = DenseMatrix::from_fn(6, 6, |_, _| rng.gen_range(-2.0..2.0)).unwrap();
            let b = DenseMatrix::from_fn(6, 6, |_, _| rng.gen_range(-2.0..2.0)).unwrap();
            let ab = a.matmul(&b).unwrap();
            assert!(ab.one_norm() <= a.one_norm() * b.one_norm() * (1.0 + 1e-14));
        }
    }

    #[test]
    fn residual_is_reported_against_the_original_system() {
        let a = DenseMatrix::from_vec(2, 2, vec![1.0e-3f64, 0.0, 0.0, 1.0e3]).unwrap();
        let sol = solve_equilibrated(&a, &[2.0e-3, 5.0e3]).unwrap();
        assert!(sol.rel_residual <= 1e-15);
        assert_relative_eq!(sol.x[0], 2.0, max_relative = 1e-15);
        assert_relative_eq!(sol.x[1], 5.0, max_relative = 1e-15);
    }

    #[test]
    fn works_in_f32() {
        let a = DenseMatrix::from_vec(2, 2, vec![2.0f32, 1.0, 1.0, 3.0]).unwrap();
        let sol = solve(&a, &[3.0, 4.0]).unwrap();
        assert_relative_eq!(sol.x[0], 1.0, max_relative = 1e-6);
        assert_relative_eq!(sol.x[1], 1.0, max_relative = 1e-6);
    }
}
