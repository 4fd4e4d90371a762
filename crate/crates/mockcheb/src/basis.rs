//! Graded polynomial bases and their derivative evaluation tables.
//!
//! A graded basis has u_j of exact degree j, so any prefix {u_0..u_q} spans
//! the full polynomial space P_q. That is the property the constrained fit
//! needs from its basis; everything else here is evaluation machinery.

use crate::quad;
use crate::real::Real;

/// Basis family. Chebyshev (first kind) is the default everywhere; the
/// monomial family exists behind the same interface for conditioning
/// experiments and is far worse conditioned on [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Chebyshev,
    Monomial,
}

/// A graded basis {u_0, ..., u_degree} on [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: usize,
    pub kind: BasisKind,
}

impl GradedBasis {
    pub fn chebyshev(degree: usize) -> Self {
        GradedBasis {
            degree,
            kind: BasisKind::Chebyshev,
        }
    }

    pub fn monomial(degree: usize) -> Self {
        GradedBasis {
            degree,
            kind: BasisKind::Monomial,
        }
    }
}

/// Values u_j^(l)(x_i) for l = 0..=max_order, every point, and j =
/// 0..=degree, stored contiguously. Evaluation is deterministic: the same
/// basis, points, and order produce bitwise identical tables.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEvalTable<T> {
    max_order: usize,
    point_count: usize,
    width: usize,
    values: Vec<T>,
}

impl<T: Real> BasisEvalTable<T> {
    /// Highest derivative order the table holds.
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Number of evaluation points.
    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// Number of basis functions (degree + 1).
    pub fn width(&self) -> usize {
        self.width
    }

    /// u_j^(order)(points[point]).
    pub fn value(&self, order: usize, point: usize, j: usize) -> T {
        self.values[(order * self.point_count + point) * self.width + j]
    }

    /// The row of all basis values of one derivative order at one point.
    pub fn row(&self, order: usize, point: usize) -> &[T] {
        let start = (order * self.point_count + point) * self.width;
        &self.values[start..start + self.width]
    }
}

/// Fills `out[l * width + j] = u_j^(l)(x)` for l = 0..=k, j = 0..=degree.
///
/// The three-term recurrence is differentiated l times term by term:
/// Chebyshev  u_{j+1}^(l) = 2 (x u_j^(l) + l u_j^(l-1)) - u_{j-1}^(l),
/// monomial   u_{j+1}^(l) = x u_j^(l) + l u_j^(l-1).
/// No finite differencing anywhere.
fn eval_point<T: Real>(kind: BasisKind, degree: usize, k: usize, x: T, out: &mut [T]) {
    let width = degree + 1;
    debug_assert_eq!(out.len(), (k + 1) * width);
    for v in out.iter_mut() {
        *v = T::zero();
    }
    out[0] = T::one();
    if degree == 0 {
        return;
    }
    out[1] = x;
    if k >= 1 {
        out[width + 1] = T::one();
    }
    let two = T::from_const(2.0);
    for j in 1..degree {
        for l in 0..=k {
            let same = out[l * width + j];
            let lower = if l == 0 {
                T::zero()
            } else {
                T::from_index(l) * out[(l - 1) * width + j]
            };
            out[l * width + j + 1] = match kind {
                BasisKind::Chebyshev => two * (x * same + lower) - out[l * width + j - 1],
                BasisKind::Monomial => x * same + lower,
            };
        }
    }
}

/// Evaluates u_j and its derivatives up to order k at every point. An empty
/// point sequence yields an empty table, not an error.
pub fn eval_basis_derivatives<T: Real>(
    basis: &GradedBasis,
    points: &[T],
    k: usize,
) -> BasisEvalTable<T> {
    let width = basis.degree + 1;
    let point_count = points.len();
    let mut values = vec![T::zero(); (k + 1) * point_count * width];
    let mut scratch = vec![T::zero(); (k + 1) * width];
    for (i, &x) in points.iter().enumerate() {
        eval_point(basis.kind, basis.degree, k, x, &mut scratch);
        for l in 0..=k {
            let src = &scratch[l * width..(l + 1) * width];
            let dst = (l * point_count + i) * width;
            values[dst..dst + width].copy_from_slice(src);
        }
    }
    BasisEvalTable {
        max_order: k,
        point_count,
        width,
        values,
    }
}

/// Evaluates the series sum_j coeffs[j] * u_j(x) without building a table:
/// Clenshaw recurrence for Chebyshev, Horner for monomials.
pub(crate) fn eval_series<T: Real>(kind: BasisKind, coeffs: &[T], x: T) -> T {
    match kind {
        BasisKind::Chebyshev => {
            let two_x = T::from_const(2.0) * x;
            let mut b1 = T::zero();
            let mut b2 = T::zero();
            for &c in coeffs.iter().skip(1).rev() {
                let b0 = c + two_x * b1 - b2;
                b2 = b1;
                b1 = b0;
            }
            coeffs[0] + x * b1 - b2
        }
        BasisKind::Monomial => {
            let mut acc = T::zero();
            for &c in coeffs.iter().rev() {
                acc = acc * x + c;
            }
            acc
        }
    }
}

/// Interior sign-change points of u_j on (-1, 1), ascending. Chebyshev
/// zeros are known in closed form; odd monomials change sign at the origin.
fn sign_breakpoints<T: Real>(kind: BasisKind, j: usize) -> Vec<T> {
    match kind {
        BasisKind::Chebyshev => {
            let mut zeros: Vec<T> = (0..j)
                .map(|i| {
                    (T::PI() * (T::from_const(2.0) * T::from_index(i) + T::one())
                        / (T::from_const(2.0) * T::from_index(j)))
                    .cos()
                })
                .collect();
            zeros.reverse();
            zeros
        }
        BasisKind::Monomial => {
            if j % 2 == 1 {
                vec![T::zero()]
            } else {
                Vec::new()
            }
        }
    }
}

/// Direct single-function evaluation used only by the quadrature below;
/// cos(j arccos x) on [-1, 1] for Chebyshev, powers for monomials.
fn eval_single<T: Real>(kind: BasisKind, j: usize, x: T) -> T {
    match kind {
        BasisKind::Chebyshev => {
            let clamped = x.max(-T::one()).min(T::one());
            (T::from_index(j) * clamped.acos()).cos()
        }
        BasisKind::Monomial => x.powi(j as i32),
    }
}

/// L1 norm of u_j on [-1, 1], by composite Simpson with panel doubling on
/// each sign-constant segment to relative tolerance 1e-10 (clamped to the
/// scalar's precision).
pub(crate) fn basis_function_l1_norm<T: Real>(basis: &GradedBasis, j: usize) -> T {
    let rel_tol = quad::clamp_rel_tol::<T>(1e-10);
    let mut breaks = vec![-T::one()];
    breaks.extend(sign_breakpoints::<T>(basis.kind, j));
    breaks.push(T::one());
    let f = |x: T| eval_single(basis.kind, j, x);
    let mut total = T::zero();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            total += quad::simpson_doubling(&f, w[0], w[1], rel_tol).abs();
        }
    }
    total
}

/// The constant C1 = max_j of the L1 norm of u_j over [-1, 1], computed by
/// quadrature over every basis function. For both built-in families the
/// maximum sits at u_0 = 1, whose integral is 2.
pub fn basis_l1_norm_max<T: Real>(basis: &GradedBasis) -> T {
    let mut best = T::zero();
    for j in 0..=basis.degree {
        best = best.max(basis_function_l1_norm(basis, j));
    }
    best
}

/// The constant C2 = max |u_j^(l)(x_i)| over the whole evaluation table.
/// Rejects an empty point set: a sup over nothing is meaningless.
pub fn basis_grid_sup<T: Real>(basis: &GradedBasis, points: &[T], k: usize) -> T {
    assert!(
        !points.is_empty(),
        "basis_grid_sup needs at least one evaluation point"
    );
    let table = eval_basis_derivatives(basis, points, k);
    let mut best = T::zero();
    for l in 0..=k {
        for i in 0..points.len() {
            for &v in table.row(l, i) {
                best = best.max(v.abs());
            }
        }
    }
    best
}
