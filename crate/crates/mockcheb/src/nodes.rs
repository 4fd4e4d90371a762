//! Node sets and degree bookkeeping for constrained fits on equispaced
//! grids.
//!
//! The fit interpolates exactly on a mock-Chebyshev subset of the grid: for
//! each Chebyshev-Lobatto target the nearest equispaced node is selected.
//! This module builds the grids, performs the selection with its
//! distinctness fallback, derives every degree parameter from (n, k), and
//! lays the grid out in the reordered form the assembly step expects (mock
//! subset first, remaining nodes after).

use crate::real::Real;
use thiserror::Error;

/// Errors from node-set construction and selection.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NodeError {
    /// Grid order 0 describes a single point and admits no interpolation.
    #[error("grid order must be at least 1")]
    DegenerateGrid,
    /// Chebyshev-Lobatto nodes need degree at least 1.
    #[error("node degree must be at least 1")]
    DegenerateDegree,
    /// No degree split with m >= 1 and m_star < r_tilde < n_tilde exists.
    #[error("grid order {n} is too small for a valid degree split")]
    GridTooSmall { n: usize },
    /// An explicitly requested mock degree selects a node twice.
    #[error("degree m={m} selects duplicate mock nodes on the order-{n} grid")]
    DuplicateMockNodes { n: usize, m: usize },
}

/// Degree bookkeeping for one fit configuration.
///
/// Invariants, maintained by the constructors in this module:
/// - `m = floor(pi * sqrt(n / 2))`, or the largest smaller value for which
///   the m+1 selected mock nodes are distinct (the fallback case);
/// - `p = floor(pi * sqrt(n / 12))`;
/// - `r = m + p + 1`, `r_tilde = (k + 1) * r`,
///   `m_star = (k + 1) * (m + 1) - 1`, `n_tilde = (k + 1) * (n + 1) - 1`;
/// - `m_star < r_tilde < n_tilde`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeParams {
    /// Grid order: the equispaced grid has n + 1 nodes.
    pub n: usize,
    /// Highest derivative order carried by the data.
    pub k: usize,
    /// Mock-Chebyshev degree: m + 1 nodes are interpolated exactly.
    pub m: usize,
    /// Regression surplus added on top of the mock degree.
    pub p: usize,
    /// Total degree of the k = 0 problem, r = m + p + 1.
    pub r: usize,
    /// Total fit degree, (k + 1) * r.
    pub r_tilde: usize,
    /// Constraint-block degree, (k + 1) * (m + 1) - 1.
    pub m_star: usize,
    /// Full Hermite degree of the grid, (k + 1) * (n + 1) - 1.
    pub n_tilde: usize,
}

impl DegreeParams {
    fn derive(n: usize, k: usize, m: usize, p: usize) -> Self {
        let r = m + p + 1;
        DegreeParams {
            n,
            k,
            m,
            p,
            r,
            r_tilde: (k + 1) * r,
            m_star: (k + 1) * (m + 1) - 1,
            n_tilde: (k + 1) * (n + 1) - 1,
        }
    }

    /// The closed-form mock degree before any fallback.
    pub fn formula_m(n: usize) -> usize {
        (core::f64::consts::PI * (n as f64 / 2.0).sqrt()).floor() as usize
    }

    /// The closed-form regression surplus.
    pub fn formula_p(n: usize) -> usize {
        (core::f64::consts::PI * (n as f64 / 12.0).sqrt()).floor() as usize
    }
}

/// Equispaced grid in reordered layout: the first `mock_count` nodes are the
/// mock-Chebyshev subset in ascending order, the rest are the complement in
/// ascending order. `permutation` maps a reordered index to the original
/// equispaced index and is a bijection on 0..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct ReorderedGrid<T> {
    nodes: Vec<T>,
    mock_count: usize,
    permutation: Vec<usize>,
}

impl<T: Real> ReorderedGrid<T> {
    /// All nodes in reordered layout.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// Number of mock-Chebyshev nodes (m + 1).
    pub fn mock_count(&self) -> usize {
        self.mock_count
    }

    /// The mock-Chebyshev subset, ascending.
    pub fn mock_nodes(&self) -> &[T] {
        &self.nodes[..self.mock_count]
    }

    /// The complement of the mock subset, ascending.
    pub fn regression_nodes(&self) -> &[T] {
        &self.nodes[self.mock_count..]
    }

    /// Map from reordered index to original equispaced index.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Original equispaced index of the i-th reordered node.
    pub fn original_index(&self, i: usize) -> usize {
        self.permutation[i]
    }

    /// Total node count (n + 1).
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// A grid always holds at least two nodes.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The n + 1 equispaced nodes x_i = -1 + 2i/n in ascending order.
pub fn equispaced_nodes<T: Real>(n: usize) -> Result<Vec<T>, NodeError> {
    if n == 0 {
        return Err(NodeError::DegenerateGrid);
    }
    let two = T::from_const(2.0);
    let n_t = T::from_index(n);
    let mut nodes = Vec::with_capacity(n + 1);
    for i in 0..=n {
        nodes.push(-T::one() + two * T::from_index(i) / n_t);
    }
    Ok(nodes)
}

/// The m + 1 Chebyshev-Lobatto nodes -cos(pi * j / m), ascending.
///
/// Built by mirroring: the negative half comes from the cosine, the positive
/// half is its exact negation, and the midpoint of an even-degree set is an
/// exact zero. This makes the set symmetric about 0 to the last bit and puts
/// exact +-1 at the endpoints.
pub fn chebyshev_lobatto_nodes<T: Real>(m: usize) -> Result<Vec<T>, NodeError> {
    if m == 0 {
        return Err(NodeError::DegenerateDegree);
    }
    let m_t = T::from_index(m);
    let mut nodes = vec![T::zero(); m + 1];
    for j in 0..=m {
        if 2 * j < m {
            nodes[j] = if j == 0 {
                -T::one()
            } else {
                -(T::PI() * T::from_index(j) / m_t).cos()
            };
        } else if 2 * j > m {
            nodes[j] = -nodes[m - j];
        }
        // 2j == m keeps the exact zero it was initialized with.
    }
    Ok(nodes)
}

/// Index of the grid node nearest to `target`. Exact ties go to the smaller
/// index because only a strictly smaller distance displaces the incumbent.
fn nearest_index<T: Real>(grid: &[T], target: T) -> usize {
    let mut best = 0;
    let mut best_dist = (grid[0] - target).abs();
    for (i, &g) in grid.iter().enumerate().skip(1) {
        let dist = (g - target).abs();
        if dist < best_dist {
            best = i;
            best_dist = dist;
        }
    }
    best
}

/// Nearest-node indices for degree m, or None if any node is selected twice.
/// Targets and grid are both ascending, so the index sequence is
/// nondecreasing and a duplicate always shows up adjacently.
fn try_select<T: Real>(grid: &[T], m: usize) -> Result<Option<Vec<usize>>, NodeError> {
    let targets = chebyshev_lobatto_nodes::<T>(m)?;
    let mut indices = Vec::with_capacity(m + 1);
    for &t in &targets {
        indices.push(nearest_index(grid, t));
    }
    let distinct = indices.windows(2).all(|w| w[0] != w[1]);
    Ok(distinct.then_some(indices))
}

fn build_reordered<T: Real>(grid: &[T], selected: &[usize]) -> ReorderedGrid<T> {
    let n = grid.len() - 1;
    let mut is_mock = vec![false; n + 1];
    for &i in selected {
        is_mock[i] = true;
    }
    let mut permutation = Vec::with_capacity(n + 1);
    permutation.extend_from_slice(selected);
    permutation.extend((0..=n).filter(|&i| !is_mock[i]));
    let nodes = permutation.iter().map(|&i| grid[i]).collect();
    ReorderedGrid {
        nodes,
        mock_count: selected.len(),
        permutation,
    }
}

fn check_degree_order(params: &DegreeParams) -> Result<(), NodeError> {
    // m_star < r_tilde holds for any p >= 0; the binding constraint is
    // r_tilde < n_tilde, which fails when the grid is too coarse for the
    // closed-form degrees.
    if params.m_star < params.r_tilde && params.r_tilde < params.n_tilde {
        Ok(())
    } else {
        Err(NodeError::GridTooSmall { n: params.n })
    }
}

/// Selects the mock-Chebyshev subset of the order-n equispaced grid and
/// derives the degree parameters for derivative order k.
///
/// The mock degree starts at its closed form and decrements until the m + 1
/// selected nodes are distinct. Grids too small for any valid split are
/// rejected.
pub fn select_mock_chebyshev<T: Real>(
    n: usize,
    k: usize,
) -> Result<(DegreeParams, ReorderedGrid<T>), NodeError> {
    let grid = equispaced_nodes::<T>(n)?;
    let mut m = DegreeParams::formula_m(n);
    while m >= 1 {
        if let Some(selected) = try_select(&grid, m)? {
            let params = DegreeParams::derive(n, k, m, DegreeParams::formula_p(n));
            check_degree_order(&params)?;
            return Ok((params, build_reordered(&grid, &selected)));
        }
        m -= 1;
    }
    Err(NodeError::GridTooSmall { n })
}

/// Like [`select_mock_chebyshev`] but with explicit degrees m and p instead
/// of the closed forms. No fallback: if degree m selects a duplicate node
/// the call fails.
pub fn select_with_degrees<T: Real>(
    n: usize,
    k: usize,
    m: usize,
    p: usize,
) -> Result<(DegreeParams, ReorderedGrid<T>), NodeError> {
    if m == 0 {
        return Err(NodeError::DegenerateDegree);
    }
    let grid = equispaced_nodes::<T>(n)?;
    let selected =
        try_select(&grid, m)?.ok_or(NodeError::DuplicateMockNodes { n, m })?;
    let params = DegreeParams::derive(n, k, m, p);
    check_degree_order(&params)?;
    Ok((params, build_reordered(&grid, &selected)))
}

/// Magnitude of the k-th power of the nodal polynomial,
/// `|(x - x_0) * ... * (x - x_n)|^k`.
///
/// Accumulated as a sum of log magnitudes so that large grids neither
/// underflow nor overflow mid-product; the result may still round to 0 or
/// infinity when the true value is outside the representable range. Exact
/// zero factors short-circuit to 0.
pub fn nodal_polynomial_magnitude<T: Real>(grid: &[T], k: usize, x: T) -> T {
    let mut log_sum = T::zero();
    for &g in grid {
        let factor = (x - g).abs();
        if factor == T::zero() {
            return T::zero();
        }
        log_sum += factor.ln();
    }
    (log_sum * T::from_index(k)).exp()
}
