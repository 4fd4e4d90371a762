//! Classical interpolation oracles: Newton-Hermite divided differences with
//! repeated knots and second-form barycentric Lagrange.
//!
//! These are the reference constructions the constrained fit is measured
//! against. The Hermite form matches all derivative conditions exactly in
//! exact arithmetic; the Lagrange form exhibits the equispaced divergence
//! the constrained fit is designed to avoid.

use crate::real::Real;
use thiserror::Error;

/// Errors from interpolant construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("duplicate interpolation nodes at positions {i} and {j}")]
    DuplicateNodes { i: usize, j: usize },
    #[error("interpolation data shape mismatch: {context}")]
    ShapeMismatch { context: &'static str },
    #[error("non-finite interpolation data")]
    NonFinite,
}

fn sorted_order<T: Real>(nodes: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes[a].partial_cmp(&nodes[b]).expect("finite nodes"));
    order
}

fn check_finite<T: Real>(values: impl IntoIterator<Item = T>) -> Result<(), ClassicalError> {
    for v in values {
        if !v.is_finite() {
            return Err(ClassicalError::NonFinite);
        }
    }
    Ok(())
}

/// Newton form on a knot sequence with repetitions: the interpolant is
/// c_0 + c_1 (x - t_0) + c_2 (x - t_0)(x - t_1) + ... with each node
/// repeated once per matched derivative order.
#[derive(Debug, Clone)]
pub struct NewtonHermiteForm<T> {
    knots: Vec<T>,
    coefficients: Vec<T>,
}

/// Builds the Hermite interpolant matching `values[l][i]` as the order-l
/// derivative at `nodes[i]` for l = 0..=k, where k + 1 is the number of
/// sample rows. Nodes may arrive in any order but must be distinct.
pub fn hermite_interpolant<T: Real>(
    nodes: &[T],
    values: &[Vec<T>],
) -> Result<NewtonHermiteForm<T>, ClassicalError> {
    if nodes.is_empty() || values.is_empty() {
        return Err(ClassicalError::ShapeMismatch {
            context: "at least one node and one derivative row are required",
        });
    }
    if values.iter().any(|row| row.len() != nodes.len()) {
        return Err(ClassicalError::ShapeMismatch {
            context: "each derivative row needs one entry per node",
        });
    }
    check_finite(nodes.iter().copied())?;
    for row in values {
        check_finite(row.iter().copied())?;
    }
    let order = sorted_order(nodes);
    for w in order.windows(2) {
        if nodes[w[0]] == nodes[w[1]] {
            return Err(ClassicalError::DuplicateNodes { i: w[0], j: w[1] });
        }
    }

    let k = values.len() - 1;
    let mult = k + 1;
    let count = nodes.len() * mult;
    // Knot sequence: each node repeated k + 1 times, ascending. node_of maps
    // a knot position back to its (sorted) node for the confluent fill.
    let mut knots = Vec::with_capacity(count);
    let mut node_of = Vec::with_capacity(count);
    for (slot, &idx) in order.iter().enumerate() {
        for _ in 0..mult {
            knots.push(nodes[idx]);
            node_of.push((slot, idx));
        }
    }

    // Column-by-column divided differences. Where the knot span collapses to
    // a single node the difference quotient is replaced by the confluent
    // limit f^(c)(t) / c!.
    let mut factorial = T::one();
    let mut column: Vec<T> = node_of.iter().map(|&(_, idx)| values[0][idx]).collect();
    let mut coefficients = Vec::with_capacity(count);
    coefficients.push(column[0]);
    for c in 1..count {
        factorial *= T::from_index(c);
        let mut next = Vec::with_capacity(count - c);
        for i in 0..count - c {
            let v = if node_of[i + c].0 == node_of[i].0 {
                values[c][node_of[i].1] / factorial
            } else {
                (column[i + 1] - column[i]) / (knots[i + c] - knots[i])
            };
            next.push(v);
        }
        coefficients.push(next[0]);
        column = next;
    }
    Ok(NewtonHermiteForm {
        knots,
        coefficients,
    })
}

impl<T: Real> NewtonHermiteForm<T> {
    /// The knot sequence, each node repeated once per derivative order.
    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    /// Newton coefficients, one per knot.
    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// Evaluates the ell-th derivative by the nested recurrence
    /// q_j = c_j + (x - t_j) q_{j+1}, differentiated in place. Derivative
    /// orders are updated from the highest down, so each step still sees
    /// the previous tail values it needs.
    pub fn evaluate(&self, x: T, ell: usize) -> T {
        let count = self.coefficients.len();
        let mut vals = vec![T::zero(); ell + 1];
        vals[0] = self.coefficients[count - 1];
        for j in (0..count - 1).rev() {
            let dx = x - self.knots[j];
            for l in (1..=ell).rev() {
                vals[l] = T::from_index(l) * vals[l - 1] + dx * vals[l];
            }
            vals[0] = self.coefficients[j] + dx * vals[0];
        }
        vals[ell]
    }
}

/// Barycentric Lagrange interpolant of the second form.
#[derive(Debug, Clone)]
pub struct LagrangeInterpolant<T> {
    nodes: Vec<T>,
    values: Vec<T>,
    weights: Vec<T>,
}

/// Node count above which weights are accumulated in log space. Beyond this
/// the direct weight products span so many orders of magnitude that they
/// drift toward overflow; the barycentric formula only needs the weights up
/// to a common scale, so log accumulation plus renormalization is exact
/// enough.
const LOG_WEIGHT_NODE_LIMIT: usize = 61;

/// Builds the Lagrange interpolant through `(nodes[i], values[i])`.
pub fn lagrange_interpolant<T: Real>(
    nodes: &[T],
    values: &[T],
) -> Result<LagrangeInterpolant<T>, ClassicalError> {
    if nodes.is_empty() || nodes.len() != values.len() {
        return Err(ClassicalError::ShapeMismatch {
            context: "one value per node is required, with at least one node",
        });
    }
    check_finite(nodes.iter().copied())?;
    check_finite(values.iter().copied())?;
    let order = sorted_order(nodes);
    for w in order.windows(2) {
        if nodes[w[0]] == nodes[w[1]] {
            return Err(ClassicalError::DuplicateNodes { i: w[0], j: w[1] });
        }
    }
    let sorted_nodes: Vec<T> = order.iter().map(|&i| nodes[i]).collect();
    let sorted_values: Vec<T> = order.iter().map(|&i| values[i]).collect();
    let count = sorted_nodes.len();

    let weights = if count <= LOG_WEIGHT_NODE_LIMIT {
        let mut w = vec![T::one(); count];
        for i in 0..count {
            for j in 0..count {
                if i != j {
                    w[i] /= sorted_nodes[i] - sorted_nodes[j];
                }
            }
        }
        w
    } else {
        // log |w_i| = -sum log |x_i - x_j|; the sign of w_i alternates with
        // the count of nodes above x_i. Renormalizing by the largest log
        // magnitude cancels from the barycentric ratio.
        let mut log_mag = vec![T::zero(); count];
        for i in 0..count {
            let mut acc = T::zero();
            for j in 0..count {
                if i != j {
                    acc += (sorted_nodes[i] - sorted_nodes[j]).abs().ln();
                }
            }
            log_mag[i] = -acc;
        }
        let max_log = log_mag.iter().fold(T::neg_infinity(), |a, &b| a.max(b));
        (0..count)
            .map(|i| {
                let sign = if (count - 1 - i) % 2 == 0 {
                    T::one()
                } else {
                    -T::one()
                };
                sign * (log_mag[i] - max_log).exp()
            })
            .collect()
    };
    Ok(LagrangeInterpolant {
        nodes: sorted_nodes,
        values: sorted_values,
        weights,
    })
}

impl<T: Real> LagrangeInterpolant<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// Evaluates the interpolant; exact at the nodes by direct return.
    pub fn evaluate(&self, x: T) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for i in 0..self.nodes.len() {
            let dx = x - self.nodes[i];
            if dx == T::zero() {
                return self.values[i];
            }
            let c = self.weights[i] / dx;
            num += c * self.values[i];
            den += c;
        }
        num / den
    }
}
