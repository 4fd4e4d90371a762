//! Affine changes of variable between an interval [a, b] and the fitting
//! domain [-1, 1].
//!
//! The fit itself is defined on [-1, 1] only. Data living on another
//! interval maps through these helpers: transform the sample locations with
//! [`to_unit`], multiply each order-l derivative sample by
//! [`derivative_scale`]`(a, b, l)`, fit, and evaluate through [`from_unit`]
//! with the inverse scaling.

/// Maps x in [a, b] to t in [-1, 1].
pub fn to_unit(a: f64, b: f64, x: f64) -> f64 {
    (2.0 * x - a - b) / (b - a)
}

/// Maps t in [-1, 1] back to x in [a, b].
pub fn from_unit(a: f64, b: f64, t: f64) -> f64 {
    0.5 * (a + b) + 0.5 * (b - a) * t
}

/// Chain-rule factor ((b - a) / 2)^order: multiplying an order-`order`
/// derivative sampled on [a, b] by this factor gives the derivative of the
/// pulled-back function on [-1, 1].
pub fn derivative_scale(a: f64, b: f64, order: usize) -> f64 {
    (0.5 * (b - a)).powi(order as i32)
}
