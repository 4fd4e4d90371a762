//! Quadrature kernels shared by the basis and operator modules.

use crate::real::Real;

/// Relative tolerance clamped so it stays meaningful in the working
/// precision; f32 cannot certify ten digits.
pub(crate) fn clamp_rel_tol<T: Real>(requested: f64) -> T {
    let eps_floor = T::epsilon() * T::from_const(32.0);
    T::from_const(requested).max(eps_floor)
}

/// Composite Simpson rule with `panels` panels (forced even).
fn simpson<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, panels: usize) -> T {
    let panels = panels.max(2) & !1;
    let h = (b - a) / T::from_index(panels);
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 {
            T::from_const(4.0)
        } else {
            T::from_const(2.0)
        };
        sum += w * f(a + h * T::from_index(i));
    }
    sum * h / T::from_const(3.0)
}

/// Composite Simpson with panel doubling until two successive refinements
/// agree to `rel_tol` (with a tiny absolute floor for integrals near zero).
/// The integrand is assumed smooth on [a, b].
pub(crate) fn simpson_doubling<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, rel_tol: T) -> T {
    let abs_floor = T::epsilon();
    let mut panels = 8;
    let mut prev = simpson(f, a, b, panels);
    for _ in 0..24 {
        panels *= 2;
        let next = simpson(f, a, b, panels);
        if (next - prev).abs() <= rel_tol * next.abs() + abs_floor {
            return next;
        }
        prev = next;
    }
    prev
}

/// Gauss-Legendre nodes and weights on [-1, 1], both ascending in the node.
///
/// Each node is found by Newton iteration on the Legendre recurrence from
/// the usual cosine initial guess; the negative half is mirrored so the rule
/// is exactly symmetric.
pub(crate) fn gauss_legendre<T: Real>(q: usize) -> (Vec<T>, Vec<T>) {
    assert!(q >= 1, "quadrature order must be positive");
    let mut nodes = vec![T::zero(); q];
    let mut weights = vec![T::zero(); q];
    let q_t = T::from_index(q);
    let tol = T::epsilon() * T::from_const(4.0);
    for i in 0..(q + 1) / 2 {
        // Initial guess for the i-th root of P_q, counted from x = +1 down.
        let theta = T::PI() * (T::from_index(i) + T::from_const(0.75))
            / (q_t + T::from_const(0.5));
        let mut x = theta.cos();
        let mut dp = T::one();
        for _ in 0..100 {
            // Legendre values by the three-term recurrence.
            let mut p_prev = T::one();
            let mut p = x;
            for j in 2..=q {
                let j_t = T::from_index(j);
                let next = ((T::from_const(2.0) * j_t - T::one()) * x * p
                    - (j_t - T::one()) * p_prev)
                    / j_t;
                p_prev = p;
                p = next;
            }
            dp = q_t * (x * p - p_prev) / (x * x - T::one());
            let step = p / dp;
            x = x - step;
            if step.abs() <= tol {
                break;
            }
        }
        let w = T::from_const(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[q - 1 - i] = x;
        weights[q - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if q % 2 == 1 {
        // The middle node of an odd rule is exactly zero.
        nodes[q / 2] = T::zero();
    }
    (nodes, weights)
}

/// Integral of `f` over [a, b] by a fixed Gauss-Legendre rule.
fn gauss_segment<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    nodes: &[T],
    weights: &[T],
) -> T {
    let half = (b - a) / T::from_const(2.0);
    let mid = (a + b) / T::from_const(2.0);
    let mut sum = T::zero();
    for (&x, &w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// L1 norm on [-1, 1] of a polynomial of known degree.
///
/// Sign changes are bracketed on an oversampled Chebyshev-extrema grid
/// (clustering matches where such polynomials oscillate), refined by
/// bisection, and the polynomial is integrated with a Gauss-Legendre rule
/// that is exact for its degree on each sign-constant segment. The only
/// approximation left is root placement, where the integrand vanishes, so
/// the result is well inside a 1e-8 relative tolerance at desk scales.
pub(crate) fn polynomial_abs_l1<T: Real, F: Fn(T) -> T>(p: &F, degree: usize) -> T {
    let samples = 8 * (degree + 1);
    let mut xs = Vec::with_capacity(samples + 1);
    let s_t = T::from_index(samples);
    for i in 0..=samples {
        if 2 * i < samples {
            xs.push(-(T::PI() * T::from_index(i) / s_t).cos());
        } else if 2 * i == samples {
            xs.push(T::zero());
        } else {
            let mirrored = -(T::PI() * T::from_index(samples - i) / s_t).cos();
            xs.push(-mirrored);
        }
    }
    let values: Vec<T> = xs.iter().map(|&x| p(x)).collect();

    // Breakpoints: interval endpoints plus one refined root per bracket.
    let mut breaks = vec![-T::one()];
    for i in 0..samples {
        let (va, vb) = (values[i], values[i + 1]);
        if va == T::zero() {
            if xs[i] > -T::one() {
                breaks.push(xs[i]);
            }
            continue;
        }
        if (va > T::zero()) != (vb > T::zero()) && vb != T::zero() {
            breaks.push(bisect_root(p, xs[i], xs[i + 1], va));
        }
    }
    breaks.push(T::one());

    let (nodes, weights) = gauss_legendre::<T>(degree / 2 + 2);
    let mut total = T::zero();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            total += gauss_segment(p, w[0], w[1], &nodes, &weights).abs();
        }
    }
    total
}

fn bisect_root<T: Real, F: Fn(T) -> T>(p: &F, mut a: T, mut b: T, va: T) -> T {
    let a_positive = va > T::zero();
    for _ in 0..128 {
        let mid = (a + b) / T::from_const(2.0);
        if mid <= a || mid >= b {
            break;
        }
        let vm = p(mid);
        if vm == T::zero() {
            return mid;
        }
        if (vm > T::zero()) == a_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a + b) / T::from_const(2.0)
}
