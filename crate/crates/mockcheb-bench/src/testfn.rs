//! Built-in test functions with closed-form derivatives up to order two.

use std::fmt;
use std::str::FromStr;

/// The four benchmark functions on [-1, 1]: two Runge-type rationals of
/// different pole distance, a fast oscillation, and a rational with a real
/// pole just outside the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TestFunctionId {
    F1,
    F2,
    F3,
    F4,
}

impl TestFunctionId {
    pub const ALL: [TestFunctionId; 4] = [
        TestFunctionId::F1,
        TestFunctionId::F2,
        TestFunctionId::F3,
        TestFunctionId::F4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TestFunctionId::F1 => "f1",
            TestFunctionId::F2 => "f2",
            TestFunctionId::F3 => "f3",
            TestFunctionId::F4 => "f4",
        }
    }

    /// Evaluates the order-th derivative; closed forms exist up to order 2.
    pub fn eval(&self, order: usize, x: f64) -> f64 {
        assert!(order <= 2, "closed forms stop at the second derivative");
        match self {
            TestFunctionId::F1 => {
                let q = 1.0 + 25.0 * x * x;
                match order {
                    0 => 1.0 / q,
                    1 => -50.0 * x / (q * q),
                    _ => (3750.0 * x * x - 50.0) / (q * q * q),
                }
            }
            TestFunctionId::F2 => {
                let q = 1.0 + 8.0 * x * x;
                match order {
                    0 => 1.0 / q,
                    1 => -16.0 * x / (q * q),
                    _ => (384.0 * x * x - 16.0) / (q * q * q),
                }
            }
            TestFunctionId::F3 => match order {
                0 => (50.0 * x).cos(),
                1 => -50.0 * (50.0 * x).sin(),
                _ => -2500.0 * (50.0 * x).cos(),
            },
            TestFunctionId::F4 => {
                let s = x - 1.05;
                match order {
                    0 => 1.0 / s,
                    1 => -1.0 / (s * s),
                    _ => 2.0 / (s * s * s),
                }
            }
        }
    }
}

impl fmt::Display for TestFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestFunctionId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "f1" => Ok(TestFunctionId::F1),
            "f2" => Ok(TestFunctionId::F2),
            "f3" => Ok(TestFunctionId::F3),
            "f4" => Ok(TestFunctionId::F4),
            other => Err(format!(
                "unknown test function '{other}' (expected f1, f2, f3, or f4)"
            )),
        }
    }
}
