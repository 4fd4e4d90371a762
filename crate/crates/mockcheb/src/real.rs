//! Scalar abstraction the numeric kernels are generic over.

use core::fmt::{Debug, Display};
use core::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// IEEE floating-point scalar used throughout the crate.
///
/// Implemented for `f32` and `f64`. The supertraits are exactly what the
/// kernels need: `Float` for arithmetic and transcendentals, `FloatConst`
/// for pi, the primitive conversions for index arithmetic, and the compound
/// assignment operators for in-place elimination loops.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts a node or degree index. Indices at the supported problem
    /// sizes (a few thousand) are exactly representable in both `f32` and
    /// `f64`, so the conversion never loses information.
    fn from_index(i: usize) -> Self {
        Self::from_usize(i).expect("index fits in the scalar type")
    }

    /// Converts an `f64` constant such as a tolerance or a literal
    /// coefficient, rounding to the nearest representable value.
    fn from_const(c: f64) -> Self {
        Self::from_f64(c).expect("finite f64 constant converts to the scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
