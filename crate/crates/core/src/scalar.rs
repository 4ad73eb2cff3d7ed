//! Floating-point scalar abstraction.
//!
//! All numerical routines are generic over [`Scalar`]. Tolerances that the
//! routines use internally live on the trait so that `f32` models get
//! thresholds matched to their precision instead of the `f64` defaults.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// floating point: f32 or f64
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for conflicting seed entries and forced zeros.
    const SYMMETRY_TOL: f64;
    /// First Bianchi identity tolerance, relative to the max component.
    const BIANCHI_TOL: f64;
    /// Asymmetry accepted by the eigensolver before `NonSymmetric`.
    const ASYMMETRY_TOL: f64;
    /// Off-diagonal threshold of the rotation eigensolver, relative to `‖M‖∞`.
    const ROTATION_THRESHOLD: f64;
    /// Relative bound on `‖Mx‖` when restricting to `x^⊥`.
    const KERNEL_TOL: f64;
    /// Absolute and relative eigenvalue grouping tolerance.
    const GROUP_TOL: f64;
    /// Default tolerance of the model checks.
    const CHECK_TOL: f64;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const SYMMETRY_TOL: f64 = 1e-12;
    const BIANCHI_TOL: f64 = 1e-12;
    const ASYMMETRY_TOL: f64 = 1e-12;
    const ROTATION_THRESHOLD: f64 = 1e-14;
    const KERNEL_TOL: f64 = 1e-10;
    const GROUP_TOL: f64 = 1e-7;
    const CHECK_TOL: f64 = 1e-8;
}

impl Scalar for f32 {
    const SYMMETRY_TOL: f64 = 1e-5;
    const BIANCHI_TOL: f64 = 1e-5;
    const ASYMMETRY_TOL: f64 = 1e-5;
    const ROTATION_THRESHOLD: f64 = 1e-6;
    const KERNEL_TOL: f64 = 1e-4;
    const GROUP_TOL: f64 = 1e-3;
    const CHECK_TOL: f64 = 1e-3;
}

/// `max |v|` over a slice, zero for an empty slice.
pub fn max_abs<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |m, v| m.max(v.abs()))
}
