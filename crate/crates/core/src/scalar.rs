//! Floating point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the spectral machinery is generic over.
///
/// Implemented for `f32` and `f64`. The associated tolerances are expressed in
/// the units of the normalized problem (unit start vectors, spectrum in
/// `[-1, 1]`), so they only depend on the working precision.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Lanczos stops once an off-diagonal coefficient of the unit-normalized
    /// recurrence drops to this value.
    fn breakdown_tol() -> Self;

    /// Points this close to a bin edge are treated as lying on the edge.
    fn bin_snap() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn breakdown_tol() -> Self {
        1e-12
    }

    fn bin_snap() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn breakdown_tol() -> Self {
        1e-6
    }

    fn bin_snap() -> Self {
        1e-5
    }
}

#[inline]
pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub(crate) fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}
