//! Scalar abstraction the mechanism arithmetic is generic over.

use std::fmt;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar for locations, weights and utilities.
///
/// The associated tolerances are used when validating weight vectors and
/// comparing locations; they scale with the precision of the underlying
/// type, so `f32` gets a coarser tolerance than `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Tolerance for weight validation and weight-space predicates.
    fn weight_tol() -> Self;

    /// Tolerance for comparing locations and utilities.
    fn location_tol() -> Self;
}

impl Real for f64 {
    fn weight_tol() -> Self {
        1e-9
    }

    fn location_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn weight_tol() -> Self {
        1e-6
    }

    fn location_tol() -> Self {
        1e-6
    }
}

/// Converts an `f64` literal into the scalar type.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in every Real type")
}

/// `1/n` as a scalar.
pub(crate) fn one_over<T: Real>(n: usize) -> T {
    T::one() / T::from_usize(n).expect("agent count representable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_are_positive() {
        assert!(f64::weight_tol() > 0.0);
        assert!(f32::location_tol() > 0.0);
    }

    #[test]
    fn literal_conversion_round_trips() {
        let half: f32 = real(0.5);
        assert_eq!(half, 0.5f32);
        let quarter: f64 = real(0.25);
        assert_eq!(quarter, 0.25);
    }
}
