//! Generalized degrees of freedom achieved with feedback.

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};

fn min<T: PartialOrd>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

fn piecewise<T: Num + PartialOrd + Copy + FromPrimitive>(alpha: T, beta: T) -> Option<T> {
    let c = |num: i64, den: i64| T::from_i64(num).unwrap() / T::from_i64(den).unwrap();
    let one = T::one();
    let two = c(2, 1);
    Some(if alpha <= c(1, 2) {
        min(one - alpha + beta, one - alpha / two)
    } else if alpha <= c(2, 3) {
        min(alpha + beta, one - alpha / two)
    } else if alpha < one {
        one - alpha / two
    } else if alpha == one {
        return None;
    } else if alpha <= two {
        alpha / two
    } else {
        min(one + beta, alpha / two)
    })
}

fn not_defined() -> Error {
    Error::NotWellDefined("GDoF not well defined at alpha=1".into())
}

/// Symmetric GDoF lower bound at interference level `alpha` and feedback
/// level `beta` (may be infinite).
pub fn gdof_lower(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be a nonnegative number, got {alpha}"
        )));
    }
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!("beta must be nonnegative, got {beta}")));
    }
    piecewise(alpha, beta).ok_or_else(not_defined)
}

/// [`gdof_lower`] in exact arithmetic.
pub fn gdof_lower_exact(alpha: Ratio<i64>, beta: Ratio<i64>) -> Result<Ratio<i64>> {
    if alpha < Ratio::from_integer(0) || beta < Ratio::from_integer(0) {
        return Err(Error::InvalidArgument(format!(
            "alpha and beta must be nonnegative, got {alpha}, {beta}"
        )));
    }
    piecewise(alpha, beta).ok_or_else(not_defined)
}
