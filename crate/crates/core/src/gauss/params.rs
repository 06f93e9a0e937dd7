use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance used when placing `alpha` on a regime boundary.
pub const REGIME_TOL: f64 = 1e-9;

/// Capacity of each feedback link in bits per channel use.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FeedbackCapacity {
    Finite(f64),
    Unbounded,
}

impl FeedbackCapacity {
    pub fn finite(&self) -> Option<f64> {
        match self {
            FeedbackCapacity::Finite(c) => Some(*c),
            FeedbackCapacity::Unbounded => None,
        }
    }

    /// `min(2^{2C}, x)`, which is `x` without a limit.
    pub(crate) fn min_pow(&self, x: f64) -> f64 {
        match self {
            FeedbackCapacity::Finite(c) => (2f64).powf(2.0 * c).min(x),
            FeedbackCapacity::Unbounded => x,
        }
    }

    /// `max(2^{-2C}, x)`, which is `x` without a limit.
    pub(crate) fn max_inv_pow(&self, x: f64) -> f64 {
        match self {
            FeedbackCapacity::Finite(c) => (2f64).powf(-2.0 * c).max(x),
            FeedbackCapacity::Unbounded => x,
        }
    }

    /// Caps a layer rate at `2C`.
    pub(crate) fn cap_two_uses(&self, rate: f64) -> (f64, bool) {
        match self {
            FeedbackCapacity::Finite(c) if 2.0 * c < rate => (2.0 * c, true),
            _ => (rate, false),
        }
    }
}

impl fmt::Display for FeedbackCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeedbackCapacity::Finite(c) => write!(f, "{c}"),
            FeedbackCapacity::Unbounded => write!(f, "inf"),
        }
    }
}

impl Serialize for FeedbackCapacity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FeedbackCapacity::Finite(c) => s.serialize_f64(*c),
            FeedbackCapacity::Unbounded => s.serialize_str("inf"),
        }
    }
}

/// One symmetric Gaussian instance. Powers are linear ratios.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussParams {
    pub snr: f64,
    pub inr: f64,
    pub c_fb: FeedbackCapacity,
    pub k_users: usize,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl GaussParams {
    pub fn new(snr: f64, inr: f64, c_fb: FeedbackCapacity, k_users: usize) -> Result<Self> {
        if !(snr.is_finite() && snr > 1.0) {
            return Err(Error::InvalidArgument(format!("SNR must exceed 1, got {snr}")));
        }
        if !(inr.is_finite() && inr > 1.0) {
            return Err(Error::InvalidArgument(format!("INR must exceed 1, got {inr}")));
        }
        if let FeedbackCapacity::Finite(c) = c_fb {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "feedback capacity must be >= 0, got {c}"
                )));
            }
        }
        if k_users < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 users, got {k_users}")));
        }
        Ok(GaussParams {
            snr,
            inr,
            c_fb,
            k_users,
        })
    }

    pub fn from_db(snr_db: f64, inr_db: f64, c_fb: FeedbackCapacity, k_users: usize) -> Result<Self> {
        Self::new(db_to_linear(snr_db), db_to_linear(inr_db), c_fb, k_users)
    }

    /// `log INR / log SNR`.
    pub fn alpha(&self) -> f64 {
        self.inr.ln() / self.snr.ln()
    }

    /// `C_FB / log2 SNR`; infinite without a limit.
    pub fn beta(&self) -> f64 {
        match self.c_fb {
            FeedbackCapacity::Finite(c) => c / self.snr.log2(),
            FeedbackCapacity::Unbounded => f64::INFINITY,
        }
    }

    pub fn regime(&self) -> GaussRegime {
        GaussRegime::of_alpha(self.alpha())
    }

    pub fn with_feedback(&self, c_fb: FeedbackCapacity) -> Self {
        GaussParams { c_fb, ..*self }
    }
}

/// Interference regimes by `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GaussRegime {
    /// `alpha <= 1/2`
    VeryWeak,
    /// `1/2 < alpha <= 2/3`
    Weak,
    /// `2/3 < alpha < 1`, no lattice scheme here
    MiddleWeak,
    /// `alpha = 1`
    Unit,
    /// `1 < alpha < 2`, no lattice scheme here
    MiddleStrong,
    /// `alpha >= 2`
    Strong,
}

impl GaussRegime {
    pub fn of_alpha(alpha: f64) -> Self {
        if alpha <= 0.5 + REGIME_TOL {
            GaussRegime::VeryWeak
        } else if alpha <= 2.0 / 3.0 + REGIME_TOL {
            GaussRegime::Weak
        } else if (alpha - 1.0).abs() <= REGIME_TOL {
            GaussRegime::Unit
        } else if alpha < 1.0 {
            GaussRegime::MiddleWeak
        } else if alpha < 2.0 - REGIME_TOL {
            GaussRegime::MiddleStrong
        } else {
            GaussRegime::Strong
        }
    }

    pub fn has_scheme(&self) -> bool {
        matches!(self, GaussRegime::VeryWeak | GaussRegime::Weak | GaussRegime::Strong)
    }

    pub fn label(&self) -> &'static str {
        match self {
            GaussRegime::VeryWeak => "very-weak",
            GaussRegime::Weak => "weak",
            GaussRegime::MiddleWeak => "middle-weak",
            GaussRegime::Unit => "unit",
            GaussRegime::MiddleStrong => "middle-strong",
            GaussRegime::Strong => "strong",
        }
    }
}
