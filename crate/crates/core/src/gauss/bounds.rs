//! Outer bounds and gap constants.

use serde::Serialize;

use super::mu::MuAlloc;
use super::params::{FeedbackCapacity, GaussParams, GaussRegime};
use super::rates::{rate_default, RateBreakdown};
use crate::error::{Error, Result};

/// Symmetric capacity bound without feedback.
pub fn upper_bound_no_fb(params: &GaussParams) -> f64 {
    let (s, i) = (params.snr, params.inr);
    (1.0 + s).log2().min((1.0 + i + s / (1.0 + i)).log2())
}

/// Symmetric capacity bound with unlimited feedback.
pub fn upper_bound_inf_fb(params: &GaussParams) -> f64 {
    let (s, i, k) = (params.snr, params.inr, params.k_users as f64);
    0.5 * (1.0 + s / (1.0 + i)).log2() + 0.5 * (1.0 + s + i).log2() + (k - 1.0) / 2.0 + k.log2()
}

/// Each feedback bit buys at most one bit over the no-feedback bound.
pub fn conjectured_ub(params: &GaussParams) -> f64 {
    let inf = upper_bound_inf_fb(params);
    match params.c_fb {
        FeedbackCapacity::Finite(c) => inf.min(upper_bound_no_fb(params) + c),
        FeedbackCapacity::Unbounded => inf,
    }
}

/// Product term shared by the weak-regime constants.
fn weak_product(k: f64) -> f64 {
    (k - 1.0).powi(2) * (k + 1.0 / 3.0) * (k + 2.0 / 3.0).powi(2) * (k + 2.0).powi(2) * (k + 11.0 / 4.0)
}

/// Gap between the lattice schemes and the conjectured bound over all
/// regimes the schemes cover.
pub fn gap_l(k_users: usize) -> f64 {
    let k = k_users as f64;
    let lattice = 0.5 * (2304.0 * k * k * weak_product(k)).log2();
    let middle = 3f64.log2() + 16.0 + (k * k * k).log2();
    lattice.max(middle) + (k - 1.0) / 2.0
}

/// Which side of the feedback threshold an instance sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FeedbackBranch {
    /// The feedback term is the binding one in the default weights.
    Limited,
    /// Enough feedback to act as if it were unlimited.
    Unlimited,
}

/// `2C` at or below this makes the feedback term bind.
pub fn feedback_threshold(params: &GaussParams) -> Option<f64> {
    let (s, i) = (params.snr.log2(), params.inr.log2());
    match params.regime() {
        GaussRegime::VeryWeak => Some((params.inr - 1.0).log2()),
        GaussRegime::Weak => Some(2.0 * s - 3.0 * i),
        GaussRegime::Strong => Some(i - 2.0 * s),
        _ => None,
    }
}

pub fn feedback_branch(params: &GaussParams) -> FeedbackBranch {
    match (params.c_fb, feedback_threshold(params)) {
        (FeedbackCapacity::Finite(c), Some(t)) if 2.0 * c <= t => FeedbackBranch::Limited,
        _ => FeedbackBranch::Unlimited,
    }
}

/// Gap constant for a regime and feedback branch; `None` at `alpha = 1`.
///
/// The middle regimes quote one constant for both branches.
pub fn regime_gap_const(k_users: usize, regime: GaussRegime, branch: FeedbackBranch) -> Option<f64> {
    let k = k_users as f64;
    let half_log = |x: f64| 0.5 * x.log2();
    let v = match (regime, branch) {
        (GaussRegime::VeryWeak, FeedbackBranch::Limited) => {
            half_log(k + 1.0) + (k - 1.0).log2() + 1.5 * k.log2() + half_log(54.0)
        }
        (GaussRegime::VeryWeak, FeedbackBranch::Unlimited) => {
            (k - 1.0) / 2.0 + half_log(108.0 * (k - 1.0) * k.powi(5) * (k + 1.0))
        }
        (GaussRegime::Weak, FeedbackBranch::Limited) => half_log(6912.0 * weak_product(k)),
        (GaussRegime::Weak, FeedbackBranch::Unlimited) => half_log(2304.0 * k * k * weak_product(k)) + (k - 1.0) / 2.0,
        (GaussRegime::MiddleWeak, _) => half_log(9.0) + 16.0 + (k - 1.0) / 2.0 + 3.0 * k.log2(),
        (GaussRegime::MiddleStrong, _) => half_log(6.0) + 6.0 + (k - 1.0) / 2.0 + k.log2(),
        (GaussRegime::Strong, FeedbackBranch::Limited) => half_log(80.0 * (k + 3.0)),
        (GaussRegime::Strong, FeedbackBranch::Unlimited) => (k - 1.0) / 2.0 + half_log(180.0 * k * k * (k + 3.0)),
        (GaussRegime::Unit, _) => return None,
    };
    Some(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "value")]
pub enum Achievable {
    Rate(f64),
    /// Default weights come out negative for these parameters.
    Infeasible,
    /// No lattice scheme for this interference level.
    Unsupported,
}

impl Achievable {
    pub fn rate(&self) -> Option<f64> {
        match self {
            Achievable::Rate(r) => Some(*r),
            _ => None,
        }
    }
}

/// Achievable rate, bounds and constants for one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub params: GaussParams,
    pub alpha: f64,
    pub regime: GaussRegime,
    pub achievable: Achievable,
    pub mu: Option<MuAlloc>,
    pub breakdown: Option<RateBreakdown>,
    pub ub_no_fb: f64,
    pub ub_inf_fb: f64,
    pub ub_conjectured: f64,
    pub feedback_branch: FeedbackBranch,
    /// `None` where no constant applies (`alpha = 1`).
    pub regime_gap_const: Option<f64>,
    pub global_gap_l: f64,
}

impl BoundsReport {
    pub fn gap(&self) -> Option<f64> {
        self.achievable.rate().map(|r| self.ub_conjectured - r)
    }
}

/// Evaluates everything with the default weights.
pub fn bounds_report(params: &GaussParams, refined: bool) -> Result<BoundsReport> {
    let regime = params.regime();
    let (achievable, mu, breakdown) = match rate_default(params, refined) {
        Ok((mu, b)) => (Achievable::Rate(b.r_sym), Some(mu), Some(b)),
        Err(Error::InfeasibleParameters(_)) => (Achievable::Infeasible, None, None),
        Err(Error::UnsupportedRegime(_)) => (Achievable::Unsupported, None, None),
        Err(e) => return Err(e),
    };
    let branch = feedback_branch(params);
    Ok(BoundsReport {
        params: *params,
        alpha: params.alpha(),
        regime,
        achievable,
        mu,
        breakdown,
        ub_no_fb: upper_bound_no_fb(params),
        ub_inf_fb: upper_bound_inf_fb(params),
        ub_conjectured: conjectured_ub(params),
        feedback_branch: branch,
        regime_gap_const: regime_gap_const(params.k_users, regime, branch),
        global_gap_l: gap_l(params.k_users),
    })
}
