//! The Gaussian interference channel: lattice-scheme rates, outer bounds,
//! gap constants and GDoF. All logarithms are base 2.

mod bounds;
mod gdof;
mod mu;
mod optimize;
mod params;
mod rates;

pub use bounds::{
    bounds_report, conjectured_ub, feedback_branch, feedback_threshold, gap_l, regime_gap_const, upper_bound_inf_fb,
    upper_bound_no_fb, Achievable, BoundsReport, FeedbackBranch,
};
pub use gdof::{gdof_lower, gdof_lower_exact};
pub use mu::{default_mu, default_mu_strong, default_mu_very_weak, default_mu_weak, MuAlloc, SchemeKind, ALIGN_TOL};
pub use optimize::{optimize_mu, MuSearch};
pub use params::{db_to_linear, FeedbackCapacity, GaussParams, GaussRegime, REGIME_TOL};
pub use rates::{rate_default, rate_for, rate_strong, rate_very_weak, rate_weak, Binding, RateBreakdown};
