use serde::Serialize;

use super::axis::Axis;
use super::format::{fmt_num, fmt_opt, Table};
use super::BetaLevel;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gauss::{bounds_report, gdof_lower, FeedbackCapacity, GaussParams, GaussRegime};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussRateRow {
    pub snr_db: f64,
    pub cfb: FeedbackCapacity,
    pub rate_bits: Option<f64>,
    pub ub_bits: f64,
    pub gap_bits: Option<f64>,
    pub regime: &'static str,
}

impl Table for GaussRateRow {
    const HEADER: &'static [&'static str] = &["snr_db", "cfb", "rate_bits", "ub_bits", "gap_bits"];
    fn cells(&self) -> Vec<String> {
        vec![
            fmt_num(self.snr_db),
            fmt_cfb(&self.cfb),
            fmt_opt(self.rate_bits),
            fmt_num(self.ub_bits),
            fmt_opt(self.gap_bits),
        ]
    }
}

pub(crate) fn fmt_cfb(c: &FeedbackCapacity) -> String {
    match c {
        FeedbackCapacity::Finite(c) => fmt_num(*c),
        FeedbackCapacity::Unbounded => "inf".into(),
    }
}

/// Default-weight rate and conjectured bound against SNR at fixed `alpha`
/// (`INR = SNR^alpha`), one row per SNR and feedback capacity.
pub fn sweep_gauss_snr(
    alpha: f64,
    k_users: usize,
    cfbs: &[FeedbackCapacity],
    snr_db: &Axis,
    exec: Execution,
) -> Result<Vec<GaussRateRow>> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    if !GaussRegime::of_alpha(alpha).has_scheme() {
        return Err(Error::UnsupportedRegime(format!(
            "alpha = {alpha} has no lattice scheme (covered: alpha <= 2/3 and alpha >= 2)"
        )));
    }
    let points: Vec<(f64, FeedbackCapacity)> = snr_db
        .values()
        .into_iter()
        .flat_map(|s| cfbs.iter().map(move |c| (s, *c)))
        .collect();
    exec.try_map(&points, |&(db, c_fb)| {
        let params = GaussParams::from_db(db, alpha * db, c_fb, k_users)?;
        let report = bounds_report(&params, false)?;
        Ok(GaussRateRow {
            snr_db: db,
            cfb: c_fb,
            rate_bits: report.achievable.rate(),
            ub_bits: report.ub_conjectured,
            gap_bits: report.gap(),
            regime: report.regime.label(),
        })
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GdofRow {
    pub alpha: f64,
    pub beta: String,
    pub gdof: Option<f64>,
}

impl Table for GdofRow {
    const HEADER: &'static [&'static str] = &["alpha", "beta", "gdof"];
    fn cells(&self) -> Vec<String> {
        vec![fmt_num(self.alpha), self.beta.clone(), fmt_opt(self.gdof)]
    }
}

/// GDoF lower bound against `alpha`, one curve per feedback level; `NA` at
/// `alpha = 1`.
pub fn sweep_gdof(betas: &[BetaLevel], alpha: &Axis, exec: Execution) -> Result<Vec<GdofRow>> {
    let points: Vec<(f64, &BetaLevel)> = betas
        .iter()
        .flat_map(|b| alpha.values().into_iter().map(move |a| (a, b)))
        .collect();
    exec.try_map(&points, |&(a, beta)| {
        let gdof = match gdof_lower(a, beta.value()) {
            Ok(g) => Some(g),
            Err(Error::NotWellDefined(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(GdofRow {
            alpha: a,
            beta: beta.label(),
            gdof,
        })
    })
}
