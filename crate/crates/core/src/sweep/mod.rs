//! Parameter sweeps and report tables.
//!
//! Every sweep returns rows in axis order whatever the execution strategy,
//! so written files are byte-identical across runs.

mod audit;
mod axis;
mod det;
mod format;
mod gauss;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use audit::{audit_point, default_alphas, gap_audit, summarize, AuditGrid, AuditRow, AuditSummary, GAP_TOL};
pub use axis::{Axis, AxisScale};
pub use det::{sweep_det_alpha, DetAlphaGrid, DetRateRow};
pub use format::{fmt_num, fmt_opt, write_csv, write_json, Table, NA, SIG_DIGITS};
pub use gauss::{sweep_gauss_snr, sweep_gdof, GaussRateRow, GdofRow};

use crate::error::{Error, Result};
use crate::gauss::FeedbackCapacity;

/// Normalized feedback level; `inf` for unlimited feedback.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum BetaLevel {
    Finite(f64),
    Unbounded,
}

impl BetaLevel {
    pub fn value(&self) -> f64 {
        match self {
            BetaLevel::Finite(b) => *b,
            BetaLevel::Unbounded => f64::INFINITY,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BetaLevel::Finite(b) => fmt_num(*b),
            BetaLevel::Unbounded => "inf".into(),
        }
    }
}

impl fmt::Display for BetaLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn parse_level(text: &str) -> Result<Option<f64>> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(None);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(Some(v)),
        _ => Err(Error::InvalidArgument(format!(
            "expected a nonnegative number or inf, got {text:?}"
        ))),
    }
}

impl FromStr for BetaLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_level(s)?.map_or(BetaLevel::Unbounded, BetaLevel::Finite))
    }
}

impl FromStr for FeedbackCapacity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_level(s)?.map_or(FeedbackCapacity::Unbounded, FeedbackCapacity::Finite))
    }
}

/// Parses a comma-separated list.
pub fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    let items: Vec<T> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|e| Error::InvalidArgument(format!("{s:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::InvalidArgument(format!("empty list {text:?}")));
    }
    Ok(items)
}

/// A sweep target and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SweepSpec {
    DetRateVsAlpha {
        betas: Vec<BetaLevel>,
        grid: DetAlphaGrid,
        k_users: usize,
    },
    GaussRateVsSnr {
        alpha: f64,
        k_users: usize,
        cfbs: Vec<FeedbackCapacity>,
        snr_db: Axis,
    },
    GdofVsAlpha {
        betas: Vec<BetaLevel>,
        alpha: Axis,
    },
    GapAudit(AuditGrid),
}

/// Rows of any sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepOutput {
    DetRate(Vec<DetRateRow>),
    GaussRate(Vec<GaussRateRow>),
    Gdof(Vec<GdofRow>),
    Audit(Vec<AuditRow>, AuditSummary),
}

impl SweepSpec {
    pub fn run(&self, exec: crate::Execution) -> Result<SweepOutput> {
        Ok(match self {
            SweepSpec::DetRateVsAlpha { betas, grid, k_users } => {
                SweepOutput::DetRate(sweep_det_alpha(betas, grid, *k_users, exec)?)
            }
            SweepSpec::GaussRateVsSnr {
                alpha,
                k_users,
                cfbs,
                snr_db,
            } => {
                if snr_db.scale != AxisScale::Db {
                    return Err(Error::InvalidArgument("the SNR axis is given in dB".into()));
                }
                SweepOutput::GaussRate(sweep_gauss_snr(*alpha, *k_users, cfbs, snr_db, exec)?)
            }
            SweepSpec::GdofVsAlpha { betas, alpha } => {
                if alpha.scale != AxisScale::Linear {
                    return Err(Error::InvalidArgument("dB scale only applies to SNR/INR axes".into()));
                }
                SweepOutput::Gdof(sweep_gdof(betas, alpha, exec)?)
            }
            SweepSpec::GapAudit(grid) => {
                let (rows, summary) = gap_audit(grid, exec)?;
                SweepOutput::Audit(rows, summary)
            }
        })
    }
}

impl SweepOutput {
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        match self {
            SweepOutput::DetRate(r) => write_csv(out, r),
            SweepOutput::GaussRate(r) => write_csv(out, r),
            SweepOutput::Gdof(r) => write_csv(out, r),
            SweepOutput::Audit(r, _) => write_csv(out, r),
        }
    }

    pub fn write_json<W: std::io::Write>(&self, out: W) -> Result<()> {
        match self {
            SweepOutput::DetRate(r) => write_json(out, r),
            SweepOutput::GaussRate(r) => write_json(out, r),
            SweepOutput::Gdof(r) => write_json(out, r),
            SweepOutput::Audit(r, _) => write_json(out, r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        let b: Vec<BetaLevel> = parse_list("0, 0.1,inf").unwrap();
        assert_eq!(
            b,
            vec![BetaLevel::Finite(0.0), BetaLevel::Finite(0.1), BetaLevel::Unbounded]
        );
        let c: Vec<FeedbackCapacity> = parse_list("2,INF").unwrap();
        assert_eq!(c, vec![FeedbackCapacity::Finite(2.0), FeedbackCapacity::Unbounded]);
        assert!(parse_list::<BetaLevel>("-1").is_err());
        assert!(parse_list::<usize>("").is_err());
    }
}
