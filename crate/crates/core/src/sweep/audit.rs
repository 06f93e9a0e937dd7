use serde::Serialize;

use super::format::{fmt_num, fmt_opt, Table};
use super::gauss::fmt_cfb;
use crate::error::Result;
use crate::exec::Execution;
use crate::gauss::{bounds_report, FeedbackCapacity, GaussParams};

/// Pass/fail slack on every gap comparison.
pub const GAP_TOL: f64 = 1e-9;

/// Cartesian grid for [`gap_audit`]; `INR = SNR^alpha`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditGrid {
    pub snr_db: Vec<f64>,
    pub alphas: Vec<f64>,
    pub cfbs: Vec<FeedbackCapacity>,
    pub k_users: Vec<usize>,
}

impl Default for AuditGrid {
    fn default() -> Self {
        AuditGrid {
            snr_db: (1..=6).map(|j| 10.0 * j as f64).collect(),
            alphas: default_alphas(),
            cfbs: [0.0, 1.0, 2.0, 4.0]
                .into_iter()
                .map(FeedbackCapacity::Finite)
                .chain([FeedbackCapacity::Unbounded])
                .collect(),
            k_users: vec![2, 3, 4],
        }
    }
}

/// Interference levels covered by the lattice schemes, both regime edges
/// included.
pub fn default_alphas() -> Vec<f64> {
    vec![0.25, 0.5, 7.0 / 12.0, 2.0 / 3.0, 2.0, 2.5, 4.0]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub snr_db: f64,
    pub inr_db: f64,
    pub cfb: FeedbackCapacity,
    pub k: usize,
    pub regime: &'static str,
    pub rate: Option<f64>,
    pub ub: f64,
    pub gap: Option<f64>,
    pub regime_const: Option<f64>,
    #[serde(rename = "L")]
    pub l: f64,
    pub pass_regime: Option<bool>,
    #[serde(rename = "pass_L")]
    pub pass_l: Option<bool>,
}

impl Table for AuditRow {
    const HEADER: &'static [&'static str] = &[
        "snr_db",
        "inr_db",
        "cfb",
        "k",
        "regime",
        "rate",
        "ub",
        "gap",
        "regime_const",
        "L",
        "pass_regime",
        "pass_L",
    ];
    fn cells(&self) -> Vec<String> {
        let flag = |b: Option<bool>| b.map_or_else(|| super::format::NA.to_string(), |b| b.to_string());
        vec![
            fmt_num(self.snr_db),
            fmt_num(self.inr_db),
            fmt_cfb(&self.cfb),
            self.k.to_string(),
            self.regime.to_string(),
            fmt_opt(self.rate),
            fmt_num(self.ub),
            fmt_opt(self.gap),
            fmt_opt(self.regime_const),
            fmt_num(self.l),
            flag(self.pass_regime),
            flag(self.pass_l),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditSummary {
    pub points: usize,
    pub failures_regime: usize,
    #[serde(rename = "failures_L")]
    pub failures_l: usize,
    pub max_gap: f64,
}

/// Audits one instance with the default weights.
pub fn audit_point(params: &GaussParams, snr_db: f64, inr_db: f64) -> Result<AuditRow> {
    let report = bounds_report(params, false)?;
    let gap = report.gap();
    let l = report.global_gap_l;
    Ok(AuditRow {
        snr_db,
        inr_db,
        cfb: params.c_fb,
        k: params.k_users,
        regime: report.regime.label(),
        rate: report.achievable.rate(),
        ub: report.ub_conjectured,
        gap,
        regime_const: report.regime_gap_const,
        l,
        pass_regime: gap.zip(report.regime_gap_const).map(|(g, c)| g <= c + GAP_TOL),
        pass_l: gap.map(|g| g <= l + GAP_TOL && report.regime_gap_const.is_none_or(|c| c <= l + GAP_TOL)),
    })
}

/// Gap between the conjectured bound and the default-weight rate on every
/// grid point, with pass flags against the regime constant and `L`.
pub fn gap_audit(grid: &AuditGrid, exec: Execution) -> Result<(Vec<AuditRow>, AuditSummary)> {
    let mut points = Vec::new();
    for &k in &grid.k_users {
        for &snr_db in &grid.snr_db {
            for &alpha in &grid.alphas {
                for &c in &grid.cfbs {
                    points.push((k, snr_db, alpha, c));
                }
            }
        }
    }
    let rows = exec.try_map(&points, |&(k, snr_db, alpha, c)| {
        let inr_db = alpha * snr_db;
        let params = GaussParams::from_db(snr_db, inr_db, c, k)?;
        audit_point(&params, snr_db, inr_db)
    })?;
    let summary = summarize(&rows);
    Ok((rows, summary))
}

pub fn summarize(rows: &[AuditRow]) -> AuditSummary {
    let audited: Vec<&AuditRow> = rows.iter().filter(|r| r.gap.is_some()).collect();
    AuditSummary {
        points: audited.len(),
        failures_regime: audited.iter().filter(|r| r.pass_regime == Some(false)).count(),
        failures_l: audited.iter().filter(|r| r.pass_l == Some(false)).count(),
        max_gap: audited.iter().filter_map(|r| r.gap).fold(f64::NEG_INFINITY, f64::max),
    }
}
