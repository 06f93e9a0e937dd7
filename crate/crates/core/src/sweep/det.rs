use num_rational::Ratio;
use serde::Serialize;

use super::format::{fmt_num, Table};
use super::BetaLevel;
use crate::det::{csym_infinite, theorem1_rate, DetParams};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Sampling of the interference level for the deterministic sweep.
///
/// `alpha = j / alpha_den` for `j = 0 ..= alpha_max * alpha_den`, evaluated at
/// `n = n_base` so that every sample is an exact integer `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DetAlphaGrid {
    pub n_base: usize,
    pub alpha_den: usize,
    pub alpha_max: usize,
}

impl Default for DetAlphaGrid {
    fn default() -> Self {
        DetAlphaGrid {
            n_base: 840,
            alpha_den: 120,
            alpha_max: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetRateRow {
    pub alpha_num: i64,
    pub alpha_den: i64,
    pub beta: String,
    pub rate_norm: f64,
    pub rate_norm_frac: String,
    pub regime: &'static str,
}

impl Table for DetRateRow {
    const HEADER: &'static [&'static str] = &["alpha_num", "alpha_den", "beta", "rate_norm", "rate_norm_frac"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.alpha_num.to_string(),
            self.alpha_den.to_string(),
            self.beta.clone(),
            fmt_num(self.rate_norm),
            self.rate_norm_frac.clone(),
        ]
    }
}

fn regime_label(n: usize, m: usize) -> &'static str {
    if 2 * m <= n {
        "very-weak"
    } else if 3 * m <= 2 * n {
        "weak"
    } else if m < n {
        "middle-weak"
    } else if m == n {
        "unit"
    } else if m < 2 * n {
        "middle-strong"
    } else {
        "strong"
    }
}

/// Normalized deterministic rate `R / n` against `alpha`, one curve per
/// feedback level.
pub fn sweep_det_alpha(
    betas: &[BetaLevel],
    grid: &DetAlphaGrid,
    k_users: usize,
    exec: Execution,
) -> Result<Vec<DetRateRow>> {
    let DetAlphaGrid {
        n_base,
        alpha_den,
        alpha_max,
    } = *grid;
    if n_base == 0 || alpha_den == 0 || n_base % alpha_den != 0 {
        return Err(Error::InvalidArgument(format!(
            "n_base = {n_base} must be a positive multiple of the alpha denominator {alpha_den}"
        )));
    }
    let step_m = n_base / alpha_den;
    let mut points = Vec::new();
    for beta in betas {
        let p2 = match beta {
            BetaLevel::Finite(b) => {
                let p2 = 2.0 * b * n_base as f64;
                if !(p2 >= 0.0 && (p2 - p2.round()).abs() < 1e-9) {
                    return Err(Error::InvalidArgument(format!(
                        "beta = {b} needs 2*beta*{n_base} to be a nonnegative integer"
                    )));
                }
                Some(p2.round() as usize)
            }
            BetaLevel::Unbounded => None,
        };
        for j in 0..=alpha_max * alpha_den {
            points.push((beta.clone(), p2, j));
        }
    }
    exec.try_map(&points, |(beta, p2, j)| {
        let m = j * step_m;
        let params = DetParams::new(n_base, m, p2.unwrap_or(0), k_users)?;
        let rate = match p2 {
            Some(_) => theorem1_rate(&params)?,
            None => csym_infinite(&params)?,
        };
        let norm = rate / n_base as i64;
        let alpha = Ratio::new(*j as i64, alpha_den as i64);
        Ok(DetRateRow {
            alpha_num: *alpha.numer(),
            alpha_den: *alpha.denom(),
            beta: beta.label(),
            rate_norm: norm.to_f64(),
            rate_norm_frac: format!("{}/{}", norm.num(), norm.den()),
            regime: regime_label(n_base, m),
        })
    })
}
