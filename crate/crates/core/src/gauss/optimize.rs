//! Grid search over layer weights.

use serde::Serialize;

use super::mu::{default_mu, MuAlloc, SchemeKind};
use super::params::GaussParams;
use super::rates::{rate_for, RateBreakdown};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Grid shape for [`optimize_mu`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MuSearch {
    /// Multipliers per free weight (forced odd so 1 is among them).
    pub points: usize,
    /// Multipliers span `2^-span ..= 2^span` around the current best.
    pub span_log2: f64,
    /// Further passes, each halving the span around the best point so far.
    pub refine_passes: usize,
    pub refined: bool,
}

impl Default for MuSearch {
    fn default() -> Self {
        MuSearch {
            points: 7,
            span_log2: 4.0,
            refine_passes: 2,
            refined: false,
        }
    }
}

/// Indices of the weights searched; the rest follow from alignment.
fn free_weights(kind: SchemeKind) -> &'static [usize] {
    match kind {
        SchemeKind::VeryWeak => &[0, 1, 3],
        SchemeKind::Weak => &[0, 2, 3, 4, 5],
        SchemeKind::Strong => &[0, 1, 2],
    }
}

fn complete(params: &GaussParams, kind: SchemeKind, mut mu: Vec<f64>) -> Vec<f64> {
    match kind {
        SchemeKind::VeryWeak => mu[2] = params.inr * mu[0] / params.snr,
        SchemeKind::Weak => mu[1] = params.snr * mu[2] / params.inr,
        SchemeKind::Strong => {}
    }
    mu
}

/// Best weights found on a multiplicative grid around the defaults.
///
/// The default weights are always a candidate, so the result never falls
/// below them. Ties go to the earliest grid point.
pub fn optimize_mu(
    params: &GaussParams,
    kind: SchemeKind,
    search: &MuSearch,
    exec: Execution,
) -> Result<(MuAlloc, RateBreakdown)> {
    if SchemeKind::of(params.regime()) != Some(kind) {
        return Err(Error::UnsupportedRegime(format!(
            "alpha = {:.6} is outside the {kind:?} scheme",
            params.alpha()
        )));
    }
    let start = default_mu(params)?;
    let mut best = rate_for(params, &start, search.refined)
        .ok()
        .map(|r| (start.clone(), r));
    let mut center = start.mu.clone();
    let free = free_weights(kind);
    let points = search.points.max(1) | 1;

    for pass in 0..=search.refine_passes {
        let span = search.span_log2 / f64::powi(2.0, pass as i32);
        let axes: Vec<Vec<f64>> = free
            .iter()
            .map(|&w| {
                let base = if center[w] > 0.0 { center[w] } else { 1.0 / params.inr };
                let mut axis = vec![0.0];
                for j in 0..points {
                    let t = if points == 1 {
                        0.0
                    } else {
                        -span + 2.0 * span * j as f64 / (points - 1) as f64
                    };
                    axis.push(base * t.exp2());
                }
                axis
            })
            .collect();
        let total: usize = axes.iter().map(Vec::len).product();
        let idx: Vec<usize> = (0..total).collect();
        let scored = exec.map(&idx, |&flat| -> Option<f64> {
            let mu = candidate(params, kind, &center, free, &axes, flat);
            let alloc = MuAlloc { kind, mu };
            rate_for(params, &alloc, search.refined).ok().map(|r| r.r_sym)
        });
        let winner = scored.iter().enumerate().filter_map(|(i, r)| r.map(|r| (i, r))).fold(
            None::<(usize, f64)>,
            |acc, (i, r)| match acc {
                Some((_, b)) if b >= r => acc,
                _ => Some((i, r)),
            },
        );
        if let Some((flat, r)) = winner {
            if best.as_ref().is_none_or(|(_, b)| r > b.r_sym) {
                let mu = MuAlloc {
                    kind,
                    mu: candidate(params, kind, &center, free, &axes, flat),
                };
                let breakdown = rate_for(params, &mu, search.refined)?;
                center = mu.mu.clone();
                best = Some((mu, breakdown));
            }
        }
    }
    best.ok_or_else(|| Error::InfeasibleParameters("no valid weights on the search grid".into()))
}

fn candidate(
    params: &GaussParams,
    kind: SchemeKind,
    center: &[f64],
    free: &[usize],
    axes: &[Vec<f64>],
    mut flat: usize,
) -> Vec<f64> {
    let mut mu = center.to_vec();
    for (&w, axis) in free.iter().zip(axes).rev() {
        mu[w] = axis[flat % axis.len()];
        flat /= axis.len();
    }
    complete(params, kind, mu)
}
