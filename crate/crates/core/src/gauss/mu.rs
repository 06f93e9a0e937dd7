//! Layer power weights and the default choice per regime.

use serde::Serialize;

use super::params::{GaussParams, GaussRegime};
use crate::error::{Error, Result};

/// Relative tolerance for the alignment condition between two layers.
pub const ALIGN_TOL: f64 = 1e-9;

/// Regimes with a lattice scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SchemeKind {
    VeryWeak,
    Weak,
    Strong,
}

impl SchemeKind {
    pub fn of(regime: GaussRegime) -> Option<Self> {
        match regime {
            GaussRegime::VeryWeak => Some(SchemeKind::VeryWeak),
            GaussRegime::Weak => Some(SchemeKind::Weak),
            GaussRegime::Strong => Some(SchemeKind::Strong),
            _ => None,
        }
    }

    pub fn layers(&self) -> usize {
        match self {
            SchemeKind::VeryWeak => 4,
            SchemeKind::Weak => 6,
            SchemeKind::Strong => 3,
        }
    }
}

/// Layer weights `mu[0] ..`; layer `i` in the text is `mu[i - 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuAlloc {
    pub kind: SchemeKind,
    pub mu: Vec<f64>,
}

impl MuAlloc {
    pub fn new(kind: SchemeKind, mu: Vec<f64>) -> Result<Self> {
        if mu.len() != kind.layers() {
            return Err(Error::InvalidAllocation(format!(
                "{kind:?} scheme takes {} weights, got {}",
                kind.layers(),
                mu.len()
            )));
        }
        Ok(MuAlloc { kind, mu })
    }

    /// Checks signs, the alignment condition and that both rounds carry power.
    pub fn validate(&self, params: &GaussParams) -> Result<()> {
        if self.mu.len() != self.kind.layers() {
            return Err(Error::InvalidAllocation(format!(
                "wrong number of weights: {}",
                self.mu.len()
            )));
        }
        if let Some(bad) = self.mu.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidAllocation(format!(
                "weight {bad} is not a nonnegative number"
            )));
        }
        let mu = &self.mu;
        let (s, i) = (params.snr, params.inr);
        // (layer aligned at the receiver, layer it aligns with)
        let aligned = match self.kind {
            SchemeKind::VeryWeak => Some((s * mu[2], i * mu[0])),
            SchemeKind::Weak => Some((s * mu[2], i * mu[1])),
            SchemeKind::Strong => None,
        };
        if let Some((lhs, rhs)) = aligned {
            if (lhs - rhs).abs() > ALIGN_TOL * lhs.max(rhs) {
                return Err(Error::InvalidAllocation(format!(
                    "aligned layers need equal received power: {lhs} vs {rhs}"
                )));
            }
        }
        let (first, second) = match self.kind {
            SchemeKind::VeryWeak => (mu[0] + mu[1] + mu[2], mu[0] + mu[3]),
            SchemeKind::Weak => (mu[0] + mu[1] + mu[2] + mu[3], mu[1] + mu[4] + mu[5]),
            SchemeKind::Strong => (mu[0] + mu[1], mu[1] + mu[2]),
        };
        if first <= 0.0 || second <= 0.0 {
            return Err(Error::InvalidAllocation(format!(
                "round {} carries no power",
                if first <= 0.0 { 1 } else { 2 }
            )));
        }
        Ok(())
    }
}

fn require(params: &GaussParams, kind: SchemeKind) -> Result<()> {
    if SchemeKind::of(params.regime()) != Some(kind) {
        return Err(Error::UnsupportedRegime(format!(
            "alpha = {:.6} is outside the {kind:?} scheme",
            params.alpha()
        )));
    }
    Ok(())
}

fn checked(kind: SchemeKind, mu: Vec<f64>) -> Result<MuAlloc> {
    if let Some(bad) = mu.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::InfeasibleParameters(format!("default weights include {bad}")));
    }
    MuAlloc::new(kind, mu)
}

pub fn default_mu_very_weak(params: &GaussParams) -> Result<MuAlloc> {
    require(params, SchemeKind::VeryWeak)?;
    let (s, i) = (params.snr, params.inr);
    let lifted = params.c_fb.min_pow(i - 1.0);
    let mu1 = lifted / (2.0 * i);
    let mu2 = 1.0 / i - lifted / (2.0 * s);
    let mu3 = i * mu1 / s;
    let mu4 = 1.0 / i;
    checked(SchemeKind::VeryWeak, vec![mu1, mu2, mu3, mu4])
}

pub fn default_mu_weak(params: &GaussParams) -> Result<MuAlloc> {
    require(params, SchemeKind::Weak)?;
    let (s, i) = (params.snr, params.inr);
    let x = params.c_fb.max_inv_pow(i.powi(3) / (s * s));
    let mu4 = x / (4.0 * i);
    let mu3 = 1.0 / (3.0 * i) - x / (4.0 * i);
    let mu6 = mu3;
    let mu2 = s * mu3 / i;
    let mu1 = 1.0 - mu2 - mu3 - mu4;
    let mu5 = 1.0 - mu2 - mu6;
    checked(SchemeKind::Weak, vec![mu1, mu2, mu3, mu4, mu5, mu6])
}

pub fn default_mu_strong(params: &GaussParams) -> Result<MuAlloc> {
    require(params, SchemeKind::Strong)?;
    let (s, i) = (params.snr, params.inr);
    let mu2 = s / (2.0 * i) * params.c_fb.min_pow(i / (s * s));
    checked(SchemeKind::Strong, vec![1.0 - mu2, mu2, 1.0 - mu2])
}

/// Default weights for whichever scheme covers `params`.
pub fn default_mu(params: &GaussParams) -> Result<MuAlloc> {
    match SchemeKind::of(params.regime()) {
        Some(SchemeKind::VeryWeak) => default_mu_very_weak(params),
        Some(SchemeKind::Weak) => default_mu_weak(params),
        Some(SchemeKind::Strong) => default_mu_strong(params),
        None => Err(Error::UnsupportedRegime(format!(
            "no lattice scheme for alpha = {:.6} (covered: alpha <= 2/3 and alpha >= 2)",
            params.alpha()
        ))),
    }
}
