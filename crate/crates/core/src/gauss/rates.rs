//! Achievable rates of the two-round lattice schemes.
//!
//! Every layer rate is the smallest of its decoding constraints, each of the
//! form `log2(signal / (interference + noise))` with all powers scaled by the
//! layer weights. A ratio at or below one gives a zero-rate layer.

use serde::Serialize;

use super::mu::{MuAlloc, SchemeKind};
use super::params::GaussParams;
use crate::error::{Error, Result};

/// Which kind of decoding step limits a layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Binding {
    /// Own layer decoded directly, rest treated as noise.
    Direct,
    /// Sum of the other users' copies of the layer decoded as one lattice point.
    CrossSum,
    /// Own layer decoded inside an aligned lattice sum.
    Aligned,
    /// Forwarded interference sum decoded in round two.
    Relay,
    /// Feedback link budget.
    FeedbackCap,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateBreakdown {
    /// Rate of each layer in bits per two channel uses.
    pub per_message: Vec<f64>,
    pub binding: Vec<Binding>,
    /// Half the sum of the layer rates.
    pub r_sym: f64,
}

/// `log2(num / den)` floored at zero; a nonpositive side also gives zero.
pub(crate) fn log_ratio(num: f64, den: f64, refined: bool) -> f64 {
    if num <= 0.0 || den <= 0.0 {
        return 0.0;
    }
    let x = num / den;
    if refined {
        (1.0 + x).log2()
    } else {
        x.log2().max(0.0)
    }
}

struct Layer {
    rate: f64,
    binding: Binding,
}

impl Layer {
    fn new() -> Self {
        Layer {
            rate: f64::INFINITY,
            binding: Binding::Direct,
        }
    }

    fn bound(mut self, binding: Binding, rate: f64) -> Self {
        if rate < self.rate {
            self.rate = rate;
            self.binding = binding;
        }
        self
    }

    fn cap(self, params: &GaussParams) -> Self {
        let (rate, capped) = params.c_fb.cap_two_uses(self.rate);
        if capped {
            Layer {
                rate,
                binding: Binding::FeedbackCap,
            }
        } else {
            self
        }
    }
}

fn finish(layers: Vec<Layer>) -> RateBreakdown {
    let per_message: Vec<f64> = layers.iter().map(|l| l.rate).collect();
    let r_sym = per_message.iter().sum::<f64>() / 2.0;
    RateBreakdown {
        binding: layers.iter().map(|l| l.binding).collect(),
        per_message,
        r_sym,
    }
}

fn prepare(params: &GaussParams, mu: &MuAlloc, kind: SchemeKind) -> Result<()> {
    if mu.kind != kind {
        return Err(Error::InvalidAllocation(format!(
            "{:?} weights given to the {kind:?} scheme",
            mu.kind
        )));
    }
    if SchemeKind::of(params.regime()) != Some(kind) {
        return Err(Error::UnsupportedRegime(format!(
            "alpha = {:.6} is outside the {kind:?} scheme",
            params.alpha()
        )));
    }
    mu.validate(params)
}

/// Factor of the round-two relay signal: direct copy scaled by `1/(K-1)`
/// plus `K-2` cross copies.
fn relay_gain(s: f64, i: f64, k: f64) -> f64 {
    (s.sqrt() / (k - 1.0) + i.sqrt() * (k - 2.0) / (k - 1.0)).powi(2)
}

/// `alpha <= 1/2`: four layers, layer 1 is relayed through feedback and
/// aligned with layer 3 at the other receivers.
///
/// `refined` lets the directly decoded layers 2 and 4 use Gaussian
/// codebooks, i.e. `log(1 + x)` instead of `log(x)`.
pub fn rate_very_weak(params: &GaussParams, mu: &MuAlloc, refined: bool) -> Result<RateBreakdown> {
    prepare(params, mu, SchemeKind::VeryWeak)?;
    let (s, i, k) = (params.snr, params.inr, params.k_users as f64);
    let m = &mu.mu;
    let (m1, m2, m3, m4) = (m[0], m[1], m[2], m[3]);
    let r1_sum = m1 + m2 + m3;
    let r2_sum = m1 + m4;

    let r1 = Layer::new()
        .bound(
            Binding::Direct,
            log_ratio(s * m1, s * (m2 + m3) + i * r1_sum * (k - 1.0) + r1_sum, false),
        )
        .bound(
            Binding::CrossSum,
            log_ratio(i * m1, i * (m2 + m3) * (k - 1.0) + r1_sum, false),
        )
        .cap(params)
        .bound(
            Binding::Relay,
            log_ratio(relay_gain(s, i, k) * m1, s * m4 + i * m4 * (k - 1.0) + r2_sum, false),
        );
    let r2 = Layer::new().bound(
        Binding::Direct,
        log_ratio(s * m2, s * m3 + i * r1_sum * (k - 1.0) + r1_sum, refined),
    );
    let r3 = Layer::new()
        .bound(
            Binding::Aligned,
            log_ratio(s * m3, i * (m2 + m3) * (k - 1.0) + r1_sum, false),
        )
        .cap(params);
    let r4 = Layer::new().bound(Binding::Direct, log_ratio(s * m4, i * m4 * (k - 1.0) + r2_sum, refined));
    Ok(finish(vec![r1, r2, r3, r4]))
}

/// `1/2 < alpha <= 2/3`: six layers; layer 2 is relayed, layer 3 aligns
/// with it, layers 5 and 6 are fresh in round two.
///
/// `refined` upgrades the directly decoded layers 4 and 6.
pub fn rate_weak(params: &GaussParams, mu: &MuAlloc, refined: bool) -> Result<RateBreakdown> {
    prepare(params, mu, SchemeKind::Weak)?;
    let (s, i, k) = (params.snr, params.inr, params.k_users as f64);
    let m = &mu.mu;
    let (m1, m2, m3, m4, m5, m6) = (m[0], m[1], m[2], m[3], m[4], m[5]);
    let first = m1 + m2 + m3 + m4;
    let second = m2 + m5 + m6;

    let r1 = Layer::new()
        .bound(
            Binding::Direct,
            log_ratio(s * m1, s * (m2 + m3 + m4) + i * first * (k - 1.0) + first, false),
        )
        .bound(
            Binding::CrossSum,
            log_ratio(i * m1, s * (m3 + m4) + i * (m2 + m3 + m4) * (k - 1.0) + first, false),
        );
    let r2 = Layer::new()
        .bound(
            Binding::Direct,
            log_ratio(s * m2, s * (m3 + m4) + i * first * (k - 1.0) + first, false),
        )
        .bound(
            Binding::Aligned,
            log_ratio(i * m2, s * m4 + i * (m3 + m4) * (k - 1.0) + first, false),
        )
        .cap(params)
        .bound(
            Binding::Relay,
            log_ratio(
                relay_gain(s, i, k) * m2,
                s * m6 + i * (m5 + m6) * (k - 1.0) + second,
                false,
            ),
        );
    let r3 = Layer::new()
        .bound(
            Binding::Aligned,
            log_ratio(s * m3, s * m4 + i * (m3 + m4) * (k - 1.0) + first, false),
        )
        .cap(params);
    let r4 = Layer::new().bound(
        Binding::Direct,
        log_ratio(s * m4, i * (m3 + m4) * (k - 1.0) + first, refined),
    );
    let r5 = Layer::new()
        .bound(
            Binding::Direct,
            log_ratio(s * m5, s * (m2 + m6) + i * second * (k - 1.0) + second - i * m2, false),
        )
        .bound(
            Binding::CrossSum,
            log_ratio(i * m5, s * m6 + i * m6 * (k - 1.0) + second, false),
        );
    let r6 = Layer::new().bound(Binding::Direct, log_ratio(s * m6, i * m6 * (k - 1.0) + second, refined));
    Ok(finish(vec![r1, r2, r3, r4, r5, r6]))
}

/// `alpha >= 2`: three layers; the receiver feeds back the lattice sum of
/// the other users' layer 2 and round two carries it with layer 3.
///
/// `refined` upgrades the final direct decoding of layer 3.
pub fn rate_strong(params: &GaussParams, mu: &MuAlloc, refined: bool) -> Result<RateBreakdown> {
    prepare(params, mu, SchemeKind::Strong)?;
    let (s, i, k) = (params.snr, params.inr, params.k_users as f64);
    let m = &mu.mu;
    let (m1, m2, m3) = (m[0], m[1], m[2]);
    let first = m1 + m2;
    let second = m2 + m3;

    let r1 = Layer::new()
        .bound(
            Binding::CrossSum,
            log_ratio(i * m1, s * first + i * m2 * (k - 1.0) + first, false),
        )
        .bound(Binding::Direct, log_ratio(s * m1, s * m2 + first, false));
    let r2 = Layer::new()
        .bound(Binding::CrossSum, log_ratio(i * m2, s * first + first, false))
        .cap(params)
        .bound(Binding::Relay, log_ratio(i * m2, s * m3 + second, false));
    let r3 = Layer::new()
        .bound(Binding::CrossSum, log_ratio(i * m3, i * m2 + s * m3 + second, false))
        .bound(Binding::Direct, log_ratio(s * m3, second, refined));
    Ok(finish(vec![r1, r2, r3]))
}

/// Dispatches on the weights' scheme.
pub fn rate_for(params: &GaussParams, mu: &MuAlloc, refined: bool) -> Result<RateBreakdown> {
    match mu.kind {
        SchemeKind::VeryWeak => rate_very_weak(params, mu, refined),
        SchemeKind::Weak => rate_weak(params, mu, refined),
        SchemeKind::Strong => rate_strong(params, mu, refined),
    }
}

/// Rate with the default weights of the regime `params` falls in.
pub fn rate_default(params: &GaussParams, refined: bool) -> Result<(MuAlloc, RateBreakdown)> {
    let mu = super::mu::default_mu(params)?;
    let rate = rate_for(params, &mu, refined)?;
    Ok((mu, rate))
}
