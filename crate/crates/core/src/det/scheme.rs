//! Two-round feedback schemes for the deterministic channel.
//!
//! A block spans two channel uses. In round one every user sends fresh
//! bits; each receiver returns a few of the mixed levels it saw over the
//! feedback link; in round two every transmitter re-sends the interference
//! sum it learned on levels where the other receivers can strip it off,
//! alongside more fresh bits.
//!
//! All level numbers below are 1-based from the top.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::channel::channel_apply;
use super::gf2::Gf2Vec;
use super::gf4::{zero_sum_coefficients, Gf4};
use super::params::{DetParams, RationalRate};
use crate::error::{Error, Result};

/// Which construction covers an interference level `m/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SchemeRegime {
    /// `m/n <= 1/2`
    VeryWeak,
    /// `1/2 < m/n <= 2/3`
    Weak,
    /// `m/n >= 2`
    VeryStrong,
}

/// How the round-two interference sums are laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Forwarding {
    /// Each transmitter sends its learned sum as is, one bit per level.
    Mod2,
    /// Strong regime, odd K. Each transmitter scales pairs of bits by its own
    /// GF(4) coefficient so the receiver can undo the sum of the others.
    Gf4,
    /// As `Gf4`, but the leftover odd bit is paired with the matching bit of
    /// a second block because no spare level exists.
    Gf4Paired,
}

/// Level budget of a scheme for one parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchemePlan {
    pub regime: SchemeRegime,
    /// Levels left unused because feedback is too scarce (`l`, `l'`, `l''`).
    pub truncation: usize,
    /// Feedback bits per user per block.
    pub feedback_bits: usize,
    pub payload_bits: usize,
    pub forwarding: Forwarding,
}

impl SchemePlan {
    pub fn needs_pairing(&self) -> bool {
        self.forwarding == Forwarding::Gf4Paired
    }

    /// Blocks scheduled together: 2 when paired, else 1.
    pub fn frame_len(&self) -> usize {
        if self.needs_pairing() {
            2
        } else {
            1
        }
    }
}

/// Seed metadata of a randomly drawn block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSeed {
    pub seed: u64,
    pub block: u64,
}

/// Everything that happened in one two-round block.
#[derive(Clone, Debug, Serialize)]
pub struct DetBlockTrace {
    pub params: DetParams,
    pub regime: SchemeRegime,
    pub forwarding: Forwarding,
    pub seed: Option<BlockSeed>,
    pub payload: Vec<Vec<bool>>,
    pub tx_round1: Vec<Gf2Vec>,
    pub tx_round2: Vec<Gf2Vec>,
    pub rx_round1: Vec<Gf2Vec>,
    pub rx_round2: Vec<Gf2Vec>,
    pub fb_bits: Vec<Vec<bool>>,
    pub decoded: Vec<Vec<bool>>,
    /// `interference_sums[i][j]` is the XOR of bit `j` over all users but `i`.
    pub interference_sums: Vec<Vec<bool>>,
}

impl DetBlockTrace {
    pub fn is_success(&self) -> bool {
        self.decoded == self.payload
    }
}

pub fn scheme_regime(params: &DetParams) -> Result<SchemeRegime> {
    params.require_direct_link()?;
    let (n, m) = (params.n, params.m);
    if 2 * m <= n {
        Ok(SchemeRegime::VeryWeak)
    } else if 3 * m <= 2 * n {
        Ok(SchemeRegime::Weak)
    } else if m >= 2 * n {
        Ok(SchemeRegime::VeryStrong)
    } else {
        Err(Error::UnsupportedRegime(format!(
            "no two-round scheme for m/n = {m}/{n}; only the rate formulas cover 2/3 < m/n < 2"
        )))
    }
}

pub fn scheme_plan(params: &DetParams) -> Result<SchemePlan> {
    let regime = scheme_regime(params)?;
    let DetParams { n, m, p2, k_users } = *params;
    // Levels that could carry feedback-assisted bits, before the budget.
    let wanted = match regime {
        SchemeRegime::VeryWeak => m,
        SchemeRegime::Weak => 2 * n - 3 * m,
        SchemeRegime::VeryStrong => m - 2 * n,
    };
    let feedback_bits = wanted.min(p2);
    let truncation = wanted - feedback_bits;
    let payload_bits = match regime {
        SchemeRegime::VeryWeak | SchemeRegime::Weak => 2 * n - m - truncation,
        SchemeRegime::VeryStrong => m - truncation,
    };
    let forwarding = if regime == SchemeRegime::VeryStrong && k_users % 2 == 1 && feedback_bits > 0 {
        if feedback_bits % 2 == 1 && truncation == 0 {
            Forwarding::Gf4Paired
        } else {
            Forwarding::Gf4
        }
    } else {
        Forwarding::Mod2
    };
    Ok(SchemePlan {
        regime,
        truncation,
        feedback_bits,
        payload_bits,
        forwarding,
    })
}

/// Bits per user per channel use carried by the scheme.
pub fn scheme_rate(params: &DetParams) -> Result<RationalRate> {
    let plan = scheme_plan(params)?;
    Ok(RationalRate::new(plan.payload_bits as i64, 2))
}

/// Draws one block's payload.
pub fn random_payload<R: Rng>(params: &DetParams, rng: &mut R) -> Result<Vec<Vec<bool>>> {
    let bits = scheme_plan(params)?.payload_bits;
    Ok((0..params.k_users)
        .map(|_| (0..bits).map(|_| rng.gen()).collect())
        .collect())
}

pub(crate) fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs one block with the given payload (`payload[user][bit]`).
///
/// Fails with [`Error::RequiresBlockPairing`] when the plan only works with
/// two interleaved blocks; use [`run_block_pair`] then.
pub fn run_block(params: &DetParams, payload: &[Vec<bool>]) -> Result<DetBlockTrace> {
    let plan = scheme_plan(params)?;
    if plan.needs_pairing() {
        return Err(Error::RequiresBlockPairing(format!(
            "odd K = {} with an odd number of forwarded bits and no idle level; run two blocks together",
            params.k_users
        )));
    }
    Ok(run_frame(params, &plan, &[payload])?.remove(0))
}

/// Runs block 0 of `seed` with a random payload.
pub fn run_block_seeded(params: &DetParams, seed: u64) -> Result<DetBlockTrace> {
    let payload = random_payload(params, &mut block_rng(seed, 0))?;
    let mut trace = run_block(params, &payload)?;
    trace.seed = Some(BlockSeed { seed, block: 0 });
    Ok(trace)
}

/// Runs two blocks with the schedule round 1 of both, then round 2 of both.
///
/// Works for every plan; blocks only share levels when the plan needs it.
pub fn run_block_pair(params: &DetParams, first: &[Vec<bool>], second: &[Vec<bool>]) -> Result<[DetBlockTrace; 2]> {
    let plan = scheme_plan(params)?;
    let traces = if plan.needs_pairing() {
        run_frame(params, &plan, &[first, second])?
    } else {
        let mut a = run_frame(params, &plan, &[first])?;
        a.extend(run_frame(params, &plan, &[second])?);
        a
    };
    let [a, b]: [DetBlockTrace; 2] = traces.try_into().expect("two traces");
    Ok([a, b])
}

/// Runs `plan.frame_len()` blocks (or a single unpaired block).
pub(crate) fn run_frame(
    params: &DetParams,
    plan: &SchemePlan,
    payloads: &[&[Vec<bool>]],
) -> Result<Vec<DetBlockTrace>> {
    for payload in payloads {
        check_payload(params, plan, payload)?;
    }
    let rounds = match plan.regime {
        SchemeRegime::VeryWeak => vec![very_weak(params, plan, payloads[0])?],
        SchemeRegime::Weak => vec![weak(params, plan, payloads[0])?],
        SchemeRegime::VeryStrong => very_strong(params, plan, payloads)?,
    };
    rounds
        .into_iter()
        .zip(payloads)
        .map(|(r, payload)| {
            if r.fb_bits.iter().any(|fb| fb.len() > params.p2) {
                return Err(Error::SchemeBug(format!(
                    "feedback exceeds budget of {} bits",
                    params.p2
                )));
            }
            Ok(DetBlockTrace {
                params: *params,
                regime: plan.regime,
                forwarding: plan.forwarding,
                seed: None,
                payload: payload.to_vec(),
                interference_sums: interference_sums(payload),
                tx_round1: r.tx1,
                tx_round2: r.tx2,
                rx_round1: r.rx1,
                rx_round2: r.rx2,
                fb_bits: r.fb_bits,
                decoded: r.decoded,
            })
        })
        .collect()
}

fn check_payload(params: &DetParams, plan: &SchemePlan, payload: &[Vec<bool>]) -> Result<()> {
    if payload.len() != params.k_users {
        return Err(Error::Dimension {
            expected: params.k_users,
            got: payload.len(),
        });
    }
    if let Some(bad) = payload.iter().find(|a| a.len() != plan.payload_bits) {
        return Err(Error::Dimension {
            expected: plan.payload_bits,
            got: bad.len(),
        });
    }
    Ok(())
}

fn interference_sums(payload: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let bits = payload.first().map_or(0, Vec::len);
    let total: Vec<bool> = (0..bits).map(|j| payload.iter().fold(false, |s, a| s ^ a[j])).collect();
    payload
        .iter()
        .map(|a| a.iter().zip(&total).map(|(x, t)| x ^ t).collect())
        .collect()
}

struct Rounds {
    tx1: Vec<Gf2Vec>,
    rx1: Vec<Gf2Vec>,
    fb_bits: Vec<Vec<bool>>,
    tx2: Vec<Gf2Vec>,
    rx2: Vec<Gf2Vec>,
    decoded: Vec<Vec<bool>>,
}

fn odd(x: usize) -> bool {
    x % 2 == 1
}

/// Builds one transmit vector per user from a closure writing 1-based levels.
fn encode<F>(params: &DetParams, payload: &[Vec<bool>], mut f: F) -> Vec<Gf2Vec>
where
    F: FnMut(usize, &[bool], &mut Gf2Vec),
{
    payload
        .iter()
        .enumerate()
        .map(|(u, a)| {
            let mut x = Gf2Vec::zeros(params.q());
            f(u, a, &mut x);
            x
        })
        .collect()
}

// m/n <= 1/2. Cross signals land s = n - m levels lower.
//
// round 1  tx: a_1 .. a_{n-l} on levels 1 .. n-l
//          rx: levels 1..s clean, levels s+1 .. s+f hold a_{s+t} + abar_t
// feedback: those f mixed levels
// round 2  tx: abar_1 .. abar_f on levels 1..f, new bits on levels m+1..n
//          rx: levels s+1 .. s+f of the new bits also carry
//              (K-1) a_t + (K-2) abar_t, both already known
fn very_weak(params: &DetParams, plan: &SchemePlan, payload: &[Vec<bool>]) -> Result<Rounds> {
    let DetParams { n, m, k_users, .. } = *params;
    let s = n - m;
    let (l, f) = (plan.truncation, plan.feedback_bits);
    let a = |bits: &[bool], j: usize| bits[j - 1];

    let tx1 = encode(params, payload, |_, bits, x| {
        for lv in 1..=n - l {
            x.set_level(lv, a(bits, lv));
        }
    });
    let rx1 = channel_apply(&tx1, params)?;
    let fb_bits: Vec<Vec<bool>> = rx1.iter().map(|y| (1..=f).map(|t| y.level(s + t)).collect()).collect();

    let tx2 = encode(params, payload, |u, bits, x| {
        for t in 1..=f {
            x.set_level(t, fb_bits[u][t - 1] ^ a(bits, s + t));
        }
        for lv in m + 1..=n {
            x.set_level(lv, a(bits, n - l + lv - m));
        }
    });
    let rx2 = channel_apply(&tx2, params)?;

    let (own, others) = (odd(k_users - 1), odd(k_users - 2));
    let decoded = rx1
        .iter()
        .zip(&rx2)
        .map(|(y1, y2)| {
            let mut out = vec![false; plan.payload_bits];
            for j in 1..=s {
                out[j - 1] = y1.level(j);
            }
            for t in 1..=f {
                out[s + t - 1] = y1.level(s + t) ^ y2.level(t);
            }
            for lv in m + 1..=n {
                let mut bit = y2.level(lv);
                if lv > s && lv - s <= f {
                    let t = lv - s;
                    bit ^= (own & out[t - 1]) ^ (others & y2.level(t));
                }
                out[n - l + lv - m - 1] = bit;
            }
            out
        })
        .collect();
    Ok(Rounds {
        tx1,
        rx1,
        fb_bits,
        tx2,
        rx2,
        decoded,
    })
}

// 1/2 < m/n <= 2/3, s = n - m, w = 2m - n.
//
// round 1  tx: a_1 .. a_{s-l} on levels 1 .. s-l,
//              a_{s-l+1} .. a_{2s-l} on levels m+1 .. n
//          rx: 1..s-l clean; s+1..m hold abar_1 .. abar_w;
//              m+t holds a_{s-l+t} + abar_{w+t} for t <= f; the rest clean
// feedback: the f mixed levels
// round 2  tx: new bits on 1..w, abar_{w+t} on w+t, new bits on m+1..n
//          rx: level m+t additionally carries (K-1) a_{w+t} + (K-2) abar_{w+t}
fn weak(params: &DetParams, plan: &SchemePlan, payload: &[Vec<bool>]) -> Result<Rounds> {
    let DetParams { n, m, k_users, .. } = *params;
    let s = n - m;
    let w = 2 * m - n;
    let (l, f) = (plan.truncation, plan.feedback_bits);
    let a = |bits: &[bool], j: usize| bits[j - 1];

    let tx1 = encode(params, payload, |_, bits, x| {
        for lv in 1..=s - l {
            x.set_level(lv, a(bits, lv));
        }
        for lv in m + 1..=n {
            x.set_level(lv, a(bits, s - l + lv - m));
        }
    });
    let rx1 = channel_apply(&tx1, params)?;
    let fb_bits: Vec<Vec<bool>> = rx1.iter().map(|y| (1..=f).map(|t| y.level(m + t)).collect()).collect();

    let tx2 = encode(params, payload, |u, bits, x| {
        for lv in 1..=w {
            x.set_level(lv, a(bits, 2 * s - l + lv));
        }
        for t in 1..=f {
            x.set_level(w + t, fb_bits[u][t - 1] ^ a(bits, s - l + t));
        }
        for lv in m + 1..=n {
            x.set_level(lv, a(bits, n - l + lv - m));
        }
    });
    let rx2 = channel_apply(&tx2, params)?;

    let (own, others) = (odd(k_users - 1), odd(k_users - 2));
    let decoded = rx1
        .iter()
        .zip(&rx2)
        .map(|(y1, y2)| {
            let mut out = vec![false; plan.payload_bits];
            for j in 1..=s - l {
                out[j - 1] = y1.level(j);
            }
            for t in 1..=s {
                let mut bit = y1.level(m + t);
                if t <= f {
                    bit ^= y2.level(w + t);
                }
                out[s - l + t - 1] = bit;
            }
            for lv in 1..=w {
                out[2 * s - l + lv - 1] = y2.level(lv);
            }
            for lv in m + 1..=n {
                let mut bit = y2.level(lv);
                let t = lv - m;
                if t <= f {
                    bit ^= (own & out[w + t - 1]) ^ (others & y2.level(w + t));
                }
                out[n - l + t - 1] = bit;
            }
            out
        })
        .collect();
    Ok(Rounds {
        tx1,
        rx1,
        fb_bits,
        tx2,
        rx2,
        decoded,
    })
}

// m/n >= 2. q = m, own signal lands d = m - n levels lower, cross signals
// arrive unshifted.
//
// round 1  tx: a_1 .. a_{d-l} on levels 1 .. d-l
//          rx: levels 1 .. d-l hold abar; bottom n levels hold a_1 .. a_n
// feedback: abar_{n+t} from levels n+t, t <= f
// round 2  tx: new bits on levels 1..n, forwarded sums on levels n+1 ..
//          rx: bottom n levels hold the new bits, levels n+t hold the sum
//              of the other users' forwarded values
//
// With plain forwarding level n+t reads (K-1) a_{n+t} + (K-2) abar_{n+t},
// which loses a_{n+t} whenever K is odd. Then every user instead forwards
// S_t = a_{n+t} + abar_{n+t} (the same for all users) packed two bits per
// GF(4) symbol and scaled by a user coefficient c_u with sum_u c_u = 0.
// Receiver i reads sum_{j != i} c_j S = c_i S and divides by c_i.
fn very_strong(params: &DetParams, plan: &SchemePlan, payloads: &[&[Vec<bool>]]) -> Result<Vec<Rounds>> {
    let DetParams { n, m, k_users, .. } = *params;
    let d = m - n;
    let (l, f) = (plan.truncation, plan.feedback_bits);
    let a = |bits: &[bool], j: usize| bits[j - 1];
    let coeff = match plan.forwarding {
        Forwarding::Mod2 => None,
        _ => Some(zero_sum_coefficients(k_users)),
    };
    if coeff.is_none() && f > 0 && odd(k_users) {
        return Err(Error::SchemeBug("plain forwarding with odd K".into()));
    }
    let paired = plan.needs_pairing();
    if paired != (payloads.len() == 2) {
        return Err(Error::SchemeBug(format!(
            "{} blocks given for this plan",
            payloads.len()
        )));
    }

    let mut round1 = Vec::with_capacity(payloads.len());
    for payload in payloads {
        let tx1 = encode(params, payload, |_, bits, x| {
            for lv in 1..=d - l {
                x.set_level(lv, a(bits, lv));
            }
        });
        let rx1 = channel_apply(&tx1, params)?;
        let fb: Vec<Vec<bool>> = rx1.iter().map(|y| (1..=f).map(|t| y.level(n + t)).collect()).collect();
        round1.push((tx1, rx1, fb));
    }

    // Forwarded bits per block and user, levels n+1 onward.
    let mut forward: Vec<Vec<Vec<bool>>> = Vec::with_capacity(payloads.len());
    for (payload, (_, _, fb)) in payloads.iter().zip(&round1) {
        let per_user = payload
            .iter()
            .zip(fb)
            .map(|(bits, fb)| match coeff {
                None => fb.clone(),
                Some(_) => (1..=f).map(|t| a(bits, n + t) ^ fb[t - 1]).collect(),
            })
            .collect();
        forward.push(per_user);
    }
    let mut spare = vec![vec![vec![false; f + 1]; k_users]; payloads.len()];
    if let Some(c) = &coeff {
        for u in 0..k_users {
            for t in (1..=f).step_by(2) {
                if t < f {
                    for b in 0..payloads.len() {
                        let sym = Gf4::from_bits(forward[b][u][t - 1], forward[b][u][t]);
                        let y = c[u].mul(sym);
                        spare[b][u][t - 1] = y.lo();
                        spare[b][u][t] = y.hi();
                    }
                } else if paired {
                    let sym = Gf4::from_bits(forward[0][u][t - 1], forward[1][u][t - 1]);
                    let y = c[u].mul(sym);
                    spare[0][u][t - 1] = y.lo();
                    spare[1][u][t - 1] = y.hi();
                } else {
                    // lone symbol, uses the idle level n+f+1 (l >= 1)
                    let y = c[u].mul(Gf4::from_bits(forward[0][u][t - 1], false));
                    spare[0][u][t - 1] = y.lo();
                    spare[0][u][t] = y.hi();
                }
            }
        }
    } else {
        for b in 0..payloads.len() {
            for u in 0..k_users {
                spare[b][u][..f].copy_from_slice(&forward[b][u]);
            }
        }
    }
    let used = if coeff.is_some() && odd(f) && !paired { f + 1 } else { f };

    let mut round2 = Vec::with_capacity(payloads.len());
    for (b, payload) in payloads.iter().enumerate() {
        let tx2 = encode(params, payload, |u, bits, x| {
            for lv in 1..=n {
                x.set_level(lv, a(bits, d - l + lv));
            }
            for t in 1..=used {
                x.set_level(n + t, spare[b][u][t - 1]);
            }
        });
        let rx2 = channel_apply(&tx2, params)?;
        round2.push((tx2, rx2));
    }

    // Recovered sums S_t (or a_{n+t} directly) per block and receiver.
    let mut sums = vec![vec![vec![false; f]; k_users]; payloads.len()];
    for i in 0..k_users {
        match &coeff {
            None => {
                let others = odd(k_users - 2);
                for b in 0..payloads.len() {
                    for t in 1..=f {
                        let abar = round1[b].1[i].level(n + t);
                        // K even: the level reads a_{n+t}; keep S_t = a + abar
                        sums[b][i][t - 1] = round2[b].1[i].level(n + t) ^ (others & abar) ^ abar;
                    }
                }
            }
            Some(c) => {
                let inv = c[i].inv();
                for t in (1..=f).step_by(2) {
                    if t < f {
                        for b in 0..payloads.len() {
                            let y2 = &round2[b].1[i];
                            let s = inv.mul(Gf4::from_bits(y2.level(n + t), y2.level(n + t + 1)));
                            sums[b][i][t - 1] = s.lo();
                            sums[b][i][t] = s.hi();
                        }
                    } else if paired {
                        let y = Gf4::from_bits(round2[0].1[i].level(n + t), round2[1].1[i].level(n + t));
                        let s = inv.mul(y);
                        sums[0][i][t - 1] = s.lo();
                        sums[1][i][t - 1] = s.hi();
                    } else {
                        let y2 = &round2[0].1[i];
                        let s = inv.mul(Gf4::from_bits(y2.level(n + t), y2.level(n + t + 1)));
                        sums[0][i][t - 1] = s.lo();
                    }
                }
            }
        }
    }

    let mut out = Vec::with_capacity(payloads.len());
    for (b, ((tx1, rx1, fb_bits), (tx2, rx2))) in round1.into_iter().zip(round2).enumerate() {
        let decoded = (0..k_users)
            .map(|i| {
                let (y1, y2) = (&rx1[i], &rx2[i]);
                let mut bits = vec![false; plan.payload_bits];
                for j in 1..=n {
                    bits[j - 1] = y1.level(d + j);
                }
                for t in 1..=f {
                    // S_t = a + abar, or a + abar + abar = a without GF(4)
                    bits[n + t - 1] = sums[b][i][t - 1] ^ y1.level(n + t);
                }
                for lv in 1..=n {
                    bits[d - l + lv - 1] = y2.level(d + lv);
                }
                bits
            })
            .collect();
        out.push(Rounds {
            tx1,
            rx1,
            fb_bits,
            tx2,
            rx2,
            decoded,
        });
    }
    Ok(out)
}
