//! Closed-form symmetric rates of the deterministic channel.
//!
//! At a boundary between two pieces the first listed piece wins; the
//! neighbouring pieces agree there anyway.

use super::params::{DetParams, RationalRate};
use crate::error::Result;

fn r(num: usize, den: usize) -> RationalRate {
    RationalRate::new(num as i64, den as i64)
}

/// Achievable symmetric rate with `p2/2` bits of feedback per use.
pub fn theorem1_rate(params: &DetParams) -> Result<RationalRate> {
    params.require_direct_link()?;
    let DetParams { n, m, p2, k_users } = *params;
    let fb = r(p2, 2);
    let half_m = r(m, 2);
    let n_r = r(n, 1);
    let rate = if 2 * m <= n {
        (r(n - m, 1) + fb).min(n_r - half_m)
    } else if 3 * m <= 2 * n {
        (r(m, 1) + fb).min(n_r - half_m)
    } else if m < n {
        n_r - half_m
    } else if m == n {
        r(n, k_users)
    } else if m <= 2 * n {
        half_m
    } else {
        (n_r + fb).min(half_m)
    };
    Ok(rate)
}

/// Symmetric capacity with unlimited feedback.
pub fn csym_infinite(params: &DetParams) -> Result<RationalRate> {
    params.require_direct_link()?;
    let DetParams { n, m, k_users, .. } = *params;
    Ok(if m < n {
        r(n, 1) - r(m, 2)
    } else if m == n {
        r(n, k_users)
    } else {
        r(m, 2)
    })
}

/// Symmetric capacity without feedback.
pub fn csym_zero(params: &DetParams) -> Result<RationalRate> {
    params.require_direct_link()?;
    let DetParams { n, m, k_users, .. } = *params;
    Ok(if 2 * m <= n {
        r(n - m, 1)
    } else if 3 * m <= 2 * n {
        r(m, 1)
    } else if m < n {
        r(n, 1) - r(m, 2)
    } else if m == n {
        r(n, k_users)
    } else if m <= 2 * n {
        r(m, 2)
    } else {
        r(n, 1)
    })
}
