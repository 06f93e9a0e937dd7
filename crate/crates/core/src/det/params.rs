use std::fmt;
use std::ops::{Add, Div, Sub};

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rate in bits per channel use, always in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalRate(Ratio<i64>);

impl RationalRate {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        RationalRate(Ratio::new(num, den))
    }

    pub fn integer(v: i64) -> Self {
        RationalRate(Ratio::from_integer(v))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }
}

impl From<Ratio<i64>> for RationalRate {
    fn from(r: Ratio<i64>) -> Self {
        RationalRate(r)
    }
}

impl Add for RationalRate {
    type Output = RationalRate;
    fn add(self, rhs: Self) -> Self {
        RationalRate(self.0 + rhs.0)
    }
}

impl Sub for RationalRate {
    type Output = RationalRate;
    fn sub(self, rhs: Self) -> Self {
        RationalRate(self.0 - rhs.0)
    }
}

impl Div<i64> for RationalRate {
    type Output = RationalRate;
    fn div(self, rhs: i64) -> Self {
        RationalRate(self.0 / rhs)
    }
}

/// `7/2`, or just `4` for integers.
impl fmt::Display for RationalRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RationalRate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One instance of the symmetric deterministic channel.
///
/// `p2` is twice the per-use feedback rate, i.e. the feedback budget in
/// bits over one two-slot block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DetParams {
    pub n: usize,
    pub m: usize,
    pub p2: usize,
    pub k_users: usize,
}

impl DetParams {
    pub fn new(n: usize, m: usize, p2: usize, k_users: usize) -> Result<Self> {
        if k_users < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 users, got {k_users}")));
        }
        Ok(DetParams { n, m, p2, k_users })
    }

    /// Number of signal levels, `max(m, n)`.
    pub fn q(&self) -> usize {
        self.n.max(self.m)
    }

    /// `m / n`, undefined for `n = 0`.
    pub fn alpha(&self) -> Option<Ratio<i64>> {
        (self.n > 0).then(|| Ratio::new(self.m as i64, self.n as i64))
    }

    /// `p / n = p2 / (2n)`, undefined for `n = 0`.
    pub fn beta(&self) -> Option<Ratio<i64>> {
        (self.n > 0).then(|| Ratio::new(self.p2 as i64, 2 * self.n as i64))
    }

    pub(crate) fn require_direct_link(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Degenerate(format!(
                "n = 0 (m = {}): interference level m/n is undefined",
                self.m
            )));
        }
        Ok(())
    }
}
