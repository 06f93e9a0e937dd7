//! Arithmetic in GF(4) = GF(2)[w] / (w^2 + w + 1).
//!
//! Elements are stored as two bits `lo + hi*w`. Used by the strong-regime
//! scheme to forward interference sums when K is odd (see `scheme`).

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Gf4(u8);

impl Gf4 {
    #[cfg(test)]
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const W: Gf4 = Gf4(2);
    pub const W2: Gf4 = Gf4(3);

    pub fn from_bits(lo: bool, hi: bool) -> Self {
        Gf4(u8::from(lo) | (u8::from(hi) << 1))
    }

    pub fn lo(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn hi(self) -> bool {
        self.0 & 2 == 2
    }

    #[cfg(test)]
    pub fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }

    pub fn mul(self, rhs: Gf4) -> Gf4 {
        let (a0, a1) = (self.lo(), self.hi());
        let (b0, b1) = (rhs.lo(), rhs.hi());
        // w^2 = w + 1
        let lo = (a0 & b0) ^ (a1 & b1);
        let hi = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        Gf4::from_bits(lo, hi)
    }

    pub fn inv(self) -> Gf4 {
        match self.0 {
            1 => Gf4::ONE,
            2 => Gf4::W2,
            3 => Gf4::W,
            _ => panic!("zero has no inverse in GF(4)"),
        }
    }
}

/// Nonzero per-user coefficients summing to zero, for an odd number of
/// users: `1, w, w^2` followed by pairs of ones.
pub(crate) fn zero_sum_coefficients(k_users: usize) -> Vec<Gf4> {
    assert!(k_users >= 3 && k_users % 2 == 1);
    let mut c = vec![Gf4::ONE, Gf4::W, Gf4::W2];
    c.resize(k_users, Gf4::ONE);
    c
}
