use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use serde::Serialize;

/// A column of `q` bits, one per signal level.
///
/// Levels are 1-based from the top: level 1 is the most significant bit.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Gf2Vec {
    bits: Vec<bool>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec { bits: vec![false; len] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Gf2Vec { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Bit on `level` (1-based, top = 1).
    pub fn level(&self, level: usize) -> bool {
        self.bits[level - 1]
    }

    pub fn set_level(&mut self, level: usize, bit: bool) {
        self.bits[level - 1] = bit;
    }

    /// `D^s` applied to this vector: level `i` moves to level `i + s`, bits
    /// pushed past the bottom are lost and the top `s` levels become zero.
    pub fn shifted(&self, s: usize) -> Self {
        let q = self.len();
        let mut out = vec![false; q];
        if s < q {
            out[s..].copy_from_slice(&self.bits[..q - s]);
        }
        Gf2Vec { bits: out }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }
}

impl BitXorAssign<&Gf2Vec> for Gf2Vec {
    fn bitxor_assign(&mut self, rhs: &Gf2Vec) {
        assert_eq!(self.len(), rhs.len(), "xor of vectors with different lengths");
        for (a, b) in self.bits.iter_mut().zip(&rhs.bits) {
            *a ^= *b;
        }
    }
}

impl BitXor<&Gf2Vec> for &Gf2Vec {
    type Output = Gf2Vec;
    fn bitxor(self, rhs: &Gf2Vec) -> Gf2Vec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec[")?;
        for b in &self.bits {
            write!(f, "{}", u8::from(*b))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Gf2Vec {
        Gf2Vec::from_bits(s.bytes().map(|c| c == b'1').collect())
    }

    #[test]
    fn shift_moves_levels_down() {
        assert_eq!(v("10110").shifted(0), v("10110"));
        assert_eq!(v("10110").shifted(2), v("00101"));
        assert_eq!(v("10110").shifted(5), v("00000"));
        assert_eq!(v("10110").shifted(9), v("00000"));
    }

    #[test]
    fn xor_is_mod2_addition() {
        assert_eq!(&v("1100") ^ &v("1010"), v("0110"));
        let x = v("1011");
        assert_eq!(&x ^ &x, Gf2Vec::zeros(4));
    }
}
