use super::gf2::Gf2Vec;
use super::params::DetParams;
use crate::error::{Error, Result};

/// One use of the deterministic channel.
///
/// Receiver `k` sees `D^(q-n) x_k + sum_{j != k} D^(q-m) x_j` over GF(2).
pub fn channel_apply(tx: &[Gf2Vec], params: &DetParams) -> Result<Vec<Gf2Vec>> {
    let q = params.q();
    if tx.len() != params.k_users {
        return Err(Error::Dimension {
            expected: params.k_users,
            got: tx.len(),
        });
    }
    if let Some(bad) = tx.iter().find(|x| x.len() != q) {
        return Err(Error::Dimension {
            expected: q,
            got: bad.len(),
        });
    }
    let cross_shift = q - params.m;
    let direct_shift = q - params.n;

    // Everyone's cross contribution, then swap each user's own term for its
    // direct one.
    let mut all_cross = Gf2Vec::zeros(q);
    for x in tx {
        all_cross ^= &x.shifted(cross_shift);
    }
    Ok(tx
        .iter()
        .map(|x| {
            let mut y = all_cross.clone();
            y ^= &x.shifted(cross_shift);
            y ^= &x.shifted(direct_shift);
            y
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Gf2Vec {
        Gf2Vec::from_bits(s.bytes().map(|c| c == b'1').collect())
    }

    #[test]
    fn no_cross_link() {
        let p = DetParams::new(1, 0, 0, 2).unwrap();
        let rx = channel_apply(&[v("1"), v("0")], &p).unwrap();
        assert_eq!(rx, vec![v("1"), v("0")]);
    }

    #[test]
    fn three_clean_levels_then_one_mixed() {
        // a = 1011, b = 0110, c = 1100, each followed by an idle level
        let p = DetParams::new(5, 2, 1, 3).unwrap();
        let rx = channel_apply(&[v("10110"), v("01100"), v("11000")], &p).unwrap();
        // top three: a1 a2 a3; level 4: a4 + b1 + c1 = 1 + 0 + 1
        assert_eq!(&rx[0].bits()[..4], &[true, false, true, false]);
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let p = DetParams::new(3, 1, 0, 2).unwrap();
        assert!(matches!(
            channel_apply(&[v("101"), v("10")], &p),
            Err(Error::Dimension { expected: 3, got: 2 })
        ));
        assert!(channel_apply(&[v("101")], &p).is_err());
    }

    #[test]
    fn zero_direct_link_is_pure_crosstalk() {
        let p = DetParams::new(0, 2, 0, 2).unwrap();
        let rx = channel_apply(&[v("10"), v("01")], &p).unwrap();
        assert_eq!(rx, vec![v("01"), v("10")]);
    }
}
