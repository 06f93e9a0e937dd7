use kicfb_core::det::*;
use kicfb_core::{Error, Execution};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Receiver outputs computed straight from the channel definition, with the
/// shift written out as a matrix product.
fn naive_channel(tx: &[Vec<bool>], n: usize, m: usize) -> Vec<Vec<bool>> {
    let q = n.max(m);
    let shift = |s: usize, x: &[bool]| -> Vec<bool> {
        (0..q)
            .map(|row| (0..q).fold(false, |acc, col| acc ^ (row == col + s && x[col])))
            .collect()
    };
    (0..tx.len())
        .map(|k| {
            let mut y = vec![false; q];
            for (j, x) in tx.iter().enumerate() {
                let part = if j == k { shift(q - n, x) } else { shift(q - m, x) };
                for (a, b) in y.iter_mut().zip(part) {
                    *a ^= b;
                }
            }
            y
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn channel_matches_naive_evaluation(n in 0usize..12, m in 0usize..12, k in 2usize..6, seed: u64) {
        prop_assume!(n.max(m) > 0);
        let params = DetParams::new(n, m, 0, k).unwrap();
        let q = params.q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tx: Vec<Vec<bool>> = (0..k).map(|_| (0..q).map(|_| rand::Rng::gen(&mut rng)).collect()).collect();
        let vecs: Vec<Gf2Vec> = tx.iter().cloned().map(Gf2Vec::from_bits).collect();
        let rx = channel_apply(&vecs, &params).unwrap();
        let expected = naive_channel(&tx, n, m);
        for (a, b) in rx.iter().zip(&expected) {
            prop_assert_eq!(a.bits(), &b[..]);
        }
    }
}

fn grid() -> Vec<DetParams> {
    let mut out = Vec::new();
    for n in 1..=10 {
        for m in 0..=20 {
            for p2 in 0..=12 {
                for k in 2..=5 {
                    out.push(DetParams::new(n, m, p2, k).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn every_implemented_point_decodes_at_the_formula_rate() {
    let failures = Execution::Parallel.map(&grid(), |params| -> Option<String> {
        match scheme_plan(params) {
            Err(Error::UnsupportedRegime(_)) => return None,
            Err(e) => return Some(format!("{params:?}: {e}")),
            Ok(_) => {}
        }
        if scheme_rate(params).unwrap() != theorem1_rate(params).unwrap() {
            return Some(format!("{params:?}: rate mismatch"));
        }
        for seed in 0..4 {
            let traces = simulate_traces(params, 2, seed, Execution::Sequential).unwrap();
            for t in traces {
                if !t.is_success() {
                    return Some(format!("{params:?}: decode failure seed {seed}"));
                }
                if t.fb_bits.iter().any(|fb| fb.len() > params.p2) {
                    return Some(format!("{params:?}: feedback over budget"));
                }
            }
        }
        None
    });
    let failures: Vec<String> = failures.into_iter().flatten().collect();
    assert!(
        failures.is_empty(),
        "{} failures, first: {:?}",
        failures.len(),
        &failures[..failures.len().min(5)]
    );
}

#[test]
fn all_zero_and_all_one_payloads_decode() {
    for params in grid() {
        let Ok(plan) = scheme_plan(&params) else { continue };
        for bit in [false, true] {
            let payload = vec![vec![bit; plan.payload_bits]; params.k_users];
            let [a, b] = run_block_pair(&params, &payload, &payload).unwrap();
            assert!(a.is_success() && b.is_success(), "{params:?} {bit}");
        }
    }
}

#[test]
fn rate_identity_monotonicity_and_saturation() {
    for params in grid() {
        let r = theorem1_rate(&params).unwrap();
        let inf = csym_infinite(&params).unwrap();
        let zero = csym_zero(&params).unwrap();
        assert_eq!(r, inf.min(zero + RationalRate::new(params.p2 as i64, 2)), "{params:?}");
        if params.p2 > 0 {
            let less = DetParams {
                p2: params.p2 - 1,
                ..params
            };
            assert!(theorem1_rate(&less).unwrap() <= r);
        }
        let saturating = (inf - zero).ratio() * 2;
        if num_rational::Ratio::from_integer(params.p2 as i64) >= saturating {
            assert_eq!(r, inf, "{params:?}");
        }
    }
}

#[test]
fn boundary_choice_is_invisible() {
    // m/n = 1/2 sits on the first two pieces, m/n = 2 on the last two.
    for n in (2..=20).step_by(2) {
        for p2 in 0..=12 {
            for k in 2..=5 {
                let half = DetParams::new(n, n / 2, p2, k).unwrap();
                let fb = num_rational::Ratio::new(p2 as i64, 2);
                let m = num_rational::Ratio::from_integer(n as i64 / 2);
                let n_r = num_rational::Ratio::from_integer(n as i64);
                let second_piece = (m + fb).min(n_r - m / 2);
                assert_eq!(theorem1_rate(&half).unwrap().ratio(), second_piece);
                let two = DetParams::new(n / 2, n, p2, k).unwrap();
                assert_eq!(theorem1_rate(&two).unwrap().ratio(), m);
            }
        }
    }
}

#[test]
fn figure_examples_block_by_block() {
    // levels 1..3 clean, level 4 mixed, level 5 idle
    let params = DetParams::new(5, 2, 1, 3).unwrap();
    let t = run_block_seeded(&params, 11).unwrap();
    assert!(t.is_success());
    assert_eq!(t.seed, Some(BlockSeed { seed: 11, block: 0 }));
    for u in 0..3 {
        assert_eq!(t.fb_bits[u].len(), 1);
        assert_eq!(t.fb_bits[u][0], t.payload[u][3] ^ t.interference_sums[u][0]);
    }
    let t = run_block_seeded(&DetParams::new(7, 4, 1, 3).unwrap(), 12).unwrap();
    assert!(t.is_success() && t.payload[0].len() == 9);
    let t = run_block_seeded(&DetParams::new(2, 6, 1, 3).unwrap(), 13).unwrap();
    assert!(t.is_success() && t.payload[0].len() == 5);
    assert_eq!(t.forwarding, Forwarding::Gf4);
    // feedback carries the pure interference sum abar_3
    for u in 0..3 {
        assert_eq!(t.fb_bits[u], vec![t.interference_sums[u][2]]);
    }
}

#[test]
fn plain_mod2_forwarding_fails_for_odd_k_in_the_strong_regime() {
    // Level n+t would read (K-1) a + (K-2) abar = abar for K = 3: a is lost.
    // Every assignment of own bit a and others' bits leaves the level blind.
    for a in [false, true] {
        for b in [false, true] {
            for c in [false, true] {
                let abar_of = |x: bool, y: bool| x ^ y;
                // what each other user forwards is its own abar
                let level = abar_of(a, c) ^ abar_of(a, b);
                assert_eq!(level, b ^ c);
            }
        }
    }
}
