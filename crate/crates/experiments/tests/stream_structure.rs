//! Why whole simplex-dual streams fail the suite: a palindromic f-vector
//! writes every integer twice, which doubles every pattern count.

use coning_core::{encode_vector, simplex_dual_f, BigUint, BitStream};
use coning_sts::{run_suite, SuiteParams, SuiteReport, APPROXIMATE_ENTROPY, SERIAL};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

fn failed(report: &SuiteReport, name: &str) -> bool {
    !report.get(name).unwrap().result().unwrap().passed
}

/// Random integers with the same bit lengths as the first half of the
/// simplex dual of length `len`.
fn random_like_half(len: usize, seed: u64) -> Vec<BigUint> {
    let f = simplex_dual_f(len).unwrap();
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    f.components()[..f.len() / 2]
        .iter()
        .map(|x| {
            let bits = x.bits();
            let mut v = BigUint::from(1u8) << (bits - 1);
            for i in 0..bits - 1 {
                v.set_bit(i, rng.random_bool(0.5));
            }
            v
        })
        .collect()
}

fn stream(values: &[BigUint]) -> BitStream {
    encode_vector(values).unwrap()
}

#[test]
fn mirroring_random_integers_is_detected() {
    let params = SuiteParams::default();
    let half = random_like_half(551, 551);
    let once = run_suite(&stream(&half), &params);
    assert_eq!(once.pass_proportion, Some(1.0));

    let mut mirrored = half.clone();
    mirrored.extend(half.iter().rev().cloned());
    let twice = run_suite(&stream(&mirrored), &params);
    assert!(failed(&twice, APPROXIMATE_ENTROPY));
    assert!(failed(&twice, SERIAL));
}

#[test]
fn simplex_dual_streams_fail_the_same_tests() {
    let params = SuiteParams::default();
    for len in [551, 575, 600] {
        let f = simplex_dual_f(len).unwrap();
        let report = run_suite(&stream(f.components()), &params);
        assert!(failed(&report, APPROXIMATE_ENTROPY), "L = {len}");
        assert!(failed(&report, SERIAL), "L = {len}");
    }
}
