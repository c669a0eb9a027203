//! Linear complexity test, with a bit-packed Berlekamp–Massey.

use coning_core::BitStream;

use crate::result::{SuiteParams, TestOutcome, TestResult};
use crate::special::igamc;

pub const LINEAR_COMPLEXITY: &str = "linear_complexity";

// The reference implementation rounds 1/96 to 0.01047 and 1/48 to 0.020833;
// keeping its constants keeps p-values comparable with its reports.
const BUCKET_PROBS: [f64; 7] = [0.01047, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833];

/// 64 bits of `words` starting at bit `start`, LSB first.
fn window(words: &[u64], start: usize) -> u64 {
    let w = start / 64;
    let sh = start % 64;
    let lo = words.get(w).copied().unwrap_or(0) >> sh;
    if sh == 0 {
        lo
    } else {
        lo | (words.get(w + 1).copied().unwrap_or(0) << (64 - sh))
    }
}

/// `dst ^= src << shift` on LSB-first bitsets.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let sh = shift % 64;
    for (j, &s) in src.iter().enumerate() {
        if s == 0 {
            continue;
        }
        if let Some(d) = dst.get_mut(j + ws) {
            *d ^= s << sh;
        }
        if sh > 0 {
            if let Some(d) = dst.get_mut(j + ws + 1) {
                *d ^= s >> (64 - sh);
            }
        }
    }
}

/// Length of the shortest LFSR generating `bits` (each 0 or 1).
pub fn berlekamp_massey(bits: &[u8]) -> usize {
    let n = bits.len();
    let words = n / 64 + 2;
    // rev holds s_{n-1-k} at bit k, so s_{t-i} sits at bit (n-1-t)+i.
    let mut rev = vec![0u64; words];
    for (k, &b) in bits.iter().rev().enumerate() {
        if b == 1 {
            rev[k / 64] |= 1 << (k % 64);
        }
    }
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m: isize = -1;
    for t in 0..n {
        let base = n - 1 - t;
        let mut acc = 0u64;
        for (w, &cw) in c.iter().enumerate().take(t / 64 + 1) {
            acc ^= cw & window(&rev, base + 64 * w);
        }
        if acc.count_ones() % 2 == 1 {
            let prev = c.clone();
            xor_shifted(&mut c, &b, (t as isize - m) as usize);
            if 2 * l <= t {
                l = t + 1 - l;
                m = t as isize;
                b = prev;
            }
        }
    }
    l
}

pub fn linear_complexity(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    linear_complexity_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn linear_complexity_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    let m = params.linear_complexity_m;
    if m < 2 {
        return TestOutcome::skipped(LINEAR_COMPLEXITY, format!("M = {m} must be at least 2"));
    }
    let blocks = n / m;
    if blocks == 0 {
        return TestOutcome::skipped(
            LINEAR_COMPLEXITY,
            format!("n = {n} is shorter than one block of M = {m}"),
        );
    }
    let mf = m as f64;
    let sign_m = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mu = mf / 2.0 + (9.0 - sign_m) / 36.0 - (mf / 3.0 + 2.0 / 9.0) / 2f64.powf(mf);
    let mut counts = [0u64; 7];
    for block in eps.chunks_exact(m) {
        let l = berlekamp_massey(block) as f64;
        let t = sign_m * (l - mu) + 2.0 / 9.0;
        let slot = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        counts[slot] += 1;
    }
    let nb = blocks as f64;
    let chi2: f64 = counts
        .iter()
        .zip(BUCKET_PROBS)
        .map(|(&c, p)| {
            let d = c as f64 - nb * p;
            d * d / (nb * p)
        })
        .sum();
    let p = igamc(3.0, chi2 / 2.0);

    let mut notes = Vec::new();
    if n < 1_000_000 {
        notes.push(format!("n = {n} is below the recommended 10^6 bits"));
    }
    if !(500..=5000).contains(&m) {
        notes.push(format!("M = {m} is outside the recommended 500..=5000"));
    }
    if blocks < 200 {
        notes.push(format!("N = {blocks} blocks is below the recommended 200"));
    }
    TestOutcome::Ran(
        TestResult::new(LINEAR_COMPLEXITY, vec![p], params.alpha)
            .param("M", m as u64)
            .param("N", blocks as u64)
            .stat("chi_squared", chi2)
            .stat("mu", mu)
            .advise(notes),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Textbook Berlekamp–Massey on unpacked bits.
    fn naive_bm(s: &[u8]) -> usize {
        let n = s.len();
        let mut c = vec![0u8; n + 1];
        let mut b = vec![0u8; n + 1];
        c[0] = 1;
        b[0] = 1;
        let (mut l, mut m) = (0usize, -1isize);
        for t in 0..n {
            let mut d = s[t];
            for i in 1..=l {
                d ^= c[i] & s[t - i];
            }
            if d == 1 {
                let prev = c.clone();
                let shift = (t as isize - m) as usize;
                for i in 0..=n - shift {
                    c[i + shift] ^= b[i];
                }
                if 2 * l <= t {
                    l = t + 1 - l;
                    m = t as isize;
                    b = prev;
                }
            }
        }
        l
    }

    fn bits(s: &str) -> Vec<u8> {
        s.bytes().map(|c| c - b'0').collect()
    }

    #[test]
    fn worked_example() {
        assert_eq!(berlekamp_massey(&bits("1101011110001")), 4);
    }

    #[test]
    fn degenerate_sequences() {
        assert_eq!(berlekamp_massey(&[0; 500]), 0);
        assert_eq!(berlekamp_massey(&[1; 500]), 1);
        let mut impulse = vec![0u8; 300];
        impulse[299] = 1;
        assert_eq!(berlekamp_massey(&impulse), 300);
    }

    #[test]
    fn packed_matches_naive() {
        let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
        for len in [1usize, 2, 63, 64, 65, 127, 128, 129, 200, 500] {
            for _ in 0..5 {
                let s: Vec<u8> = (0..len)
                    .map(|_| {
                        x ^= x << 13;
                        x ^= x >> 7;
                        x ^= x << 17;
                        (x & 1) as u8
                    })
                    .collect();
                assert_eq!(berlekamp_massey(&s), naive_bm(&s), "len {len}");
            }
        }
    }
}
