//! Approximate entropy and serial tests. Both count overlapping m-bit
//! patterns with the stream wrapped around to its start.

use coning_core::BitStream;

use crate::result::{SuiteParams, TestOutcome, TestResult};
use crate::special::igamc;

pub const APPROXIMATE_ENTROPY: &str = "approximate_entropy";
pub const SERIAL: &str = "serial";

/// Largest pattern length the counting tables accept.
const MAX_BLOCK: usize = 24;

fn pattern_counts(eps: &[u8], m: usize) -> Vec<u64> {
    let n = eps.len();
    let mut counts = vec![0u64; 1 << m];
    if m == 0 {
        counts[0] = n as u64;
        return counts;
    }
    let mask = (1usize << m) - 1;
    let mut v = 0usize;
    for i in 0..n + m - 1 {
        v = ((v << 1) | eps[i % n] as usize) & mask;
        if i + 1 >= m {
            counts[v] += 1;
        }
    }
    counts
}

fn phi(eps: &[u8], m: usize) -> f64 {
    let n = eps.len() as f64;
    pattern_counts(eps, m)
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let f = c as f64 / n;
            f * f.ln()
        })
        .sum()
}

fn psi_squared(eps: &[u8], m: isize) -> f64 {
    if m <= 0 {
        return 0.0;
    }
    let m = m as usize;
    let n = eps.len() as f64;
    let sum: f64 = pattern_counts(eps, m)
        .into_iter()
        .map(|c| (c as f64) * (c as f64))
        .sum();
    (2f64.powi(m as i32) / n) * sum - n
}

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

pub fn approximate_entropy(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    approximate_entropy_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn approximate_entropy_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    let m = params.approx_entropy_m;
    if m + 1 > MAX_BLOCK {
        return TestOutcome::skipped(APPROXIMATE_ENTROPY, format!("m = {m} exceeds {}", MAX_BLOCK - 1));
    }
    if n < m + 2 {
        return TestOutcome::skipped(APPROXIMATE_ENTROPY, format!("n = {n} is too short for m = {m}"));
    }
    let ap_en = phi(eps, m) - phi(eps, m + 1);
    let nf = n as f64;
    let chi2 = 2.0 * nf * (std::f64::consts::LN_2 - ap_en);
    let p = igamc(2f64.powi(m as i32 - 1), chi2 / 2.0);

    let mut notes = Vec::new();
    if m + 5 >= floor_log2(n) {
        notes.push(format!("m = {m} is not below the recommended floor(log2 n) - 5"));
    }
    TestOutcome::Ran(
        TestResult::new(APPROXIMATE_ENTROPY, vec![p], params.alpha)
            .param("m", m as u64)
            .stat("ap_en", ap_en)
            .stat("chi_squared", chi2)
            .advise(notes),
    )
}

pub fn serial(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    serial_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn serial_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    let m = params.serial_m;
    if m < 2 {
        return TestOutcome::skipped(SERIAL, format!("m = {m} must be at least 2"));
    }
    if m > MAX_BLOCK {
        return TestOutcome::skipped(SERIAL, format!("m = {m} exceeds {MAX_BLOCK}"));
    }
    if n < m + 1 {
        return TestOutcome::skipped(SERIAL, format!("n = {n} is too short for m = {m}"));
    }
    let mi = m as isize;
    let psi0 = psi_squared(eps, mi);
    let psi1 = psi_squared(eps, mi - 1);
    let psi2 = psi_squared(eps, mi - 2);
    let del1 = psi0 - psi1;
    let del2 = psi0 - 2.0 * psi1 + psi2;
    let p1 = igamc(2f64.powi(m as i32 - 2), del1 / 2.0);
    let p2 = igamc(2f64.powi(m as i32 - 3), del2 / 2.0);

    let mut notes = Vec::new();
    if m + 2 >= floor_log2(n) {
        notes.push(format!("m = {m} is not below the recommended floor(log2 n) - 2"));
    }
    TestOutcome::Ran(
        TestResult::new(SERIAL, vec![p1, p2], params.alpha)
            .param("m", m as u64)
            .stat("del1", del1)
            .stat("del2", del2)
            .advise(notes),
    )
}
