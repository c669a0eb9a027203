//! Frequency (monobit) and frequency-within-a-block tests.

use coning_core::BitStream;

use crate::result::{SuiteParams, TestOutcome, TestResult};
use crate::special::{erfc, igamc};

pub const MONOBIT: &str = "frequency";
pub const BLOCK_FREQUENCY: &str = "block_frequency";

pub fn frequency_monobit(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    monobit_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn monobit_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    if n == 0 {
        return TestOutcome::skipped(MONOBIT, "empty stream");
    }
    let ones = eps.iter().filter(|&&b| b == 1).count() as i64;
    let s_n = 2 * ones - n as i64;
    let s_obs = (s_n.abs() as f64) / (n as f64).sqrt();
    let p = erfc(s_obs / std::f64::consts::SQRT_2);

    let mut notes = Vec::new();
    if n < 100 {
        notes.push(format!("n = {n} is below the recommended 100 bits"));
    }
    TestOutcome::Ran(
        TestResult::new(MONOBIT, vec![p], params.alpha)
            .param("n", n as u64)
            .stat("s_obs", s_obs)
            .advise(notes),
    )
}

pub fn block_frequency(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    block_frequency_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn block_frequency_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    let m = params.block_frequency_m;
    if m == 0 {
        return TestOutcome::skipped(BLOCK_FREQUENCY, "block length M must be positive");
    }
    let blocks = n / m;
    if blocks == 0 {
        return TestOutcome::skipped(
            BLOCK_FREQUENCY,
            format!("n = {n} is shorter than one block of M = {m}"),
        );
    }
    let sum: f64 = eps
        .chunks_exact(m)
        .map(|block| {
            let ones = block.iter().filter(|&&b| b == 1).count();
            let pi = ones as f64 / m as f64 - 0.5;
            pi * pi
        })
        .sum();
    let chi2 = 4.0 * m as f64 * sum;
    let p = igamc(blocks as f64 / 2.0, chi2 / 2.0);

    let mut notes = Vec::new();
    if n < 100 {
        notes.push(format!("n = {n} is below the recommended 100 bits"));
    }
    if m < 20 || (m as f64) <= 0.01 * n as f64 {
        notes.push(format!("M = {m} outside the recommended M >= 20, M > 0.01 n"));
    }
    if blocks >= 100 {
        notes.push(format!("N = {blocks} blocks exceeds the recommended N < 100"));
    }
    TestOutcome::Ran(
        TestResult::new(BLOCK_FREQUENCY, vec![p], params.alpha)
            .param("M", m as u64)
            .param("N", blocks as u64)
            .stat("chi_squared", chi2)
            .advise(notes),
    )
}
