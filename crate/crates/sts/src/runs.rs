//! Runs test and longest-run-of-ones-in-a-block test.

use coning_core::BitStream;

use crate::result::{SuiteParams, TestOutcome, TestResult};
use crate::special::{erfc, igamc};

pub const RUNS: &str = "runs";
pub const LONGEST_RUN: &str = "longest_run_of_ones";

pub fn runs(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    runs_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn runs_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    if n < 2 {
        return TestOutcome::skipped(RUNS, format!("n = {n} is too short"));
    }
    let nf = n as f64;
    let pi = eps.iter().filter(|&&b| b == 1).count() as f64 / nf;
    let tau = 2.0 / nf.sqrt();
    let v_obs = 1 + eps.windows(2).filter(|w| w[0] != w[1]).count();

    // Frequency pretest: a grossly unbalanced stream gets p = 0 outright.
    let p = if (pi - 0.5).abs() >= tau {
        0.0
    } else {
        let q = pi * (1.0 - pi);
        erfc((v_obs as f64 - 2.0 * nf * q).abs() / (2.0 * (2.0 * nf).sqrt() * q))
    };
    let mut notes = Vec::new();
    if n < 100 {
        notes.push(format!("n = {n} is below the recommended 100 bits"));
    }
    if p == 0.0 && (pi - 0.5).abs() >= tau {
        notes.push("frequency pretest failed".to_string());
    }
    TestOutcome::Ran(
        TestResult::new(RUNS, vec![p], params.alpha)
            .param("n", n as u64)
            .param("v_obs", v_obs as u64)
            .stat("pi", pi)
            .advise(notes),
    )
}

struct LongestRunTable {
    m: usize,
    /// Runs of length `<= low` share the first bucket.
    low: usize,
    probs: &'static [f64],
}

const TABLE_8: LongestRunTable = LongestRunTable {
    m: 8,
    low: 1,
    probs: &[0.21484375, 0.3671875, 0.23046875, 0.1875],
};

const TABLE_128: LongestRunTable = LongestRunTable {
    m: 128,
    low: 4,
    probs: &[
        0.1174035788,
        0.242955959,
        0.249363483,
        0.17517706,
        0.102701071,
        0.112398847,
    ],
};

const TABLE_10000: LongestRunTable = LongestRunTable {
    m: 10_000,
    low: 10,
    probs: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
};

pub fn longest_run_of_ones(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    longest_run_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn longest_run_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    let table = if n < 128 {
        return TestOutcome::skipped(LONGEST_RUN, format!("n = {n} is below the required 128 bits"));
    } else if n < 6272 {
        &TABLE_8
    } else if n < 750_000 {
        &TABLE_128
    } else {
        &TABLE_10000
    };
    let k = table.probs.len() - 1;
    let blocks = n / table.m;
    let mut counts = vec![0u64; k + 1];
    for block in eps.chunks_exact(table.m) {
        let mut best = 0usize;
        let mut run = 0usize;
        for &b in block {
            if b == 1 {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        let bucket = best.saturating_sub(table.low).min(k);
        counts[bucket] += 1;
    }
    let nb = blocks as f64;
    let chi2: f64 = counts
        .iter()
        .zip(table.probs)
        .map(|(&c, &pi)| {
            let d = c as f64 - nb * pi;
            d * d / (nb * pi)
        })
        .sum();
    let p = igamc(k as f64 / 2.0, chi2 / 2.0);
    TestOutcome::Ran(
        TestResult::new(LONGEST_RUN, vec![p], params.alpha)
            .param("M", table.m as u64)
            .param("N", blocks as u64)
            .stat("chi_squared", chi2),
    )
}
