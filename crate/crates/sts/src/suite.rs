use coning_core::BitStream;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::result::{SuiteParams, TestOutcome};
use crate::{complexity, cusum, entropy, frequency, rank, runs};

/// A per-stream report raises its clustering flag when at least this share
/// of its p-values lies in `[0, 0.01) ∪ (0.99, 1]`.
pub const STREAM_CLUSTER_FLAG: f64 = 0.5;

type BitTest = fn(&[u8], &SuiteParams) -> TestOutcome;

const TESTS: [BitTest; 9] = [
    frequency::monobit_bits,
    frequency::block_frequency_bits,
    runs::runs_bits,
    runs::longest_run_bits,
    rank::rank_bits,
    cusum::cusum_bits,
    entropy::approximate_entropy_bits,
    entropy::serial_bits,
    complexity::linear_complexity_bits,
];

/// Whether a p-value sits at either extreme of the unit interval.
pub fn is_extreme(p: f64) -> bool {
    !(0.01..=0.99).contains(&p)
}

/// Share of extreme p-values; zero for an empty set.
pub fn clustering_fraction<'a>(p_values: impl IntoIterator<Item = &'a f64>) -> f64 {
    let (mut total, mut extreme) = (0usize, 0usize);
    for &p in p_values {
        total += 1;
        if is_extreme(p) {
            extreme += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        extreme as f64 / total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub bit_length: u64,
    pub params: SuiteParams,
    /// Sorted by test name.
    pub results: Vec<TestOutcome>,
    /// Tests that ran.
    pub applicable: usize,
    pub passed: usize,
    /// `passed / applicable`; absent when nothing ran.
    pub pass_proportion: Option<f64>,
    pub clustering_fraction: f64,
    pub clustering_flag: bool,
}

impl SuiteReport {
    /// Every p-value of every test that ran, in report order.
    pub fn p_values(&self) -> impl Iterator<Item = &f64> {
        self.results
            .iter()
            .filter_map(TestOutcome::result)
            .flat_map(|r| r.p_values.iter())
    }

    pub fn get(&self, test_name: &str) -> Option<&TestOutcome> {
        self.results.iter().find(|r| r.test_name() == test_name)
    }
}

/// Runs all nine tests on one stream.
pub fn run_suite(stream: &BitStream, params: &SuiteParams) -> SuiteReport {
    let eps = stream.to_bit_vec();
    let mut results: Vec<TestOutcome> = TESTS.par_iter().map(|t| t(&eps, params)).collect();
    results.sort_by(|a, b| a.test_name().cmp(b.test_name()));

    let ran: Vec<_> = results.iter().filter_map(TestOutcome::result).collect();
    let applicable = ran.len();
    let passed = ran.iter().filter(|r| r.passed).count();
    let pass_proportion = (applicable > 0).then(|| passed as f64 / applicable as f64);
    let clustering = clustering_fraction(ran.iter().flat_map(|r| r.p_values.iter()));
    SuiteReport {
        bit_length: stream.bit_length(),
        params: *params,
        results,
        applicable,
        passed,
        pass_proportion,
        clustering_fraction: clustering,
        clustering_flag: applicable > 0 && clustering >= STREAM_CLUSTER_FLAG,
    }
}

/// Names of the implemented tests in report order.
pub fn test_names() -> [&'static str; 9] {
    let mut names = [
        frequency::MONOBIT,
        frequency::BLOCK_FREQUENCY,
        runs::RUNS,
        runs::LONGEST_RUN,
        rank::RANK,
        cusum::CUSUM,
        entropy::APPROXIMATE_ENTROPY,
        entropy::SERIAL,
        complexity::LINEAR_COMPLEXITY,
    ];
    names.sort();
    names
}
