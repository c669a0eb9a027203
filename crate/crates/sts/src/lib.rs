//! A native subset of the SP 800-22 statistical tests for random bit
//! streams: nine tests, each mapping a stream to one or more p-values.

mod complexity;
mod cusum;
mod entropy;
mod frequency;
mod rank;
mod result;
mod runs;
pub mod special;
mod suite;

pub use complexity::{berlekamp_massey, linear_complexity, LINEAR_COMPLEXITY};
pub use cusum::{cumulative_sums, CUSUM};
pub use entropy::{approximate_entropy, serial, APPROXIMATE_ENTROPY, SERIAL};
pub use frequency::{block_frequency, frequency_monobit, BLOCK_FREQUENCY, MONOBIT};
pub use rank::{binary_matrix_rank, gf2_rank, rank_probability, RANK};
pub use result::{SuiteParams, TestOutcome, TestResult};
pub use runs::{longest_run_of_ones, runs, LONGEST_RUN, RUNS};
pub use suite::{clustering_fraction, is_extreme, run_suite, test_names, SuiteReport, STREAM_CLUSTER_FLAG};
