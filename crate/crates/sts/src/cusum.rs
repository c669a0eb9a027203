//! Cumulative sums test, forward and backward.

use coning_core::BitStream;

use crate::result::{SuiteParams, TestOutcome, TestResult};
use crate::special::normal_cdf;

pub const CUSUM: &str = "cumulative_sums";

/// p-value for a maximal excursion `z` of a walk of `n` steps. Summation
/// bounds use truncating integer division, matching the reference code.
fn excursion_p(n: i64, z: i64) -> f64 {
    let nf = n as f64;
    let zf = z as f64;
    let sq = nf.sqrt();
    let mut sum1 = 0.0;
    for k in ((-n / z + 1) / 4)..=((n / z - 1) / 4) {
        let k = k as f64;
        sum1 += normal_cdf((4.0 * k + 1.0) * zf / sq) - normal_cdf((4.0 * k - 1.0) * zf / sq);
    }
    let mut sum2 = 0.0;
    for k in ((-n / z - 3) / 4)..=((n / z - 1) / 4) {
        let k = k as f64;
        sum2 += normal_cdf((4.0 * k + 3.0) * zf / sq) - normal_cdf((4.0 * k + 1.0) * zf / sq);
    }
    1.0 - sum1 + sum2
}

pub fn cumulative_sums(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    cusum_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn cusum_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    if n == 0 {
        return TestOutcome::skipped(CUSUM, "empty stream");
    }
    let mut s = 0i64;
    let mut sup = 0i64;
    let mut inf = 0i64;
    for &b in eps {
        s += if b == 1 { 1 } else { -1 };
        sup = sup.max(s);
        inf = inf.min(s);
    }
    let z_forward = sup.max(-inf);
    let z_backward = (sup - s).max(s - inf);
    let n = n as i64;
    let p_forward = excursion_p(n, z_forward);
    let p_backward = excursion_p(n, z_backward);

    let mut notes = Vec::new();
    if n < 100 {
        notes.push(format!("n = {n} is below the recommended 100 bits"));
    }
    TestOutcome::Ran(
        TestResult::new(CUSUM, vec![p_forward, p_backward], params.alpha)
            .param("z_forward", z_forward as u64)
            .param("z_backward", z_backward as u64)
            .advise(notes),
    )
}
