//! Binary matrix rank test over 32x32 matrices.

use coning_core::BitStream;

use crate::result::{SuiteParams, TestOutcome, TestResult};

pub const RANK: &str = "binary_matrix_rank";

const DIM: usize = 32;

/// Rank of a matrix over GF(2) whose rows are bitmasks.
pub fn gf2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for col in (0..64).rev() {
        let bit = 1u64 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pr = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pr;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Probability that a random `m x q` matrix over GF(2) has rank `r`.
pub fn rank_probability(r: usize, m: usize, q: usize) -> f64 {
    let exp = (r * (q + m - r)) as f64 - (m * q) as f64;
    let mut prod = 1.0;
    for i in 0..r {
        let i = i as f64;
        prod *= (1.0 - 2f64.powf(i - q as f64)) * (1.0 - 2f64.powf(i - m as f64))
            / (1.0 - 2f64.powf(i - r as f64));
    }
    2f64.powf(exp) * prod
}

/// Counts of full rank, rank one less, and the rest, over all complete
/// `rows x cols` matrices filled row by row.
fn rank_counts(eps: &[u8], rows: usize, cols: usize) -> [u64; 3] {
    let full = rows.min(cols);
    let mut counts = [0u64; 3];
    let mut matrix = vec![0u64; rows];
    for chunk in eps.chunks_exact(rows * cols) {
        for (row, bits) in matrix.iter_mut().zip(chunk.chunks_exact(cols)) {
            *row = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        }
        let r = gf2_rank(&mut matrix);
        let slot = if r == full {
            0
        } else if r + 1 == full {
            1
        } else {
            2
        };
        counts[slot] += 1;
    }
    counts
}

fn chi_squared(counts: &[u64; 3], probs: &[f64; 3]) -> f64 {
    let n: u64 = counts.iter().sum();
    let n = n as f64;
    counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let d = c as f64 - n * p;
            d * d / (n * p)
        })
        .sum()
}

pub fn binary_matrix_rank(stream: &BitStream, params: &SuiteParams) -> TestOutcome {
    rank_bits(&stream.to_bit_vec(), params)
}

pub(crate) fn rank_bits(eps: &[u8], params: &SuiteParams) -> TestOutcome {
    let n = eps.len();
    let matrices = n / (DIM * DIM);
    if matrices == 0 {
        return TestOutcome::skipped(RANK, format!("n = {n} holds no complete 32x32 matrix"));
    }
    let p_full = rank_probability(DIM, DIM, DIM);
    let p_minus = rank_probability(DIM - 1, DIM, DIM);
    let probs = [p_full, p_minus, 1.0 - p_full - p_minus];
    let counts = rank_counts(eps, DIM, DIM);
    let chi2 = chi_squared(&counts, &probs);
    // Two degrees of freedom: the upper gamma ratio reduces to exp(-x/2).
    let p = (-chi2 / 2.0).exp();

    let mut notes = Vec::new();
    if matrices < 38 {
        notes.push(format!("N = {matrices} matrices is below the recommended 38"));
    }
    TestOutcome::Ran(
        TestResult::new(RANK, vec![p], params.alpha)
            .param("N", matrices as u64)
            .param("full_rank", counts[0])
            .param("full_rank_minus_one", counts[1])
            .stat("chi_squared", chi2)
            .advise(notes),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_three_example() {
        let eps: Vec<u8> = "01011001001010101101".bytes().map(|c| c - b'0').collect();
        let counts = rank_counts(&eps, 3, 3);
        assert_eq!(counts, [1, 1, 0]);
        // The worked example uses the asymptotic 32x32 probabilities.
        let chi2 = chi_squared(&counts, &[0.2888, 0.5776, 0.1336]);
        assert!((chi2 - 0.596953).abs() < 1e-5);
        assert!(((-chi2 / 2.0).exp() - 0.741948).abs() < 1e-6);
    }

    #[test]
    fn limiting_probabilities() {
        assert!((rank_probability(32, 32, 32) - 0.288788).abs() < 1e-6);
        assert!((rank_probability(31, 32, 32) - 0.577576).abs() < 1e-6);
    }

    #[test]
    fn identity_and_zero() {
        let mut id: Vec<u64> = (0..32).map(|i| 1u64 << i).collect();
        assert_eq!(gf2_rank(&mut id), 32);
        let mut zero = vec![0u64; 32];
        assert_eq!(gf2_rank(&mut zero), 0);
        let mut dup = vec![0b1011u64; 5];
        assert_eq!(gf2_rank(&mut dup), 1);
    }
}
