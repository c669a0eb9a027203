//! Arbitrary-precision binomial coefficients and Pascal-triangle rows.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` as an arbitrary-precision integer; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(n - k + i, i) after this step, so the division is exact.
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Successive rows of Pascal's triangle, starting at row 0.
///
/// The row is updated in place with additions only, so walking the first
/// `n` rows costs `O(n^2)` big-integer additions and no divisions.
#[derive(Debug, Clone)]
pub struct PascalRows {
    row: Vec<BigUint>,
    index: usize,
}

impl PascalRows {
    pub fn new() -> Self {
        Self {
            row: vec![BigUint::one()],
            index: 0,
        }
    }

    /// Index of the row currently held.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Entries `C(index, 0..=index)`.
    pub fn row(&self) -> &[BigUint] {
        &self.row
    }

    /// Move to the next row.
    pub fn advance(&mut self) {
        self.row.push(BigUint::one());
        for j in (1..self.row.len() - 1).rev() {
            let (lo, hi) = self.row.split_at_mut(j);
            hi[0] += &lo[j - 1];
        }
        self.index += 1;
    }
}

impl Default for PascalRows {
    fn default() -> Self {
        Self::new()
    }
}
