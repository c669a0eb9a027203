//! Cones, duals of standard simplices and the f/h-vector dictionary.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::binomial::PascalRows;
use crate::error::{Error, Result};
use crate::vector::{FVector, HVector};

/// f-vector of the cone `C(K)` given the f-vector of `K`.
///
/// Every old `(i-1)`-simplex joined with the apex becomes a new `i`-simplex,
/// and the empty face contributes the apex itself.
pub fn cone_f(f: &FVector) -> FVector {
    let x = f.components();
    let n = x.len();
    let mut y = Vec::with_capacity(n + 1);
    y.push(&x[0] + 1u32);
    for i in 1..n {
        y.push(&x[i - 1] + &x[i]);
    }
    y.push(x[n - 1].clone());
    FVector::new(y).expect("cone of a non-empty vector is non-empty")
}

/// f-vector of the `j`-th iterated cone `C^j(K)`.
pub fn iterate_cone(f: &FVector, j: usize) -> FVector {
    let mut cur = f.clone();
    for _ in 0..j {
        cur = cone_f(&cur);
    }
    cur
}

/// f-vector of the dual complex of the standard simplex whose h-vector is
/// `len` ones (so the simplex has dimension `len - 1`).
///
/// Component `j` equals `C(len, j + 1)`.
pub fn simplex_dual_f(len: usize) -> Result<FVector> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!(
            "simplex h-vector length must be at least 2, got {len}"
        )));
    }
    h_to_f(&HVector::all_ones(len)?)
}

/// h-vector of the dual, from the complex's f-vector:
/// `h_k = sum_{i=0}^{k} (-1)^{k-i} C(n-i, n-k) f_{i-1}` with `f_{-1} = 1`.
pub fn f_to_h(f: &FVector) -> HVector {
    let n = f.len();
    let one = BigUint::one();
    // Contributions are accumulated by sign so no temporary signed copies
    // of the binomials are needed.
    let mut pos = vec![BigUint::zero(); n + 1];
    let mut neg = vec![BigUint::zero(); n + 1];

    // Row m = n - i of Pascal's triangle carries the coefficient of f_{i-1}:
    // h_{n-j} picks up (-1)^{m-j} C(m, j) f_{n-m-1} for j = 0..=m.
    let mut rows = PascalRows::new();
    for m in 0..=n {
        let coeff = if m == n { &one } else { &f[n - m - 1] };
        if !coeff.is_zero() {
            for (j, c) in rows.row().iter().enumerate() {
                let target = if (m - j) % 2 == 0 { &mut pos } else { &mut neg };
                if coeff.is_one() {
                    target[n - j] += c;
                } else {
                    target[n - j] += c * coeff;
                }
            }
        }
        if m < n {
            rows.advance();
        }
    }

    let h = pos
        .into_iter()
        .zip(neg)
        .map(|(p, q)| BigInt::from(p) - BigInt::from(q))
        .collect();
    HVector::new(h).expect("n + 1 >= 1 components")
}

/// f-vector of the complex, from the dual's h-vector:
/// `f_{n-1-k} = sum_{q=k}^{n} C(q, k) h_{n-q}`.
///
/// Requires `h_0 = 1` (the sum for `k = n` is `f_{-1} = h_0`), at least two
/// components, and fails if any resulting face count would be negative.
pub fn h_to_f(h: &HVector) -> Result<FVector> {
    if h.len() < 2 {
        return Err(Error::InvalidArgument(
            "h-vector needs at least two components".into(),
        ));
    }
    if !h[0].is_one() {
        return Err(Error::LeadingCoefficient(h[0].to_string()));
    }
    let n = h.len() - 1;
    let mut pos = vec![BigUint::zero(); n];
    let mut neg = vec![BigUint::zero(); n];

    let mut rows = PascalRows::new();
    for q in 0..=n {
        let coeff = &h[n - q];
        let (sign, mag) = (coeff.sign(), coeff.magnitude());
        if sign != Sign::NoSign {
            let target = if sign == Sign::Plus { &mut pos } else { &mut neg };
            // k = n is the implicit f_{-1}; skip it.
            for (k, c) in rows.row().iter().enumerate().take(n.min(q + 1)) {
                if mag.is_one() {
                    target[n - 1 - k] += c;
                } else {
                    target[n - 1 - k] += c * mag;
                }
            }
        }
        if q < n {
            rows.advance();
        }
    }

    let f = pos
        .into_iter()
        .zip(neg)
        .enumerate()
        .map(|(i, (p, q))| {
            if p >= q {
                Ok(p - q)
            } else {
                Err(Error::NegativeComponent {
                    index: i,
                    value: format!("-{}", q - p),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    FVector::new(f)
}

/// True iff `f_j = f_{n-1-j}` for every `j`.
pub fn is_symmetrical(f: &FVector) -> bool {
    let c = f.components();
    c.iter().eq(c.iter().rev())
}

/// The palindromic h-vector `(1, c, ..., c, 1)` with `len` components.
pub fn palindromic_h(len: usize, value: u64) -> Result<HVector> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!(
            "palindromic h-vector length must be at least 2, got {len}"
        )));
    }
    if value < 1 {
        return Err(Error::InvalidArgument(
            "non-end value must be at least 1".into(),
        ));
    }
    let mut h = vec![BigInt::from(value); len];
    h[0] = BigInt::one();
    h[len - 1] = BigInt::one();
    HVector::new(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::binomial;

    fn fv(xs: &[u64]) -> FVector {
        FVector::from_u64s(xs).unwrap()
    }

    fn hv(xs: &[i64]) -> HVector {
        HVector::from_i64s(xs).unwrap()
    }

    /// Expands `sum_i f_{i-1} (t-1)^{n-i}` by Horner's rule in `(t-1)` and
    /// returns the coefficients from `t^n` down to `t^0`.
    fn h_by_polynomial_expansion(f: &FVector) -> Vec<BigInt> {
        // coefficients indexed by power of t
        let mut poly = vec![BigInt::one()];
        for c in f.components() {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (p, a) in poly.iter().enumerate() {
                next[p + 1] += a;
                next[p] -= a;
            }
            next[0] += BigInt::from(c.clone());
            poly = next;
        }
        poly.into_iter().rev().collect()
    }

    #[test]
    fn cone_examples() {
        assert_eq!(cone_f(&fv(&[3, 1])), fv(&[4, 4, 1]));
        assert_eq!(cone_f(&fv(&[7])), fv(&[8, 7]));
        assert_eq!(cone_f(&fv(&[4, 4])), fv(&[5, 8, 4]));
    }

    #[test]
    fn iterated_cone_examples() {
        assert_eq!(iterate_cone(&fv(&[3, 1]), 0), fv(&[3, 1]));
        assert_eq!(iterate_cone(&fv(&[3, 1]), 2), fv(&[5, 8, 5, 1]));
    }

    #[test]
    fn iterated_cone_closed_forms() {
        for (f0, f1) in [(3u64, 1u64), (4, 6), (10, 17), (2, 1)] {
            let base = fv(&[f0, f1]);
            for j in 0..25usize {
                let c = iterate_cone(&base, j);
                assert_eq!(c.len(), 2 + j);
                assert_eq!(*c.first(), BigUint::from(f0 + j as u64));
                assert_eq!(c.last(), base.last());
                let edges: u64 = f1 + (0..j as u64).map(|k| f0 + k).sum::<u64>();
                assert_eq!(c[1], BigUint::from(edges));
            }
        }
    }

    #[test]
    fn simplex_duals() {
        assert_eq!(simplex_dual_f(3).unwrap(), fv(&[3, 3]));
        assert_eq!(simplex_dual_f(4).unwrap(), fv(&[4, 6, 4]));
        assert_eq!(simplex_dual_f(2).unwrap(), fv(&[2]));
        assert!(simplex_dual_f(1).is_err());
        assert!(simplex_dual_f(0).is_err());
        for len in 2..60usize {
            let f = simplex_dual_f(len).unwrap();
            assert_eq!(f.len(), len - 1);
            assert_eq!(*f.first(), BigUint::from(len));
            assert_eq!(*f.last(), BigUint::from(len));
            for (j, c) in f.components().iter().enumerate() {
                assert_eq!(*c, binomial(len as u64, j as i64 + 1));
            }
        }
    }

    #[test]
    fn f_to_h_examples() {
        assert_eq!(f_to_h(&fv(&[4, 4])), hv(&[1, 2, 1]));
        assert_eq!(f_to_h(&fv(&[3, 1])), hv(&[1, 1, -1]));
        assert_eq!(f_to_h(&fv(&[4, 6, 4])), hv(&[1, 1, 1, 1]));
        // boundary of the octahedron is dual to the cube
        assert_eq!(f_to_h(&fv(&[6, 12, 8])), hv(&[1, 3, 3, 1]));
    }

    #[test]
    fn f_to_h_matches_polynomial_expansion() {
        let cases: &[&[u64]] = &[&[1], &[3, 1], &[9, 0, 4], &[5, 8, 5, 1], &[12, 30, 2, 7, 19]];
        for c in cases {
            let f = fv(c);
            assert_eq!(f_to_h(&f).components(), &h_by_polynomial_expansion(&f)[..]);
        }
    }

    #[test]
    fn h_to_f_examples() {
        assert_eq!(h_to_f(&hv(&[1, 2, 1])).unwrap(), fv(&[4, 4]));
        assert_eq!(h_to_f(&hv(&[1, 1, 1, 1])).unwrap(), fv(&[4, 6, 4]));
        assert_eq!(h_to_f(&hv(&[1, 1, -1])).unwrap(), fv(&[3, 1]));
    }

    #[test]
    fn h_to_f_errors() {
        assert!(matches!(
            h_to_f(&hv(&[2, 1, 1])),
            Err(Error::LeadingCoefficient(_))
        ));
        assert!(h_to_f(&hv(&[1])).is_err());
        assert!(matches!(
            h_to_f(&hv(&[1, -5, 1])),
            Err(Error::NegativeComponent { .. })
        ));
    }

    #[test]
    fn symmetry() {
        assert!(is_symmetrical(&fv(&[4, 6, 4])));
        assert!(!is_symmetrical(&fv(&[3, 1])));
        assert!(!is_symmetrical(&fv(&[5, 8, 5, 1])));
        assert!(is_symmetrical(&fv(&[9])));
    }

    #[test]
    fn palindromic_vectors() {
        assert_eq!(palindromic_h(5, 3).unwrap(), hv(&[1, 3, 3, 3, 1]));
        assert_eq!(palindromic_h(4, 1).unwrap(), hv(&[1, 1, 1, 1]));
        assert_eq!(palindromic_h(2, 7).unwrap(), hv(&[1, 1]));
        assert!(palindromic_h(1, 3).is_err());
        assert!(palindromic_h(5, 0).is_err());
    }

    #[test]
    fn palindromic_duals_are_positive() {
        for len in 2..40usize {
            for c in 1..12u64 {
                let f = h_to_f(&palindromic_h(len, c).unwrap()).unwrap();
                assert!(f.components().iter().all(|x| !x.is_zero()));
            }
        }
    }
}
