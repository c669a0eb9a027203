//! Dehn–Sommerville symmetry, McMullen's conditions and the coning threshold.
//!
//! Two f-vector conventions meet here. A complex `K` counts `i`-simplices in
//! `f_i(K)`; a polytope `P` counts `i`-faces in `f_i(P)`. When `K` is dual to
//! a `d`-polytope, `f_i(K)` is the number of `(d-1-i)`-faces of `P`, so the
//! two profiles are reverses of each other. [`dual_profile`] is the only
//! place that translation happens.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::vector::{FVector, HVector};

/// Translate between the complex and polytope f-vector conventions.
pub fn dual_profile(f: &FVector) -> FVector {
    let mut c = f.components().to_vec();
    c.reverse();
    FVector::new(c).expect("non-empty")
}

/// `g_0..g_d` of a polytope profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVector {
    pub components: Vec<BigInt>,
    pub d: usize,
}

fn check_dimension(f: &FVector, d: usize) -> Result<()> {
    if d == 0 || f.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: f.len(),
        });
    }
    Ok(())
}

/// `g_i = sum_{j=0}^{d} (-1)^{i+j} C(j, i) f_j` over a polytope profile
/// `f_0..f_{d-1}`, taking `f_d = 1` for the polytope itself.
pub fn g_vector(f_polytope: &FVector, d: usize) -> Result<GVector> {
    check_dimension(f_polytope, d)?;
    let face = |j: usize| -> BigInt {
        if j == d {
            BigInt::one()
        } else {
            BigInt::from(f_polytope[j].clone())
        }
    };
    let components = (0..=d)
        .map(|i| {
            (i..=d).fold(BigInt::zero(), |acc, j| {
                let term = BigInt::from(binomial(j as u64, i as i64)) * face(j);
                if (i + j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    Ok(GVector { components, d })
}

/// True iff `h_i = h_{n-i}` for all `i`.
pub fn check_dehn_sommerville(h: &HVector) -> bool {
    let c = h.components();
    c.iter().eq(c.iter().rev())
}

/// `C(m, k)` for a big `m`.
fn binomial_big(m: &BigUint, k: u32) -> BigUint {
    if *m < BigUint::from(k) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= m - t;
        acc /= t + 1;
    }
    acc
}

/// The `i`-binomial (Macaulay) representation of `a`:
/// `a = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j)` with
/// `a_i > a_{i-1} > ... > a_j >= j >= 1`, returned as `(a_k, k)` pairs from
/// the top down.
pub fn macaulay_rep(a: &BigUint, i: u32) -> Result<Vec<(BigUint, u32)>> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("Macaulay representation needs a >= 1".into()));
    }
    if i < 1 {
        return Err(Error::InvalidArgument("Macaulay representation needs i >= 1".into()));
    }
    let mut rem = a.clone();
    let mut out = Vec::new();
    let mut k = i;
    while !rem.is_zero() && k >= 1 {
        // Largest m with C(m, k) <= rem. C(m, k) >= m - k + 1 for m >= k,
        // which bounds the search from above.
        let mut lo = BigUint::from(k);
        let mut hi = &rem + (k - 1);
        while lo < hi {
            let mid: BigUint = (&lo + &hi + 1u32) >> 1;
            if binomial_big(&mid, k) <= rem {
                lo = mid;
            } else {
                hi = mid - 1u32;
            }
        }
        rem -= binomial_big(&lo, k);
        out.push((lo, k));
        k -= 1;
    }
    debug_assert!(rem.is_zero());
    Ok(out)
}

/// Macaulay pseudo-power `a^<i> = sum C(a_k + 1, k + 1)`; `0^<i> = 0`.
pub fn pseudo_power(a: &BigUint, i: u32) -> Result<BigUint> {
    if a.is_zero() {
        return Ok(BigUint::zero());
    }
    Ok(macaulay_rep(a, i)?
        .iter()
        .map(|(ak, k)| binomial_big(&(ak + 1u32), k + 1))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `g_i = g_{d-i}`
    Symmetric,
    /// `g_i <= g_{i+1}`
    Monotone,
    /// `g_{i+1} - g_i <= (g_i - g_{i-1})^<i>`
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub index: usize,
}

/// Outcome of McMullen's three conditions on one polytope profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McMullenReport {
    pub symmetric_ok: bool,
    pub monotone_ok: bool,
    pub growth_ok: bool,
    /// `floor((d - 1) / 2)`
    pub m_index: usize,
    /// `floor(d / 2)`
    pub half_index: usize,
    pub first_violation: Option<Violation>,
    pub g: GVector,
}

impl McMullenReport {
    pub fn passed(&self) -> bool {
        self.symmetric_ok && self.monotone_ok && self.growth_ok
    }
}

/// Evaluate McMullen's conditions on a polytope profile `f_0..f_{d-1}`.
///
/// A negative difference `g_i - g_{i-1}` has no pseudo-power and counts as
/// a growth violation at `i`.
pub fn check_mcmullen(f_polytope: &FVector, d: usize) -> Result<McMullenReport> {
    let g = g_vector(f_polytope, d)?;
    let gs = &g.components;
    let m_index = (d - 1) / 2;
    let half_index = d / 2;

    let symmetric = (0..=m_index).find(|&i| gs[i] != gs[d - i]);
    let monotone = (0..half_index).find(|&i| gs[i] > gs[i + 1]);
    let growth = (1..half_index).find(|&i| {
        let prev = &gs[i] - &gs[i - 1];
        let next = &gs[i + 1] - &gs[i];
        if prev.is_negative() {
            return true;
        }
        let bound = pseudo_power(prev.magnitude(), i as u32).expect("i >= 1");
        next > BigInt::from(bound)
    });

    let first_violation = [
        (Condition::Symmetric, symmetric),
        (Condition::Monotone, monotone),
        (Condition::Growth, growth),
    ]
    .into_iter()
    .find_map(|(condition, at)| at.map(|index| Violation { condition, index }));

    Ok(McMullenReport {
        symmetric_ok: symmetric.is_none(),
        monotone_ok: monotone.is_none(),
        growth_ok: growth.is_none(),
        m_index,
        half_index,
        first_violation,
        g,
    })
}

/// `f_0 = (d-1) f_{d-1} - (d+1)(d-2)` on a polytope profile.
pub fn vertex_equation_holds(f_polytope: &FVector, d: usize) -> Result<bool> {
    check_dimension(f_polytope, d)?;
    let d_int = BigInt::from(d);
    let rhs = (&d_int - 1) * BigInt::from(f_polytope[d - 1].clone()) - (&d_int + 1) * (&d_int - 2);
    Ok(BigInt::from(f_polytope[0].clone()) == rhs)
}

/// A reduced fraction with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub numerator: i64,
    pub denominator: i64,
}

impl Ratio {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        let g = numerator.gcd(&denominator);
        let sign = denominator.signum();
        Self {
            numerator: sign * numerator / g,
            denominator: sign * denominator / g,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.denominator == 1
    }

    /// The value as a non-negative integer, if it is one.
    pub fn as_count(&self) -> Option<usize> {
        (self.is_integer() && self.numerator >= 0).then_some(self.numerator as usize)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The only number of cones `j` at which the dual of `C^j(G)` can satisfy
/// the vertex equation, for a graph with `s` vertices and `t >= 1` edges:
/// `(t - s) / (s - 2)`. `None` when `s = 2`.
pub fn cone_failure_threshold(s: u64, t: u64) -> Result<Option<Ratio>> {
    if t < 1 {
        return Err(Error::InvalidArgument(
            "threshold needs a graph with at least one edge".into(),
        ));
    }
    if s == 2 {
        return Ok(None);
    }
    Ok(Some(Ratio::new(t as i64 - s as i64, s as i64 - 2)))
}
