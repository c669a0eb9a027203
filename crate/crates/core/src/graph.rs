//! Seeded Erdős–Rényi graphs.
//!
//! The generator is xoshiro256** seeded through SplitMix64
//! (`Xoshiro256StarStar::seed_from_u64`). Each draw maps the top 53 bits of
//! `next_u64()` to `r = u / 2^53` in `[0, 1)`, and `r < p` is decided exactly
//! against the rational `p`. One value is drawn for every ordered pair
//! `(i, j)` of `0..n` in row-major order; the pair becomes an edge only when
//! `i < j` and the draw succeeded.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::FVector;

/// Name recorded in manifests for the pinned generator.
pub const RNG_ALGORITHM: &str = "xoshiro256starstar-splitmix64";

/// Generator configuration; identical configs produce identical graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngConfig {
    pub seed: u64,
}

impl RngConfig {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    fn build(&self) -> Xoshiro256StarStar {
        Xoshiro256StarStar::seed_from_u64(self.seed)
    }
}

/// A probability stored as a reduced fraction `num / den` with `num <= den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidArgument(format!(
                "probability {num}/{den} is outside [0, 1]"
            )));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `u / 2^53 < num / den`, decided without rounding.
    fn admits(&self, u53: u64) -> bool {
        (u53 as u128) * (self.den as u128) < (self.num as u128) << 53
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `a/b`, a decimal such as `0.35`, or an integer `0`/`1`.
impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse probability {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            return Self::new(a, b);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac.len() as u32);
        let frac_val: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Self::new(num, den)
    }
}

impl Serialize for Probability {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A simple graph on vertices `0..num_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub num_vertices: u32,
    /// Edges `(i, j)` with `i < j`, in generation order.
    pub edges: Vec<(u32, u32)>,
}

/// Vertex and edge counts of a generated graph, with the parameters that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub num_vertices: u64,
    pub num_edges: u64,
    pub seed: u64,
    pub edge_probability: Probability,
}

/// Samples `G(n, p)` with the pinned generator.
pub fn sample_graph(n: u32, p: Probability, rng: RngConfig) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
    }
    let mut gen = rng.build();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let u = gen.next_u64() >> 11;
            if p.admits(u) && i < j {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph {
        num_vertices: n,
        edges,
    })
}

/// Samples `G(n, p)` and returns only its counts.
pub fn random_graph(n: u32, p: Probability, rng: RngConfig) -> Result<GraphSummary> {
    let g = sample_graph(n, p, rng)?;
    Ok(GraphSummary {
        num_vertices: g.num_vertices as u64,
        num_edges: g.edges.len() as u64,
        seed: rng.seed,
        edge_probability: p,
    })
}

/// The graph regarded as a simplicial complex: `(f_0, f_1)`, or `(f_0)` when
/// there are no edges.
pub fn f_of_graph(g: &GraphSummary) -> FVector {
    if g.num_edges > 0 {
        FVector::from_u64s(&[g.num_vertices, g.num_edges])
    } else {
        FVector::from_u64s(&[g.num_vertices])
    }
    .expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(v: u64, e: u64) -> GraphSummary {
        GraphSummary {
            num_vertices: v,
            num_edges: e,
            seed: 0,
            edge_probability: Probability::one(),
        }
    }

    #[test]
    fn extreme_probabilities() {
        let g = random_graph(5, Probability::zero(), RngConfig::new(1)).unwrap();
        assert_eq!(g.num_edges, 0);
        let g = random_graph(5, Probability::one(), RngConfig::new(1)).unwrap();
        assert_eq!(g.num_edges, 10);
    }

    #[test]
    fn deterministic() {
        let p = "1/2".parse().unwrap();
        let a = sample_graph(30, p, RngConfig::new(99)).unwrap();
        let b = sample_graph(30, p, RngConfig::new(99)).unwrap();
        assert_eq!(a, b);
        let c = sample_graph(30, p, RngConfig::new(100)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn edge_count_bounded() {
        for seed in 0..20 {
            let g = random_graph(12, "0.3".parse().unwrap(), RngConfig::new(seed)).unwrap();
            assert!(g.num_edges <= 12 * 11 / 2);
        }
    }

    #[test]
    fn f_vectors_of_graphs() {
        assert_eq!(f_of_graph(&summary(4, 6)), FVector::from_u64s(&[4, 6]).unwrap());
        assert_eq!(f_of_graph(&summary(3, 0)), FVector::from_u64s(&[3]).unwrap());
        assert_eq!(f_of_graph(&summary(3, 1)), FVector::from_u64s(&[3, 1]).unwrap());
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("1/2".parse::<Probability>().unwrap(), Probability::new(1, 2).unwrap());
        assert_eq!("0.5".parse::<Probability>().unwrap(), Probability::new(1, 2).unwrap());
        assert_eq!("1".parse::<Probability>().unwrap(), Probability::one());
        assert_eq!("0".parse::<Probability>().unwrap(), Probability::zero());
        assert_eq!(".25".parse::<Probability>().unwrap(), Probability::new(1, 4).unwrap());
        assert!("1.5".parse::<Probability>().is_err());
        assert!("3/2".parse::<Probability>().is_err());
        assert!("-0.1".parse::<Probability>().is_err());
        assert!("x".parse::<Probability>().is_err());
        assert!(sample_graph(0, Probability::one(), RngConfig::new(0)).is_err());
    }

    #[test]
    fn exact_threshold_comparison() {
        let half = Probability::new(1, 2).unwrap();
        assert!(half.admits((1u64 << 52) - 1));
        assert!(!half.admits(1u64 << 52));
        assert!(Probability::one().admits((1u64 << 53) - 1));
        assert!(!Probability::zero().admits(0));
    }
}
