//! Face-count vectors and their line-oriented text format.
//!
//! The text format is one header line, `fvector <count>` or
//! `hvector <count>`, followed by exactly `count` decimal integers, one per
//! line. `count` is the number of stored components in both cases.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Face counts `f_0..f_{n-1}` of an `(n-1)`-dimensional simplicial complex.
///
/// The empty face `f_{-1} = 1` is implicit and never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector(Vec<BigUint>);

impl FVector {
    pub fn new(components: Vec<BigUint>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(components))
    }

    pub fn from_u64s(components: &[u64]) -> Result<Self> {
        Self::new(components.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn components(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_components(self) -> Vec<BigUint> {
        self.0
    }

    /// Number of stored components, `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension `n - 1` of the complex.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> &BigUint {
        &self.0[0]
    }

    pub fn last(&self) -> &BigUint {
        &self.0[self.0.len() - 1]
    }
}

impl std::ops::Index<usize> for FVector {
    type Output = BigUint;

    fn index(&self, i: usize) -> &BigUint {
        &self.0[i]
    }
}

impl TryFrom<Vec<BigUint>> for FVector {
    type Error = Error;

    fn try_from(v: Vec<BigUint>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FVector> for Vec<BigUint> {
    fn from(v: FVector) -> Self {
        v.0
    }
}

/// Components `h_0..h_n` of the dual h-vector. Signed, since complexes that
/// are not spheres can produce negative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVector(Vec<BigInt>);

impl HVector {
    pub fn new(components: Vec<BigInt>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(components))
    }

    pub fn from_i64s(components: &[i64]) -> Result<Self> {
        Self::new(components.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `L` copies of 1: the h-vector of the standard simplex with `L - 1` as
    /// its dimension.
    pub fn all_ones(len: usize) -> Result<Self> {
        Self::new(vec![BigInt::from(1); len])
    }

    pub fn components(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_components(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl std::ops::Index<usize> for HVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl TryFrom<Vec<BigInt>> for HVector {
    type Error = Error;

    fn try_from(v: Vec<BigInt>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<HVector> for Vec<BigInt> {
    fn from(v: HVector) -> Self {
        v.0
    }
}

/// Either kind of vector, as read from or written to a vector file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorFile {
    F(FVector),
    H(HVector),
}

impl VectorFile {
    pub fn kind(&self) -> &'static str {
        match self {
            VectorFile::F(_) => "fvector",
            VectorFile::H(_) => "hvector",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VectorFile::F(f) => f.len(),
            VectorFile::H(h) => h.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lowercase hex SHA-256 of the text serialization.
    pub fn sha256(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse::<VectorFile>().map_err(|e| e.with_path(path))
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_string()).map_err(|e| Error::io(path, e))
    }
}

impl From<FVector> for VectorFile {
    fn from(f: FVector) -> Self {
        VectorFile::F(f)
    }
}

impl From<HVector> for VectorFile {
    fn from(h: HVector) -> Self {
        VectorFile::H(h)
    }
}

impl fmt::Display for VectorFile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "{} {}", self.kind(), self.len())?;
        match self {
            VectorFile::F(f) => f.components().iter().try_for_each(|c| writeln!(out, "{c}")),
            VectorFile::H(h) => h.components().iter().try_for_each(|c| writeln!(out, "{c}")),
        }
    }
}

impl FromStr for VectorFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::format("empty vector file"))?;
        let mut parts = header.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let count: usize = parts
            .next()
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| Error::format(format!("bad header line {header:?}")))?;
        if parts.next().is_some() {
            return Err(Error::format(format!("bad header line {header:?}")));
        }

        let values = lines
            .map(|(no, line)| {
                line.trim().parse::<BigInt>().map_err(|_| {
                    Error::format(format!("line {}: not an integer: {:?}", no + 1, line.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != count {
            return Err(Error::format(format!(
                "header announces {count} components, found {}",
                values.len()
            )));
        }

        match kind {
            "fvector" => {
                let comps = values
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| match v.sign() {
                        Sign::Minus => Err(Error::format(format!(
                            "f-vector component {i} is negative"
                        ))),
                        _ => Ok(v.magnitude().clone()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(VectorFile::F(FVector::new(comps)?))
            }
            "hvector" => Ok(VectorFile::H(HVector::new(values)?)),
            other => Err(Error::format(format!("unknown vector kind {other:?}"))),
        }
    }
}
