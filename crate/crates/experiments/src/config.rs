//! Experiment configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment. `experiment`
//! picks the sweep and is required. Keys that belong to a different sweep
//! are rejected; missing keys take the desk-scale defaults. Ranges are
//! inclusive: `cone_range = 0..19` runs twenty variants.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use coning_core::{EncodingMode, Probability};
use coning_sts::SuiteParams;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    ConingSweep,
    LengthSweep,
    PatternSweep,
    RandomGraph,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::ConingSweep => "coning_sweep",
            ExperimentKind::LengthSweep => "length_sweep",
            ExperimentKind::PatternSweep => "pattern_sweep",
            ExperimentKind::RandomGraph => "random_graph",
        }
    }

    fn own_keys(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::ConingSweep => &["base_length", "cone_range"],
            ExperimentKind::LengthSweep => &["length_range"],
            ExperimentKind::PatternSweep => &["base_length", "pattern_range"],
            ExperimentKind::RandomGraph => &["graph_n", "graph_p", "seed", "cone_range"],
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "coning_sweep" => ExperimentKind::ConingSweep,
            "length_sweep" => ExperimentKind::LengthSweep,
            "pattern_sweep" => ExperimentKind::PatternSweep,
            "random_graph" => ExperimentKind::RandomGraph,
            other => {
                return Err(Error::Config(format!(
                    "unknown experiment {other:?} (expected coning_sweep, length_sweep, pattern_sweep or random_graph)"
                )))
            }
        })
    }
}

/// Inclusive integer range `start..end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

impl Span {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start > end {
            return Err(Error::Config(format!("empty range {start}..{end}")));
        }
        Ok(Self { start, end })
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.end
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Accepts `a..b`, `a..=b` (both inclusive) or a single `a`.
impl FromStr for Span {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse range {s:?}"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Span::new(a, b)
    }
}

/// What one experiment sweeps over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sweep {
    /// Cone the dual of one simplex `j` times for each `j`.
    Coning { base_length: u64, cones: Span },
    /// Duals of simplices of each h-length, uncone.
    Lengths { lengths: Span },
    /// Palindromic h-vectors `(1, c, ..., c, 1)` for each `c`.
    Patterns { base_length: u64, values: Span },
    /// Cones over one seeded Erdős–Rényi graph.
    RandomGraph {
        n: u32,
        p: Probability,
        seed: u64,
        cones: Span,
    },
}

impl Sweep {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            Sweep::Coning { .. } => ExperimentKind::ConingSweep,
            Sweep::Lengths { .. } => ExperimentKind::LengthSweep,
            Sweep::Patterns { .. } => ExperimentKind::PatternSweep,
            Sweep::RandomGraph { .. } => ExperimentKind::RandomGraph,
        }
    }

    /// Desk-scale defaults.
    pub fn default_for(kind: ExperimentKind) -> Self {
        match kind {
            ExperimentKind::ConingSweep => Sweep::Coning {
                base_length: 551,
                cones: Span { start: 0, end: 19 },
            },
            ExperimentKind::LengthSweep => Sweep::Lengths {
                lengths: Span { start: 551, end: 600 },
            },
            ExperimentKind::PatternSweep => Sweep::Patterns {
                base_length: 551,
                values: Span { start: 1, end: 20 },
            },
            ExperimentKind::RandomGraph => Sweep::RandomGraph {
                n: 50,
                p: Probability::new(1, 2).expect("valid"),
                seed: 42,
                cones: Span { start: 0, end: 99 },
            },
        }
    }

    /// The sizes of the original runs. Graph parameters are kept.
    pub fn full_scale(&self) -> Self {
        match self {
            Sweep::Coning { .. } => Sweep::Coning {
                base_length: 3751,
                cones: Span { start: 0, end: 99 },
            },
            Sweep::Lengths { .. } => Sweep::Lengths {
                lengths: Span { start: 3750, end: 3849 },
            },
            Sweep::Patterns { .. } => Sweep::Patterns {
                base_length: 3750,
                values: Span { start: 1, end: 100 },
            },
            Sweep::RandomGraph { n, p, seed, .. } => Sweep::RandomGraph {
                n: *n,
                p: *p,
                seed: *seed,
                cones: Span { start: 0, end: 99 },
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub sweep: Sweep,
    pub suite: SuiteParams,
    pub encoding: EncodingMode,
    /// Not part of the normalized form, so a replayed config can target a
    /// different directory.
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Desk-scale config for `kind` with default suite parameters.
    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            sweep: Sweep::default_for(kind),
            suite: SuiteParams::default(),
            encoding: EncodingMode::Bitwise,
            output_dir: None,
        }
    }

    pub fn kind(&self) -> ExperimentKind {
        self.sweep.kind()
    }

    pub fn full_scale(mut self) -> Self {
        self.sweep = self.sweep.full_scale();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        match &self.sweep {
            Sweep::Coning { base_length, .. } | Sweep::Patterns { base_length, .. }
                if *base_length < 2 =>
            {
                return bad(format!("base_length must be at least 2, got {base_length}"));
            }
            Sweep::Lengths { lengths } if lengths.start < 2 => {
                return bad(format!("length_range must start at 2 or more, got {lengths}"));
            }
            Sweep::Patterns { values, .. } if values.start < 1 => {
                return bad(format!("pattern_range must start at 1 or more, got {values}"));
            }
            Sweep::RandomGraph { n, p, .. } => {
                if *n < 2 {
                    return bad(format!("graph_n must be at least 2, got {n}"));
                }
                if p.numerator() == 0 {
                    return bad("graph_p must be positive".into());
                }
            }
            _ => {}
        }
        let alpha = self.suite.alpha;
        if !(alpha > 0.0 && alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {alpha}"));
        }
        Ok(())
    }

    /// Parses a config file body.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigLine {
                line: line_no,
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            let key = key.trim().to_string();
            if !ALL_KEYS.contains(&key.as_str()) {
                return Err(Error::ConfigLine {
                    line: line_no,
                    message: format!("unknown key {key:?}"),
                });
            }
            if let Some((first, _)) = entries.get(&key) {
                return Err(Error::ConfigLine {
                    line: line_no,
                    message: format!("{key} already set on line {first}"),
                });
            }
            entries.insert(key, (line_no, value.trim().to_string()));
        }

        let (_, kind) = entries
            .remove("experiment")
            .ok_or_else(|| Error::Config("missing required key `experiment`".into()))?;
        let kind: ExperimentKind = kind.parse()?;
        for (key, (line, _)) in &entries {
            if SWEEP_KEYS.contains(&key.as_str()) && !kind.own_keys().contains(&key.as_str()) {
                return Err(Error::ConfigLine {
                    line: *line,
                    message: format!("{key} does not apply to experiment {kind}"),
                });
            }
        }

        let mut cfg = ExperimentConfig::new(kind);
        let mut get = |key: &str| entries.remove(key);
        fn parse_value<T: FromStr>(key: &str, entry: (usize, String)) -> Result<T> {
            let (line, value) = entry;
            value.parse().map_err(|_| Error::ConfigLine {
                line,
                message: format!("cannot parse {key} = {value:?}"),
            })
        }

        match &mut cfg.sweep {
            Sweep::Coning { base_length, cones } => {
                if let Some(e) = get("base_length") {
                    *base_length = parse_value("base_length", e)?;
                }
                if let Some(e) = get("cone_range") {
                    *cones = parse_value("cone_range", e)?;
                }
            }
            Sweep::Lengths { lengths } => {
                if let Some(e) = get("length_range") {
                    *lengths = parse_value("length_range", e)?;
                }
            }
            Sweep::Patterns { base_length, values } => {
                if let Some(e) = get("base_length") {
                    *base_length = parse_value("base_length", e)?;
                }
                if let Some(e) = get("pattern_range") {
                    *values = parse_value("pattern_range", e)?;
                }
            }
            Sweep::RandomGraph { n, p, seed, cones } => {
                if let Some(e) = get("graph_n") {
                    *n = parse_value("graph_n", e)?;
                }
                if let Some(e) = get("graph_p") {
                    *p = parse_value("graph_p", e)?;
                }
                if let Some(e) = get("seed") {
                    *seed = parse_value("seed", e)?;
                }
                if let Some(e) = get("cone_range") {
                    *cones = parse_value("cone_range", e)?;
                }
            }
        }
        let suite = &mut cfg.suite;
        if let Some(e) = get("alpha") {
            suite.alpha = parse_value("alpha", e)?;
        }
        if let Some(e) = get("block_frequency_m") {
            suite.block_frequency_m = parse_value("block_frequency_m", e)?;
        }
        if let Some(e) = get("approx_entropy_m") {
            suite.approx_entropy_m = parse_value("approx_entropy_m", e)?;
        }
        if let Some(e) = get("serial_m") {
            suite.serial_m = parse_value("serial_m", e)?;
        }
        if let Some(e) = get("linear_complexity_m") {
            suite.linear_complexity_m = parse_value("linear_complexity_m", e)?;
        }
        if let Some(e) = get("encoding") {
            cfg.encoding = parse_value("encoding", e)?;
        }
        if let Some((_, dir)) = get("output_dir") {
            cfg.output_dir = Some(PathBuf::from(dir));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Every setting spelled out, `output_dir` left out. Parsing it back
    /// gives the same config.
    pub fn normalized(&self) -> String {
        let mut out = format!("experiment = {}\n", self.kind());
        match &self.sweep {
            Sweep::Coning { base_length, cones } => {
                out += &format!("base_length = {base_length}\ncone_range = {cones}\n");
            }
            Sweep::Lengths { lengths } => out += &format!("length_range = {lengths}\n"),
            Sweep::Patterns { base_length, values } => {
                out += &format!("base_length = {base_length}\npattern_range = {values}\n");
            }
            Sweep::RandomGraph { n, p, seed, cones } => {
                out += &format!("graph_n = {n}\ngraph_p = {p}\nseed = {seed}\ncone_range = {cones}\n");
            }
        }
        let s = &self.suite;
        out += &format!(
            "alpha = {}\nblock_frequency_m = {}\napprox_entropy_m = {}\nserial_m = {}\nlinear_complexity_m = {}\nencoding = {}\n",
            s.alpha, s.block_frequency_m, s.approx_entropy_m, s.serial_m, s.linear_complexity_m, self.encoding
        );
        out
    }
}

const SWEEP_KEYS: &[&str] = &[
    "base_length",
    "cone_range",
    "length_range",
    "pattern_range",
    "graph_n",
    "graph_p",
    "seed",
];

const ALL_KEYS: &[&str] = &[
    "experiment",
    "base_length",
    "cone_range",
    "length_range",
    "pattern_range",
    "graph_n",
    "graph_p",
    "seed",
    "alpha",
    "block_frequency_m",
    "approx_entropy_m",
    "serial_m",
    "linear_complexity_m",
    "encoding",
    "output_dir",
];
