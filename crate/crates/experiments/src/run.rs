//! Running a sweep: build each variant's vector, encode it, test it, and
//! optionally write the per-variant files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use coning_core::{
    check_dehn_sommerville, cone_failure_threshold, dual_profile, encode_with_mode, f_of_graph,
    f_to_h, h_to_f, is_symmetrical, iterate_cone, palindromic_h, random_graph, simplex_dual_f,
    vertex_equation_holds, write_stream, FVector, GraphSummary, HVector, RngConfig, SourceVector,
    StreamFormat, StreamManifest, VectorFile,
};
use coning_sts::{run_suite, SuiteReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Sweep};
use crate::error::{Error, Result};

pub const STREAM_FILE: &str = "stream.bin";
pub const MANIFEST_FILE: &str = "stream.manifest.json";
pub const REPORT_FILE: &str = "report.json";

/// One generated stream and its suite report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantResult {
    pub variant: String,
    pub bit_length: u64,
    pub source_vector: SourceVector,
    pub report: SuiteReport,
}

#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub config: ExperimentConfig,
    /// Ordered by variant id.
    pub variants: Vec<VariantResult>,
}

struct Plan {
    id: String,
    construction: &'static str,
    parameters: BTreeMap<String, Value>,
    build: Build,
}

enum Build {
    Cone { base: FVector, j: u64 },
    Simplex { len: u64 },
    Pattern { len: u64, value: u64 },
}

/// Vector behind one variant, with the h-vector it came from when known.
struct Source {
    f: FVector,
    h: Option<HVector>,
}

fn plans(cfg: &ExperimentConfig) -> Result<(Vec<Plan>, Option<GraphSummary>)> {
    let mut graph = None;
    let plans = match &cfg.sweep {
        Sweep::Coning { base_length, cones } => {
            let base = simplex_dual_f(*base_length as usize)?;
            cones
                .iter()
                .map(|j| Plan {
                    id: format!("cone-{j:04}"),
                    construction: "coned-simplex-dual",
                    parameters: params(&[("base_length", json!(base_length)), ("cones", json!(j))]),
                    build: Build::Cone { base: base.clone(), j },
                })
                .collect()
        }
        Sweep::Lengths { lengths } => lengths
            .iter()
            .map(|len| Plan {
                id: format!("length-{len:04}"),
                construction: "simplex-dual",
                parameters: params(&[("length", json!(len))]),
                build: Build::Simplex { len },
            })
            .collect(),
        Sweep::Patterns { base_length, values } => values
            .iter()
            .map(|c| Plan {
                id: format!("pattern-{c:04}"),
                construction: "pattern",
                parameters: params(&[("length", json!(base_length)), ("pattern_value", json!(c))]),
                build: Build::Pattern { len: *base_length, value: c },
            })
            .collect(),
        Sweep::RandomGraph { n, p, seed, cones } => {
            let rng = RngConfig::new(*seed);
            let g = random_graph(*n, *p, rng)?;
            let base = f_of_graph(&g);
            let threshold = if g.num_edges > 0 {
                cone_failure_threshold(g.num_vertices, g.num_edges)?
            } else {
                None
            };
            let plans = cones
                .iter()
                .map(|j| Plan {
                    id: format!("cone-{j:04}"),
                    construction: "random-graph",
                    parameters: params(&[
                        ("graph_n", json!(n)),
                        ("graph_p", json!(p.to_string())),
                        ("seed", json!(seed)),
                        ("rng", json!(rng.algorithm())),
                        ("num_edges", json!(g.num_edges)),
                        ("cones", json!(j)),
                        ("threshold", json!(threshold.map(|t| t.to_string()))),
                    ]),
                    build: Build::Cone { base: base.clone(), j },
                })
                .collect();
            graph = Some(g);
            plans
        }
    };
    Ok((plans, graph))
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

impl Build {
    fn source(&self) -> coning_core::Result<Source> {
        Ok(match self {
            Build::Cone { base, j } => Source {
                f: iterate_cone(base, *j as usize),
                h: None,
            },
            Build::Simplex { len } => {
                let h = HVector::all_ones(*len as usize)?;
                Source {
                    f: h_to_f(&h)?,
                    h: Some(h),
                }
            }
            Build::Pattern { len, value } => {
                let h = palindromic_h(*len as usize, *value)?;
                Source {
                    f: h_to_f(&h)?,
                    h: Some(h),
                }
            }
        })
    }
}

fn run_variant(cfg: &ExperimentConfig, plan: &Plan, dir: Option<&Path>) -> Result<VariantResult> {
    let in_variant = |source: coning_core::Error| Error::Variant {
        variant: plan.id.clone(),
        source,
    };
    let Source { f, h } = plan.build.source().map_err(in_variant)?;
    let h = h.unwrap_or_else(|| f_to_h(&f));
    let mut parameters = plan.parameters.clone();
    if plan.construction == "random-graph" {
        let d = f.len();
        let holds = vertex_equation_holds(&dual_profile(&f), d).map_err(in_variant)?;
        parameters.insert("vertex_equation_holds".into(), json!(holds));
    }
    parameters.insert("encoding".into(), json!(cfg.encoding.to_string()));

    let source_vector = SourceVector {
        kind: "fvector".into(),
        components: f.len(),
        symmetrical: Some(is_symmetrical(&f)),
        dehn_sommerville: Some(check_dehn_sommerville(&h)),
        sha256: VectorFile::F(f.clone()).sha256(),
    };
    let stream = encode_with_mode(f.components(), cfg.encoding).map_err(in_variant)?;
    drop(f);
    let report = run_suite(&stream, &cfg.suite);

    if let Some(root) = dir {
        let vdir = root.join(&plan.id);
        std::fs::create_dir_all(&vdir).map_err(|e| Error::io(&vdir, e))?;
        let manifest = StreamManifest {
            bit_length: stream.bit_length(),
            source_vector: source_vector.clone(),
            construction: plan.construction.into(),
            parameters,
        };
        write_stream(&stream, StreamFormat::Raw, &vdir.join(STREAM_FILE), Some(&manifest))?;
        write_json(&vdir.join(REPORT_FILE), &report)?;
    }
    Ok(VariantResult {
        variant: plan.id.clone(),
        bit_length: stream.bit_length(),
        source_vector,
        report,
    })
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Directory an experiment writes into under `out`.
pub fn experiment_dir(out: &Path, cfg: &ExperimentConfig) -> PathBuf {
    out.join(cfg.kind().name())
}

/// Runs every variant. With `out`, also writes
/// `<out>/<experiment>/<variant>/{stream.bin, stream.manifest.json, report.json}`.
pub fn run_experiment(cfg: &ExperimentConfig, out: Option<&Path>) -> Result<ExperimentRun> {
    cfg.validate()?;
    let (plans, _) = plans(cfg)?;
    let dir = out.map(|o| experiment_dir(o, cfg));
    if let Some(d) = &dir {
        std::fs::create_dir_all(d).map_err(|e| Error::io(d, e))?;
    }
    let variants = plans
        .par_iter()
        .map(|plan| run_variant(cfg, plan, dir.as_deref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentRun {
        config: cfg.clone(),
        variants,
    })
}
