//! p-value tables and their CSV/JSON layouts.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use coning_sts::{clustering_fraction, is_extreme, SuiteReport, TestOutcome};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::run::{write_json, ExperimentRun, REPORT_FILE};

/// A table is flagged when at least this share of all its p-values is
/// extreme.
pub const TABLE_CLUSTER_FLAG: f64 = 0.05;

/// A variant's report under its id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub variant: String,
    pub report: SuiteReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub variant: String,
    pub test: String,
    /// Absent for a skipped test.
    pub p_index: Option<usize>,
    pub p_value: Option<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantSummary {
    pub variant: String,
    pub bit_length: u64,
    pub applicable: usize,
    pub passed: usize,
    pub pass_proportion: Option<f64>,
    pub clustering_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PValueTable {
    pub rows: Vec<Row>,
    pub variants: Vec<VariantSummary>,
    /// Over every p-value in the table.
    pub clustering_fraction: f64,
    pub clustering_flag: bool,
    /// Smallest per-variant pass proportion.
    pub min_pass_proportion: Option<f64>,
}

impl PValueTable {
    pub fn new(entries: &[ReportEntry]) -> Self {
        let mut rows = Vec::new();
        let mut variants = Vec::new();
        for e in entries {
            for outcome in &e.report.results {
                match outcome {
                    TestOutcome::Ran(r) => {
                        for (i, &p) in r.p_values.iter().enumerate() {
                            rows.push(Row {
                                variant: e.variant.clone(),
                                test: r.test_name.clone(),
                                p_index: Some(i),
                                p_value: Some(p),
                                status: if p >= e.report.params.alpha {
                                    Status::Pass
                                } else {
                                    Status::Fail
                                },
                            });
                        }
                    }
                    TestOutcome::Skipped { test_name, .. } => rows.push(Row {
                        variant: e.variant.clone(),
                        test: test_name.clone(),
                        p_index: None,
                        p_value: None,
                        status: Status::Skipped,
                    }),
                }
            }
            variants.push(VariantSummary {
                variant: e.variant.clone(),
                bit_length: e.report.bit_length,
                applicable: e.report.applicable,
                passed: e.report.passed,
                pass_proportion: e.report.pass_proportion,
                clustering_fraction: e.report.clustering_fraction,
            });
        }
        let clustering = clustering_fraction(rows.iter().filter_map(|r| r.p_value.as_ref()));
        let min_pass_proportion = variants
            .iter()
            .filter_map(|v| v.pass_proportion)
            .min_by(f64::total_cmp);
        Self {
            rows,
            variants,
            clustering_fraction: clustering,
            clustering_flag: clustering >= TABLE_CLUSTER_FLAG,
            min_pass_proportion,
        }
    }

    /// Count of extreme p-values.
    pub fn extreme_count(&self) -> usize {
        self.rows
            .iter()
            .filter_map(|r| r.p_value)
            .filter(|&p| is_extreme(p))
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    ScatterCsv,
    SparklineCsv,
    Json,
}

impl Layout {
    pub fn file_name(self) -> &'static str {
        match self {
            Layout::ScatterCsv => "scatter.csv",
            Layout::SparklineCsv => "sparkline.csv",
            Layout::Json => "reports.json",
        }
    }

    pub const ALL: [Layout; 3] = [Layout::ScatterCsv, Layout::SparklineCsv, Layout::Json];
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scatter_csv" | "scatter-csv" => Ok(Layout::ScatterCsv),
            "sparkline_csv" | "sparkline-csv" => Ok(Layout::SparklineCsv),
            "json" => Ok(Layout::Json),
            other => Err(Error::Config(format!(
                "unknown layout {other:?} (expected scatter_csv, sparkline_csv or json)"
            ))),
        }
    }
}

fn csv_string(records: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Shortest round-trip form; scientific below 1e-4 so tiny p-values stay
/// readable.
fn p_text(p: f64) -> String {
    if p != 0.0 && p < 1e-4 {
        format!("{p:e}")
    } else {
        p.to_string()
    }
}

/// `variant,test,p_index,p_value,status`, one row per p-value; a skipped
/// test gets one row with empty index and value.
pub fn scatter_csv(table: &PValueTable) -> String {
    let mut records = vec![["variant", "test", "p_index", "p_value", "status"]
        .map(String::from)
        .to_vec()];
    records.extend(table.rows.iter().map(|r| {
        vec![
            r.variant.clone(),
            r.test.clone(),
            opt(r.p_index),
            r.p_value.map(p_text).unwrap_or_default(),
            r.status.to_string(),
        ]
    }));
    csv_string(records)
}

/// One row per variant: its aggregates, then every p-value in test order.
/// Columns are `test[index]`; a test skipped for a variant leaves its cells
/// empty.
pub fn sparkline_csv(table: &PValueTable) -> String {
    let columns: BTreeSet<(String, usize)> = table
        .rows
        .iter()
        .filter_map(|r| r.p_index.map(|i| (r.test.clone(), i)))
        .collect();
    let mut header = vec![
        "variant".to_string(),
        "bit_length".to_string(),
        "pass_proportion".to_string(),
        "clustering_fraction".to_string(),
    ];
    header.extend(columns.iter().map(|(t, i)| format!("{t}[{i}]")));
    let mut records = vec![header];
    for v in &table.variants {
        let mut rec = vec![
            v.variant.clone(),
            v.bit_length.to_string(),
            opt(v.pass_proportion),
            v.clustering_fraction.to_string(),
        ];
        rec.extend(columns.iter().map(|(t, i)| {
            table
                .rows
                .iter()
                .find(|r| r.variant == v.variant && r.test == *t && r.p_index == Some(*i))
                .and_then(|r| r.p_value)
                .map(p_text)
                .unwrap_or_default()
        }));
        records.push(rec);
    }
    csv_string(records)
}

pub fn reports_json(entries: &[ReportEntry]) -> String {
    let mut text = serde_json::to_string_pretty(entries).expect("serializable");
    text.push('\n');
    text
}

/// Renders one layout.
pub fn aggregate(entries: &[ReportEntry], layout: Layout) -> String {
    match layout {
        Layout::ScatterCsv => scatter_csv(&PValueTable::new(entries)),
        Layout::SparklineCsv => sparkline_csv(&PValueTable::new(entries)),
        Layout::Json => reports_json(entries),
    }
}

/// Reads `<dir>/<variant>/report.json` for every variant directory, sorted
/// by variant id.
pub fn load_reports(dir: &Path) -> Result<Vec<ReportEntry>> {
    let listing = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<(String, PathBuf)> = Vec::new();
    for entry in listing {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let report = entry.path().join(REPORT_FILE);
        if report.is_file() {
            paths.push((entry.file_name().to_string_lossy().into_owned(), report));
        }
    }
    if paths.is_empty() {
        return Err(Error::Format {
            path: dir.to_path_buf(),
            message: format!("no */{REPORT_FILE} files found"),
        });
    }
    paths.sort();
    paths
        .into_iter()
        .map(|(variant, path)| {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let report = serde_json::from_str(&text).map_err(|e| Error::Format {
                path: path.clone(),
                message: e.to_string(),
            })?;
            Ok(ReportEntry { variant, report })
        })
        .collect()
}

/// Table-level aggregates plus each stream's certificate.
#[derive(Debug, Clone, Serialize)]
struct Summary<'a> {
    experiment: &'a str,
    variants: usize,
    min_pass_proportion: Option<f64>,
    clustering_fraction: f64,
    clustering_flag: bool,
    streams: Vec<StreamSummary<'a>>,
}

#[derive(Debug, Clone, Serialize)]
struct StreamSummary<'a> {
    variant: &'a str,
    bit_length: u64,
    symmetrical: Option<bool>,
    dehn_sommerville: Option<bool>,
    pass_proportion: Option<f64>,
    clustering_fraction: f64,
}

pub const SUMMARY_FILE: &str = "summary.json";
pub const CONFIG_FILE: &str = "experiment.cfg";

/// Writes the normalized config, the three layouts and `summary.json` into
/// an experiment directory.
pub fn write_aggregates(run: &ExperimentRun, dir: &Path) -> Result<PValueTable> {
    let entries: Vec<ReportEntry> = run
        .variants
        .iter()
        .map(|v| ReportEntry {
            variant: v.variant.clone(),
            report: v.report.clone(),
        })
        .collect();
    let table = PValueTable::new(&entries);
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))
    };
    write(CONFIG_FILE, run.config.normalized())?;
    write(Layout::ScatterCsv.file_name(), scatter_csv(&table))?;
    write(Layout::SparklineCsv.file_name(), sparkline_csv(&table))?;
    write(Layout::Json.file_name(), reports_json(&entries))?;
    let summary = Summary {
        experiment: run.config.kind().name(),
        variants: run.variants.len(),
        min_pass_proportion: table.min_pass_proportion,
        clustering_fraction: table.clustering_fraction,
        clustering_flag: table.clustering_flag,
        streams: run
            .variants
            .iter()
            .map(|v| StreamSummary {
                variant: &v.variant,
                bit_length: v.bit_length,
                symmetrical: v.source_vector.symmetrical,
                dehn_sommerville: v.source_vector.dehn_sommerville,
                pass_proportion: v.report.pass_proportion,
                clustering_fraction: v.report.clustering_fraction,
            })
            .collect(),
    };
    write_json(&dir.join(SUMMARY_FILE), &summary)?;
    Ok(table)
}
