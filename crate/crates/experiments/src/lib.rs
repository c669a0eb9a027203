//! Sweeps over combinatorial bit streams: build each variant's vector,
//! encode it, run the statistical suite, and tabulate the p-values.

mod config;
mod error;
mod run;
mod table;

pub use config::{ExperimentConfig, ExperimentKind, Span, Sweep};
pub use error::{Error, Result};
pub use run::{
    experiment_dir, run_experiment, ExperimentRun, VariantResult, MANIFEST_FILE, REPORT_FILE,
    STREAM_FILE,
};
pub use table::{
    aggregate, load_reports, reports_json, scatter_csv, sparkline_csv, write_aggregates, Layout,
    PValueTable, ReportEntry, Row, Status, VariantSummary, CONFIG_FILE, SUMMARY_FILE,
    TABLE_CLUSTER_FLAG,
};

/// Runs `cfg` and writes the full output tree under `out`. Returns the run
/// and its table.
pub fn run_and_write(
    cfg: &ExperimentConfig,
    out: &std::path::Path,
) -> Result<(ExperimentRun, PValueTable)> {
    let run = run_experiment(cfg, Some(out))?;
    let table = write_aggregates(&run, &experiment_dir(out, cfg))?;
    Ok((run, table))
}
