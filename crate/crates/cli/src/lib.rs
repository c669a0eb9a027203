//! The `coning` command line.

mod args;
mod error;
mod manifest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use coning_core::{
    check_dehn_sommerville, check_mcmullen, cone_failure_threshold, dual_profile, encode_with_mode,
    f_of_graph, f_to_h, h_to_f, is_symmetrical, iterate_cone, palindromic_h, random_graph,
    read_stream, simplex_dual_f, vertex_equation_holds, write_stream, BigUint, FVector, Probability,
    RngConfig, SourceVector, StreamFormat, StreamManifest, VectorFile,
};
use coning_experiments::{ExperimentConfig, Layout};
use coning_sts::{run_suite, SuiteParams};
use serde_json::json;

pub use args::Cli;
use args::*;
pub use error::{CliError, CliResult};
use manifest::RunManifest;

/// Environment variable capping the worker thread count.
pub const WORKERS_ENV: &str = "CONING_WORKERS";

/// Runs the CLI and returns the process exit code.
pub fn main_with_args(argv: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match configure_workers().and_then(|()| dispatch(cli.command, &argv)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("coning: {e}");
            e.exit_code()
        }
    }
}

fn configure_workers() -> CliResult<()> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::usage(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    // A pool built earlier in the same process keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(command: Command, argv: &[String]) -> CliResult<()> {
    match command {
        Command::Generate(a) => generate(a, argv),
        Command::Convert(a) => convert(a, argv),
        Command::Certify(a) => certify(a, argv),
        Command::Encode(a) => encode(a, argv),
        Command::Test(a) => test(a, argv),
        Command::Experiment(a) => experiment(a, argv),
        Command::Report(a) => report(a, argv),
    }
}

fn announce(manifest: &Path) {
    eprintln!("manifest: {}", manifest.display());
}

fn forbid(flag: &str, present: bool, construction: &str) -> CliResult<()> {
    if present {
        return Err(CliError::usage(format!("--{flag} does not apply to --construction {construction}")));
    }
    Ok(())
}

fn require<T: Clone>(flag: &str, value: &Option<T>, construction: &str) -> CliResult<T> {
    value
        .clone()
        .ok_or_else(|| CliError::usage(format!("--construction {construction} needs --{flag}")))
}

fn generate(a: GenerateArgs, argv: &[String]) -> CliResult<()> {
    let mut manifest = RunManifest::new("generate", argv).param("cones", a.cones);
    // Flags are checked completely before anything is computed or written.
    let base: Box<dyn FnOnce() -> CliResult<FVector>> = match a.construction {
        Construction::SimplexDual => {
            let name = "simplex-dual";
            forbid("pattern-value", a.pattern_value.is_some(), name)?;
            forbid("graph-n", a.graph_n.is_some(), name)?;
            forbid("graph-p", a.graph_p.is_some(), name)?;
            forbid("seed", a.seed.is_some(), name)?;
            let len = require("length", &a.length, name)?;
            if len < 2 {
                return Err(CliError::usage("--length must be at least 2"));
            }
            manifest = manifest.param("construction", name).param("length", len);
            Box::new(move || Ok(simplex_dual_f(len as usize)?))
        }
        Construction::Pattern => {
            let name = "pattern";
            forbid("graph-n", a.graph_n.is_some(), name)?;
            forbid("graph-p", a.graph_p.is_some(), name)?;
            forbid("seed", a.seed.is_some(), name)?;
            let len = require("length", &a.length, name)?;
            let c = require("pattern-value", &a.pattern_value, name)?;
            if len < 2 || c < 1 {
                return Err(CliError::usage("--length must be at least 2 and --pattern-value at least 1"));
            }
            manifest = manifest
                .param("construction", name)
                .param("length", len)
                .param("pattern_value", c);
            Box::new(move || Ok(h_to_f(&palindromic_h(len as usize, c)?)?))
        }
        Construction::RandomGraph => {
            let name = "random-graph";
            forbid("length", a.length.is_some(), name)?;
            forbid("pattern-value", a.pattern_value.is_some(), name)?;
            let n = require("graph-n", &a.graph_n, name)?;
            let p: Probability = require("graph-p", &a.graph_p, name)?
                .parse()
                .map_err(CliError::usage)?;
            let seed = require("seed", &a.seed, name)?;
            if n < 1 {
                return Err(CliError::usage("--graph-n must be at least 1"));
            }
            let rng = RngConfig::new(seed);
            manifest = manifest
                .param("construction", name)
                .param("graph_n", n)
                .param("graph_p", p.to_string())
                .param("seed", seed)
                .param("rng", rng.algorithm());
            Box::new(move || Ok(f_of_graph(&random_graph(n, p, rng)?)))
        }
    };
    let f = iterate_cone(&base()?, a.cones as usize);
    let file = match a.vector {
        VectorKind::F => VectorFile::F(f),
        VectorKind::H => VectorFile::H(f_to_h(&f)),
    };
    file.write(&a.out)?;
    let path = manifest
        .param("vector", file.kind())
        .output(&a.out)?
        .write_beside(&a.out)?;
    announce(&path);
    Ok(())
}

fn convert(a: ConvertArgs, argv: &[String]) -> CliResult<()> {
    let input = VectorFile::read(&a.input)?;
    let output = match (a.direction, input) {
        (Direction::F2h, VectorFile::F(f)) => VectorFile::H(f_to_h(&f)),
        (Direction::H2f, VectorFile::H(h)) => VectorFile::F(h_to_f(&h)?),
        (dir, other) => {
            return Err(CliError::Data(format!(
                "{} holds an {}, which --direction {} cannot convert",
                a.input.display(),
                other.kind(),
                if dir == Direction::F2h { "f2h" } else { "h2f" }
            )))
        }
    };
    output.write(&a.out)?;
    let path = RunManifest::new("convert", argv)
        .param("direction", if a.direction == Direction::F2h { "f2h" } else { "h2f" })
        .input(&a.input)?
        .output(&a.out)?
        .write_beside(&a.out)?;
    announce(&path);
    Ok(())
}

fn certify(a: CertifyArgs, argv: &[String]) -> CliResult<()> {
    let out = a
        .out
        .clone()
        .unwrap_or_else(|| suffixed(&a.input, "certificate.json"));
    let input = VectorFile::read(&a.input)?;
    let (f, h) = match input {
        VectorFile::F(f) => {
            let h = f_to_h(&f);
            (f, h)
        }
        VectorFile::H(h) => (h_to_f(&h)?, h),
    };
    let d = a.dimension.unwrap_or(f.len());
    let profile = dual_profile(&f);
    let report = check_mcmullen(&profile, d)?;
    let threshold = if f.len() == 2 {
        let s = big_to_u64(&f[0])?;
        let t = big_to_u64(&f[1])?;
        if t >= 1 {
            cone_failure_threshold(s, t)?.map(|r| r.to_string())
        } else {
            None
        }
    } else {
        None
    };
    let certificate = json!({
        "input": a.input,
        "dimension": d,
        "dehn_sommerville": check_dehn_sommerville(&h),
        "symmetrical": is_symmetrical(&f),
        "conditions": {
            "symmetric": report.symmetric_ok,
            "monotone": report.monotone_ok,
            "growth": report.growth_ok,
        },
        "first_violation": report.first_violation,
        "g": report.g.components.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "vertex_equation": vertex_equation_holds(&profile, d)?,
        "threshold": threshold,
    });
    let mut text = serde_json::to_string_pretty(&certificate).expect("serializable");
    text.push('\n');
    write_text(&out, &text)?;
    print!("{text}");
    let path = RunManifest::new("certify", argv)
        .param("dimension", d)
        .input(&a.input)?
        .output(&out)?
        .write_beside(&out)?;
    announce(&path);
    if a.strict && !report.passed() {
        let v = report.first_violation.expect("failed report names a violation");
        return Err(CliError::Threshold(format!(
            "McMullen's conditions fail ({:?} at index {})",
            v.condition, v.index
        )));
    }
    Ok(())
}

fn encode(a: EncodeArgs, argv: &[String]) -> CliResult<()> {
    let input = VectorFile::read(&a.input)?;
    let mode = a.mode.into();
    let (stream, source) = match &input {
        VectorFile::F(f) => (
            encode_with_mode(f.components(), mode)?,
            SourceVector {
                kind: input.kind().into(),
                components: f.len(),
                sha256: input.sha256(),
                symmetrical: Some(is_symmetrical(f)),
                dehn_sommerville: Some(check_dehn_sommerville(&f_to_h(f))),
            },
        ),
        VectorFile::H(h) => (
            encode_with_mode(h.components(), mode)?,
            SourceVector {
                kind: input.kind().into(),
                components: h.len(),
                sha256: input.sha256(),
                symmetrical: None,
                dehn_sommerville: Some(check_dehn_sommerville(h)),
            },
        ),
    };
    let manifest = StreamManifest {
        bit_length: stream.bit_length(),
        source_vector: source,
        construction: "encode".into(),
        parameters: [
            ("argv".to_string(), json!(argv)),
            ("mode".to_string(), json!(mode.to_string())),
            ("input".to_string(), json!(a.input)),
        ]
        .into_iter()
        .collect(),
    };
    let format: StreamFormat = a.format.into();
    write_stream(&stream, format, &a.out, Some(&manifest))?;
    let path = coning_core::bitcodec::manifest_path(&a.out);
    if format == StreamFormat::Ascii {
        // Raw output writes its sidecar itself; ASCII gets the same record.
        manifest.write(&path)?;
    }
    announce(&path);
    Ok(())
}

fn suite_params(s: &SuiteArgs) -> CliResult<SuiteParams> {
    if !(s.alpha > 0.0 && s.alpha < 1.0) {
        return Err(CliError::usage(format!("--alpha must lie in (0, 1), got {}", s.alpha)));
    }
    Ok(SuiteParams {
        alpha: s.alpha,
        block_frequency_m: s.block_frequency_m,
        approx_entropy_m: s.approx_entropy_m,
        serial_m: s.serial_m,
        linear_complexity_m: s.linear_complexity_m,
    })
}

fn test(a: TestArgs, argv: &[String]) -> CliResult<()> {
    let params = suite_params(&a.suite)?;
    if !(0.0..=1.0).contains(&a.threshold) {
        return Err(CliError::usage("--threshold must lie in [0, 1]"));
    }
    let out = a.report.clone().unwrap_or_else(|| suffixed(&a.input, "report.json"));
    let stream = read_stream(&a.input, a.format.into())?;
    let report = run_suite(&stream, &params);
    let mut text = serde_json::to_string_pretty(&report).expect("serializable");
    text.push('\n');
    write_text(&out, &text)?;
    let path = RunManifest::new("test", argv)
        .param("threshold", a.threshold)
        .param("suite", serde_json::to_value(params).expect("serializable"))
        .input(&a.input)?
        .output(&out)?
        .write_beside(&out)?;
    for outcome in &report.results {
        match outcome.result() {
            Some(r) => println!(
                "{:<22} {}  {}",
                r.test_name,
                if r.passed { "pass" } else { "FAIL" },
                r.p_values.iter().map(|p| format!("{p:.6}")).collect::<Vec<_>>().join(" ")
            ),
            None => println!("{:<22} skipped", outcome.test_name()),
        }
    }
    println!(
        "pass proportion {}/{}; clustering fraction {:.4}",
        report.passed, report.applicable, report.clustering_fraction
    );
    announce(&path);
    match report.pass_proportion {
        Some(p) if p >= a.threshold => Ok(()),
        Some(p) => Err(CliError::Threshold(format!(
            "pass proportion {p:.4} is below {}",
            a.threshold
        ))),
        None => Err(CliError::Threshold("no test was applicable to this stream".into())),
    }
}

fn experiment(a: ExperimentArgs, _argv: &[String]) -> CliResult<()> {
    let mut cfg = ExperimentConfig::read(&a.config)?;
    let out = a
        .out
        .clone()
        .or_else(|| cfg.output_dir.clone())
        .ok_or_else(|| CliError::usage("no output directory: pass --out or set output_dir"))?;
    if a.full {
        cfg = cfg.full_scale();
    }
    let (run, table) = coning_experiments::run_and_write(&cfg, &out)?;
    let dir = coning_experiments::experiment_dir(&out, &cfg);
    for v in &run.variants {
        println!(
            "{}  bits={}  pass={}/{}  clustering={:.3}",
            v.variant, v.bit_length, v.report.passed, v.report.applicable, v.report.clustering_fraction
        );
    }
    println!(
        "{} variants; min pass proportion {}; table clustering fraction {:.4}{}",
        run.variants.len(),
        table
            .min_pass_proportion
            .map(|p| format!("{p:.4}"))
            .unwrap_or_else(|| "n/a".into()),
        table.clustering_fraction,
        if table.clustering_flag { " (flagged)" } else { "" }
    );
    announce(&dir.join(coning_experiments::CONFIG_FILE));
    if a.strict {
        let below = table.min_pass_proportion.is_some_and(|p| p < a.threshold);
        if below || table.clustering_flag {
            return Err(CliError::Threshold(format!(
                "pass proportion below {} or clustering flagged",
                a.threshold
            )));
        }
    }
    Ok(())
}

fn report(a: ReportArgs, argv: &[String]) -> CliResult<()> {
    let layout: Layout = a.layout.into();
    let entries = coning_experiments::load_reports(&a.dir)?;
    let out = a.out.clone().unwrap_or_else(|| a.dir.join(layout.file_name()));
    write_text(&out, &coning_experiments::aggregate(&entries, layout))?;
    let path = RunManifest::new("report", argv)
        .param("variants", entries.len())
        .output(&out)?
        .write_beside(&out)?;
    announce(&path);
    Ok(())
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

/// `dir/name.ext` -> `dir/name.ext.<suffix>`
fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn big_to_u64(x: &BigUint) -> CliResult<u64> {
    u64::try_from(x).map_err(|_| CliError::Data(format!("component {x} does not fit in 64 bits")))
}
