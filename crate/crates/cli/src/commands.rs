use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nigar::diagnostics::{
    acf, histogram, jarque_bera, ks_2sample, ks_normality, pacf, qq_points, replication_study, CorrelogramPoint,
    ReplicationSummary, TestResult,
};
use nigar::distributions::nig_sample;
use nigar::estimation::cls_rho;
use nigar::model::{residuals, simulate_path};
use nigar::{em_fit, EmConfig, FitReport, NigArModel, RngStream, TimeSeries};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::ingest::{ingest_csv, IngestWarnings};

/// Shortest series `fit` accepts.
pub const MIN_FIT_LEN: usize = 10;
/// Size of the fitted-law sample the residuals are compared against.
pub const FITTED_SAMPLE: usize = 100_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

/// Top-level JSON document every command writes.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub command: &'static str,
    pub config_echo: RunConfig,
    pub seed: u64,
    pub result: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualTests {
    pub ks_normality: TestResult,
    pub jarque_bera: TestResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitOutput {
    pub series_len: usize,
    pub warnings: IngestWarnings,
    pub cls_rho: f64,
    pub report: FitReport,
    pub residual_tests: ResidualTests,
}

impl FitOutput {
    pub fn exit_code(&self) -> i32 {
        if self.report.converged() {
            EXIT_OK
        } else {
            EXIT_NOT_CONVERGED
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateOutput {
    pub model: NigArModel,
    pub n: usize,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnoseOutput {
    pub series_len: usize,
    pub warnings: IngestWarnings,
    pub fitted: NigArModel,
    pub acf: Vec<CorrelogramPoint>,
    pub pacf: Vec<CorrelogramPoint>,
    pub residual_acf: Vec<CorrelogramPoint>,
    pub residual_pacf: Vec<CorrelogramPoint>,
    pub residual_histogram: Histogram,
    /// (residual quantile, fitted-law quantile) pairs.
    pub qq: Vec<(f64, f64)>,
    pub ks_2sample: TestResult,
}

fn series_from(cfg: &RunConfig) -> Result<(TimeSeries, IngestWarnings), CliError> {
    let ingested = ingest_csv(cfg.input()?, &cfg.column)?;
    Ok((ingested.series, ingested.warnings))
}

fn check_fit_len(y: &TimeSeries) -> Result<(), CliError> {
    if y.len() < MIN_FIT_LEN {
        return Err(CliError::Usage(format!(
            "series has {} observations; fitting needs at least {MIN_FIT_LEN}",
            y.len()
        )));
    }
    Ok(())
}

/// CLS `ρ̂`, the EM fit and normality tests on the fitted residuals.
pub fn fit_series(y: &TimeSeries, em: &EmConfig) -> Result<(f64, FitReport, ResidualTests), CliError> {
    check_fit_len(y)?;
    let rho = cls_rho(y)?;
    let report = em_fit(y, em)?;
    let eps = residuals(y, report.params.rho)?;
    let tests = ResidualTests {
        ks_normality: ks_normality(&eps)?,
        jarque_bera: jarque_bera(&eps)?,
    };
    Ok((rho, report, tests))
}

pub fn cmd_fit(cfg: &RunConfig) -> Result<FitOutput, CliError> {
    cfg.json_only()?;
    let em = cfg.em_config()?;
    let (y, warnings) = series_from(cfg)?;
    let (rho, report, residual_tests) = fit_series(&y, &em)?;
    log::info!(
        "fit: {} after {} iterations, log-likelihood {}",
        if report.converged() { "converged" } else { "stopped at the iteration cap" },
        report.iterations,
        report.log_likelihood
    );
    Ok(FitOutput {
        series_len: y.len(),
        warnings,
        cls_rho: rho,
        report,
        residual_tests,
    })
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<SimulateOutput, CliError> {
    let model = cfg.truth()?;
    let n = cfg.n.unwrap_or(1000);
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let y = simulate_path(&model, n, &mut RngStream::new(cfg.seed, 0))?;
    Ok(SimulateOutput {
        model,
        n,
        values: y.into_values(),
    })
}

/// Correlograms of the series and of its fitted residuals, a residual
/// histogram, and the residuals against a large sample from the fitted law.
pub fn diagnose_series(y: &TimeSeries, em: &EmConfig, max_lag: usize, seed: u64) -> Result<DiagnoseOutput, CliError> {
    check_fit_len(y)?;
    let fit = em_fit(y, em)?;
    let eps = residuals(y, fit.params.rho)?;
    let eps_series = TimeSeries::new(eps.clone())?;
    let lag = max_lag.min(y.len() - 1);
    let res_lag = max_lag.min(eps.len() - 1);
    let mut rng = RngStream::new(seed, 1);
    let fitted: Vec<f64> = (0..FITTED_SAMPLE).map(|_| nig_sample(&fit.params.innov, &mut rng)).collect();
    let bins = ((eps.len() as f64).sqrt().ceil() as usize).clamp(5, 100);
    let (edges, counts) = histogram(&eps, bins)?;
    Ok(DiagnoseOutput {
        series_len: y.len(),
        warnings: IngestWarnings::default(),
        fitted: fit.params,
        acf: acf(y, lag)?,
        pacf: pacf(y, lag)?,
        residual_acf: acf(&eps_series, res_lag)?,
        residual_pacf: pacf(&eps_series, res_lag)?,
        residual_histogram: Histogram { edges, counts },
        qq: qq_points(&eps, &fitted)?,
        ks_2sample: ks_2sample(&eps, &fitted)?,
    })
}

pub fn cmd_diagnose(cfg: &RunConfig) -> Result<DiagnoseOutput, CliError> {
    cfg.json_only()?;
    let em = cfg.em_config()?;
    let (y, warnings) = series_from(cfg)?;
    let mut out = diagnose_series(&y, &em, cfg.max_lag, cfg.seed)?;
    out.warnings = warnings;
    Ok(out)
}

pub fn cmd_replicate(cfg: &RunConfig) -> Result<ReplicationSummary, CliError> {
    cfg.json_only()?;
    let truth = cfg.truth()?;
    let em = cfg.em_config()?;
    let n = cfg.n.unwrap_or(10_000);
    let reps = cfg.reps.unwrap_or(100);
    if n < MIN_FIT_LEN {
        return Err(CliError::Usage(format!("--n must be at least {MIN_FIT_LEN}")));
    }
    Ok(replication_study(&truth, n, reps, &em, &RngStream::new(cfg.seed, 0))?)
}

/// `path` with `suffix` appended to its file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn envelope<T: Serialize>(command: &'static str, cfg: &RunConfig, result: T) -> Envelope<T> {
    Envelope {
        command,
        config_echo: cfg.clone(),
        seed: cfg.seed,
        result,
    }
}

/// `index,value` rows with 17 significant digits.
pub fn series_csv(values: &[f64]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "value"])?;
    for (i, v) in values.iter().enumerate() {
        w.write_record([i.to_string(), format!("{v:.16e}")])?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

/// Per-replicate estimates in replicate order, one column per parameter.
pub fn replicate_csv(summary: &ReplicationSummary) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["replicate".to_string()];
    header.extend(summary.parameters.iter().map(|p| p.name.clone()));
    w.write_record(&header)?;
    let failed: Vec<usize> = summary.failures.iter().map(|f| f.replicate).collect();
    let ids = (0..summary.reps).filter(|r| !failed.contains(r));
    for (row, id) in ids.enumerate() {
        let mut rec = vec![id.to_string()];
        rec.extend(summary.parameters.iter().map(|p| format!("{:.16e}", p.estimates[row])));
        w.write_record(&rec)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

/// Runs one subcommand and writes its output; returns the exit code.
pub fn execute(command: &str, cfg: &RunConfig) -> Result<i32, CliError> {
    let out = cfg.output.as_deref();
    match command {
        "fit" => {
            let result = cmd_fit(cfg)?;
            let code = result.exit_code();
            write_to(out, &json_bytes(&envelope("fit", cfg, result))?)?;
            Ok(code)
        }
        "simulate" => {
            let result = cmd_simulate(cfg)?;
            match cfg.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    write_to(out, &series_csv(&result.values)?)?;
                    if let Some(p) = out {
                        let meta = SimulateOutput { values: Vec::new(), ..result };
                        fs::write(sidecar(p, ".meta.json"), json_bytes(&envelope("simulate", cfg, meta))?)?;
                    }
                }
                Format::Json => write_to(out, &json_bytes(&envelope("simulate", cfg, result))?)?,
            }
            Ok(EXIT_OK)
        }
        "diagnose" => {
            let result = cmd_diagnose(cfg)?;
            write_to(out, &json_bytes(&envelope("diagnose", cfg, result))?)?;
            Ok(EXIT_OK)
        }
        "replicate" => {
            let result = cmd_replicate(cfg)?;
            match out {
                Some(p) => fs::write(sidecar(p, ".estimates.csv"), replicate_csv(&result)?)?,
                None => log::info!("no --output given; per-replicate estimates not written"),
            }
            write_to(out, &json_bytes(&envelope("replicate", cfg, result))?)?;
            Ok(EXIT_OK)
        }
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}
