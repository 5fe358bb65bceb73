use std::path::PathBuf;

use clap::ValueEnum;
use nigar::{Criterion, EmConfig, Mode, NigArModel, NigParams};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Joint,
    TwoStage,
    JointLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionArg {
    Loglik,
    Params,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand. Model parameters default to the
/// simulation design `ρ = 0.5`, `NIG(2.24, 1, 1, 2)`.
#[derive(Debug, Clone, PartialEq, clap::Args, Serialize)]
pub struct RunConfig {
    /// Input CSV (Yahoo daily layout or `index,value`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "Close")]
    pub column: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Joint)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = CriterionArg::Loglik)]
    pub criterion: CriterionArg,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Alternative to --alpha: `α = √(γ² + β²)`.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long, default_value_t = 30)]
    pub max_lag: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: None,
            column: "Close".into(),
            mode: ModeArg::Joint,
            criterion: CriterionArg::Loglik,
            tol: 1e-5,
            max_iter: 2000,
            seed: 1,
            rho: None,
            alpha: None,
            beta: None,
            mu: None,
            delta: None,
            gamma: None,
            n: None,
            reps: None,
            max_lag: 30,
            output: None,
            format: None,
        }
    }
}

impl RunConfig {
    pub fn em_config(&self) -> Result<EmConfig, CliError> {
        let cfg = EmConfig {
            max_iterations: self.max_iter,
            tolerance: self.tol,
            criterion: match self.criterion {
                CriterionArg::Loglik => Criterion::LogLikRelChange,
                CriterionArg::Params => Criterion::ParamRelChange,
            },
            mode: match self.mode {
                ModeArg::Joint => Mode::Joint,
                ModeArg::TwoStage => Mode::TwoStage,
                ModeArg::JointLiteral => Mode::JointLiteral,
            },
            ..EmConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn truth(&self) -> Result<NigArModel, CliError> {
        let beta = self.beta.unwrap_or(1.0);
        let mu = self.mu.unwrap_or(1.0);
        let delta = self.delta.unwrap_or(2.0);
        let innov = match (self.alpha, self.gamma) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give --alpha or --gamma, not both".into())),
            (None, Some(g)) => NigParams::from_gamma(g, beta, mu, delta)?,
            (a, None) => NigParams::new(a.unwrap_or(2.24), beta, mu, delta)?,
        };
        Ok(NigArModel::new(self.rho.unwrap_or(0.5), innov)?)
    }

    pub fn input(&self) -> Result<&std::path::Path, CliError> {
        self.input
            .as_deref()
            .ok_or_else(|| CliError::Usage("--input is required".into()))
    }

    pub fn json_only(&self) -> Result<(), CliError> {
        match self.format {
            Some(Format::Csv) => Err(CliError::Usage("this command writes JSON only".into())),
            _ => Ok(()),
        }
    }
}
