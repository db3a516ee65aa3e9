//! Run configuration: built-in defaults, then an optional JSON file, then
//! command-line flags (and `SPINON_DCF_THREADS`, which clap folds into the
//! `--threads` flag).

use crate::CliError;
use serde::Deserialize;
use spinon_dcf::specfun::QuadratureSpec;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quadrature: QuadratureSpec,
    pub output_format: OutputFormat,
    /// `None` writes to stdout.
    pub output_path: Option<PathBuf>,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quadrature: QuadratureSpec::default(),
            output_format: OutputFormat::Csv,
            output_path: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadratureFile {
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    split_point: Option<f64>,
    max_subdivisions: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    quadrature: QuadratureFile,
    output_format: Option<OutputFormat>,
    output_path: Option<PathBuf>,
    threads: Option<usize>,
}

/// Values given on the command line; `None` leaves the lower layer alone.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub quad_tol: Option<f64>,
    pub split_point: Option<f64>,
    pub max_subdivisions: Option<u32>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn load(file: Option<&Path>, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
            let parsed: ConfigFile =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
            let q = &mut cfg.quadrature;
            q.abs_tol = parsed.quadrature.abs_tol.unwrap_or(q.abs_tol);
            q.rel_tol = parsed.quadrature.rel_tol.unwrap_or(q.rel_tol);
            q.split_point = parsed.quadrature.split_point.unwrap_or(q.split_point);
            q.max_subdivisions = parsed.quadrature.max_subdivisions.unwrap_or(q.max_subdivisions);
            cfg.output_format = parsed.output_format.unwrap_or(cfg.output_format);
            cfg.output_path = parsed.output_path.or(cfg.output_path);
            cfg.threads = parsed.threads.unwrap_or(cfg.threads);
        }
        if let Some(tol) = flags.quad_tol {
            cfg.quadrature.abs_tol = tol;
            cfg.quadrature.rel_tol = tol;
        }
        if let Some(x) = flags.split_point {
            cfg.quadrature.split_point = x;
        }
        if let Some(n) = flags.max_subdivisions {
            cfg.quadrature.max_subdivisions = n;
        }
        if let Some(f) = flags.format {
            cfg.output_format = f;
        }
        if let Some(p) = &flags.output {
            cfg.output_path = (p.as_os_str() != "-").then(|| p.clone());
        }
        if let Some(t) = flags.threads {
            cfg.threads = t;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.quadrature.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if self.threads < 1 {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        Ok(())
    }
}
