//! Run configuration and its validation.

use std::path::PathBuf;

use eostrata_core::{AlgError, Cochar, Gf, GroupSpec};
use serde::Serialize;

use crate::json::Int;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] AlgError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Json,
    Dot,
}

/// Everything a command needs, validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub p: u64,
    pub r: usize,
    pub chi: Cochar,
    pub prec_m: u32,
    pub base_d: usize,
    pub trunc_n: usize,
    pub ext_rmax: usize,
    pub seed: u64,
    pub count: usize,
    pub out_format: OutFormat,
    pub out_path: Option<PathBuf>,
}

/// Parse `gl:n`, `sl:n` or `gsp:2g`.
pub fn parse_group(s: &str) -> CliResult<GroupSpec> {
    let (kind, n) = s
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("group {s:?} should look like gl:2, sl:3 or gsp:4")))?;
    let n: usize = n.trim().parse().map_err(|_| CliError::Config(format!("group size {n:?} is not a number")))?;
    let spec = match kind.trim().to_ascii_lowercase().as_str() {
        "gl" => GroupSpec::gl(n),
        "sl" => GroupSpec::sl(n),
        "gsp" => GroupSpec::gsp(n),
        other => return Err(CliError::Config(format!("unknown group family {other:?}; use gl, sl or gsp"))),
    };
    Ok(spec?)
}

/// Parse a comma-separated weight list such as `1,1,0,0`.
pub fn parse_chi(s: &str) -> CliResult<Cochar> {
    let w = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Config(format!("weight {t:?} is not an integer"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Cochar::new(w)?)
}

/// Minuscule weights used when `--chi` is omitted: `(1,…,1,0,…,0)` with
/// half ones for symplectic groups and a single one otherwise.
pub fn default_chi(group: &GroupSpec) -> Cochar {
    let n = group.n();
    let ones = if group.is_symplectic() { n / 2 } else { 1 };
    Cochar::new((0..n).map(|i| i64::from(i < ones)).collect()).expect("descending")
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        Gf::prime(self.p)?;
        if self.r == 0 {
            return Err(CliError::Config("--r must be at least 1".into()));
        }
        self.chi.validate_for(&self.group).map_err(|e| {
            CliError::Config(format!("--chi {:?} does not fit {}: {e}", self.chi.weights(), self.group))
        })?;
        let need = 2 * self.p as usize * self.chi.max_weight().max(0) as usize + 2;
        if self.trunc_n < need {
            return Err(CliError::Config(format!(
                "--trunc {} is too small for p = {} and these weights; use at least {need}",
                self.trunc_n, self.p
            )));
        }
        if self.prec_m == 0 {
            return Err(CliError::Config("--prec must be at least 1".into()));
        }
        if self.base_d == 0 {
            return Err(CliError::Config("--baseD must be at least 1".into()));
        }
        if self.count == 0 {
            return Err(CliError::Config("--count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            group: self.group.to_string(),
            p: self.p,
            r: self.r,
            chi: self.chi.weights().to_vec(),
            prec_m: self.prec_m,
            base_d: self.base_d,
            trunc_n: self.trunc_n,
            ext_rmax: self.ext_rmax,
            seed: Int(self.seed as u128),
            count: self.count,
        }
    }
}

/// The configuration as echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub group: String,
    pub p: u64,
    pub r: usize,
    pub chi: Vec<i64>,
    pub prec_m: u32,
    pub base_d: usize,
    pub trunc_n: usize,
    pub ext_rmax: usize,
    pub seed: Int,
    pub count: usize,
}
