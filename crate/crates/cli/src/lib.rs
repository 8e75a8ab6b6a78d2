//! Command-line front end for the stratification toolkit.
//!
//! Three commands share one validated [`RunConfig`]: `strata` exports the
//! coset poset as JSON or DOT, `orbits` classifies zip orbits over a finite
//! field, and `verify` runs the randomized and exhaustive property suites.
//! JSON reports have the keys `config`, `results` and `anchors` in that order.

pub mod commands;
pub mod config;
pub mod json;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_orbits, cmd_strata, cmd_verify, strata_dot};
pub use config::{default_chi, parse_chi, parse_group, CliError, CliResult, OutFormat, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "eostrata", version, about = "Ekedahl-Oort strata, zip orbits and window checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the poset of strata.
    Strata(Common),
    /// Classify zip orbits over F_{p^r} and label them.
    Orbits(Common),
    /// Run a verification suite: frobenii, omega, inclusions, gluing, theta or all.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value = "gl:2")]
    pub group: String,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Comma-separated descending weights; defaults to a minuscule choice.
    #[arg(long)]
    pub chi: Option<String>,
    /// p-adic precision of the coefficient ring.
    #[arg(long, default_value_t = 2)]
    pub prec: u32,
    /// Relative degree of the base ring.
    #[arg(long = "baseD", default_value_t = 4)]
    pub base_d: usize,
    /// Truncation order of power series.
    #[arg(long, default_value_t = 14)]
    pub trunc: usize,
    /// Largest extension degree searched when merging orbits.
    #[arg(long, default_value_t = 3)]
    pub rmax: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Instances per randomized check.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
    #[arg(long)]
    pub path: Option<PathBuf>,
}

impl Common {
    pub fn to_config(&self) -> CliResult<RunConfig> {
        let group = parse_group(&self.group)?;
        let chi = match &self.chi {
            Some(s) => parse_chi(s)?,
            None => default_chi(&group),
        };
        let cfg = RunConfig {
            group,
            p: self.p,
            r: self.r,
            chi,
            prec_m: self.prec,
            base_d: self.base_d,
            trunc_n: self.trunc,
            ext_rmax: self.rmax,
            seed: self.seed,
            count: self.count,
            out_format: self.out,
            out_path: self.path.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Rendered output and whether the command succeeded.
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

pub fn execute(cmd: &Command) -> CliResult<Outcome> {
    let (common, outcome) = match cmd {
        Command::Strata(c) => {
            let cfg = c.to_config()?;
            let report = cmd_strata(&cfg)?;
            let text = match cfg.out_format {
                OutFormat::Json => json::to_json(&report)?,
                OutFormat::Dot => strata_dot(&report.results),
            };
            (c, Outcome { text, success: true })
        }
        Command::Orbits(c) => {
            let cfg = json_only(c)?;
            (c, Outcome { text: json::to_json(&cmd_orbits(&cfg)?)?, success: true })
        }
        Command::Verify { suite, common } => {
            let cfg = json_only(common)?;
            let report = cmd_verify(&cfg, suite)?;
            let success = report.results.passed;
            (common, Outcome { text: json::to_json(&report)?, success })
        }
    };
    if let Some(path) = &common.path {
        std::fs::File::create(path)?.write_all(outcome.text.as_bytes())?;
    }
    Ok(outcome)
}

fn json_only(c: &Common) -> CliResult<RunConfig> {
    let cfg = c.to_config()?;
    if cfg.out_format != OutFormat::Json {
        return Err(CliError::Config("only the strata command has DOT output".into()));
    }
    Ok(cfg)
}
