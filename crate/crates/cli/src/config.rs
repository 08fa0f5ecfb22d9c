//! Run configuration: built-in defaults, then an optional TOML file, then flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand. Unset flags leave lower layers untouched.
#[derive(Args, Clone, Debug, Default)]
pub struct Overrides {
    /// Embedding family: minkowski, desitter, antidesitter, powerlaw, scale_factor
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Hubble parameter of the (anti-)de Sitter members
    #[arg(long = "H", global = true, value_name = "H")]
    pub h: Option<f64>,
    /// Power-law amplitude in a(t) = p t^q
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Power-law exponent in a(t) = p t^q
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Curvature coupling
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Mass squared
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub m2: Option<f64>,
    /// Homogeneity degree of the field
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Number of sample points
    #[arg(short = 'n', long = "samples", global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance of the primary identity checks
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write data here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// TOML configuration file
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    samples: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
    #[serde(default)]
    family: FileFamily,
    #[serde(default)]
    coupling: FileCoupling,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileFamily {
    name: Option<String>,
    #[serde(rename = "H")]
    h: Option<f64>,
    p: Option<f64>,
    q: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCoupling {
    xi: Option<f64>,
    m2: Option<f64>,
    r: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyConfig {
    pub name: String,
    #[serde(rename = "H")]
    pub h: f64,
    pub p: f64,
    pub q: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CouplingConfig {
    pub xi: f64,
    pub m2: f64,
    pub r: f64,
}

/// Fully resolved configuration, echoed into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub family: FamilyConfig,
    pub coupling: CouplingConfig,
    pub samples: usize,
    pub seed: u64,
    /// `None` keeps each check's own default.
    pub tol: Option<f64>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn defaults(command: &str) -> Self {
        Self {
            command: command.to_string(),
            family: FamilyConfig {
                name: "desitter".into(),
                h: 1.0,
                p: 1.0,
                q: 2.0,
            },
            coupling: CouplingConfig {
                xi: 0.0,
                m2: 0.0,
                r: 1.0,
            },
            samples: 200,
            seed: 1,
            tol: None,
            format: Format::Json,
            out: None,
        }
    }

    pub fn resolve(command: &str, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::defaults(command);
        if let Some(path) = &flags.config {
            cfg.apply_file(&load_file(path)?);
        }
        cfg.apply_flags(flags);
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, file: &FileConfig) {
        set(&mut self.samples, file.samples);
        set(&mut self.seed, file.seed);
        if file.tol.is_some() {
            self.tol = file.tol;
        }
        set(&mut self.format, file.format);
        if file.out.is_some() {
            self.out.clone_from(&file.out);
        }
        set(&mut self.family.name, file.family.name.clone());
        set(&mut self.family.h, file.family.h);
        set(&mut self.family.p, file.family.p);
        set(&mut self.family.q, file.family.q);
        set(&mut self.coupling.xi, file.coupling.xi);
        set(&mut self.coupling.m2, file.coupling.m2);
        set(&mut self.coupling.r, file.coupling.r);
    }

    fn apply_flags(&mut self, flags: &Overrides) {
        set(&mut self.family.name, flags.family.clone());
        set(&mut self.family.h, flags.h);
        set(&mut self.family.p, flags.p);
        set(&mut self.family.q, flags.q);
        set(&mut self.coupling.xi, flags.xi);
        set(&mut self.coupling.m2, flags.m2);
        set(&mut self.coupling.r, flags.r);
        set(&mut self.samples, flags.samples);
        set(&mut self.seed, flags.seed);
        if flags.tol.is_some() {
            self.tol = flags.tol;
        }
        set(&mut self.format, flags.format);
        if flags.out.is_some() {
            self.out.clone_from(&flags.out);
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        xfield::Family::from_name(&self.family.name)?;
        let reals = [
            ("H", self.family.h),
            ("p", self.family.p),
            ("q", self.family.q),
            ("xi", self.coupling.xi),
            ("m2", self.coupling.m2),
            ("r", self.coupling.r),
        ];
        for (name, v) in reals {
            if !v.is_finite() {
                return Err(CliError::Config(format!("{name} must be finite, got {v}")));
            }
        }
        if self.samples == 0 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Config(format!("tol must be positive, got {t}")));
            }
        }
        Ok(())
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn load_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
