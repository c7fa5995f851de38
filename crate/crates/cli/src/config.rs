//! Run configuration: built-in defaults, then an optional TOML file, then
//! command-line overrides.

use std::path::Path;

use hilbfock::adhm::{FlowOptions, DEFAULT_EPS, DEFAULT_RANK_TOL};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Every setting a command may read. Embedded verbatim in JSON reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub format: Format,
    pub zeta_r: f64,
    pub step: f64,
    pub max_iter: usize,
    pub flow_tol: f64,
    pub rank_tol: f64,
    pub eps: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let flow = FlowOptions::default();
        RunConfig {
            seed: 0,
            format: Format::Json,
            zeta_r: flow.zeta_r,
            step: flow.step,
            max_iter: flow.max_iter,
            flow_tol: flow.tol,
            rank_tol: DEFAULT_RANK_TOL,
            eps: DEFAULT_EPS,
        }
    }
}

/// The same fields, all optional; used for the file and for flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub zeta_r: Option<f64>,
    pub step: Option<f64>,
    pub max_iter: Option<usize>,
    pub flow_tol: Option<f64>,
    pub rank_tol: Option<f64>,
    pub eps: Option<f64>,
}

impl RunConfig {
    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = o.$f { self.$f = v; } )* };
        }
        take!(seed, format, zeta_r, step, max_iter, flow_tol, rank_tol, eps);
    }

    pub fn flow(&self) -> FlowOptions {
        FlowOptions {
            zeta_r: self.zeta_r,
            step: self.step,
            max_iter: self.max_iter,
            tol: self.flow_tol,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        self.flow().validate().map_err(|e| e.to_string())?;
        if !(self.rank_tol > 0.0) {
            return Err("rank_tol must be positive".into());
        }
        if !(self.eps > 0.0) {
            return Err("eps must be positive".into());
        }
        Ok(())
    }
}

pub fn load_file(path: &Path) -> Result<Overrides, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
