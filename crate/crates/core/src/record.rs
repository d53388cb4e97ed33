//! Per-run result records shared by all solvers and the sweep harness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Solver identifier used in CLI flags, CSV rows, and seed derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ba,
    Admm,
    Bayat,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ba, Method::Admm, Method::Bayat];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ba => "ba",
            Method::Admm => "admm",
            Method::Bayat => "bayat",
        }
    }

    /// Stable tag mixed into per-run seeds; intrinsic to the method so adding
    /// a method to a sweep never shifts another method's seed stream.
    pub(crate) fn seed_tag(self) -> u64 {
        match self {
            Method::Ba => 1,
            Method::Admm => 2,
            Method::Bayat => 3,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ba" => Ok(Method::Ba),
            "admm" => Ok(Method::Admm),
            "bayat" => Ok(Method::Bayat),
            other => Err(Error::InvalidConfig(format!(
                "unknown method '{other}' (expected ba, admm, or bayat)"
            ))),
        }
    }
}

/// One solver run: cell parameters, seed, and outcome.
///
/// `residual` is the method's own stopping quantity at termination: the
/// squared L1 coupling residual for the ADMM solvers (for the three-block
/// solver, the larger of its two stopping quantities) and the L1 encoder
/// change for BA. `cpu_ms` is wall time and is the only field exempt from
/// the determinism contract.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: Method,
    pub beta: f64,
    pub c: f64,
    pub omega: f64,
    pub seed: u64,
    pub converged: bool,
    pub iterations: usize,
    #[serde(rename = "I_xz")]
    pub i_xz: f64,
    #[serde(rename = "I_yz")]
    pub i_yz: f64,
    pub residual: f64,
    pub cpu_ms: f64,
}

impl RunRecord {
    pub const CSV_HEADER: &'static str =
        "method,beta,c,omega,seed,converged,iterations,I_xz,I_yz,residual,cpu_ms";

    /// One CSV row. With `include_timing` off the timing column is written
    /// as `0` so repeated sweeps are byte-identical.
    pub fn csv_row(&self, include_timing: bool) -> String {
        let cpu = if include_timing {
            format!("{}", self.cpu_ms)
        } else {
            "0".to_string()
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.method,
            self.beta,
            self.c,
            self.omega,
            self.seed,
            self.converged,
            self.iterations,
            self.i_xz,
            self.i_yz,
            self.residual,
            cpu
        )
    }

    /// Equality of everything except wall time.
    pub fn same_results(&self, other: &RunRecord) -> bool {
        self.method == other.method
            && self.beta.to_bits() == other.beta.to_bits()
            && self.c.to_bits() == other.c.to_bits()
            && self.omega.to_bits() == other.omega.to_bits()
            && self.seed == other.seed
            && self.converged == other.converged
            && self.iterations == other.iterations
            && self.i_xz.to_bits() == other.i_xz.to_bits()
            && self.i_yz.to_bits() == other.i_yz.to_bits()
            && self.residual.to_bits() == other.residual.to_bits()
    }
}
