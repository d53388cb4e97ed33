//! Computable convergence-condition quantities and trace diagnostics.
//!
//! For an instance `(joint, eps, beta, omega, c)` the certificate evaluates
//!
//! * `eta_z = beta + omega - 1`, the strong-convexity modulus of the
//!   regularized marginal objective;
//! * `kappa` and `gamma_beta = beta kappa / eps - 1`, the conditioning
//!   constants of the non-convex encoder block;
//! * `rho_1(alpha) = eta_z - gamma_beta [1 + 1/(c(1 - alpha))]` and
//!   `rho_2(alpha) = 1/(2c) - gamma_beta [1/c^2 + (1 - alpha)/(c alpha)]`
//!   on a grid of `alpha` in (0, 1), plus `rho_3 = eta_z + c/2`;
//! * the threshold `alpha > 1 - 1/(2 eta_z)`.
//!
//! The instance is certificate-feasible when some grid point makes both
//! `rho_1` and `rho_2` non-negative (any `alpha` works when
//! `gamma_beta <= 0`), in which case the Lyapunov sequence
//! `V^k = (c/2)||p_z^k - p_z*||^2 + (1/2c)||mu^k - mu*||^2` is non-increasing.
//! The true stationary point is unobservable, so [`lyapunov_trace`] is
//! evaluated against a caller-supplied reference, in practice the run's final
//! iterate; every report carries that substitution.

use serde::Serialize;

use crate::admm::{AdmmConfig, IterationTrace};
use crate::error::{Error, Result};
use crate::prob::{kappa, JointXY};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoSample {
    pub alpha: f64,
    pub rho1: f64,
    pub rho2: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub kappa: f64,
    pub gamma_beta: f64,
    pub eta_z: f64,
    /// `1 - 1/(2 eta_z)`; absent when `eta_z <= 0`.
    pub alpha_threshold: Option<f64>,
    pub rho3: f64,
    pub rho_profile: Vec<RhoSample>,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// 101 uniform points on (0.005, 0.995).
pub fn default_alpha_grid() -> Vec<f64> {
    (0..101).map(|i| 0.005 + 0.0099 * i as f64).collect()
}

/// Evaluates the certificate for the solver configuration; `eps` is the
/// config's interior floor, tying the constants to the iterates the solver
/// actually produces.
pub fn compute_certificate(
    joint: &JointXY,
    config: &AdmmConfig,
    alpha_grid: &[f64],
) -> Result<Certificate> {
    let eps = config.eps_floor;
    if !(eps > 0.0) {
        return Err(Error::InvalidConfig(format!("eps_floor must be > 0, got {eps}")));
    }
    let (beta, omega, c) = (config.params.beta, config.params.omega, config.params.c);
    if !(c > 0.0) {
        return Err(Error::InvalidConfig(format!("c must be > 0, got {c}")));
    }
    let kappa = kappa(joint).kappa;
    let gamma_beta = beta * kappa / eps - 1.0;
    let eta_z = beta + omega - 1.0;
    let rho3 = eta_z + c / 2.0;

    let rho_profile: Vec<RhoSample> = alpha_grid
        .iter()
        .filter(|&&a| a > 0.0 && a < 1.0)
        .map(|&alpha| RhoSample {
            alpha,
            rho1: eta_z - gamma_beta * (1.0 + 1.0 / (c * (1.0 - alpha))),
            rho2: 1.0 / (2.0 * c) - gamma_beta * (1.0 / (c * c) + (1.0 - alpha) / (c * alpha)),
        })
        .collect();

    if eta_z <= 0.0 {
        return Ok(Certificate {
            kappa,
            gamma_beta,
            eta_z,
            alpha_threshold: None,
            rho3,
            rho_profile,
            feasible: false,
            diagnostic: Some(format!(
                "eta_z = beta + omega - 1 = {eta_z} is not positive; the regularized \
                 marginal objective is not strongly convex at these parameters"
            )),
        });
    }

    let feasible = rho_profile
        .iter()
        .any(|s| s.rho1 >= 0.0 && s.rho2 >= 0.0);
    Ok(Certificate {
        kappa,
        gamma_beta,
        eta_z,
        alpha_threshold: Some(1.0 - 1.0 / (2.0 * eta_z)),
        rho3,
        rho_profile,
        feasible,
        diagnostic: None,
    })
}

/// `V^k = (c/2)||p_z^k - p_z*||^2 + (1/2c)||mu^k - mu*||^2` per recorded
/// iteration, against a supplied reference point.
pub fn lyapunov_trace(
    trace: &IterationTrace,
    p_z_star: &[f64],
    mu_z_star: &[f64],
    c: f64,
) -> Result<Vec<f64>> {
    if trace.records.is_empty() {
        return Err(Error::TraceIncomplete);
    }
    let mut out = Vec::with_capacity(trace.records.len());
    for rec in &trace.records {
        if rec.p_z.len() != p_z_star.len() || rec.mu_z.len() != mu_z_star.len() {
            return Err(Error::LengthMismatch {
                left: rec.p_z.len(),
                right: p_z_star.len(),
            });
        }
        let dp: f64 = rec
            .p_z
            .iter()
            .zip(p_z_star.iter())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum();
        let dmu: f64 = rec
            .mu_z
            .iter()
            .zip(mu_z_star.iter())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum();
        out.push(0.5 * c * dp + dmu / (2.0 * c));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub monotone: bool,
    /// Index of the first element that exceeds its predecessor by more than
    /// the slack.
    pub first_violation: Option<usize>,
    /// Largest single-step increase (negative when strictly decreasing).
    pub max_increase: f64,
}

/// Checks `v[k+1] <= v[k] + slack` along the sequence.
pub fn monotonicity_report(v: &[f64], slack: f64) -> MonotonicityReport {
    assert!(v.len() >= 2, "monotonicity needs at least two samples");
    let mut first_violation = None;
    let mut max_increase = f64::NEG_INFINITY;
    for k in 0..v.len() - 1 {
        let delta = v[k + 1] - v[k];
        max_increase = max_increase.max(delta);
        if delta > slack && first_violation.is_none() {
            first_violation = Some(k + 1);
        }
    }
    MonotonicityReport {
        monotone: first_violation.is_none(),
        first_violation,
        max_increase,
    }
}
