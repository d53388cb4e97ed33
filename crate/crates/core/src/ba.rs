//! Blahut-Arimoto style fixed-point baseline.
//!
//! The update is `p(z|x) ∝ p(z) exp(-beta D_KL[p(y|x) || p(y|z)])` with the
//! marginal and decoder recomputed from the current encoder each step and
//! `p(y|z)` obtained by Bayes inversion afterwards. Weights are accumulated
//! in log space and normalized per row.
//!
//! A cluster whose marginal mass reaches zero has an undefined posterior; its
//! exponential weight is taken as zero, so the cluster stays dead, consistent
//! with the `0 ln 0 = 0` convention.

use crate::error::{Error, Result};
use crate::prob::{
    decoder_columns, mutual_information_xz, mutual_information_yz, Encoder, JointXY, LinearOps,
};

/// Stopping rule: L1 change of the cascaded encoder under `tol`, or
/// `max_iters`. `eps_floor` applies to random initialization only.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BaConfig {
    pub beta: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub eps_floor: f64,
}

impl BaConfig {
    pub fn new(beta: f64) -> Self {
        Self {
            beta,
            max_iters: 100_000,
            tol: 1e-10,
            eps_floor: 1e-4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be >= 1".into()));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "beta must be >= 0, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// One fixed-point update of the whole encoder.
pub fn ba_step(joint: &JointXY, encoder: &Encoder, beta: f64) -> Result<Encoder> {
    if encoder.n_x() != joint.n_x() {
        return Err(Error::LengthMismatch {
            left: encoder.n_x(),
            right: joint.n_x(),
        });
    }
    let (n_x, n_y, n_z) = (encoder.n_x(), joint.n_y(), encoder.n_z());
    let ops = LinearOps::for_problem(joint, n_z);
    let p_z = ops.marginal(encoder);
    let cols = decoder_columns(joint, encoder);

    // y_given_z[z][y]; rows for dead clusters stay unused.
    let mut y_given_z = vec![vec![0.0; n_y]; n_z];
    for z in 0..n_z {
        if p_z[z] > 0.0 {
            for y in 0..n_y {
                y_given_z[z][y] = cols[y][z] * joint.p_y()[y] / p_z[z];
            }
        }
    }

    let mut rows = Vec::with_capacity(n_x);
    for x in 0..n_x {
        let cond_x = joint.y_given_x_col(x);
        let mut log_w = vec![f64::NEG_INFINITY; n_z];
        for z in 0..n_z {
            if p_z[z] <= 0.0 {
                continue;
            }
            let mut div = 0.0;
            for y in 0..n_y {
                div += cond_x[y] * (cond_x[y] / y_given_z[z][y]).ln();
            }
            log_w[z] = p_z[z].ln() - beta * div;
        }
        let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::NonFinite("all clusters degenerate in ba_step"));
        }
        let mut w: Vec<f64> = log_w.iter().map(|&lw| (lw - max).exp()).collect();
        let norm: f64 = w.iter().sum();
        for v in &mut w {
            *v /= norm;
        }
        rows.push(w);
    }
    Encoder::new(rows)
}

/// Outcome of a BA run.
#[derive(Debug, Clone)]
pub struct BaRun {
    pub encoder: Encoder,
    pub converged: bool,
    pub iterations: usize,
    pub i_xz: f64,
    pub i_yz: f64,
    /// L1 encoder change at the final step, the stopping quantity.
    pub final_change: f64,
}

/// Iterates [`ba_step`] from `init` until the encoder stops moving.
pub fn ba_solve(joint: &JointXY, init: &Encoder, config: &BaConfig) -> Result<BaRun> {
    config.validate()?;
    let mut encoder = init.clone();
    let mut converged = false;
    let mut iterations = 0;
    let mut change = f64::INFINITY;
    for k in 1..=config.max_iters {
        let next = ba_step(joint, &encoder, config.beta)?;
        change = next.l1_distance(&encoder);
        encoder = next;
        iterations = k;
        if change < config.tol {
            converged = true;
            break;
        }
    }
    let i_xz = mutual_information_xz(joint, &encoder)?;
    let i_yz = mutual_information_yz(joint, &encoder)?;
    Ok(BaRun {
        encoder,
        converged,
        iterations,
        i_xz,
        i_yz,
        final_change: change,
    })
}
