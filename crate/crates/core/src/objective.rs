//! The decomposed objective, its augmented Lagrangian, and analytic gradients.
//!
//! The trade-off objective `I(X;Z) - beta I(Y;Z)` splits into a marginal part
//! `F_beta(p_z) = (beta - 1) sum_z p(z) ln p(z)` and an encoder part
//! `G_beta(p_{z|x}) = -H(Z|X) + beta H(Z|Y)`, where `p(z|y)` is always taken
//! through the Markov chain. The augmented Lagrangian couples the two through
//! the dual vector `mu_z` and the quadratic penalty on `p_z - B p_{z|x}`.
//!
//! Simplex equality constraints are never given multipliers here: solvers keep
//! every iterate feasible by construction (feasible initialization plus
//! sum-zero search directions), so those terms are identically zero.
//!
//! Cascaded gradients use the z-major layout of [`crate::prob::Encoder`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::{decoder_columns, Encoder, JointXY, LinearOps, ProbVector};

/// Trade-off multiplier `beta`, penalty coefficient `c`, and the weight
/// `omega` of the Bregman proximal term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveParams {
    pub beta: f64,
    pub c: f64,
    pub omega: f64,
}

impl ObjectiveParams {
    pub fn new(beta: f64, c: f64, omega: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::InvalidConfig(format!("beta must be >= 0, got {beta}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidConfig(format!("c must be > 0, got {c}")));
        }
        if !(omega >= 0.0 && omega.is_finite()) {
            return Err(Error::InvalidConfig(format!("omega must be >= 0, got {omega}")));
        }
        Ok(Self { beta, c, omega })
    }
}

/// The primal/dual triple of one ADMM iterate, plus the anchor of the
/// Bregman term (`p_z` of the previous outer iteration).
#[derive(Debug, Clone)]
pub struct AdmmState {
    pub p_z: ProbVector,
    pub encoder: Encoder,
    pub mu_z: Vec<f64>,
    pub p_z_prev: ProbVector,
}

impl AdmmState {
    pub fn new(
        p_z: ProbVector,
        encoder: Encoder,
        mu_z: Vec<f64>,
        p_z_prev: ProbVector,
    ) -> Result<Self> {
        let n_z = encoder.n_z();
        for (name, len) in [("p_z", p_z.len()), ("mu_z", mu_z.len()), ("p_z_prev", p_z_prev.len())] {
            if len != n_z {
                let _ = name;
                return Err(Error::LengthMismatch { left: len, right: n_z });
            }
        }
        if mu_z.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite("mu_z"));
        }
        Ok(Self {
            p_z,
            encoder,
            mu_z,
            p_z_prev,
        })
    }

    /// Coupling residual `p_z - B p_{z|x}`.
    pub fn coupling_residual(&self, joint: &JointXY) -> Vec<f64> {
        let ops = LinearOps::for_problem(joint, self.encoder.n_z());
        let marginal = ops.marginal(&self.encoder);
        self.p_z
            .iter()
            .zip(marginal.iter())
            .map(|(&p, &m)| p - m)
            .collect()
    }

    /// Squared L1 norm of the coupling residual, the stopping quantity.
    pub fn residual_l1_sq(&self, joint: &JointXY) -> f64 {
        let r = self.coupling_residual(joint);
        l1_norm(&r).powi(2)
    }
}

pub(crate) fn l1_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

fn xlnx_sum(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum()
}

/// `F_beta(p_z) = (beta - 1) sum_z p(z) ln p(z)`.
pub fn f_beta(p_z: &ProbVector, params: &ObjectiveParams) -> f64 {
    (params.beta - 1.0) * xlnx_sum(p_z)
}

/// `G_beta(p_{z|x})`: the encoder-side part,
/// `sum_x p(x) sum_z p(z|x) ln p(z|x) - beta sum_y p(y) sum_z p(z|y) ln p(z|y)`.
pub fn g_beta(joint: &JointXY, encoder: &Encoder, params: &ObjectiveParams) -> Result<f64> {
    if encoder.n_x() != joint.n_x() {
        return Err(Error::LengthMismatch {
            left: encoder.n_x(),
            right: joint.n_x(),
        });
    }
    let enc_term: f64 = joint
        .p_x()
        .iter()
        .zip(encoder.rows())
        .map(|(&px, row)| px * xlnx_sum(row))
        .sum();
    let cols = decoder_columns(joint, encoder);
    let dec_term: f64 = joint
        .p_y()
        .iter()
        .zip(cols.iter())
        .map(|(&py, col)| py * xlnx_sum(col))
        .sum();
    Ok(enc_term - params.beta * dec_term)
}

pub(crate) fn grad_f_raw(p_z: &[f64], beta: f64) -> Result<Vec<f64>> {
    let mut g = Vec::with_capacity(p_z.len());
    for (index, &p) in p_z.iter().enumerate() {
        if p <= 0.0 {
            return Err(Error::GradientSingularity { index });
        }
        g.push((beta - 1.0) * (p.ln() + 1.0));
    }
    Ok(g)
}

/// Gradient of `F_beta`: component `i` is `(beta - 1)(ln p(z_i) + 1)`.
/// Zero entries are an error; solvers must stay in the eps-interior.
pub fn grad_f(p_z: &ProbVector, params: &ObjectiveParams) -> Result<Vec<f64>> {
    grad_f_raw(p_z, params.beta)
}

pub(crate) fn grad_g_raw(
    joint: &JointXY,
    encoder: &Encoder,
    beta: f64,
) -> Result<Vec<f64>> {
    let (n_x, n_z) = (encoder.n_x(), encoder.n_z());
    let cols = decoder_columns(joint, encoder);
    for col in &cols {
        for (index, &d) in col.iter().enumerate() {
            if d <= 0.0 {
                return Err(Error::GradientSingularity { index });
            }
        }
    }
    let mut g = vec![0.0; n_x * n_z];
    for (x, row) in encoder.rows().iter().enumerate() {
        for (z, &p) in row.iter().enumerate() {
            if p <= 0.0 {
                return Err(Error::GradientSingularity { index: z * n_x + x });
            }
            let mut v = joint.p_x()[x] * (p.ln() + 1.0);
            for y in 0..joint.n_y() {
                v -= beta * joint.p_y()[y] * joint.x_given_y(y)[x] * (cols[y][z].ln() + 1.0);
            }
            g[z * n_x + x] = v;
        }
    }
    Ok(g)
}

/// Gradient of `G_beta` in the z-major cascade: component `(x, z)` is
/// `p(x)[ln p(z|x) + 1] - beta sum_y p(y) p(x|y)[ln p(z|y) + 1]`.
pub fn grad_g(joint: &JointXY, encoder: &Encoder, params: &ObjectiveParams) -> Result<Vec<f64>> {
    if encoder.n_x() != joint.n_x() {
        return Err(Error::LengthMismatch {
            left: encoder.n_x(),
            right: joint.n_x(),
        });
    }
    grad_g_raw(joint, encoder, params.beta)
}

/// `omega * D_KL(p || q)`, the Bregman proximal term for the entropy kernel.
pub fn bregman_kl(p: &ProbVector, q: &ProbVector, omega: f64) -> Result<f64> {
    Ok(omega * crate::prob::kl_divergence(p, q)?)
}

/// `L_c = F_beta(p_z) + G_beta(p_{z|x}) + mu^T (p_z - B p_{z|x})
///        + (c/2) || p_z - B p_{z|x} ||^2`.
///
/// The Bregman term is not part of `L_c`; it belongs to the `p_z` subproblem
/// and enters through [`grad_augmented_z`].
pub fn augmented_lagrangian(
    state: &AdmmState,
    joint: &JointXY,
    params: &ObjectiveParams,
) -> Result<f64> {
    let r = state.coupling_residual(joint);
    let dual: f64 = state.mu_z.iter().zip(r.iter()).map(|(&m, &ri)| m * ri).sum();
    let penalty: f64 = r.iter().map(|&ri| ri * ri).sum();
    Ok(f_beta(&state.p_z, params)
        + g_beta(joint, &state.encoder, params)?
        + dual
        + 0.5 * params.c * penalty)
}

pub(crate) fn grad_aug_z_raw(
    p_z: &[f64],
    p_z_prev: &[f64],
    mu_z: &[f64],
    residual: &[f64],
    params: &ObjectiveParams,
) -> Result<Vec<f64>> {
    let mut g = grad_f_raw(p_z, params.beta)?;
    for (index, ((gi, (&p, &prev)), (&mu, &r))) in g
        .iter_mut()
        .zip(p_z.iter().zip(p_z_prev.iter()))
        .zip(mu_z.iter().zip(residual.iter()))
        .enumerate()
    {
        if prev <= 0.0 {
            return Err(Error::GradientSingularity { index });
        }
        *gi += mu + params.c * r + params.omega * (p.ln() - prev.ln());
    }
    Ok(g)
}

/// Gradient of the `p_z` subproblem objective:
/// `grad_f(p_z) + mu_z + c (p_z - B p_{z|x}) + omega (ln p_z - ln p_z_prev)`.
pub fn grad_augmented_z(
    state: &AdmmState,
    joint: &JointXY,
    params: &ObjectiveParams,
) -> Result<Vec<f64>> {
    let r = state.coupling_residual(joint);
    grad_aug_z_raw(&state.p_z, &state.p_z_prev, &state.mu_z, &r, params)
}

/// Gradient of the encoder subproblem objective in the z-major cascade:
/// `grad_g(p_{z|x}) - B^T mu_z - c B^T (p_z - B p_{z|x})`.
pub fn grad_augmented_zx(
    state: &AdmmState,
    joint: &JointXY,
    params: &ObjectiveParams,
) -> Result<Vec<f64>> {
    let mut g = grad_g(joint, &state.encoder, params)?;
    let ops = LinearOps::for_problem(joint, state.encoder.n_z());
    let r = state.coupling_residual(joint);
    let pull: Vec<f64> = state
        .mu_z
        .iter()
        .zip(r.iter())
        .map(|(&m, &ri)| m + params.c * ri)
        .collect();
    let bt = ops.apply_bt(&pull);
    for (gi, b) in g.iter_mut().zip(bt.iter()) {
        *gi -= b;
    }
    Ok(g)
}
