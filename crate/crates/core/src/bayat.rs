//! Three-block ADMM baseline that augments the decoder as well.
//!
//! Besides the marginal `p_z`, this solver carries an augmented decoder
//! `p(z|y)` (one column per `y`), tied to the encoder through `N_y` extra
//! consistency penalties. The objective splits as:
//!
//! * encoder block: `sum_x p(x) sum_z p(z|x) ln p(z|x)`  (`-H(Z|X)`)
//! * marginal block: `(beta - 1) sum_z p(z) ln p(z)`
//! * decoder block: `-beta sum_y p(y) sum_z p(z|y) ln p(z|y)` (`beta H(Z|Y)`)
//!
//! with penalties `(c/2) ||p_z - B p_{z|x}||^2` and, per `y`,
//! `(c/2) ||p_{z|y} - sum_x p(x|y) p_{z|x}||^2`, all sharing one coefficient.
//! One sweep is a fixed-order pass (encoder, marginal, decoder), one
//! mean-subtracted projected-gradient step per block, then both dual ascents.
//!
//! The decoder block minimizes a concave entropy term against its quadratic
//! penalty, so low `c` leaves it uncontained; the convergence-range gap
//! against the two-block solver comes from exactly this.
//!
//! This is a reconstruction from the published description; the convergence
//! comparison asserts orderings only, not magnitudes.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::admm::{face_direction, feasible_step, moving_min, IterationTrace, TraceRecord};
use crate::error::{Error, Result};
use crate::objective::l1_norm;
use crate::prob::{
    decoder_columns, mutual_information_xz, mutual_information_yz, Encoder, JointXY, LinearOps,
    ProbVector,
};
use crate::record::{Method, RunRecord};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BayatConfig {
    pub beta: f64,
    pub c: f64,
    pub eps_floor: f64,
    pub base_step: f64,
    /// Threshold on the squared L1 marginal residual.
    pub residual_tol: f64,
    /// Threshold on the per-(z, y) decoder deviation.
    pub decoder_tol: f64,
    pub max_outer_iters: usize,
    pub trace_stride: usize,
}

impl BayatConfig {
    pub fn new(beta: f64, c: f64) -> Self {
        Self {
            beta,
            c,
            eps_floor: 1e-4,
            base_step: 0.05,
            residual_tol: 2e-6,
            decoder_tol: 2e-6,
            max_outer_iters: 10_000,
            trace_stride: 0,
        }
    }

    pub fn validate(&self, n_z: usize) -> Result<()> {
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidConfig(format!("beta must be >= 0, got {}", self.beta)));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidConfig(format!("c must be > 0, got {}", self.c)));
        }
        if !(self.eps_floor > 0.0 && self.eps_floor * (n_z as f64) < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eps_floor must lie in (0, 1/N_z), got {}",
                self.eps_floor
            )));
        }
        if !(self.base_step > 0.0) {
            return Err(Error::InvalidConfig("base_step must be > 0".into()));
        }
        if !(self.residual_tol > 0.0 && self.decoder_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be > 0".into()));
        }
        if self.max_outer_iters == 0 {
            return Err(Error::InvalidConfig("max_outer_iters must be >= 1".into()));
        }
        Ok(())
    }

    /// Per-block step bounds: `base_step` capped by the inverse local
    /// curvature of the block's subproblem, mirroring the two-block solver.
    fn enc_step_bound(&self, p_x: f64, row_min: f64, posterior_sum: f64) -> f64 {
        let curvature = p_x / row_min.max(1e-300) + self.c * (p_x + posterior_sum);
        self.base_step.min(1.0 / curvature)
    }

    fn z_step_bound(&self, p_min: f64) -> f64 {
        let curvature = (self.beta - 1.0).abs() / p_min.max(1e-300) + self.c;
        self.base_step.min(1.0 / curvature)
    }

    fn dec_step_bound(&self, p_y: f64, col_min: f64) -> f64 {
        let curvature = self.beta * p_y / col_min.max(1e-300) + self.c;
        self.base_step.min(1.0 / curvature)
    }
}

/// Primal triple plus both dual families.
#[derive(Debug, Clone)]
pub struct BayatState {
    pub encoder: Encoder,
    pub p_z: ProbVector,
    /// Augmented decoder: column `y` is a distribution over `z`.
    pub p_z_given_y: Vec<ProbVector>,
    pub mu_z: Vec<f64>,
    /// Decoder-consistency duals, one vector of length `N_z` per `y`.
    pub mu_zy: Vec<Vec<f64>>,
}

impl BayatState {
    pub fn new(
        encoder: Encoder,
        p_z: ProbVector,
        p_z_given_y: Vec<ProbVector>,
        mu_z: Vec<f64>,
        mu_zy: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n_z = encoder.n_z();
        if p_z.len() != n_z || mu_z.len() != n_z {
            return Err(Error::LengthMismatch { left: p_z.len(), right: n_z });
        }
        if p_z_given_y.len() != mu_zy.len() {
            return Err(Error::LengthMismatch {
                left: p_z_given_y.len(),
                right: mu_zy.len(),
            });
        }
        for (col, mu) in p_z_given_y.iter().zip(mu_zy.iter()) {
            if col.len() != n_z || mu.len() != n_z {
                return Err(Error::LengthMismatch { left: col.len(), right: n_z });
            }
            if mu.iter().any(|m| !m.is_finite()) {
                return Err(Error::NonFinite("mu_zy"));
            }
        }
        if mu_z.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite("mu_z"));
        }
        Ok(Self {
            encoder,
            p_z,
            p_z_given_y,
            mu_z,
            mu_zy,
        })
    }

    /// Uniform-everything state with zero duals, a fixed point of the sweep.
    pub fn uniform(n_x: usize, n_y: usize, n_z: usize) -> Self {
        Self {
            encoder: Encoder::constant_rows(&ProbVector::uniform(n_z), n_x),
            p_z: ProbVector::uniform(n_z),
            p_z_given_y: vec![ProbVector::uniform(n_z); n_y],
            mu_z: vec![0.0; n_z],
            mu_zy: vec![vec![0.0; n_z]; n_y],
        }
    }

    pub fn marginal_residual(&self, joint: &JointXY) -> Vec<f64> {
        let ops = LinearOps::for_problem(joint, self.encoder.n_z());
        let marginal = ops.marginal(&self.encoder);
        self.p_z
            .iter()
            .zip(marginal.iter())
            .map(|(&p, &m)| p - m)
            .collect()
    }

    pub fn marginal_residual_l1_sq(&self, joint: &JointXY) -> f64 {
        l1_norm(&self.marginal_residual(joint)).powi(2)
    }

    /// Largest `|p(z|y) - (sum_x p(z|x) p(x|y)) / (sum_{x,z} p(z|x) p(x|y))|`
    /// over all `(z, y)`, the quoted decoder stopping quantity (the
    /// normalizer is 1 for a row-stochastic encoder and is kept as written).
    pub fn decoder_deviation(&self, joint: &JointXY) -> f64 {
        let cols = decoder_columns(joint, &self.encoder);
        let mut max_dev = 0.0f64;
        for (col, target) in self.p_z_given_y.iter().zip(cols.iter()) {
            let norm: f64 = target.iter().sum();
            for (&d, &t) in col.iter().zip(target.iter()) {
                max_dev = max_dev.max((d - t / norm).abs());
            }
        }
        max_dev
    }
}

/// Three-block augmented Lagrangian value, used for trace diagnostics.
fn bayat_lagrangian(state: &BayatState, joint: &JointXY, config: &BayatConfig) -> f64 {
    let xlnx = |v: &[f64]| -> f64 {
        v.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum()
    };
    let enc_term: f64 = joint
        .p_x()
        .iter()
        .zip(state.encoder.rows())
        .map(|(&px, row)| px * xlnx(row))
        .sum();
    let marg_term = (config.beta - 1.0) * xlnx(&state.p_z);
    let dec_term: f64 = -config.beta
        * joint
            .p_y()
            .iter()
            .zip(state.p_z_given_y.iter())
            .map(|(&py, col)| py * xlnx(col))
            .sum::<f64>();

    let rz = state.marginal_residual(joint);
    let mut value = enc_term + marg_term + dec_term;
    value += state.mu_z.iter().zip(rz.iter()).map(|(&m, &r)| m * r).sum::<f64>();
    value += 0.5 * config.c * rz.iter().map(|&r| r * r).sum::<f64>();
    let cols = decoder_columns(joint, &state.encoder);
    for y in 0..joint.n_y() {
        for z in 0..state.encoder.n_z() {
            let rd = state.p_z_given_y[y][z] - cols[y][z];
            value += state.mu_zy[y][z] * rd + 0.5 * config.c * rd * rd;
        }
    }
    value
}

/// One fixed-order sweep: encoder, marginal, decoder, then both dual ascents.
pub fn bayat_step(state: &BayatState, joint: &JointXY, config: &BayatConfig) -> Result<BayatState> {
    let (n_x, n_y, n_z) = (state.encoder.n_x(), joint.n_y(), state.encoder.n_z());
    if n_x != joint.n_x() {
        return Err(Error::LengthMismatch { left: n_x, right: joint.n_x() });
    }
    let ops = LinearOps::for_problem(joint, n_z);

    // Encoder block at the current marginal/decoder/duals.
    let rz = state.marginal_residual(joint);
    let cols = decoder_columns(joint, &state.encoder);
    let mut new_rows = Vec::with_capacity(n_x);
    for x in 0..n_x {
        let row = state.encoder.row(x).as_slice();
        let px = joint.p_x()[x];
        let mut grad = vec![0.0; n_z];
        for z in 0..n_z {
            if row[z] <= 0.0 {
                return Err(Error::GradientSingularity { index: z * n_x + x });
            }
            let mut g = px * (row[z].ln() + 1.0) - px * (state.mu_z[z] + config.c * rz[z]);
            for y in 0..n_y {
                let rd = state.p_z_given_y[y][z] - cols[y][z];
                g -= joint.x_given_y(y)[x] * (state.mu_zy[y][z] + config.c * rd);
            }
            grad[z] = g;
        }
        let direction = face_direction(row, &grad, config.eps_floor);
        let posterior_sum: f64 = (0..n_y).map(|y| joint.x_given_y(y)[x]).sum();
        let bound = config.enc_step_bound(px, moving_min(row, &direction), posterior_sum);
        let step = feasible_step(row, &direction, bound, config.eps_floor);
        new_rows.push(
            row.iter()
                .zip(direction.iter())
                .map(|(&p, &d)| p + step * d)
                .collect::<Vec<_>>(),
        );
    }
    let encoder = Encoder::new(new_rows)?;

    // Marginal block against the updated encoder.
    let marginal = ops.marginal(&encoder);
    let mut grad = vec![0.0; n_z];
    for z in 0..n_z {
        if state.p_z[z] <= 0.0 {
            return Err(Error::GradientSingularity { index: z });
        }
        let r = state.p_z[z] - marginal[z];
        grad[z] = (config.beta - 1.0) * (state.p_z[z].ln() + 1.0)
            + state.mu_z[z]
            + config.c * r;
    }
    let direction = face_direction(&state.p_z, &grad, config.eps_floor);
    let bound = config.z_step_bound(moving_min(&state.p_z, &direction));
    let step = feasible_step(&state.p_z, &direction, bound, config.eps_floor);
    let p_z = ProbVector::new(
        state
            .p_z
            .iter()
            .zip(direction.iter())
            .map(|(&p, &d)| p + step * d)
            .collect(),
    )?;

    // Decoder block against the updated encoder.
    let cols = decoder_columns(joint, &encoder);
    let mut p_z_given_y = Vec::with_capacity(n_y);
    for y in 0..n_y {
        let col = state.p_z_given_y[y].as_slice();
        let py = joint.p_y()[y];
        let mut grad = vec![0.0; n_z];
        for z in 0..n_z {
            if col[z] <= 0.0 {
                return Err(Error::GradientSingularity { index: z });
            }
            let rd = col[z] - cols[y][z];
            grad[z] = -config.beta * py * (col[z].ln() + 1.0)
                + state.mu_zy[y][z]
                + config.c * rd;
        }
        let direction = face_direction(col, &grad, config.eps_floor);
        let bound = config.dec_step_bound(py, moving_min(col, &direction));
        let step = feasible_step(col, &direction, bound, config.eps_floor);
        p_z_given_y.push(ProbVector::new(
            col.iter()
                .zip(direction.iter())
                .map(|(&p, &d)| p + step * d)
                .collect(),
        )?);
    }

    // Dual ascents on both residual families.
    let new_marginal = ops.marginal(&encoder);
    let mu_z: Vec<f64> = state
        .mu_z
        .iter()
        .zip(p_z.iter().zip(new_marginal.iter()))
        .map(|(&m, (&p, &bm))| m + config.c * (p - bm))
        .collect();
    let mut mu_zy = Vec::with_capacity(n_y);
    for y in 0..n_y {
        mu_zy.push(
            state.mu_zy[y]
                .iter()
                .zip(p_z_given_y[y].iter().zip(cols[y].iter()))
                .map(|(&m, (&d, &t))| m + config.c * (d - t))
                .collect::<Vec<_>>(),
        );
    }

    BayatState::new(encoder, p_z, p_z_given_y, mu_z, mu_zy)
}

#[derive(Debug, Clone)]
pub struct BayatRun {
    pub record: RunRecord,
    pub state: BayatState,
    pub trace: IterationTrace,
}

/// Runs the three-block solver. Converged means both the marginal residual
/// test and the quoted per-(z, y) decoder condition hold.
pub fn bayat_solve(
    joint: &JointXY,
    init: Option<BayatState>,
    config: &BayatConfig,
    seed: u64,
) -> Result<BayatRun> {
    let n_z = init.as_ref().map(|s| s.encoder.n_z()).unwrap_or(joint.n_x());
    config.validate(n_z)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = match init {
        Some(s) => BayatState::new(
            s.encoder.clamp_interior(config.eps_floor),
            s.p_z.clamp_interior(config.eps_floor),
            s.p_z_given_y
                .iter()
                .map(|c| c.clamp_interior(config.eps_floor))
                .collect(),
            s.mu_z,
            s.mu_zy,
        )?,
        None => {
            let encoder =
                Encoder::sample_uniform(joint.n_x(), n_z, &mut rng).clamp_interior(config.eps_floor);
            let p_z = ProbVector::sample_uniform(n_z, &mut rng).clamp_interior(config.eps_floor);
            let p_z_given_y = (0..joint.n_y())
                .map(|_| ProbVector::sample_uniform(n_z, &mut rng).clamp_interior(config.eps_floor))
                .collect();
            BayatState::new(
                encoder,
                p_z,
                p_z_given_y,
                vec![0.0; n_z],
                vec![vec![0.0; n_z]; joint.n_y()],
            )?
        }
    };

    let start = Instant::now();
    let mut trace = IterationTrace {
        stride: config.trace_stride,
        records: Vec::new(),
    };
    let mut converged = false;
    let mut iterations = config.max_outer_iters;
    let mut residual = f64::INFINITY;

    for k in 1..=config.max_outer_iters {
        state = bayat_step(&state, joint, config)?;
        let marginal_sq = state.marginal_residual_l1_sq(joint);
        let decoder_dev = state.decoder_deviation(joint);
        residual = marginal_sq.max(decoder_dev);
        let hit = marginal_sq < config.residual_tol && decoder_dev < config.decoder_tol;
        let done = hit || k == config.max_outer_iters;
        if config.trace_stride > 0 && (k % config.trace_stride == 0 || done) {
            trace.records.push(TraceRecord {
                iteration: k,
                residual_l1_sq: marginal_sq,
                lagrangian: bayat_lagrangian(&state, joint, config),
                i_xz: mutual_information_xz(joint, &state.encoder)?,
                i_yz: mutual_information_yz(joint, &state.encoder)?,
                p_z: state.p_z.to_vec(),
                mu_z: state.mu_z.clone(),
            });
        }
        if hit {
            converged = true;
            iterations = k;
            break;
        }
    }

    let cpu_ms = start.elapsed().as_secs_f64() * 1e3;
    let record = RunRecord {
        method: Method::Bayat,
        beta: config.beta,
        c: config.c,
        omega: 0.0,
        seed,
        converged,
        iterations,
        i_xz: mutual_information_xz(joint, &state.encoder)?,
        i_yz: mutual_information_yz(joint, &state.encoder)?,
        residual,
        cpu_ms,
    };
    Ok(BayatRun {
        record,
        state,
        trace,
    })
}
