//! Two-block ADMM solver with a Bregman proximal term on the marginal block.
//!
//! One outer iteration sweeps encoder block, marginal block, dual ascent:
//!
//! ```text
//! p_{z|x} <- inner projected-gradient steps on L_c(p_z^k, ., mu^k)
//! p_z     <- inner projected-gradient steps on L_c(., p_{z|x}^{k+1}, mu^k)
//!            + omega D_phi(. || p_z^k)
//! mu_z    <- mu_z + c (p_z^{k+1} - B p_{z|x}^{k+1})
//! ```
//!
//! Primal steps use mean-subtracted gradients, so every search direction sums
//! to zero within each simplex block and iterate sums are preserved exactly.
//! A ratio test truncates the step before any coordinate can cross the
//! interior floor `eps_floor`, which keeps the log-gradients finite.
//!
//! The run stops once the squared L1 coupling residual
//! `||p_z - B p_{z|x}||_1^2` falls under `residual_tol` (convergent case) or
//! after `max_outer_iters` sweeps (divergent case).

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::objective::{
    augmented_lagrangian, grad_augmented_z, grad_augmented_zx, AdmmState, ObjectiveParams,
};
use crate::prob::{mutual_information_xz, mutual_information_yz, Encoder, JointXY, ProbVector};
use crate::record::{Method, RunRecord};

/// Solver knobs. `eps_floor` realizes the interior assumption `p(z|x) >= eps`;
/// `base_step` is an upper bound on every primal step; `inner_steps` is the
/// number of gradient steps per primal block per outer iteration.
///
/// `trace_stride` controls snapshotting: 0 disables the trace, `s >= 1`
/// records every s-th outer iteration plus the final one.
#[derive(Debug, Clone, Copy, PartialEq, serde::Deserialize, Serialize)]
pub struct AdmmConfig {
    pub params: ObjectiveParams,
    pub eps_floor: f64,
    pub base_step: f64,
    pub inner_steps: usize,
    pub residual_tol: f64,
    pub max_outer_iters: usize,
    pub trace_stride: usize,
}

impl AdmmConfig {
    pub fn new(params: ObjectiveParams) -> Self {
        Self {
            params,
            eps_floor: 1e-4,
            base_step: 0.05,
            inner_steps: 1,
            residual_tol: 2e-6,
            max_outer_iters: 10_000,
            trace_stride: 1,
        }
    }

    pub fn validate(&self, n_z: usize) -> Result<()> {
        ObjectiveParams::new(self.params.beta, self.params.c, self.params.omega)?;
        if !(self.eps_floor > 0.0 && self.eps_floor * (n_z as f64) < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eps_floor must lie in (0, 1/N_z), got {} with N_z = {n_z}",
                self.eps_floor
            )));
        }
        if !(self.base_step > 0.0) {
            return Err(Error::InvalidConfig("base_step must be > 0".into()));
        }
        if self.inner_steps == 0 {
            return Err(Error::InvalidConfig("inner_steps must be >= 1".into()));
        }
        if !(self.residual_tol > 0.0) {
            return Err(Error::InvalidConfig("residual_tol must be > 0".into()));
        }
        if self.max_outer_iters == 0 {
            return Err(Error::InvalidConfig("max_outer_iters must be >= 1".into()));
        }
        Ok(())
    }

    /// Step bound for the marginal block: `base_step` capped by the inverse
    /// local smoothness `c + |beta + omega - 1| / p_min` over the coordinates
    /// the direction moves. A step above the cap oscillates on the
    /// subproblem instead of descending, which shows up as divergence for
    /// large `c` or large `omega`.
    pub(crate) fn z_step_bound(&self, p_min: f64) -> f64 {
        let curvature = (self.params.beta + self.params.omega - 1.0).abs() / p_min.max(1e-300);
        self.base_step.min(1.0 / (self.params.c + curvature))
    }

    /// Per-row step bound for the encoder block, from a Gershgorin bound on
    /// the row's subproblem curvature:
    /// `p(x) [1/min_z p(z|x) + beta/min p(z|y) + c]`.
    pub(crate) fn zx_step_bound(&self, p_x: f64, row_min: f64, decoder_min: f64) -> f64 {
        let curvature =
            p_x * (1.0 / row_min.max(1e-300) + self.params.beta / decoder_min.max(1e-300) + self.params.c);
        self.base_step.min(1.0 / curvature)
    }
}

/// One recorded outer iteration.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub residual_l1_sq: f64,
    pub lagrangian: f64,
    pub i_xz: f64,
    pub i_yz: f64,
    pub p_z: Vec<f64>,
    pub mu_z: Vec<f64>,
}

/// Snapshots of a solver run at a fixed stride, the input to the Lyapunov
/// verifier.
#[derive(Debug, Clone, Default, Serialize)]
pub struct IterationTrace {
    pub stride: usize,
    pub records: Vec<TraceRecord>,
}

/// Subtracts the mean within each contiguous block of `block_size`, so the
/// result sums to zero per block.
pub fn mean_subtract(g: &[f64], block_size: usize) -> Vec<f64> {
    assert!(block_size >= 1 && g.len() % block_size == 0);
    let mut out = Vec::with_capacity(g.len());
    for chunk in g.chunks(block_size) {
        let mean: f64 = chunk.iter().sum::<f64>() / block_size as f64;
        out.extend(chunk.iter().map(|v| v - mean));
    }
    out
}

/// Largest safe multiple of a sum-zero `direction` added to `point`:
/// `min(base_step, 0.99 t_max)` where `t_max` is the ratio test over
/// descending coordinates, so every coordinate stays at or above `eps_floor`.
/// A direction with no descending coordinate returns `base_step`.
pub fn feasible_step(point: &[f64], direction: &[f64], base_step: f64, eps_floor: f64) -> f64 {
    debug_assert_eq!(point.len(), direction.len());
    debug_assert!(direction.iter().sum::<f64>().abs() < 1e-9);
    let mut t_max = f64::INFINITY;
    for (&p, &d) in point.iter().zip(direction.iter()) {
        if d < 0.0 {
            t_max = t_max.min((p - eps_floor).max(0.0) / -d);
        }
    }
    if t_max.is_finite() {
        base_step.min(0.99 * t_max)
    } else {
        base_step
    }
}

fn stepped(point: &[f64], direction: &[f64], step: f64) -> Vec<f64> {
    point
        .iter()
        .zip(direction.iter())
        .map(|(&p, &d)| p + step * d)
        .collect()
}

const PIN_TOL: f64 = 1e-12;

/// Descent direction along the current simplex face: the negated gradient
/// re-centered over the free coordinates, with floor-bound coordinates whose
/// component points below the floor pinned to zero. Without the pinning a
/// single bound coordinate collapses the ratio test and freezes the whole
/// block at a non-stationary point.
pub(crate) fn face_direction(point: &[f64], grad: &[f64], eps_floor: f64) -> Vec<f64> {
    let n = point.len();
    let mut pinned = vec![false; n];
    loop {
        let free: Vec<usize> = (0..n).filter(|&i| !pinned[i]).collect();
        if free.len() < 2 {
            return vec![0.0; n];
        }
        let mean: f64 = free.iter().map(|&i| grad[i]).sum::<f64>() / free.len() as f64;
        let mut changed = false;
        for &i in &free {
            if point[i] - eps_floor <= PIN_TOL && mean - grad[i] < 0.0 {
                pinned[i] = true;
                changed = true;
            }
        }
        if !changed {
            let mut dir = vec![0.0; n];
            for &i in &free {
                dir[i] = mean - grad[i];
            }
            return dir;
        }
    }
}

/// Smallest free coordinate among those the direction actually moves.
pub(crate) fn moving_min(point: &[f64], direction: &[f64]) -> f64 {
    let mut m = f64::INFINITY;
    for (&p, &d) in point.iter().zip(direction.iter()) {
        if d != 0.0 {
            m = m.min(p);
        }
    }
    m
}

/// Encoder block: `inner_steps` projected-gradient steps on the augmented
/// Lagrangian at fixed `(p_z, mu_z)`. The cascaded gradient is mean-subtracted
/// per x-row and each row takes its own ratio-tested step.
pub fn primal_zx_update(state: &AdmmState, joint: &JointXY, config: &AdmmConfig) -> Result<Encoder> {
    let (n_x, n_z) = (state.encoder.n_x(), state.encoder.n_z());
    let mut work = state.clone();
    for _ in 0..config.inner_steps {
        let g = grad_augmented_zx(&work, joint, &config.params)?;
        let decoder_min = crate::prob::decoder_columns(joint, &work.encoder)
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let mut rows = Vec::with_capacity(n_x);
        for x in 0..n_x {
            let row = work.encoder.row(x).as_slice();
            let row_grad: Vec<f64> = (0..n_z).map(|z| g[z * n_x + x]).collect();
            let direction = face_direction(row, &row_grad, config.eps_floor);
            let bound =
                config.zx_step_bound(joint.p_x()[x], moving_min(row, &direction), decoder_min);
            let step = feasible_step(row, &direction, bound, config.eps_floor);
            rows.push(stepped(row, &direction, step));
        }
        work.encoder = Encoder::new(rows)?;
    }
    Ok(work.encoder)
}

/// Marginal block: `inner_steps` projected-gradient steps on the augmented
/// Lagrangian plus the Bregman term. The Bregman anchor is the marginal at
/// block entry (`p_z^k`), held fixed across the inner steps.
pub fn primal_z_update(state: &AdmmState, joint: &JointXY, config: &AdmmConfig) -> Result<ProbVector> {
    let mut work = state.clone();
    work.p_z_prev = state.p_z.clone();
    for _ in 0..config.inner_steps {
        let g = grad_augmented_z(&work, joint, &config.params)?;
        let direction = face_direction(&work.p_z, &g, config.eps_floor);
        let bound = config.z_step_bound(moving_min(&work.p_z, &direction));
        let step = feasible_step(&work.p_z, &direction, bound, config.eps_floor);
        work.p_z = ProbVector::new(stepped(&work.p_z, &direction, step))?;
    }
    Ok(work.p_z)
}

/// Dual ascent `mu_z + c (p_z - B p_{z|x})`; exact, no projection.
pub fn dual_update(state: &AdmmState, joint: &JointXY, config: &AdmmConfig) -> Vec<f64> {
    let r = state.coupling_residual(joint);
    state
        .mu_z
        .iter()
        .zip(r.iter())
        .map(|(&m, &ri)| m + config.params.c * ri)
        .collect()
}

/// A finished run: the per-run record, the final iterate, and the trace.
#[derive(Debug, Clone)]
pub struct AdmmRun {
    pub record: RunRecord,
    pub state: AdmmState,
    pub trace: IterationTrace,
}

/// Runs the solver. Missing initial points are drawn uniformly from the
/// simplex with the given seed; explicit and sampled initializations are both
/// clamped to the eps-interior. `mu_z` starts at zero.
pub fn admm_solve(
    joint: &JointXY,
    init_encoder: Option<Encoder>,
    init_pz: Option<ProbVector>,
    config: &AdmmConfig,
    seed: u64,
) -> Result<AdmmRun> {
    let n_z = init_encoder
        .as_ref()
        .map(|e| e.n_z())
        .or_else(|| init_pz.as_ref().map(|p| p.len()))
        .unwrap_or(joint.n_x());
    config.validate(n_z)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let encoder = init_encoder
        .unwrap_or_else(|| Encoder::sample_uniform(joint.n_x(), n_z, &mut rng))
        .clamp_interior(config.eps_floor);
    let p_z = init_pz
        .unwrap_or_else(|| ProbVector::sample_uniform(n_z, &mut rng))
        .clamp_interior(config.eps_floor);
    if encoder.n_x() != joint.n_x() || encoder.n_z() != n_z || p_z.len() != n_z {
        return Err(Error::LengthMismatch {
            left: encoder.n_z(),
            right: p_z.len(),
        });
    }

    let start = Instant::now();
    let mut state = AdmmState::new(p_z.clone(), encoder, vec![0.0; n_z], p_z)?;
    let mut trace = IterationTrace {
        stride: config.trace_stride,
        records: Vec::new(),
    };
    let mut converged = false;
    let mut iterations = config.max_outer_iters;
    let mut residual = state.residual_l1_sq(joint);

    for k in 1..=config.max_outer_iters {
        state.encoder = primal_zx_update(&state, joint, config)?;
        let anchor = state.p_z.clone();
        state.p_z = primal_z_update(&state, joint, config)?;
        state.p_z_prev = anchor;
        state.mu_z = dual_update(&state, joint, config);

        residual = state.residual_l1_sq(joint);
        let done = residual < config.residual_tol || k == config.max_outer_iters;
        if config.trace_stride > 0 && (k % config.trace_stride == 0 || done) {
            trace.records.push(TraceRecord {
                iteration: k,
                residual_l1_sq: residual,
                lagrangian: augmented_lagrangian(&state, joint, &config.params)?,
                i_xz: mutual_information_xz(joint, &state.encoder)?,
                i_yz: mutual_information_yz(joint, &state.encoder)?,
                p_z: state.p_z.to_vec(),
                mu_z: state.mu_z.clone(),
            });
        }
        if residual < config.residual_tol {
            converged = true;
            iterations = k;
            break;
        }
    }

    let cpu_ms = start.elapsed().as_secs_f64() * 1e3;
    let record = RunRecord {
        method: Method::Admm,
        beta: config.params.beta,
        c: config.params.c,
        omega: config.params.omega,
        seed,
        converged,
        iterations,
        i_xz: mutual_information_xz(joint, &state.encoder)?,
        i_yz: mutual_information_yz(joint, &state.encoder)?,
        residual,
        cpu_ms,
    };
    Ok(AdmmRun {
        record,
        state,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::f_beta;

    fn paper_joint() -> JointXY {
        JointXY::synthetic_3x3()
    }

    fn config(beta: f64, c: f64, omega: f64) -> AdmmConfig {
        AdmmConfig::new(ObjectiveParams::new(beta, c, omega).unwrap())
    }

    fn feasible_uniform_state(_joint: &JointXY) -> AdmmState {
        let enc = Encoder::constant_rows(&ProbVector::uniform(3), 3);
        let p_z = ProbVector::uniform(3);
        AdmmState::new(p_z.clone(), enc, vec![0.0; 3], p_z).unwrap()
    }

    #[test]
    fn mean_subtract_examples() {
        assert_eq!(mean_subtract(&[2.0, 2.0, 2.0], 3), vec![0.0, 0.0, 0.0]);
        assert_eq!(mean_subtract(&[1.0, -1.0], 2), vec![1.0, -1.0]);
        assert_eq!(mean_subtract(&[3.0, 1.0, 2.0], 3), vec![1.0, -1.0, 0.0]);
        // Per-row blocks of a two-row gradient.
        assert_eq!(
            mean_subtract(&[3.0, 1.0, 2.0, 6.0, 0.0, 0.0], 3),
            vec![1.0, -1.0, 0.0, 4.0, -2.0, -2.0]
        );
    }

    #[test]
    fn feasible_step_examples() {
        // Far from the floor with a small base step.
        let s = feasible_step(&[0.4, 0.6], &[1.0, -1.0], 0.01, 0.01);
        assert_eq!(s, 0.01);

        // Coordinate at the floor pushed further down.
        let s = feasible_step(&[0.1, 0.9], &[-1.0, 1.0], 0.5, 0.1);
        assert_eq!(s, 0.0);

        // Hand ratio test: (0.5 - 0.1)/1 * 0.99.
        let s = feasible_step(&[0.5, 0.5], &[-1.0, 1.0], 1.0, 0.1);
        assert!((s - 0.396).abs() < 1e-15);

        // Zero direction returns the base step.
        let s = feasible_step(&[0.5, 0.5], &[0.0, 0.0], 0.25, 0.1);
        assert_eq!(s, 0.25);
    }

    #[test]
    fn stepped_preserves_sums_and_floor() {
        let point = [0.2, 0.3, 0.5];
        let dir = [0.3, -0.2, -0.1];
        let step = feasible_step(&point, &dir, 10.0, 0.05);
        let next = stepped(&point, &dir, step);
        assert!((next.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(next.iter().all(|&v| v >= 0.05 - 1e-12));
    }

    #[test]
    fn uniform_state_is_a_fixed_point() {
        let joint = paper_joint();
        let cfg = config(2.0, 8.0, 4.0);
        let state = feasible_uniform_state(&joint);
        let enc = primal_zx_update(&state, &joint, &cfg).unwrap();
        for x in 0..3 {
            for z in 0..3 {
                assert!((enc.row(x)[z] - 1.0 / 3.0).abs() < 1e-12);
            }
        }
        let p_z = primal_z_update(&state, &joint, &cfg).unwrap();
        for z in 0..3 {
            assert!((p_z[z] - 1.0 / 3.0).abs() < 1e-12);
        }
        let mu = dual_update(&state, &joint, &cfg);
        assert_eq!(mu, vec![0.0; 3]);
    }

    #[test]
    fn encoder_step_descends_lagrangian() {
        use rand::SeedableRng;
        let joint = paper_joint();
        let mut cfg = config(3.0, 6.0, 4.0);
        cfg.base_step = 1e-3;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let enc = Encoder::sample_uniform(3, 3, &mut rng).clamp_interior(cfg.eps_floor);
        let p_z = ProbVector::sample_uniform(3, &mut rng).clamp_interior(cfg.eps_floor);
        let state = AdmmState::new(p_z.clone(), enc, vec![0.1, -0.2, 0.1], p_z).unwrap();

        let before = augmented_lagrangian(&state, &joint, &cfg.params).unwrap();
        let mut moved = state.clone();
        moved.encoder = primal_zx_update(&state, &joint, &cfg).unwrap();
        let after = augmented_lagrangian(&moved, &joint, &cfg.params).unwrap();
        assert!(after <= before + 1e-12, "encoder step must not ascend");
    }

    #[test]
    fn encoder_iterates_respect_floor() {
        let joint = paper_joint();
        let cfg = config(5.0, 32.0, 4.0);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let enc = Encoder::sample_uniform(3, 3, &mut rng).clamp_interior(cfg.eps_floor);
        let p_z = ProbVector::sample_uniform(3, &mut rng).clamp_interior(cfg.eps_floor);
        let mut state = AdmmState::new(p_z.clone(), enc, vec![0.0; 3], p_z).unwrap();
        for _ in 0..1000 {
            state.encoder = primal_zx_update(&state, &joint, &cfg).unwrap();
            let anchor = state.p_z.clone();
            state.p_z = primal_z_update(&state, &joint, &cfg).unwrap();
            state.p_z_prev = anchor;
            state.mu_z = dual_update(&state, &joint, &cfg);
            for row in state.encoder.rows() {
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                assert!(row.min_entry() >= cfg.eps_floor - 1e-12);
            }
            assert!((state.p_z.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(state.p_z.min_entry() >= cfg.eps_floor - 1e-12);
        }
    }

    #[test]
    fn marginal_block_is_anchored_by_large_omega() {
        use rand::SeedableRng;
        let joint = paper_joint();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let enc = Encoder::sample_uniform(3, 3, &mut rng).clamp_interior(1e-4);
        let p_z = ProbVector::sample_uniform(3, &mut rng).clamp_interior(1e-4);
        let state = AdmmState::new(p_z.clone(), enc, vec![0.0; 3], p_z.clone()).unwrap();

        let displacement = |omega: f64| -> f64 {
            let mut cfg = config(2.0, 10.0, omega);
            cfg.inner_steps = 50;
            let out = primal_z_update(&state, &joint, &cfg).unwrap();
            out.iter()
                .zip(p_z.iter())
                .map(|(&a, &b)| (a - b).abs())
                .sum()
        };
        let low = displacement(4.0);
        let high = displacement(400.0);
        assert!(
            high <= low / 20.0,
            "omega=400 should pin the update near the anchor: {high} vs {low}"
        );
    }

    #[test]
    fn penalty_only_dynamics_shrink_residual() {
        // beta = 1, omega = 0, mu = 0: the marginal block sees only the
        // penalty and must drift toward B p_{z|x}.
        let joint = paper_joint();
        let mut cfg = config(1.0, 5.0, 0.0);
        cfg.inner_steps = 1;
        let enc = Encoder::new(vec![
            vec![0.5, 0.25, 0.25],
            vec![0.1, 0.7, 0.2],
            vec![0.3, 0.3, 0.4],
        ])
        .unwrap();
        let p_z = ProbVector::new(vec![0.6, 0.2, 0.2]).unwrap();
        let mut state = AdmmState::new(p_z.clone(), enc, vec![0.0; 3], p_z).unwrap();
        let mut last = state.residual_l1_sq(&joint);
        for _ in 0..200 {
            state.p_z = primal_z_update(&state, &joint, &cfg).unwrap();
            let now = state.residual_l1_sq(&joint);
            assert!(now <= last + 1e-12);
            last = now;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn dual_update_examples() {
        let joint = paper_joint();
        let cfg = config(2.0, 10.0, 0.0);

        let state = feasible_uniform_state(&joint);
        assert_eq!(dual_update(&state, &joint, &cfg), vec![0.0; 3]);

        // mu = 0, c = 10: the update is 10 r.
        let enc = Encoder::constant_rows(&ProbVector::new(vec![0.5, 0.3, 0.2]).unwrap(), 3);
        let p_z = ProbVector::new(vec![0.6, 0.2, 0.2]).unwrap();
        let state = AdmmState::new(p_z.clone(), enc.clone(), vec![0.0; 3], p_z.clone()).unwrap();
        let r = state.coupling_residual(&joint);
        let mu1 = dual_update(&state, &joint, &cfg);
        for z in 0..3 {
            assert!((mu1[z] - 10.0 * r[z]).abs() < 1e-15);
        }

        // Two consecutive updates compose additively.
        let state2 = AdmmState::new(p_z.clone(), enc, mu1.clone(), p_z).unwrap();
        let mu2 = dual_update(&state2, &joint, &cfg);
        for z in 0..3 {
            assert!((mu2[z] - 2.0 * 10.0 * r[z]).abs() < 1e-12);
        }
    }

    #[test]
    fn stationary_init_terminates_immediately() {
        let joint = paper_joint();
        let cfg = config(1.0, 16.0, 4.0);
        let enc = Encoder::constant_rows(&ProbVector::uniform(3), 3);
        let run = admm_solve(&joint, Some(enc), Some(ProbVector::uniform(3)), &cfg, 0).unwrap();
        assert!(run.record.converged);
        assert_eq!(run.record.iterations, 1);
        assert!(run.record.residual < 1e-20);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let joint = paper_joint();
        assert!(ObjectiveParams::new(2.0, -1.0, 0.0).is_err());
        let mut cfg = config(2.0, 8.0, 4.0);
        cfg.eps_floor = 0.4; // 0.4 * 3 >= 1
        assert!(matches!(
            admm_solve(&joint, None, None, &cfg, 0),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn identical_seeds_give_identical_results() {
        let joint = paper_joint();
        let mut cfg = config(4.0, 16.0, 4.0);
        cfg.max_outer_iters = 400;
        cfg.trace_stride = 0;
        let a = admm_solve(&joint, None, None, &cfg, 99).unwrap();
        let b = admm_solve(&joint, None, None, &cfg, 99).unwrap();
        assert!(a.record.same_results(&b.record));
        assert!(a
            .state
            .p_z
            .iter()
            .zip(b.state.p_z.iter())
            .all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn reported_records_satisfy_dpi() {
        let joint = paper_joint();
        let mut cfg = config(6.0, 32.0, 4.0);
        cfg.max_outer_iters = 1500;
        cfg.trace_stride = 0;
        for seed in 0..5 {
            let run = admm_solve(&joint, None, None, &cfg, seed).unwrap();
            assert!(run.record.i_yz <= run.record.i_xz + 1e-9);
        }
    }

    #[test]
    fn bregman_anchor_is_entry_marginal() {
        // With a huge omega and several inner steps, the block must stay near
        // the entry p_z even when the stored p_z_prev field is somewhere else.
        let joint = paper_joint();
        let mut cfg = config(2.0, 10.0, 1e6);
        cfg.inner_steps = 20;
        let enc = Encoder::identity(3).clamp_interior(1e-4);
        let p_z = ProbVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let elsewhere = ProbVector::new(vec![0.1, 0.1, 0.8]).unwrap();
        let state = AdmmState::new(p_z.clone(), enc, vec![0.0; 3], elsewhere).unwrap();
        let out = primal_z_update(&state, &joint, &cfg).unwrap();
        let moved: f64 = out
            .iter()
            .zip(p_z.iter())
            .map(|(&a, &b)| (a - b).abs())
            .sum();
        assert!(moved < 1e-3, "anchor must be the entry marginal, moved {moved}");
    }

    #[test]
    fn lagrangian_value_check_against_f_beta() {
        // Sanity link between modules: at a feasible uniform state the
        // Lagrangian equals F + G = 0 for constant uniform rows.
        let joint = paper_joint();
        let cfg = config(2.0, 8.0, 4.0);
        let state = feasible_uniform_state(&joint);
        let l = augmented_lagrangian(&state, &joint, &cfg.params).unwrap();
        let f = f_beta(&state.p_z, &cfg.params);
        assert!((l - (f + 3.0_f64.ln())).abs() < 1e-12);
    }
}
