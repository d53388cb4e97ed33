//! Discrete information bottleneck toolkit.
//!
//! Three solvers for the trade-off objective `I(X;Z) - beta I(Y;Z)` over a
//! fixed discrete joint distribution:
//!
//! * [`ba`] — the Blahut-Arimoto fixed-point baseline;
//! * [`admm`] — a two-block ADMM solver with a Bregman proximal term on the
//!   augmented marginal, the method this crate is built around;
//! * [`bayat`] — a reconstruction of the older three-block ADMM baseline that
//!   also augments the decoder, used for convergence-range comparisons.
//!
//! [`certificate`] computes the convergence-condition constants
//! (`eta_z`, `kappa`, `gamma_beta`, the `rho` profile) for a given instance
//! and checks the Lyapunov descent property on recorded traces. [`sweep`]
//! reproduces the seeded multi-restart information-plane protocol and writes
//! plot-ready CSV.

pub mod admm;
pub mod ba;
pub mod bayat;
pub mod certificate;
pub mod error;
pub mod objective;
pub mod prob;
pub mod record;
pub mod sweep;

pub use admm::{
    admm_solve, dual_update, feasible_step, mean_subtract, primal_z_update, primal_zx_update,
    AdmmConfig, AdmmRun, IterationTrace, TraceRecord,
};
pub use ba::{ba_solve, ba_step, BaConfig, BaRun};
pub use bayat::{bayat_solve, bayat_step, BayatConfig, BayatRun, BayatState};
pub use certificate::{
    compute_certificate, default_alpha_grid, lyapunov_trace, monotonicity_report, Certificate,
    MonotonicityReport, RhoSample,
};
pub use error::{Error, Result};
pub use objective::{
    augmented_lagrangian, bregman_kl, f_beta, g_beta, grad_augmented_z, grad_augmented_zx, grad_f,
    grad_g, AdmmState, ObjectiveParams,
};
pub use prob::{
    entropy, kappa, kl_divergence, markov_decoder, mutual_information_xz, mutual_information_yz,
    Encoder, JointXY, KappaReport, LinearOps, ProbVector,
};
pub use record::{Method, RunRecord};
pub use sweep::{
    aggregate, parse_grid, run_sweep, write_plane_csv, write_records_csv, write_trace_jsonl,
    CellSummary, SweepOutput, SweepSpec, TaggedTrace,
};
