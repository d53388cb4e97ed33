//! Seeded multi-restart sweeps over (method, beta, c) and result aggregation.
//!
//! Every run's seed is a stable 64-bit mix of the base seed, the method tag,
//! and the cell indices, so results are a deterministic function of
//! (joint, spec, base seed) no matter how runs are scheduled, and adding a
//! method to a sweep never shifts another method's streams. Records are
//! sorted by (method, beta, c, seed) before they are returned or written.
//!
//! Wall time is the one nondeterministic field; the CSV writer can zero it
//! (`include_timing = false`) so repeated sweeps are byte-identical.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admm::{admm_solve, AdmmConfig, IterationTrace};
use crate::ba::{ba_solve, BaConfig};
use crate::bayat::{bayat_solve, BayatConfig};
use crate::error::{Error, Result};
use crate::objective::ObjectiveParams;
use crate::prob::{Encoder, JointXY};
use crate::record::{Method, RunRecord};

fn default_beta_grid() -> Vec<f64> {
    parse_grid("1:10:0.5").expect("default grid")
}

fn default_restarts() -> usize {
    100
}

fn default_omega() -> f64 {
    4.0
}

/// Per-method solver settings, minus the swept parameters (beta, c, omega).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct BaSettings {
    pub max_iters: usize,
    pub tol: f64,
    pub eps_floor: f64,
}

impl Default for BaSettings {
    fn default() -> Self {
        Self {
            max_iters: 100_000,
            tol: 1e-10,
            eps_floor: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct AdmmSettings {
    pub eps_floor: f64,
    pub base_step: f64,
    pub inner_steps: usize,
    pub residual_tol: f64,
    pub max_outer_iters: usize,
}

impl Default for AdmmSettings {
    fn default() -> Self {
        Self {
            eps_floor: 1e-4,
            base_step: 0.05,
            inner_steps: 1,
            residual_tol: 2e-6,
            max_outer_iters: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct BayatSettings {
    pub eps_floor: f64,
    pub base_step: f64,
    pub residual_tol: f64,
    pub decoder_tol: f64,
    pub max_outer_iters: usize,
}

impl Default for BayatSettings {
    fn default() -> Self {
        Self {
            eps_floor: 1e-4,
            base_step: 0.05,
            residual_tol: 2e-6,
            decoder_tol: 2e-6,
            max_outer_iters: 10_000,
        }
    }
}

/// Full sweep description; loadable from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepSpec {
    pub methods: Vec<Method>,
    pub beta_grid: Vec<f64>,
    pub c_values: Vec<f64>,
    pub omega: f64,
    pub restarts: usize,
    pub base_seed: u64,
    /// Latent alphabet size; defaults to `N_x`.
    pub n_z: Option<usize>,
    /// 0 disables trace collection.
    pub trace_stride: usize,
    pub ba: BaSettings,
    pub admm: AdmmSettings,
    pub bayat: BayatSettings,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            methods: vec![Method::Admm],
            beta_grid: default_beta_grid(),
            c_values: vec![98.0],
            omega: default_omega(),
            restarts: default_restarts(),
            base_seed: 0,
            n_z: None,
            trace_stride: 0,
            ba: BaSettings::default(),
            admm: AdmmSettings::default(),
            bayat: BayatSettings::default(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("methods must be non-empty".into()));
        }
        if self.beta_grid.is_empty() {
            return Err(Error::InvalidConfig("beta grid must be non-empty".into()));
        }
        if self.beta_grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidConfig("beta grid must be sorted".into()));
        }
        if self.c_values.is_empty() || self.c_values.iter().any(|&c| !(c > 0.0)) {
            return Err(Error::InvalidConfig("c values must be positive".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be >= 1".into()));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    fn admm_config(&self, beta: f64, c: f64) -> Result<AdmmConfig> {
        Ok(AdmmConfig {
            params: ObjectiveParams::new(beta, c, self.omega)?,
            eps_floor: self.admm.eps_floor,
            base_step: self.admm.base_step,
            inner_steps: self.admm.inner_steps,
            residual_tol: self.admm.residual_tol,
            max_outer_iters: self.admm.max_outer_iters,
            trace_stride: self.trace_stride,
        })
    }

    fn bayat_config(&self, beta: f64, c: f64) -> BayatConfig {
        BayatConfig {
            beta,
            c,
            eps_floor: self.bayat.eps_floor,
            base_step: self.bayat.base_step,
            residual_tol: self.bayat.residual_tol,
            decoder_tol: self.bayat.decoder_tol,
            max_outer_iters: self.bayat.max_outer_iters,
            trace_stride: self.trace_stride,
        }
    }

    fn ba_config(&self, beta: f64) -> BaConfig {
        BaConfig {
            beta,
            max_iters: self.ba.max_iters,
            tol: self.ba.tol,
            eps_floor: self.ba.eps_floor,
        }
    }
}

/// Parses `start:stop:step` (inclusive when the step divides the range),
/// a comma list, or a single number. Values must come out sorted.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::InvalidConfig(msg);
    let parse_one = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad(format!("cannot parse '{s}' as a number")))
    };
    let values = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("expected start:stop:step, got '{text}'")));
        }
        let (start, stop, step) = (parse_one(parts[0])?, parse_one(parts[1])?, parse_one(parts[2])?);
        if !(step > 0.0) || stop < start {
            return Err(bad(format!("invalid range '{text}'")));
        }
        let count = ((stop - start) / step).round() as usize;
        let reaches_stop = ((start + count as f64 * step) - stop).abs() <= 1e-9;
        let last = if reaches_stop {
            count
        } else {
            ((stop - start) / step).floor() as usize
        };
        (0..=last).map(|i| start + i as f64 * step).collect()
    } else if text.contains(',') {
        text.split(',').map(parse_one).collect::<Result<Vec<_>>>()?
    } else {
        vec![parse_one(text)?]
    };
    if values.is_empty() || values.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad(format!("grid '{text}' must be non-empty and sorted")));
    }
    Ok(values)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable per-run seed: a splitmix64 chain over the base seed, the method
/// tag, and the cell indices.
pub fn mix_seed(base_seed: u64, method: Method, beta_idx: usize, c_idx: usize, restart: usize) -> u64 {
    let mut h = splitmix64(base_seed);
    h = splitmix64(h ^ method.seed_tag());
    h = splitmix64(h ^ beta_idx as u64);
    h = splitmix64(h ^ c_idx as u64);
    h = splitmix64(h ^ restart as u64);
    h
}

/// A trace tagged with the run that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct TaggedTrace {
    pub method: Method,
    pub beta: f64,
    pub c: f64,
    pub seed: u64,
    pub trace: IterationTrace,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutput {
    pub records: Vec<RunRecord>,
    /// Present only when the spec's `trace_stride` is non-zero.
    pub traces: Vec<TaggedTrace>,
}

fn run_one(
    joint: &JointXY,
    spec: &SweepSpec,
    method: Method,
    beta: f64,
    c: f64,
    seed: u64,
) -> Result<(RunRecord, Option<IterationTrace>)> {
    match method {
        Method::Ba => {
            use rand::SeedableRng;
            let config = spec.ba_config(beta);
            let n_z = spec.n_z.unwrap_or(joint.n_x());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let init =
                Encoder::sample_uniform(joint.n_x(), n_z, &mut rng).clamp_interior(config.eps_floor);
            let start = std::time::Instant::now();
            let run = ba_solve(joint, &init, &config)?;
            let record = RunRecord {
                method: Method::Ba,
                beta,
                c,
                omega: spec.omega,
                seed,
                converged: run.converged,
                iterations: run.iterations,
                i_xz: run.i_xz,
                i_yz: run.i_yz,
                residual: run.final_change,
                cpu_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            Ok((record, None))
        }
        Method::Admm => {
            let config = spec.admm_config(beta, c)?;
            let run = admm_solve(joint, None, None, &config, seed)?;
            let mut record = run.record;
            record.omega = spec.omega;
            let trace = (spec.trace_stride > 0).then_some(run.trace);
            Ok((record, trace))
        }
        Method::Bayat => {
            let config = spec.bayat_config(beta, c);
            let run = bayat_solve(joint, None, &config, seed)?;
            let mut record = run.record;
            record.omega = spec.omega;
            let trace = (spec.trace_stride > 0).then_some(run.trace);
            Ok((record, trace))
        }
    }
}

/// Executes `restarts` runs per (method, beta, c) cell on a worker pool.
/// Solver errors become divergent records (`iterations = 0`, infinite
/// residual) rather than aborting the sweep. The `omega` column carries the
/// sweep's omega for every method; only the two-block solver consumes it.
pub fn run_sweep(joint: &JointXY, spec: &SweepSpec) -> Result<SweepOutput> {
    spec.validate()?;
    let mut tasks = Vec::new();
    for &method in &spec.methods {
        for (beta_idx, &beta) in spec.beta_grid.iter().enumerate() {
            for (c_idx, &c) in spec.c_values.iter().enumerate() {
                for restart in 0..spec.restarts {
                    let seed = mix_seed(spec.base_seed, method, beta_idx, c_idx, restart);
                    tasks.push((method, beta, c, seed));
                }
            }
        }
    }

    let outcomes: Vec<(RunRecord, Option<TaggedTrace>)> = tasks
        .par_iter()
        .map(|&(method, beta, c, seed)| {
            match run_one(joint, spec, method, beta, c, seed) {
                Ok((record, trace)) => {
                    let tagged = trace.map(|trace| TaggedTrace {
                        method,
                        beta,
                        c,
                        seed,
                        trace,
                    });
                    (record, tagged)
                }
                Err(_) => (
                    RunRecord {
                        method,
                        beta,
                        c,
                        omega: spec.omega,
                        seed,
                        converged: false,
                        iterations: 0,
                        i_xz: 0.0,
                        i_yz: 0.0,
                        residual: f64::INFINITY,
                        cpu_ms: 0.0,
                    },
                    None,
                ),
            }
        })
        .collect();

    let mut records = Vec::with_capacity(outcomes.len());
    let mut traces = Vec::new();
    for (record, tagged) in outcomes {
        records.push(record);
        if let Some(t) = tagged {
            traces.push(t);
        }
    }
    let key = |r: &RunRecord| (r.method, r.beta.to_bits(), r.c.to_bits(), r.seed);
    records.sort_by_key(key);
    traces.sort_by_key(|t| (t.method, t.beta.to_bits(), t.c.to_bits(), t.seed));
    Ok(SweepOutput { records, traces })
}

/// Results CSV: fixed column order, UTF-8, `\n` line endings.
pub fn write_records_csv(records: &[RunRecord], include_timing: bool) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(RunRecord::CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row(include_timing));
        out.push('\n');
    }
    out
}

/// Information-plane CSV (`method,beta,I_xz,I_yz`), convergent runs only.
pub fn write_plane_csv(records: &[RunRecord]) -> String {
    let mut out = String::from("method,beta,I_xz,I_yz\n");
    for r in records.iter().filter(|r| r.converged) {
        out.push_str(&format!("{},{},{},{}\n", r.method, r.beta, r.i_xz, r.i_yz));
    }
    out
}

/// Trace archive: JSON lines, one object per recorded iteration.
pub fn write_trace_jsonl(traces: &[TaggedTrace]) -> Result<String> {
    #[derive(Serialize)]
    struct Line<'a> {
        method: Method,
        beta: f64,
        c: f64,
        seed: u64,
        iteration: usize,
        residual_l1_sq: f64,
        lagrangian: f64,
        #[serde(rename = "I_xz")]
        i_xz: f64,
        #[serde(rename = "I_yz")]
        i_yz: f64,
        p_z: &'a [f64],
        mu_z: &'a [f64],
    }
    let mut out = String::new();
    for t in traces {
        for rec in &t.trace.records {
            let line = Line {
                method: t.method,
                beta: t.beta,
                c: t.c,
                seed: t.seed,
                iteration: rec.iteration,
                residual_l1_sq: rec.residual_l1_sq,
                lagrangian: rec.lagrangian,
                i_xz: rec.i_xz,
                i_yz: rec.i_yz,
                p_z: &rec.p_z,
                mu_z: &rec.mu_z,
            };
            out.push_str(&serde_json::to_string(&line)?);
            out.push('\n');
        }
    }
    Ok(out)
}

/// A convergent information-plane point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanePoint {
    pub i_xz: f64,
    pub i_yz: f64,
}

/// Per-(method, beta, c) aggregate over all restarts, divergent runs
/// included in the averages.
#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub method: Method,
    pub beta: f64,
    pub c: f64,
    pub runs: usize,
    pub converged_runs: usize,
    pub convergence_pct: f64,
    pub mean_cpu_ms: f64,
    pub best_i_yz: Option<f64>,
    /// Convergent (I_xz, I_yz) pairs maximal in I_yz per 0.01-nat I_xz bin.
    pub pareto_points: Vec<PlanePoint>,
}

/// Groups records into per-cell summaries; order and content are invariant
/// under permutation of the input.
pub fn aggregate(records: &[RunRecord]) -> Result<Vec<CellSummary>> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    use std::collections::BTreeMap;
    let mut cells: BTreeMap<(Method, u64, u64), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        cells
            .entry((r.method, r.beta.to_bits(), r.c.to_bits()))
            .or_default()
            .push(r);
    }
    let mut out = Vec::with_capacity(cells.len());
    for ((method, beta_bits, c_bits), mut rs) in cells {
        // Canonical order inside the cell so float accumulation does not
        // depend on the input permutation.
        rs.sort_by_key(|r| r.seed);
        let runs = rs.len();
        let converged: Vec<&&RunRecord> = rs.iter().filter(|r| r.converged).collect();
        let mut bins: BTreeMap<i64, PlanePoint> = BTreeMap::new();
        for r in &converged {
            let bin = (r.i_xz / 0.01).floor() as i64;
            let point = PlanePoint {
                i_xz: r.i_xz,
                i_yz: r.i_yz,
            };
            bins.entry(bin)
                .and_modify(|p| {
                    if point.i_yz > p.i_yz {
                        *p = point;
                    }
                })
                .or_insert(point);
        }
        out.push(CellSummary {
            method,
            beta: f64::from_bits(beta_bits),
            c: f64::from_bits(c_bits),
            runs,
            converged_runs: converged.len(),
            convergence_pct: converged.len() as f64 / runs as f64 * 100.0,
            mean_cpu_ms: rs.iter().map(|r| r.cpu_ms).sum::<f64>() / runs as f64,
            best_i_yz: converged
                .iter()
                .map(|r| r.i_yz)
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v)))),
            pareto_points: bins.into_values().collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec() -> SweepSpec {
        SweepSpec {
            methods: vec![Method::Admm],
            beta_grid: vec![2.0],
            c_values: vec![16.0],
            omega: 4.0,
            restarts: 1,
            base_seed: 7,
            admm: AdmmSettings {
                max_outer_iters: 300,
                ..AdmmSettings::default()
            },
            ..SweepSpec::default()
        }
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("5").unwrap(), vec![5.0]);
        assert_eq!(parse_grid("2,5,10").unwrap(), vec![2.0, 5.0, 10.0]);
        let grid = parse_grid("1:10:0.5").unwrap();
        assert_eq!(grid.len(), 19);
        assert_eq!(grid[0], 1.0);
        assert_eq!(*grid.last().unwrap(), 10.0);
        // Step not dividing the range: stop is dropped.
        let grid = parse_grid("1:2:0.4").unwrap();
        assert_eq!(grid.len(), 3);
        assert!(parse_grid("10:1:0.5").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(parse_grid("5,2").is_err());
    }

    #[test]
    fn seed_mixing_is_method_local() {
        let a = mix_seed(7, Method::Admm, 3, 0, 42);
        let b = mix_seed(7, Method::Admm, 3, 0, 42);
        assert_eq!(a, b);
        assert_ne!(a, mix_seed(7, Method::Ba, 3, 0, 42));
        assert_ne!(a, mix_seed(7, Method::Admm, 3, 0, 43));
        assert_ne!(a, mix_seed(8, Method::Admm, 3, 0, 42));
    }

    #[test]
    fn single_cell_single_restart() {
        let joint = JointXY::synthetic_3x3();
        let out = run_sweep(&joint, &tiny_spec()).unwrap();
        assert_eq!(out.records.len(), 1);
        assert!(out.traces.is_empty());
    }

    #[test]
    fn sweep_is_deterministic_and_sorted() {
        let joint = JointXY::synthetic_3x3();
        let mut spec = tiny_spec();
        spec.methods = vec![Method::Admm, Method::Ba];
        spec.beta_grid = vec![1.0, 3.0];
        spec.restarts = 3;
        spec.ba.max_iters = 2_000;
        let a = run_sweep(&joint, &spec).unwrap();
        let b = run_sweep(&joint, &spec).unwrap();
        assert_eq!(
            write_records_csv(&a.records, false),
            write_records_csv(&b.records, false)
        );
        let keys: Vec<_> = a
            .records
            .iter()
            .map(|r| (r.method, r.beta.to_bits(), r.c.to_bits(), r.seed))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn adding_a_method_does_not_shift_streams() {
        let joint = JointXY::synthetic_3x3();
        let mut spec = tiny_spec();
        spec.restarts = 2;
        let only_admm = run_sweep(&joint, &spec).unwrap();
        spec.methods = vec![Method::Admm, Method::Ba];
        spec.ba.max_iters = 2_000;
        let both = run_sweep(&joint, &spec).unwrap();
        let admm_records: Vec<_> = both
            .records
            .iter()
            .filter(|r| r.method == Method::Admm)
            .collect();
        assert_eq!(admm_records.len(), only_admm.records.len());
        for (a, b) in admm_records.iter().zip(only_admm.records.iter()) {
            assert!(a.same_results(b));
        }
    }

    #[test]
    fn aggregate_summaries() {
        let rec = |converged: bool, i_xz: f64, i_yz: f64, cpu: f64| RunRecord {
            method: Method::Admm,
            beta: 2.0,
            c: 16.0,
            omega: 4.0,
            seed: 0,
            converged,
            iterations: 10,
            i_xz,
            i_yz,
            residual: 0.0,
            cpu_ms: cpu,
        };
        let records = vec![
            rec(true, 0.50, 0.20, 2.0),
            rec(true, 0.505, 0.25, 4.0),
            rec(false, 0.0, 0.0, 2.0),
            rec(true, 0.80, 0.10, 4.0),
        ];
        let cells = aggregate(&records).unwrap();
        assert_eq!(cells.len(), 1);
        let cell = &cells[0];
        assert_eq!(cell.runs, 4);
        assert_eq!(cell.converged_runs, 3);
        assert!((cell.convergence_pct - 75.0).abs() < 1e-12);
        assert!((cell.mean_cpu_ms - 3.0).abs() < 1e-12);
        assert_eq!(cell.best_i_yz, Some(0.25));
        // Two bins: [0.50, 0.51) keeps the higher I_yz point, [0.80, 0.81).
        assert_eq!(cell.pareto_points.len(), 2);
        assert!((cell.pareto_points[0].i_yz - 0.25).abs() < 1e-12);

        assert!(matches!(aggregate(&[]), Err(Error::EmptyRecords)));
    }

    #[test]
    fn aggregate_percentages() {
        let mut records = Vec::new();
        for i in 0..100 {
            records.push(RunRecord {
                method: Method::Ba,
                beta: 1.0,
                c: 4.0,
                omega: 4.0,
                seed: i,
                converged: i < 37,
                iterations: 1,
                i_xz: 0.0,
                i_yz: 0.0,
                residual: 0.0,
                cpu_ms: 1.0,
            });
        }
        let cells = aggregate(&records).unwrap();
        assert!((cells[0].convergence_pct - 37.0).abs() < 1e-12);
    }

    #[test]
    fn aggregate_is_permutation_invariant() {
        let joint = JointXY::synthetic_3x3();
        let mut spec = tiny_spec();
        spec.restarts = 4;
        let out = run_sweep(&joint, &spec).unwrap();
        let forward = aggregate(&out.records).unwrap();
        let mut reversed = out.records.clone();
        reversed.reverse();
        let backward = aggregate(&reversed).unwrap();
        assert_eq!(
            serde_json::to_string(&forward).unwrap(),
            serde_json::to_string(&backward).unwrap()
        );
    }

    #[test]
    fn csv_golden_bytes() {
        let records = vec![RunRecord {
            method: Method::Admm,
            beta: 1.5,
            c: 98.0,
            omega: 4.0,
            seed: 12345,
            converged: true,
            iterations: 321,
            i_xz: 0.125,
            i_yz: 0.0625,
            residual: 0.000001,
            cpu_ms: 17.25,
        }];
        let expected = "method,beta,c,omega,seed,converged,iterations,I_xz,I_yz,residual,cpu_ms\n\
                        admm,1.5,98,4,12345,true,321,0.125,0.0625,0.000001,0\n";
        assert_eq!(write_records_csv(&records, false), expected);
        let timed = write_records_csv(&records, true);
        assert!(timed.ends_with("17.25\n"));
    }

    #[test]
    fn plane_csv_filters_divergent() {
        let mut r = RunRecord {
            method: Method::Ba,
            beta: 2.0,
            c: 4.0,
            omega: 4.0,
            seed: 1,
            converged: false,
            iterations: 5,
            i_xz: 0.5,
            i_yz: 0.2,
            residual: 1.0,
            cpu_ms: 0.0,
        };
        assert_eq!(write_plane_csv(&[r.clone()]), "method,beta,I_xz,I_yz\n");
        r.converged = true;
        assert_eq!(
            write_plane_csv(&[r]),
            "method,beta,I_xz,I_yz\nba,2,0.5,0.2\n"
        );
    }

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{
            "methods": ["admm", "ba"],
            "beta_grid": [1.0, 2.0],
            "c_values": [4.0, 98.0],
            "omega": 4.0,
            "restarts": 2,
            "base_seed": 9,
            "admm": {"max_outer_iters": 500}
        }"#;
        let spec = SweepSpec::from_json_str(text).unwrap();
        assert_eq!(spec.methods, vec![Method::Admm, Method::Ba]);
        assert_eq!(spec.admm.max_outer_iters, 500);
        // Unspecified fields fall back to defaults.
        assert_eq!(spec.admm.inner_steps, 1);
        assert_eq!(spec.trace_stride, 0);
    }
}
