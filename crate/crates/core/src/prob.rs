//! Discrete distributions and the information functionals every solver consumes.
//!
//! All quantities are in nats. The `0 * ln 0 = 0` convention applies throughout;
//! a Kullback-Leibler divergence with `p_i > 0` against `q_i = 0` is an error
//! rather than `inf`, so callers fail loudly instead of propagating infinities.

use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Absolute tolerance for simplex sums at construction.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// A point on a probability simplex. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    entries: Vec<f64>,
}

impl ProbVector {
    /// Validates non-negativity and that entries sum to 1 within [`SIMPLEX_TOL`].
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::NotNormalized {
                sum,
                tol: SIMPLEX_TOL,
            });
        }
        Ok(Self { entries })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            entries: vec![1.0 / n as f64; n],
        }
    }

    /// Uniform sample from the simplex via exponential spacings.
    pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1);
        let mut entries: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let sum: f64 = entries.iter().sum();
        if sum <= 0.0 {
            return Self::uniform(n);
        }
        for e in &mut entries {
            *e /= sum;
        }
        Self { entries }
    }

    /// Smallest mix toward the uniform vector that puts every entry at or
    /// above `eps`. Preserves the sum exactly; requires `eps * n < 1`.
    pub fn clamp_interior(&self, eps: f64) -> Self {
        let n = self.entries.len() as f64;
        debug_assert!(eps >= 0.0 && eps * n < 1.0);
        let mut t: f64 = 0.0;
        for &x in &self.entries {
            if x < eps {
                t = t.max((eps - x) / (1.0 / n - x));
            }
        }
        if t == 0.0 {
            return self.clone();
        }
        let t = t.min(1.0);
        let entries = self
            .entries
            .iter()
            .map(|&x| (1.0 - t) * x + t / n)
            .collect();
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn min_entry(&self) -> f64 {
        self.entries.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl std::ops::Deref for ProbVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.entries
    }
}

/// `-sum p ln p` over a raw slice with the `0 ln 0 = 0` convention.
pub(crate) fn entropy_raw(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Shannon entropy in nats.
pub fn entropy(p: &ProbVector) -> f64 {
    entropy_raw(p)
}

pub(crate) fn kl_raw(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut acc = 0.0;
    for (index, (&pi, &qi)) in p.iter().zip(q.iter()).enumerate() {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Err(Error::InfiniteDivergence { index, p: pi });
            }
            acc += pi * (pi / qi).ln();
        }
    }
    Ok(acc)
}

/// `D_KL(p || q)` in nats; disjoint support is an error.
pub fn kl_divergence(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    kl_raw(p, q)
}

#[derive(Deserialize)]
struct JointXyFile {
    p_y_given_x: Vec<Vec<f64>>,
    p_x: Vec<f64>,
}

/// The fixed joint distribution, stored as the `N_y x N_x` table of column
/// conditionals `p(y|x)` plus the prior `p(x)`. Every table entry must be
/// strictly positive and every column must sum to 1.
///
/// Derived quantities (`p(y)` and the Bayes posterior `p(x|y)`) are computed
/// once at construction.
#[derive(Debug, Clone)]
pub struct JointXY {
    table: Vec<Vec<f64>>,
    prior: ProbVector,
    p_y: ProbVector,
    x_given_y: Vec<Vec<f64>>,
}

impl JointXY {
    pub fn new(table: Vec<Vec<f64>>, prior: ProbVector) -> Result<Self> {
        let n_y = table.len();
        if n_y == 0 {
            return Err(Error::EmptyVector);
        }
        let n_x = prior.len();
        for (row, r) in table.iter().enumerate() {
            if r.len() != n_x {
                return Err(Error::LengthMismatch {
                    left: r.len(),
                    right: n_x,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if !value.is_finite() || value <= 0.0 {
                    return Err(Error::PositivityViolation { row, col, value });
                }
            }
        }
        for col in 0..n_x {
            let sum: f64 = table.iter().map(|r| r[col]).sum();
            if (sum - 1.0).abs() > SIMPLEX_TOL {
                return Err(Error::NotNormalized {
                    sum,
                    tol: SIMPLEX_TOL,
                });
            }
        }

        let mut p_y = vec![0.0; n_y];
        for (y, r) in table.iter().enumerate() {
            p_y[y] = r.iter().zip(prior.iter()).map(|(&t, &px)| t * px).sum();
        }
        // p(y) > 0 follows from the strictly positive table.
        let mut x_given_y = vec![vec![0.0; n_x]; n_y];
        for y in 0..n_y {
            for x in 0..n_x {
                x_given_y[y][x] = table[y][x] * prior[x] / p_y[y];
            }
        }
        let p_y = ProbVector::new(p_y)?;
        Ok(Self {
            table,
            prior,
            p_y,
            x_given_y,
        })
    }

    /// Parses the `{"p_y_given_x": [[...]], "p_x": [...]}` document
    /// (row-major table layout).
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: JointXyFile = serde_json::from_str(text)?;
        let prior = ProbVector::new(file.p_x)?;
        Self::new(file.p_y_given_x, prior)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// The bundled 3x3 synthetic instance used by the experiment protocol.
    pub fn synthetic_3x3() -> Self {
        let table = vec![
            vec![0.7, 0.3, 0.075],
            vec![0.15, 0.5, 0.025],
            vec![0.15, 0.2, 0.9],
        ];
        let third = 1.0 / 3.0;
        let prior = ProbVector::new(vec![third, third, third]).expect("valid prior");
        Self::new(table, prior).expect("valid synthetic instance")
    }

    pub fn n_x(&self) -> usize {
        self.prior.len()
    }

    pub fn n_y(&self) -> usize {
        self.table.len()
    }

    pub fn p_x(&self) -> &ProbVector {
        &self.prior
    }

    pub fn p_y(&self) -> &ProbVector {
        &self.p_y
    }

    /// `p(y|x)` table row for a fixed `y` (indexed by `x`).
    pub fn y_given_x_row(&self, y: usize) -> &[f64] {
        &self.table[y]
    }

    /// `p(y|x)` column for a fixed `x` (indexed by `y`).
    pub fn y_given_x_col(&self, x: usize) -> Vec<f64> {
        self.table.iter().map(|r| r[x]).collect()
    }

    /// Bayes posterior `p(x|y)` for a fixed `y`.
    pub fn x_given_y(&self, y: usize) -> &[f64] {
        &self.x_given_y[y]
    }
}

/// The conditional `p(z|x)`: one probability row per source symbol.
///
/// Logically this is the cascaded length `N_x * N_z` vector with z-major
/// layout (index `z * N_x + x`), which is the order the marginalization
/// operator and all cascaded gradients use.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoder {
    rows: Vec<ProbVector>,
}

impl Encoder {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyVector);
        }
        let n_z = rows[0].len();
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n_z {
                return Err(Error::LengthMismatch {
                    left: r.len(),
                    right: n_z,
                });
            }
            out.push(ProbVector::new(r)?);
        }
        Ok(Self { rows: out })
    }

    pub fn from_rows(rows: Vec<ProbVector>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyVector);
        }
        let n_z = rows[0].len();
        for r in &rows {
            if r.len() != n_z {
                return Err(Error::LengthMismatch {
                    left: r.len(),
                    right: n_z,
                });
            }
        }
        Ok(Self { rows })
    }

    /// `p(z|x) = 1` iff `z == x`.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                r[i] = 1.0;
                ProbVector::new(r).expect("valid row")
            })
            .collect();
        Self { rows }
    }

    /// Every source symbol mapped through the same row `r`.
    pub fn constant_rows(row: &ProbVector, n_x: usize) -> Self {
        assert!(n_x >= 1);
        Self {
            rows: vec![row.clone(); n_x],
        }
    }

    pub fn sample_uniform<R: Rng + ?Sized>(n_x: usize, n_z: usize, rng: &mut R) -> Self {
        let rows = (0..n_x)
            .map(|_| ProbVector::sample_uniform(n_z, rng))
            .collect();
        Self { rows }
    }

    pub fn clamp_interior(&self, eps: f64) -> Self {
        Self {
            rows: self.rows.iter().map(|r| r.clamp_interior(eps)).collect(),
        }
    }

    pub fn n_x(&self) -> usize {
        self.rows.len()
    }

    pub fn n_z(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, x: usize) -> &ProbVector {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[ProbVector] {
        &self.rows
    }

    /// The z-major cascade `[p(z_1|x_1), ..., p(z_1|x_Nx), p(z_2|x_1), ...]`.
    pub fn cascade(&self) -> Vec<f64> {
        let (n_x, n_z) = (self.n_x(), self.n_z());
        let mut v = vec![0.0; n_x * n_z];
        for (x, row) in self.rows.iter().enumerate() {
            for (z, &p) in row.iter().enumerate() {
                v[z * n_x + x] = p;
            }
        }
        v
    }

    pub fn from_cascade(v: &[f64], n_x: usize, n_z: usize) -> Result<Self> {
        if v.len() != n_x * n_z {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: n_x * n_z,
            });
        }
        let rows = (0..n_x)
            .map(|x| (0..n_z).map(|z| v[z * n_x + x]).collect::<Vec<_>>())
            .collect();
        Self::new(rows)
    }

    /// Maximum absolute row-wise difference summed per row (L1 of the cascade).
    pub fn l1_distance(&self, other: &Encoder) -> f64 {
        self.rows
            .iter()
            .zip(other.rows.iter())
            .map(|(a, b)| {
                a.iter()
                    .zip(b.iter())
                    .map(|(&x, &y)| (x - y).abs())
                    .sum::<f64>()
            })
            .sum()
    }
}

/// The marginalization operator `B = I ⊗ p_x^T` and the row-sum operator
/// `J = 1^T ⊗ I`, applied without materializing the Kronecker products.
#[derive(Debug, Clone)]
pub struct LinearOps {
    p_x: Vec<f64>,
    n_x: usize,
    n_z: usize,
}

impl LinearOps {
    pub fn new(prior: &ProbVector, n_z: usize) -> Self {
        Self {
            p_x: prior.to_vec(),
            n_x: prior.len(),
            n_z,
        }
    }

    pub fn for_problem(joint: &JointXY, n_z: usize) -> Self {
        Self::new(joint.p_x(), n_z)
    }

    /// `B v` for a z-major cascade `v`: component `z` is `sum_x p(x) v[z,x]`.
    pub fn apply_b(&self, cascade: &[f64]) -> Vec<f64> {
        assert_eq!(cascade.len(), self.n_x * self.n_z);
        (0..self.n_z)
            .map(|z| {
                (0..self.n_x)
                    .map(|x| self.p_x[x] * cascade[z * self.n_x + x])
                    .sum()
            })
            .collect()
    }

    /// The induced marginal `p(z) = sum_x p(x) p(z|x)`.
    pub fn marginal(&self, encoder: &Encoder) -> Vec<f64> {
        assert_eq!(encoder.n_x(), self.n_x);
        let mut out = vec![0.0; encoder.n_z()];
        for (x, row) in encoder.rows().iter().enumerate() {
            for (z, &p) in row.iter().enumerate() {
                out[z] += self.p_x[x] * p;
            }
        }
        out
    }

    /// `B^T w`: cascade component `(x, z)` is `p(x) w[z]`.
    pub fn apply_bt(&self, w: &[f64]) -> Vec<f64> {
        assert_eq!(w.len(), self.n_z);
        let mut v = vec![0.0; self.n_x * self.n_z];
        for z in 0..self.n_z {
            for x in 0..self.n_x {
                v[z * self.n_x + x] = self.p_x[x] * w[z];
            }
        }
        v
    }

    /// `J v`: per-x row sums of the cascade.
    pub fn apply_j(&self, cascade: &[f64]) -> Vec<f64> {
        assert_eq!(cascade.len(), self.n_x * self.n_z);
        (0..self.n_x)
            .map(|x| (0..self.n_z).map(|z| cascade[z * self.n_x + x]).sum())
            .collect()
    }
}

/// Decoder columns `p(z|y)` through the Markov chain: column `y` is
/// `sum_x p(z|x) p(x|y)`. No validation; dimensions must already agree.
pub(crate) fn decoder_columns(joint: &JointXY, encoder: &Encoder) -> Vec<Vec<f64>> {
    let n_z = encoder.n_z();
    (0..joint.n_y())
        .map(|y| {
            let post = joint.x_given_y(y);
            let mut col = vec![0.0; n_z];
            for (x, row) in encoder.rows().iter().enumerate() {
                for (z, &p) in row.iter().enumerate() {
                    col[z] += p * post[x];
                }
            }
            col
        })
        .collect()
}

fn check_dims(joint: &JointXY, encoder: &Encoder) -> Result<()> {
    if encoder.n_x() != joint.n_x() {
        return Err(Error::LengthMismatch {
            left: encoder.n_x(),
            right: joint.n_x(),
        });
    }
    Ok(())
}

/// The Markov decoder `p(z|y)`, one probability column per `y`.
pub fn markov_decoder(joint: &JointXY, encoder: &Encoder) -> Result<Vec<ProbVector>> {
    check_dims(joint, encoder)?;
    decoder_columns(joint, encoder)
        .into_iter()
        .map(ProbVector::new)
        .collect()
}

/// `I(X;Z)` from the exact marginal `B p_{z|x}`:
/// `H(B p_{z|x}) - sum_x p(x) H(p(.|x))`.
pub fn mutual_information_xz(joint: &JointXY, encoder: &Encoder) -> Result<f64> {
    check_dims(joint, encoder)?;
    let ops = LinearOps::for_problem(joint, encoder.n_z());
    let marginal = ops.marginal(encoder);
    let cond: f64 = joint
        .p_x()
        .iter()
        .zip(encoder.rows())
        .map(|(&px, row)| px * entropy_raw(row))
        .sum();
    Ok(entropy_raw(&marginal) - cond)
}

/// `I(Y;Z)` through the Markov decoder `p(z|y) = sum_x p(z|x) p(x|y)`.
pub fn mutual_information_yz(joint: &JointXY, encoder: &Encoder) -> Result<f64> {
    check_dims(joint, encoder)?;
    let ops = LinearOps::for_problem(joint, encoder.n_z());
    let marginal = ops.marginal(encoder);
    let cols = decoder_columns(joint, encoder);
    let cond: f64 = joint
        .p_y()
        .iter()
        .zip(cols.iter())
        .map(|(&py, col)| py * entropy_raw(col))
        .sum();
    Ok(entropy_raw(&marginal) - cond)
}

/// The conditioning constants of the joint table: per-`y` squared ratio
/// spreads and their maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaReport {
    pub kappa: f64,
    pub kappa_y: Vec<f64>,
}

/// `kappa_y = (max_x p(y|x) / min_x p(y|x) - 1)^2` per `y`; `kappa` is the
/// maximum over `y`. Positivity of the table is enforced at construction.
pub fn kappa(joint: &JointXY) -> KappaReport {
    let kappa_y: Vec<f64> = (0..joint.n_y())
        .map(|y| {
            let row = joint.y_given_x_row(y);
            let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = row.iter().copied().fold(f64::INFINITY, f64::min);
            (max / min - 1.0).powi(2)
        })
        .collect();
    let kappa = kappa_y.iter().copied().fold(0.0, f64::max);
    KappaReport { kappa, kappa_y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn paper_joint() -> JointXY {
        JointXY::synthetic_3x3()
    }

    #[test]
    fn prob_vector_rejects_bad_input() {
        assert!(ProbVector::new(vec![]).is_err());
        assert!(ProbVector::new(vec![0.5, -0.1, 0.6]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.4]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.5 + 2e-9]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.5 + 2e-10]).is_ok());
    }

    #[test]
    fn entropy_examples() {
        let uniform = ProbVector::uniform(3);
        assert!((entropy(&uniform) - 3.0_f64.ln()).abs() < 1e-12);

        let point = ProbVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(entropy(&point), 0.0);

        // Direct summation oracle for [0.7, 0.15, 0.15].
        let p = vec![0.7, 0.15, 0.15];
        let expected: f64 = -p.iter().map(|&x: &f64| x * x.ln()).sum::<f64>();
        let pv = ProbVector::new(p).unwrap();
        assert!((entropy(&pv) - expected).abs() < 1e-15);
        assert!((expected - 0.818_808).abs() < 1e-6);
    }

    #[test]
    fn kl_examples() {
        let p = ProbVector::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);

        let q = ProbVector::new(vec![0.25, 0.75]).unwrap();
        // Two-term hand evaluation: 0.5 ln 2 + 0.5 ln(2/3).
        let expected = 0.5 * 2.0_f64.ln() + 0.5 * (2.0_f64 / 3.0).ln();
        assert!((kl_divergence(&p, &q).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.143_841).abs() < 1e-6);

        let a = ProbVector::new(vec![1.0, 0.0]).unwrap();
        let b = ProbVector::new(vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            kl_divergence(&a, &b),
            Err(Error::InfiniteDivergence { .. })
        ));
    }

    #[test]
    fn mutual_information_xz_examples() {
        let joint = paper_joint();
        let row = ProbVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let constant = Encoder::constant_rows(&row, 3);
        assert!(mutual_information_xz(&joint, &constant).unwrap().abs() < 1e-12);

        let identity = Encoder::identity(3);
        let i = mutual_information_xz(&joint, &identity).unwrap();
        assert!((i - 3.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_yz_examples() {
        let joint = paper_joint();
        let row = ProbVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let constant = Encoder::constant_rows(&row, 3);
        assert!(mutual_information_yz(&joint, &constant).unwrap().abs() < 1e-12);

        // Identity encoder makes Z = X, so I(Y;Z) = I(X;Y). Oracle: direct
        // 9-cell summation over p(x,y).
        let mut oracle = 0.0;
        for y in 0..3 {
            for x in 0..3 {
                let pxy = joint.y_given_x_row(y)[x] * joint.p_x()[x];
                oracle += pxy * (pxy / (joint.p_x()[x] * joint.p_y()[y])).ln();
            }
        }
        let identity = Encoder::identity(3);
        let i = mutual_information_yz(&joint, &identity).unwrap();
        assert!((i - oracle).abs() < 1e-12);
        assert!((oracle - 0.3249).abs() < 1e-4);

        // N_z = 1 means Z is constant.
        let one = Encoder::constant_rows(&ProbVector::uniform(1), 3);
        assert!(mutual_information_yz(&joint, &one).unwrap().abs() < 1e-12);
    }

    #[test]
    fn markov_decoder_examples() {
        let joint = paper_joint();
        let identity = Encoder::identity(3);
        let cols = markov_decoder(&joint, &identity).unwrap();
        for y in 0..3 {
            for z in 0..3 {
                assert!((cols[y][z] - joint.x_given_y(y)[z]).abs() < 1e-12);
            }
        }

        let row = ProbVector::new(vec![0.6, 0.1, 0.3]).unwrap();
        let constant = Encoder::constant_rows(&row, 3);
        let cols = markov_decoder(&joint, &constant).unwrap();
        for col in &cols {
            for z in 0..3 {
                assert!((col[z] - row[z]).abs() < 1e-12);
            }
        }

        // Brute-force summation oracle on a fixed random-ish encoder.
        let enc = Encoder::new(vec![
            vec![0.5, 0.25, 0.25],
            vec![0.1, 0.7, 0.2],
            vec![0.3, 0.3, 0.4],
        ])
        .unwrap();
        let cols = markov_decoder(&joint, &enc).unwrap();
        for y in 0..3 {
            for z in 0..3 {
                let brute: f64 = (0..3).map(|x| enc.row(x)[z] * joint.x_given_y(y)[x]).sum();
                assert!((cols[y][z] - brute).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kappa_examples() {
        let third = 1.0 / 3.0;
        let uniform = JointXY::new(
            vec![vec![third; 3]; 3],
            ProbVector::new(vec![third, third, third]).unwrap(),
        )
        .unwrap();
        let report = kappa(&uniform);
        assert!(report.kappa.abs() < 1e-12);

        let report = kappa(&paper_joint());
        // Direct scan of the 3x3 table: ratios 0.7/0.075, 0.5/0.025, 0.9/0.15.
        assert!((report.kappa_y[0] - (0.7_f64 / 0.075 - 1.0).powi(2)).abs() < 1e-9);
        assert!((report.kappa_y[1] - 361.0).abs() < 1e-9);
        assert!((report.kappa_y[2] - 25.0).abs() < 1e-9);
        assert!((report.kappa - 361.0).abs() < 1e-9);

        let single_row = JointXY::new(
            vec![vec![1.0, 1.0, 1.0]],
            ProbVector::new(vec![third, third, third]).unwrap(),
        )
        .unwrap();
        assert!(kappa(&single_row).kappa.abs() < 1e-12);
    }

    #[test]
    fn kappa_permutation_invariant() {
        let joint = paper_joint();
        let base = kappa(&joint).kappa;
        // Swap two x-columns and two y-rows.
        let permuted = JointXY::new(
            vec![
                vec![0.025, 0.5, 0.15],
                vec![0.075, 0.3, 0.7],
                vec![0.9, 0.2, 0.15],
            ],
            joint.p_x().clone(),
        )
        .unwrap();
        assert!((kappa(&permuted).kappa - base).abs() < 1e-12);
    }

    #[test]
    fn joint_validation() {
        let third = 1.0 / 3.0;
        let prior = ProbVector::new(vec![third, third, third]).unwrap();
        let zero_entry = JointXY::new(
            vec![
                vec![0.7, 0.3, 0.0],
                vec![0.15, 0.5, 0.1],
                vec![0.15, 0.2, 0.9],
            ],
            prior.clone(),
        );
        assert!(matches!(zero_entry, Err(Error::PositivityViolation { .. })));

        let bad_column = JointXY::new(
            vec![
                vec![0.7, 0.3, 0.2],
                vec![0.15, 0.5, 0.1],
                vec![0.15, 0.2, 0.9],
            ],
            prior,
        );
        assert!(matches!(bad_column, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn joint_json_round_trip() {
        let text = r#"{
            "p_y_given_x": [[0.7, 0.3, 0.075], [0.15, 0.5, 0.025], [0.15, 0.2, 0.9]],
            "p_x": [0.3333333333333333, 0.3333333333333333, 0.3333333333333333]
        }"#;
        let joint = JointXY::from_json_str(text).unwrap();
        assert_eq!(joint.n_x(), 3);
        assert_eq!(joint.n_y(), 3);
        assert!((joint.y_given_x_row(2)[2] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn cascade_round_trip_and_ops() {
        let enc = Encoder::new(vec![
            vec![0.5, 0.25, 0.25],
            vec![0.1, 0.7, 0.2],
            vec![0.3, 0.3, 0.4],
        ])
        .unwrap();
        let v = enc.cascade();
        // z-major: index z * N_x + x.
        assert_eq!(v[0], 0.5);
        assert_eq!(v[1], 0.1);
        assert_eq!(v[3], 0.25);
        let back = Encoder::from_cascade(&v, 3, 3).unwrap();
        assert_eq!(back, enc);

        let joint = paper_joint();
        let ops = LinearOps::for_problem(&joint, 3);
        let ones = ops.apply_j(&v);
        for s in ones {
            assert!((s - 1.0).abs() < 1e-9);
        }
        let marginal = ops.marginal(&enc);
        assert_eq!(marginal, ops.apply_b(&v));
        assert!(ProbVector::new(marginal).is_ok());
    }

    #[test]
    fn clamp_interior_reaches_floor() {
        let p = ProbVector::new(vec![0.0, 0.0, 1.0]).unwrap();
        let c = p.clamp_interior(0.05);
        assert!(c.min_entry() >= 0.05 - 1e-15);
        assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // Interior points are untouched.
        let q = ProbVector::new(vec![0.3, 0.3, 0.4]).unwrap();
        assert_eq!(q.clamp_interior(0.05), q);
    }

    fn arb_simplex(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(1e-3..1.0f64, n).prop_map(|raw| {
            let sum: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / sum).collect()
        })
    }

    fn arb_joint() -> impl Strategy<Value = JointXY> {
        (
            prop::collection::vec(prop::collection::vec(0.05..1.0f64, 3), 3),
            arb_simplex(3),
        )
            .prop_map(|(cols, prior)| {
                // cols[x][y] -> normalized columns, then transposed to rows.
                let mut table = vec![vec![0.0; 3]; 3];
                for (x, col) in cols.iter().enumerate() {
                    let sum: f64 = col.iter().sum();
                    for (y, &v) in col.iter().enumerate() {
                        table[y][x] = v / sum;
                    }
                }
                JointXY::new(table, ProbVector::new(prior).unwrap()).unwrap()
            })
    }

    fn arb_encoder() -> impl Strategy<Value = Encoder> {
        prop::collection::vec(arb_simplex(3), 3)
            .prop_map(|rows| Encoder::new(rows).unwrap())
    }

    proptest! {
        #[test]
        fn data_processing_inequality((joint, enc) in (arb_joint(), arb_encoder())) {
            let i_xz = mutual_information_xz(&joint, &enc).unwrap();
            let i_yz = mutual_information_yz(&joint, &enc).unwrap();
            let identity = Encoder::identity(3);
            let i_xy = mutual_information_yz(&joint, &identity).unwrap();
            prop_assert!(i_yz <= i_xz + 1e-9);
            prop_assert!(i_yz <= i_xy + 1e-9);
            prop_assert!(i_xz >= -1e-12);
            prop_assert!(i_yz >= -1e-12);
        }

        #[test]
        fn marginal_matches_naive((joint, enc) in (arb_joint(), arb_encoder())) {
            let ops = LinearOps::for_problem(&joint, enc.n_z());
            let marginal = ops.marginal(&enc);
            for z in 0..enc.n_z() {
                let naive: f64 = (0..enc.n_x())
                    .map(|x| joint.p_x()[x] * enc.row(x)[z])
                    .sum();
                prop_assert!((marginal[z] - naive).abs() < 1e-12);
            }
        }

        #[test]
        fn entropy_and_kl_nonnegative(p in arb_simplex(4), q in arb_simplex(4)) {
            let pv = ProbVector::new(p).unwrap();
            let qv = ProbVector::new(q).unwrap();
            prop_assert!(entropy(&pv) >= -1e-12);
            prop_assert!(kl_divergence(&pv, &qv).unwrap() >= -1e-12);
        }
    }
}
