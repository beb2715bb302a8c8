//! Verification paths that avoid Gram determinants entirely.
//!
//! Alternating projections between the two flats use orthonormal bases from
//! modified Gram–Schmidt. The sampled bound evaluates random point pairs and
//! can only over-estimate the distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::flats::Flat;
use crate::linalg::{self, Matrix};
use crate::solver::PairSolution;

/// Sampling box for `sampled_upper_bound` coefficients.
pub const SAMPLE_BOX: f64 = 10.0;

/// Orthonormal basis of the column span, by modified Gram–Schmidt with one
/// reorthogonalization pass. Columns with residual `<= tol * max(1, ||a||)`
/// are skipped.
pub fn orthonormal_basis(directions: &Matrix, tol: f64) -> Matrix {
    let m = directions.rows();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for col in directions.columns() {
        let scale = linalg::norm(col).max(1.0);
        let mut v = col.to_vec();
        for _ in 0..2 {
            for q in &basis {
                let c: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let nv = linalg::norm(&v);
        if nv > tol * scale {
            v.iter_mut().for_each(|x| *x /= nv);
            basis.push(v);
        }
    }
    Matrix::from_columns(m, &basis).expect("basis vectors have the ambient length")
}

/// Orthogonal projector onto a flat: `x -> base + Q Q^T (x - base)`.
#[derive(Debug, Clone)]
pub struct FlatProjector {
    base: Vec<f64>,
    q: Matrix,
}

impl FlatProjector {
    pub fn new(flat: &Flat, tol: f64) -> Self {
        Self {
            base: flat.base().to_vec(),
            q: orthonormal_basis(flat.directions(), tol),
        }
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let offset: Vec<f64> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let mut out = self.base.clone();
        for q in self.q.columns() {
            let c: f64 = q.iter().zip(&offset).map(|(a, b)| a * b).sum();
            for (o, qi) in out.iter_mut().zip(q) {
                *o += c * qi;
            }
        }
        out
    }
}

/// Outcome of an alternating-projections run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionRun {
    /// Final `||p - q||`.
    pub distance: f64,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub iterations: usize,
    /// `false` when `max_iter` was reached without meeting `eps`.
    pub converged: bool,
}

/// Alternating projections starting from the first flat's base point.
///
/// Each iteration projects the current `p` onto the second flat (giving
/// `q`) and then `q` back onto the first flat. The distance estimates
/// `||p_old - q||` and `||p_new - q||` are compared, and the run stops when
/// they differ by at most `eps`.
pub fn alternating_projections(vb: &Flat, vc: &Flat, max_iter: usize, eps: f64) -> ProjectionRun {
    const BASIS_TOL: f64 = 1e-12;
    let pb = FlatProjector::new(vb, BASIS_TOL);
    let pc = FlatProjector::new(vc, BASIS_TOL);
    let mut p = vb.base().to_vec();
    let mut q = pc.project(&p);
    let mut dist = linalg::norm(&linalg::sub(&p, &q));
    for k in 1..=max_iter.max(1) {
        q = pc.project(&p);
        let before = linalg::norm(&linalg::sub(&p, &q));
        p = pb.project(&q);
        dist = linalg::norm(&linalg::sub(&p, &q));
        if (before - dist).abs() <= eps {
            return ProjectionRun {
                distance: dist,
                p,
                q,
                iterations: k,
                converged: true,
            };
        }
    }
    ProjectionRun {
        distance: dist,
        p,
        q,
        iterations: max_iter.max(1),
        converged: false,
    }
}

/// Minimum of `||(b + B u) - (c - C v)||` over `samples` random coefficient
/// pairs with entries uniform in `[-10, 10]`. Deterministic in `seed`.
pub fn sampled_upper_bound(vb: &Flat, vc: &Flat, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = vec![0.0; vb.num_directions()];
    let mut v = vec![0.0; vc.num_directions()];
    let mut best = f64::INFINITY;
    for _ in 0..samples.max(1) {
        u.iter_mut()
            .for_each(|x| *x = rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX));
        v.iter_mut()
            .for_each(|x| *x = rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX));
        let p = vb.point_at(&u).expect("coefficient length matches");
        let q = vc.point_at(&v).expect("coefficient length matches");
        best = best.min(linalg::norm(&linalg::sub(&p, &q)));
    }
    best
}

/// Settings for [`cross_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_iter: usize,
    pub eps: f64,
    pub samples: usize,
    pub seed: u64,
    /// Allowed relative gap between solver and alternating projections.
    pub ap_rel_tol: f64,
    /// Allowed amount by which the sampled bound may undercut the solver.
    pub sample_slack: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_iter: 100_000,
            eps: 1e-15,
            samples: 10_000,
            seed: 0,
            ap_rel_tol: 1e-6,
            sample_slack: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub ap_distance: f64,
    pub iterations: usize,
    pub ap_converged: bool,
    pub sample_min: f64,
    pub solver_distance: f64,
    /// Solver agrees with alternating projections and stays under the
    /// sampled bound.
    pub agreement: bool,
}

/// Runs both oracles against a solver result.
pub fn cross_check(vb: &Flat, vc: &Flat, sol: &PairSolution, cfg: &OracleConfig) -> OracleReport {
    let run = alternating_projections(vb, vc, cfg.max_iter, cfg.eps);
    let sample_min = sampled_upper_bound(vb, vc, cfg.samples, cfg.seed);
    let dist = sol.distance;
    let ap_ok = (run.distance - dist).abs() <= cfg.ap_rel_tol * dist.max(1.0);
    let sample_ok = sample_min >= dist - cfg.sample_slack;
    OracleReport {
        ap_distance: run.distance,
        iterations: run.iterations,
        ap_converged: run.converged,
        sample_min,
        solver_distance: dist,
        agreement: ap_ok && sample_ok,
    }
}
