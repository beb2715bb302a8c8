//! Shared test support: seeded instance generators and independent oracles.
#![allow(dead_code)]

use flatpair::linalg::{self, Matrix};
use flatpair::Flat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn uniform_cols(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Vec<Vec<f64>> {
    (0..k).map(|_| uniform_vec(rng, m)).collect()
}

/// A random pair of flats with `2 <= m <= 12`, `1 <= n <= min(m, 8)`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub vb: Flat,
    pub vc: Flat,
    pub m: usize,
    pub n: usize,
}

impl Instance {
    pub fn a(&self) -> Matrix {
        flatpair::flats::difference_setup(&self.vb, &self.vc)
            .unwrap()
            .a
    }
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let m = rng.gen_range(2..=12);
    let n = rng.gen_range(1..=m.min(8));
    let l1 = rng.gen_range(0..=n);
    let vb = Flat::plus(uniform_vec(rng, m), uniform_cols(rng, m, l1)).unwrap();
    let vc = Flat::minus(uniform_vec(rng, m), uniform_cols(rng, m, n - l1)).unwrap();
    Instance { vb, vc, m, n }
}

/// Instances with exact duplicates, scaled copies and zero columns.
pub fn rank_deficient_instance(r: &mut rand_chacha::ChaCha8Rng) -> (Flat, Flat) {
    let m = r.gen_range(2..=10);
    let l1 = r.gen_range(1..=m.min(4));
    let l2 = r.gen_range(1..=m.min(4));
    let b_cols = uniform_cols(r, m, l1);
    let mut c_cols = uniform_cols(r, m, l2);
    let src = &b_cols[r.gen_range(0..l1)];
    let s: f64 = r.gen_range(-3.0..3.0);
    match r.gen_range(0..3) {
        0 => c_cols[0] = src.clone(),
        1 => c_cols[0] = src.iter().map(|x| s * x).collect(),
        _ => c_cols[0] = vec![0.0; m],
    }
    (
        Flat::plus(uniform_vec(r, m), b_cols).unwrap(),
        Flat::minus(uniform_vec(r, m), c_cols).unwrap(),
    )
}

/// 1-norm condition number of a square matrix, with the inverse built
/// column by column from the elimination solver.
pub fn condition_1(g: &Matrix) -> f64 {
    let n = g.rows();
    let norm1 = |m: &Matrix| {
        m.columns()
            .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let mut inv_cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        match linalg::solve_linear(g, &e) {
            Ok(x) => inv_cols.push(x),
            Err(_) => return f64::INFINITY,
        }
    }
    let inv = Matrix::from_columns(n, &inv_cols).unwrap();
    norm1(g) * norm1(&inv)
}

/// Gram condition bound used to call an instance "full rank" in the random
/// families: `cond_1(G) <= 1e8`, i.e. `A` conditioned to about `1e4`.
pub const FULL_RANK_GRAM_COND: f64 = 1e8;

pub fn gram_condition(a: &Matrix) -> f64 {
    let g = linalg::gram_matrix(&a.to_columns()).unwrap();
    condition_1(&g)
}

/// Next random instance whose Gram matrix passes the conditioning filter.
pub fn random_full_rank(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let inst = random_instance(rng);
        if gram_condition(&inst.a()) <= FULL_RANK_GRAM_COND {
            return inst;
        }
    }
}

/// Determinant by cofactor expansion along the first row. Test oracle only.
pub fn cofactor_det(m: &Matrix) -> f64 {
    let n = m.rows();
    assert_eq!(n, m.cols());
    match n {
        0 => 1.0,
        1 => m[(0, 0)],
        _ => (0..n)
            .map(|j| {
                let cols: Vec<Vec<f64>> = (0..n)
                    .filter(|&k| k != j)
                    .map(|k| (1..n).map(|i| m[(i, k)]).collect())
                    .collect();
                let minor = Matrix::from_columns(n - 1, &cols).unwrap();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[(0, j)] * cofactor_det(&minor)
            })
            .sum(),
    }
}

/// Random orthogonal matrix from Householder reflections of random vectors.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, m: usize) -> Matrix {
    let mut q = Matrix::identity(m);
    for _ in 0..m {
        let v = uniform_vec(rng, m);
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv < 1e-6 {
            continue;
        }
        // q <- (I - 2 v v^T / v^T v) q
        for j in 0..m {
            let col = q.column_mut(j);
            let c: f64 = col.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() * 2.0 / vv;
            for (x, vi) in col.iter_mut().zip(&v) {
                *x -= c * vi;
            }
        }
    }
    q
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub fn vec_rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    diff / linalg::norm(b).max(1.0)
}
