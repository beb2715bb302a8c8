//! Cross-checking the solver with alternating projections and random
//! sampling, neither of which uses Gram determinants.
//!
//! cargo run --release --example oracle_check

use flatpair::oracle::{self, OracleConfig};
use flatpair::solver::{self, DEFAULT_RANK_TOL};
use flatpair::Flat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_flat(rng: &mut ChaCha8Rng, m: usize, k: usize, minus: bool) -> flatpair::Result<Flat> {
    let mut v = || {
        (0..m)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect::<Vec<f64>>()
    };
    let base = v();
    let cols: Vec<Vec<f64>> = (0..k).map(|_| v()).collect();
    if minus {
        Flat::minus(base, cols)
    } else {
        Flat::plus(base, cols)
    }
}

fn main() -> flatpair::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = OracleConfig::default();
    for _ in 0..5 {
        let vb = random_flat(&mut rng, 6, 2, false)?;
        let vc = random_flat(&mut rng, 6, 2, true)?;
        let sol = solver::optimal_pair(&vb, &vc, DEFAULT_RANK_TOL)?;
        let report = oracle::cross_check(&vb, &vc, &sol, &cfg);
        println!(
            "solver {:.12}  projections {:.12} ({} it)  sampled >= {:.6}  agree {}",
            sol.distance,
            report.ap_distance,
            report.iterations,
            report.sample_min,
            report.agreement
        );
    }
    Ok(())
}
