//! Optimal pair of two skew lines in R^3.
//!
//! cargo run --example skew_lines

use flatpair::solver::{self, DEFAULT_RANK_TOL};
use flatpair::Flat;

fn main() -> flatpair::Result<()> {
    // x-axis, and a line parallel to the y-axis through (1, 2, 3)
    let vb = Flat::plus(vec![0.0, 0.0, 0.0], vec![vec![1.0, 0.0, 0.0]])?;
    let vc = Flat::minus(vec![1.0, 2.0, 3.0], vec![vec![0.0, 1.0, 0.0]])?;

    let sol = solver::optimal_pair(&vb, &vc, DEFAULT_RANK_TOL)?;
    println!("b* = {:?}  (u* = {:?})", sol.b_star, sol.u_star);
    println!("c* = {:?}  (v* = {:?})", sol.c_star, sol.v_star);
    println!("distance          = {}", sol.distance);
    println!("gram ratio        = {}", sol.distance_sq_gram);
    println!("path              = {}", sol.diagnostics.path);

    solver::verify_solution(&vb, &vc, &sol)?;
    Ok(())
}
