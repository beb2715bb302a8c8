//! Distance from a point to a plane: a zero-dimensional flat against a
//! two-dimensional one.
//!
//! cargo run --example point_to_plane

use flatpair::solver::{self, DEFAULT_RANK_TOL};
use flatpair::Flat;

fn main() -> flatpair::Result<()> {
    let point = Flat::point(vec![1.0, 1.0, 1.0])?;
    // plane x + y + z = 0
    let plane = Flat::minus(
        vec![0.0, 0.0, 0.0],
        vec![vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]],
    )?;

    let sol = solver::optimal_pair(&point, &plane, DEFAULT_RANK_TOL)?;
    println!("foot of perpendicular = {:?}", sol.c_star);
    println!(
        "distance = {} (expected sqrt(3) = {})",
        sol.distance,
        3f64.sqrt()
    );
    println!(
        "squared distance from gram determinants = {}",
        solver::distance_squared_gram(&point, &plane, DEFAULT_RANK_TOL)?
    );
    Ok(())
}
