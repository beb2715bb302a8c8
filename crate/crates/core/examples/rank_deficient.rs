//! Flats whose combined direction matrix is rank deficient: parallel lines
//! and a plane containing a line direction. The pair is then not unique,
//! but the distance is.
//!
//! cargo run --example rank_deficient

use flatpair::solver::{self, DEFAULT_RANK_TOL};
use flatpair::Flat;

fn main() -> flatpair::Result<()> {
    let e1 = vec![1.0, 0.0, 0.0];
    let e2 = vec![0.0, 1.0, 0.0];

    let cases = [
        (
            "parallel lines",
            Flat::plus(vec![0.0, 0.0, 0.0], vec![e1.clone()])?,
            Flat::minus(vec![0.0, 3.0, 4.0], vec![vec![-2.0, 0.0, 0.0]])?,
        ),
        (
            "line parallel to plane",
            Flat::plus(vec![0.0, 0.0, 1.0], vec![vec![1.0, 1.0, 0.0]])?,
            Flat::minus(vec![5.0, 5.0, -1.0], vec![e1, e2])?,
        ),
    ];
    for (name, vb, vc) in cases {
        let sol = solver::optimal_pair(&vb, &vc, DEFAULT_RANK_TOL)?;
        let diag = &sol.diagnostics;
        println!("{name}:");
        println!(
            "  distance {}  path {}  unique {}",
            sol.distance, diag.path, diag.unique
        );
        println!(
            "  rank {} dropped {:?}",
            diag.rank_used, diag.dropped_columns
        );
        match solver::distance_squared_gram(&vb, &vc, DEFAULT_RANK_TOL) {
            Ok(v) => println!("  gram ratio {v}"),
            Err(e) => println!("  gram ratio unavailable: {e}"),
        }
    }
    Ok(())
}
