//! Solving many independent instances from several threads. All solver
//! functions are pure, so instances can be shared freely.
//!
//! cargo run --release --example parallel_batch

use flatpair::solver::{self, DEFAULT_RANK_TOL};
use flatpair::Flat;

fn main() -> flatpair::Result<()> {
    let pairs: Vec<(Flat, Flat)> = (0..64)
        .map(|i| {
            let z = i as f64 * 0.25;
            Ok((
                Flat::plus(vec![0.0, 0.0, 0.0], vec![vec![1.0, 0.0, 0.0]])?,
                Flat::minus(vec![0.0, 0.0, z], vec![vec![0.0, 1.0, 0.0]])?,
            ))
        })
        .collect::<flatpair::Result<_>>()?;

    let distances: Vec<f64> = std::thread::scope(|s| {
        let handles: Vec<_> = pairs
            .chunks(16)
            .map(|chunk| {
                s.spawn(move || {
                    chunk
                        .iter()
                        .map(|(vb, vc)| solver::distance(vb, vc, DEFAULT_RANK_TOL))
                        .collect::<flatpair::Result<Vec<f64>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked").expect("solve failed"))
            .collect()
    });
    println!("first distances: {:?}", &distances[..6]);
    println!(
        "max distance: {}",
        distances.iter().cloned().fold(0.0, f64::max)
    );
    Ok(())
}
