//! Gram matrices and determinants: positivity for independent vectors,
//! zero (after round-off clamping) for dependent ones.
//!
//! cargo run --example gram_determinants

use flatpair::linalg;

fn main() -> flatpair::Result<()> {
    let y1 = vec![1.0, 1.0, 0.0];
    let y2 = vec![0.0, 1.0, 1.0];
    let g = linalg::gram_matrix(&[&y1, &y2])?;
    println!("G(y1, y2) = {:?}", g.to_rows());
    println!("g(y1, y2) = {}", linalg::gram_determinant(&[&y1, &y2])?);

    let y3: Vec<f64> = y1.iter().zip(&y2).map(|(a, b)| 0.1 * a + 0.7 * b).collect();
    let dep = linalg::gram_determinant_detailed(&[&y1, &y2, &y3])?;
    println!(
        "g(y1, y2, 0.1 y1 + 0.7 y2): raw {:e}, reported {}, clamped {}",
        dep.raw, dep.value, dep.clamped
    );

    let rank = linalg::numerical_rank(&flatpair::Matrix::from_columns(3, &[&y1, &y2, &y3])?, 1e-9);
    println!(
        "numerical rank {} keeping columns {:?}",
        rank.rank, rank.kept
    );
    Ok(())
}
