//! The optimal coefficients as last-row cofactors of the bordered Gram
//! determinant, compared with Cramer's rule and with elimination.
//!
//! cargo run --example bordered_expansion

use flatpair::flats::difference_setup;
use flatpair::{linalg, solver, Flat};

fn main() -> flatpair::Result<()> {
    let vb = Flat::plus(vec![1.0, 0.0, 2.0, 0.0], vec![vec![1.0, 2.0, 0.0, 1.0]])?;
    let vc = Flat::minus(
        vec![0.0, 3.0, -1.0, 1.0],
        vec![vec![0.0, 1.0, 1.0, 0.0], vec![1.0, 0.0, 0.0, -1.0]],
    )?;
    let problem = difference_setup(&vb, &vc)?;
    let g = linalg::gram_matrix(&problem.a.to_columns())?;
    let r = problem.a.tr_mul_vec(&problem.d)?;
    let gdet = linalg::determinant(&g)?;

    let cofactors = solver::bordered_cofactors(&g, &r)?;
    let from_cofactors: Vec<f64> = cofactors.iter().map(|c| c / -gdet).collect();
    let cramer = solver::coefficients_cramer(&g, &r, gdet)?;
    let elimination = linalg::solve_linear(&g, &r)?;
    println!("g(a..)          = {gdet}");
    println!("cofactors / -g  = {from_cofactors:?}");
    println!("cramer          = {cramer:?}");
    println!("elimination     = {elimination:?}");

    let projection = solver::bordered_expansion(&problem.a, &g, &r, gdet)?;
    println!("projection of d onto Range(A) = {projection:?}");
    println!(
        "A x*                          = {:?}",
        problem.a.mul_vec(&cramer)?
    );
    Ok(())
}
