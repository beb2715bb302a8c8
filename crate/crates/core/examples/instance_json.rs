//! Reading a JSON instance document and writing the solution as JSON.
//!
//! cargo run --example instance_json

use flatpair::instance::InstanceFile;
use flatpair::solver;

const DOC: &str = r#"{
  "m": 4,
  "b": [0, 0, 0, 0],
  "B": [[1, 0, 0, 0], [0, 1, 0, 0]],
  "c": [1, 1, 1, 1],
  "C": [[0, 0, 1, 0]],
  "rank_tol": 1e-10
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = InstanceFile::from_json(DOC)?;
    let (vb, vc) = inst.to_flats()?;
    let tol = inst.rank_tol.unwrap_or(solver::DEFAULT_RANK_TOL);
    let sol = solver::optimal_pair(&vb, &vc, tol)?;
    println!("{}", serde_json::to_string_pretty(&sol)?);
    Ok(())
}
