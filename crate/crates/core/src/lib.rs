//! Best-approximation pair and distance between two affine subspaces of `R^m`.
//!
//! Two flats are given in generator form,
//! `V_b = { b + B u }` and `V_c = { c - C v }`. Their distance is the
//! distance from `d = c - b` to the column space of `A = [B C]`, and the
//! minimizing coefficients solve the Gram (normal) system `G x = A^T d`.
//!
//! The library computes:
//!
//! * the coefficients `x* = [u*; v*]` by Cramer's rule on the Gram matrix,
//!   equivalently the last-row cofactors of the bordered Gram determinant
//!   ([`solver::coefficients_cramer`], [`solver::bordered_expansion`]);
//! * the squared distance as a ratio of Gram determinants
//!   `g(d, a_1, ..., a_n) / g(a_1, ..., a_n)` ([`solver::distance_squared_gram`]);
//! * the optimal pair `b* = b + B u*`, `c* = c - C v*`, with a column-reduction
//!   fallback when `A` is rank deficient ([`solver::optimal_pair`]).
//!
//! The [`oracle`] module holds verification paths that do not touch Gram
//! determinants: alternating projections and a sampled upper bound.
//!
//! ```
//! use flatpair::{Flat, solver};
//!
//! let vb = Flat::plus(vec![0.0, 0.0, 0.0], vec![vec![1.0, 0.0, 0.0]]).unwrap();
//! let vc = Flat::minus(vec![0.0, 0.0, 1.0], vec![vec![0.0, 1.0, 0.0]]).unwrap();
//! let sol = solver::optimal_pair(&vb, &vc, solver::DEFAULT_RANK_TOL).unwrap();
//! assert!((sol.distance - 1.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod flats;
pub mod instance;
pub mod linalg;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};
pub use flats::{ColumnOrigin, Flat, Orientation, ProblemData};
pub use linalg::Matrix;
pub use solver::{Diagnostics, PairSolution, SolvePath};
