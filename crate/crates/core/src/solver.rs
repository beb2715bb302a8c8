//! Optimal pair and distance of two flats from Gram determinants.
//!
//! With `A = [a_1 ... a_n] = [B C]`, `d = c - b` and `r_i = d · a_i`, the
//! optimal coefficients solve `G x = r` where `G` is the Gram matrix of the
//! columns. They are obtained by Cramer's rule, which is the same thing as
//! expanding the bordered determinant
//!
//! ```text
//! | G    r |
//! | a^T  0 |
//! ```
//!
//! along its last row and dividing by `-g`, `g = det G`. The squared
//! distance is `g(d, a_1, ..., a_n) / g(a_1, ..., a_n)`.
//!
//! The closed forms need `A` to have full column rank. That is decided
//! numerically: the primary path runs when `g > tol^2 * Π G_jj`. Otherwise
//! columns are reduced with [`numerical_rank`] and the same formulas run on
//! the kept columns; dropped columns get coefficient zero and the solution
//! is flagged non-unique. The distance itself is still unique.
//!
//! The Gram route squares the condition number of `A`. Results are reliable
//! up to a condition estimate of roughly `1e7`; `Diagnostics::gram_det` is
//! reported so callers can judge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flats::{self, Flat, ProblemData};
use crate::linalg::{self, numerical_rank, GramDeterminant, Matrix, GRAM_CLAMP_REL};

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Tolerance used when checking solver postconditions.
pub const POSTCONDITION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvePath {
    FullRankCramer,
    ReducedColumns,
    PointPoint,
}

impl std::fmt::Display for SolvePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolvePath::FullRankCramer => "full_rank_cramer",
            SolvePath::ReducedColumns => "reduced_columns",
            SolvePath::PointPoint => "point_point",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolerancesUsed {
    /// Requested rank tolerance.
    pub rank: f64,
    /// Tolerance at which the column reduction finally succeeded. Equal to
    /// `rank` unless the reduced Gram matrix was itself numerically singular.
    pub reduction: f64,
    pub gram_clamp_rel: f64,
    /// `rank^2 * Π G_jj` for the full column set.
    pub full_rank_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `g(a_1, ..., a_n)` after clamping; `1` for `n = 0`.
    pub gram_det: f64,
    /// Determinant before clamping.
    pub gram_det_raw: f64,
    /// Set when round-off clamping replaced a nonzero determinant by zero,
    /// either for `g(a..)` or for the distance numerator.
    pub clamp_fired: bool,
    pub rank_used: usize,
    /// Indices into `A` whose coefficients were forced to zero.
    pub dropped_columns: Vec<usize>,
    pub unique: bool,
    pub tolerances_used: TolerancesUsed,
    pub path: SolvePath,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSolution {
    pub b_star: Vec<f64>,
    pub c_star: Vec<f64>,
    /// Parameters of `b_star` in the first flat's own parameterization.
    pub u_star: Vec<f64>,
    /// Parameters of `c_star` in the second flat's own parameterization.
    pub v_star: Vec<f64>,
    /// `||b_star - c_star||`.
    pub distance: f64,
    /// Gram-determinant ratio on the columns actually used.
    pub distance_sq_gram: f64,
    pub diagnostics: Diagnostics,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "rank tolerance must lie in (0, 1), got {tol}"
        )))
    }
}

fn check_system(g: &Matrix, r: &[f64]) -> Result<()> {
    if !g.is_square() {
        return Err(Error::Shape {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if r.len() != g.rows() {
        return Err(Error::Dimension {
            context: "gram system right-hand side",
            expected: g.rows(),
            found: r.len(),
        });
    }
    Ok(())
}

fn check_nonsingular(g: &Matrix, gdet: f64) -> Result<()> {
    if !gdet.is_finite() || gdet.abs() <= GRAM_CLAMP_REL * g.diagonal_product() {
        return Err(Error::SingularSystem {
            magnitude: gdet.abs(),
        });
    }
    Ok(())
}

/// Cramer's rule for `G x = r`: `x_j = det(G with column j := r) / g`.
///
/// `gdet` must be `det G`. Errors with [`Error::SingularSystem`] when it is
/// within round-off of zero relative to `Π G_jj`.
pub fn coefficients_cramer(g: &Matrix, r: &[f64], gdet: f64) -> Result<Vec<f64>> {
    check_system(g, r)?;
    check_nonsingular(g, gdet)?;
    let mut work = g.clone();
    let mut x = Vec::with_capacity(r.len());
    for j in 0..g.cols() {
        work.column_mut(j).copy_from_slice(r);
        x.push(linalg::determinant(&work)? / gdet);
        work.column_mut(j).copy_from_slice(g.column(j));
    }
    Ok(x)
}

/// Last-row cofactors of the bordered matrix `[[G, r], [a^T, 0]]`.
///
/// Entry `j` is the cofactor at (row `n+1`, column `j+1`), i.e. the signed
/// minor obtained by deleting the last row and column `j`. The cofactor of
/// the corner entry multiplies the zero vector and is omitted.
pub fn bordered_cofactors(g: &Matrix, r: &[f64]) -> Result<Vec<f64>> {
    check_system(g, r)?;
    let n = g.cols();
    let mut minor = Matrix::zeros(n, n);
    (0..n)
        .map(|j| {
            // columns of [G r] with column j deleted
            for (dst, k) in (0..n).filter(|&k| k != j).enumerate() {
                minor.column_mut(dst).copy_from_slice(g.column(k));
            }
            minor.column_mut(n - 1).copy_from_slice(r);
            let sign = if (n + j).is_multiple_of(2) { 1.0 } else { -1.0 };
            Ok(sign * linalg::determinant(&minor)?)
        })
        .collect()
}

/// The vector-valued last-row expansion of the bordered determinant,
/// `Σ_j C_{n+1,j} a_j`, divided by `-g`.
///
/// This is the projection of `d` onto `Range(A)`, and equals `A x*` for the
/// Cramer coefficients `x*`.
pub fn bordered_expansion(a: &Matrix, g: &Matrix, r: &[f64], gdet: f64) -> Result<Vec<f64>> {
    check_system(g, r)?;
    if a.cols() != g.cols() {
        return Err(Error::Dimension {
            context: "bordered expansion columns",
            expected: g.cols(),
            found: a.cols(),
        });
    }
    check_nonsingular(g, gdet)?;
    let cofactors = bordered_cofactors(g, r)?;
    let mut out = vec![0.0; a.rows()];
    for (col, &c) in a.columns().zip(&cofactors) {
        linalg::axpy(c, col, &mut out);
    }
    out.iter_mut().for_each(|x| *x /= -gdet);
    Ok(out)
}

/// Threshold the clamped Gram determinant must exceed for the full-rank path.
pub fn full_rank_threshold(g: &Matrix, tol: f64) -> f64 {
    tol * tol * g.diagonal_product()
}

/// `g(d, a_1, ..., a_n)`, clamped.
fn bordered_gram<V: AsRef<[f64]>>(d: &[f64], columns: &[V]) -> Result<GramDeterminant> {
    let mut vectors: Vec<&[f64]> = Vec::with_capacity(columns.len() + 1);
    vectors.push(d);
    vectors.extend(columns.iter().map(AsRef::as_ref));
    linalg::gram_determinant_detailed(&vectors)
}

/// Coefficients for `min ||A x - d||` on a full column set, with the
/// Gram-ratio squared distance.
struct GramSolve {
    x: Vec<f64>,
    distance_sq: f64,
    clamp_fired: bool,
}

/// The third element is `None` when the full-rank test fails.
fn gram_solve(
    a: &Matrix,
    d: &[f64],
    tol: f64,
) -> Result<(GramDeterminant, f64, Option<GramSolve>)> {
    let cols = a.to_columns();
    let g = linalg::gram_matrix(&cols)?;
    let gdet = linalg::gram_determinant_of(&g)?;
    let threshold = full_rank_threshold(&g, tol);
    if gdet.value <= threshold {
        return Ok((gdet, threshold, None));
    }
    let r = a.tr_mul_vec(d)?;
    let x = coefficients_cramer(&g, &r, gdet.value)?;
    let numerator = bordered_gram(d, &cols)?;
    let solve = GramSolve {
        x,
        distance_sq: (numerator.value / gdet.value).max(0.0),
        clamp_fired: numerator.clamped,
    };
    Ok((gdet, threshold, Some(solve)))
}

/// Optimal pair `(b*, c*)` of two flats.
///
/// Works for every input: two points, full-rank `A`, and rank-deficient `A`
/// (including zero or repeated directions).
pub fn optimal_pair(vb: &Flat, vc: &Flat, tol: f64) -> Result<PairSolution> {
    check_tol(tol)?;
    let problem = flats::difference_setup(vb, vc)?;
    let n = problem.num_columns();
    let d = &problem.d;

    if n == 0 {
        let diagnostics = Diagnostics {
            gram_det: 1.0,
            gram_det_raw: 1.0,
            clamp_fired: false,
            rank_used: 0,
            dropped_columns: Vec::new(),
            unique: true,
            tolerances_used: TolerancesUsed {
                rank: tol,
                reduction: tol,
                gram_clamp_rel: GRAM_CLAMP_REL,
                full_rank_threshold: 0.0,
            },
            path: SolvePath::PointPoint,
        };
        return Ok(assemble(
            vb,
            vc,
            &problem,
            vec![],
            linalg::norm_sq(d),
            diagnostics,
        ));
    }

    let (gdet, threshold, primary) = gram_solve(&problem.a, d, tol)?;
    let mut tolerances = TolerancesUsed {
        rank: tol,
        reduction: tol,
        gram_clamp_rel: GRAM_CLAMP_REL,
        full_rank_threshold: threshold,
    };

    if let Some(sol) = primary {
        let diagnostics = Diagnostics {
            gram_det: gdet.value,
            gram_det_raw: gdet.raw,
            clamp_fired: sol.clamp_fired,
            rank_used: n,
            dropped_columns: Vec::new(),
            unique: true,
            tolerances_used: tolerances,
            path: SolvePath::FullRankCramer,
        };
        return Ok(assemble(
            vb,
            vc,
            &problem,
            sol.x,
            sol.distance_sq,
            diagnostics,
        ));
    }

    // Column reduction. A kept set whose own Gram determinant is still below
    // threshold is re-reduced at a coarser tolerance; with tol >= 1 nothing
    // survives, so this terminates.
    let mut reduction_tol = tol;
    let (kept, xk, distance_sq, clamp_fired) = loop {
        let decision = numerical_rank(&problem.a, reduction_tol);
        if decision.kept.is_empty() {
            break (Vec::new(), Vec::new(), linalg::norm_sq(d), false);
        }
        let reduced = problem.a.select_columns(&decision.kept);
        if let (_, _, Some(sol)) = gram_solve(&reduced, d, tol)? {
            break (decision.kept, sol.x, sol.distance_sq, sol.clamp_fired);
        }
        reduction_tol *= 10.0;
    };
    tolerances.reduction = reduction_tol;

    let mut x = vec![0.0; n];
    for (&j, &xj) in kept.iter().zip(&xk) {
        x[j] = xj;
    }
    let dropped_columns = (0..n).filter(|j| !kept.contains(j)).collect();
    let diagnostics = Diagnostics {
        gram_det: gdet.value,
        gram_det_raw: gdet.raw,
        clamp_fired: gdet.clamped || clamp_fired,
        rank_used: kept.len(),
        dropped_columns,
        unique: false,
        tolerances_used: tolerances,
        path: SolvePath::ReducedColumns,
    };
    Ok(assemble(vb, vc, &problem, x, distance_sq, diagnostics))
}

/// Maps `x = [x_b; x_c]` to the point pair and to each flat's parameters.
///
/// `b* = b + B x_b` and `c* = c - C x_c` regardless of orientation, so the
/// parameters are `u* = s_b x_b` and `v* = -s_c x_c`.
fn assemble(
    vb: &Flat,
    vc: &Flat,
    problem: &ProblemData,
    x: Vec<f64>,
    distance_sq_gram: f64,
    diagnostics: Diagnostics,
) -> PairSolution {
    let (xb, xc) = x.split_at(problem.split.min(x.len()));
    let mut b_star = vb.base().to_vec();
    for (col, &t) in vb.directions().columns().zip(xb) {
        linalg::axpy(t, col, &mut b_star);
    }
    let mut c_star = vc.base().to_vec();
    for (col, &t) in vc.directions().columns().zip(xc) {
        linalg::axpy(-t, col, &mut c_star);
    }
    let sb = vb.orientation().sign();
    let sc = vc.orientation().sign();
    let u_star = xb.iter().map(|t| sb * t).collect();
    let v_star = xc.iter().map(|t| -sc * t).collect();
    let distance = linalg::norm(&linalg::sub(&b_star, &c_star));
    PairSolution {
        b_star,
        c_star,
        u_star,
        v_star,
        distance,
        distance_sq_gram,
        diagnostics,
    }
}

/// Squared distance as the Gram-determinant ratio `g(d, a..) / g(a..)`.
///
/// Requires `A` to pass the full-rank test; otherwise returns
/// [`Error::RankDeficient`] and callers should use [`optimal_pair`].
/// For two points this is `||d||^2`.
pub fn distance_squared_gram(vb: &Flat, vc: &Flat, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let problem = flats::difference_setup(vb, vc)?;
    if problem.num_columns() == 0 {
        return Ok(linalg::norm_sq(&problem.d));
    }
    let cols = problem.a.to_columns();
    let g = linalg::gram_matrix(&cols)?;
    let gdet = linalg::gram_determinant_of(&g)?;
    let threshold = full_rank_threshold(&g, tol);
    if gdet.value <= threshold {
        return Err(Error::RankDeficient {
            gram_det: gdet.value,
            threshold,
        });
    }
    let numerator = bordered_gram(&problem.d, &cols)?;
    Ok((numerator.value / gdet.value).max(0.0))
}

/// `d(V_b, V_c) = ||b* - c*||`.
pub fn distance(vb: &Flat, vc: &Flat, tol: f64) -> Result<f64> {
    Ok(optimal_pair(vb, vc, tol)?.distance)
}

/// Checks the solver's postconditions on a computed solution:
/// membership of `b*` and `c*`, the distance identity, and orthogonality
/// of `b* - c*` to every column of `A`.
pub fn verify_solution(vb: &Flat, vc: &Flat, sol: &PairSolution) -> Result<()> {
    let tol = POSTCONDITION_TOL;
    if !flats::contains(vb, &sol.b_star, tol)? {
        return Err(Error::InvariantViolation(
            "b* is not on the first flat".into(),
        ));
    }
    if !flats::contains(vc, &sol.c_star, tol)? {
        return Err(Error::InvariantViolation(
            "c* is not on the second flat".into(),
        ));
    }
    let residual = linalg::sub(&sol.b_star, &sol.c_star);
    let rn = linalg::norm(&residual);
    if (rn - sol.distance).abs() > 1e-10 * rn.max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "distance {} differs from ||b* - c*|| = {rn}",
            sol.distance
        )));
    }
    let problem = flats::difference_setup(vb, vc)?;
    for (j, col) in problem.a.columns().enumerate() {
        let inner = linalg::dot(&residual, col)?;
        let bound = tol * (rn * linalg::norm(col)).max(1.0);
        if inner.abs() > bound {
            return Err(Error::InvariantViolation(format!(
                "residual not orthogonal to column {j}: |r·a_j| = {:e} > {bound:e}",
                inner.abs()
            )));
        }
    }
    if sol.diagnostics.unique != (sol.diagnostics.rank_used == problem.num_columns()) {
        return Err(Error::InvariantViolation(
            "unique flag disagrees with rank".into(),
        ));
    }
    Ok(())
}
