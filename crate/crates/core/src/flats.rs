//! Affine subspaces in generator form and the least-squares data they induce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Sign convention of a flat's parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Points are `base + D t`.
    Plus,
    /// Points are `base - D t`.
    Minus,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Plus => 1.0,
            Orientation::Minus => -1.0,
        }
    }
}

/// An affine subspace `{ base ± D t }` of `R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Flat {
    base: Vec<f64>,
    directions: Matrix,
    orientation: Orientation,
}

impl Flat {
    pub fn new(base: Vec<f64>, directions: Matrix, orientation: Orientation) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptyInput("flat base point has no coordinates"));
        }
        if base.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("flat base point"));
        }
        let directions = if directions.cols() == 0 {
            Matrix::zeros(base.len(), 0)
        } else if directions.rows() != base.len() {
            return Err(Error::Dimension {
                context: "flat directions",
                expected: base.len(),
                found: directions.rows(),
            });
        } else {
            directions
        };
        Ok(Self {
            base,
            directions,
            orientation,
        })
    }

    /// `{ base + D u }`, the form of the first flat.
    pub fn plus<V: AsRef<[f64]>>(base: Vec<f64>, columns: Vec<V>) -> Result<Self> {
        let d = Matrix::from_columns(base.len(), &columns)?;
        Self::new(base, d, Orientation::Plus)
    }

    /// `{ base - D v }`, the form of the second flat.
    pub fn minus<V: AsRef<[f64]>>(base: Vec<f64>, columns: Vec<V>) -> Result<Self> {
        let d = Matrix::from_columns(base.len(), &columns)?;
        Self::new(base, d, Orientation::Minus)
    }

    /// A zero-dimensional flat.
    pub fn point(base: Vec<f64>) -> Result<Self> {
        let m = base.len();
        Self::new(base, Matrix::zeros(m, 0), Orientation::Plus)
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn directions(&self) -> &Matrix {
        &self.directions
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// Ambient dimension `m`.
    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Number of direction columns `k`.
    pub fn num_directions(&self) -> usize {
        self.directions.cols()
    }

    /// The point `base ± D t`.
    pub fn point_at(&self, t: &[f64]) -> Result<Vec<f64>> {
        let mut p = self.directions.mul_vec(t)?;
        let s = self.orientation.sign();
        for (pi, bi) in p.iter_mut().zip(&self.base) {
            *pi = bi + s * *pi;
        }
        Ok(p)
    }

    /// Applies `x -> Q x + shift` to the flat.
    pub fn transformed(&self, q: &Matrix, shift: &[f64]) -> Result<Flat> {
        let m = self.ambient_dim();
        if q.rows() != m || q.cols() != m || shift.len() != m {
            return Err(Error::Dimension {
                context: "rigid motion",
                expected: m,
                found: if shift.len() != m {
                    shift.len()
                } else {
                    q.rows()
                },
            });
        }
        let mut base = q.mul_vec(&self.base)?;
        linalg::axpy(1.0, shift, &mut base);
        let cols = self
            .directions
            .columns()
            .map(|c| q.mul_vec(c))
            .collect::<Result<Vec<_>>>()?;
        let d = Matrix::from_columns(m, &cols)?;
        Flat::new(base, d, self.orientation)
    }
}

/// What [`validate`] removed from a flat.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    /// Original indices of dropped (numerically zero) columns.
    pub dropped_columns: Vec<usize>,
    /// Original indices of surviving columns, in order.
    pub kept_columns: Vec<usize>,
    /// Numerical rank of the surviving directions at the same tolerance.
    pub rank: usize,
}

impl ValidationReport {
    pub fn dropped_any(&self) -> bool {
        !self.dropped_columns.is_empty()
    }
}

/// Removes direction columns with norm `<= tol`. The point set is unchanged.
pub fn validate(flat: &Flat, tol: f64) -> Result<(Flat, ValidationReport)> {
    if flat.directions.cols() > 0 && flat.directions.rows() != flat.base.len() {
        return Err(Error::Dimension {
            context: "flat directions",
            expected: flat.base.len(),
            found: flat.directions.rows(),
        });
    }
    let mut report = ValidationReport::default();
    for (j, col) in flat.directions.columns().enumerate() {
        if linalg::norm(col) <= tol {
            report.dropped_columns.push(j);
        } else {
            report.kept_columns.push(j);
        }
    }
    let directions = flat.directions.select_columns(&report.kept_columns);
    report.rank = linalg::numerical_rank(&directions, tol).rank;
    let out = Flat::new(flat.base.clone(), directions, flat.orientation)?;
    Ok((out, report))
}

/// Whether `p` lies on the flat, up to `tol * max(1, ||p - base||)`.
pub fn contains(flat: &Flat, p: &[f64], tol: f64) -> Result<bool> {
    if p.len() != flat.ambient_dim() {
        return Err(Error::Dimension {
            context: "membership test",
            expected: flat.ambient_dim(),
            found: p.len(),
        });
    }
    let offset = linalg::sub(p, &flat.base);
    let offset_norm = linalg::norm(&offset);
    if flat.num_directions() == 0 {
        return Ok(offset_norm <= tol);
    }
    let basis = linalg::numerical_rank(&flat.directions, tol).basis;
    let mut residual = offset;
    for _ in 0..2 {
        for q in &basis {
            let c = linalg::dot(q, &residual)?;
            linalg::axpy(-c, q, &mut residual);
        }
    }
    Ok(linalg::norm(&residual) <= tol * offset_norm.max(1.0))
}

/// Which flat a column of `A` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnOrigin {
    FromB,
    FromC,
}

/// Least-squares data `min ||A x - d||` for a pair of flats.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemData {
    /// `[B C]`, columns copied verbatim.
    pub a: Matrix,
    /// `c - b`.
    pub d: Vec<f64>,
    /// Number of leading columns of `A` that come from the first flat.
    pub split: usize,
    pub column_origin: Vec<ColumnOrigin>,
}

impl ProblemData {
    pub fn num_columns(&self) -> usize {
        self.a.cols()
    }
}

/// Assembles `A = [B C]` and `d = c - b`.
///
/// Columns are not sign-adjusted for the flats' orientations. With
/// `A x = B x_b + C x_c`, the point pair is `b + B x_b` and `c - C x_c`;
/// the solver maps `x` back to each flat's own parameters.
pub fn difference_setup(vb: &Flat, vc: &Flat) -> Result<ProblemData> {
    let m = vb.ambient_dim();
    if vc.ambient_dim() != m {
        return Err(Error::Dimension {
            context: "ambient dimension of second flat",
            expected: m,
            found: vc.ambient_dim(),
        });
    }
    let cols: Vec<&[f64]> = vb
        .directions
        .columns()
        .chain(vc.directions.columns())
        .collect();
    let a = Matrix::from_columns(m, &cols)?;
    let split = vb.num_directions();
    let column_origin = (0..a.cols())
        .map(|j| {
            if j < split {
                ColumnOrigin::FromB
            } else {
                ColumnOrigin::FromC
            }
        })
        .collect();
    Ok(ProblemData {
        a,
        d: linalg::sub(&vc.base, &vb.base),
        split,
        column_origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: [f64; 3] = [1.0, 0.0, 0.0];
    const E2: [f64; 3] = [0.0, 1.0, 0.0];

    #[test]
    fn validate_drops_zero_columns() {
        let f = Flat::plus(vec![1.0, 2.0, 3.0], vec![E1, [0.0; 3], E2]).unwrap();
        let (v, report) = validate(&f, 1e-9).unwrap();
        assert_eq!(v.num_directions(), 2);
        assert_eq!(report.dropped_columns, vec![1]);
        assert_eq!(report.kept_columns, vec![0, 2]);
        assert!(report.dropped_any());
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn validate_point_flat_unchanged() {
        let f = Flat::point(vec![1.0, 2.0]).unwrap();
        let (v, report) = validate(&f, 1e-9).unwrap();
        assert_eq!(v, f);
        assert!(!report.dropped_any());
    }

    #[test]
    fn validate_keeps_duplicates() {
        let f = Flat::plus(vec![0.0; 3], vec![E1, E1]).unwrap();
        let (v, report) = validate(&f, 1e-9).unwrap();
        assert_eq!(v.num_directions(), 2);
        assert_eq!(report.rank, 1);
    }

    #[test]
    fn contains_examples() {
        let line = Flat::plus(vec![0.0; 3], vec![E1]).unwrap();
        assert!(contains(&line, &[5.0, 0.0, 0.0], 1e-9).unwrap());
        assert!(!contains(&line, &[0.0, 1.0, 0.0], 1e-9).unwrap());
        let pt = Flat::point(vec![1.0, 2.0]).unwrap();
        assert!(contains(&pt, &[1.0, 2.0], 1e-9).unwrap());
        assert!(matches!(
            contains(&pt, &[1.0], 1e-9),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(matches!(
            Flat::plus(vec![0.0; 3], vec![vec![1.0, 0.0]]),
            Err(Error::Dimension { .. })
        ));
        let a = Flat::point(vec![0.0; 3]).unwrap();
        let b = Flat::point(vec![0.0; 2]).unwrap();
        assert!(matches!(
            difference_setup(&a, &b),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn difference_setup_skew_lines() {
        let vb = Flat::plus(vec![0.0; 3], vec![E1]).unwrap();
        let vc = Flat::minus(vec![0.0, 0.0, 1.0], vec![E2]).unwrap();
        let p = difference_setup(&vb, &vc).unwrap();
        assert_eq!(p.a.to_columns(), vec![E1.to_vec(), E2.to_vec()]);
        assert_eq!(p.d, vec![0.0, 0.0, 1.0]);
        assert_eq!(p.split, 1);
        assert_eq!(
            p.column_origin,
            vec![ColumnOrigin::FromB, ColumnOrigin::FromC]
        );
    }

    #[test]
    fn difference_setup_point_flats() {
        let vb = Flat::point(vec![1.0, 1.0]).unwrap();
        let vc = Flat::point(vec![4.0, 5.0]).unwrap();
        let p = difference_setup(&vb, &vc).unwrap();
        assert_eq!(p.num_columns(), 0);
        assert_eq!(p.a.rows(), 2);
        assert_eq!(p.d, vec![3.0, 4.0]);
    }

    #[test]
    fn difference_setup_point_and_plane() {
        let vb = Flat::point(vec![0.0, 0.0, 5.0]).unwrap();
        let vc = Flat::minus(vec![0.0; 3], vec![E1, E2]).unwrap();
        let p = difference_setup(&vb, &vc).unwrap();
        assert_eq!(p.split, 0);
        assert_eq!(p.a.to_columns(), vec![E1.to_vec(), E2.to_vec()]);
        assert_eq!(p.column_origin, vec![ColumnOrigin::FromC; 2]);
    }

    #[test]
    fn point_at_respects_orientation() {
        let plus = Flat::plus(vec![1.0, 1.0], vec![[1.0, 0.0]]).unwrap();
        let minus = plus.clone().with_orientation(Orientation::Minus);
        assert_eq!(plus.point_at(&[2.0]).unwrap(), vec![3.0, 1.0]);
        assert_eq!(minus.point_at(&[2.0]).unwrap(), vec![-1.0, 1.0]);
    }
}
