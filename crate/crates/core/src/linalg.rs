//! Dense real vector and matrix primitives.
//!
//! Vectors are plain `f64` slices. [`Matrix`] stores entries column-major,
//! since columns (the direction vectors `a_1 ... a_n`) are the unit every
//! caller works with. A matrix may have zero columns; that is how a
//! point-flat carries its (empty) direction set.

use crate::error::{Error, Result};

/// Relative threshold below which a Gram determinant is treated as round-off
/// and clamped to zero. Scaled by the product of the Gram diagonal.
pub const GRAM_CLAMP_REL: f64 = 1e-12;

/// Relative pivot threshold for [`solve_linear`], scaled by the largest
/// absolute entry of the system matrix.
pub const SOLVE_PIVOT_REL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds an `rows x columns.len()` matrix from its columns.
    ///
    /// `rows` is explicit so that an empty column list still records the
    /// ambient dimension.
    pub fn from_columns<V: AsRef<[f64]>>(rows: usize, columns: &[V]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * columns.len());
        for col in columns {
            let col = col.as_ref();
            if col.len() != rows {
                return Err(Error::Dimension {
                    context: "matrix column",
                    expected: rows,
                    found: col.len(),
                });
            }
            if col.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("matrix column"));
            }
            data.extend_from_slice(col);
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    /// Builds a matrix from row slices. Convenient for small literals.
    pub fn from_rows<V: AsRef<[f64]>>(rows: &[V]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::Dimension {
                    context: "matrix row",
                    expected: n_cols,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFinite("matrix row"));
                }
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn to_columns(&self) -> Vec<Vec<f64>> {
        self.columns().map(<[f64]>::to_vec).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)]).collect())
            .collect()
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        let cols: Vec<&[f64]> = indices.iter().map(|&j| self.column(j)).collect();
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for c in &cols {
            data.extend_from_slice(c);
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::Dimension {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.rows];
        for (col, &xj) in self.columns().zip(x) {
            axpy(xj, col, &mut y);
        }
        Ok(y)
    }

    /// `self^T * x`, i.e. the inner product of `x` with every column.
    pub fn tr_mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.columns().map(|col| dot(col, x)).collect()
    }

    /// Product of the diagonal entries. For a Gram matrix this is the product
    /// of squared column norms, the Hadamard bound on its determinant.
    pub fn diagonal_product(&self) -> f64 {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .product()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

/// Inner product `Σ p_i q_i`.
pub fn dot(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Dimension {
            context: "dot product",
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(p.iter().zip(q).map(|(a, b)| a * b).sum())
}

/// Euclidean norm.
pub fn norm(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn norm_sq(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn sub(p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a - b).collect()
}

/// Gram matrix `G_ij = y_i · y_j` of a non-empty list of equal-length vectors.
pub fn gram_matrix<V: AsRef<[f64]>>(vectors: &[V]) -> Result<Matrix> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::EmptyInput("gram matrix needs at least one vector"));
    }
    let m = vectors[0].as_ref().len();
    for v in vectors {
        if v.as_ref().len() != m {
            return Err(Error::Dimension {
                context: "gram matrix",
                expected: m,
                found: v.as_ref().len(),
            });
        }
    }
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let value = dot(vectors[i].as_ref(), vectors[j].as_ref())?;
            g[(i, j)] = value;
            g[(j, i)] = value;
        }
    }
    Ok(g)
}

/// Determinant by row reduction with partial pivoting.
pub fn determinant(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Shape {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1.0;
    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, a[(i, k)].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot == 0.0 {
            return Ok(0.0);
        }
        if p != k {
            swap_rows(&mut a, p, k);
            det = -det;
        }
        let akk = a[(k, k)];
        det *= akk;
        for i in k + 1..n {
            let factor = a[(i, k)] / akk;
            if factor != 0.0 {
                for j in k + 1..n {
                    let akj = a[(k, j)];
                    a[(i, j)] -= factor * akj;
                }
            }
        }
    }
    Ok(det)
}

fn swap_rows(a: &mut Matrix, r1: usize, r2: usize) {
    for j in 0..a.cols() {
        let col = a.column_mut(j);
        col.swap(r1, r2);
    }
}

/// A Gram determinant together with how it was post-processed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramDeterminant {
    /// Reported value, `>= 0` after clamping.
    pub value: f64,
    /// Determinant as computed by row reduction.
    pub raw: f64,
    /// Product of the Gram diagonal (squared vector norms).
    pub scale: f64,
    /// Whether `raw` was within round-off of zero and replaced by `0`.
    pub clamped: bool,
}

/// `g(y_1, ..., y_n) = det G(y_1, ..., y_n)` with round-off clamping.
pub fn gram_determinant<V: AsRef<[f64]>>(vectors: &[V]) -> Result<f64> {
    Ok(gram_determinant_detailed(vectors)?.value)
}

pub fn gram_determinant_detailed<V: AsRef<[f64]>>(vectors: &[V]) -> Result<GramDeterminant> {
    let g = gram_matrix(vectors)?;
    gram_determinant_of(&g)
}

/// Clamped determinant of an already assembled Gram matrix.
///
/// `|det| <= GRAM_CLAMP_REL * Π G_jj` is reported as exactly zero.
pub fn gram_determinant_of(g: &Matrix) -> Result<GramDeterminant> {
    let raw = determinant(g)?;
    let scale = g.diagonal_product();
    let clamped = raw.abs() <= GRAM_CLAMP_REL * scale && raw != 0.0;
    let value = if raw.abs() <= GRAM_CLAMP_REL * scale {
        0.0
    } else {
        raw
    };
    Ok(GramDeterminant {
        value,
        raw,
        scale,
        clamped,
    })
}

/// Solves `G x = r` by Gaussian elimination with partial pivoting.
pub fn solve_linear(g: &Matrix, r: &[f64]) -> Result<Vec<f64>> {
    if !g.is_square() {
        return Err(Error::Shape {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let n = g.rows();
    if r.len() != n {
        return Err(Error::Dimension {
            context: "linear solve right-hand side",
            expected: n,
            found: r.len(),
        });
    }
    let threshold = SOLVE_PIVOT_REL * g.max_abs();
    let mut a = g.clone();
    let mut b = r.to_vec();
    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, a[(i, k)].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot <= threshold {
            return Err(Error::SingularSystem { magnitude: pivot });
        }
        if p != k {
            swap_rows(&mut a, p, k);
            b.swap(p, k);
        }
        let akk = a[(k, k)];
        for i in k + 1..n {
            let factor = a[(i, k)] / akk;
            if factor != 0.0 {
                for j in k + 1..n {
                    let akj = a[(k, j)];
                    a[(i, j)] -= factor * akj;
                }
                b[i] -= factor * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[(i, j)] * x[j]).sum();
        x[i] = (b[i] - s) / a[(i, i)];
    }
    Ok(x)
}

/// Result of a greedy column-rank decision.
#[derive(Debug, Clone, PartialEq)]
pub struct RankDecision {
    pub rank: usize,
    /// Indices of kept columns, ascending.
    pub kept: Vec<usize>,
    /// Orthonormal basis of the kept columns' span, one vector per kept column.
    pub basis: Vec<Vec<f64>>,
}

/// Numerical rank by greedy Gram–Schmidt over the columns in index order.
///
/// Column `j` is kept when its residual after projection onto the previously
/// kept columns has norm `> tol * max(1, ||a_j||)`. Projection is done twice
/// (classical Gram–Schmidt with one reorthogonalization pass).
pub fn numerical_rank(m: &Matrix, tol: f64) -> RankDecision {
    let mut kept = Vec::new();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (j, col) in m.columns().enumerate() {
        let original = norm(col);
        let mut residual = col.to_vec();
        for _ in 0..2 {
            for q in &basis {
                let c: f64 = q.iter().zip(&residual).map(|(a, b)| a * b).sum();
                axpy(-c, q, &mut residual);
            }
        }
        let rn = norm(&residual);
        if rn > tol * original.max(1.0) {
            residual.iter_mut().for_each(|x| *x /= rn);
            basis.push(residual);
            kept.push(j);
        }
    }
    RankDecision {
        rank: kept.len(),
        kept,
        basis,
    }
}
