//! Dense symmetric eigenanalysis, orthogonal projections, and subspace
//! metrics.
//!
//! Everything here is pure and allocation-simple: matrices are row-major
//! `Vec<f64>` at desk scale (n up to a few hundred). The eigensolver is
//! cyclic Jacobi (see [`jacobi`]), least squares goes through Householder
//! QR (see [`qr`]), and subspace distances are in [`subspace`].

mod jacobi;
mod qr;
mod subspace;

pub use jacobi::{eigenvectors_above, sym_evd, top_r_eigenvectors, EigPair};
pub use qr::{ls_restricted, orthonormalize};
pub use subspace::{denseness_mu, kappa_s, kappa_s_bound, proj_orth, subspace_dif, KAPPA_EXACT_LIMIT};

use crate::error::{Error, Result};
use std::fmt;

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Build from row-major data. Errors on shape mismatch or non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Dimension("non-finite matrix entry".into()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_columns(cols: &[Vec<f64>]) -> Result<Self> {
        if cols.is_empty() || cols[0].is_empty() {
            return Err(Error::Dimension("no columns given".into()));
        }
        let rows = cols[0].len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn column_vector(v: &[f64]) -> Result<Self> {
        Matrix::from_vec(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[f64]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self * other`
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dims");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `selfᵀ * other` without forming the transpose.
    pub fn transpose_mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "transpose_mul dims");
        let mut out = Matrix::zeros(self.cols, other.cols);
        for k in 0..self.rows {
            let arow = self.row(k);
            let brow = other.row(k);
            for (i, &a) in arow.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self * otherᵀ`
    pub fn mul_transpose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "mul_transpose dims");
        let mut out = Matrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let arow = self.row(i);
            for j in 0..other.rows {
                let brow = other.row(j);
                out[(i, j)] = dot(arow, brow);
            }
        }
        out
    }

    /// `self * v` for a vector.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "mul_vec dims");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `selfᵀ * v` for a vector.
    pub fn transpose_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, v.len(), "transpose_mul_vec dims");
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += vi * a;
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Frobenius asymmetry ‖S − Sᵀ‖_F.
    pub fn asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = self[(i, j)] - self[(j, i)];
                acc += 2.0 * d * d;
            }
        }
        acc.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:.4}")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Matrix with orthonormal columns (a subspace basis). `rank = 0` is the
/// legal empty basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix {
    dim_n: usize,
    /// n x r, orthonormal columns; empty `data` when r = 0.
    cols: Matrix,
    rank: usize,
}

/// Orthonormality acceptance tolerance ‖PᵀP − I‖_F.
pub const ORTHO_TOL: f64 = 1e-10;

impl BasisMatrix {
    /// Empty basis `[.]` in dimension n.
    pub fn empty(dim_n: usize) -> Self {
        BasisMatrix {
            dim_n,
            cols: Matrix {
                rows: dim_n,
                cols: 0,
                data: Vec::new(),
            },
            rank: 0,
        }
    }

    /// Wrap an n x r matrix, verifying ‖PᵀP − I‖_F ≤ 1e-10.
    pub fn new(cols: Matrix) -> Result<Self> {
        let r = cols.cols();
        let gram = cols.transpose_mul(&cols);
        let mut dev = 0.0;
        for i in 0..r {
            for j in 0..r {
                let target = if i == j { 1.0 } else { 0.0 };
                let d = gram[(i, j)] - target;
                dev += d * d;
            }
        }
        if dev.sqrt() > ORTHO_TOL {
            return Err(Error::Dimension(format!(
                "columns not orthonormal: deviation {:.3e}",
                dev.sqrt()
            )));
        }
        Ok(BasisMatrix {
            dim_n: cols.rows(),
            rank: r,
            cols,
        })
    }

    pub fn dim_n(&self) -> usize {
        self.dim_n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.rank == 0
    }

    pub fn matrix(&self) -> &Matrix {
        &self.cols
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.cols.column(j)
    }

    /// Pᵀv (coefficients of v in this basis).
    pub fn project_coeffs(&self, v: &[f64]) -> Vec<f64> {
        if self.is_empty() {
            return Vec::new();
        }
        self.cols.transpose_mul_vec(v)
    }

    /// v − P(Pᵀv): component of v orthogonal to the basis, without forming
    /// the n x n projector.
    pub fn residual_vec(&self, v: &[f64]) -> Vec<f64> {
        if self.is_empty() {
            return v.to_vec();
        }
        let coeffs = self.cols.transpose_mul_vec(v);
        let fitted = self.cols.mul_vec(&coeffs);
        v.iter().zip(&fitted).map(|(a, b)| a - b).collect()
    }

    /// [self other] as one basis; caller guarantees mutual orthogonality.
    pub fn concat(&self, other: &BasisMatrix) -> Result<BasisMatrix> {
        if self.dim_n != other.dim_n {
            return Err(Error::Dimension("basis concat dimension mismatch".into()));
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        let mut cols: Vec<Vec<f64>> = (0..self.rank).map(|j| self.column(j)).collect();
        cols.extend((0..other.rank).map(|j| other.column(j)));
        BasisMatrix::new(Matrix::from_columns(&cols)?)
    }

    /// Spectral-norm bound on PᵀQ via its Gram matrix (0 if either empty).
    pub fn mutual_coherence(&self, other: &BasisMatrix) -> f64 {
        if self.is_empty() || other.is_empty() {
            return 0.0;
        }
        let cross = self.cols.transpose_mul(&other.cols);
        // ||A||_2^2 = lambda_max(AᵀA)
        let gram = cross.transpose_mul(&cross);
        let evd = sym_evd(&gram, 1e-12).expect("gram EVD");
        evd.values.first().copied().unwrap_or(0.0).max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let a = Matrix::from_vec(2, 3, vec![1., 2., 3., 4., 5., 6.]).unwrap();
        let i3 = Matrix::identity(3);
        assert_eq!(a.mul(&i3), a);
    }

    #[test]
    fn transpose_mul_matches_explicit() {
        let a = Matrix::from_vec(3, 2, vec![1., 2., 3., 4., 5., 6.]).unwrap();
        let b = Matrix::from_vec(3, 2, vec![0.5, 1., -1., 2., 0., 3.]).unwrap();
        let direct = a.transpose().mul(&b);
        assert!((a.transpose_mul(&b).sub(&direct)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn rejects_nonfinite() {
        assert!(Matrix::from_vec(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(Matrix::from_vec(0, 2, vec![]).is_err());
    }

    #[test]
    fn empty_basis_passthrough() {
        let p = BasisMatrix::empty(3);
        assert_eq!(p.rank(), 0);
        let v = vec![1.0, -2.0, 0.5];
        assert_eq!(p.residual_vec(&v), v);
    }

    #[test]
    fn basis_rejects_skewed_columns() {
        let m = Matrix::from_vec(2, 2, vec![1., 1., 0., 1.]).unwrap();
        assert!(BasisMatrix::new(m).is_err());
    }
}
