//! Householder QR: restricted least squares and basis re-orthonormalization.

use super::{BasisMatrix, Matrix};
use crate::error::{Error, Result};

/// A column set counts as rank-deficient when the smallest |R_ii| falls
/// below this fraction of the largest.
const RANK_TOL: f64 = 1e-10;

/// QR factorization keeping Q implicit: reflectors in the lower trapezoid,
/// R strictly above the diagonal, R's diagonal in `diag`.
struct QrFactors {
    packed: Matrix,
    betas: Vec<f64>,
    diag: Vec<f64>,
}

fn factor(a: &Matrix) -> QrFactors {
    let (m, k) = (a.rows(), a.cols());
    let mut packed = a.clone();
    let mut betas = Vec::with_capacity(k);
    let mut diag = Vec::with_capacity(k);
    for j in 0..k {
        let mut norm2 = 0.0;
        for i in j..m {
            norm2 += packed[(i, j)] * packed[(i, j)];
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            betas.push(0.0);
            diag.push(0.0);
            continue;
        }
        let ajj = packed[(j, j)];
        let alpha = if ajj >= 0.0 { -norm } else { norm };
        let v0 = ajj - alpha;
        let vnorm2 = norm2 - ajj * ajj + v0 * v0;
        let beta = if vnorm2 == 0.0 { 0.0 } else { 2.0 / vnorm2 };
        packed[(j, j)] = v0;
        if beta != 0.0 {
            for col in (j + 1)..k {
                let mut dot = 0.0;
                for i in j..m {
                    dot += packed[(i, j)] * packed[(i, col)];
                }
                let scale = beta * dot;
                for i in j..m {
                    let vij = packed[(i, j)];
                    packed[(i, col)] -= scale * vij;
                }
            }
        }
        betas.push(beta);
        diag.push(alpha);
    }
    QrFactors { packed, betas, diag }
}

impl QrFactors {
    fn cols(&self) -> usize {
        self.betas.len()
    }

    /// Apply Qᵀ to a vector in place.
    fn apply_qt(&self, y: &mut [f64]) {
        let m = self.packed.rows();
        for j in 0..self.cols() {
            let beta = self.betas[j];
            if beta == 0.0 {
                continue;
            }
            let mut dot = 0.0;
            for i in j..m {
                dot += self.packed[(i, j)] * y[i];
            }
            let scale = beta * dot;
            for i in j..m {
                y[i] -= scale * self.packed[(i, j)];
            }
        }
    }

    /// Apply Q to a vector in place (reflectors in reverse order).
    fn apply_q(&self, y: &mut [f64]) {
        let m = self.packed.rows();
        for j in (0..self.cols()).rev() {
            let beta = self.betas[j];
            if beta == 0.0 {
                continue;
            }
            let mut dot = 0.0;
            for i in j..m {
                dot += self.packed[(i, j)] * y[i];
            }
            let scale = beta * dot;
            for i in j..m {
                y[i] -= scale * self.packed[(i, j)];
            }
        }
    }

    /// Solve R z = c (R upper triangular with `diag` on the diagonal).
    fn back_substitute(&self, c: &[f64]) -> Vec<f64> {
        let k = self.cols();
        let mut z = vec![0.0; k];
        for j in (0..k).rev() {
            let mut acc = c[j];
            for col in (j + 1)..k {
                acc -= self.packed[(j, col)] * z[col];
            }
            z[j] = acc / self.diag[j];
        }
        z
    }

    fn rank_deficient(&self) -> bool {
        let max = self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        if max == 0.0 {
            return true;
        }
        self.diag.iter().any(|d| d.abs() < RANK_TOL * max)
    }
}

/// Least-squares solution argmin_z ‖y − A z‖₂ via Householder QR.
///
/// Errors with [`Error::SingularSystem`] when the smallest |R_ii| is below
/// 1e-10 of the largest.
pub fn ls_restricted(a: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    if a.rows() != y.len() {
        return Err(Error::Dimension(format!(
            "least squares: matrix has {} rows, vector has {}",
            a.rows(),
            y.len()
        )));
    }
    if a.cols() > a.rows() {
        return Err(Error::SingularSystem { cols: a.cols() });
    }
    let qr = factor(a);
    if qr.rank_deficient() {
        return Err(Error::SingularSystem { cols: a.cols() });
    }
    let mut work = y.to_vec();
    qr.apply_qt(&mut work);
    Ok(qr.back_substitute(&work[..a.cols()]))
}

/// Re-orthonormalize the columns of `a` by thin QR, preserving column order
/// and orientation (R diagonal made positive).
///
/// Errors with [`Error::SingularSystem`] if the columns are numerically
/// dependent.
pub fn orthonormalize(a: &Matrix) -> Result<BasisMatrix> {
    let (m, k) = (a.rows(), a.cols());
    if k == 0 {
        return Ok(BasisMatrix::empty(m));
    }
    if k > m {
        return Err(Error::SingularSystem { cols: k });
    }
    let qr = factor(a);
    if qr.rank_deficient() {
        return Err(Error::SingularSystem { cols: k });
    }
    let mut q = Matrix::zeros(m, k);
    for j in 0..k {
        let mut e = vec![0.0; m];
        e[j] = 1.0;
        qr.apply_q(&mut e);
        // Fix orientation so that Q R has R_jj > 0.
        if qr.diag[j] < 0.0 {
            for x in e.iter_mut() {
                *x = -*x;
            }
        }
        q.set_column(j, &e);
    }
    BasisMatrix::new(q)
}
