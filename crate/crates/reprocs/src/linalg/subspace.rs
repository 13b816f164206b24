//! Subspace distance, orthogonal-complement projection, and denseness
//! coefficients.

use super::{sym_evd, BasisMatrix, Matrix};
use crate::error::{Error, Result};

/// Exact-mode `kappa_s` refuses when C(n,s) exceeds this.
pub const KAPPA_EXACT_LIMIT: u64 = 1_000_000;

/// dif(P̂, P) = ‖(I − P̂P̂ᵀ)P‖₂, the unexplained fraction of range(P).
///
/// Always in [0, 1]; 0 iff range(P) ⊆ range(P̂). P must be non-empty, P̂ may
/// be empty (then the result is 1 for any non-empty P).
pub fn subspace_dif(phat: &BasisMatrix, p: &BasisMatrix) -> Result<f64> {
    if phat.dim_n() != p.dim_n() {
        return Err(Error::Dimension(format!(
            "subspace_dif dimensions {} vs {}",
            phat.dim_n(),
            p.dim_n()
        )));
    }
    if p.is_empty() {
        return Err(Error::Dimension("subspace_dif: P must be non-empty".into()));
    }
    // ‖(I − P̂P̂ᵀ)P‖₂² = λ_max(Pᵀ(I − P̂P̂ᵀ)P) = λ_max(I_r − (P̂ᵀP)ᵀ(P̂ᵀP)),
    // an r x r problem.
    let r = p.rank();
    let mut gram = Matrix::identity(r);
    if !phat.is_empty() {
        let cross = phat.matrix().transpose_mul(p.matrix()); // r_hat x r
        let ctc = cross.transpose_mul(&cross); // r x r
        gram = gram.sub(&ctc);
    }
    let evd = sym_evd(&gram, 1e-12)?;
    let top = evd.values.first().copied().unwrap_or(0.0);
    Ok(top.clamp(0.0, 1.0).sqrt())
}

/// (I − PPᵀ)M applied in operator form, M − P(PᵀM); never materializes the
/// n x n projector.
pub fn proj_orth(p: &BasisMatrix, m: &Matrix) -> Result<Matrix> {
    if p.is_empty() {
        return Ok(m.clone());
    }
    if p.dim_n() != m.rows() {
        return Err(Error::Dimension(format!(
            "proj_orth dimensions {} vs {}",
            p.dim_n(),
            m.rows()
        )));
    }
    let coeffs = p.matrix().transpose_mul(m); // r x cols
    let fitted = p.matrix().mul(&coeffs); // n x cols
    Ok(m.sub(&fitted))
}

/// Smallest μ with max_i ‖row_i(P)‖₂² ≤ μ·r/n, i.e. (n/r)·max row norm².
pub fn denseness_mu(p: &BasisMatrix) -> f64 {
    assert!(!p.is_empty(), "denseness_mu needs a non-empty basis");
    let n = p.dim_n() as f64;
    let r = p.rank() as f64;
    let max_row = (0..p.dim_n())
        .map(|i| {
            p.matrix()
                .row(i)
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
        })
        .fold(0.0f64, f64::max);
    (n / r) * max_row
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > 10 * KAPPA_EXACT_LIMIT {
            return u64::MAX;
        }
    }
    acc
}

/// Exact (un)denseness coefficient κ_s(P) = max over |T| = s of the spectral
/// norm of the T-row submatrix of P.
///
/// Enumerates all size-s row subsets; refuses with a config error when
/// C(n,s) > 10⁶ (use [`kappa_s_bound`] instead).
pub fn kappa_s(p: &BasisMatrix, s: usize) -> Result<f64> {
    let n = p.dim_n();
    if s == 0 || s > n {
        return Err(Error::Config(format!("kappa_s: s={s} out of range 1..={n}")));
    }
    if binomial(n as u64, s as u64) > KAPPA_EXACT_LIMIT {
        return Err(Error::Config(format!(
            "kappa_s exact mode infeasible: C({n},{s}) > {KAPPA_EXACT_LIMIT}; use the sqrt(s)*kappa_1 bound"
        )));
    }
    let r = p.rank();
    let mut best = 0.0f64;
    let mut subset: Vec<usize> = (0..s).collect();
    loop {
        // spectral norm of the s x r submatrix via its r x r Gram
        let mut gram = Matrix::zeros(r, r);
        for &i in &subset {
            let row = p.matrix().row(i);
            for a in 0..r {
                for b in 0..r {
                    gram[(a, b)] += row[a] * row[b];
                }
            }
        }
        let evd = sym_evd(&gram, 1e-12)?;
        let top = evd.values.first().copied().unwrap_or(0.0).max(0.0);
        best = best.max(top.sqrt());

        // next combination
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(best.min(1.0));
            }
            i -= 1;
            if subset[i] != i + n - s {
                subset[i] += 1;
                for j in (i + 1)..s {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Upper bound κ_s(P) ≤ √s · κ₁(P) with κ₁ = max row norm.
pub fn kappa_s_bound(p: &BasisMatrix, s: usize) -> f64 {
    let kappa1 = (0..p.dim_n())
        .map(|i| {
            p.matrix()
                .row(i)
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0f64, f64::max);
    (s as f64).sqrt() * kappa1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::orthonormalize;

    fn basis_from_cols(cols: &[Vec<f64>]) -> BasisMatrix {
        BasisMatrix::new(Matrix::from_columns(cols).unwrap()).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn dif_zero_for_same_subspace() {
        let p = basis_from_cols(&[e(3, 0), e(3, 2)]);
        assert!(subspace_dif(&p, &p).unwrap() < 1e-14);
    }

    #[test]
    fn dif_orthogonal_subspaces() {
        let phat = basis_from_cols(&[e(2, 0)]);
        let p = basis_from_cols(&[e(2, 1)]);
        assert!((subspace_dif(&phat, &p).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dif_is_sine_of_angle() {
        // P = span{(cos30, sin30)}: dif against span{e1} is sin 30 = 0.5
        let th = 30f64.to_radians();
        let phat = basis_from_cols(&[e(2, 0)]);
        let p = basis_from_cols(&[vec![th.cos(), th.sin()]]);
        assert!((subspace_dif(&phat, &p).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dif_rotation_invariance() {
        // random-ish bases, rotate each by an orthogonal matrix: dif unchanged
        let a = Matrix::from_vec(4, 2, vec![1., 0.3, 0.2, 1., -0.5, 0.7, 0.1, -0.2]).unwrap();
        let b = Matrix::from_vec(4, 2, vec![0.9, -0.1, 0.4, 0.8, 0.3, 0.3, -0.6, 0.5]).unwrap();
        let phat = orthonormalize(&a).unwrap();
        let p = orthonormalize(&b).unwrap();
        let base = subspace_dif(&phat, &p).unwrap();

        let th = 0.7f64;
        let rot = Matrix::from_vec(2, 2, vec![th.cos(), -th.sin(), th.sin(), th.cos()]).unwrap();
        let phat_r = BasisMatrix::new(phat.matrix().mul(&rot)).unwrap();
        let p_r = BasisMatrix::new(p.matrix().mul(&rot)).unwrap();
        assert!((subspace_dif(&phat_r, &p_r).unwrap() - base).abs() < 1e-10);
    }

    #[test]
    fn proj_orth_examples() {
        let p = basis_from_cols(&[e(2, 0)]);
        let m = Matrix::column_vector(&[3.0, 4.0]).unwrap();
        let out = proj_orth(&p, &m).unwrap();
        assert!(out[(0, 0)].abs() < 1e-14);
        assert!((out[(1, 0)] - 4.0).abs() < 1e-14);

        // empty basis: unchanged
        let empty = BasisMatrix::empty(2);
        assert_eq!(proj_orth(&empty, &m).unwrap(), m);

        // annihilation: proj_orth(P, P C) = 0
        let c = Matrix::from_vec(1, 3, vec![2.0, -1.0, 0.5]).unwrap();
        let pc = p.matrix().mul(&c);
        assert!(proj_orth(&p, &pc).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn proj_orth_idempotent() {
        let p = basis_from_cols(&[e(4, 1), e(4, 3)]);
        let m = Matrix::from_vec(4, 2, vec![1., 2., 3., 4., 5., 6., 7., 8.]).unwrap();
        let once = proj_orth(&p, &m).unwrap();
        let twice = proj_orth(&p, &once).unwrap();
        assert!(once.sub(&twice).frobenius_norm() < 1e-12);
    }

    #[test]
    fn mu_extremes() {
        // identity columns: mu = n / r
        let p = basis_from_cols(&[e(6, 0), e(6, 1)]);
        assert!((denseness_mu(&p) - 3.0).abs() < 1e-12);

        // normalized all-ones: mu = 1
        let n = 5;
        let ones = vec![1.0 / (n as f64).sqrt(); n];
        let p1 = basis_from_cols(&[ones]);
        assert!((denseness_mu(&p1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_matches_row_scan_oracle() {
        // random orthonormalized 64x4 checked against a direct row scan
        let mut seed = 123u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let raw = Matrix::from_vec(64, 4, (0..256).map(|_| next()).collect()).unwrap();
        let p = orthonormalize(&raw).unwrap();
        let mu = denseness_mu(&p);
        let mut max_row: f64 = 0.0;
        for i in 0..64 {
            let rn: f64 = p.matrix().row(i).iter().map(|v| v * v).sum();
            max_row = max_row.max(rn);
        }
        assert!((mu - 64.0 / 4.0 * max_row).abs() < 1e-14);
    }

    #[test]
    fn kappa_simple_cases() {
        let p = basis_from_cols(&[e(4, 0)]);
        assert!((kappa_s(&p, 1).unwrap() - 1.0).abs() < 1e-12);

        // normalized all-ones, n=4, s=2: sqrt(2/4)
        let ones = vec![0.5; 4];
        let p1 = basis_from_cols(&[ones]);
        assert!((kappa_s(&p1, 2).unwrap() - (0.5f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kappa_bound_dominates_exact() {
        let mut seed = 77u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        for _ in 0..10 {
            let raw = Matrix::from_vec(10, 2, (0..20).map(|_| next()).collect()).unwrap();
            let p = orthonormalize(&raw).unwrap();
            for s in 1..=4 {
                let exact = kappa_s(&p, s).unwrap();
                let bound = kappa_s_bound(&p, s);
                assert!(
                    exact <= bound + 1e-12,
                    "kappa exact {exact} exceeded bound {bound}"
                );
            }
        }
    }

    #[test]
    fn kappa_refuses_huge_enumeration() {
        let cols: Vec<Vec<f64>> = (0..2).map(|i| e(64, i)).collect();
        let p = basis_from_cols(&cols);
        assert!(kappa_s(&p, 20).is_err());
    }
}
