//! Square complex matrices with a self-contained Hermitian eigensolver.
//!
//! Storage is a flat row-major `Vec<Complex64>`. Eigenvalues come from a
//! cyclic Jacobi iteration with complex Givens rotations; singular values
//! are obtained as √eig(m†m). Nothing here depends on an external
//! linear-algebra library.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::{
    HERMITICITY_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL, SV_CLAMP_TOL,
};

/// Dense square matrix over `Complex64`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of side `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of side `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build entrywise from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat row-major view of the entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Plain transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        Self::from_fn(self.dim, |r, c| self[(r, c)] + rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        Self::from_fn(self.dim, |r, c| self[(r, c)] - rhs[(r, c)])
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] * factor)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "mul: dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }

    /// Kronecker product; the right factor varies fastest.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (na, nb) = (self.dim, rhs.dim);
        Self::from_fn(na * nb, |r, c| {
            self[(r / nb, c / nb)] * rhs[(r % nb, c % nb)]
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    s += self[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// Largest |m[i][j] − conj(m[j][i])| over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise |self − other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// Cyclic Jacobi with complex rotations; converged when the
    /// off-diagonal Frobenius norm drops below `JACOBI_OFF_TOL`.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_dev: dev });
        }
        let n = self.dim;
        // Symmetrize to kill floating-point asymmetry before iterating.
        let mut w = Self::from_fn(n, |r, c| {
            (self[(r, c)] + self[(c, r)].conj()) * 0.5
        });

        let mut converged = false;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if w.off_diagonal_norm() < JACOBI_OFF_TOL {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    w.jacobi_rotate(p, q);
                }
            }
        }
        if !converged && w.off_diagonal_norm() >= JACOBI_OFF_TOL {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }

        let mut eigs: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
        eigs.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Ok(eigs)
    }

    /// One Jacobi rotation annihilating the (p, q) entry, w ← J† w J.
    fn jacobi_rotate(&mut self, p: usize, q: usize) {
        let a = self[(p, q)];
        let r = a.norm();
        if r < f64::MIN_POSITIVE {
            self[(p, q)] = Complex64::new(0.0, 0.0);
            self[(q, p)] = Complex64::new(0.0, 0.0);
            return;
        }
        let phase = a / r;
        let alpha = self[(p, p)].re;
        let beta = self[(q, q)].re;
        let tau = (beta - alpha) / (2.0 * r);
        // Smaller root of t² + 2τt − 1 = 0, for stability.
        let t = if tau >= 0.0 {
            1.0 / (tau + (1.0 + tau * tau).sqrt())
        } else {
            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;

        // Columns: w ← w J with J[p][p]=c, J[p][q]=s·phase,
        // J[q][p]=−s·conj(phase), J[q][q]=c.
        let n = self.dim;
        for k in 0..n {
            let wp = self[(k, p)];
            let wq = self[(k, q)];
            self[(k, p)] = wp * c - wq * s * phase.conj();
            self[(k, q)] = wp * s * phase + wq * c;
        }
        // Rows: w ← J† w.
        for k in 0..n {
            let wp = self[(p, k)];
            let wq = self[(q, k)];
            self[(p, k)] = wp * c - wq * s * phase;
            self[(q, k)] = wp * s * phase.conj() + wq * c;
        }
        // The rotation zeroes (p, q) exactly in exact arithmetic; pin the
        // leftover round-off and keep the diagonal real.
        self[(p, q)] = Complex64::new(0.0, 0.0);
        self[(q, p)] = Complex64::new(0.0, 0.0);
        self[(p, p)] = Complex64::new(self[(p, p)].re, 0.0);
        self[(q, q)] = Complex64::new(self[(q, q)].re, 0.0);
    }

    /// Singular values, descending, as √eig(m†m).
    ///
    /// Eigenvalues of m†m in (−SV_CLAMP_TOL, 0) are round-off and clamp
    /// to zero.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let ata = self.dagger().mul(self);
        let eigs = ata.hermitian_eigenvalues()?;
        let mut svs: Vec<f64> = eigs
            .into_iter()
            .map(|lambda| {
                debug_assert!(lambda > -SV_CLAMP_TOL, "m†m eigenvalue {lambda} < 0");
                lambda.max(0.0).sqrt()
            })
            .collect();
        svs.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
        Ok(svs)
    }

    /// Trace norm ‖m‖₁ = Σ singular values.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.iter().sum())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let eigs = ComplexMatrix::identity(5).hermitian_eigenvalues().unwrap();
        for e in eigs {
            assert_close(e, 1.0, 1e-14);
        }
    }

    #[test]
    fn frozen_2x2_with_complex_offdiagonal() {
        // [[2, 1−i], [1+i, 3]]: char poly λ² − 5λ + 4 → {1, 4}.
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c(2.0, 0.0);
        m[(0, 1)] = c(1.0, -1.0);
        m[(1, 0)] = c(1.0, 1.0);
        m[(1, 1)] = c(3.0, 0.0);
        let eigs = m.hermitian_eigenvalues().unwrap();
        assert_close(eigs[0], 1.0, 1e-12);
        assert_close(eigs[1], 4.0, 1e-12);
    }

    #[test]
    fn frozen_tridiagonal_3x3() {
        // [[2,1,0],[1,2,1],[0,1,2]] → {2−√2, 2, 2+√2}.
        let mut m = ComplexMatrix::zeros(3);
        for i in 0..3 {
            m[(i, i)] = c(2.0, 0.0);
        }
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        m[(1, 2)] = c(1.0, 0.0);
        m[(2, 1)] = c(1.0, 0.0);
        let eigs = m.hermitian_eigenvalues().unwrap();
        let root2 = 2f64.sqrt();
        assert_close(eigs[0], 2.0 - root2, 1e-12);
        assert_close(eigs[1], 2.0, 1e-12);
        assert_close(eigs[2], 2.0 + root2, 1e-12);
    }

    #[test]
    fn purely_imaginary_coupling() {
        // [[0, −i], [i, 0]] → {−1, 1}.
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = c(0.0, -1.0);
        m[(1, 0)] = c(0.0, 1.0);
        let eigs = m.hermitian_eigenvalues().unwrap();
        assert_close(eigs[0], -1.0, 1e-12);
        assert_close(eigs[1], 1.0, 1e-12);
    }

    #[test]
    fn spectrum_matches_trace_and_frobenius() {
        // Fixed Hermitian 4×4; Σλ = tr, Σλ² = ‖·‖²_F.
        let mut m = ComplexMatrix::zeros(4);
        let entries = [
            (0, 0, 1.5, 0.0),
            (1, 1, -0.25, 0.0),
            (2, 2, 0.75, 0.0),
            (3, 3, 2.0, 0.0),
            (0, 1, 0.3, 0.4),
            (0, 2, -0.1, 0.2),
            (0, 3, 0.0, -0.5),
            (1, 2, 0.6, 0.0),
            (1, 3, -0.2, 0.1),
            (2, 3, 0.05, -0.3),
        ];
        for &(r, cc, re, im) in &entries {
            m[(r, cc)] = c(re, im);
            if r != cc {
                m[(cc, r)] = c(re, -im);
            }
        }
        let eigs = m.hermitian_eigenvalues().unwrap();
        let sum: f64 = eigs.iter().sum();
        let sum_sq: f64 = eigs.iter().map(|e| e * e).sum();
        assert_close(sum, m.trace().re, 1e-11);
        assert_close(sum_sq, m.frobenius_norm().powi(2), 1e-10);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = c(1.0, 0.0);
        match m.hermitian_eigenvalues() {
            Err(Error::NotHermitian { max_dev }) => assert!(max_dev > 0.9),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = ComplexMatrix::from_real_diag(&[-3.0, 0.5, 2.0]);
        let svs = m.singular_values().unwrap();
        assert_close(svs[0], 3.0, 1e-12);
        assert_close(svs[1], 2.0, 1e-12);
        assert_close(svs[2], 0.5, 1e-12);
        assert_close(m.trace_norm().unwrap(), 5.5, 1e-12);
    }

    #[test]
    fn trace_norm_of_hermitian_is_sum_abs_eigs() {
        let mut m = ComplexMatrix::zeros(3);
        m[(0, 0)] = c(1.0, 0.0);
        m[(1, 1)] = c(-2.0, 0.0);
        m[(0, 2)] = c(0.0, 0.7);
        m[(2, 0)] = c(0.0, -0.7);
        let eigs = m.hermitian_eigenvalues().unwrap();
        let expect: f64 = eigs.iter().map(|e| e.abs()).sum();
        assert_close(m.trace_norm().unwrap(), expect, 1e-10);
    }

    #[test]
    fn kron_mixed_product() {
        // (A⊗B)(C⊗D) = (AC)⊗(BD) on small fixed matrices.
        let a = ComplexMatrix::from_fn(2, |r, cc| c((r + 2 * cc) as f64, 0.5));
        let b = ComplexMatrix::from_fn(3, |r, cc| c(r as f64 - cc as f64, 0.25 * r as f64));
        let cm = ComplexMatrix::from_fn(2, |r, cc| c(1.0 + cc as f64, -(r as f64)));
        let d = ComplexMatrix::from_fn(3, |r, cc| c(0.5 * (r * cc) as f64, 1.0));
        let lhs = a.kron(&b).mul(&cm.kron(&d));
        let rhs = a.mul(&cm).kron(&b.mul(&d));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_identity_embeds_blocks() {
        let a = ComplexMatrix::from_fn(3, |r, cc| c((r * 3 + cc) as f64, 0.0));
        let k = ComplexMatrix::identity(3).kron(&a);
        assert_eq!(k.dim(), 9);
        assert_eq!(k[(0, 2)], a[(0, 2)]);
        assert_eq!(k[(4, 5)], a[(1, 2)]);
        assert_eq!(k[(0, 3)], c(0.0, 0.0));
    }
}
