//! Shared helpers for the integration suites: seeded randomness and an
//! independent determinant-based spectral oracle.
//!
//! Nothing here reuses the library's eigensolver internals: unitaries
//! are built from explicit Givens rotations and determinants come from
//! LU with partial pivoting, so spectra can be cross-checked against a
//! second, unrelated computation.

#![allow(dead_code)]

use num_complex::Complex64;
use qutrit_dsd::linalg::ComplexMatrix;
use qutrit_dsd::states::DensityMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| random_complex(rng))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let a = random_matrix(rng, dim);
    a.add(&a.dagger()).scaled(0.5)
}

/// Random full-rank density matrix on a dim_a ⊗ dim_b split: A·A†,
/// normalized to unit trace.
pub fn random_density(rng: &mut ChaCha8Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let a = random_matrix(rng, dim_a * dim_b);
    let psd = a.mul(&a.dagger());
    let trace = psd.trace().re;
    DensityMatrix::new(dim_a, dim_b, psd.scaled(1.0 / trace)).expect("A A† / tr is a valid state")
}

/// Random diagonal (classical) state.
pub fn random_diagonal_density(rng: &mut ChaCha8Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let n = dim_a * dim_b;
    let mut weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    DensityMatrix::new(dim_a, dim_b, ComplexMatrix::from_real_diag(&weights)).unwrap()
}

/// Random product state ρ_A ⊗ ρ_B (each factor full rank).
pub fn random_product_density(rng: &mut ChaCha8Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let part = |rng: &mut ChaCha8Rng, d: usize| {
        let a = random_matrix(rng, d);
        let psd = a.mul(&a.dagger());
        let trace = psd.trace().re;
        psd.scaled(1.0 / trace)
    };
    let m = part(rng, dim_a).kron(&part(rng, dim_b));
    DensityMatrix::new(dim_a, dim_b, m).expect("product of states is a state")
}

/// Random unitary as a product of complex Givens rotations applied to
/// a random diagonal phase matrix. Verified unitary on construction.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    for _ in 0..2 {
        for p in 0..dim {
            for q in (p + 1)..dim {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                let (s, c) = theta.sin_cos();
                let mut g = ComplexMatrix::identity(dim);
                g[(p, p)] = Complex64::new(c, 0.0);
                g[(p, q)] = phase.scale(-s);
                g[(q, p)] = phase.conj().scale(s);
                g[(q, q)] = Complex64::new(c, 0.0);
                u = g.mul(&u);
            }
        }
    }
    let defect = u.mul(&u.dagger()).max_abs_diff(&ComplexMatrix::identity(dim));
    assert!(defect < 1e-12, "constructed unitary defect {defect}");
    u
}

/// Determinant via LU decomposition with partial pivoting; completely
/// independent of the library's Jacobi eigensolver.
pub fn det_lu(m: &ComplexMatrix) -> Complex64 {
    let n = m.dim();
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| {
                a[r1 * n + col]
                    .norm()
                    .total_cmp(&a[r2 * n + col].norm())
            })
            .unwrap();
        let pivot = a[pivot_row * n + col];
        if pivot.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            for k in col..n {
                let sub = factor * a[col * n + k];
                a[row * n + k] -= sub;
            }
        }
    }
    det
}

/// det(m − x·I) for a real shift, via the LU route.
pub fn char_poly_at(m: &ComplexMatrix, x: f64) -> Complex64 {
    let shifted = m.sub(&ComplexMatrix::identity(m.dim()).scaled(x));
    det_lu(&shifted)
}

/// Cross-checks a reported Hermitian spectrum against the determinant
/// oracle: det(m − xI) must equal Π(λᵢ − x) at probe points spread
/// through and around the spectrum, to relative tolerance `tol`.
pub fn assert_spectrum_matches_charpoly(m: &ComplexMatrix, eigs: &[f64], tol: f64) {
    assert_eq!(eigs.len(), m.dim());
    let lo = eigs.first().unwrap().min(0.0) - 1.0;
    let hi = eigs.last().unwrap().max(0.0) + 1.0;
    let probes = 7;
    for k in 0..probes {
        let x = lo + (hi - lo) * (k as f64 + 0.37) / probes as f64;
        let product: f64 = eigs.iter().map(|&l| l - x).product();
        let det = char_poly_at(m, x);
        assert!(
            det.im.abs() < tol * (1.0 + det.norm()),
            "char poly at {x} has imaginary part {}",
            det.im
        );
        let scale = 1.0 + product.abs().max(det.re.abs());
        assert!(
            (det.re - product).abs() < tol * scale,
            "char poly mismatch at x = {x}: det {} vs eig product {product}",
            det.re
        );
    }
    // Moment identities: Σλ = tr(m), Σλ² = ‖m‖²_F for Hermitian m.
    let sum: f64 = eigs.iter().sum();
    assert!((sum - m.trace().re).abs() < 1e-9 * (1.0 + sum.abs()));
    let sum_sq: f64 = eigs.iter().map(|l| l * l).sum();
    let frob_sq = m.frobenius_norm().powi(2);
    assert!((sum_sq - frob_sq).abs() < 1e-9 * (1.0 + frob_sq));
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() < tol, "{what}: {a} vs {b} (tol {tol})");
}
