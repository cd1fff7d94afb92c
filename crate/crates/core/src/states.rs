//! Density matrices and the initial-state families.
//!
//! Single-party basis order is |2⟩, |1⟩, |0⟩: level ℓ maps to index 2 − ℓ,
//! so index 0 is the highest level. Composite kets |a,b⟩ (levels) sit at
//! index 3·(2 − a) + (2 − b); the first basis vector is |2,2⟩. Every
//! constructor in the crate is written against this one map.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance::{HERMITICITY_TOL, POSITIVITY_TOL, TRACE_TOL};

/// Validated bipartite density matrix: Hermitian, unit trace, positive
/// semidefinite (within the pinned tolerances).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a matrix as a dim_a ⊗ dim_b state.
    pub fn new(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != dim_a * dim_b {
            return Err(Error::Dimension {
                expected: dim_a * dim_b,
                got: matrix.dim(),
            });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_dev: dev });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState {
                reason: format!("trace = {} + {}i, expected 1", tr.re, tr.im),
            });
        }
        let min_eig = matrix
            .hermitian_eigenvalues()?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -POSITIVITY_TOL {
            return Err(Error::InvalidState {
                reason: format!("negative eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(Self::new_unchecked(dim_a, dim_b, matrix))
    }

    /// Wraps without validation. For outputs of operations that preserve
    /// validity by construction, and for deliberate out-of-range studies.
    pub fn new_unchecked(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Self {
        Self {
            dim_a,
            dim_b,
            matrix,
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension dim_a · dim_b.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Composite basis index of the level ket |a,b⟩ in a qutrit pair.
pub const fn ket_index(level_a: usize, level_b: usize) -> usize {
    3 * (2 - level_a) + (2 - level_b)
}

/// Maximally entangled state (1/√d) Σ_k |k,k⟩ on d ⊗ d.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::ParamRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    let amp = 1.0 / d as f64;
    let mut m = ComplexMatrix::zeros(d * d);
    for k in 0..d {
        for l in 0..d {
            m[(k * d + k, l * d + l)] = Complex64::new(amp, 0.0);
        }
    }
    Ok(DensityMatrix::new_unchecked(d, d, m))
}

/// Uniform mixture of the level kets |a,b⟩ listed in `kets`.
fn diag_mixture(kets: &[(usize, usize)]) -> ComplexMatrix {
    let w = 1.0 / kets.len() as f64;
    let mut m = ComplexMatrix::zeros(9);
    for &(a, b) in kets {
        let i = ket_index(a, b);
        m[(i, i)] = Complex64::new(w, 0.0);
    }
    m
}

/// σ₊ = (1/3)(|0,1⟩⟨0,1| + |1,2⟩⟨1,2| + |2,0⟩⟨2,0|), levels.
pub fn sigma_plus() -> ComplexMatrix {
    diag_mixture(&[(0, 1), (1, 2), (2, 0)])
}

/// σ₋ = (1/3)(|1,0⟩⟨1,0| + |2,1⟩⟨2,1| + |0,2⟩⟨0,2|), levels.
pub fn sigma_minus() -> ComplexMatrix {
    diag_mixture(&[(1, 0), (2, 1), (0, 2)])
}

fn horodecki_matrix(alpha: f64) -> ComplexMatrix {
    let psi = max_entangled(3).expect("d = 3").into_matrix();
    psi.scaled(2.0 / 7.0)
        .add(&sigma_plus().scaled(alpha / 7.0))
        .add(&sigma_minus().scaled((5.0 - alpha) / 7.0))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::ParamRange {
            name: "alpha",
            value: alpha,
            range: "[2, 5]",
        });
    }
    Ok(())
}

/// ρ_α = (2/7)|Ψ+⟩⟨Ψ+| + (α/7)σ₊ + ((5−α)/7)σ₋, with 2 ≤ α ≤ 5.
///
/// Separable for α ≤ 3, bound-entangled for 3 < α ≤ 4, free-entangled
/// (NPT) for α > 4.
pub fn horodecki_state(alpha: f64) -> Result<DensityMatrix> {
    check_alpha(alpha)?;
    Ok(DensityMatrix::new_unchecked(3, 3, horodecki_matrix(alpha)))
}

/// ρ_α without the range check; out-of-range α may leave the density
/// matrix invariants violated.
pub fn horodecki_state_unchecked(alpha: f64) -> DensityMatrix {
    DensityMatrix::new_unchecked(3, 3, horodecki_matrix(alpha))
}

/// Local unitary I₃ ⊗ θ where θ swaps levels |0⟩ ↔ |1⟩ of party B.
pub fn local_swap_unitary() -> ComplexMatrix {
    // θ = |0⟩⟨1| + |1⟩⟨0| + |2⟩⟨2| in levels; indices 1 ↔ 2 swapped.
    let mut theta = ComplexMatrix::zeros(3);
    theta[(0, 0)] = Complex64::new(1.0, 0.0);
    theta[(1, 2)] = Complex64::new(1.0, 0.0);
    theta[(2, 1)] = Complex64::new(1.0, 0.0);
    ComplexMatrix::identity(3).kron(&theta)
}

fn rotated_matrix(alpha: f64) -> ComplexMatrix {
    let u = local_swap_unitary();
    u.mul(&horodecki_matrix(alpha)).mul(&u.dagger())
}

/// σ_α = U ρ_α U† with U = I₃ ⊗ θ; same spectrum as ρ_α.
pub fn rotated_state(alpha: f64) -> Result<DensityMatrix> {
    check_alpha(alpha)?;
    Ok(DensityMatrix::new_unchecked(3, 3, rotated_matrix(alpha)))
}

/// σ_α without the range check.
pub fn rotated_state_unchecked(alpha: f64) -> DensityMatrix {
    DensityMatrix::new_unchecked(3, 3, rotated_matrix(alpha))
}

fn isotropic_matrix(p: f64) -> ComplexMatrix {
    let psi = max_entangled(3).expect("d = 3").into_matrix();
    psi.scaled(p)
        .add(&ComplexMatrix::identity(9).scaled((1.0 - p) / 9.0))
}

/// ρ_p = p|Ψ+⟩⟨Ψ+| + ((1−p)/9) I₉, with 0 ≤ p ≤ 1.
///
/// NPT exactly for p > 1/4; the PPT region is separable.
pub fn isotropic_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(DensityMatrix::new_unchecked(3, 3, isotropic_matrix(p)))
}

/// ρ_p without the range check.
pub fn isotropic_state_unchecked(p: f64) -> DensityMatrix {
    DensityMatrix::new_unchecked(3, 3, isotropic_matrix(p))
}
