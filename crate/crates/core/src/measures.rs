//! Entanglement detection: partial transpose, negativity, the
//! realignment (CCNR) criterion, and the 2⊗2 block distillability probe.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::DensityMatrix;
use crate::tolerance::{BLOCK_WEIGHT_TOL, PPT_TOL};

/// Partial transpose on subsystem B:
/// output[(i,j),(k,l)] = input[(i,l),(k,j)].
pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let m = rho.matrix();
    ComplexMatrix::from_fn(da * db, |row, col| {
        let (i, j) = (row / db, row % db);
        let (k, l) = (col / db, col % db);
        m[(i * db + l, k * db + j)]
    })
}

/// Eigenvalues of the partial transpose, ascending.
pub fn pt_eigenvalues(rho: &DensityMatrix) -> Result<Vec<f64>> {
    partial_transpose(rho).hermitian_eigenvalues()
}

/// Negativity: Σ |negative PT eigenvalues|. Zero exactly for PPT states.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(negativity_from_eigenvalues(&pt_eigenvalues(rho)?))
}

/// Negativity from an already-computed PT spectrum. Folds from +0.0 so
/// a PPT spectrum yields positive zero (an empty f64 sum is IEEE -0.0).
pub fn negativity_from_eigenvalues(eigs: &[f64]) -> f64 {
    eigs.iter().filter(|&&e| e < 0.0).fold(0.0, |acc, e| acc - e)
}

/// Smallest PT eigenvalue; negative values witness entanglement.
pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    Ok(pt_eigenvalues(rho)?
        .first()
        .copied()
        .expect("non-empty spectrum"))
}

/// True iff the minimum PT eigenvalue is ≥ −tol.
pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(min_pt_eigenvalue(rho)? >= -tol)
}

/// Realignment: output[(i,j),(k,l)] = input[(i,k),(j,l)].
///
/// Requires dim_a = dim_b (the realigned matrix is square only then).
pub fn realign(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    if da != db {
        return Err(Error::Dimension {
            expected: da,
            got: db,
        });
    }
    let d = da;
    let m = rho.matrix();
    Ok(ComplexMatrix::from_fn(d * d, |row, col| {
        let (i, j) = (row / d, row % d);
        let (k, l) = (col / d, col % d);
        m[(i * d + k, j * d + l)]
    }))
}

/// Trace norm of the realigned matrix, and its excess over 1.
#[derive(Clone, Copy, Debug)]
pub struct CcnrResult {
    pub trace_norm: f64,
    /// trace_norm − 1; a positive value certifies entanglement,
    /// non-positive is inconclusive.
    pub value: f64,
}

/// Computes the realignment criterion value ‖ρ^R‖₁ − 1.
pub fn ccnr(rho: &DensityMatrix) -> Result<CcnrResult> {
    let trace_norm = realign(rho)?.trace_norm()?;
    Ok(CcnrResult {
        trace_norm,
        value: trace_norm - 1.0,
    })
}

/// One extracted 2⊗2 block of a qutrit-pair state.
#[derive(Clone, Debug)]
pub struct BlockReport {
    /// The four composite basis kets spanning the block, in level labels.
    pub label: &'static str,
    /// Renormalized 2⊗2 block state; `None` when the block is degenerate.
    pub state: Option<DensityMatrix>,
    /// True iff the renormalized block has a PT eigenvalue < −PPT_TOL.
    pub is_npt: bool,
    /// Trace of the raw 4×4 submatrix before renormalization.
    pub weight: f64,
    /// Set when the weight is too small to renormalize.
    pub degenerate: bool,
}

/// Composite-index quadruples of the three probed blocks, with labels.
/// Each quadruple is ordered so the 4×4 submatrix carries a 2⊗2
/// product structure (A-major).
const BLOCKS: [(&str, [usize; 4]); 3] = [
    ("|1,1>,|1,0>,|0,1>,|0,0>", [4, 5, 7, 8]),
    ("|2,2>,|2,1>,|0,2>,|0,1>", [0, 1, 6, 7]),
    ("|2,2>,|2,0>,|1,2>,|1,0>", [0, 2, 3, 5]),
];

/// Extracts the three 2⊗2 blocks and tests each for NPT.
///
/// Any NPT block certifies the parent state distillable. Blocks with
/// weight below `BLOCK_WEIGHT_TOL` are flagged degenerate and report
/// `is_npt = false`.
pub fn two_qubit_blocks(rho: &DensityMatrix) -> Result<Vec<BlockReport>> {
    if rho.dim() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho.dim(),
        });
    }
    let m = rho.matrix();
    let mut reports = Vec::with_capacity(3);
    for (label, idx) in BLOCKS {
        let sub = ComplexMatrix::from_fn(4, |r, c| m[(idx[r], idx[c])]);
        let weight = sub.trace().re;
        if weight < BLOCK_WEIGHT_TOL {
            reports.push(BlockReport {
                label,
                state: None,
                is_npt: false,
                weight,
                degenerate: true,
            });
            continue;
        }
        let block = DensityMatrix::new_unchecked(2, 2, sub.scaled(1.0 / weight));
        let is_npt = !is_ppt(&block, PPT_TOL)?;
        reports.push(BlockReport {
            label,
            state: Some(block),
            is_npt,
            weight,
            degenerate: false,
        });
    }
    Ok(reports)
}

/// True iff any probed 2⊗2 block is NPT (a distillability certificate).
pub fn any_block_npt(rho: &DensityMatrix) -> Result<bool> {
    Ok(two_qubit_blocks(rho)?.iter().any(|b| b.is_npt))
}
