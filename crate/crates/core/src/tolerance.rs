//! Pinned numerical tolerances and scan parameters.
//!
//! Every comparison threshold in the crate lives here so the numbers are
//! auditable in one place and cannot drift between modules.

/// Max allowed |m[i][j] - conj(m[j][i])| for a matrix accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Max allowed |trace - 1| for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues of a density matrix may undershoot zero by at most this.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Jacobi sweep target: off-diagonal Frobenius norm below this is converged.
pub const JACOBI_OFF_TOL: f64 = 1e-12;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of m†m may undershoot zero by at most this before the
/// square root; anything in (-SV_CLAMP_TOL, 0) is clamped to 0.
pub const SV_CLAMP_TOL: f64 = 1e-12;

/// A partial-transpose eigenvalue above -PPT_TOL counts as non-negative.
pub const PPT_TOL: f64 = 1e-10;

/// Kraus sum and elementwise damping map must agree entrywise within this.
pub const MAP_EQUIV_TOL: f64 = 1e-12;

/// Bisection refines crossing times to this width (in Γt units).
pub const CROSSING_REFINE_TOL: f64 = 1e-6;

/// Hard cap on bisection iterations.
pub const BISECTION_MAX_ITER: usize = 200;

/// Coarse scan step (in Γt units) used to bracket signal crossings.
pub const SCAN_STEP: f64 = 2e-3;

/// Coarse scan horizon (in Γt units); signals alive past this are reported
/// as not expiring within the horizon.
pub const SCAN_HORIZON: f64 = 5.0;

/// Sign threshold for scan bracketing: values within ±this of zero are
/// treated as zero when hunting for crossings.
pub const SCAN_SIGN_TOL: f64 = 1e-12;

/// A two-qubit block with trace weight below this cannot be renormalized.
pub const BLOCK_WEIGHT_TOL: f64 = 1e-14;

/// Max entrywise deviation for recognizing a state as a family member.
pub const FAMILY_MATCH_TOL: f64 = 1e-10;
