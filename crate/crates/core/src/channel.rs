//! The dephasing channel: damping profiles, the 27-operator Kraus set,
//! and the equivalent elementwise damping-factor map.
//!
//! The channel is implemented twice on purpose. `apply_channel` composes
//! the 27 operator products G = E_i F_j D_k and sums G† ρ G;
//! `damping_matrix_map` multiplies each entry of ρ by a factor read from
//! an explicit exponent grid. The two routes share no code and must agree
//! entrywise within `MAP_EQUIV_TOL`; that cross-check is the module's
//! central defense against transcription mistakes in either form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::DensityMatrix;

/// Phase-damping rates: Γ₁ multi-local (per-party), Γ₂ collective.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoherenceParams {
    pub gamma1: f64,
    pub gamma2: f64,
}

impl DecoherenceParams {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        for (name, value) in [("gamma1", gamma1), ("gamma2", gamma2)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::ParamRange {
                    name,
                    value,
                    range: "[0, inf)",
                });
            }
        }
        Ok(Self { gamma1, gamma2 })
    }
}

/// Which noise sources act: both, per-party only, or shared-field only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioMode {
    Global,
    MultiLocal,
    Collective,
}

impl ScenarioMode {
    /// Rates actually applied: multi-local zeroes Γ₂, collective zeroes Γ₁.
    pub fn effective_rates(self, params: DecoherenceParams) -> DecoherenceParams {
        match self {
            ScenarioMode::Global => params,
            ScenarioMode::MultiLocal => DecoherenceParams {
                gamma1: params.gamma1,
                gamma2: 0.0,
            },
            ScenarioMode::Collective => DecoherenceParams {
                gamma1: 0.0,
                gamma2: params.gamma2,
            },
        }
    }
}

impl std::fmt::Display for ScenarioMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ScenarioMode::Global => "global",
            ScenarioMode::MultiLocal => "multilocal",
            ScenarioMode::Collective => "collective",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ScenarioMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "global" => Ok(ScenarioMode::Global),
            "multilocal" => Ok(ScenarioMode::MultiLocal),
            "collective" => Ok(ScenarioMode::Collective),
            other => Err(format!(
                "unknown scenario '{other}' (expected global, multilocal, or collective)"
            )),
        }
    }
}

/// Time-dependent damping factors. All fields are dimensionless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DampingProfile {
    /// e^(−Γ₁t/2) for party A.
    pub gamma_a: f64,
    /// e^(−Γ₁t/2) for party B (equal to `gamma_a` by construction).
    pub gamma_b: f64,
    /// e^(−Γ₂t/2), the collective factor.
    pub gamma: f64,
    pub omega_a: f64,
    pub omega_b: f64,
    pub omega1: f64,
    /// Carries a negative sign; it makes γ² + ω₁ω₂ = γ⁴ hold exactly.
    pub omega2: f64,
    pub omega3: f64,
}

/// Evaluates the damping factors at time `t`.
pub fn damping_profile(params: DecoherenceParams, t: f64) -> Result<DampingProfile> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let ga = (-params.gamma1 * t / 2.0).exp();
    let g = (-params.gamma2 * t / 2.0).exp();
    let wa = (1.0 - ga * ga).max(0.0).sqrt();
    let w1 = (1.0 - g * g).max(0.0).sqrt();
    Ok(DampingProfile {
        gamma_a: ga,
        gamma_b: ga,
        gamma: g,
        omega_a: wa,
        omega_b: wa,
        omega1: w1,
        omega2: -g * g * w1,
        omega3: (1.0 - g * g) * (1.0 + g * g).sqrt(),
    })
}

impl DampingProfile {
    /// The t = 0 profile: identity channel.
    pub fn identity() -> Self {
        DampingProfile {
            gamma_a: 1.0,
            gamma_b: 1.0,
            gamma: 1.0,
            omega_a: 0.0,
            omega_b: 0.0,
            omega1: 0.0,
            omega2: 0.0,
            omega3: 0.0,
        }
    }
}

/// Single-party phase-damping family on a d-level system:
/// diag(1, γ, …, γ), then ω placed at each excited level in turn,
/// with ω = √(1 − γ²). Satisfies Σ K†K = I_d.
pub fn generalized_local_kraus(d: usize, gamma_local: f64) -> Result<Vec<ComplexMatrix>> {
    if d < 2 {
        return Err(Error::ParamRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    if !(gamma_local > 0.0 && gamma_local <= 1.0) {
        return Err(Error::ParamRange {
            name: "gamma_local",
            value: gamma_local,
            range: "(0, 1]",
        });
    }
    let omega = (1.0 - gamma_local * gamma_local).max(0.0).sqrt();
    let mut ops = Vec::with_capacity(d);
    let mut first = vec![gamma_local; d];
    first[0] = 1.0;
    ops.push(ComplexMatrix::from_real_diag(&first));
    for level in 1..d {
        let mut diag = vec![0.0; d];
        diag[level] = omega;
        ops.push(ComplexMatrix::from_real_diag(&diag));
    }
    Ok(ops)
}

/// Diagonal entries of the three collective operators D₁, D₂, D₃.
///
/// The collective field couples only to |2,2⟩, |1,1⟩, |0,0⟩ (composite
/// indices 0, 4, 8); everything else rides along untouched.
fn collective_diags(p: &DampingProfile) -> [[f64; 9]; 3] {
    let mut d1 = [1.0; 9];
    d1[0] = p.gamma;
    d1[4] = p.gamma;
    d1[8] = p.gamma;
    let mut d2 = [0.0; 9];
    d2[0] = p.omega1;
    d2[4] = p.omega2;
    d2[8] = p.omega2;
    let mut d3 = [0.0; 9];
    d3[4] = p.omega3;
    d3[8] = p.omega3;
    [d1, d2, d3]
}

/// The 27 Kraus operators G = E_i F_j D_k, ordered with k fastest,
/// then j, then i. All are real diagonal 9×9 matrices.
pub fn kraus_operators(profile: &DampingProfile) -> Vec<ComplexMatrix> {
    let ea = local_family(profile.gamma_a, profile.omega_a);
    let fb = local_family(profile.gamma_b, profile.omega_b);
    let id3 = ComplexMatrix::identity(3);
    let e_ops: Vec<ComplexMatrix> = ea.iter().map(|e| e.kron(&id3)).collect();
    let f_ops: Vec<ComplexMatrix> = fb.iter().map(|f| id3.kron(f)).collect();
    let d_ops: Vec<ComplexMatrix> = collective_diags(profile)
        .iter()
        .map(|d| ComplexMatrix::from_real_diag(d))
        .collect();

    let mut out = Vec::with_capacity(27);
    for e in &e_ops {
        for f in &f_ops {
            for d in &d_ops {
                out.push(e.mul(f).mul(d));
            }
        }
    }
    out
}

/// The 3×3 single-party family for one party, from its (γ, ω) pair.
fn local_family(gamma: f64, omega: f64) -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_real_diag(&[1.0, gamma, gamma]),
        ComplexMatrix::from_real_diag(&[0.0, omega, 0.0]),
        ComplexMatrix::from_real_diag(&[0.0, 0.0, omega]),
    ]
}

/// Evolves ρ through the operator sum Σ G† ρ G.
pub fn apply_channel(rho0: &DensityMatrix, profile: &DampingProfile) -> Result<DensityMatrix> {
    if rho0.dim() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho0.dim(),
        });
    }
    let mut acc = ComplexMatrix::zeros(9);
    for g in kraus_operators(profile) {
        acc = acc.add(&g.dagger().mul(rho0.matrix()).mul(&g));
    }
    Ok(DensityMatrix::new_unchecked(
        rho0.dim_a(),
        rho0.dim_b(),
        acc,
    ))
}

/// Exponent grid for the elementwise map: entry (m, n) damps by
/// γ^g · γ_A^a · γ_B^b with (g, a, b) read from this table. Transcribed
/// once, independently of the Kraus composition above.
#[rustfmt::skip]
const DAMPING_EXPONENTS: [[(u8, u8, u8); 9]; 9] = [
    [(0,0,0),(1,0,1),(1,0,1),(1,1,0),(4,1,1),(1,1,1),(1,1,0),(1,1,1),(4,1,1)],
    [(1,0,1),(0,0,0),(0,0,2),(0,1,1),(1,1,0),(0,1,2),(0,1,1),(0,1,0),(1,1,2)],
    [(1,0,1),(0,0,2),(0,0,0),(0,1,1),(1,1,2),(0,1,0),(0,1,1),(0,1,2),(1,1,0)],
    [(1,1,0),(0,1,1),(0,1,1),(0,0,0),(1,0,1),(0,0,1),(0,2,0),(0,2,1),(1,2,1)],
    [(4,1,1),(1,1,0),(1,1,2),(1,0,1),(0,0,0),(1,0,2),(1,2,1),(1,2,0),(0,2,2)],
    [(1,1,1),(0,1,2),(0,1,0),(0,0,1),(1,0,2),(0,0,0),(0,2,1),(0,2,2),(1,2,0)],
    [(1,1,0),(0,1,1),(0,1,1),(0,2,0),(1,2,1),(0,2,1),(0,0,0),(0,0,1),(1,0,1)],
    [(1,1,1),(0,1,0),(0,1,2),(0,2,1),(1,2,0),(0,2,2),(0,0,1),(0,0,0),(1,0,2)],
    [(4,1,1),(1,1,2),(1,1,0),(1,2,1),(0,2,2),(1,2,0),(1,0,1),(1,0,2),(0,0,0)],
];

/// The attenuation factor applied to entry (m, n).
pub fn damping_factor(profile: &DampingProfile, m: usize, n: usize) -> f64 {
    let (g, a, b) = DAMPING_EXPONENTS[m][n];
    profile.gamma.powi(g as i32)
        * profile.gamma_a.powi(a as i32)
        * profile.gamma_b.powi(b as i32)
}

/// The full 9×9 factor table as a real matrix.
pub fn damping_matrix(profile: &DampingProfile) -> ComplexMatrix {
    ComplexMatrix::from_fn(9, |m, n| Complex64::new(damping_factor(profile, m, n), 0.0))
}

/// Evolves ρ by entrywise multiplication with the factor table.
pub fn damping_matrix_map(rho0: &DensityMatrix, profile: &DampingProfile) -> Result<DensityMatrix> {
    if rho0.dim() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho0.dim(),
        });
    }
    let m = ComplexMatrix::from_fn(9, |r, c| {
        rho0.matrix()[(r, c)] * damping_factor(profile, r, c)
    });
    Ok(DensityMatrix::new_unchecked(rho0.dim_a(), rho0.dim_b(), m))
}
