//! Closed-form PT spectra and crossing times for the three state
//! families, used as the independent check on the numeric pipeline.
//!
//! Each family has three candidate negative PT eigenvalues; the first
//! two coincide. Under the exponential damping factors every candidate
//! crosses zero where an equation of the form A·e^(−rt) = B holds, so
//! crossing times invert exactly.

use crate::channel::{DampingProfile, DecoherenceParams, ScenarioMode};
use crate::error::{Error, Result};

/// The state families with closed-form PT spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Horodecki,
    Rotated,
    Isotropic,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Horodecki => "horodecki",
            Family::Rotated => "rotated",
            Family::Isotropic => "isotropic",
        };
        f.write_str(s)
    }
}

/// Candidate negative PT eigenvalues of one family at one profile.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormSpectrum {
    pub family: Family,
    /// [v₁, v₂, v₃] with v₁ = v₂ for every family.
    pub values: [f64; 3],
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

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// (5 − √(16·x + (2α−5)²)) / 42, the shared eigenvalue shape.
fn alpha_eigenvalue(alpha: f64, x: f64) -> f64 {
    let k = 2.0 * alpha - 5.0;
    (5.0 - (16.0 * x + k * k).sqrt()) / 42.0
}

/// Candidate PT eigenvalues of the evolved ρ_α:
/// λ₁ = λ₂ with factor γ⁸γ_A²γ_B², λ₃ with factor γ_A⁴γ_B⁴.
pub fn horodecki_pt_eigenvalues(
    alpha: f64,
    profile: &DampingProfile,
) -> Result<ClosedFormSpectrum> {
    check_alpha(alpha)?;
    let x12 = profile.gamma.powi(8) * profile.gamma_a.powi(2) * profile.gamma_b.powi(2);
    let x3 = profile.gamma_a.powi(4) * profile.gamma_b.powi(4);
    let v12 = alpha_eigenvalue(alpha, x12);
    Ok(ClosedFormSpectrum {
        family: Family::Horodecki,
        values: [v12, v12, alpha_eigenvalue(alpha, x3)],
    })
}

/// Candidate PT eigenvalues of the evolved σ_α:
/// η₁ = η₂ with factor γ²γ_A²γ_B², η₃ with factor γ_A⁴γ_B⁴.
pub fn rotated_pt_eigenvalues(alpha: f64, profile: &DampingProfile) -> Result<ClosedFormSpectrum> {
    check_alpha(alpha)?;
    let x12 = profile.gamma.powi(2) * profile.gamma_a.powi(2) * profile.gamma_b.powi(2);
    let x3 = profile.gamma_a.powi(4) * profile.gamma_b.powi(4);
    let v12 = alpha_eigenvalue(alpha, x12);
    Ok(ClosedFormSpectrum {
        family: Family::Rotated,
        values: [v12, v12, alpha_eigenvalue(alpha, x3)],
    })
}

/// Candidate PT eigenvalues of the evolved isotropic state:
/// ξ₁ = ξ₂ = (1 − p − 3p·γ⁴γ_Aγ_B)/9, ξ₃ = (1 − p − 3p·γ_A²γ_B²)/9.
pub fn isotropic_pt_eigenvalues(p: f64, profile: &DampingProfile) -> Result<ClosedFormSpectrum> {
    check_p(p)?;
    let f12 = profile.gamma.powi(4) * profile.gamma_a * profile.gamma_b;
    let f3 = profile.gamma_a.powi(2) * profile.gamma_b.powi(2);
    let v12 = (1.0 - p - 3.0 * p * f12) / 9.0;
    let v3 = (1.0 - p - 3.0 * p * f3) / 9.0;
    Ok(ClosedFormSpectrum {
        family: Family::Isotropic,
        values: [v12, v12, v3],
    })
}

/// Dispatches to the family's spectrum function.
pub fn pt_spectrum(family: Family, param: f64, profile: &DampingProfile) -> Result<ClosedFormSpectrum> {
    match family {
        Family::Horodecki => horodecki_pt_eigenvalues(param, profile),
        Family::Rotated => rotated_pt_eigenvalues(param, profile),
        Family::Isotropic => isotropic_pt_eigenvalues(param, profile),
    }
}

/// Closed-form negativity: Σ max(0, −v) over the candidate eigenvalues.
pub fn negativity_closed_form(family: Family, param: f64, profile: &DampingProfile) -> Result<f64> {
    let spectrum = pt_spectrum(family, param, profile)?;
    Ok(spectrum.values.iter().map(|v| (-v).max(0.0)).sum())
}

/// Decay exponents r in e^(−r·t) of the two distinct candidate factors,
/// given the rates actually applied. Derived from γ_A = e^(−Γ₁t/2),
/// γ = e^(−Γ₂t/2): under Γ₁ = Γ₂ = Γ these reduce to Γ·{6, 4} for the
/// α-family, Γ·{3, 4} rotated, Γ·{2, 4} multi-local, Γ·{3, 2} isotropic.
fn decay_rates(family: Family, rates: DecoherenceParams) -> [f64; 2] {
    let (g1, g2) = (rates.gamma1, rates.gamma2);
    match family {
        // γ⁸γ_A²γ_B² and γ_A⁴γ_B⁴.
        Family::Horodecki => [2.0 * g1 + 4.0 * g2, 4.0 * g1],
        // γ²γ_A²γ_B² and γ_A⁴γ_B⁴.
        Family::Rotated => [2.0 * g1 + g2, 4.0 * g1],
        // γ⁴γ_Aγ_B and γ_A²γ_B².
        Family::Isotropic => [g1 + 2.0 * g2, 2.0 * g1],
    }
}

/// Largest zero-crossing time (absolute t) of the candidate eigenvalues:
/// the time negativity first reaches zero. `None` when no candidate is
/// negative at t = 0, or when some negative candidate never crosses at
/// finite t (rate zero, or an asymptotic approach to zero).
pub fn crossing_time_closed_form(
    family: Family,
    param: f64,
    decoherence: DecoherenceParams,
    scenario: ScenarioMode,
) -> Result<Option<f64>> {
    // Validate the parameter through the spectrum path.
    pt_spectrum(family, param, &DampingProfile::identity())?;
    let rates = scenario.effective_rates(decoherence);

    let initially_negative;
    // Each candidate crosses where factor·e^(−rt) reaches a threshold:
    // solve e^(−rt) = ratio, i.e. t = −ln(ratio)/r, valid for ratio in
    // (0, 1) and r > 0.
    let ratio = match family {
        Family::Horodecki | Family::Rotated => {
            let k = 2.0 * param - 5.0;
            initially_negative = k * k > 9.0;
            (25.0 - k * k) / 16.0
        }
        Family::Isotropic => {
            initially_negative = param > 0.25;
            (1.0 - param) / (3.0 * param)
        }
    };
    if !initially_negative {
        return Ok(None);
    }

    let mut latest = 0.0f64;
    for r in decay_rates(family, rates) {
        if ratio <= 0.0 || r <= 0.0 {
            // The candidate stays negative for all finite t.
            return Ok(None);
        }
        latest = latest.max(-ratio.ln() / r);
    }
    Ok(Some(latest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::damping_profile;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    fn params(g1: f64, g2: f64) -> DecoherenceParams {
        DecoherenceParams::new(g1, g2).unwrap()
    }

    #[test]
    fn start_values_for_alpha_families() {
        let p0 = DampingProfile::identity();
        let h = horodecki_pt_eigenvalues(4.3, &p0).unwrap();
        for v in h.values {
            assert_close(v, (5.0 - 28.96f64.sqrt()) / 42.0, 1e-15);
            assert_close(v, -0.0090821, 1e-6);
        }
        let r = rotated_pt_eigenvalues(4.3, &p0).unwrap();
        for (a, b) in h.values.iter().zip(&r.values) {
            assert_close(*a, *b, 1e-15);
        }
    }

    #[test]
    fn first_two_values_always_coincide() {
        let p = damping_profile(params(0.8, 1.3), 0.53).unwrap();
        for (family, param) in [
            (Family::Horodecki, 4.3),
            (Family::Rotated, 4.3),
            (Family::Isotropic, 0.7),
        ] {
            let s = pt_spectrum(family, param, &p).unwrap();
            assert_eq!(s.values[0], s.values[1]);
        }
    }

    #[test]
    fn collective_only_third_value_is_constant() {
        for gamma_t in [0.0, 0.4, 2.0, 9.0] {
            let p = damping_profile(params(0.0, 1.0), gamma_t).unwrap();
            let s = horodecki_pt_eigenvalues(4.3, &p).unwrap();
            assert_close(s.values[2], (5.0 - 28.96f64.sqrt()) / 42.0, 1e-14);
            assert!(s.values[2] < 0.0);
            let r = rotated_pt_eigenvalues(4.3, &p).unwrap();
            assert_close(r.values[2], s.values[2], 1e-15);
        }
    }

    #[test]
    fn isotropic_start_value() {
        let p0 = DampingProfile::identity();
        for p in [0.1, 0.25, 0.26, 0.8] {
            let s = isotropic_pt_eigenvalues(p, &p0).unwrap();
            for v in s.values {
                assert_close(v, (1.0 - 4.0 * p) / 9.0, 1e-15);
            }
        }
    }

    #[test]
    fn negativity_values() {
        let p0 = DampingProfile::identity();
        assert_close(
            negativity_closed_form(Family::Horodecki, 4.3, &p0).unwrap(),
            0.0272464,
            1e-6,
        );
        // Separable range: all candidates non-negative.
        assert_close(
            negativity_closed_form(Family::Horodecki, 2.5, &p0).unwrap(),
            0.0,
            1e-15,
        );
        // α = 5 stays negative at any finite time.
        let p = damping_profile(params(1.0, 1.0), 1.0).unwrap();
        assert!(negativity_closed_form(Family::Horodecki, 5.0, &p).unwrap() > 0.0);
    }

    #[test]
    fn crossing_times_for_alpha_43() {
        let base = -(12.04f64 / 16.0).ln();
        let t = crossing_time_closed_form(Family::Horodecki, 4.3, params(1.0, 1.0), ScenarioMode::MultiLocal)
            .unwrap()
            .unwrap();
        assert_close(t, base / 2.0, 1e-12);
        assert_close(t, 0.1422, 5e-4);

        let t = crossing_time_closed_form(Family::Rotated, 4.3, params(1.0, 1.0), ScenarioMode::Global)
            .unwrap()
            .unwrap();
        assert_close(t, base / 3.0, 1e-12);
        assert_close(t, 0.0948, 5e-4);

        let t = crossing_time_closed_form(Family::Horodecki, 4.3, params(1.0, 1.0), ScenarioMode::Global)
            .unwrap()
            .unwrap();
        assert_close(t, base / 4.0, 1e-12);
        assert_close(t, 0.0711, 1e-4);
    }

    #[test]
    fn crossing_respects_rates() {
        // Doubling both rates halves the crossing time.
        let slow = crossing_time_closed_form(Family::Horodecki, 4.3, params(1.0, 1.0), ScenarioMode::Global)
            .unwrap()
            .unwrap();
        let fast = crossing_time_closed_form(Family::Horodecki, 4.3, params(2.0, 2.0), ScenarioMode::Global)
            .unwrap()
            .unwrap();
        assert_close(fast, slow / 2.0, 1e-12);
    }

    #[test]
    fn crossing_absent_cases() {
        let pr = params(1.0, 1.0);
        // Collective noise never kills the α-family negativity.
        assert!(crossing_time_closed_form(Family::Horodecki, 4.3, pr, ScenarioMode::Collective)
            .unwrap()
            .is_none());
        // α = 5: asymptotic approach, no finite crossing.
        assert!(crossing_time_closed_form(Family::Horodecki, 5.0, pr, ScenarioMode::Global)
            .unwrap()
            .is_none());
        // PPT at t = 0: no crossing exists.
        assert!(crossing_time_closed_form(Family::Horodecki, 3.0, pr, ScenarioMode::Global)
            .unwrap()
            .is_none());
        // Isotropic under collective noise: ξ₃ never moves.
        assert!(crossing_time_closed_form(Family::Isotropic, 0.5, pr, ScenarioMode::Collective)
            .unwrap()
            .is_none());
        // p = 1: candidates approach zero only asymptotically.
        assert!(crossing_time_closed_form(Family::Isotropic, 1.0, pr, ScenarioMode::MultiLocal)
            .unwrap()
            .is_none());
        // Below the NPT threshold.
        assert!(crossing_time_closed_form(Family::Isotropic, 0.2, pr, ScenarioMode::MultiLocal)
            .unwrap()
            .is_none());
    }

    #[test]
    fn isotropic_multilocal_crossing() {
        // 3p·e^(−Γ₁t) = 1 − p with p = 0.5, Γ₁ = 1: slower candidate
        // crosses at t = ln 3.
        let t = crossing_time_closed_form(Family::Isotropic, 0.5, params(1.0, 0.7), ScenarioMode::MultiLocal)
            .unwrap()
            .unwrap();
        assert_close(t, 3f64.ln(), 1e-12);
    }

    #[test]
    fn multilocal_eigenvalues_are_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let t = i as f64 * 0.02;
            let p = damping_profile(params(1.0, 0.0), t).unwrap();
            let s = horodecki_pt_eigenvalues(4.3, &p).unwrap();
            assert!(s.values[0] >= prev - 1e-14);
            prev = s.values[0];
        }
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let p0 = DampingProfile::identity();
        assert!(horodecki_pt_eigenvalues(1.0, &p0).is_err());
        assert!(rotated_pt_eigenvalues(5.5, &p0).is_err());
        assert!(isotropic_pt_eigenvalues(-0.1, &p0).is_err());
        assert!(crossing_time_closed_form(
            Family::Isotropic,
            1.5,
            params(1.0, 1.0),
            ScenarioMode::Global
        )
        .is_err());
    }
}
