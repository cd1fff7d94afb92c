//! Time sweeps, crossing-time extraction, and regime classification.
//!
//! A `Scenario` pairs a noise mode with its rate pair; the time axis is
//! the dimensionless Γt, with Γ the larger of the two rates the mode
//! actually applies. Crossing times of the entanglement signals come
//! from closed forms when the initial state is recognized as a family
//! member and from a coarse scan plus bisection otherwise.
//!
//! Example: `classify_regime(Family::Horodecki, 4.3, &scenario)` for a
//! multi-local scenario reports a bound-entanglement window where the
//! state is PPT while the realignment criterion still fires.

use crate::channel::{damping_matrix_map, damping_profile, DampingProfile, DecoherenceParams, ScenarioMode};
use crate::closed_form::{crossing_time_closed_form, Family};
use crate::error::{Error, Result};
use crate::measures::{ccnr, is_ppt, min_pt_eigenvalue, negativity_from_eigenvalues, pt_eigenvalues};
use crate::states::{horodecki_state_unchecked, isotropic_state_unchecked, rotated_state_unchecked, DensityMatrix};
use crate::tolerance::{
    BISECTION_MAX_ITER, CROSSING_REFINE_TOL, FAMILY_MATCH_TOL, PPT_TOL, SCAN_HORIZON, SCAN_SIGN_TOL,
    SCAN_STEP,
};

/// A noise mode together with the raw rate pair (Γ₁, Γ₂).
#[derive(Clone, Copy, Debug)]
pub struct Scenario {
    pub mode: ScenarioMode,
    pub decoherence: DecoherenceParams,
}

impl Scenario {
    pub fn new(mode: ScenarioMode, decoherence: DecoherenceParams) -> Self {
        Scenario { mode, decoherence }
    }

    /// The rates the mode actually applies (unused channels zeroed).
    pub fn effective(&self) -> DecoherenceParams {
        self.mode.effective_rates(self.decoherence)
    }

    /// Γ for the Γt axis: the larger of the two configured rates,
    /// independent of which channels the mode keeps. Zero means no
    /// decoherence is configured at all.
    pub fn reference_rate(&self) -> f64 {
        self.decoherence.gamma1.max(self.decoherence.gamma2)
    }

    /// Damping profile at a point on the Γt axis. A scenario with no
    /// active rate is frozen at the identity profile.
    pub fn profile_at(&self, gamma_t: f64) -> Result<DampingProfile> {
        if gamma_t < 0.0 || !gamma_t.is_finite() {
            return Err(Error::NegativeTime(gamma_t));
        }
        let rate = self.reference_rate();
        if rate == 0.0 {
            return Ok(DampingProfile::identity());
        }
        damping_profile(self.effective(), gamma_t / rate)
    }
}

/// One row of a sweep: the three signals at one Γt grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub gamma_t: f64,
    pub negativity: f64,
    pub ccnr_value: f64,
    pub min_pt_eigenvalue: f64,
}

/// Uniform grid of `steps` points from 0 to `t_max` inclusive.
pub fn linear_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::ParamRange {
            name: "t_max",
            value: t_max,
            range: "(0, inf)",
        });
    }
    if steps < 2 {
        return Err(Error::ParamRange {
            name: "steps",
            value: steps as f64,
            range: "[2, inf)",
        });
    }
    let h = t_max / (steps - 1) as f64;
    Ok((0..steps).map(|i| i as f64 * h).collect())
}

fn evolve_at(rho0: &DensityMatrix, scenario: &Scenario, gamma_t: f64) -> Result<DensityMatrix> {
    let profile = scenario.profile_at(gamma_t)?;
    damping_matrix_map(rho0, &profile)
}

/// Evaluates negativity, realignment value, and the smallest PT
/// eigenvalue along a strictly increasing Γt grid.
pub fn sweep(rho0: &DensityMatrix, scenario: &Scenario, grid: &[f64]) -> Result<Vec<SweepRecord>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut prev = f64::NEG_INFINITY;
    for &g in grid {
        if g < 0.0 || !g.is_finite() {
            return Err(Error::NegativeTime(g));
        }
        if g <= prev {
            return Err(Error::ParamRange {
                name: "grid",
                value: g,
                range: "strictly increasing",
            });
        }
        prev = g;
    }
    let mut records = Vec::with_capacity(grid.len());
    for &g in grid {
        let evolved = evolve_at(rho0, scenario, g)?;
        let eigs = pt_eigenvalues(&evolved)?;
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        records.push(SweepRecord {
            gamma_t: g,
            negativity: negativity_from_eigenvalues(&eigs),
            ccnr_value: ccnr(&evolved)?.value,
            min_pt_eigenvalue: min_eig,
        });
    }
    Ok(records)
}

/// Bisects a sign change of `f` on [lo, hi] down to width `tol`.
/// Requires f(lo) and f(hi) to have opposite signs (an endpoint value
/// of exactly zero returns that endpoint).
pub fn find_crossing<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::NoBracket { a: lo, b: hi });
    }
    let flo = f(lo)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    let fhi = f(hi)?;
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::NoBracket { a: lo, b: hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let lo_positive = flo > 0.0;
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(BISECTION_MAX_ITER))
}

/// How a scanned signal left (or failed to leave) its initial sign.
enum ScanOutcome {
    /// Never meaningfully on the watched side of zero.
    NeverOnSide,
    /// Crossed; refined crossing point in Γt.
    CrossedAt(f64),
    /// Still on the watched side at the scan horizon.
    AliveAtHorizon,
}

/// Scans `f` on the standard Γt grid and locates the last departure
/// from the side selected by `watch_negative`.
fn scan_last_crossing<F>(mut f: F, watch_negative: bool) -> Result<ScanOutcome>
where
    F: FnMut(f64) -> Result<f64>,
{
    let steps = (SCAN_HORIZON / SCAN_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| i as f64 * SCAN_STEP).collect();
    let sign = if watch_negative { -1.0 } else { 1.0 };
    // Work with g(x) = sign·f(x) so the watched side is always "positive".
    let values: Vec<f64> = {
        let mut v = Vec::with_capacity(grid.len());
        for &g in &grid {
            v.push(sign * f(g)?);
        }
        v
    };
    let last_on_side = values.iter().rposition(|&v| v > SCAN_SIGN_TOL);
    let i = match last_on_side {
        None => return Ok(ScanOutcome::NeverOnSide),
        Some(i) if i == grid.len() - 1 => return Ok(ScanOutcome::AliveAtHorizon),
        Some(i) => i,
    };
    // Find a strictly opposite-signed point to bracket against; the
    // signal may linger within ±SCAN_SIGN_TOL of zero for a few steps.
    match values[i + 1..].iter().position(|&v| v < -SCAN_SIGN_TOL) {
        Some(off) => {
            let j = i + 1 + off;
            let t = find_crossing(|x| Ok(sign * f(x)?), grid[i], grid[j], CROSSING_REFINE_TOL)?;
            Ok(ScanOutcome::CrossedAt(t))
        }
        // Settled onto zero without a clean sign flip; the first
        // on-zero grid point is the crossing at scan resolution.
        None => Ok(ScanOutcome::CrossedAt(grid[i + 1])),
    }
}

/// Entanglement-lifetime regimes on the Γt axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Negativity never reaches zero at finite time (or is zero from the start).
    NoEsd,
    /// Negativity dies but no later bound-entanglement window opens.
    EsdOnly,
    /// Negativity dies and the realignment criterion keeps firing for a while.
    DsdWindow,
    /// The signals did not fit any of the recognized patterns.
    Undetermined,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::NoEsd => "NoEsd",
            Regime::EsdOnly => "EsdOnly",
            Regime::DsdWindow => "DsdWindow",
            Regime::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

/// Classification result: crossing times are on the Γt axis.
#[derive(Clone, Debug)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Γt where negativity reaches zero, if it does.
    pub t_n: Option<f64>,
    /// Γt where the realignment criterion value reaches zero, if it does.
    pub t_r: Option<f64>,
    /// Γt interval where the state is PPT yet realignment-detected.
    pub bound_window: Option<(f64, f64)>,
    pub warnings: Vec<String>,
}

/// Tries to identify a 3⊗3 state as a member of one of the parameter
/// families by probing a characteristic diagonal entry and comparing
/// the reconstruction entrywise.
pub fn recognize_family(rho: &DensityMatrix) -> Option<(Family, f64)> {
    if rho.dim_a() != 3 || rho.dim_b() != 3 {
        return None;
    }
    let m = rho.matrix();
    let margin = 1e-9;

    let alpha = 21.0 * m[(7, 7)].re;
    if (2.0 - margin..=5.0 + margin).contains(&alpha) {
        let alpha = alpha.clamp(2.0, 5.0);
        if horodecki_state_unchecked(alpha).matrix().max_abs_diff(m) < FAMILY_MATCH_TOL {
            return Some((Family::Horodecki, alpha));
        }
    }
    let alpha = 21.0 * m[(8, 8)].re;
    if (2.0 - margin..=5.0 + margin).contains(&alpha) {
        let alpha = alpha.clamp(2.0, 5.0);
        if rotated_state_unchecked(alpha).matrix().max_abs_diff(m) < FAMILY_MATCH_TOL {
            return Some((Family::Rotated, alpha));
        }
    }
    let p = 1.0 - 9.0 * m[(1, 1)].re;
    if (-margin..=1.0 + margin).contains(&p) {
        let p = p.clamp(0.0, 1.0);
        if isotropic_state_unchecked(p).matrix().max_abs_diff(m) < FAMILY_MATCH_TOL {
            return Some((Family::Isotropic, p));
        }
    }
    None
}

fn build_family_state(family: Family, param: f64) -> Result<DensityMatrix> {
    match family {
        Family::Horodecki => crate::states::horodecki_state(param),
        Family::Rotated => crate::states::rotated_state(param),
        Family::Isotropic => crate::states::isotropic_state(param),
    }
}

/// Classifies a family state under a scenario using closed-form
/// negativity crossings plus the numeric realignment scan.
pub fn classify_regime(family: Family, param: f64, scenario: &Scenario) -> Result<RegimeReport> {
    let rho0 = build_family_state(family, param)?;
    analyze(&rho0, Some((family, param)), scenario)
}

/// Classifies an arbitrary 3⊗3 state, using closed forms when the
/// state is recognized as a family member and scans otherwise.
pub fn classify_state(rho0: &DensityMatrix, scenario: &Scenario) -> Result<RegimeReport> {
    analyze(rho0, recognize_family(rho0), scenario)
}

/// The PPT-but-realignment-detected Γt interval, if the scenario
/// produces one.
pub fn bound_window(rho0: &DensityMatrix, scenario: &Scenario) -> Result<Option<(f64, f64)>> {
    Ok(classify_state(rho0, scenario)?.bound_window)
}

fn analyze(
    rho0: &DensityMatrix,
    family: Option<(Family, f64)>,
    scenario: &Scenario,
) -> Result<RegimeReport> {
    if rho0.dim() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho0.dim(),
        });
    }
    let mut warnings = Vec::new();
    let min0 = min_pt_eigenvalue(rho0)?;
    let npt0 = min0 < -PPT_TOL;
    let ccnr0 = ccnr(rho0)?.value;
    let rate = scenario.reference_rate();

    // Negativity expiry time t_n (Γt units).
    let t_n = if !npt0 {
        warnings.push(match family {
            Some((Family::Horodecki | Family::Rotated, a)) if a <= 3.0 + 1e-12 => {
                "state is separable at t = 0; negativity is identically zero".to_string()
            }
            Some((Family::Horodecki | Family::Rotated, _)) => {
                "state is PPT at t = 0; any entanglement present is bound".to_string()
            }
            Some((Family::Isotropic, _)) => {
                "state is separable at t = 0; negativity is identically zero".to_string()
            }
            None => "state is PPT at t = 0".to_string(),
        });
        None
    } else if let Some((fam, param)) = family {
        let t_abs = crossing_time_closed_form(fam, param, scenario.decoherence, scenario.mode)?;
        match t_abs {
            Some(t) => Some(t * rate),
            None => {
                warnings.push(
                    "negativity stays positive for all finite times under this scenario"
                        .to_string(),
                );
                None
            }
        }
    } else {
        match scan_last_crossing(|g| min_pt_eigenvalue(&evolve_at(rho0, scenario, g)?), true)? {
            ScanOutcome::CrossedAt(t) => Some(t),
            ScanOutcome::AliveAtHorizon => {
                warnings.push(format!(
                    "state is still NPT at the scan horizon (gamma_t = {SCAN_HORIZON}); \
                     treating negativity as persistent"
                ));
                None
            }
            // Unreachable in practice: the t = 0 point is on the
            // negative side whenever npt0 holds.
            ScanOutcome::NeverOnSide => None,
        }
    };

    // Known discrepancy advisory: for the α = 4.3 state under global
    // noise at equal rates, a previously reported onset Γt of 0.1422
    // matches the multi-local decay exponents, not the global ones.
    if let Some((Family::Horodecki, a)) = family {
        let eff = scenario.effective();
        if scenario.mode == ScenarioMode::Global
            && (a - 4.3).abs() < 1e-6
            && eff.gamma1 > 0.0
            && (eff.gamma1 - eff.gamma2).abs() < 1e-12
        {
            let shown = t_n.map_or("none".to_string(), |t| format!("{t:.4}"));
            warnings.push(format!(
                "onset gamma_t = {shown} follows from the global decay exponents; a previously \
                 reported onset of 0.1422 for this configuration matches the multi-local \
                 exponents instead"
            ));
        }
    }

    // Realignment expiry time t_r (Γt units), always from the scan.
    let t_r = match scan_last_crossing(|g| Ok(ccnr(&evolve_at(rho0, scenario, g)?)?.value), false)? {
        ScanOutcome::CrossedAt(t) => Some(t),
        ScanOutcome::AliveAtHorizon => {
            warnings.push(format!(
                "realignment criterion value is still positive at the scan horizon \
                 (gamma_t = {SCAN_HORIZON})"
            ));
            None
        }
        ScanOutcome::NeverOnSide => {
            warnings.push(
                "realignment criterion value is non-positive from t = 0; it detects nothing \
                 for this state"
                    .to_string(),
            );
            None
        }
    };

    // Regime and bound-entanglement window.
    let mut bound_window = None;
    let regime = if npt0 {
        match t_n {
            None => Regime::NoEsd,
            Some(tn) => match t_r {
                Some(tr) if tr > tn => {
                    let mid = 0.5 * (tn + tr);
                    let rho_mid = evolve_at(rho0, scenario, mid)?;
                    let ppt_mid = is_ppt(&rho_mid, PPT_TOL)?;
                    let detected_mid = ccnr(&rho_mid)?.value > 0.0;
                    if ppt_mid && detected_mid {
                        bound_window = Some((tn, tr));
                        Regime::DsdWindow
                    } else {
                        warnings.push(format!(
                            "window midpoint gamma_t = {mid:.4} failed verification \
                             (PPT: {ppt_mid}, realignment positive: {detected_mid})"
                        ));
                        Regime::Undetermined
                    }
                }
                _ => Regime::EsdOnly,
            },
        }
    } else {
        // PPT from the start. If realignment fires anyway the state is
        // bound entangled until t_r.
        if ccnr0 > SCAN_SIGN_TOL {
            if let Some(tr) = t_r {
                bound_window = Some((0.0, tr));
                warnings.push(format!(
                    "state is PPT throughout; realignment detects bound entanglement until \
                     gamma_t = {tr:.4}"
                ));
            }
        }
        Regime::NoEsd
    };

    Ok(RegimeReport {
        regime,
        t_n,
        t_r,
        bound_window,
        warnings,
    })
}
