//! C ABI over the qutrit dephasing engine.
//!
//! Conventions: every function returns an `int32_t` status code
//! (`QDSD_OK` on success) and writes results through out-pointers.
//! Null pointers are tolerated and reported as `QDSD_ERR_NULL_POINTER`;
//! any non-null pointer must be valid for the access the header
//! documents. `qdsd_last_error` returns a thread-local message for the
//! most recent failure on the calling thread. States are opaque handles
//! created by the constructors and released with `qdsd_state_free`.
//! Times are measured on the Γt axis with Γ = max(gamma1, gamma2),
//! matching the command-line tool.

use qutrit_dsd::analysis::{classify_regime, classify_state, Regime, Scenario};
use qutrit_dsd::channel::{damping_matrix_map, DecoherenceParams, ScenarioMode};
use qutrit_dsd::closed_form::Family;
use qutrit_dsd::linalg::ComplexMatrix;
use qutrit_dsd::measures::{ccnr, is_ppt, min_pt_eigenvalue, negativity};
use qutrit_dsd::states::{
    horodecki_state, isotropic_state, max_entangled, rotated_state, DensityMatrix,
};
use qutrit_dsd::{Complex64, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Success.
pub const QDSD_OK: i32 = 0;
/// A required pointer was null.
pub const QDSD_ERR_NULL_POINTER: i32 = 1;
/// A parameter, code, or matrix failed validation.
pub const QDSD_ERR_INVALID_ARGUMENT: i32 = 2;
/// An iterative routine failed to converge, or an internal fault.
pub const QDSD_ERR_NUMERIC: i32 = 3;

/// Family codes accepted by the constructors and classifiers.
pub const QDSD_FAMILY_HORODECKI: i32 = 0;
pub const QDSD_FAMILY_ROTATED: i32 = 1;
pub const QDSD_FAMILY_ISOTROPIC: i32 = 2;

/// Noise-placement codes: which dephasing sources act.
pub const QDSD_MODE_GLOBAL: i32 = 0;
pub const QDSD_MODE_MULTILOCAL: i32 = 1;
pub const QDSD_MODE_COLLECTIVE: i32 = 2;

/// Regime codes reported by the classifiers.
pub const QDSD_REGIME_NO_ESD: i32 = 0;
pub const QDSD_REGIME_ESD_ONLY: i32 = 1;
pub const QDSD_REGIME_DSD_WINDOW: i32 = 2;
pub const QDSD_REGIME_UNDETERMINED: i32 = 3;

/// Opaque handle around a validated 3⊗3 density matrix.
pub struct QdsdState(DensityMatrix);

/// Classification result in C layout; `has_*` flags gate the values.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct QdsdRegimeReport {
    pub regime: i32,
    pub has_t_n: i32,
    pub t_n: f64,
    pub has_t_r: i32,
    pub t_r: f64,
    pub has_window: i32,
    pub window_lo: f64,
    pub window_hi: f64,
    pub warning_count: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(clean).unwrap_or_default());
}

fn fail(code: i32, msg: impl AsRef<str>) -> i32 {
    set_error(msg.as_ref());
    code
}

fn code_of(err: &Error) -> i32 {
    match err {
        Error::NoConvergence(_) => QDSD_ERR_NUMERIC,
        _ => QDSD_ERR_INVALID_ARGUMENT,
    }
}

fn guarded<F: FnOnce() -> i32>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => fail(QDSD_ERR_NUMERIC, "internal panic crossed the boundary"),
    }
}

fn family_of(code: i32) -> Option<Family> {
    match code {
        QDSD_FAMILY_HORODECKI => Some(Family::Horodecki),
        QDSD_FAMILY_ROTATED => Some(Family::Rotated),
        QDSD_FAMILY_ISOTROPIC => Some(Family::Isotropic),
        _ => None,
    }
}

fn mode_of(code: i32) -> Option<ScenarioMode> {
    match code {
        QDSD_MODE_GLOBAL => Some(ScenarioMode::Global),
        QDSD_MODE_MULTILOCAL => Some(ScenarioMode::MultiLocal),
        QDSD_MODE_COLLECTIVE => Some(ScenarioMode::Collective),
        _ => None,
    }
}

fn regime_code(regime: Regime) -> i32 {
    match regime {
        Regime::NoEsd => QDSD_REGIME_NO_ESD,
        Regime::EsdOnly => QDSD_REGIME_ESD_ONLY,
        Regime::DsdWindow => QDSD_REGIME_DSD_WINDOW,
        Regime::Undetermined => QDSD_REGIME_UNDETERMINED,
    }
}

fn scenario_of(mode: i32, gamma1: f64, gamma2: f64) -> Result<Scenario, i32> {
    let mode = mode_of(mode)
        .ok_or_else(|| fail(QDSD_ERR_INVALID_ARGUMENT, format!("unknown mode code {mode}")))?;
    let params = DecoherenceParams::new(gamma1, gamma2)
        .map_err(|e| fail(code_of(&e), e.to_string()))?;
    Ok(Scenario::new(mode, params))
}

/// Writes a freshly boxed state through `out`.
fn emit_state(out: *mut *mut QdsdState, state: DensityMatrix) -> i32 {
    if out.is_null() {
        return fail(QDSD_ERR_NULL_POINTER, "out pointer is null");
    }
    unsafe { *out = Box::into_raw(Box::new(QdsdState(state))) };
    QDSD_OK
}

unsafe fn state_ref<'a>(state: *const QdsdState) -> Result<&'a DensityMatrix, i32> {
    if state.is_null() {
        Err(fail(QDSD_ERR_NULL_POINTER, "state handle is null"))
    } else {
        Ok(&(*state).0)
    }
}

/// Thread-local message for the most recent failure; empty when none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn qdsd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Constructs a family state: alpha in [2, 5] or mixing weight in [0, 1].
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_family(
    family: i32,
    param: f64,
    out: *mut *mut QdsdState,
) -> i32 {
    guarded(|| {
        let built = match family_of(family) {
            Some(Family::Horodecki) => horodecki_state(param),
            Some(Family::Rotated) => rotated_state(param),
            Some(Family::Isotropic) => isotropic_state(param),
            None => return fail(QDSD_ERR_INVALID_ARGUMENT, format!("unknown family code {family}")),
        };
        match built {
            Ok(state) => emit_state(out, state),
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}

/// Constructs the maximally entangled two-qutrit state.
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_max_entangled(out: *mut *mut QdsdState) -> i32 {
    guarded(|| match max_entangled(3) {
        Ok(state) => emit_state(out, state),
        Err(e) => fail(code_of(&e), e.to_string()),
    })
}

/// Builds a state from 81 row-major complex entries as 162 doubles
/// (re, im interleaved); the matrix must pass density validation.
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_from_elements(
    re_im: *const f64,
    out: *mut *mut QdsdState,
) -> i32 {
    guarded(|| {
        if re_im.is_null() {
            return fail(QDSD_ERR_NULL_POINTER, "element pointer is null");
        }
        let raw = std::slice::from_raw_parts(re_im, 162);
        let m = ComplexMatrix::from_fn(9, |r, c| {
            let k = 2 * (9 * r + c);
            Complex64::new(raw[k], raw[k + 1])
        });
        match DensityMatrix::new(3, 3, m) {
            Ok(state) => emit_state(out, state),
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}

/// Deep-copies a handle.
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_clone(
    state: *const QdsdState,
    out: *mut *mut QdsdState,
) -> i32 {
    guarded(|| match state_ref(state) {
        Ok(rho) => emit_state(out, rho.clone()),
        Err(code) => code,
    })
}

/// Releases a handle; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_free(state: *mut QdsdState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Composite dimension of the handle (always 9), or -1 on null.
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_dim(state: *const QdsdState) -> i32 {
    match state_ref(state) {
        Ok(rho) => rho.dim() as i32,
        Err(_) => -1,
    }
}

/// Reads one matrix entry into `re`/`im`.
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_element(
    state: *const QdsdState,
    row: i32,
    col: i32,
    re: *mut f64,
    im: *mut f64,
) -> i32 {
    guarded(|| {
        let rho = match state_ref(state) {
            Ok(rho) => rho,
            Err(code) => return code,
        };
        if re.is_null() || im.is_null() {
            return fail(QDSD_ERR_NULL_POINTER, "output pointer is null");
        }
        if !(0..9).contains(&row) || !(0..9).contains(&col) {
            return fail(
                QDSD_ERR_INVALID_ARGUMENT,
                format!("index ({row}, {col}) outside the 9x9 matrix"),
            );
        }
        let v = rho.matrix()[(row as usize, col as usize)];
        *re = v.re;
        *im = v.im;
        QDSD_OK
    })
}

/// Writes all 81 entries as 162 row-major doubles (re, im interleaved).
#[no_mangle]
pub unsafe extern "C" fn qdsd_state_to_elements(state: *const QdsdState, re_im: *mut f64) -> i32 {
    guarded(|| {
        let rho = match state_ref(state) {
            Ok(rho) => rho,
            Err(code) => return code,
        };
        if re_im.is_null() {
            return fail(QDSD_ERR_NULL_POINTER, "element pointer is null");
        }
        let raw = std::slice::from_raw_parts_mut(re_im, 162);
        for r in 0..9 {
            for c in 0..9 {
                let v = rho.matrix()[(r, c)];
                let k = 2 * (9 * r + c);
                raw[k] = v.re;
                raw[k + 1] = v.im;
            }
        }
        QDSD_OK
    })
}

/// Evolves a state to `gamma_t` under the given noise placement and
/// rates, writing a new handle; the input handle is untouched.
#[no_mangle]
pub unsafe extern "C" fn qdsd_evolve(
    state: *const QdsdState,
    mode: i32,
    gamma1: f64,
    gamma2: f64,
    gamma_t: f64,
    out: *mut *mut QdsdState,
) -> i32 {
    guarded(|| {
        let rho = match state_ref(state) {
            Ok(rho) => rho,
            Err(code) => return code,
        };
        let scenario = match scenario_of(mode, gamma1, gamma2) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let profile = match scenario.profile_at(gamma_t) {
            Ok(p) => p,
            Err(e) => return fail(code_of(&e), e.to_string()),
        };
        match damping_matrix_map(rho, &profile) {
            Ok(evolved) => emit_state(out, evolved),
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}

fn measure_into(
    state: *const QdsdState,
    out: *mut f64,
    f: impl Fn(&DensityMatrix) -> qutrit_dsd::Result<f64>,
) -> i32 {
    guarded(|| {
        let rho = match unsafe { state_ref(state) } {
            Ok(rho) => rho,
            Err(code) => return code,
        };
        if out.is_null() {
            return fail(QDSD_ERR_NULL_POINTER, "output pointer is null");
        }
        match f(rho) {
            Ok(v) => {
                unsafe { *out = v };
                QDSD_OK
            }
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}

/// Negativity: absolute sum of negative PT eigenvalues.
#[no_mangle]
pub unsafe extern "C" fn qdsd_negativity(state: *const QdsdState, out: *mut f64) -> i32 {
    measure_into(state, out, negativity)
}

/// Realignment criterion value: trace norm of the realigned matrix
/// minus one; positive detects entanglement.
#[no_mangle]
pub unsafe extern "C" fn qdsd_ccnr_value(state: *const QdsdState, out: *mut f64) -> i32 {
    measure_into(state, out, |rho| ccnr(rho).map(|r| r.value))
}

/// Smallest partial-transpose eigenvalue.
#[no_mangle]
pub unsafe extern "C" fn qdsd_min_pt_eigenvalue(state: *const QdsdState, out: *mut f64) -> i32 {
    measure_into(state, out, min_pt_eigenvalue)
}

/// Writes 1 when the partial transpose is positive within `tol`, else 0.
#[no_mangle]
pub unsafe extern "C" fn qdsd_is_ppt(state: *const QdsdState, tol: f64, out: *mut i32) -> i32 {
    guarded(|| {
        let rho = match state_ref(state) {
            Ok(rho) => rho,
            Err(code) => return code,
        };
        if out.is_null() {
            return fail(QDSD_ERR_NULL_POINTER, "output pointer is null");
        }
        match is_ppt(rho, tol) {
            Ok(v) => {
                *out = v as i32;
                QDSD_OK
            }
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}

fn fill_report(out: *mut QdsdRegimeReport, report: qutrit_dsd::analysis::RegimeReport) -> i32 {
    if out.is_null() {
        return fail(QDSD_ERR_NULL_POINTER, "report pointer is null");
    }
    let mut filled = QdsdRegimeReport {
        regime: regime_code(report.regime),
        warning_count: report.warnings.len() as i32,
        ..Default::default()
    };
    if let Some(t) = report.t_n {
        filled.has_t_n = 1;
        filled.t_n = t;
    }
    if let Some(t) = report.t_r {
        filled.has_t_r = 1;
        filled.t_r = t;
    }
    if let Some((lo, hi)) = report.bound_window {
        filled.has_window = 1;
        filled.window_lo = lo;
        filled.window_hi = hi;
    }
    unsafe { *out = filled };
    QDSD_OK
}

/// Classifies a parameter-family state under the given scenario.
#[no_mangle]
pub unsafe extern "C" fn qdsd_classify_family(
    family: i32,
    param: f64,
    mode: i32,
    gamma1: f64,
    gamma2: f64,
    out: *mut QdsdRegimeReport,
) -> i32 {
    guarded(|| {
        let family = match family_of(family) {
            Some(f) => f,
            None => return fail(QDSD_ERR_INVALID_ARGUMENT, format!("unknown family code {family}")),
        };
        let scenario = match scenario_of(mode, gamma1, gamma2) {
            Ok(s) => s,
            Err(code) => return code,
        };
        match classify_regime(family, param, &scenario) {
            Ok(report) => fill_report(out, report),
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}

/// Classifies an arbitrary handle, recognizing family members when the
/// entries match one.
#[no_mangle]
pub unsafe extern "C" fn qdsd_classify_state(
    state: *const QdsdState,
    mode: i32,
    gamma1: f64,
    gamma2: f64,
    out: *mut QdsdRegimeReport,
) -> i32 {
    guarded(|| {
        let rho = match state_ref(state) {
            Ok(rho) => rho,
            Err(code) => return code,
        };
        let scenario = match scenario_of(mode, gamma1, gamma2) {
            Ok(s) => s,
            Err(code) => return code,
        };
        match classify_state(rho, &scenario) {
            Ok(report) => fill_report(out, report),
            Err(e) => fail(code_of(&e), e.to_string()),
        }
    })
}
