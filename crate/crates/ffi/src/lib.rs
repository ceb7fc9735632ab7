//! C ABI over the `livshift` library.
//!
//! Tensors are opaque handles created by the `liv_tensor_*` constructors and
//! released with [`liv_tensor_free`]. Every fallible call returns a
//! [`LivStatus`]; on failure [`liv_last_error`] describes the problem.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use livshift::bounds::{bound_table, AccuracyRecord, Model};
use livshift::config::Constants;
use livshift::fields::{electric_field, scalar_potential, PointCharge};
use livshift::helium::{helium_ground_shift, HeliumConfig};
use livshift::hydrogenic::{HydrogenicState, QuantumNumbers};
use livshift::perturbation::{hydrogen_shift_diagonal, permanent_stark_shift, spin_orbit_shift, ShiftResult};
use livshift::tensor::{KappaMatrix, TensorFile};
use livshift::{Error, KfTensor};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LivStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidTensor = 3,
    ComputationFailed = 4,
    NotConverged = 5,
    Panic = 6,
}

/// Opaque coefficient tensor.
pub struct LivTensor(KfTensor);

/// One energy shift in Hartree.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LivShift {
    pub value_hartree: f64,
    pub error_estimate: f64,
    /// Only meaningful when `has_reference` is set.
    pub reference_value_hartree: f64,
    pub has_reference: bool,
    pub discrepancy_flag: bool,
}

impl From<&ShiftResult> for LivShift {
    fn from(r: &ShiftResult) -> Self {
        Self {
            value_hartree: r.value_hartree,
            error_estimate: r.error_estimate,
            reference_value_hartree: r.paper_formula_value_hartree.unwrap_or(0.0),
            has_reference: r.paper_formula_value_hartree.is_some(),
            discrepancy_flag: r.discrepancy_flag,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LivStatus {
    match e {
        Error::IndexOutOfRange(_)
        | Error::SymmetryConflict { .. }
        | Error::MagnitudeTooLarge(_)
        | Error::NonFinite(_)
        | Error::AsymmetricKappa(..) => LivStatus::InvalidTensor,
        Error::InvalidQuantumNumbers(_)
        | Error::InvalidConfig(_)
        | Error::InvalidAccuracy(_)
        | Error::InvalidSource(_)
        | Error::CoincidentPoints => LivStatus::InvalidArgument,
        Error::MonteCarloNotConverged { .. } | Error::QuadratureNotConverged(_) => LivStatus::NotConverged,
        _ => LivStatus::ComputationFailed,
    }
}

/// Runs `f`, recording any error or panic.
fn guard<F: FnOnce() -> Result<(), (LivStatus, String)>>(f: F) -> LivStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LivStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            LivStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (LivStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (LivStatus, String) {
    (LivStatus::NullPointer, format!("{name} is null"))
}

unsafe fn tensor_ref<'a>(t: *const LivTensor) -> Result<&'a KfTensor, (LivStatus, String)> {
    // SAFETY: caller passes a handle from a liv_tensor_* constructor or null.
    unsafe { t.as_ref() }.map(|t| &t.0).ok_or_else(|| null("tensor"))
}

unsafe fn store_tensor(out: *mut *mut LivTensor, t: KfTensor) -> Result<(), (LivStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: checked non-null; caller guarantees it is writable.
    unsafe { *out = Box::into_raw(Box::new(LivTensor(t))) };
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn liv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Tensor with `(K_F)_{0j0k} = k` for all spatial `j, k`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn liv_tensor_uniform(k: f64, out: *mut *mut LivTensor) -> LivStatus {
    guard(|| {
        let t = KfTensor::uniform(k).map_err(lib_err)?;
        unsafe { store_tensor(out, t) }
    })
}

/// Tensor from a row-major symmetric 3×3 `κ`.
///
/// # Safety
/// `kappa` must point to 9 readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_tensor_from_kappa(kappa: *const f64, out: *mut *mut LivTensor) -> LivStatus {
    guard(|| {
        if kappa.is_null() {
            return Err(null("kappa"));
        }
        // SAFETY: caller guarantees 9 readable doubles.
        let v = unsafe { std::slice::from_raw_parts(kappa, 9) };
        let rows = [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]];
        let k = KappaMatrix::new(rows).map_err(lib_err)?;
        unsafe { store_tensor(out, KfTensor::from_kappa(&k)) }
    })
}

/// Tensor from JSON text with one of the keys `uniform`, `kappa`, `components`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_tensor_from_json(json: *const c_char, out: *mut *mut LivTensor) -> LivStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        // SAFETY: caller guarantees a NUL-terminated string.
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|e| (LivStatus::InvalidArgument, format!("json is not UTF-8: {e}")))?;
        let file = TensorFile::from_json(text)
            .map_err(|e| (LivStatus::InvalidTensor, format!("malformed tensor JSON: {e}")))?;
        let t = file.build().map_err(lib_err)?;
        unsafe { store_tensor(out, t) }
    })
}

/// Releases a tensor. Null is ignored.
///
/// # Safety
/// `t` must come from a `liv_tensor_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn liv_tensor_free(t: *mut LivTensor) {
    if !t.is_null() {
        // SAFETY: pointer was produced by Box::into_raw in store_tensor.
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Component `(K_F)_{abcd}` with symmetry sign applied.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_tensor_get(
    t: *const LivTensor,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    out: *mut f64,
) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = t
            .try_get([a as usize, b as usize, c as usize, d as usize])
            .map_err(lib_err)?;
        unsafe { *out = v };
        Ok(())
    })
}

unsafe fn read_point(x: *const f64) -> Result<[f64; 3], (LivStatus, String)> {
    if x.is_null() {
        return Err(null("x"));
    }
    // SAFETY: caller guarantees 3 readable doubles.
    let v = unsafe { std::slice::from_raw_parts(x, 3) };
    Ok([v[0], v[1], v[2]])
}

/// `A₀` of a charge `q` at the origin, evaluated at `x`.
///
/// # Safety
/// `x` must point to 3 doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_scalar_potential(t: *const LivTensor, q: f64, x: *const f64, out: *mut f64) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        let x = unsafe { read_point(x) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = scalar_potential(&x, &PointCharge::at_origin(q), t).map_err(lib_err)?;
        unsafe { *out = v };
        Ok(())
    })
}

/// Electric field of a charge `q` at the origin, evaluated at `x`.
///
/// # Safety
/// `x` must point to 3 doubles; `out` must point to 3 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn liv_electric_field(t: *const LivTensor, q: f64, x: *const f64, out: *mut f64) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        let x = unsafe { read_point(x) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let e = electric_field(&x, &PointCharge::at_origin(q), t).map_err(lib_err)?;
        // SAFETY: caller guarantees 3 writable doubles.
        unsafe { std::slice::from_raw_parts_mut(out, 3) }.copy_from_slice(&e);
        Ok(())
    })
}

fn level(z: f64, n: u32, l: u32, m: i32, twice_j: Option<u32>) -> Result<HydrogenicState, (LivStatus, String)> {
    let mut qn = QuantumNumbers::new(n, l, m).map_err(lib_err)?;
    if let Some(tj) = twice_j {
        qn = qn.with_twice_j(tj).map_err(lib_err)?;
    }
    HydrogenicState::new(z, qn).map_err(lib_err)
}

unsafe fn store_shift(out: *mut LivShift, r: livshift::Result<ShiftResult>) -> Result<(), (LivStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let r = r.map_err(lib_err)?;
    // SAFETY: checked non-null; caller guarantees it is writable.
    unsafe { *out = LivShift::from(&r) };
    Ok(())
}

/// Diagonal shift of a hydrogen-like level from the modified Coulomb potential.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_hydrogen_shift(
    t: *const LivTensor,
    z: f64,
    n: u32,
    l: u32,
    m: i32,
    out: *mut LivShift,
) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        let s = level(z, n, l, m, None)?;
        unsafe { store_shift(out, hydrogen_shift_diagonal(&s, t)) }
    })
}

/// Shift from the tensor-dependent part of the internal electric field.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_stark_shift(
    t: *const LivTensor,
    z: f64,
    n: u32,
    l: u32,
    m: i32,
    out: *mut LivShift,
) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        let s = level(z, n, l, m, None)?;
        unsafe { store_shift(out, permanent_stark_shift(&s, t)) }
    })
}

/// Spin-orbit shift of level `(n, l, j = twice_j/2)`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_spin_orbit_shift(
    t: *const LivTensor,
    z: f64,
    n: u32,
    l: u32,
    m: i32,
    twice_j: u32,
    out: *mut LivShift,
) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        let s = level(z, n, l, m, (l > 0).then_some(twice_j))?;
        unsafe { store_shift(out, spin_orbit_shift(&s, t)) }
    })
}

/// Helium-like ground-state shift; the electron-electron term uses
/// `mc_samples` Monte Carlo draws from `seed`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_helium_shift(
    t: *const LivTensor,
    z: f64,
    mc_samples: u64,
    seed: u64,
    out: *mut LivShift,
) -> LivStatus {
    guard(|| {
        let t = unsafe { tensor_ref(t) }?;
        let cfg = HeliumConfig {
            z,
            mc_samples,
            seed,
            ..Default::default()
        };
        unsafe { store_shift(out, helium_ground_shift(&cfg, t)) }
    })
}

/// Bound table as JSON. Release the string with [`liv_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn liv_bound_table_json(
    accuracy_ev: f64,
    mc_samples: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> LivStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let acc = AccuracyRecord::hydrogen_maser(accuracy_ev).map_err(lib_err)?;
        let he = HeliumConfig {
            mc_samples,
            seed,
            ..Default::default()
        };
        let rows = bound_table(&acc, Model::Computed, &Constants::default(), he).map_err(lib_err)?;
        let text = serde_json::to_string(&rows).map_err(|e| (LivStatus::ComputationFailed, e.to_string()))?;
        let c = CString::new(text).map_err(|e| (LivStatus::ComputationFailed, e.to_string()))?;
        unsafe { *out = c.into_raw() };
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn liv_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}
