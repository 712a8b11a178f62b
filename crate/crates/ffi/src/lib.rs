//! C ABI for `pbent`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free`. Fallible functions return a [`PbStatus`] and
//! write results through out-pointers; on failure the message is available
//! from [`pb_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;
use std::sync::Arc;

use pbent::construct::ternary_example::{self, Reading};
use pbent::gf::{default_field, make_field, FieldSpec};
use pbent::pfunc::ptt::Ptt;
use pbent::pfunc::{Space, VPFunc};
use pbent::spectral::{vectorial_classify, VectorialReport};
use pbent::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidField = 3,
    Parse = 4,
    Io = 5,
    PreconditionFailed = 6,
    VerificationFailed = 7,
    Panic = 99,
}

/// GF(p^k) with a fixed modulus.
pub struct PbField {
    spec: Arc<FieldSpec>,
}

/// A vectorial function GF(p^n) → GF(p^m) over default moduli.
pub struct PbVecFunc {
    f: VPFunc,
}

/// A vectorial classification.
pub struct PbReport {
    report: VectorialReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::NotPrime(_) | Error::ReducibleModulus | Error::InvalidModulus(_) => PbStatus::InvalidField,
        Error::Parse { .. } | Error::Json(_) | Error::InvalidManifest(_) => PbStatus::Parse,
        Error::Io(_) => PbStatus::Io,
        Error::PreconditionFailed(_) | Error::HNotPlateaued => PbStatus::PreconditionFailed,
        Error::PostVerificationFailed(_) => PbStatus::VerificationFailed,
        _ => PbStatus::InvalidArgument,
    }
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), (PbStatus, String)>) -> PbStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(body)) {
        Ok(Ok(())) => PbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PbStatus::Panic
        }
    }
}

fn lib(e: Error) -> (PbStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PbStatus, String) {
    (PbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out<T>(slot: *mut T, value: T, what: &str) -> Result<(), (PbStatus, String)> {
    if slot.is_null() {
        return Err(null(what));
    }
    slot.write(value);
    Ok(())
}

unsafe fn path_arg(path: *const c_char) -> Result<PathBuf, (PbStatus, String)> {
    if path.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| (PbStatus::InvalidArgument, "path is not UTF-8".to_string()))?;
    Ok(PathBuf::from(s))
}

/// The message of the last failed call on this thread, or NULL. Free the
/// result with [`pb_string_free`].
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version; static storage, do not free.
#[no_mangle]
pub extern "C" fn pb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// GF(p^k) over `modulus` (k + 1 coefficients, constant term first, monic).
///
/// # Safety
/// `modulus` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_field_new(
    p: u32,
    modulus: *const u32,
    len: usize,
    out_field: *mut *mut PbField,
) -> PbStatus {
    guard(|| {
        if modulus.is_null() {
            return Err(null("modulus"));
        }
        let coeffs = std::slice::from_raw_parts(modulus, len);
        let spec = make_field(p, coeffs).map_err(lib)?;
        out(out_field, Box::into_raw(Box::new(PbField { spec })), "out_field")
    })
}

/// GF(p^k) over the least irreducible monic modulus.
///
/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_field_default(p: u32, k: usize, out_field: *mut *mut PbField) -> PbStatus {
    guard(|| {
        let spec = default_field(p, k).map_err(lib)?;
        out(out_field, Box::into_raw(Box::new(PbField { spec })), "out_field")
    })
}

/// # Safety
/// `field` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_field_free(field: *mut PbField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of elements, or 0 for NULL.
///
/// # Safety
/// `field` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_field_order(field: *const PbField) -> u32 {
    field.as_ref().map_or(0, |f| f.spec.order())
}

unsafe fn field_op(
    field: *const PbField,
    args: &[u32],
    result: *mut u32,
    op: impl FnOnce(&FieldSpec) -> u32,
) -> PbStatus {
    guard(|| {
        let f = field.as_ref().ok_or_else(|| null("field"))?;
        if let Some(&a) = args.iter().find(|&&a| a >= f.spec.order()) {
            return Err((PbStatus::InvalidArgument, format!("element {a} out of range")));
        }
        out(result, op(&f.spec), "result")
    })
}

/// Product of two elements given by canonical index.
///
/// # Safety
/// `field` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_field_mul(field: *const PbField, a: u32, b: u32, result: *mut u32) -> PbStatus {
    field_op(field, &[a, b], result, |f| f.mul_idx(a, b))
}

/// # Safety
/// `field` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_field_add(field: *const PbField, a: u32, b: u32, result: *mut u32) -> PbStatus {
    field_op(field, &[a, b], result, |f| f.add_idx(a, b))
}

/// Absolute trace into F_p.
///
/// # Safety
/// `field` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_field_trace(field: *const PbField, a: u32, result: *mut u32) -> PbStatus {
    field_op(field, &[a], result, |f| f.trace_idx(a))
}

/// A function GF(p^n) → GF(p^m) from its table of p^n codomain indices.
///
/// # Safety
/// `table` must point to `len` values; `out_func` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_vfunc_from_table(
    p: u32,
    n: usize,
    m: usize,
    table: *const u32,
    len: usize,
    out_func: *mut *mut PbVecFunc,
) -> PbStatus {
    guard(|| {
        if table.is_null() {
            return Err(null("table"));
        }
        let values = std::slice::from_raw_parts(table, len).to_vec();
        let dom = Space::default_field(p, n).map_err(lib)?;
        let cod = Space::default_field(p, m).map_err(lib)?;
        let f = VPFunc::new(&dom, &cod, values).map_err(lib)?;
        out(out_func, Box::into_raw(Box::new(PbVecFunc { f })), "out_func")
    })
}

/// Reads a `.ptt` truth table.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_func` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_vfunc_read_ptt(path: *const c_char, out_func: *mut *mut PbVecFunc) -> PbStatus {
    guard(|| {
        let t = Ptt::read(path_arg(path)?).map_err(lib)?;
        let dom = Space::default_field(t.p, t.n).map_err(lib)?;
        let cod = Space::default_field(t.p, t.m).map_err(lib)?;
        let f = t.to_vpfunc(&dom, &cod).map_err(lib)?;
        out(out_func, Box::into_raw(Box::new(PbVecFunc { f })), "out_func")
    })
}

/// # Safety
/// `func` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pb_vfunc_write_ptt(func: *const PbVecFunc, path: *const c_char) -> PbStatus {
    guard(|| {
        let f = func.as_ref().ok_or_else(|| null("func"))?;
        Ptt::from_vpfunc(&f.f).write(path_arg(path)?).map_err(lib)
    })
}

/// # Safety
/// `func` must be a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_vfunc_eval(func: *const PbVecFunc, x: u32, result: *mut u32) -> PbStatus {
    guard(|| {
        let f = func.as_ref().ok_or_else(|| null("func"))?;
        f.f.domain().check_index(x).map_err(lib)?;
        out(result, f.f.eval(x), "result")
    })
}

/// # Safety
/// `func` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_vfunc_free(func: *mut PbVecFunc) {
    if !func.is_null() {
        drop(Box::from_raw(func));
    }
}

/// Classifies every component.
///
/// # Safety
/// `func` must be a live handle; `out_report` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_classify(func: *const PbVecFunc, out_report: *mut *mut PbReport) -> PbStatus {
    guard(|| {
        let f = func.as_ref().ok_or_else(|| null("func"))?;
        let report = vectorial_classify(&f.f).map_err(lib)?;
        out(out_report, Box::into_raw(Box::new(PbReport { report })), "out_report")
    })
}

/// Builds and classifies the ternary (8, 4) example; `reading` 0 is the
/// U-consistent reading, 1 the literal formula.
///
/// # Safety
/// `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_reproduce_example(reading: u32, out_report: *mut *mut PbReport) -> PbStatus {
    guard(|| {
        let r = match reading {
            0 => Reading::UConsistent,
            1 => Reading::Literal,
            _ => return Err((PbStatus::InvalidArgument, format!("unknown reading {reading}"))),
        };
        let setup = ternary_example::setup().map_err(lib)?;
        let c = ternary_example::build(&setup, r).map_err(lib)?;
        let report = c.report.expect("built with verification");
        out(out_report, Box::into_raw(Box::new(PbReport { report })), "out_report")
    })
}

/// # Safety
/// `report` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_report_free(report: *mut PbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// 1 if every component is weakly regular bent, 0 otherwise or for NULL.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_report_weakly_regular(report: *const PbReport) -> i32 {
    report.as_ref().is_some_and(|r| r.report.vectorial_weakly_regular) as i32
}

/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_report_bent(report: *const PbReport) -> i32 {
    report.as_ref().is_some_and(|r| r.report.vectorial_bent) as i32
}

/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_report_component_count(report: *const PbReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.components.len())
}

/// Component `i` in ascending λ order. `epsilon` receives 0 when the
/// component is not weakly regular.
///
/// # Safety
/// `report` must be a live handle; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pb_report_component(
    report: *const PbReport,
    i: usize,
    lambda: *mut u32,
    weakly_regular: *mut i32,
    epsilon: *mut i32,
) -> PbStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let c = r
            .report
            .components
            .get(i)
            .ok_or_else(|| (PbStatus::InvalidArgument, format!("component {i} out of range")))?;
        out(lambda, c.lambda_index, "lambda")?;
        out(weakly_regular, c.regularity.weakly_regular as i32, "weakly_regular")?;
        out(epsilon, c.regularity.epsilon.unwrap_or(0) as i32, "epsilon")
    })
}

/// The JSON report; free with [`pb_string_free`]. NULL for a NULL handle.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pb_report_json(report: *const PbReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => CString::new(r.report.to_json().to_string())
            .expect("JSON has no NUL")
            .into_raw(),
        None => ptr::null_mut(),
    }
}
