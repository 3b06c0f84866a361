//! C interface to `polyseq`.
//!
//! Values come back as opaque handles that the caller releases with the
//! matching `*_free` function. Every entry point returns a [`PolyseqStatus`];
//! on failure [`polyseq_last_error`] describes what went wrong on the calling
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polyseq::congruence::{verify, IdentityId, Params, Report, VerifyError};
use polyseq::families::{Family, FamilyError, FamilyIndex};
use polyseq::rational::format_rational;
use polyseq::sequences::{stirling1, stirling2};
use polyseq::symmetrized::{sym_poly_bernoulli, sym_polycosecant, SymBernoulliMethod, SymCosecantMethod};
use polyseq::Rational;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyseqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    UnknownIdentity = 4,
    HypothesisViolation = 5,
    ComputeError = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyseqFamily {
    PolyBernoulliB = 0,
    PolyBernoulliC = 1,
    Polycosecant = 2,
    Polycotangent = 3,
    TildeCosecant = 4,
}

impl From<PolyseqFamily> for Family {
    fn from(f: PolyseqFamily) -> Self {
        match f {
            PolyseqFamily::PolyBernoulliB => Family::PolyB,
            PolyseqFamily::PolyBernoulliC => Family::PolyC,
            PolyseqFamily::Polycosecant => Family::Cosecant,
            PolyseqFamily::Polycotangent => Family::Cotangent,
            PolyseqFamily::TildeCosecant => Family::TildeD,
        }
    }
}

/// An exact rational number.
pub struct PolyseqRational(Rational);

/// The outcome of an identity check.
pub struct PolyseqReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PolyseqStatus, String);

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure(PolyseqStatus::ComputeError, e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        let status = match e {
            VerifyError::UnknownIdentity(_) => PolyseqStatus::UnknownIdentity,
            VerifyError::HypothesisViolation { .. } => PolyseqStatus::HypothesisViolation,
            VerifyError::Compute { .. } => PolyseqStatus::ComputeError,
            _ => PolyseqStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PolyseqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PolyseqStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {message}"));
            PolyseqStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(PolyseqStatus::NullPointer, "null pointer argument".to_string())
}

fn index(name: &str, value: i64) -> Result<usize, Failure> {
    usize::try_from(value).map_err(|_| Failure(PolyseqStatus::InvalidArgument, format!("{name} must be >= 0, got {value}")))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(PolyseqStatus::InvalidUtf8, e.to_string()))
}

unsafe fn emit_rational(out: *mut *mut PolyseqRational, f: impl FnOnce() -> Result<Rational, Failure>) -> PolyseqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let value = f()?;
        *out = Box::into_raw(Box::new(PolyseqRational(value)));
        Ok(())
    })
}

/// Writes the value of `family` at order `n` and weight `k` to `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn polyseq_family_value(
    family: PolyseqFamily,
    n: i64,
    k: i64,
    out: *mut *mut PolyseqRational,
) -> PolyseqStatus {
    emit_rational(out, || Ok(FamilyIndex::new(family.into(), index("n", n)?, k).value()?))
}

/// `B_n^{(k)}`.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_poly_bernoulli(n: i64, k: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    polyseq_family_value(PolyseqFamily::PolyBernoulliB, n, k, out)
}

/// `C_n^{(k)}`.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_poly_bernoulli_c(n: i64, k: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    polyseq_family_value(PolyseqFamily::PolyBernoulliC, n, k, out)
}

/// `D_n^{(k)}`.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_polycosecant(n: i64, k: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    polyseq_family_value(PolyseqFamily::Polycosecant, n, k, out)
}

/// `β_n^{(k)}`.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_polycotangent(n: i64, k: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    polyseq_family_value(PolyseqFamily::Polycotangent, n, k, out)
}

/// Symmetrized poly-Bernoulli number `ℬ_m^{(-l)}(n)`.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_sym_poly_bernoulli(m: i64, l: i64, n: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    emit_rational(out, || {
        Ok(sym_poly_bernoulli(index("m", m)?, index("l", l)?, index("n", n)?, SymBernoulliMethod::ClosedForm)?)
    })
}

/// Symmetrized polycosecant number `𝒟_m^{(-l)}(n)`.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_sym_polycosecant(m: i64, l: i64, n: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    emit_rational(out, || {
        Ok(sym_polycosecant(index("m", m)?, index("l", l)?, index("n", n)?, SymCosecantMethod::ClosedForm)?)
    })
}

/// Stirling number of the second kind when `kind` is 2, unsigned first kind when `kind` is 1.
///
/// # Safety
/// See [`polyseq_family_value`].
#[no_mangle]
pub unsafe extern "C" fn polyseq_stirling(kind: i32, n: i64, m: i64, out: *mut *mut PolyseqRational) -> PolyseqStatus {
    emit_rational(out, || {
        let (n, m) = (index("n", n)?, index("m", m)?);
        let value = match kind {
            1 => stirling1(n, m),
            2 => stirling2(n, m),
            _ => return Err(Failure(PolyseqStatus::InvalidArgument, format!("kind must be 1 or 2, got {kind}"))),
        };
        Ok(Rational::from_integer(value))
    })
}

/// Renders `value` as `a` or `a/b`. Release the string with [`polyseq_string_free`].
///
/// # Safety
/// `value` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyseq_rational_to_string(value: *const PolyseqRational, out: *mut *mut c_char) -> PolyseqStatus {
    guard(|| {
        if value.is_null() || out.is_null() {
            return Err(null());
        }
        *out = CString::new(format_rational(&(*value).0)).expect("no nul").into_raw();
        Ok(())
    })
}

/// Returns 1 if the two values are equal, 0 otherwise (or if either is null).
///
/// # Safety
/// Both arguments must be live handles or null.
#[no_mangle]
pub unsafe extern "C" fn polyseq_rational_equal(a: *const PolyseqRational, b: *const PolyseqRational) -> i32 {
    if a.is_null() || b.is_null() {
        return 0;
    }
    i32::from((*a).0 == (*b).0)
}

/// # Safety
/// `value` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn polyseq_rational_free(value: *mut PolyseqRational) {
    if !value.is_null() {
        drop(Box::from_raw(value));
    }
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn polyseq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs identity `identity` with parameters given as a JSON object, e.g.
/// `{"p": 3, "N": 2, "k": 3, "m": 2, "n": 5}`. A failing check is not an
/// error: the status is `Ok` and [`polyseq_report_passed`] returns 0.
///
/// # Safety
/// `identity` and `params_json` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyseq_verify(
    identity: *const c_char,
    params_json: *const c_char,
    out: *mut *mut PolyseqReport,
) -> PolyseqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let id: IdentityId = read_str(identity)?.parse()?;
        let params: Params = serde_json::from_str(read_str(params_json)?)
            .map_err(|e| Failure(PolyseqStatus::InvalidArgument, format!("params: {e}")))?;
        let report = verify(id, &params)?;
        *out = Box::into_raw(Box::new(PolyseqReport(report)));
        Ok(())
    })
}

/// 1 if every instance held, 0 otherwise (or if `report` is null).
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn polyseq_report_passed(report: *const PolyseqReport) -> i32 {
    if report.is_null() {
        return 0;
    }
    i32::from((*report).0.passed())
}

/// The report as pretty JSON. Release the string with [`polyseq_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyseq_report_to_json(report: *const PolyseqReport, out: *mut *mut c_char) -> PolyseqStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return Err(null());
        }
        *out = CString::new((*report).0.to_json()).expect("no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `report` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn polyseq_report_free(report: *mut PolyseqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn polyseq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(f: unsafe extern "C" fn(i64, i64, *mut *mut PolyseqRational) -> PolyseqStatus, n: i64, k: i64) -> String {
        unsafe {
            let mut h = ptr::null_mut();
            assert_eq!(f(n, k, &mut h), PolyseqStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(polyseq_rational_to_string(h, &mut s), PolyseqStatus::Ok);
            let out = CStr::from_ptr(s).to_str().unwrap().to_string();
            polyseq_string_free(s);
            polyseq_rational_free(h);
            out
        }
    }

    #[test]
    fn values() {
        assert_eq!(value(polyseq_polycosecant, 4, 2), "176/225");
        assert_eq!(value(polyseq_polycotangent, 4, -3), "200");
        assert_eq!(value(polyseq_poly_bernoulli, 2, -2), "14");
        assert_eq!(value(polyseq_poly_bernoulli_c, 2, 1), "1/6");
    }

    #[test]
    fn errors_set_message() {
        unsafe {
            let mut h = ptr::null_mut();
            assert_eq!(polyseq_polycosecant(-1, 0, &mut h), PolyseqStatus::InvalidArgument);
            assert!(h.is_null());
            assert!(!polyseq_last_error().is_null());
            assert_eq!(polyseq_polycosecant(2, 0, ptr::null_mut()), PolyseqStatus::NullPointer);
            assert_eq!(polyseq_polycosecant(2, 0, &mut h), PolyseqStatus::Ok);
            assert!(polyseq_last_error().is_null());
            polyseq_rational_free(h);
        }
    }
}
