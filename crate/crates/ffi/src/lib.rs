//! C ABI for `ordslope`.
//!
//! Every function returns an [`OrdslopeStatus`]; results go through out-pointers.
//! On failure `ordslope_last_error` returns a message for the calling thread,
//! valid until that thread's next call into the library. Handles are opaque
//! and must be released with their `_free` function. Panics are caught at the
//! boundary and reported as `ORDSLOPE_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ordslope::cli::parse_knot;
use ordslope::riley;
use ordslope::slopes::{solve_slope, verify_certificate, Slope, SolveConfig, SurgeryCertificate};
use ordslope::{Error, Family, KnotSpec, Tolerances};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdslopeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Domain = 3,
    UnsupportedFamily = 4,
    SlopeNotCovered = 5,
    ZeroSlope = 6,
    SearchFailure = 7,
    NotFound = 8,
    Singularity = 9,
    VerificationFailed = 10,
    Internal = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdslopeFamily {
    /// `C(2m,-2n)`
    EvenMinus = 0,
    /// `C(2m+1,2n)`
    OddPlus = 1,
    /// `C(2m+1,-2n)`
    OddMinus = 2,
}

impl From<OrdslopeFamily> for Family {
    fn from(f: OrdslopeFamily) -> Self {
        match f {
            OrdslopeFamily::EvenMinus => Family::EvenMinus,
            OrdslopeFamily::OddPlus => Family::OddPlus,
            OrdslopeFamily::OddMinus => Family::OddMinus,
        }
    }
}

impl From<Family> for OrdslopeFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::EvenMinus => OrdslopeFamily::EvenMinus,
            Family::OddPlus => OrdslopeFamily::OddPlus,
            Family::OddMinus => OrdslopeFamily::OddMinus,
        }
    }
}

/// A knot in one of the supported families.
pub struct OrdslopeKnot {
    spec: KnotSpec,
}

/// A solved surgery certificate.
pub struct OrdslopeCertificate {
    cert: SurgeryCertificate,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OrdslopeResiduals {
    pub slope: f64,
    pub relation: f64,
    pub longitude_match: f64,
    pub peripheral_kill: f64,
    pub eigenvalue_kill: f64,
    pub riley: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OrdslopeCertificateValues {
    pub r_p: i64,
    pub r_q: i64,
    pub theta: f64,
    pub y: f64,
    pub phi: f64,
    pub l_re: f64,
    pub l_im: f64,
    pub elliptic: bool,
    pub reality: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> OrdslopeStatus {
    match err {
        Error::InvalidInput(_) => OrdslopeStatus::InvalidInput,
        Error::Domain { .. } => OrdslopeStatus::Domain,
        Error::UnsupportedFamily(_) => OrdslopeStatus::UnsupportedFamily,
        Error::SlopeNotCovered { .. } => OrdslopeStatus::SlopeNotCovered,
        Error::ZeroSlope => OrdslopeStatus::ZeroSlope,
        Error::SearchFailure { .. } => OrdslopeStatus::SearchFailure,
        Error::NotFound(_) => OrdslopeStatus::NotFound,
        Error::Singularity(_) => OrdslopeStatus::Singularity,
        Error::Internal(_) => OrdslopeStatus::Internal,
    }
}

struct Failure(OrdslopeStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(OrdslopeStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, recording the error message and converting panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OrdslopeStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OrdslopeStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            OrdslopeStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn knot_ref<'a>(knot: *const OrdslopeKnot) -> Result<&'a OrdslopeKnot, Failure> {
    knot.as_ref().ok_or_else(|| null("knot"))
}

unsafe fn cert_ref<'a>(cert: *const OrdslopeCertificate) -> Result<&'a OrdslopeCertificate, Failure> {
    cert.as_ref().ok_or_else(|| null("certificate"))
}

unsafe fn str_arg<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| Failure(OrdslopeStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn into_c_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Failure(OrdslopeStatus::Internal, "string contains NUL".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ordslope_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
#[no_mangle]
pub extern "C" fn ordslope_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses Conway notation such as `"C(5,-4)"`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_knot_parse(text: *const c_char, out: *mut *mut OrdslopeKnot) -> OrdslopeStatus {
    guard(|| {
        let spec = parse_knot(str_arg(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(OrdslopeKnot { spec })), "out")
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_knot_new(
    family: OrdslopeFamily,
    m: u32,
    n: u32,
    out: *mut *mut OrdslopeKnot,
) -> OrdslopeStatus {
    guard(|| {
        let spec = KnotSpec::new(family.into(), m, n)?;
        write_out(out, Box::into_raw(Box::new(OrdslopeKnot { spec })), "out")
    })
}

/// # Safety
/// `knot` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ordslope_knot_free(knot: *mut OrdslopeKnot) {
    if !knot.is_null() {
        drop(Box::from_raw(knot));
    }
}

/// Family and parameters of a knot. Any out-pointer may be null.
///
/// # Safety
/// `knot` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ordslope_knot_info(
    knot: *const OrdslopeKnot,
    family: *mut OrdslopeFamily,
    m: *mut u32,
    n: *mut u32,
) -> OrdslopeStatus {
    guard(|| {
        let spec = knot_ref(knot)?.spec;
        if let Some(f) = family.as_mut() {
            *f = spec.family.into();
        }
        if let Some(v) = m.as_mut() {
            *v = spec.m;
        }
        if let Some(v) = n.as_mut() {
            *v = spec.n;
        }
        Ok(())
    })
}

/// `R(x, y)` for the knot's family.
///
/// # Safety
/// `knot` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_riley_eval(knot: *const OrdslopeKnot, x: f64, y: f64, out: *mut f64) -> OrdslopeStatus {
    guard(|| {
        let spec = knot_ref(knot)?.spec;
        if !(x.is_finite() && y.is_finite()) {
            return Err(Failure(OrdslopeStatus::InvalidInput, "x and y must be finite".into()));
        }
        write_out(out, riley::riley_eval(&spec, x, y), "out")
    })
}

/// `y(x)` on the `C(2m,-2n)` curve, `x` in `[4 - 1/(mn), 4]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_solve_y_of_x(m: u32, n: u32, x: f64, out: *mut f64) -> OrdslopeStatus {
    guard(|| {
        let y = riley::solve_y_of_x(m, n, x, Tolerances::default().param)?;
        write_out(out, y, "out")
    })
}

/// `x(y)` on the slope branch of an odd-family knot.
///
/// # Safety
/// `knot` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_solve_x_of_y(knot: *const OrdslopeKnot, y: f64, out: *mut f64) -> OrdslopeStatus {
    guard(|| {
        let spec = knot_ref(knot)?.spec;
        write_out(out, riley::solve_x_of_y(&spec, y, Tolerances::default().param)?, "out")
    })
}

/// The `y* > 2` with `x(y*) = 4` for an odd-family knot.
///
/// # Safety
/// `knot` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_find_y_star(knot: *const OrdslopeKnot, out: *mut f64) -> OrdslopeStatus {
    guard(|| {
        let spec = knot_ref(knot)?.spec;
        write_out(out, riley::find_y_star(&spec, Tolerances::default().param)?, "out")
    })
}

/// Solves for a representation killing `p/q` with default tolerances.
///
/// The certificate is returned even when it fails verification; check with
/// `ordslope_certificate_verify`.
///
/// # Safety
/// `knot` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certify(
    knot: *const OrdslopeKnot,
    p: i64,
    q: i64,
    out: *mut *mut OrdslopeCertificate,
) -> OrdslopeStatus {
    guard(|| {
        let spec = knot_ref(knot)?.spec;
        let r = Slope::new(p, q)?;
        let cert = solve_slope(&spec, r, &SolveConfig::default())?;
        write_out(out, Box::into_raw(Box::new(OrdslopeCertificate { cert })), "out")
    })
}

/// # Safety
/// `cert` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certificate_free(cert: *mut OrdslopeCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certificate_values(
    cert: *const OrdslopeCertificate,
    out: *mut OrdslopeCertificateValues,
) -> OrdslopeStatus {
    guard(|| {
        let c = &cert_ref(cert)?.cert;
        let values = OrdslopeCertificateValues {
            r_p: c.r.p(),
            r_q: c.r.q(),
            theta: c.theta,
            y: c.y,
            phi: c.phi,
            l_re: c.l.re,
            l_im: c.l.im,
            elliptic: c.elliptic,
            reality: c.reality,
        };
        write_out(out, values, "out")
    })
}

/// Residuals as stored in the certificate.
///
/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certificate_residuals(
    cert: *const OrdslopeCertificate,
    out: *mut OrdslopeResiduals,
) -> OrdslopeStatus {
    guard(|| {
        let r = cert_ref(cert)?.cert.residuals;
        let res = OrdslopeResiduals {
            slope: r.slope,
            relation: r.relation,
            longitude_match: r.longitude_match,
            peripheral_kill: r.peripheral_kill,
            eigenvalue_kill: r.eigenvalue_kill,
            riley: r.riley,
        };
        write_out(out, res, "out")
    })
}

/// Recomputes every residual from the certificate's own values.
///
/// Returns `ORDSLOPE_STATUS_VERIFICATION_FAILED` naming the failed checks.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certificate_verify(cert: *const OrdslopeCertificate) -> OrdslopeStatus {
    guard(|| {
        let check = verify_certificate(&cert_ref(cert)?.cert, &Tolerances::default());
        if check.passed() {
            Ok(())
        } else {
            Err(Failure(
                OrdslopeStatus::VerificationFailed,
                format!("failed: {}", check.failures.join(", ")),
            ))
        }
    })
}

/// Serializes to JSON; release the string with `ordslope_string_free`.
///
/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certificate_to_json(
    cert: *const OrdslopeCertificate,
    out: *mut *mut c_char,
) -> OrdslopeStatus {
    guard(|| {
        let text = serde_json::to_string_pretty(&cert_ref(cert)?.cert)
            .map_err(|e| Failure(OrdslopeStatus::Internal, e.to_string()))?;
        write_out(out, into_c_string(text)?, "out")
    })
}

/// Parses certificate JSON. The result is not verified.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordslope_certificate_from_json(
    text: *const c_char,
    out: *mut *mut OrdslopeCertificate,
) -> OrdslopeStatus {
    guard(|| {
        let cert: SurgeryCertificate = serde_json::from_str(str_arg(text, "text")?)
            .map_err(|e| Failure(OrdslopeStatus::InvalidInput, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(OrdslopeCertificate { cert })), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ordslope_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
