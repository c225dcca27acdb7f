//! C interface to `toric-core`.
//!
//! Fans are passed as opaque `ToricFan` handles. Every fallible call returns
//! a `ToricStatus`; on failure the message is available from
//! `toric_last_error` on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with `toric_string_free`.

use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_core::cli::{exit_code, parse_degree};
use toric_core::fan::{build_cube_fan, build_octahedron_fan, build_payne_fan, Fan};
use toric_core::json::{fan_from_json, fan_to_json, lattice_from_json};
use toric_core::linalg::Sublattice;
use toric_core::{report, Error};

/// Opaque fan handle.
pub struct ToricFan {
    fan: Fan,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToricStatus {
    Ok = 0,
    InvalidInput = 1,
    SearchExhausted = 2,
    CertificateInvalid = 3,
    NullPointer = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ToricStatus {
    match exit_code(e) {
        2 => ToricStatus::SearchExhausted,
        3 => ToricStatus::CertificateInvalid,
        _ => ToricStatus::InvalidInput,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ToricStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ToricStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            ToricStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(format!("{}: {e}", e.kind()));
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            ToricStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Core(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn fan_ref<'a>(p: *const ToricFan) -> Result<&'a Fan, Failure> {
    p.as_ref().map(|h| &h.fan).ok_or(Failure::Null("fan"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let c =
        CString::new(s).map_err(|_| Failure::Core(Error::Parse("output contains nul".into())))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_fan(out: *mut *mut ToricFan, fan: Fan) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(ToricFan { fan }));
    Ok(())
}

unsafe fn lattice_or_standard(p: *const c_char, n: usize) -> Result<Sublattice, Failure> {
    if p.is_null() {
        return Ok(Sublattice::standard(n));
    }
    let l = lattice_from_json(read_str(p, "lattice")?)?;
    if l.ambient_rank() != n {
        return Err(Error::WrongDimension {
            expected: n,
            actual: l.ambient_rank(),
        }
        .into());
    }
    Ok(l)
}

unsafe fn indices<'a>(p: *const size_t, len: size_t) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null("indices"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn toric_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn toric_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a fan from its JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_from_json(
    json: *const c_char,
    out: *mut *mut ToricFan,
) -> ToricStatus {
    guard(|| {
        let fan = fan_from_json(read_str(json, "json")?)?;
        write_fan(out, fan)
    })
}

/// One of the built-in fans: `"cube"`, `"octahedron"` or `"payne"`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_builtin(
    name: *const c_char,
    out: *mut *mut ToricFan,
) -> ToricStatus {
    guard(|| {
        let fan = match read_str(name, "name")? {
            "cube" => build_cube_fan(),
            "octahedron" => build_octahedron_fan(),
            "payne" => build_payne_fan().fan,
            other => return Err(Error::Parse(format!("unknown fan {other:?}")).into()),
        };
        write_fan(out, fan)
    })
}

/// # Safety
/// `fan` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_free(fan: *mut ToricFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Canonical fan JSON.
///
/// # Safety
/// `fan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_to_json(
    fan: *const ToricFan,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| write_string(out, fan_to_json(fan_ref(fan)?)?))
}

/// Validation report; `valid` receives whether the fan passed.
///
/// # Safety
/// `fan` must be a live handle; `valid` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_validate(
    fan: *const ToricFan,
    valid: *mut bool,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| {
        let (v, ok) = report::validate(fan_ref(fan)?)?;
        if valid.is_null() {
            return Err(Failure::Null("valid"));
        }
        *valid = ok;
        write_string(out, report::pretty(&v))
    })
}

/// # Safety
/// `fan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_is_complete(
    fan: *const ToricFan,
    out: *mut bool,
) -> ToricStatus {
    guard(|| {
        let c = fan_ref(fan)?.is_complete()?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = c;
        Ok(())
    })
}

/// # Safety
/// `fan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_stats(
    fan: *const ToricFan,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| write_string(out, report::pretty(&report::stats(fan_ref(fan)?)?)))
}

/// # Safety
/// `fan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_cpl(fan: *const ToricFan, out: *mut *mut c_char) -> ToricStatus {
    guard(|| write_string(out, report::pretty(&report::cpl(fan_ref(fan)?)?)))
}

/// Nontrivial multivalued function; a negative `sigma` selects the default cone.
///
/// # Safety
/// `fan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_multival(
    fan: *const ToricFan,
    sigma: i64,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| {
        let sigma = usize::try_from(sigma).ok();
        write_string(out, report::multival(fan_ref(fan)?, sigma)?)
    })
}

/// Graded dimensions on the cone with the given ray indices. `degree` is
/// comma-separated (`"1,-1,0"`, `"1/2,0,0"`); `lattice_json` may be null for
/// the standard lattice.
///
/// # Safety
/// `fan` must be a live handle; `cone` must point to `cone_len` indices;
/// strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_fdim(
    fan: *const ToricFan,
    cone: *const size_t,
    cone_len: size_t,
    degree: *const c_char,
    lattice_json: *const c_char,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| {
        let f = fan_ref(fan)?;
        let m = parse_degree(read_str(degree, "degree")?)?;
        let l = lattice_or_standard(lattice_json, f.rank())?;
        write_string(
            out,
            report::pretty(&report::fdim(f, indices(cone, cone_len)?, &m, &l)?),
        )
    })
}

/// Wall certificate for the wall with the given ray indices.
///
/// # Safety
/// As for `toric_fdim`.
#[no_mangle]
pub unsafe extern "C" fn toric_certify(
    fan: *const ToricFan,
    wall: *const size_t,
    wall_len: size_t,
    degree: *const c_char,
    lattice_json: *const c_char,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| {
        let f = fan_ref(fan)?;
        let m = parse_degree(read_str(degree, "degree")?)?;
        let l = lattice_or_standard(lattice_json, f.rank())?;
        write_string(
            out,
            report::pretty(&report::certify(f, indices(wall, wall_len)?, &m, &l)?),
        )
    })
}

/// All valid wall certificates with degrees of sup-norm at most `radius`.
///
/// # Safety
/// `fan` must be a live handle; `lattice_json` null or nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn toric_search(
    fan: *const ToricFan,
    radius: u32,
    lattice_json: *const c_char,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| {
        let f = fan_ref(fan)?;
        let l = lattice_or_standard(lattice_json, f.rank())?;
        write_string(out, report::pretty(&report::search(f, &l, radius)?))
    })
}

/// Line bundle or K-group witness.
///
/// # Safety
/// `fan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_dichotomy(
    fan: *const ToricFan,
    radius: u32,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| {
        write_string(
            out,
            report::pretty(&report::dichotomy(fan_ref(fan)?, radius)?),
        )
    })
}
