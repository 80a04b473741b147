//! C ABI over the lattice toolkit.
//!
//! Lattices cross the boundary as opaque `LkLattice` handles owned by the
//! caller and released with `lk_lattice_free`. Every fallible call returns an
//! `LkStatus`; on failure a message is available from `lk_last_error` on the
//! same thread until the next failing call. Strings returned to the caller
//! are released with `lk_string_free`. Panics never unwind across the
//! boundary; they are reported as `LK_STATUS_INTERNAL`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use leechkit::claims;
use leechkit::klein::{smoothness_witness_mod_p, CubicForm};
use leechkit::lattice::{genus_equal, Lattice};
use leechkit::short_vectors::{count_roots, is_isometric_definite, theta_coefficients, IsometryOutcome};
use leechkit::Error;
use num_traits::ToPrimitive;

/// Opaque lattice handle.
pub struct LkLattice(Lattice);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    UnknownName = 4,
    NotALattice = 5,
    BoundExceeded = 6,
    Overflow = 7,
    Construction = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

/// Result of `lk_is_isometric`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LkIsometry {
    Isometric = 0,
    NotIsometric = 1,
    Undecided = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> LkStatus {
    match e {
        Error::Parse(_) => LkStatus::Parse,
        Error::Unknown(_) => LkStatus::UnknownName,
        Error::Shape(_) | Error::Degenerate(_) | Error::NotEven(_) | Error::NotIntegral(_) => {
            LkStatus::NotALattice
        }
        Error::BoundExceeded(_) => LkStatus::BoundExceeded,
        Error::Overflow(_) => LkStatus::Overflow,
        Error::Construction(_) | Error::NotAnIsometry(_) | Error::Ambiguous(_) => LkStatus::Construction,
        Error::InvalidParameter(_) | Error::DivisionByZero => LkStatus::InvalidArgument,
    }
}

// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), (LkStatus, String)>) -> LkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LkStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            LkStatus::Internal
        }
    }
}

trait Lift<T> {
    fn lift(self) -> Result<T, (LkStatus, String)>;
}

impl<T> Lift<T> for leechkit::Result<T> {
    fn lift(self) -> Result<T, (LkStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (LkStatus, String) {
    (LkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (LkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (LkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn lattice_arg<'a>(p: *const LkLattice, what: &str) -> Result<&'a Lattice, (LkStatus, String)> {
    p.as_ref().map(|l| &l.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), (LkStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// Message of the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn lk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn lk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Lattice from a row-major `n × n` Gram matrix.
/// `gram` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_from_gram(gram: *const i64, n: usize, out: *mut *mut LkLattice) -> LkStatus {
    guard(|| {
        if gram.is_null() {
            return Err(null("gram"));
        }
        let len = n.checked_mul(n).ok_or((LkStatus::InvalidArgument, "n is too large".into()))?;
        let data = std::slice::from_raw_parts(gram, len);
        let rows: Vec<Vec<i64>> = data.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        let l = Lattice::from_rows("gram", &rows).lift()?;
        put(out, Box::into_raw(Box::new(LkLattice(l))), "out")
    })
}

/// Lattice from Lattice JSON.
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_from_json(json: *const c_char, out: *mut *mut LkLattice) -> LkStatus {
    guard(|| {
        let l = Lattice::from_json_str(str_arg(json, "json")?).lift()?;
        put(out, Box::into_raw(Box::new(LkLattice(l))), "out")
    })
}

/// Named lattice: a catalog name such as `"S11"` or `"E8:-1"`, or a model
/// such as `"niemeier:N23"`, `"holy:N22"`, `"quotient:w"`.
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_named(name: *const c_char, out: *mut *mut LkLattice) -> LkStatus {
    guard(|| {
        let l = claims::build_model(str_arg(name, "name")?).lift()?;
        put(out, Box::into_raw(Box::new(LkLattice(l))), "out")
    })
}

/// `l` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_free(l: *mut LkLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Lattice JSON of `l`; free with `lk_string_free`.
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_to_json(l: *const LkLattice, out: *mut *mut c_char) -> LkStatus {
    guard(|| {
        let s = lattice_arg(l, "lattice")?.to_json_string();
        put(out, owned_string(s), "out")
    })
}

/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_rank(l: *const LkLattice, out: *mut usize) -> LkStatus {
    guard(|| put(out, lattice_arg(l, "lattice")?.rank(), "out"))
}

/// Determinant of the Gram matrix; `LK_STATUS_OVERFLOW` if it does not fit.
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_det(l: *const LkLattice, out: *mut i64) -> LkStatus {
    guard(|| {
        let d = lattice_arg(l, "lattice")?.det();
        let d = d.to_i64().ok_or((LkStatus::Overflow, format!("determinant {d} exceeds 64 bits")))?;
        put(out, d, "out")
    })
}

/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_lattice_is_even(l: *const LkLattice, out: *mut bool) -> LkStatus {
    guard(|| put(out, lattice_arg(l, "lattice")?.is_even(), "out"))
}

/// Number of vectors of norm ±2 of a definite lattice.
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_count_roots(l: *const LkLattice, out: *mut u64) -> LkStatus {
    guard(|| put(out, count_roots(lattice_arg(l, "lattice")?).lift()?, "out"))
}

/// Theta coefficients `out[k]` = number of vectors of |norm| k for
/// `k = 0..=bound`; `len` must be at least `bound + 1`.
/// `l` must be a live handle; `out` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn lk_theta(l: *const LkLattice, bound: u64, out: *mut u64, len: usize) -> LkStatus {
    guard(|| {
        let l = lattice_arg(l, "lattice")?;
        if out.is_null() {
            return Err(null("out"));
        }
        if (len as u64) <= bound {
            return Err((LkStatus::BufferTooSmall, format!("need {} slots, got {len}", bound + 1)));
        }
        let theta = theta_coefficients(l, bound).lift()?;
        std::slice::from_raw_parts_mut(out, theta.len()).copy_from_slice(&theta);
        Ok(())
    })
}

/// Isometry test for definite lattices.
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_is_isometric(a: *const LkLattice, b: *const LkLattice, out: *mut LkIsometry) -> LkStatus {
    guard(|| {
        let r = is_isometric_definite(lattice_arg(a, "a")?, lattice_arg(b, "b")?).lift()?;
        let v = match r {
            IsometryOutcome::Isometric(_) => LkIsometry::Isometric,
            IsometryOutcome::NotIsometric(_) => LkIsometry::NotIsometric,
            IsometryOutcome::Indeterminate(_) => LkIsometry::Undecided,
        };
        put(out, v, "out")
    })
}

/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_genus_equal(a: *const LkLattice, b: *const LkLattice, out: *mut bool) -> LkStatus {
    guard(|| put(out, genus_equal(lattice_arg(a, "a")?, lattice_arg(b, "b")?).lift()?, "out"))
}

/// Singular points of the Klein cubic fourfold over `F_p`.
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_klein_singular_points(p: u64, out: *mut u64) -> LkStatus {
    guard(|| put(out, smoothness_witness_mod_p(&CubicForm::klein(), p).lift()?, "out"))
}

/// Runs one verification claim, or all of them when `id` is null, and
/// writes the JSON report(s) to `json_out` (free with `lk_string_free`) and
/// whether everything passed to `passed`.
/// `id` must be null or NUL-terminated; `json_out` and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn lk_verify(id: *const c_char, json_out: *mut *mut c_char, passed: *mut bool) -> LkStatus {
    guard(|| {
        if json_out.is_null() || passed.is_null() {
            return Err(null("output pointer"));
        }
        let reports = if id.is_null() {
            claims::run_all()
        } else {
            vec![claims::run_claim(str_arg(id, "id")?).lift()?]
        };
        let ok = reports.iter().all(|r| r.passed());
        let s = serde_json::to_string(&reports).map_err(|e| (LkStatus::Internal, e.to_string()))?;
        put(json_out, owned_string(s), "json_out")?;
        put(passed, ok, "passed")
    })
}
