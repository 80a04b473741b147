use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use leechkit_ffi::*;

fn last_error() -> String {
    let p = lk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn named(name: &str) -> *mut LkLattice {
    let c = CString::new(name).unwrap();
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { lk_lattice_named(c.as_ptr(), &mut l) }, LkStatus::Ok);
    l
}

#[test]
fn gram_round_trip_and_invariants() {
    let a2 = [2i64, -1, -1, 2];
    let mut l = ptr::null_mut();
    unsafe {
        assert_eq!(lk_lattice_from_gram(a2.as_ptr(), 2, &mut l), LkStatus::Ok);
        let (mut rank, mut det, mut even, mut roots) = (0usize, 0i64, false, 0u64);
        assert_eq!(lk_lattice_rank(l, &mut rank), LkStatus::Ok);
        assert_eq!(lk_lattice_det(l, &mut det), LkStatus::Ok);
        assert_eq!(lk_lattice_is_even(l, &mut even), LkStatus::Ok);
        assert_eq!(lk_count_roots(l, &mut roots), LkStatus::Ok);
        assert_eq!((rank, det, even, roots), (2, 3, true, 6));

        let mut json = ptr::null_mut();
        assert_eq!(lk_lattice_to_json(l, &mut json), LkStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(lk_lattice_from_json(json, &mut back), LkStatus::Ok);
        let mut iso = LkIsometry::Undecided;
        assert_eq!(lk_is_isometric(l, back, &mut iso), LkStatus::Ok);
        assert_eq!(iso, LkIsometry::Isometric);
        lk_string_free(json);
        lk_lattice_free(back);
        lk_lattice_free(l);
    }
}

#[test]
fn theta_of_e8() {
    let e8 = named("E8");
    let mut theta = [0u64; 5];
    unsafe {
        assert_eq!(lk_theta(e8, 4, theta.as_mut_ptr(), theta.len()), LkStatus::Ok);
        assert_eq!(theta, [1, 0, 240, 0, 2160]);
        assert_eq!(lk_theta(e8, 6, theta.as_mut_ptr(), theta.len()), LkStatus::BufferTooSmall);
        lk_lattice_free(e8);
    }
}

#[test]
fn genus_of_s11() {
    let s11 = named("S11");
    let other = named("D16plus:-1");
    let m = named("M11");
    unsafe {
        let mut eq = true;
        // rank 16 vs 20
        assert_eq!(lk_genus_equal(s11, other, &mut eq), LkStatus::Ok);
        assert!(!eq);
        let mut iso = LkIsometry::Isometric;
        assert_eq!(lk_is_isometric(s11, m, &mut iso), LkStatus::Ok);
        assert_eq!(iso, LkIsometry::NotIsometric);
        for l in [s11, other, m] {
            lk_lattice_free(l);
        }
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut l = ptr::null_mut();
        let bad = CString::new("{\"label\": 1}").unwrap();
        assert_eq!(lk_lattice_from_json(bad.as_ptr(), &mut l), LkStatus::Parse);
        assert!(l.is_null());
        assert!(!last_error().is_empty());

        let asymmetric = [1i64, 2, 3, 4];
        assert_eq!(lk_lattice_from_gram(asymmetric.as_ptr(), 2, &mut l), LkStatus::InvalidArgument);
        let degenerate = [2i64, 2, 2, 2];
        assert_eq!(lk_lattice_from_gram(degenerate.as_ptr(), 2, &mut l), LkStatus::NotALattice);
        assert!(!last_error().is_empty());

        let name = CString::new("no-such-lattice").unwrap();
        assert_eq!(lk_lattice_named(name.as_ptr(), &mut l), LkStatus::UnknownName);

        assert_eq!(lk_lattice_rank(ptr::null(), &mut 0), LkStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(lk_lattice_from_json(ptr::null(), &mut l), LkStatus::NullPointer);

        let mut n = 0;
        assert_eq!(lk_klein_singular_points(4, &mut n), LkStatus::InvalidArgument);
        assert_eq!(lk_klein_singular_points(7, &mut n), LkStatus::Ok);
        assert_eq!(n, 0);

        lk_lattice_free(ptr::null_mut());
        lk_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_single_claim() {
    let id = CString::new("klein-fixed-lines").unwrap();
    let (mut json, mut passed) = (ptr::null_mut(), false);
    unsafe {
        assert_eq!(lk_verify(id.as_ptr(), &mut json, &mut passed), LkStatus::Ok);
        assert!(passed);
        let s = CStr::from_ptr(json).to_str().unwrap().to_owned();
        lk_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v[0]["id"], "klein-fixed-lines");
        assert_eq!(v[0]["status"], "pass");
        let bad = CString::new("nope").unwrap();
        assert_eq!(lk_verify(bad.as_ptr(), &mut json, &mut passed), LkStatus::UnknownName);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/leechkit.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["lk_lattice_named", "lk_lattice_free", "lk_last_error", "LK_STATUS_OK", "typedef struct LkLattice LkLattice"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(out) = Command::new(cc).args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, header]).output() else {
            eprintln!("{cc} not available; skipping");
            continue;
        };
        assert!(out.status.success(), "{cc}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
