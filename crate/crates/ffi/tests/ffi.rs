use std::ffi::{CStr, CString};
use std::ptr;

use evenwilf_ffi::*;

fn parse(s: &str) -> *mut EwPermutation {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ew_permutation_parse(c.as_ptr(), &mut out) }, EwStatus::Ok);
    out
}

fn last_error() -> String {
    let p = ew_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn counts() {
    let p = parse("1234");
    let mut c = EwCounts::default();
    assert_eq!(unsafe { ew_count_avoiders(p, 6, &mut c) }, EwStatus::Ok);
    assert_eq!((c.total, c.even, c.odd), (513, 258, 255));
    assert_eq!(unsafe { ew_count_avoiders(p, 13, &mut c) }, EwStatus::BudgetExceeded);
    assert!(last_error().contains("13"));
    unsafe { ew_permutation_free(p) };

    let p = parse("321");
    let shape = CString::new("3,3,3").unwrap();
    assert_eq!(
        unsafe { ew_count_avoiders_shape(shape.as_ptr(), p, &mut c) },
        EwStatus::Ok
    );
    assert_eq!((c.total, c.even), (5, 3));
    unsafe { ew_permutation_free(p) };
}

#[test]
fn permutation_handles() {
    let p = parse("2413");
    unsafe {
        assert_eq!(ew_permutation_len(p), 4);
        assert_eq!(ew_permutation_is_even(p), 0);
        assert_eq!(ew_permutation_is_even(ptr::null()), -1);
        let s = ew_permutation_to_string(p);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "2413");
        ew_string_free(s);
        ew_permutation_free(p);
        ew_permutation_free(ptr::null_mut());
    }
    let bad = CString::new("1 1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ew_permutation_parse(bad.as_ptr(), &mut out) }, EwStatus::ParseError);
    assert!(out.is_null());
    assert_eq!(
        unsafe { ew_permutation_parse(ptr::null(), &mut out) },
        EwStatus::NullPointer
    );
}

#[test]
fn map_round_trip_and_shape_errors() {
    let mut tr = ptr::null_mut();
    let inc = parse("12345");
    let stair = CString::new("5,4,3,2,1").unwrap();
    assert_eq!(
        unsafe { ew_transversal_new(stair.as_ptr(), inc, &mut tr) },
        EwStatus::NotTransversal
    );
    unsafe { ew_permutation_free(inc) };
    let p = parse("45321");
    let shape = CString::new("5,5,5,3,2").unwrap();
    assert_eq!(unsafe { ew_transversal_new(shape.as_ptr(), p, &mut tr) }, EwStatus::Ok);
    let (mut img, mut back) = (ptr::null_mut(), ptr::null_mut());
    let mut steps = 0usize;
    unsafe {
        assert_eq!(ew_map(tr, 3, 0, &mut img, &mut steps), EwStatus::Ok);
        assert!(steps >= 1);
        assert_eq!(ew_map(img, 3, 1, &mut back, ptr::null_mut()), EwStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(ew_transversal_permutation(back, &mut q), EwStatus::Ok);
        let s = ew_permutation_to_string(q);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "45321");
        ew_string_free(s);
        ew_permutation_free(q);
        assert_eq!(ew_map(tr, 1, 0, &mut img, ptr::null_mut()), EwStatus::InvalidArgument);
        ew_transversal_free(back);
        ew_transversal_free(img);
        ew_transversal_free(tr);
        ew_permutation_free(p);
    }
}

#[test]
fn verify_reports() {
    let mut report = ptr::null_mut();
    let name = CString::new("theorem_JtFt").unwrap();
    assert_eq!(unsafe { ew_verify(name.as_ptr(), 2, 3, 0, 0, &mut report) }, EwStatus::Ok);
    let json: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(report) }.to_str().unwrap()).unwrap();
    unsafe { ew_string_free(report) };
    assert_eq!(json["status"], "refuted");
    assert_eq!(json["witness"]["kind"], "sign-flip");

    let name = CString::new("no-such-check").unwrap();
    assert_eq!(
        unsafe { ew_verify(name.as_ptr(), 0, 0, 0, 0, &mut report) },
        EwStatus::UnknownCheck
    );
    assert!(last_error().contains("theorem-jtft"));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ew_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
