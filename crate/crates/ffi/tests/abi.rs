use std::ffi::{c_char, CStr};
use std::ptr;

use morava_hopf_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_string();
    mh_string_free(s);
    text
}

unsafe fn new(theory: u32, n: u32, m: u32) -> *mut MhPresentation {
    let mut p = ptr::null_mut();
    assert_eq!(mh_presentation_new(theory, n, m, &mut p), MhStatus::Ok);
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mh_last_error()).to_str().unwrap().to_string() }
}

#[test]
fn presentation_round_trip() {
    unsafe {
        let p = new(MH_THEORY_PERIODIC, 2, 7);
        let mut rank = 0;
        assert_eq!(mh_presentation_rank(p, &mut rank), MhStatus::Ok);
        assert_eq!(rank, 8);
        let mut s = ptr::null_mut();
        assert_eq!(mh_presentation_label(p, &mut s), MhStatus::Ok);
        assert_eq!(take(s), "K(2)*(SO_7)");
        assert_eq!(mh_reduced_comul(p, 3, &mut s), MhStatus::Ok);
        assert_eq!(take(s), "v^1*e3 (x) e3");
        assert_eq!(mh_presentation_json(p, &mut s), MhStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["truncations"], serde_json::json!([2, 1]));

        let spin = [0u32, 1];
        let mut q = ptr::null_mut();
        assert_eq!(mh_presentation_quotient(p, spin.as_ptr(), spin.len(), &mut q), MhStatus::Ok);
        assert_eq!(mh_presentation_rank(q, &mut rank), MhStatus::Ok);
        assert_eq!(rank, 2);
        assert_eq!(mh_verify(q, MH_SUITE_HOPF, ptr::null_mut()), MhStatus::Ok);
        mh_presentation_free(q);
        mh_presentation_free(p);
        mh_presentation_free(ptr::null_mut());
    }
}

#[test]
fn verification_reports() {
    unsafe {
        let p = new(MH_THEORY_CONNECTIVE, 2, 7);
        let mut report = ptr::null_mut();
        assert_eq!(mh_verify(p, MH_SUITE_DUALITY, &mut report), MhStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(json["suite"], "duality");
        assert_eq!(json["passed"], true);
        assert_eq!(mh_verify(p, 9, ptr::null_mut()), MhStatus::InvalidInput);
        mh_presentation_free(p);

        let chow = new(MH_THEORY_CHOW, 0, 9);
        assert_eq!(mh_verify(chow, MH_SUITE_DUALITY, ptr::null_mut()), MhStatus::Unsupported);
        assert_eq!(mh_verify(chow, MH_SUITE_BIIDEALS, ptr::null_mut()), MhStatus::Ok);
        mh_presentation_free(chow);

        let k3 = new(MH_THEORY_PERIODIC, 3, 15);
        let broken = [3u32, 2, 0, 1];
        let mut q = ptr::null_mut();
        assert_eq!(mh_presentation_quotient(k3, broken.as_ptr(), broken.len(), &mut q), MhStatus::Ok);
        assert_eq!(mh_verify(q, MH_SUITE_HOPF, ptr::null_mut()), MhStatus::VerificationFailed);
        mh_presentation_free(q);
        mh_presentation_free(k3);
    }
}

#[test]
fn idempotents_and_jinv() {
    unsafe {
        let mut count = 0usize;
        let mut json = ptr::null_mut();
        assert_eq!(mh_idempotents(2, 7, &mut count, &mut json), MhStatus::Ok);
        assert_eq!(count, 4);
        let list: Vec<String> = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(list, ["0", "1", "1 + v^-1*g1(a3)", "v^-1*g1(a3)"]);
        assert_eq!(mh_idempotents(2, 5, &mut count, ptr::null_mut()), MhStatus::Ok);
        assert_eq!(count, 2);

        let mut out = ptr::null_mut();
        assert_eq!(mh_jinv(2, 9, ptr::null(), 0, &mut out), MhStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(doc["motive"]["summand_count"], 4);
        let j = [1u32];
        assert_eq!(mh_jinv(2, 9, j.as_ptr(), 1, &mut out), MhStatus::InvalidInput);
        assert!(last_error().contains("missing indices 2, 4"), "{}", last_error());
    }
}

#[test]
fn invalid_arguments() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(mh_presentation_new(MH_THEORY_PERIODIC, 0, 7, &mut p), MhStatus::InvalidInput);
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(mh_presentation_new(7, 2, 7, &mut p), MhStatus::InvalidInput);
        assert_eq!(mh_presentation_new(MH_THEORY_CHOW, 0, 7, ptr::null_mut()), MhStatus::NullPointer);
        let mut rank = 0;
        assert_eq!(mh_presentation_rank(ptr::null(), &mut rank), MhStatus::NullPointer);
        let q = new(MH_THEORY_PERIODIC, 2, 7);
        let mut s = ptr::null_mut();
        assert_eq!(mh_reduced_comul(q, 9, &mut s), MhStatus::InvalidInput);
        assert!(s.is_null());
        assert_eq!(mh_reduced_comul(q, 2, &mut s), MhStatus::Ok);
        // The square of v e2 (x) e2 lands on e4, beyond the top index 3.
        assert_eq!(take(s), "0");
        let mut s = ptr::null_mut();
        assert_eq!(mh_jinv(2, 9, ptr::null(), 3, &mut s), MhStatus::NullPointer);
        mh_presentation_free(q);
    }
}
