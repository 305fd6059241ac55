//! C interface to `morava_hopf`.
//!
//! Presentations are opaque handles created by `mh_presentation_new` and
//! released by `mh_presentation_free`. Every function returns an
//! [`MhStatus`]; on failure `mh_last_error` describes the problem. Strings
//! handed out by the library are owned by the caller and must be released
//! with `mh_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use morava_hopf::algebra::Presentation;
use morava_hopf::base::TheoryFlavor;
use morava_hopf::cli::bi_ideal_report;
use morava_hopf::dual::{candidate_bound, idempotents, verify_duality, DualPresentation, DEFAULT_MAX_CANDIDATES};
use morava_hopf::hopf::{reduced_comul, verify_hopf};
use morava_hopf::motives::{j_invariant_document, ChowJInput};
use morava_hopf::Error;

pub const MH_THEORY_CHOW: u32 = 0;
pub const MH_THEORY_CONNECTIVE: u32 = 1;
pub const MH_THEORY_PERIODIC: u32 = 2;

pub const MH_SUITE_HOPF: u32 = 0;
pub const MH_SUITE_DUALITY: u32 = 1;
pub const MH_SUITE_BIIDEALS: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MhStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    SizingRefusal = 3,
    Unsupported = 4,
    NullPointer = 5,
    Panic = 6,
}

/// A presentation of `A*(SO_m)`, possibly a quotient.
pub struct MhPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: Error) -> MhStatus {
    set_error(&e.to_string());
    match e {
        Error::SizingRefusal { .. } => MhStatus::SizingRefusal,
        Error::Unsupported { .. } => MhStatus::Unsupported,
        _ => MhStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> MhStatus) -> MhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            MhStatus::Panic
        }
    }
}

fn null(what: &str) -> MhStatus {
    set_error(&format!("{what} is null"));
    MhStatus::NullPointer
}

/// Writes `s` to `*out` as a caller-owned string; `out` may be null.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw();
    }
}

fn flavor(theory: u32, n: u32) -> Result<TheoryFlavor, Error> {
    match theory {
        MH_THEORY_CHOW => Ok(TheoryFlavor::Chow),
        MH_THEORY_CONNECTIVE => Ok(TheoryFlavor::ConnectiveMorava { n }),
        MH_THEORY_PERIODIC => Ok(TheoryFlavor::PeriodicMorava { n }),
        other => Err(Error::InvalidInput(format!("unknown theory code {other}"))),
    }
}

/// # Safety
/// `values` must point to `len` readable integers unless `len` is 0.
unsafe fn slice<'a>(values: *const u32, len: usize) -> Option<&'a [u32]> {
    if len == 0 {
        Some(&[])
    } else if values.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(values, len))
    }
}

/// The message of the last failure on this thread. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn mh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the presentation of the theory (one of `MH_THEORY_*`) at height
/// `n` (ignored for Chow) on `SO_m`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_presentation_new(theory: u32, n: u32, m: u32, out: *mut *mut MhPresentation) -> MhStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match flavor(theory, n).and_then(|f| Presentation::new(f, m)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MhPresentation { inner }));
                MhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The quotient by the ideal `(e_1^{2^{a_1}}, e_3^{2^{a_2}}, ...)`.
///
/// # Safety
/// `p` must be a live handle, `a` must point to `len` integers and `out`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_presentation_quotient(
    p: *const MhPresentation,
    a: *const u32,
    len: usize,
    out: *mut *mut MhPresentation,
) -> MhStatus {
    guard(|| {
        let (Some(p), Some(a)) = (p.as_ref(), slice(a, len)) else {
            return null("presentation or tuple");
        };
        if out.is_null() {
            return null("out");
        }
        match p.inner.quotient_by_tuple(a) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MhPresentation { inner }));
                MhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mh_presentation_free(p: *mut MhPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of basis monomials.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_presentation_rank(p: *const MhPresentation, out: *mut u64) -> MhStatus {
    guard(|| match (p.as_ref(), out.is_null()) {
        (Some(p), false) => {
            *out = p.inner.rank();
            MhStatus::Ok
        }
        _ => null("presentation or out"),
    })
}

/// A label such as `K(2)*(SO_7)`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_presentation_label(p: *const MhPresentation, out: *mut *mut c_char) -> MhStatus {
    guard(|| match (p.as_ref(), out.is_null()) {
        (Some(p), false) => {
            put_string(out, p.inner.label());
            MhStatus::Ok
        }
        _ => null("presentation or out"),
    })
}

/// The presentation as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_presentation_json(p: *const MhPresentation, out: *mut *mut c_char) -> MhStatus {
    guard(|| match (p.as_ref(), out.is_null()) {
        (Some(p), false) => match serde_json::to_string(&p.inner) {
            Ok(s) => {
                put_string(out, s);
                MhStatus::Ok
            }
            Err(e) => fail(Error::InvalidInput(e.to_string())),
        },
        _ => null("presentation or out"),
    })
}

/// The reduced coproduct of `e_index` in the text grammar, e.g.
/// `v^1*e3 (x) e3`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_reduced_comul(p: *const MhPresentation, index: u32, out: *mut *mut c_char) -> MhStatus {
    guard(|| {
        let Some(p) = p.as_ref() else { return null("presentation") };
        if out.is_null() {
            return null("out");
        }
        let p = &p.inner;
        if index == 0 || index > p.s {
            return fail(Error::InvalidInput(format!("generator e{index} out of range 1..={}", p.s)));
        }
        match reduced_comul(p, &p.generator(index)) {
            Ok(t) => {
                put_string(out, t.to_string());
                MhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Runs a verification suite (`MH_SUITE_*`). Returns `MH_STATUS_OK` when it
/// passes and `MH_STATUS_VERIFICATION_FAILED` otherwise; the JSON report is
/// written to `report` when it is not null.
///
/// # Safety
/// `p` must be a live handle; `report` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_verify(p: *const MhPresentation, suite: u32, report: *mut *mut c_char) -> MhStatus {
    guard(|| {
        let Some(p) = p.as_ref() else { return null("presentation") };
        let p = &p.inner;
        let outcome = match suite {
            MH_SUITE_HOPF => verify_hopf(p).map(|r| (r.passed, serde_json::to_string(&r))),
            MH_SUITE_DUALITY => verify_duality(p).map(|r| (r.passed, serde_json::to_string(&r))),
            MH_SUITE_BIIDEALS => bi_ideal_report(p, candidate_bound(DEFAULT_MAX_CANDIDATES))
                .map(|r| (r.passed, serde_json::to_string(&r))),
            other => Err(Error::InvalidInput(format!("unknown suite code {other}"))),
        };
        match outcome {
            Ok((passed, json)) => {
                put_string(report, json.unwrap_or_default());
                if passed {
                    MhStatus::Ok
                } else {
                    set_error("verification failed");
                    MhStatus::VerificationFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// The idempotents of the dual of `K(n)*(SO_m)`, as a JSON array of strings,
/// and their number.
///
/// # Safety
/// `count` and `json` must each be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_idempotents(n: u32, m: u32, count: *mut usize, json: *mut *mut c_char) -> MhStatus {
    guard(|| {
        let found = Presentation::new(TheoryFlavor::PeriodicMorava { n }, m)
            .and_then(|p| DualPresentation::new(&p))
            .and_then(|dp| {
                let xs = idempotents(&dp, None, candidate_bound(DEFAULT_MAX_CANDIDATES))?;
                Ok(xs.iter().map(|x| dp.format(x)).collect::<Vec<_>>())
            });
        match found {
            Ok(texts) => {
                if !count.is_null() {
                    *count = texts.len();
                }
                put_string(json, serde_json::to_string(&texts).unwrap_or_default());
                MhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The J-invariant document for the killed indices `j[0..len]`, as JSON.
///
/// # Safety
/// `j` must point to `len` integers unless `len` is 0; `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn mh_jinv(n: u32, m: u32, j: *const u32, len: usize, out: *mut *mut c_char) -> MhStatus {
    guard(|| {
        let Some(j) = slice(j, len) else { return null("J") };
        if out.is_null() {
            return null("out");
        }
        match j_invariant_document(&ChowJInput::new(n, m, j.iter().copied())) {
            Ok(doc) => {
                put_string(out, serde_json::to_string(&doc).unwrap_or_default());
                MhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
