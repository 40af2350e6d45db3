//! C ABI over `hqft-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` /
//! `*_from_json` functions and released by the matching `*_free`. Every
//! fallible call returns an [`HqftStatus`]; on failure a description is
//! available from [`hqft_last_error`] until the next call on the same
//! thread. Strings returned through `char **` out-parameters are owned by
//! the caller and released with [`hqft_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;

use hqft_core::coeff::CoeffGroup;
use hqft_core::complex::SimplicialComplex;
use hqft_core::error::Error;
use hqft_core::homology::{homology, Cochain};
use hqft_core::hqft::{tau, Hqft};
use hqft_core::io::{bundle_to_surface, surface_to_bundle, BundleFile, ChainFile, CochainFile, ComplexFile};
use hqft_core::report::Report;
use hqft_core::suites;
use hqft_core::surface::{surface_from_cycle, XSurface};

/// Result of every fallible call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HqftStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// Unparseable input or a reference to something that does not exist.
    Malformed = 3,
    /// Well-formed input violating a mathematical invariant.
    Invariant = 4,
    /// The handles belong to different base complexes.
    Mismatch = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// A simplicial complex.
pub struct HqftComplex(Arc<SimplicialComplex>);

/// A cochain on a complex.
pub struct HqftCochain {
    base: Arc<SimplicialComplex>,
    cochain: Cochain,
}

/// A surface mapped into a complex.
pub struct HqftSurface(XSurface);

/// The field theory of a 2-cocycle.
pub struct HqftTheory(Hqft);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: HqftStatus, msg: impl Into<String>) -> HqftStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> HqftStatus {
    let status = if e.is_malformed() {
        HqftStatus::Malformed
    } else {
        HqftStatus::Invariant
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`HqftStatus::Internal`].
fn guard(f: impl FnOnce() -> HqftStatus) -> HqftStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HqftStatus::Internal, "panic inside hqft"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, HqftStatus> {
    if p.is_null() {
        return Err(fail(HqftStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HqftStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, HqftStatus> {
    p.as_ref().ok_or_else(|| fail(HqftStatus::NullPointer, format!("{what} is null")))
}

fn json<T: for<'de> serde::Deserialize<'de>>(text: &str, what: &str) -> Result<T, HqftStatus> {
    serde_json::from_str(text).map_err(|e| fail(HqftStatus::Malformed, format!("{what}: {e}")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> HqftStatus {
    *out = Box::into_raw(Box::new(value));
    HqftStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> HqftStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            HqftStatus::Ok
        }
        Err(_) => fail(HqftStatus::Internal, "result contains a nul byte"),
    }
}

fn same_base(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> Result<(), HqftStatus> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(fail(HqftStatus::Mismatch, "handles refer to different complexes"))
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! try_lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(&e),
        }
    };
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(HqftStatus::NullPointer, "output pointer is null");
        }
    };
}

/// The message of the last failed call on this thread; empty after a
/// successful call. Owned by the library.
#[no_mangle]
pub extern "C" fn hqft_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn hqft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn hqft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"vertices": n, "maximal_simplices": [...]}`.
#[no_mangle]
pub unsafe extern "C" fn hqft_complex_from_json(text: *const c_char, out: *mut *mut HqftComplex) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let text = try_status!(str_arg(text, "json"));
        let file: ComplexFile = try_status!(json(text, "complex"));
        let x = try_lib!(file.build());
        put(out, HqftComplex(Arc::new(x)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hqft_complex_free(x: *mut HqftComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// `H_degree` as text, e.g. `Z^2 + Z/2`.
#[no_mangle]
pub unsafe extern "C" fn hqft_homology(x: *const HqftComplex, degree: usize, out: *mut *mut c_char) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let x = try_status!(ref_arg(x, "complex"));
        let h = try_lib!(homology(&x.0, degree));
        put_string(out, h.group().to_string())
    })
}

/// Parses a cochain file against `x`.
#[no_mangle]
pub unsafe extern "C" fn hqft_cochain_from_json(
    x: *const HqftComplex,
    text: *const c_char,
    out: *mut *mut HqftCochain,
) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let x = try_status!(ref_arg(x, "complex"));
        let text = try_status!(str_arg(text, "json"));
        let file: CochainFile = try_status!(json(text, "cochain"));
        let c = try_lib!(file.build(&x.0));
        put(
            out,
            HqftCochain {
                base: x.0.clone(),
                cochain: c,
            },
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn hqft_cochain_free(c: *mut HqftCochain) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The theory of a 2-cocycle; [`HqftStatus::Invariant`] when the cochain
/// is not a cocycle.
#[no_mangle]
pub unsafe extern "C" fn hqft_theory_new(c: *const HqftCochain, out: *mut *mut HqftTheory) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let c = try_status!(ref_arg(c, "cochain"));
        let h = try_lib!(tau(&c.base, &c.cochain));
        put(out, HqftTheory(h))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hqft_theory_free(h: *mut HqftTheory) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses a surface bundle with inline complex, map and cycle.
#[no_mangle]
pub unsafe extern "C" fn hqft_surface_from_json(
    x: *const HqftComplex,
    text: *const c_char,
    out: *mut *mut HqftSurface,
) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let x = try_status!(ref_arg(x, "complex"));
        let text = try_status!(str_arg(text, "json"));
        let b: BundleFile = try_status!(json(text, "surface"));
        if [&b.complex, &b.map, &b.cycle].iter().any(|v| v.is_string()) {
            return fail(HqftStatus::Malformed, "surface bundles passed by value must be inline");
        }
        let g = try_lib!(bundle_to_surface(&b, Path::new("."), &x.0));
        put(out, HqftSurface(g))
    })
}

/// A closed surface whose fundamental cycle pushes forward to the given
/// integral 2-cycle.
#[no_mangle]
pub unsafe extern "C" fn hqft_surface_from_cycle(
    x: *const HqftComplex,
    chain: *const c_char,
    out: *mut *mut HqftSurface,
) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let x = try_status!(ref_arg(x, "complex"));
        let text = try_status!(str_arg(chain, "chain"));
        let file: ChainFile = try_status!(json(text, "chain"));
        let z = try_lib!(file.build(&x.0));
        let g = try_lib!(surface_from_cycle(&x.0, &z));
        put(out, HqftSurface(g))
    })
}

/// The surface as bundle JSON.
#[no_mangle]
pub unsafe extern "C" fn hqft_surface_to_json(g: *const HqftSurface, out: *mut *mut c_char) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let g = try_status!(ref_arg(g, "surface"));
        let text = serde_json::to_string(&surface_to_bundle(&g.0)).expect("serialisable");
        put_string(out, text)
    })
}

/// Euler characteristic of the surface.
#[no_mangle]
pub unsafe extern "C" fn hqft_surface_euler_characteristic(g: *const HqftSurface, out: *mut i64) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let g = try_status!(ref_arg(g, "surface"));
        *out = g.0.census().euler_characteristic;
        HqftStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn hqft_surface_free(g: *mut HqftSurface) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Holonomy of a closed surface, as a coefficient literal (`1/3`, `2`).
#[no_mangle]
pub unsafe extern "C" fn hqft_holonomy(
    h: *const HqftTheory,
    g: *const HqftSurface,
    out: *mut *mut c_char,
) -> HqftStatus {
    guard(|| {
        check_out!(out);
        let h = try_status!(ref_arg(h, "theory"));
        let g = try_status!(ref_arg(g, "surface"));
        try_status!(same_base(h.0.base(), g.0.target()));
        let v = try_lib!(h.0.holonomy(&g.0));
        put_string(out, v.to_string())
    })
}

/// Runs a randomized suite (`surgery`, `functoriality` or `group`) and
/// writes its JSON report; `*passed` is 1 when every check passed.
#[no_mangle]
pub unsafe extern "C" fn hqft_verify(
    x: *const HqftComplex,
    suite: *const c_char,
    group: *const c_char,
    count: usize,
    seed: u64,
    report: *mut *mut c_char,
    passed: *mut i32,
) -> HqftStatus {
    guard(|| {
        check_out!(report);
        check_out!(passed);
        let x = try_status!(ref_arg(x, "complex"));
        let suite = try_status!(str_arg(suite, "suite"));
        let group = try_status!(str_arg(group, "group"));
        let a: CoeffGroup = try_lib!(group.parse());
        let run: fn(&Arc<SimplicialComplex>, &CoeffGroup, usize, u64) -> hqft_core::error::Result<Report> = match suite {
            "surgery" => suites::holonomy_invariance,
            "functoriality" => suites::functoriality,
            "group" => suites::group_structure,
            other => return fail(HqftStatus::Malformed, format!("unknown suite {other:?}")),
        };
        let r = try_lib!(run(&x.0, &a, count, seed));
        *passed = r.passed() as i32;
        put_string(report, r.to_json().to_string())
    })
}
