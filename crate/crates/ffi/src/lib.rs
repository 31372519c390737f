//! C ABI over hypertree-lab.
//!
//! Complexes are opaque `HtlComplex` handles owned by the caller and released
//! with `htl_complex_free`. Every fallible call returns an `HtlStatus`; the
//! message for the most recent failure on the calling thread is available from
//! `htl_last_error_message`. Strings handed out by the library must be released
//! with `htl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypertree_lab::bounds::verify_upper_bound;
use hypertree_lab::complex::AnyComplex;
use hypertree_lab::constructions::{build_j, build_x_nkl, fano_complex, sum_complex, CandidateOrder, SumComplexSpec};
use hypertree_lab::homology::is_hypertree;
use hypertree_lab::io::parse_complex;
use hypertree_lab::{betti, Complex, Error, FieldSpec, Simplex, SkeletonComplex};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HtlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotSkeleton = 4,
    PreconditionFailed = 5,
    TooLarge = 6,
    Panic = 7,
}

/// Opaque complex handle.
pub struct HtlComplex {
    inner: AnyComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HtlStatus {
    match e {
        Error::Parse { .. } | Error::Io(_) => HtlStatus::ParseError,
        Error::PreconditionLambdaNonzero(_) => HtlStatus::PreconditionFailed,
        Error::TooLarge { .. } => HtlStatus::TooLarge,
        _ => HtlStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (HtlStatus, String)>) -> HtlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HtlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            HtlStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HtlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HtlStatus, String) {
    (HtlStatus::NullPointer, format!("{what} is null"))
}

fn field_of(p: u32) -> Result<FieldSpec, (HtlStatus, String)> {
    if p == 0 {
        Ok(FieldSpec::Rational)
    } else {
        FieldSpec::prime(p as u64).map_err(lib_err)
    }
}

unsafe fn complex_ref<'a>(x: *const HtlComplex) -> Result<&'a HtlComplex, (HtlStatus, String)> {
    x.as_ref().ok_or_else(|| null("complex"))
}

unsafe fn skeleton_ref<'a>(x: *const HtlComplex) -> Result<&'a SkeletonComplex, (HtlStatus, String)> {
    complex_ref(x)?
        .inner
        .as_skeleton()
        .ok_or_else(|| (HtlStatus::NotSkeleton, "complex is not given by a skeleton and top faces".into()))
}

unsafe fn hand_out(out: *mut *mut HtlComplex, x: AnyComplex) -> Result<(), (HtlStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(HtlComplex { inner: x }));
    Ok(())
}

/// Builds the complex with full (k-1)-skeleton on n vertices and the given
/// top faces. `faces` holds `count` rows of k+1 vertices each.
///
/// # Safety
/// `faces` must point to `count * (k + 1)` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_complex_from_top_faces(
    n: usize,
    k: usize,
    faces: *const u32,
    count: usize,
    out: *mut *mut HtlComplex,
) -> HtlStatus {
    guard(|| {
        if faces.is_null() && count > 0 {
            return Err(null("faces"));
        }
        let data = if count == 0 { &[][..] } else { std::slice::from_raw_parts(faces, count * (k + 1)) };
        let tops = data
            .chunks(k + 1)
            .map(|row| Simplex::new(row.iter().copied()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(lib_err)?;
        let x = SkeletonComplex::from_top_faces(n, k, tops).map_err(lib_err)?;
        hand_out(out, x.into())
    })
}

/// Parses the text complex format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_complex_parse(text: *const c_char, out: *mut *mut HtlComplex) -> HtlStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (HtlStatus::ParseError, e.to_string()))?;
        let parsed = parse_complex(s).map_err(lib_err)?;
        hand_out(out, parsed.complex)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `x` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn htl_complex_free(x: *mut HtlComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_construct_j(n: usize, k: usize, out: *mut *mut HtlComplex) -> HtlStatus {
    guard(|| hand_out(out, build_j(n, k).map_err(lib_err)?.into()))
}

/// Sum complex over the residues `a[0..len]` modulo n with top dimension s.
///
/// # Safety
/// `a` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_construct_sum(
    n: usize,
    a: *const u64,
    len: usize,
    s: usize,
    out: *mut *mut HtlComplex,
) -> HtlStatus {
    guard(|| {
        if a.is_null() && len > 0 {
            return Err(null("a"));
        }
        let residues = if len == 0 { &[][..] } else { std::slice::from_raw_parts(a, len) };
        let spec = SumComplexSpec::new(n, residues.iter().copied(), s).map_err(lib_err)?;
        hand_out(out, sum_complex(&spec).map_err(lib_err)?.into())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_construct_fano(out: *mut *mut HtlComplex) -> HtlStatus {
    guard(|| hand_out(out, fano_complex().into()))
}

/// Link-completed sum complex, candidates in lexicographic order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_construct_xnkl(
    n: usize,
    k: usize,
    ell: usize,
    field: u32,
    out: *mut *mut HtlComplex,
) -> HtlStatus {
    guard(|| {
        let f = field_of(field)?;
        let rep = build_x_nkl(n, k, ell, f, CandidateOrder::Lexicographic).map_err(lib_err)?;
        hand_out(out, rep.complex.into())
    })
}

/// Reduced Betti number in degree j. `field` is a prime, or 0 for Q.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_betti(x: *const HtlComplex, j: isize, field: u32, out: *mut u64) -> HtlStatus {
    guard(|| {
        let c = complex_ref(x)?;
        let f = field_of(field)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = betti(&c.inner, j, f);
        Ok(())
    })
}

/// Dimension of the complex (-1 for {∅}, -2 for the void complex).
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_dim(x: *const HtlComplex, out: *mut isize) -> HtlStatus {
    guard(|| {
        let c = complex_ref(x)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = if c.inner.is_void() { -2 } else { c.inner.dim() };
        Ok(())
    })
}

/// Writes f_0, f_1, ... into `buf`. `len` receives the number of entries;
/// when `buf` is null or `cap` too small only `len` is written.
///
/// # Safety
/// `buf` must have room for `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_f_vector(x: *const HtlComplex, buf: *mut u64, cap: usize, len: *mut usize) -> HtlStatus {
    guard(|| {
        let c = complex_ref(x)?;
        if len.is_null() {
            return Err(null("len"));
        }
        let f = c.inner.f_vector().0;
        *len = f.len();
        if !buf.is_null() && cap >= f.len() {
            ptr::copy_nonoverlapping(f.as_ptr(), buf, f.len());
        }
        Ok(())
    })
}

/// Sum of tb_j over the links of all ℓ-faces.
///
/// # Safety
/// `x` must be a live skeleton handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_lambda(x: *const HtlComplex, ell: isize, j: isize, field: u32, out: *mut u64) -> HtlStatus {
    guard(|| {
        let s = skeleton_ref(x)?;
        let f = field_of(field)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = hypertree_lab::bounds::lambda(s, ell, j, f).map_err(lib_err)?;
        Ok(())
    })
}

/// Bound certificate for (X, ℓ) as a JSON string, freed with `htl_string_free`.
///
/// # Safety
/// `x` must be a live skeleton handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_certificate_json(x: *const HtlComplex, ell: usize, field: u32, out: *mut *mut c_char) -> HtlStatus {
    guard(|| {
        let s = skeleton_ref(x)?;
        let f = field_of(field)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cert = verify_upper_bound(s, ell, f).map_err(lib_err)?;
        let json = serde_json::to_string(&cert).map_err(|e| (HtlStatus::InvalidArgument, e.to_string()))?;
        *out = CString::new(json).unwrap_or_default().into_raw();
        Ok(())
    })
}

/// Whether lk(X, τ) is an r-hypertree over the field. `tau` holds `len` vertices.
///
/// # Safety
/// `x` must be a live handle, `tau` must point to `len` values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_link_is_hypertree(
    x: *const HtlComplex,
    tau: *const u32,
    len: usize,
    r: isize,
    field: u32,
    out: *mut bool,
) -> HtlStatus {
    guard(|| {
        let c = complex_ref(x)?;
        let f = field_of(field)?;
        if out.is_null() || (tau.is_null() && len > 0) {
            return Err(null("argument"));
        }
        let verts = if len == 0 { &[][..] } else { std::slice::from_raw_parts(tau, len) };
        let t = Simplex::new(verts.iter().copied()).map_err(lib_err)?;
        let lk = c.inner.link(&t).map_err(lib_err)?;
        *out = is_hypertree(&lk, r, f).map_err(lib_err)?.is_hypertree;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn htl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn htl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn htl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
