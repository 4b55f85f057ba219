//! C ABI over `glring-core`.
//!
//! Objects cross the boundary as opaque handles created by `glr_*` constructors
//! and released with the matching `*_free`. Every function returns a
//! [`GlrStatus`]; on failure `glr_last_error()` describes the problem. Strings
//! returned through out-parameters are owned by the caller and released with
//! `glr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use glring::exact_linalg::{rank, IntMatrix};
use glring::lambda_ring::{self, Mode, ModeKind, RingElement};
use glring::paper_tables::{parse_paper_notation, TokenFixes};
use glring::partitions::Partition;
use glring::{series_lab, simple_f2, symmetric_powers, t_operator, Error};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ResourceLimit = 3,
    Overflow = 4,
    Parse = 5,
    Io = 6,
    Panic = 7,
}

/// Which ring an element lives in.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlrMode {
    M = 0,
    Gl = 1,
}

/// Opaque ring element.
pub struct GlrElement(RingElement);

/// Opaque big-integer matrix.
pub struct GlrMatrix(IntMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GlrStatus {
    match e {
        Error::InvalidArgument(_) | Error::ModeMismatch { .. } => GlrStatus::InvalidArgument,
        Error::Parse { .. } => GlrStatus::Parse,
        Error::ResourceLimit(_) => GlrStatus::ResourceLimit,
        Error::Io(_) => GlrStatus::Io,
    }
}

fn fail(status: GlrStatus, msg: &str) -> GlrStatus {
    set_error(msg);
    status
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), (GlrStatus, String)>) -> GlrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlrStatus::Ok,
        Ok(Err((status, msg))) => fail(status, &msg),
        Err(_) => fail(GlrStatus::Panic, "internal panic"),
    }
}

fn lift(e: Error) -> (GlrStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (GlrStatus, String) {
    (GlrStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (GlrStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn mode_of(mode: GlrMode, n: u32) -> Result<Mode, (GlrStatus, String)> {
    let kind = match mode {
        GlrMode::M => ModeKind::M,
        GlrMode::Gl => ModeKind::GL,
    };
    Mode::new(kind, n).map_err(lift)
}

fn parts_from_raw(parts: *const u32, len: usize) -> Result<Vec<u32>, (GlrStatus, String)> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if parts.is_null() {
        return Err(null());
    }
    Ok(unsafe { std::slice::from_raw_parts(parts, len) }.to_vec())
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn glr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn glr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn glr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `[S^k]` in `R(M_n(F2))`, optionally reduced mod 2.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn glr_sym_power(n: u32, k: u32, mod2: bool, out: *mut *mut GlrElement) -> GlrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        mode_of(GlrMode::M, n)?;
        let mut e = symmetric_powers::expand_sym(n, k as usize);
        if mod2 {
            e = symmetric_powers::mod2_reduce(&e);
        }
        write_out(out, Box::into_raw(Box::new(GlrElement(e))))
    })
}

/// Parses additive table notation such as `(1)+2(2)-(4,1)`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn glr_element_parse(
    text: *const c_char,
    mode: GlrMode,
    n: u32,
    out: *mut *mut GlrElement,
) -> GlrStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (GlrStatus::Parse, "text is not UTF-8".to_string()))?;
        let m = mode_of(mode, n)?;
        let parsed = parse_paper_notation(s, m, &TokenFixes::none()).map_err(lift)?;
        write_out(out, Box::into_raw(Box::new(GlrElement(parsed.element))))
    })
}

/// The product of exterior powers with the given exponents.
///
/// # Safety
/// `exponents` must point to `len` values (or be null with `len == 0`); `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_lambda_product(
    exponents: *const u32,
    len: usize,
    mode: GlrMode,
    n: u32,
    out: *mut *mut GlrElement,
) -> GlrStatus {
    guard(|| {
        let exps = parts_from_raw(exponents, len)?;
        let m = mode_of(mode, n)?;
        let e = lambda_ring::normalize(&exps, m);
        write_out(out, Box::into_raw(Box::new(GlrElement(e))))
    })
}

/// `a · b`; both must live in the same ring.
///
/// # Safety
/// `a`, `b` must be live handles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_element_multiply(
    a: *const GlrElement,
    b: *const GlrElement,
    out: *mut *mut GlrElement,
) -> GlrStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(null)?, b.as_ref().ok_or_else(null)?);
        let e = lambda_ring::multiply(&a.0, &b.0).map_err(lift)?;
        write_out(out, Box::into_raw(Box::new(GlrElement(e))))
    })
}

/// `a · Σ_i [Λ^i]`.
///
/// # Safety
/// `a` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_element_mult_sum_lambda(a: *const GlrElement, out: *mut *mut GlrElement) -> GlrStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(null)?;
        let e = lambda_ring::mult_by_sum_lambda(&a.0);
        write_out(out, Box::into_raw(Box::new(GlrElement(e))))
    })
}

/// Number of nonzero terms, or 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn glr_element_num_terms(e: *const GlrElement) -> usize {
    e.as_ref().map_or(0, |e| e.0.len())
}

/// Renders in table notation; the unit prints as `1(0)`.
///
/// # Safety
/// `e` must be a live handle; `out` valid. Free the string with `glr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn glr_element_render(e: *const GlrElement, out: *mut *mut c_char) -> GlrStatus {
    guard(|| {
        let e = e.as_ref().ok_or_else(null)?;
        let s = CString::new(e.0.render(true)).expect("no nul in rendering");
        write_out(out, s.into_raw())
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not freed twice.
#[no_mangle]
pub unsafe extern "C" fn glr_element_free(e: *mut GlrElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// The printed `τ_n` (GL-mode multiplication matrix, columns are images).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn glr_tau_matrix(n: u32, out: *mut *mut GlrMatrix) -> GlrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let m = t_operator::build_t_matrices(n).map_err(lift)?;
        write_out(out, Box::into_raw(Box::new(GlrMatrix(m.tau_printed))))
    })
}

/// `t_n`, the transpose of the M-mode multiplication matrix.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn glr_t_matrix(n: u32, out: *mut *mut GlrMatrix) -> GlrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let m = t_operator::build_t_matrices(n).map_err(lift)?;
        write_out(out, Box::into_raw(Box::new(GlrMatrix(m.t))))
    })
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn glr_matrix_rows(m: *const GlrMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn glr_matrix_cols(m: *const GlrMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry `(i, j)` as `int64_t`; `GLR_STATUS_OVERFLOW` if it does not fit.
///
/// # Safety
/// `m` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_matrix_entry_i64(m: *const GlrMatrix, i: usize, j: usize, out: *mut i64) -> GlrStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(null)?;
        if i >= m.0.rows() || j >= m.0.cols() {
            return Err((GlrStatus::InvalidArgument, format!("index ({i}, {j}) out of range")));
        }
        let v = i64::try_from(&m.0[(i, j)])
            .map_err(|_| (GlrStatus::Overflow, format!("entry ({i}, {j}) exceeds int64")))?;
        write_out(out, v)
    })
}

/// Entry `(i, j)` as a decimal string.
///
/// # Safety
/// `m` must be a live handle; `out` valid. Free the string with `glr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn glr_matrix_entry_string(
    m: *const GlrMatrix,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> GlrStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(null)?;
        if i >= m.0.rows() || j >= m.0.cols() {
            return Err((GlrStatus::InvalidArgument, format!("index ({i}, {j}) out of range")));
        }
        let s = CString::new(m.0[(i, j)].to_string()).expect("digits");
        write_out(out, s.into_raw())
    })
}

/// Exact rank over the rationals.
///
/// # Safety
/// `m` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_matrix_rank(m: *const GlrMatrix, out: *mut usize) -> GlrStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(null)?;
        write_out(out, rank(&m.0))
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not freed twice.
#[no_mangle]
pub unsafe extern "C" fn glr_matrix_free(m: *mut GlrMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Checks diagonalizability of `t_n` with eigenvalues `2^i` of the expected
/// multiplicities. Writes the verdict to `passed`.
///
/// # Safety
/// `passed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn glr_eigen_check(n: u32, passed: *mut bool) -> GlrStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null());
        }
        let report = t_operator::conjecture_report(n, false).map_err(lift)?;
        write_out(passed, report.passed)
    })
}

/// `λ_1 + 2 λ_2 + .. + 2^(h-1) λ_h` for a strictly decreasing partition.
///
/// # Safety
/// `parts` must point to `len` values (or be null with `len == 0`); `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_connectivity(parts: *const u32, len: usize, out: *mut u64) -> GlrStatus {
    guard(|| {
        let p = Partition::new(parts_from_raw(parts, len)?).map_err(lift)?;
        write_out(out, series_lab::connectivity(&p))
    })
}

/// F2-dimension of the Young-symmetrizer image for `lambda` on `(F2^m)^{⊗|λ|}`.
///
/// # Safety
/// `parts` must point to `len` values (or be null with `len == 0`); `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glr_jk_image_dim(parts: *const u32, len: usize, m: usize, out: *mut usize) -> GlrStatus {
    guard(|| {
        let lambda = parts_from_raw(parts, len)?;
        let d = simple_f2::jk_image_dim(&lambda, m).map_err(lift)?;
        write_out(out, d)
    })
}
