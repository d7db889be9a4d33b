//! C ABI for goaltally.
//!
//! Every fallible function returns a [`GtStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! fetched with [`gt_last_error`]. Strings handed out by this library are
//! owned by the caller and must be released with [`gt_string_free`];
//! polynomial handles with [`gt_polynomial_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use goaltally::engine::{count_problem, Limits};
use goaltally::fit::{evaluate_poly, fit_sn, zero_diagonal_counter, FitMode};
use goaltally::model::{validate_problem, TableProblem};
use goaltally::problem_file::ProblemFile;
use goaltally::puzzle::{make_puzzle, PuzzleParams};
use goaltally::worldcup::{find_scenarios, PointsRule, ScoreBoard, SolverLimits};
use goaltally::{Error, RationalPolynomial};

/// Result codes. Values 0 to 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtStatus {
    Ok = 0,
    /// Malformed input: bad JSON, bad UTF-8, out-of-range argument.
    InvalidInput = 1,
    /// Input parsed but violates a model invariant.
    Validation = 2,
    /// A fit or comparison did not verify, or no puzzle was found.
    Verification = 3,
    ResourceLimit = 4,
    NullPointer = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtFitMode {
    Plain = 0,
    Economical = 1,
}

/// Opaque fitted polynomial with exact rational coefficients.
pub struct GtPolynomial {
    inner: RationalPolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GtStatus {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GtStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            match e.exit_code() {
                2 => GtStatus::Validation,
                3 => GtStatus::Verification,
                4 => GtStatus::ResourceLimit,
                _ => GtStatus::InvalidInput,
            }
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("{what} is null"));
            GtStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_last_error(format!("{what} is not valid UTF-8"));
            GtStatus::InvalidInput
        }
        Err(_) => {
            set_last_error("internal panic".into());
            GtStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn read_u64s(p: *const u64, len: usize, what: &'static str) -> Result<Vec<u64>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len).to_vec())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure::Core(Error::InvalidArgument("string contains NUL".into())))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. Free with
/// [`gt_string_free`].
#[no_mangle]
pub extern "C" fn gt_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of `n x n` zero-diagonal matrices with all line sums `r`, as a
/// decimal string.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn gt_count_zero_diagonal(n: usize, r: i64, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let vp = validate_problem(&TableProblem::zero_diagonal(n, r))?;
        let c = count_problem(&vp, &Limits::default())?;
        write_string(out, c.to_string())
    })
}

/// Count for a problem given as JSON (`{"sr": [...], "sc": [...], "mask": [[...]]}`,
/// free cells written `"*"`) at margin parameter `r`.
///
/// # Safety
/// `problem_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_count_problem_json(problem_json: *const c_char, r: i64, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let f = ProblemFile::parse(read_str(problem_json, "problem_json")?)?;
        let vp = validate_problem(&f.problem(r)?)?;
        let c = count_problem(&vp, &Limits::default())?;
        write_string(out, c.to_string())
    })
}

/// Fits the zero-diagonal counting polynomial for `n` and verifies it.
///
/// # Safety
/// `out` must be writable; the handle is freed with [`gt_polynomial_free`].
#[no_mangle]
pub unsafe extern "C" fn gt_fit_sn(n: usize, mode: GtFitMode, out: *mut *mut GtPolynomial) -> GtStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let mode = match mode {
            GtFitMode::Plain => FitMode::Plain,
            GtFitMode::Economical => FitMode::Economical,
        };
        let report = fit_sn(n, mode, zero_diagonal_counter(n, Limits::default()))?;
        *out = Box::into_raw(Box::new(GtPolynomial {
            inner: report.polynomial,
        }));
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a handle from [`gt_fit_sn`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_free(p: *mut GtPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or -1 for the zero polynomial or a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_degree(p: *const GtPolynomial) -> i64 {
    p.as_ref().and_then(|p| p.inner.degree()).map_or(-1, |d| d as i64)
}

/// Exact value at integer `r`, written as `"num"` or `"num/den"`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_eval(p: *const GtPolynomial, r: i64, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let p = p.as_ref().ok_or(Failure::Null("polynomial"))?;
        write_string(out, evaluate_poly(&p.inner, r).to_string())
    })
}

/// Human-readable form such as `(2*r^5 + ... + 30)/30`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_polynomial_to_string(p: *const GtPolynomial, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let p = p.as_ref().ok_or(Failure::Null("polynomial"))?;
        write_string(out, p.inner.to_string())
    })
}

/// Number of match-score scenarios for a scoreboard of `n` teams. `pts` may
/// be NULL to leave points unconstrained.
///
/// # Safety
/// `gf` and `ga` must point to `n` values, `pts` to `n` values or be NULL;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_find_scenarios(
    n: usize,
    gf: *const u64,
    ga: *const u64,
    pts: *const u64,
    win: u64,
    draw: u64,
    loss: u64,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let gf = read_u64s(gf, n, "gf")?;
        let ga = read_u64s(ga, n, "ga")?;
        let board = if pts.is_null() {
            ScoreBoard::with_wildcard(gf, ga)
        } else {
            ScoreBoard::new(gf, ga, read_u64s(pts, n, "pts")?)
        };
        let rule = PointsRule::new(win, draw, loss)?;
        let res = find_scenarios(&board, &rule, None, &SolverLimits::default())?;
        write_string(out, res.count.to_string())
    })
}

/// Generates a puzzle (3/1/0 points) and writes it as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_make_puzzle_json(
    n: usize,
    max_goal: u64,
    seed: u64,
    require_unique: bool,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let p = make_puzzle(&PuzzleParams::new(n, max_goal), seed, require_unique)?;
        let json = serde_json::to_string(&p).map_err(|e| Failure::Core(Error::InvalidArgument(e.to_string())))?;
        write_string(out, json)
    })
}
