//! C ABI over the jetforge engine.
//!
//! Operators and polynomials cross the boundary as opaque handles created
//! from DSL text; points are comma-separated rationals such as `"0,1/2,-3"`
//! (several points are separated by `;`). Every function returns a
//! [`JfStatus`]; on failure [`jf_last_error`] describes what went wrong on
//! the calling thread. Strings returned by the library are released with
//! [`jf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jetforge::dsl::format_polynomial;
use jetforge::report::SolveReport;
use jetforge::solver::post_check;
use jetforge::{
    check_surjectivity, desingularization_order, parse_operator, parse_polynomial, solve_at_points, solve_to_order,
    vanishing_order, Desingularization, Error, LinearSymbol, MultiPoly, ParsedOperator, RationalPoint, SolveOutcome,
    VanishingOrder,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JfStatus {
    Ok = 0,
    /// The jet system has no solution; not an error.
    Unsolvable = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    DimensionMismatch = 5,
    DuplicatePoints = 6,
    InvalidInput = 7,
    /// A panic was caught at the boundary.
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JfVanishing {
    NotVanishing = 0,
    Exactly = 1,
    IdenticallyZero = 2,
}

/// A linear operator, `Σ f_α ∂^α`.
pub struct JfSymbol(LinearSymbol);

/// A polynomial over the Gaussian rationals.
pub struct JfPoly(MultiPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(JfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => JfStatus::Parse,
            Error::DimensionMismatch { .. } => JfStatus::DimensionMismatch,
            Error::DuplicatePoints { .. } => JfStatus::DuplicatePoints,
            _ => JfStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<jetforge::ParseError> for Failure {
    fn from(e: jetforge::ParseError) -> Self {
        Failure(JfStatus::Parse, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<JfStatus, Failure>) -> JfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            JfStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(JfStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(JfStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(JfStatus::NullPointer, "null handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(JfStatus::NullPointer, "null output pointer".into()))
}

fn point(text: &str, m: usize) -> Result<RationalPoint, Failure> {
    let p: RationalPoint = text.trim().parse()?;
    if p.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: p.dim() }.into());
    }
    Ok(p)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("reports contain no nul bytes").into_raw()
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn jf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a linear operator like `"d[1,0] + x1*d[0,1]"`. `dim` and `order`
/// of 0 and -1 mean "infer".
///
/// # Safety
/// `text` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jf_symbol_parse(
    text_ptr: *const c_char,
    dim: usize,
    order: i64,
    out_sym: *mut *mut JfSymbol,
) -> JfStatus {
    guard(|| {
        let slot = out(out_sym)?;
        let dim = (dim > 0).then_some(dim);
        let order = usize::try_from(order).ok();
        match parse_operator(text(text_ptr)?, dim, order)? {
            ParsedOperator::Linear(s) => {
                *slot = Box::into_raw(Box::new(JfSymbol(s)));
                Ok(JfStatus::Ok)
            }
            ParsedOperator::General(_) => Err(Failure(
                JfStatus::InvalidInput,
                "only linear operators (written with d[..]) are supported here".into(),
            )),
        }
    })
}

/// # Safety
/// `sym` must come from [`jf_symbol_parse`] (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jf_symbol_free(sym: *mut JfSymbol) {
    if !sym.is_null() {
        drop(Box::from_raw(sym));
    }
}

/// # Safety
/// `sym` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn jf_symbol_dim(sym: *const JfSymbol) -> usize {
    sym.as_ref().map_or(0, |s| s.0.base_dim())
}

/// # Safety
/// `sym` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn jf_symbol_order(sym: *const JfSymbol) -> usize {
    sym.as_ref().map_or(0, |s| s.0.order())
}

/// Parses a polynomial in `x1..x_m`.
///
/// # Safety
/// `text` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jf_poly_parse(text_ptr: *const c_char, m: usize, out_poly: *mut *mut JfPoly) -> JfStatus {
    guard(|| {
        let slot = out(out_poly)?;
        *slot = Box::into_raw(Box::new(JfPoly(parse_polynomial(text(text_ptr)?, m)?)));
        Ok(JfStatus::Ok)
    })
}

/// # Safety
/// `poly` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jf_poly_free(poly: *mut JfPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Renders a polynomial in the DSL; free the result with [`jf_string_free`].
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn jf_poly_to_string(poly: *const JfPoly) -> *mut c_char {
    match poly.as_ref() {
        Some(p) => into_c_string(format_polynomial(&p.0)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Vanishing order at a point. `out_c` receives `c` for
/// [`JfVanishing::Exactly`] and 0 otherwise.
///
/// # Safety
/// Pointers must be valid as documented on the module.
#[no_mangle]
pub unsafe extern "C" fn jf_vanishing_order(
    sym: *const JfSymbol,
    point_text: *const c_char,
    out_kind: *mut JfVanishing,
    out_c: *mut usize,
) -> JfStatus {
    guard(|| {
        let sym = &handle(sym)?.0;
        let x0 = point(text(point_text)?, sym.base_dim())?;
        let (kind, c) = match vanishing_order(sym, &x0)?.order {
            VanishingOrder::NotVanishing => (JfVanishing::NotVanishing, 0),
            VanishingOrder::Exactly(c) => (JfVanishing::Exactly, c),
            VanishingOrder::IdenticallyZero => (JfVanishing::IdenticallyZero, 0),
        };
        *out(out_kind)? = kind;
        *out(out_c)? = c;
        Ok(JfStatus::Ok)
    })
}

/// Smallest prolongation level `≤ cap` with a nonzero fiber map, or -1.
///
/// # Safety
/// Pointers must be valid as documented on the module.
#[no_mangle]
pub unsafe extern "C" fn jf_desingularization_order(
    sym: *const JfSymbol,
    point_text: *const c_char,
    cap: usize,
    out_level: *mut i64,
) -> JfStatus {
    guard(|| {
        let sym = &handle(sym)?.0;
        let x0 = point(text(point_text)?, sym.base_dim())?;
        *out(out_level)? = match desingularization_order(sym, &x0, cap)? {
            Desingularization::Level(s) => s as i64,
            Desingularization::Exceeded => -1,
        };
        Ok(JfStatus::Ok)
    })
}

/// Rank of the level-`k` fiber map at a point and whether it is onto.
///
/// # Safety
/// Pointers must be valid as documented on the module.
#[no_mangle]
pub unsafe extern "C" fn jf_check_surjectivity(
    sym: *const JfSymbol,
    point_text: *const c_char,
    k: usize,
    out_rank: *mut usize,
    out_full: *mut bool,
) -> JfStatus {
    guard(|| {
        let sym = &handle(sym)?.0;
        let x0 = point(text(point_text)?, sym.base_dim())?;
        let report = check_surjectivity(sym, &x0, k)?;
        *out(out_rank)? = report.rank;
        *out(out_full)? = report.full;
        Ok(JfStatus::Ok)
    })
}

/// Solves `P(f) = g` to jet order `s` at one point. On
/// [`JfStatus::Unsolvable`] `*out_poly` is set to null.
///
/// # Safety
/// Pointers must be valid as documented on the module.
#[no_mangle]
pub unsafe extern "C" fn jf_solve_to_order(
    sym: *const JfSymbol,
    g: *const JfPoly,
    point_text: *const c_char,
    s: usize,
    out_poly: *mut *mut JfPoly,
) -> JfStatus {
    guard(|| {
        let slot = out(out_poly)?;
        *slot = ptr::null_mut();
        let sym = &handle(sym)?.0;
        let g = &handle(g)?.0;
        let x0 = point(text(point_text)?, sym.base_dim())?;
        Ok(match solve_to_order(sym, g, &x0, s)? {
            SolveOutcome::Solved(sol) => {
                *slot = Box::into_raw(Box::new(JfPoly(sol.polynomial)));
                JfStatus::Ok
            }
            SolveOutcome::Unsolvable { .. } => JfStatus::Unsolvable,
        })
    })
}

/// Solves at one or more `;`-separated points and writes the JSON solve
/// report (the same document `jetforge solve-multi --output json` prints).
///
/// # Safety
/// Pointers must be valid as documented on the module.
#[no_mangle]
pub unsafe extern "C" fn jf_solve_json(
    sym: *const JfSymbol,
    g: *const JfPoly,
    points_text: *const c_char,
    s: usize,
    out_json: *mut *mut c_char,
) -> JfStatus {
    guard(|| {
        let slot = out(out_json)?;
        *slot = ptr::null_mut();
        let sym = &handle(sym)?.0;
        let g = &handle(g)?.0;
        let points = text(points_text)?
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| point(p, sym.base_dim()))
            .collect::<Result<Vec<_>, _>>()?;
        let outcome = solve_at_points(sym, g, &points, s)?;
        let verdict = match &outcome {
            SolveOutcome::Solved(sol) => Some(post_check(sym, &sol.polynomial, g, &points, s)?),
            SolveOutcome::Unsolvable { .. } => None,
        };
        let command = if points.len() == 1 { "solve" } else { "solve-multi" };
        let report = SolveReport::new(command, &outcome, &points, s, verdict);
        *slot = into_c_string(serde_json::to_string(&report).expect("reports serialize"));
        Ok(if outcome.is_solved() { JfStatus::Ok } else { JfStatus::Unsolvable })
    })
}
