//! C ABI over `fuzzy_depth`.
//!
//! Objects are opaque heap handles returned through out-pointers by the
//! `fd_number_*`, `fd_backend_*` and `fd_median` calls and released with
//! `fd_number_free` or `fd_backend_free`. Every fallible call returns an
//! [`FdStatus`]; on failure a description is available from
//! [`fd_last_error_message`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fuzzy_depth::median::{median_gr, median_si, support_median_band};
use fuzzy_depth::{
    band_contains, depth, rho, AlphaGrid, Backend, Breakpoint, DepthMethod, Error, FuzzyNumber,
    FuzzySample, MetricOrder, ScalarCdf,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    NotNested = 3,
    EmptyCut = 4,
    NotCompact = 5,
    GridMismatch = 6,
    Domain = 7,
    Degenerate = 8,
    Unsupported = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

/// Depth functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdDepthMethod {
    L1 = 0,
    Tukey = 1,
    Projection = 2,
    ModifiedSimplicial = 3,
    FuzzySimplicial = 4,
}

fn method_of(code: i32) -> Result<DepthMethod, Fail> {
    const CODES: [(FdDepthMethod, DepthMethod); 5] = [
        (FdDepthMethod::L1, DepthMethod::L1),
        (FdDepthMethod::Tukey, DepthMethod::Tukey),
        (FdDepthMethod::Projection, DepthMethod::Projection),
        (
            FdDepthMethod::ModifiedSimplicial,
            DepthMethod::ModifiedSimplicial,
        ),
        (FdDepthMethod::FuzzySimplicial, DepthMethod::FuzzySimplicial),
    ];
    CODES
        .iter()
        .find(|(c, _)| *c as i32 == code)
        .map(|&(_, m)| m)
        .ok_or_else(|| {
            Fail(
                FdStatus::InvalidParameter,
                format!("unknown depth method {code}"),
            )
        })
}

/// A validated fuzzy number.
pub struct FdFuzzyNumber(FuzzyNumber);

/// A weighted sample or an analytic CDF.
pub struct FdBackend(Backend);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FdStatus {
    match e {
        Error::InvalidParameter(_) => FdStatus::InvalidParameter,
        Error::NotNested { .. } => FdStatus::NotNested,
        Error::EmptyCut { .. } => FdStatus::EmptyCut,
        Error::NotCompact { .. } => FdStatus::NotCompact,
        Error::GridMismatch { .. } => FdStatus::GridMismatch,
        Error::Domain(_) => FdStatus::Domain,
        Error::Degenerate(_) => FdStatus::Degenerate,
        Error::Unsupported(_) => FdStatus::Unsupported,
    }
}

struct Fail(FdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(FdStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FdStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Triangular number `T(a, b, c)` on `levels` uniform levels.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fd_number_triangular(
    a: f64,
    b: f64,
    c: f64,
    levels: usize,
    out: *mut *mut FdFuzzyNumber,
) -> FdStatus {
    guard(|| {
        let grid = AlphaGrid::uniform(levels)?;
        store(out, FdFuzzyNumber(FuzzyNumber::triangular(a, b, c, &grid)?))
    })
}

/// Trapezoidal number on `levels` uniform levels.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fd_number_trapezoidal(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    levels: usize,
    out: *mut *mut FdFuzzyNumber,
) -> FdStatus {
    guard(|| {
        let grid = AlphaGrid::uniform(levels)?;
        store(
            out,
            FdFuzzyNumber(FuzzyNumber::trapezoidal(a, b, c, d, &grid)?),
        )
    })
}

/// Number from endpoint arrays of length `len`. `alphas` may be NULL for
/// uniform levels.
///
/// # Safety
/// Non-null array pointers must reference `len` readable doubles; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_number_from_arrays(
    alphas: *const f64,
    lower: *const f64,
    upper: *const f64,
    len: usize,
    out: *mut *mut FdFuzzyNumber,
) -> FdStatus {
    guard(|| {
        let grid = if alphas.is_null() {
            AlphaGrid::uniform(len)?
        } else {
            AlphaGrid::from_levels(slice(alphas, len, "alphas")?.to_vec())?
        };
        let lower = slice(lower, len, "lower")?.to_vec();
        let upper = slice(upper, len, "upper")?.to_vec();
        store(out, FdFuzzyNumber(FuzzyNumber::new(grid, lower, upper)?))
    })
}

/// Number of levels of a fuzzy number (0 for NULL).
///
/// # Safety
/// `number` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fd_number_len(number: *const FdFuzzyNumber) -> usize {
    number.as_ref().map_or(0, |n| n.0.grid().len())
}

/// Copies levels and endpoints into caller buffers of capacity `cap`. Any
/// of the three buffers may be NULL.
///
/// # Safety
/// `number` must be a live handle; non-null buffers must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn fd_number_copy(
    number: *const FdFuzzyNumber,
    alphas: *mut f64,
    lower: *mut f64,
    upper: *mut f64,
    cap: usize,
) -> FdStatus {
    guard(|| {
        let n = &handle(number, "number")?.0;
        let len = n.grid().len();
        if cap < len {
            return Err(Fail(
                FdStatus::BufferTooSmall,
                format!("need {len} slots, got {cap}"),
            ));
        }
        for (dst, src) in [
            (alphas, n.grid().levels()),
            (lower, n.lower()),
            (upper, n.upper()),
        ] {
            if !dst.is_null() {
                ptr::copy_nonoverlapping(src.as_ptr(), dst, len);
            }
        }
        Ok(())
    })
}

/// # Safety
/// `number` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_number_free(number: *mut FdFuzzyNumber) {
    if !number.is_null() {
        drop(Box::from_raw(number));
    }
}

/// `ρ_r(a, b)`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fd_rho(
    a: *const FdFuzzyNumber,
    b: *const FdFuzzyNumber,
    r: f64,
    out: *mut f64,
) -> FdStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let r = MetricOrder::new(r)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = rho(&a.0, &b.0, r);
        Ok(())
    })
}

/// Sample of `len` numbers (copied). `weights` may be NULL for uniform
/// weights.
///
/// # Safety
/// `items` must reference `len` live handles; `weights`, when non-null,
/// `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_backend_sample(
    items: *const *const FdFuzzyNumber,
    weights: *const f64,
    len: usize,
    out: *mut *mut FdBackend,
) -> FdStatus {
    guard(|| {
        let items = slice(items, len, "items")?
            .iter()
            .map(|&p| handle(p, "item").map(|n| n.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let sample = if weights.is_null() {
            FuzzySample::uniform(items)?
        } else {
            FuzzySample::new(items, slice(weights, len, "weights")?.to_vec())?
        };
        store(out, FdBackend(Backend::Sample(sample)))
    })
}

/// Piecewise-linear CDF of a crisp variable, from `len` breakpoints with
/// left and right limits.
///
/// # Safety
/// The three arrays must reference `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_backend_cdf(
    x: *const f64,
    f_left: *const f64,
    f_right: *const f64,
    len: usize,
    out: *mut *mut FdBackend,
) -> FdStatus {
    guard(|| {
        let (x, l, r) = (
            slice(x, len, "x")?,
            slice(f_left, len, "f_left")?,
            slice(f_right, len, "f_right")?,
        );
        let points = (0..len)
            .map(|i| Breakpoint {
                x: x[i],
                f_left: l[i],
                f_right: r[i],
            })
            .collect();
        store(out, FdBackend(Backend::Crisp(ScalarCdf::new(points)?)))
    })
}

/// # Safety
/// `backend` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_backend_free(backend: *mut FdBackend) {
    if !backend.is_null() {
        drop(Box::from_raw(backend));
    }
}

/// Depth of `number`; `method` is an `FdDepthMethod` value. `r` is the
/// metric order for `FD_DEPTH_METHOD_L1`.
/// `out_u` and `out_alpha` receive the witness when non-null; they are set
/// to 0 and NaN when the method has none.
///
/// # Safety
/// Handles must be live; non-null output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_depth(
    number: *const FdFuzzyNumber,
    backend: *const FdBackend,
    method: i32,
    r: f64,
    out_value: *mut f64,
    out_u: *mut i32,
    out_alpha: *mut f64,
) -> FdStatus {
    guard(|| {
        let (n, b) = (handle(number, "number")?, handle(backend, "backend")?);
        let out_value = out_value.as_mut().ok_or_else(|| null("out_value"))?;
        let report = depth(&n.0, &b.0, method_of(method)?, MetricOrder::new(r)?)?;
        *out_value = report.value;
        if let Some(u) = out_u.as_mut() {
            *u = report.witness.map_or(0, |w| w.u.as_i32());
        }
        if let Some(a) = out_alpha.as_mut() {
            *a = report.witness.and_then(|w| w.alpha).unwrap_or(f64::NAN);
        }
        Ok(())
    })
}

fn backend_levels(b: &Backend, levels: usize) -> Result<AlphaGrid, Fail> {
    match b {
        Backend::Sample(s) => Ok(s.grid().clone()),
        Backend::Crisp(_) => Ok(AlphaGrid::uniform(levels)?),
    }
}

/// Sinova (`grzegorzewski == 0`) or Grzegorzewski median. `levels` is used
/// only for a CDF backend.
///
/// # Safety
/// `backend` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fd_median(
    backend: *const FdBackend,
    grzegorzewski: bool,
    levels: usize,
    out: *mut *mut FdFuzzyNumber,
) -> FdStatus {
    guard(|| {
        let b = &handle(backend, "backend")?.0;
        let grid = backend_levels(b, levels)?;
        let m = if grzegorzewski {
            median_gr(b, &grid)
        } else {
            median_si(b, &grid)
        };
        store(out, FdFuzzyNumber(m))
    })
}

/// Whether `number` is a support median, within `tol`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fd_is_support_median(
    backend: *const FdBackend,
    number: *const FdFuzzyNumber,
    tol: f64,
    levels: usize,
    out: *mut bool,
) -> FdStatus {
    guard(|| {
        let b = &handle(backend, "backend")?.0;
        let n = &handle(number, "number")?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let band = support_median_band(b, &backend_levels(b, levels)?);
        *out = band_contains(&band, n, tol).contains();
        Ok(())
    })
}
