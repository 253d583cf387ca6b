//! C ABI over the binarion library.
//!
//! Conventions:
//! - Every fallible entry point returns a [`BnStatus`]; results travel
//!   through out-pointers that are written only on `Ok`.
//! - A failing call stores a message retrievable with [`bn_last_error`];
//!   the pointer stays valid until the next failing call on the same
//!   thread.
//! - Contours, signals, and grids are opaque heap handles created by the
//!   `_parse` constructors and released by the matching `_free`. Passing
//!   null where a handle is expected yields `InvalidArgument`, never a
//!   crash.
//! - Entry points do not unwind: internally only checked constructors
//!   and `Result`-returning operations are used.

// Safety contracts are uniform across the ABI and documented once in the
// conventions above instead of on each of the 28 entry points.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use binarion::contour::{CauchyOutcome, Contour, Quadrature};
use binarion::expr::{self, ExprError};
use binarion::field::{CrSense, FieldGrid};
use binarion::fields::named_kernel;
use binarion::signal::SampledSignal;
use binarion::{Binarion, Error, Signature};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BnStatus {
    Ok = 0,
    /// Null pointer, unknown kernel or sense, or an eps outside {-1,0,1}.
    InvalidArgument = 1,
    /// A component was NaN or infinite.
    NonFinite = 2,
    /// Mixed signatures in a binary operation.
    SignatureMismatch = 3,
    /// Determinant within the singular tolerance of zero.
    Singular = 4,
    /// Input outside an operation's mathematical domain.
    Domain = 5,
    /// Expression text failed to lex or parse.
    Parse = 6,
    /// Expression evaluated onto a singular or out-of-domain point.
    Eval = 7,
    /// A JSON document failed validation.
    Malformed = 8,
}

/// A plain-data element x I + y E with E^2 = eps I.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct BnValue {
    pub x: f64,
    pub y: f64,
    pub eps: i32,
}

/// Which first-order system a grid residual is measured against.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BnSense {
    Split = 0,
    Complex = 1,
}

pub struct BnContour(Contour);
pub struct BnSignal(SampledSignal);
pub struct BnGrid(FieldGrid);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: BnStatus, message: impl std::fmt::Display) -> BnStatus {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).expect("nul bytes stripped");
    });
    status
}

fn fail_error(e: Error) -> BnStatus {
    let status = match e {
        Error::NonFinite { .. } => BnStatus::NonFinite,
        Error::InvalidSignature { .. } => BnStatus::InvalidArgument,
        Error::SignatureMismatch { .. } => BnStatus::SignatureMismatch,
        Error::Singular { .. } => BnStatus::Singular,
        Error::ShapeError { .. }
        | Error::InvalidSignal(_)
        | Error::InvalidGrid(_)
        | Error::InvalidContour(_)
        | Error::InvalidQuadrature(_) => BnStatus::Malformed,
        _ => BnStatus::Domain,
    };
    fail(status, e)
}

fn fail_expr(e: ExprError) -> BnStatus {
    let status = match e {
        ExprError::Lex { .. } | ExprError::Parse { .. } => BnStatus::Parse,
        ExprError::Eval { .. } => BnStatus::Eval,
    };
    fail(status, e)
}

/// Message of the most recent failure on this thread. Never null; empty
/// before the first failure. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn bn_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn to_binarion(v: BnValue) -> Result<Binarion, Error> {
    let sig = Signature::from_eps(v.eps as i64)?;
    Binarion::try_new(v.x, v.y, sig)
}

fn from_binarion(b: Binarion) -> BnValue {
    BnValue {
        x: b.x(),
        y: b.y(),
        eps: b.sig().eps_int() as i32,
    }
}

/// Writes through `out` only when non-null; a null `out` is the caller
/// saying the result does not interest them.
unsafe fn store<T>(out: *mut T, value: T) {
    if !out.is_null() {
        unsafe { out.write(value) };
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, BnStatus> {
    if ptr.is_null() {
        return Err(fail(BnStatus::InvalidArgument, "null string pointer"));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(BnStatus::InvalidArgument, "string is not valid UTF-8"))
}

unsafe fn read_handle<'a, T>(ptr: *const T) -> Result<&'a T, BnStatus> {
    if ptr.is_null() {
        return Err(fail(BnStatus::InvalidArgument, "null handle"));
    }
    Ok(unsafe { &*ptr })
}

/// Builds a value, validating eps and finiteness.
#[no_mangle]
pub unsafe extern "C" fn bn_make(x: f64, y: f64, eps: i32, out: *mut BnValue) -> BnStatus {
    match to_binarion(BnValue { x, y, eps }) {
        Ok(b) => {
            unsafe { store(out, from_binarion(b)) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

unsafe fn binary_op(
    a: BnValue,
    b: BnValue,
    out: *mut BnValue,
    f: impl Fn(Binarion, Binarion) -> Result<Binarion, Error>,
) -> BnStatus {
    let (a, b) = match (to_binarion(a), to_binarion(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail_error(e),
    };
    match f(a, b) {
        Ok(r) => {
            unsafe { store(out, from_binarion(r)) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bn_add(a: BnValue, b: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { binary_op(a, b, out, |a, b| a.checked_add(b)) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_sub(a: BnValue, b: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { binary_op(a, b, out, |a, b| a.checked_sub(b)) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_mul(a: BnValue, b: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { binary_op(a, b, out, |a, b| a.checked_mul(b)) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_div(a: BnValue, b: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { binary_op(a, b, out, |a, b| a.checked_div(b)) }
}

unsafe fn unary_op(
    v: BnValue,
    out: *mut BnValue,
    f: impl Fn(Binarion) -> Result<Binarion, Error>,
) -> BnStatus {
    match to_binarion(v).and_then(&f) {
        Ok(r) => {
            unsafe { store(out, from_binarion(r)) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bn_conj(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, |b| Ok(b.conj())) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_inv(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, |b| b.inv()) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_exp(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, |b| Ok(binarion::functions::exp(b))) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_ln(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, binarion::functions::ln) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_sqrt(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, binarion::functions::sqrt) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_sin(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, binarion::functions::sin) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_cos(v: BnValue, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, binarion::functions::cos) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_pow(v: BnValue, n: u32, out: *mut BnValue) -> BnStatus {
    unsafe { unary_op(v, out, |b| Ok(b.powi(n))) }
}

#[no_mangle]
pub unsafe extern "C" fn bn_det(v: BnValue, out: *mut f64) -> BnStatus {
    match to_binarion(v) {
        Ok(b) => {
            unsafe { store(out, b.det()) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bn_trace(v: BnValue, out: *mut f64) -> BnStatus {
    match to_binarion(v) {
        Ok(b) => {
            unsafe { store(out, b.trace()) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

/// Evaluates an expression such as `"exp(ln(2I+1E))"` in the signature
/// `E^2 = eps I`.
#[no_mangle]
pub unsafe extern "C" fn bn_eval_str(
    src: *const c_char,
    eps: i32,
    out: *mut BnValue,
) -> BnStatus {
    let src = match unsafe { read_str(src) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let sig = match Signature::from_eps(eps as i64) {
        Ok(sig) => sig,
        Err(e) => return fail_error(e),
    };
    match expr::eval_str(src, sig) {
        Ok(v) => {
            unsafe { store(out, from_binarion(v)) };
            BnStatus::Ok
        }
        Err(e) => fail_expr(e),
    }
}

fn quad(order: u32, subdivisions: u32) -> Quadrature {
    let defaults = Quadrature::default();
    Quadrature {
        order: if order == 0 { defaults.order } else { order as usize },
        subdivisions: if subdivisions == 0 {
            defaults.subdivisions
        } else {
            subdivisions as usize
        },
    }
}

fn kernel_by_name(name: &str) -> Result<binarion::fields::Kernel, BnStatus> {
    named_kernel(name).ok_or_else(|| {
        fail(
            BnStatus::InvalidArgument,
            format!("unknown kernel {name:?}"),
        )
    })
}

/// Parses a contour from its JSON form. On success the caller owns the
/// handle and must release it with [`bn_contour_free`].
#[no_mangle]
pub unsafe extern "C" fn bn_contour_parse(
    json: *const c_char,
    out: *mut *mut BnContour,
) -> BnStatus {
    let (json, out) = match (unsafe { read_str(json) }, out.is_null()) {
        (Ok(j), false) => (j, out),
        (Err(status), _) => return status,
        (_, true) => return fail(BnStatus::InvalidArgument, "null out pointer"),
    };
    match serde_json::from_str::<Contour>(json) {
        Ok(c) => {
            unsafe { out.write(Box::into_raw(Box::new(BnContour(c)))) };
            BnStatus::Ok
        }
        Err(e) => fail(BnStatus::Malformed, e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bn_contour_free(c: *mut BnContour) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// Integrates the named kernel (see the core library's kernel registry:
/// identity, conj, square, cube, exp, ln, sin, cos, sqrt, inv) along the
/// contour. Pass 0 for `order` or `subdivisions` to use the defaults.
#[no_mangle]
pub unsafe extern "C" fn bn_contour_integrate(
    c: *const BnContour,
    kernel: *const c_char,
    eps: i32,
    order: u32,
    subdivisions: u32,
    out: *mut BnValue,
) -> BnStatus {
    let contour = match unsafe { read_handle(c) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    let name = match unsafe { read_str(kernel) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let f = match kernel_by_name(name) {
        Ok(f) => f,
        Err(status) => return status,
    };
    let sig = match Signature::from_eps(eps as i64) {
        Ok(sig) => sig,
        Err(e) => return fail_error(e),
    };
    match contour.integrate(sig, f, quad(order, subdivisions)) {
        Ok(v) => {
            unsafe { store(out, from_binarion(v)) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

/// Probes the integral of kernel(L) / (L - l0) around the contour.
/// Writes `*out_divergent = 0` and the integral on a clear contour;
/// writes `*out_divergent = 1` plus the measured clearance and the
/// decision threshold when the singular lines touch the contour.
#[no_mangle]
pub unsafe extern "C" fn bn_contour_cauchy_probe(
    c: *const BnContour,
    kernel: *const c_char,
    l0: BnValue,
    order: u32,
    subdivisions: u32,
    out_value: *mut BnValue,
    out_divergent: *mut i32,
    out_clearance: *mut f64,
    out_threshold: *mut f64,
) -> BnStatus {
    let contour = match unsafe { read_handle(c) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    let name = match unsafe { read_str(kernel) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let f = match kernel_by_name(name) {
        Ok(f) => f,
        Err(status) => return status,
    };
    let l0 = match to_binarion(l0) {
        Ok(b) => b,
        Err(e) => return fail_error(e),
    };
    match contour.cauchy_probe(f, l0, quad(order, subdivisions)) {
        Ok(CauchyOutcome::Value(v)) => {
            unsafe {
                store(out_value, from_binarion(v));
                store(out_divergent, 0);
                store(out_clearance, 0.0);
                store(out_threshold, 0.0);
            }
            BnStatus::Ok
        }
        Ok(CauchyOutcome::Divergent { clearance, threshold }) => {
            unsafe {
                store(out_divergent, 1);
                store(out_clearance, clearance);
                store(out_threshold, threshold);
            }
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

/// Parses a sampled signal from its JSON form; release with
/// [`bn_signal_free`].
#[no_mangle]
pub unsafe extern "C" fn bn_signal_parse(
    json: *const c_char,
    out: *mut *mut BnSignal,
) -> BnStatus {
    let (json, out) = match (unsafe { read_str(json) }, out.is_null()) {
        (Ok(j), false) => (j, out),
        (Err(status), _) => return status,
        (_, true) => return fail(BnStatus::InvalidArgument, "null out pointer"),
    };
    match serde_json::from_str::<SampledSignal>(json) {
        Ok(s) => {
            unsafe { out.write(Box::into_raw(Box::new(BnSignal(s)))) };
            BnStatus::Ok
        }
        Err(e) => fail(BnStatus::Malformed, e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bn_signal_free(s: *mut BnSignal) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Number of samples; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn bn_signal_len(s: *const BnSignal) -> usize {
    unsafe { read_handle(s) }.map_or(0, |h| h.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn bn_signal_sample(
    s: *const BnSignal,
    index: usize,
    out: *mut f64,
) -> BnStatus {
    let signal = match unsafe { read_handle(s) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    match signal.samples().get(index) {
        Some(v) => {
            unsafe { store(out, *v) };
            BnStatus::Ok
        }
        None => fail(
            BnStatus::InvalidArgument,
            format!("index {index} out of range for {} samples", signal.len()),
        ),
    }
}

/// Applies the operator x I + y E to the signal, producing a new handle.
#[no_mangle]
pub unsafe extern "C" fn bn_signal_apply(
    s: *const BnSignal,
    a: BnValue,
    out: *mut *mut BnSignal,
) -> BnStatus {
    let signal = match unsafe { read_handle(s) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(BnStatus::InvalidArgument, "null out pointer");
    }
    let a = match to_binarion(a) {
        Ok(b) => b,
        Err(e) => return fail_error(e),
    };
    match signal.apply_operator(a) {
        Ok(r) => {
            unsafe { out.write(Box::into_raw(Box::new(BnSignal(r)))) };
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

/// Splits a 2-periodic signal into its 1-periodic and 1-antiperiodic
/// parts, returning two new handles.
#[no_mangle]
pub unsafe extern "C" fn bn_signal_decompose(
    s: *const BnSignal,
    out_p1: *mut *mut BnSignal,
    out_ap1: *mut *mut BnSignal,
) -> BnStatus {
    let signal = match unsafe { read_handle(s) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    if out_p1.is_null() || out_ap1.is_null() {
        return fail(BnStatus::InvalidArgument, "null out pointer");
    }
    match signal.decompose() {
        Ok((p1, ap1)) => {
            unsafe {
                out_p1.write(Box::into_raw(Box::new(BnSignal(p1))));
                out_ap1.write(Box::into_raw(Box::new(BnSignal(ap1))));
            }
            BnStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

/// Parses a field grid from its JSON form; release with [`bn_grid_free`].
#[no_mangle]
pub unsafe extern "C" fn bn_grid_parse(json: *const c_char, out: *mut *mut BnGrid) -> BnStatus {
    let (json, out) = match (unsafe { read_str(json) }, out.is_null()) {
        (Ok(j), false) => (j, out),
        (Err(status), _) => return status,
        (_, true) => return fail(BnStatus::InvalidArgument, "null out pointer"),
    };
    match serde_json::from_str::<FieldGrid>(json) {
        Ok(g) => {
            unsafe { out.write(Box::into_raw(Box::new(BnGrid(g)))) };
            BnStatus::Ok
        }
        Err(e) => fail(BnStatus::Malformed, e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bn_grid_free(g: *mut BnGrid) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

fn sense_of(sense: BnSense) -> CrSense {
    match sense {
        BnSense::Split => CrSense::Split,
        BnSense::Complex => CrSense::Complex,
    }
}

/// Maximum absolute residuals of the first-order system in the chosen
/// sense over the grid interior.
#[no_mangle]
pub unsafe extern "C" fn bn_grid_cr_residual(
    g: *const BnGrid,
    sense: BnSense,
    out_r1: *mut f64,
    out_r2: *mut f64,
) -> BnStatus {
    let grid = match unsafe { read_handle(g) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    let report = grid.analytic_verdict(sense_of(sense));
    unsafe {
        store(out_r1, report.max_r1);
        store(out_r2, report.max_r2);
    }
    BnStatus::Ok
}

/// Writes 1 when the residuals clear the grid's h^2-scaled threshold.
#[no_mangle]
pub unsafe extern "C" fn bn_grid_is_analytic(
    g: *const BnGrid,
    sense: BnSense,
    out: *mut i32,
) -> BnStatus {
    let grid = match unsafe { read_handle(g) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    let report = grid.analytic_verdict(sense_of(sense));
    unsafe { store(out, report.analytic as i32) };
    BnStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn bn_grid_wave_residual(
    g: *const BnGrid,
    out_u: *mut f64,
    out_v: *mut f64,
) -> BnStatus {
    let grid = match unsafe { read_handle(g) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    let (u, v) = grid.wave_residual();
    unsafe {
        store(out_u, u);
        store(out_v, v);
    }
    BnStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn bn_grid_laplace_residual(
    g: *const BnGrid,
    out_u: *mut f64,
    out_v: *mut f64,
) -> BnStatus {
    let grid = match unsafe { read_handle(g) } {
        Ok(h) => &h.0,
        Err(status) => return status,
    };
    let (u, v) = grid.laplace_residual();
    unsafe {
        store(out_u, u);
        store(out_v, v);
    }
    BnStatus::Ok
}
