//! C ABI for `torsig`.
//!
//! Knots and step functions are opaque handles created by `*_new` and
//! released by the matching `*_free`. Every fallible call returns a
//! [`TorsigStatus`] and writes its result through an out-pointer; on failure
//! the out-pointer is left untouched and [`torsig_last_error`] describes
//! what went wrong. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use torsig::lattice::{self, StepFunction};
use torsig::maxsig;
use torsig::{Error, RationalAngle, TorusKnot};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsigStatus {
    Ok = 0,
    NullPointer = 1,
    NotCoprime = 2,
    InvalidParameter = 3,
    OutOfRange = 4,
    Parse = 5,
    NearSingular = 6,
    Validation = 7,
    Internal = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Opaque torus knot handle.
pub struct TorsigKnot(TorusKnot);

/// Opaque handle to the signature function of one knot.
pub struct TorsigStepFunction(StepFunction);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(TorsigStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotCoprime { .. } => TorsigStatus::NotCoprime,
            Error::InvalidParameter(_) => TorsigStatus::InvalidParameter,
            Error::OutOfRange(_) => TorsigStatus::OutOfRange,
            Error::Parse(_) => TorsigStatus::Parse,
            Error::NearSingular { .. } => TorsigStatus::NearSingular,
            Error::ValidationFailure(_) => TorsigStatus::Validation,
            Error::Invariant(_) => TorsigStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TorsigStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TorsigStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TorsigStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(&format!("panic: {msg}"));
            TorsigStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn torsig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failed call on this thread, or "" after a
/// successful one. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn torsig_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates T(p,q). The order of `p` and `q` does not matter.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_knot_new(
    p: i64,
    q: i64,
    out: *mut *mut TorsigKnot,
) -> TorsigStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let knot = TorusKnot::new(p, q)?;
        write(out, Box::into_raw(Box::new(TorsigKnot(knot))))
    })
}

/// # Safety
/// `knot` must be null or a handle from [`torsig_knot_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn torsig_knot_free(knot: *mut TorsigKnot) {
    if !knot.is_null() {
        drop(Box::from_raw(knot));
    }
}

/// The smaller parameter, or 0 for a null handle.
///
/// # Safety
/// `knot` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torsig_knot_p(knot: *const TorsigKnot) -> u32 {
    knot.as_ref().map_or(0, |k| k.0.p())
}

/// The larger parameter, or 0 for a null handle.
///
/// # Safety
/// `knot` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torsig_knot_q(knot: *const TorsigKnot) -> u32 {
    knot.as_ref().map_or(0, |k| k.0.q())
}

/// sigma_t at `t = num/den`, which must lie strictly between 0 and 1.
///
/// # Safety
/// `knot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_lt_signature(
    knot: *const TorsigKnot,
    num: i64,
    den: i64,
    out: *mut i64,
) -> TorsigStatus {
    guard(|| {
        let k = deref(knot, "knot")?;
        let t = RationalAngle::new(BigInt::from(num), BigInt::from(den))?;
        write(out, lattice::lt_signature(&k.0, &t))
    })
}

/// sigma_t at an angle given as the exact string "n/d", for numerators and
/// denominators beyond 64 bits.
///
/// # Safety
/// `knot` must be a live handle, `t` a nul-terminated string and `out` valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_lt_signature_str(
    knot: *const TorsigKnot,
    t: *const c_char,
    out: *mut i64,
) -> TorsigStatus {
    guard(|| {
        let k = deref(knot, "knot")?;
        if t.is_null() {
            return Err(null("angle"));
        }
        let text = CStr::from_ptr(t)
            .to_str()
            .map_err(|_| Failure(TorsigStatus::Parse, "angle is not UTF-8".to_string()))?;
        let t: RationalAngle = text.parse()?;
        write(out, lattice::lt_signature(&k.0, &t))
    })
}

/// Classical signature sigma_{1/2}.
///
/// # Safety
/// `knot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_classical_signature(
    knot: *const TorsigKnot,
    out: *mut i64,
) -> TorsigStatus {
    guard(|| write(out, lattice::classical_signature(&deref(knot, "knot")?.0)))
}

/// Maximum of sigma_t over the circle.
///
/// # Safety
/// `knot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_max_signature(
    knot: *const TorsigKnot,
    out: *mut i64,
) -> TorsigStatus {
    guard(|| write(out, maxsig::analyze(&deref(knot, "knot")?.0)?.sigma_hat))
}

/// Maximal cyclic partial sum M of the balanced sequence.
///
/// # Safety
/// `knot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_max_cyclic_sum(
    knot: *const TorsigKnot,
    out: *mut i64,
) -> TorsigStatus {
    guard(|| write(out, maxsig::analyze(&deref(knot, "knot")?.0)?.m))
}

/// Lower bound ceil(sigma_hat / 2) on the topological 4-genus.
///
/// # Safety
/// `knot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_g4_lower_bound(
    knot: *const TorsigKnot,
    out: *mut i64,
) -> TorsigStatus {
    guard(|| {
        write(
            out,
            maxsig::analyze(&deref(knot, "knot")?.0)?.g4_lower_bound,
        )
    })
}

/// Copies the balanced sequence (entries +1 and -1) into `buf`.
///
/// `len` always receives the sequence length. If `cap` is smaller, nothing
/// is copied and the call returns `BUFFER_TOO_SMALL`; `buf` may be null when
/// `cap` is 0.
///
/// # Safety
/// `knot` must be a live handle, `len` valid for writes and `buf` valid for
/// `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_balanced_sequence(
    knot: *const TorsigKnot,
    buf: *mut i8,
    cap: usize,
    len: *mut usize,
) -> TorsigStatus {
    guard(|| {
        let a = maxsig::analyze(&deref(knot, "knot")?.0)?;
        let entries = &a.sequence.entries;
        write(len, entries.len())?;
        if cap < entries.len() {
            return Err(Failure(
                TorsigStatus::BufferTooSmall,
                format!("sequence has {} entries, buffer holds {cap}", entries.len()),
            ));
        }
        if !entries.is_empty() {
            if buf.is_null() {
                return Err(null("buffer"));
            }
            ptr::copy_nonoverlapping(entries.as_ptr(), buf, entries.len());
        }
        Ok(())
    })
}

/// Computes the full signature function of `knot`.
///
/// # Safety
/// `knot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_step_function_new(
    knot: *const TorsigKnot,
    out: *mut *mut TorsigStepFunction,
) -> TorsigStatus {
    guard(|| {
        let k = deref(knot, "knot")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let sf = lattice::signature_step_function(&k.0);
        write(out, Box::into_raw(Box::new(TorsigStepFunction(sf))))
    })
}

/// # Safety
/// `sf` must be null or a handle from [`torsig_step_function_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn torsig_step_function_free(sf: *mut TorsigStepFunction) {
    if !sf.is_null() {
        drop(Box::from_raw(sf));
    }
}

/// Number of jumps. There is one more open interval than jumps.
///
/// # Safety
/// `sf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torsig_step_function_len(sf: *const TorsigStepFunction) -> usize {
    sf.as_ref().map_or(0, |s| s.0.breakpoints.len())
}

fn index_error(index: usize, len: usize) -> Failure {
    Failure(
        TorsigStatus::OutOfRange,
        format!("index {index} not below {len}"),
    )
}

/// The jump abscissa `num/den` (lowest terms) at position `index`, and the
/// value there.
///
/// # Safety
/// `sf` must be a live handle; `num`, `den` and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_step_function_breakpoint(
    sf: *const TorsigStepFunction,
    index: usize,
    num: *mut u64,
    den: *mut u64,
    value: *mut i64,
) -> TorsigStatus {
    guard(|| {
        let s = &deref(sf, "step function")?.0;
        let t = s
            .breakpoints
            .get(index)
            .ok_or_else(|| index_error(index, s.breakpoints.len()))?;
        let to_u64 = |v: &BigInt| {
            u64::try_from(v)
                .map_err(|_| Failure(TorsigStatus::Internal, "breakpoint overflows u64".into()))
        };
        let (n, d) = (to_u64(t.numer())?, to_u64(t.denom())?);
        if num.is_null() || den.is_null() || value.is_null() {
            return Err(null("output pointer"));
        }
        write(num, n)?;
        write(den, d)?;
        write(value, s.breakpoint_values[index])
    })
}

/// Value on the open interval just before breakpoint `index`; `index == len`
/// is the last interval, ending at 1.
///
/// # Safety
/// `sf` must be a live handle and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_step_function_interval_value(
    sf: *const TorsigStepFunction,
    index: usize,
    value: *mut i64,
) -> TorsigStatus {
    guard(|| {
        let s = &deref(sf, "step function")?.0;
        let v = s
            .interval_values
            .get(index)
            .ok_or_else(|| index_error(index, s.interval_values.len()))?;
        write(value, *v)
    })
}

/// Maximum over all intervals and breakpoints.
///
/// # Safety
/// `sf` must be a live handle and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn torsig_step_function_max(
    sf: *const TorsigStepFunction,
    value: *mut i64,
) -> TorsigStatus {
    guard(|| write(value, deref(sf, "step function")?.0.max()))
}
