//! C ABI over `grasscluster`.
//!
//! Objects are opaque heap handles released with their `_free` function.
//! Every fallible call returns a [`GcStatus`]; the message of the most recent
//! failure on the calling thread is available through [`gc_last_error`].

use grasscluster::csp::{count_partitions, verify_csp_capped, CSPReport};
use grasscluster::planepartition::PlanePartition;
use grasscluster::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    Dimension = 2,
    Index = 3,
    Parameter = 4,
    Invariant = 5,
    Resource = 6,
    BufferTooSmall = 7,
    Other = 8,
    Panic = 9,
}

/// Opaque plane partition in an a×b box.
pub struct GcPlanePartition(PlanePartition);

/// Opaque result of a cyclic sieving check.
pub struct GcCspReport(CSPReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::Dimension(_) => GcStatus::Dimension,
        Error::Index(_) => GcStatus::Index,
        Error::Parameter(_) | Error::Parse(_) => GcStatus::Parameter,
        Error::Invariant(_) => GcStatus::Invariant,
        Error::Resource { .. } => GcStatus::Resource,
        _ => GcStatus::Other,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), GcStatus>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside grasscluster".into());
            GcStatus::Panic
        }
    }
}

fn lib<T>(r: grasscluster::Result<T>) -> Result<T, GcStatus> {
    r.map_err(|e| {
        let s = status_of(&e);
        set_error(e.to_string());
        s
    })
}

fn non_null<'a, T>(p: *const T) -> Result<&'a T, GcStatus> {
    // SAFETY: the caller passes either null or a pointer obtained from this library.
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error("null pointer argument".into());
        GcStatus::NullPointer
    })
}

fn write_out<T>(out: *mut T, v: T) -> Result<(), GcStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(GcStatus::NullPointer);
    }
    // SAFETY: checked non-null; the caller guarantees it is writable.
    unsafe { out.write(v) };
    Ok(())
}

fn boxed<T>(out: *mut *mut T, v: T) -> Result<(), GcStatus> {
    write_out(out, Box::into_raw(Box::new(v)))
}

/// Message of the last failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn gc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a partition from `a*b` row-major entries.
///
/// # Safety
/// `entries` must point to `a*b` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_new(a: usize, b: usize, entries: *const u32, out: *mut *mut GcPlanePartition) -> GcStatus {
    guard(|| {
        let Some(len) = a.checked_mul(b).filter(|_| a > 0 && b > 0) else {
            set_error(format!("invalid box {a}x{b}"));
            return Err(GcStatus::Dimension);
        };
        if entries.is_null() {
            set_error("null entries".into());
            return Err(GcStatus::NullPointer);
        }
        let rows: Vec<Vec<u32>> = std::slice::from_raw_parts(entries, len).chunks(b).map(<[u32]>::to_vec).collect();
        boxed(out, GcPlanePartition(lib(PlanePartition::from_rows(&rows))?))
    })
}

/// Releases a partition. Null is ignored.
///
/// # Safety
/// `p` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_free(p: *mut GcPlanePartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Box dimensions of a partition.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_dims(p: *const GcPlanePartition, a: *mut usize, b: *mut usize) -> GcStatus {
    guard(|| {
        let p = non_null(p)?;
        write_out(a, p.0.a())?;
        write_out(b, p.0.b())
    })
}

/// Copies the row-major entries into `buf` of length `len` (at least a*b).
///
/// # Safety
/// `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_entries(p: *const GcPlanePartition, buf: *mut u32, len: usize) -> GcStatus {
    guard(|| {
        let p = non_null(p)?;
        let e = p.0.entries();
        if buf.is_null() {
            set_error("null buffer".into());
            return Err(GcStatus::NullPointer);
        }
        if len < e.len() {
            set_error(format!("buffer holds {len} values, need {}", e.len()));
            return Err(GcStatus::BufferTooSmall);
        }
        ptr::copy_nonoverlapping(e.as_ptr(), buf, e.len());
        Ok(())
    })
}

/// Sum of the entries.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_size(p: *const GcPlanePartition, out: *mut u64) -> GcStatus {
    guard(|| write_out(out, non_null(p)?.0.size()))
}

/// Toggles position (i, j), 1-indexed, inside the a×b×c box.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_toggle(p: *const GcPlanePartition, i: usize, j: usize, c: u32, out: *mut *mut GcPlanePartition) -> GcStatus {
    guard(|| boxed(out, GcPlanePartition(lib(non_null(p)?.0.toggle(i, j, c))?)))
}

/// Applies η `power` times inside the a×b×c box.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_pp_eta(p: *const GcPlanePartition, c: u32, power: usize, out: *mut *mut GcPlanePartition) -> GcStatus {
    guard(|| boxed(out, GcPlanePartition(lib(non_null(p)?.0.eta_pow(c, power))?)))
}

/// |P(a,b,c)|. Fails with `Resource` if it does not fit in 64 bits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_count_partitions(a: usize, b: usize, c: u32, out: *mut u64) -> GcStatus {
    guard(|| {
        let n = count_partitions(a, b, c);
        match u64::try_from(&n) {
            Ok(v) => write_out(out, v),
            Err(_) => {
                set_error(format!("|P({a},{b},{c})| = {n} does not fit in 64 bits"));
                Err(GcStatus::Resource)
            }
        }
    })
}

/// Checks cyclic sieving for P(a,b,c). A `cap` of 0 selects the library default.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_csp_verify(a: usize, b: usize, c: u32, cap: u64, out: *mut *mut GcCspReport) -> GcStatus {
    guard(|| {
        let cap = if cap == 0 { grasscluster::csp::DEFAULT_CAP } else { u128::from(cap) };
        boxed(out, GcCspReport(lib(verify_csp_capped(a, b, c, cap))?))
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gc_csp_free(r: *mut GcCspReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Whether every row of the report agrees.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_csp_all_equal(r: *const GcCspReport, out: *mut bool) -> GcStatus {
    guard(|| write_out(out, non_null(r)?.0.all_equal))
}

/// Number of rows, which is a+b.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_csp_row_count(r: *const GcCspReport, out: *mut usize) -> GcStatus {
    guard(|| write_out(out, non_null(r)?.0.rows.len()))
}

/// Row `d`: the η^d fixed-point count, M(ζ^d) when it is an integer in the i64 range, and agreement.
/// `integral` is false when the value is not an integer or does not fit.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_csp_row(
    r: *const GcCspReport,
    d: usize,
    fixed: *mut u64,
    value: *mut i64,
    integral: *mut bool,
    equal: *mut bool,
) -> GcStatus {
    guard(|| {
        let r = non_null(r)?;
        let Some(row) = r.0.rows.get(d) else {
            set_error(format!("row {d} out of range 0..{}", r.0.rows.len()));
            return Err(GcStatus::Index);
        };
        let v = row.value.as_integer().and_then(|m| i64::try_from(m).ok());
        write_out(fixed, row.fixed)?;
        write_out(value, v.unwrap_or(0))?;
        write_out(integral, v.is_some())?;
        write_out(equal, row.equal)
    })
}
