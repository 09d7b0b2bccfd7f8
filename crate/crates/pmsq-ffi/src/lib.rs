//! C ABI for the square library: opaque handles, integer error codes, and a
//! per-thread last-error message. The header is generated into `include/` by
//! the build script.
//!
//! Ownership rules: every `*mut PmsqSquare` returned through an out-pointer is
//! owned by the caller and must be released with `pmsq_square_free`; strings
//! returned as `*mut c_char` must be released with `pmsq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use num_bigint::BigInt;

use pmsq::json::MatrixDoc;
use pmsq::pms::Pms;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PmsqStatus {
    Ok = 0,
    /// A row or column sum differs from the rest.
    NotMagic = 1,
    /// Operands have incompatible orders.
    OrderMismatch = 2,
    /// Malformed JSON, a non-integer carrier, or a non-square matrix.
    Parse = 3,
    /// A value does not fit in the requested fixed-width type.
    Overflow = 4,
    /// A required pointer argument was null.
    NullPointer = 5,
}

/// Opaque handle to a verified square.
pub struct PmsqSquare(Pms);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = owned);
}

fn fail(status: PmsqStatus, msg: &str) -> PmsqStatus {
    set_error(msg);
    status
}

fn emit(out: *mut *mut PmsqSquare, sq: Pms) -> PmsqStatus {
    unsafe { *out = Box::into_raw(Box::new(PmsqSquare(sq))) };
    PmsqStatus::Ok
}

/// Message describing the most recent failure on this thread. The pointer is
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn pmsq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Verify a row-major `order x order` block of 64-bit entries.
///
/// # Safety
/// `entries` must point to `order * order` readable values and `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_verify_i64(
    entries: *const i64,
    order: usize,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    if entries.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    if order == 0 {
        return fail(PmsqStatus::Parse, "order must be at least 1");
    }
    let flat = std::slice::from_raw_parts(entries, order * order);
    let rows: Vec<Vec<i64>> = flat.chunks(order).map(|r| r.to_vec()).collect();
    match Pms::verify_i64(&rows) {
        Ok(sq) => emit(out, sq),
        Err(e) => fail(PmsqStatus::NotMagic, &e.to_string()),
    }
}

/// Parse and verify a square from its JSON document form.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_from_json(
    json: *const c_char,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    if json.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return fail(PmsqStatus::Parse, "json is not valid UTF-8");
    };
    let doc: MatrixDoc = match serde_json::from_str(text) {
        Ok(d) => d,
        Err(e) => return fail(PmsqStatus::Parse, &e.to_string()),
    };
    match doc.to_pms() {
        Ok(sq) => emit(out, sq),
        Err(e) => {
            let status = if e.to_string().contains("not magic") {
                PmsqStatus::NotMagic
            } else {
                PmsqStatus::Parse
            };
            fail(status, &e.to_string())
        }
    }
}

/// Serialize a square to its JSON document form. Free with `pmsq_string_free`.
///
/// # Safety
/// `sq` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_to_json(sq: *const PmsqSquare) -> *mut c_char {
    if sq.is_null() {
        set_error("null pointer argument");
        return ptr::null_mut();
    }
    let text = MatrixDoc::from_pms(&(*sq).0).to_json_string();
    CString::new(text.trim_end()).unwrap().into_raw()
}

/// # Safety
/// `sq` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_order(sq: *const PmsqSquare) -> usize {
    if sq.is_null() {
        return 0;
    }
    (*sq).0.order()
}

/// Magic constant, if it fits in an `i64`.
///
/// # Safety
/// `sq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_constant_i64(
    sq: *const PmsqSquare,
    out: *mut i64,
) -> PmsqStatus {
    if sq.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    match i64::try_from((*sq).0.constant().clone()) {
        Ok(v) => {
            *out = v;
            PmsqStatus::Ok
        }
        Err(_) => fail(PmsqStatus::Overflow, "constant does not fit in i64"),
    }
}

/// Entry at `(row, col)`, if it fits in an `i64`.
///
/// # Safety
/// `sq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_entry_i64(
    sq: *const PmsqSquare,
    row: usize,
    col: usize,
    out: *mut i64,
) -> PmsqStatus {
    if sq.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    let square = &(*sq).0;
    if row >= square.order() || col >= square.order() {
        return fail(PmsqStatus::Parse, "entry index out of range");
    }
    match i64::try_from(square.entry(row, col).clone()) {
        Ok(v) => {
            *out = v;
            PmsqStatus::Ok
        }
        Err(_) => fail(PmsqStatus::Overflow, "entry does not fit in i64"),
    }
}

unsafe fn binary(
    a: *const PmsqSquare,
    b: *const PmsqSquare,
    out: *mut *mut PmsqSquare,
    f: impl Fn(&Pms, &Pms) -> Result<Pms, pmsq::pms::PmsError>,
) -> PmsqStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    match f(&(*a).0, &(*b).0) {
        Ok(sq) => emit(out, sq),
        Err(e) => fail(PmsqStatus::OrderMismatch, &e.to_string()),
    }
}

/// Entry-wise sum; orders must match.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_add(
    a: *const PmsqSquare,
    b: *const PmsqSquare,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    binary(a, b, out, |x, y| x.add(y))
}

/// Block construction `[A B; B A]` of order `2n`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_direct_sum(
    a: *const PmsqSquare,
    b: *const PmsqSquare,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    binary(a, b, out, |x, y| x.direct_sum(y))
}

/// Kronecker product of order `n * m`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_kronecker(
    a: *const PmsqSquare,
    b: *const PmsqSquare,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    binary(a, b, out, |x, y| Ok(x.kronecker(y)))
}

/// Multiply every entry by `k`.
///
/// # Safety
/// `sq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_scale(
    sq: *const PmsqSquare,
    k: i64,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    if sq.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    emit(out, (*sq).0.scale(&BigInt::from(k)))
}

/// Add `k` to every entry.
///
/// # Safety
/// `sq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_shift(
    sq: *const PmsqSquare,
    k: i64,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    if sq.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    emit(out, (*sq).0.shift(&BigInt::from(k)))
}

/// Entry-wise negation.
///
/// # Safety
/// `sq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_neg(
    sq: *const PmsqSquare,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    if sq.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    emit(out, (*sq).0.neg())
}

/// Lexicographically least square in the dihedral orbit (rotations and
/// reflections) of `sq`.
///
/// # Safety
/// `sq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_canonical_form(
    sq: *const PmsqSquare,
    out: *mut *mut PmsqSquare,
) -> PmsqStatus {
    if sq.is_null() || out.is_null() {
        return fail(PmsqStatus::NullPointer, "null pointer argument");
    }
    emit(out, pmsq::enumerate::canonical_form(&(*sq).0))
}

/// Release a handle. Null is a no-op.
///
/// # Safety
/// `sq` must be a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn pmsq_square_free(sq: *mut PmsqSquare) {
    if !sq.is_null() {
        drop(Box::from_raw(sq));
    }
}

/// Release a string returned by `pmsq_square_to_json`. Null is a no-op.
///
/// # Safety
/// `s` must be a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn pmsq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
