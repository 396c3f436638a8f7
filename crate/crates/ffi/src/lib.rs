//! C ABI over the `hopfren` engine.
//!
//! A [`HopfrenContext`] is an opaque handle owning an alphabet and the memo
//! tables of the Hopf maps. Every entry point returns a [`HopfrenStatus`];
//! results come back through out-pointers. Strings returned to the caller
//! are NUL-terminated UTF-8 and must be released with
//! [`hopfren_string_free`]. On failure, [`hopfren_last_error`] describes the
//! most recent error on the calling thread.
//!
//! JSON payloads use the same schemas as the command-line tool.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hopfren::hopf::Side;
use hopfren::parenword::{Alphabet, Word};
use hopfren::toymodel::{
    default_window, forest_formula, laurent_expand, quadrature_oracle, ToyModel,
};
use hopfren::HopfContext;
use serde_json::json;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfrenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidAlphabet = 3,
    ParseError = 4,
    NotIrreducible = 5,
    ExpansionError = 6,
    QuadratureError = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfrenSide {
    Left = 0,
    Right = 1,
}

/// Opaque handle.
pub struct HopfrenContext {
    hopf: HopfContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(HopfrenStatus, String);

impl Failure {
    fn new(status: HopfrenStatus, err: impl std::fmt::Display) -> Self {
        Failure(status, err.to_string())
    }
}

/// Runs `body`, recording errors and converting panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> HopfrenStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HopfrenStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside hopfren".to_string());
            HopfrenStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(
            HopfrenStatus::NullPointer,
            "null string argument",
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::new(HopfrenStatus::InvalidUtf8, e))
}

unsafe fn context<'a>(ctx: *const HopfrenContext) -> Result<&'a HopfrenContext, Failure> {
    ctx.as_ref()
        .ok_or_else(|| Failure::new(HopfrenStatus::NullPointer, "null context"))
}

unsafe fn parse_arg(ctx: &HopfrenContext, word: *const c_char) -> Result<Word, Failure> {
    let text = read_str(word)?;
    ctx.hopf
        .parse(text)
        .map_err(|e| Failure::new(HopfrenStatus::ParseError, e))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            HopfrenStatus::NullPointer,
            "null output pointer",
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).expect("JSON has no interior NUL");
    write_out(out, c.into_raw())
}

/// Creates a context. `alphabet` is a declaration such as `"x1,x2:3"`; NULL
/// selects `x1..x9` with weight `i` for `xi`.
///
/// # Safety
/// `alphabet` must be NULL or a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hopfren_context_new(
    alphabet: *const c_char,
    out: *mut *mut HopfrenContext,
) -> HopfrenStatus {
    guard(|| {
        let alphabet = if alphabet.is_null() {
            Alphabet::numbered(9)
        } else {
            Alphabet::from_spec(read_str(alphabet)?)
                .map_err(|e| Failure::new(HopfrenStatus::InvalidAlphabet, e))?
        };
        let handle = Box::new(HopfrenContext {
            hopf: HopfContext::new(alphabet),
        });
        write_out(out, Box::into_raw(handle))
    })
}

/// # Safety
/// `ctx` must come from [`hopfren_context_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hopfren_context_free(ctx: *mut HopfrenContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hopfren_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hopfren_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Canonical rendering of `word`.
///
/// # Safety
/// Pointers must be valid; the result must be freed with [`hopfren_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopfren_canonicalize(
    ctx: *const HopfrenContext,
    word: *const c_char,
    out: *mut *mut c_char,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        write_string(out, w.to_string())
    })
}

/// Number of letters in `word`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hopfren_word_length(
    ctx: *const HopfrenContext,
    word: *const c_char,
    out: *mut usize,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        write_out(out, w.length())
    })
}

/// Coproduct as a JSON term list `[{"coeff": "p/q", "word": [u, v]}, ..]`.
///
/// # Safety
/// Pointers must be valid; the result must be freed with [`hopfren_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopfren_coproduct_json(
    ctx: *const HopfrenContext,
    word: *const c_char,
    out: *mut *mut c_char,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        let json = serde_json::to_string(&ctx.hopf.coproduct(&w).to_json()).expect("serializable");
        write_string(out, json)
    })
}

/// Antipode as a JSON term list `[{"coeff": "p/q", "word": w}, ..]`.
///
/// # Safety
/// Pointers must be valid; the result must be freed with [`hopfren_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopfren_antipode_json(
    ctx: *const HopfrenContext,
    word: *const c_char,
    side: HopfrenSide,
    out: *mut *mut c_char,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        let side = match side {
            HopfrenSide::Left => Side::Left,
            HopfrenSide::Right => Side::Right,
        };
        let json =
            serde_json::to_string(&ctx.hopf.antipode(&w, side).to_json()).expect("serializable");
        write_string(out, json)
    })
}

/// `1` if `m(S⊗id)Δ[w] = m(id⊗S)Δ[w] = E∘ē[w]`, else `0`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hopfren_hopf_axiom_check(
    ctx: *const HopfrenContext,
    word: *const c_char,
    out: *mut bool,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        write_out(out, ctx.hopf.hopf_axiom_check(&w))
    })
}

/// Counter term `S_R[w]` as `{"word", "value", "laurent"}` JSON.
///
/// # Safety
/// Pointers must be valid; the result must be freed with [`hopfren_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopfren_counterterm_json(
    ctx: *const HopfrenContext,
    word: *const c_char,
    order: i32,
    out: *mut *mut c_char,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        let z = ToyModel::new(&ctx.hopf).counterterm(&w);
        let (lo, hi) = default_window(&w, order);
        let series = laurent_expand(&z, lo, hi)
            .map_err(|e| Failure::new(HopfrenStatus::ExpansionError, e))?;
        let json =
            json!({ "word": w.to_string(), "value": z.to_json(), "laurent": series.to_json() });
        write_string(out, json.to_string())
    })
}

/// Counter term from the forest recursion, same JSON layout as
/// [`hopfren_counterterm_json`].
///
/// # Safety
/// Pointers must be valid; the result must be freed with [`hopfren_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopfren_forest_json(
    ctx: *const HopfrenContext,
    word: *const c_char,
    order: i32,
    out: *mut *mut c_char,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        let z = forest_formula(&w).map_err(|e| Failure::new(HopfrenStatus::NotIrreducible, e))?;
        let (lo, hi) = default_window(&w, order);
        let series = laurent_expand(&z, lo, hi)
            .map_err(|e| Failure::new(HopfrenStatus::ExpansionError, e))?;
        let json =
            json!({ "word": w.to_string(), "value": z.to_json(), "laurent": series.to_json() });
        write_string(out, json.to_string())
    })
}

/// Renormalized value of an irreducible word as
/// `{"word", "value", "laurent", "finite", "limit"}` JSON.
///
/// # Safety
/// Pointers must be valid; the result must be freed with [`hopfren_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopfren_renormalize_json(
    ctx: *const HopfrenContext,
    word: *const c_char,
    order: i32,
    out: *mut *mut c_char,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        let v = ToyModel::new(&ctx.hopf)
            .renormalize(&w)
            .map_err(|e| Failure::new(HopfrenStatus::NotIrreducible, e))?;
        let (lo, hi) = default_window(&w, order.max(0));
        let series = laurent_expand(&v, lo, hi)
            .map_err(|e| Failure::new(HopfrenStatus::ExpansionError, e))?;
        let json = json!({
            "word": w.to_string(),
            "value": v.to_json(),
            "laurent": series.to_json(),
            "finite": series.is_finite(),
            "limit": series.constant_term().unwrap_or_default().to_json(),
        });
        write_string(out, json.to_string())
    })
}

/// Numeric `φ(w)` at scale `c` and regulator `eps` by adaptive quadrature.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hopfren_quadrature_oracle(
    ctx: *const HopfrenContext,
    word: *const c_char,
    c: f64,
    eps: f64,
    out: *mut f64,
) -> HopfrenStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let w = parse_arg(ctx, word)?;
        let v = quadrature_oracle(&w, c, eps)
            .map_err(|e| Failure::new(HopfrenStatus::QuadratureError, e))?;
        write_out(out, v)
    })
}
