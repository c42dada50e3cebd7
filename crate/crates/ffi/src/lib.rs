//! C ABI over `nuniv`.
//!
//! Alphabets are opaque handles created with [`nuniv_alphabet_new`] and released
//! with [`nuniv_alphabet_free`]. Words cross the boundary as NUL-terminated
//! strings over the alphabet's letters. Every fallible function returns a
//! [`NunivStatus`] and writes its result through out-pointers; strings handed
//! back to the caller must be released with [`nuniv_string_free`]. The message
//! for the last failure on the calling thread is available from
//! [`nuniv_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nuniv::alpha_beta::absent_factors_structured;
use nuniv::nearly::{check_nearly, construct_w_u};
use nuniv::word_core::absent_set;
use nuniv::{arch_factorize, deficiency, simon_congruent, Alphabet, Budget, CongruenceMode, Error, Word};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NunivStatus {
    Ok = 0,
    /// A required pointer was NULL or a string was not UTF-8.
    NullOrEncoding = 1,
    /// Malformed alphabet, word, or parameter.
    Invalid = 2,
    /// The operation's precondition does not hold for the input.
    Precondition = 3,
    /// The configured budget is too small for the requested enumeration.
    Capacity = 4,
    /// A count does not fit the result type.
    Overflow = 5,
    /// An internal invariant failed; the library state is unaffected.
    Internal = 6,
}

/// Which scattered factors two congruent words must share.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NunivMode {
    /// Equal sets of length-k factors.
    ExactK = 0,
    /// Equal sets of length-j factors for every j <= k.
    UpToK = 1,
}

/// An ordered alphabet of distinct lowercase ASCII letters.
pub struct NunivAlphabet {
    inner: Alphabet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn remember(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NunivStatus {
    match e {
        Error::Validation(_) => NunivStatus::Invalid,
        Error::Contract(_) => NunivStatus::Precondition,
        Error::Capacity { .. } => NunivStatus::Capacity,
        Error::Overflow(_) => NunivStatus::Overflow,
    }
}

struct Fail(NunivStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Fail>;

fn guard(body: impl FnOnce() -> Outcome) -> NunivStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NunivStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            remember(msg);
            status
        }
        Err(_) => {
            remember("internal error".to_string());
            NunivStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(NunivStatus::NullOrEncoding, format!("{what} is NULL"))
}

/// # Safety
/// `p` is NULL or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(NunivStatus::NullOrEncoding, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is NULL or a handle from `nuniv_alphabet_new` that has not been freed.
unsafe fn handle<'a>(p: *const NunivAlphabet) -> Result<&'a Alphabet, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("alphabet"))
}

/// # Safety
/// `out` is NULL or valid for writes.
unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `alpha` and `word` follow the conventions in the crate docs.
unsafe fn parse<'a>(alpha: *const NunivAlphabet, word: *const c_char) -> Result<(&'a Alphabet, Word), Fail> {
    let a = handle(alpha)?;
    let w = a.parse(text(word, "word")?)?;
    Ok((a, w))
}

/// Creates an alphabet from its letters in order (e.g. `"abc"`).
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_alphabet_new(spec: *const c_char, out: *mut *mut NunivAlphabet) -> NunivStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = Alphabet::new(text(spec, "spec")?)?;
        out.write(Box::into_raw(Box::new(NunivAlphabet { inner })));
        Ok(())
    })
}

/// Releases an alphabet. NULL is ignored.
///
/// # Safety
/// `alpha` is NULL or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nuniv_alphabet_free(alpha: *mut NunivAlphabet) {
    if !alpha.is_null() {
        drop(Box::from_raw(alpha));
    }
}

/// Number of letters, or 0 for NULL.
///
/// # Safety
/// `alpha` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nuniv_alphabet_size(alpha: *const NunivAlphabet) -> usize {
    alpha.as_ref().map_or(0, |h| h.inner.sigma())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nuniv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn nuniv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Number of arches of `word`.
///
/// # Safety
/// Pointers follow the crate conventions; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_universality_index(
    alpha: *const NunivAlphabet,
    word: *const c_char,
    out: *mut usize,
) -> NunivStatus {
    guard(|| {
        let (a, w) = parse(alpha, word)?;
        put(out, arch_factorize(a, &w).iota(), "out")
    })
}

/// Number of absent length-`k` scattered factors. Fails with
/// `NUNIV_STATUS_OVERFLOW` when it exceeds 2^64 - 1.
///
/// # Safety
/// Pointers follow the crate conventions; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_deficiency(
    alpha: *const NunivAlphabet,
    word: *const c_char,
    k: usize,
    out: *mut u64,
) -> NunivStatus {
    guard(|| {
        let (a, w) = parse(alpha, word)?;
        let m = u64::try_from(deficiency(a, &w, k)?)
            .map_err(|_| Error::Overflow("narrowing the deficiency to 64 bits"))?;
        put(out, m, "out")
    })
}

/// Decides nearly `k`-universality. On success `*is_nearly` holds the verdict;
/// if `absent` is not NULL it receives the absent factor (caller frees) or NULL
/// when the word is not nearly `k`-universal.
///
/// # Safety
/// Pointers follow the crate conventions; `is_nearly` is valid for writes and
/// `absent` is NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_check_nearly(
    alpha: *const NunivAlphabet,
    word: *const c_char,
    k: usize,
    is_nearly: *mut bool,
    absent: *mut *mut c_char,
) -> NunivStatus {
    guard(|| {
        let (a, w) = parse(alpha, word)?;
        if is_nearly.is_null() {
            return Err(null("is_nearly"));
        }
        let v = check_nearly(a, &w, k);
        is_nearly.write(v.is_nearly);
        if !absent.is_null() {
            absent.write(v.absent.map_or(ptr::null_mut(), |u| owned(a.render(&u))));
        }
        Ok(())
    })
}

/// The minimal word whose only absent `|u|`-factor is `u` (caller frees).
///
/// # Safety
/// Pointers follow the crate conventions; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_construct(
    alpha: *const NunivAlphabet,
    u: *const c_char,
    out: *mut *mut c_char,
) -> NunivStatus {
    guard(|| {
        let (a, u) = parse(alpha, u)?;
        let w = construct_w_u(a, &u)?;
        put(out, owned(a.render(&w)), "out")
    })
}

/// Absent length-`k` factors, sorted and separated by single spaces (caller
/// frees). With `structured` set the candidate-graph method is used, which
/// requires exactly `k-1` arches.
///
/// # Safety
/// Pointers follow the crate conventions; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_absent_factors(
    alpha: *const NunivAlphabet,
    word: *const c_char,
    k: usize,
    structured: bool,
    budget: u64,
    out: *mut *mut c_char,
) -> NunivStatus {
    guard(|| {
        let (a, w) = parse(alpha, word)?;
        let budget = Budget(budget);
        let mut factors: Vec<Word> = if structured {
            absent_factors_structured(a, &w, k, budget)?.into_iter().map(|x| x.u).collect()
        } else {
            absent_set(a, &w, k, budget)?
        };
        factors.sort();
        let joined = factors.iter().map(|u| a.render(u)).collect::<Vec<_>>().join(" ");
        put(out, owned(joined), "out")
    })
}

/// Simon congruence of `w1` and `w2` at level `k`; `mode` is a `NunivMode` value.
///
/// # Safety
/// Pointers follow the crate conventions; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nuniv_congruent(
    alpha: *const NunivAlphabet,
    w1: *const c_char,
    w2: *const c_char,
    k: usize,
    mode: u32,
    budget: u64,
    out: *mut bool,
) -> NunivStatus {
    guard(|| {
        let (a, x) = parse(alpha, w1)?;
        let y = a.parse(text(w2, "w2")?)?;
        let mode = match mode {
            m if m == NunivMode::ExactK as u32 => CongruenceMode::ExactK,
            m if m == NunivMode::UpToK as u32 => CongruenceMode::UpToK,
            m => return Err(Fail(NunivStatus::Invalid, format!("unknown mode {m}"))),
        };
        put(out, simon_congruent(a, &x, &y, k, mode, Budget(budget))?, "out")
    })
}
