//! C ABI over `tourtrack`.
//!
//! Every function returns a [`TtStatus`] and writes its result through an out
//! pointer. Handles (`TtDfa`, `TtTournament`) and strings returned by the
//! library are owned by the caller and must be released with the matching
//! `*_free` function. Bit strings are NUL-terminated text of `0` and `1`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tourtrack::bijection::{
    decompose_blocks, format_blocks, string_dual, string_to_tournament, tournament_to_string,
};
use tourtrack::counting::{recurrence_ntr, ut};
use tourtrack::dfa::{build_dfa, minimize_dfa, Dfa};
use tourtrack::rule::is_tracking_oracle;
use tourtrack::tournament::{compose, dual, is_isomorphic, score_vector};
use tourtrack::{BinaryString, Error, IlString, Tournament, TrackingRule};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotUnique = 4,
    NotDecomposable = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

impl From<Error> for TtStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUnique => TtStatus::NotUnique,
            Error::NotDecomposable | Error::InputTracks(_) | Error::TooShort => {
                TtStatus::NotDecomposable
            }
            Error::WindowTooLarge(_)
            | Error::RangeTooLarge(_)
            | Error::SizeTooLarge { .. }
            | Error::IndexOutOfRange(_) => TtStatus::OutOfRange,
            _ => TtStatus::InvalidInput,
        }
    }
}

/// Compiled automaton for one tracking rule.
pub struct TtDfa(Dfa);

/// Tournament on `n` labelled nodes.
pub struct TtTournament(Tournament);

type Outcome = Result<(), TtStatus>;

fn guard(body: impl FnOnce() -> Outcome) -> TtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TtStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => TtStatus::Panic,
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, TtStatus> {
    if p.is_null() {
        return Err(TtStatus::NullPointer);
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| TtStatus::InvalidUtf8)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, TtStatus> {
    p.as_ref().ok_or(TtStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(TtStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| TtStatus::InvalidInput)?;
    write(out, c.into_raw())
}

fn rule(m: usize, n: usize, l: usize) -> Result<TrackingRule, TtStatus> {
    Ok(TrackingRule::new(m, n, l)?)
}

unsafe fn parse_bits(p: *const c_char) -> Result<BinaryString, TtStatus> {
    Ok(text(p)?.parse::<BinaryString>()?)
}

unsafe fn il(p: *const c_char) -> Result<IlString, TtStatus> {
    Ok(IlString::new(parse_bits(p)?)?)
}

/// Static description of `status`. Never free the result.
#[no_mangle]
pub extern "C" fn tt_status_message(status: TtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        TtStatus::Ok => c"ok",
        TtStatus::NullPointer => c"null pointer argument",
        TtStatus::InvalidUtf8 => c"string is not valid UTF-8",
        TtStatus::InvalidInput => c"invalid input",
        TtStatus::NotUnique => c"not a unique tournament",
        TtStatus::NotDecomposable => c"not an initial-loss non-tracking string",
        TtStatus::OutOfRange => c"argument out of range",
        TtStatus::BufferTooSmall => c"buffer too small",
        TtStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Window-oracle classification of `bits` under rule `(m, n, l)`.
///
/// # Safety
/// `bits` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_is_tracking(
    bits: *const c_char,
    m: usize,
    n: usize,
    l: usize,
    out: *mut bool,
) -> TtStatus {
    guard(|| {
        let rule = rule(m, n, l)?;
        let s = parse_bits(bits)?;
        write(out, is_tracking_oracle(&s, &rule))
    })
}

/// Builds the automaton for rule `(m, n, l)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_dfa_build(
    m: usize,
    n: usize,
    l: usize,
    out: *mut *mut TtDfa,
) -> TtStatus {
    guard(|| {
        let dfa = build_dfa(&rule(m, n, l)?)?;
        write(out, Box::into_raw(Box::new(TtDfa(dfa))))
    })
}

/// Minimal automaton equivalent to `dfa`, as a new handle.
///
/// # Safety
/// `dfa` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_dfa_minimize(dfa: *const TtDfa, out: *mut *mut TtDfa) -> TtStatus {
    guard(|| {
        let min = minimize_dfa(&handle(dfa)?.0);
        write(out, Box::into_raw(Box::new(TtDfa(min))))
    })
}

/// # Safety
/// `dfa` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_dfa_state_count(dfa: *const TtDfa, out: *mut usize) -> TtStatus {
    guard(|| write(out, handle(dfa)?.0.state_count()))
}

/// True in `out` iff `bits` ends in the tracked state.
///
/// # Safety
/// `dfa` must be a live handle, `bits` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tt_dfa_run(
    dfa: *const TtDfa,
    bits: *const c_char,
    out: *mut bool,
) -> TtStatus {
    guard(|| {
        let dfa = handle(dfa)?;
        write(out, dfa.0.run(&parse_bits(bits)?))
    })
}

/// # Safety
/// `dfa` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tt_dfa_free(dfa: *mut TtDfa) {
    if !dfa.is_null() {
        drop(Box::from_raw(dfa));
    }
}

/// NTr(k) for rule 3,5,2 as a decimal string.
///
/// # Safety
/// `out` must be writable; free the result with [`tt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tt_ntr(k: usize, out: *mut *mut c_char) -> TtStatus {
    guard(|| write_string(out, recurrence_ntr(k).to_string()))
}

/// UT(n) for `n >= 1` as a decimal string.
///
/// # Safety
/// `out` must be writable; free the result with [`tt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tt_ut(n: usize, out: *mut *mut c_char) -> TtStatus {
    guard(|| write_string(out, ut(n)?.to_string()))
}

/// Parses a tournament from `n:hex` or the JSON edge-list form.
///
/// # Safety
/// `encoded` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_parse(
    encoded: *const c_char,
    out: *mut *mut TtTournament,
) -> TtStatus {
    guard(|| {
        let t: Tournament = text(encoded)?.parse()?;
        write(out, Box::into_raw(Box::new(TtTournament(t))))
    })
}

/// Unique tournament encoded by an initial-loss string.
///
/// # Safety
/// `bits` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_from_il_string(
    bits: *const c_char,
    out: *mut *mut TtTournament,
) -> TtStatus {
    guard(|| {
        let t = string_to_tournament(&il(bits)?)?;
        write(out, Box::into_raw(Box::new(TtTournament(t))))
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_node_count(
    t: *const TtTournament,
    out: *mut usize,
) -> TtStatus {
    guard(|| write(out, handle(t)?.0.node_count()))
}

/// Whether node `i` beats node `j`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_beats(
    t: *const TtTournament,
    i: usize,
    j: usize,
    out: *mut bool,
) -> TtStatus {
    guard(|| {
        let t = &handle(t)?.0;
        let n = t.node_count();
        if i >= n || j >= n || i == j {
            return Err(TtStatus::OutOfRange);
        }
        write(out, t.beats(i, j))
    })
}

/// Sorted score vector. `len` is always set to the node count; when `cap`
/// is smaller the call fails with `BufferTooSmall` and writes nothing else.
///
/// # Safety
/// `t` must be a live handle, `len` writable and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_score_vector(
    t: *const TtTournament,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> TtStatus {
    guard(|| {
        let sv = score_vector(&handle(t)?.0);
        let scores = sv.scores();
        write(len, scores.len())?;
        if cap < scores.len() {
            return Err(TtStatus::BufferTooSmall);
        }
        if buf.is_null() && !scores.is_empty() {
            return Err(TtStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(scores.as_ptr(), buf, scores.len());
        Ok(())
    })
}

/// Tournament with every edge reversed.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_dual(
    t: *const TtTournament,
    out: *mut *mut TtTournament,
) -> TtStatus {
    guard(|| {
        let d = dual(&handle(t)?.0);
        write(out, Box::into_raw(Box::new(TtTournament(d))))
    })
}

/// `a + b`: nodes of `a` first, every node of `b` beats every node of `a`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_compose(
    a: *const TtTournament,
    b: *const TtTournament,
    out: *mut *mut TtTournament,
) -> TtStatus {
    guard(|| {
        let c = compose(&handle(a)?.0, &handle(b)?.0);
        write(out, Box::into_raw(Box::new(TtTournament(c))))
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_is_isomorphic(
    a: *const TtTournament,
    b: *const TtTournament,
    out: *mut bool,
) -> TtStatus {
    guard(|| write(out, is_isomorphic(&handle(a)?.0, &handle(b)?.0)))
}

/// Initial-loss string of a unique tournament; `NotUnique` otherwise.
///
/// # Safety
/// `t` must be a live handle; free the result with [`tt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_to_il_string(
    t: *const TtTournament,
    out: *mut *mut c_char,
) -> TtStatus {
    guard(|| {
        let s = tournament_to_string(&handle(t)?.0)?;
        write_string(out, s.to_string())
    })
}

/// `n:hex` encoding.
///
/// # Safety
/// `t` must be a live handle; free the result with [`tt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_to_hex(
    t: *const TtTournament,
    out: *mut *mut c_char,
) -> TtStatus {
    guard(|| write_string(out, handle(t)?.0.to_hex()))
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tt_tournament_free(t: *mut TtTournament) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Block factorization written as `0 + 001 + ...`.
///
/// # Safety
/// `bits` must be NUL-terminated; free the result with [`tt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tt_il_decompose(bits: *const c_char, out: *mut *mut c_char) -> TtStatus {
    guard(|| {
        let blocks = decompose_blocks(il(bits)?.bits())?;
        write_string(out, format_blocks(&blocks))
    })
}

/// Initial-loss string of the dual tournament.
///
/// # Safety
/// `bits` must be NUL-terminated; free the result with [`tt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tt_il_dual(bits: *const c_char, out: *mut *mut c_char) -> TtStatus {
    guard(|| write_string(out, string_dual(&il(bits)?)?.to_string()))
}
