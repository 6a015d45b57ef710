//! C interface to `damerau-codes`.
//!
//! Codes and balls are opaque handles created by `dc_*_new` functions and
//! released with the matching `*_free`. Words cross the boundary as
//! NUL-terminated strings of '0' and '1'. Every fallible call returns a
//! [`DcStatus`]; outputs are written through pointers only on success.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use damerau_codes::block_td_codes::BlockTDSpec;
use damerau_codes::burst_codes::{GeneralBurstSpec, OddBurstSpec, Scale};
use damerau_codes::single_edit_codes::SingleEditCodeSpec;
use damerau_codes::td_codes::{EllTDSpec, OneTDSpec};
use damerau_codes::verify::CodeSpec;
use damerau_codes::{ball, BitSeq, Error, ErrorBallKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidWord = 3,
    DecodeFailure = 4,
    BufferTooSmall = 5,
    OutOfRange = 6,
    Panic = 7,
}

impl From<&Error> for DcStatus {
    fn from(e: &Error) -> Self {
        match e {
            _ if e.is_decode_failure() => DcStatus::DecodeFailure,
            Error::EmptySequence | Error::InvalidSymbol(_) | Error::LengthMismatch { .. } => {
                DcStatus::InvalidWord
            }
            _ => DcStatus::InvalidArgument,
        }
    }
}

/// A code with its codebook, built on first use.
pub struct DcCode {
    spec: CodeSpec,
    words: Option<Vec<BitSeq>>,
}

/// Error ball of one word, sorted lexicographically.
pub struct DcBall {
    words: Vec<BitSeq>,
}

fn guard(f: impl FnOnce() -> Result<(), DcStatus>) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => DcStatus::Panic,
    }
}

unsafe fn read_word(s: *const c_char) -> Result<BitSeq, DcStatus> {
    if s.is_null() {
        return Err(DcStatus::NullPointer);
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| DcStatus::InvalidWord)?;
    text.parse().map_err(|_| DcStatus::InvalidWord)
}

unsafe fn write_word(w: &BitSeq, buf: *mut c_char, len: usize) -> Result<(), DcStatus> {
    if buf.is_null() {
        return Err(DcStatus::NullPointer);
    }
    if len < w.len() + 1 {
        return Err(DcStatus::BufferTooSmall);
    }
    let text = w.to_string();
    ptr::copy_nonoverlapping(text.as_ptr() as *const c_char, buf, text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

unsafe fn emit_code(spec: Result<CodeSpec, Error>, out: *mut *mut DcCode) -> DcStatus {
    if out.is_null() {
        return DcStatus::NullPointer;
    }
    guard(|| {
        let spec = spec.map_err(|e| DcStatus::from(&e))?;
        *out = Box::into_raw(Box::new(DcCode { spec, words: None }));
        Ok(())
    })
}

fn scale(scaled: bool, window: usize, svt_mod: u64) -> Scale {
    let mut s = if scaled { Scale::SCALED } else { Scale::FULL };
    if window > 0 {
        s = s.with_window(window);
    }
    if svt_mod > 0 {
        s = s.with_svt_modulus(svt_mod);
    }
    s
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn dc_status_message(status: DcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        DcStatus::Ok => b"ok\0",
        DcStatus::NullPointer => b"null pointer\0",
        DcStatus::InvalidArgument => b"invalid argument\0",
        DcStatus::InvalidWord => b"invalid word\0",
        DcStatus::DecodeFailure => b"decoding failed\0",
        DcStatus::BufferTooSmall => b"buffer too small\0",
        DcStatus::OutOfRange => b"index out of range\0",
        DcStatus::Panic => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Single transposition or deletion code with VT-type residue `a`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_t_or_d_new(n: usize, a: u64, out: *mut *mut DcCode) -> DcStatus {
    emit_code(SingleEditCodeSpec::new(n, a).map(CodeSpec::TorD), out)
}

/// Code for `ell` adjacent transpositions and one deletion.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_td_new(
    n: usize,
    a: u64,
    parity: u8,
    ell: usize,
    out: *mut *mut DcCode,
) -> DcStatus {
    emit_code(EllTDSpec::new(n, a, parity, ell).map(CodeSpec::EllTD), out)
}

/// Code for one transposition and one deletion; `n` must be even.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_one_td_new(
    n: usize,
    a1: u64,
    a2: u64,
    out: *mut *mut DcCode,
) -> DcStatus {
    emit_code(OneTDSpec::new(n, a1, a2).map(CodeSpec::OneTD), out)
}

/// Burst code for at most `b` deletions, or exactly odd lengths when `odd`
/// is set. Zero `window` or `svt_mod` selects the default of the scale.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_burst_new(
    n: usize,
    b: usize,
    scaled: bool,
    window: usize,
    svt_mod: u64,
    odd: bool,
    out: *mut *mut DcCode,
) -> DcStatus {
    let s = scale(scaled, window, svt_mod);
    let spec = if odd {
        OddBurstSpec::new(n, b, s).map(CodeSpec::OddBurst)
    } else {
        GeneralBurstSpec::new(n, b, s).map(CodeSpec::GeneralBurst)
    };
    emit_code(spec, out)
}

/// Code for one block transposition and one block deletion of length `b`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_block_td_new(
    n: usize,
    b: usize,
    scaled: bool,
    window: usize,
    svt_mod: u64,
    out: *mut *mut DcCode,
) -> DcStatus {
    emit_code(
        BlockTDSpec::new(n, b, scale(scaled, window, svt_mod)).map(CodeSpec::BlockTD),
        out,
    )
}

/// # Safety
/// `code` must come from a `dc_code_*_new` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dc_code_free(code: *mut DcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Word length of the code, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_code_length(code: *const DcCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.n())
}

/// # Safety
/// `code` must be a live handle, `word` a NUL-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_contains(
    code: *const DcCode,
    word: *const c_char,
    out: *mut bool,
) -> DcStatus {
    let (Some(code), false) = (code.as_ref(), out.is_null()) else {
        return DcStatus::NullPointer;
    };
    guard(|| {
        let x = read_word(word)?;
        *out = code.spec.contains(&x).map_err(|e| DcStatus::from(&e))?;
        Ok(())
    })
}

/// Decodes `received` into `buf`, which must hold n + 1 bytes.
///
/// # Safety
/// `code` must be a live handle, `received` a NUL-terminated string and
/// `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_decode(
    code: *const DcCode,
    received: *const c_char,
    buf: *mut c_char,
    len: usize,
) -> DcStatus {
    let Some(code) = code.as_ref() else {
        return DcStatus::NullPointer;
    };
    guard(|| {
        let y = read_word(received)?;
        let x = code.spec.decode(&y).map_err(|e| DcStatus::from(&e))?;
        write_word(&x, buf, len)
    })
}

unsafe fn codebook<'a>(code: *mut DcCode) -> Result<&'a [BitSeq], DcStatus> {
    let code = code.as_mut().ok_or(DcStatus::NullPointer)?;
    if code.words.is_none() {
        let book = code.spec.enumerate().map_err(|e| DcStatus::from(&e))?;
        code.words = Some(book.words().to_vec());
    }
    Ok(code.words.as_deref().unwrap_or(&[]))
}

/// Number of codewords. Enumerates the code on first use.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_size(code: *mut DcCode, out: *mut usize) -> DcStatus {
    if out.is_null() {
        return DcStatus::NullPointer;
    }
    guard(|| {
        *out = codebook(code)?.len();
        Ok(())
    })
}

/// Codeword `index` in lexicographic order, written to `buf`.
///
/// # Safety
/// `code` must be a live handle and `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn dc_code_codeword(
    code: *mut DcCode,
    index: usize,
    buf: *mut c_char,
    len: usize,
) -> DcStatus {
    guard(|| {
        let w = codebook(code)?.get(index).ok_or(DcStatus::OutOfRange)?;
        write_word(w, buf, len)
    })
}

/// Error ball of `word`. `kind` is a tag such as "t-or-d", "tl-d" or
/// "bt-and-d"; `ell` and `b` are ignored by kinds that take no parameter
/// and must be nonzero for kinds that do.
///
/// # Safety
/// `word` and `kind` must be NUL-terminated strings and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_ball_new(
    word: *const c_char,
    kind: *const c_char,
    ell: usize,
    b: usize,
    out: *mut *mut DcBall,
) -> DcStatus {
    if kind.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    guard(|| {
        let x = read_word(word)?;
        let tag = CStr::from_ptr(kind)
            .to_str()
            .map_err(|_| DcStatus::InvalidArgument)?;
        let nonzero = |v: usize| (v > 0).then_some(v);
        let kind = ErrorBallKind::from_tag(tag, None, None)
            .or_else(|_| ErrorBallKind::from_tag(tag, nonzero(ell), None))
            .or_else(|_| ErrorBallKind::from_tag(tag, None, nonzero(b)))
            .or_else(|_| ErrorBallKind::from_tag(tag, nonzero(ell), nonzero(b)))
            .map_err(|e| DcStatus::from(&e))?;
        let words = ball(&x, kind).map_err(|e| DcStatus::from(&e))?.into_vec();
        *out = Box::into_raw(Box::new(DcBall { words }));
        Ok(())
    })
}

/// # Safety
/// `ball` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_ball_len(ball: *const DcBall) -> usize {
    ball.as_ref().map_or(0, |b| b.words.len())
}

/// Member `index` of the ball, written to `buf`.
///
/// # Safety
/// `ball` must be a live handle and `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn dc_ball_get(
    ball: *const DcBall,
    index: usize,
    buf: *mut c_char,
    len: usize,
) -> DcStatus {
    let Some(ball) = ball.as_ref() else {
        return DcStatus::NullPointer;
    };
    guard(|| {
        let w = ball.words.get(index).ok_or(DcStatus::OutOfRange)?;
        write_word(w, buf, len)
    })
}

/// # Safety
/// `ball` must come from `dc_ball_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dc_ball_free(ball: *mut DcBall) {
    if !ball.is_null() {
        drop(Box::from_raw(ball));
    }
}
