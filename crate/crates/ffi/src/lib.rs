//! C interface to `autosemi`.
//!
//! Structures live behind an opaque [`AutosemiStructure`] handle. Every call returns an
//! [`AutosemiStatus`]; on `AUTOSEMI_STATUS_ERROR` the message is available from
//! [`autosemi_last_error`] on the same thread. Strings returned through `char **` are owned
//! by the caller and released with [`autosemi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use autosemi::cli::rees_json;
use autosemi::decide::{Decider, DecisionError};
use autosemi::document::StructureDocument;
use autosemi::oracle::CayleyTable;
use autosemi::structure::catalog;

/// Outcome of a call. Decision questions answer `OK` for yes and `NO` for no.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutosemiStatus {
    Ok = 0,
    No = 1,
    Error = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutosemiProperty {
    HasZero = 0,
    HasIdentity = 1,
    RightCancellative = 2,
    CompletelySimple = 3,
    CompletelyZeroSimple = 4,
    HasLeftZero = 5,
}

/// An interpreted automatic structure with its decision procedures.
pub struct AutosemiStructure {
    decider: Decider,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

enum Fail {
    Null,
    Utf8,
    Message(String),
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Message(e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<AutosemiStatus, Fail>) -> AutosemiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail::Null)) => {
            set_error("null argument");
            AutosemiStatus::NullArgument
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string is not UTF-8");
            AutosemiStatus::InvalidUtf8
        }
        Ok(Err(Fail::Message(m))) => {
            set_error(m);
            AutosemiStatus::Error
        }
        Err(_) => {
            set_error("internal panic");
            AutosemiStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn handle<'a>(s: *const AutosemiStructure) -> Result<&'a AutosemiStructure, Fail> {
    s.as_ref().ok_or(Fail::Null)
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<AutosemiStatus, Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    *out = CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw();
    Ok(AutosemiStatus::Ok)
}

unsafe fn give_structure(out: *mut *mut AutosemiStructure, s: autosemi::structure::InterpretedAutomaticStructure) -> Result<AutosemiStatus, Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    *out = Box::into_raw(Box::new(AutosemiStructure { decider: Decider::new(&s) }));
    Ok(AutosemiStatus::Ok)
}

fn answer(yes: bool) -> AutosemiStatus {
    if yes {
        AutosemiStatus::Ok
    } else {
        AutosemiStatus::No
    }
}

/// Message of the last failed call on this thread; valid until the next failing call.
#[no_mangle]
pub extern "C" fn autosemi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static version string.
#[no_mangle]
pub extern "C" fn autosemi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Load a structure from a JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autosemi_structure_from_json(json: *const c_char, out: *mut *mut AutosemiStructure) -> AutosemiStatus {
    guard(|| {
        let s = StructureDocument::parse(text(json)?)?.to_structure()?;
        give_structure(out, s)
    })
}

/// Build the structure of a finite semigroup from a table: the order `n`, then `n` rows of
/// `n` element indices.
///
/// # Safety
/// `table` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autosemi_structure_from_cayley(table: *const c_char, out: *mut *mut AutosemiStructure) -> AutosemiStatus {
    guard(|| give_structure(out, CayleyTable::parse(text(table)?)?.to_structure()))
}

/// The bicyclic monoid on `q`, `p` with `pq = 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autosemi_structure_bicyclic(out: *mut *mut AutosemiStructure) -> AutosemiStatus {
    guard(|| give_structure(out, catalog::bicyclic()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn autosemi_structure_free(s: *mut AutosemiStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn autosemi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Serialize a structure as a JSON document.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autosemi_structure_to_json(s: *const AutosemiStructure, out: *mut *mut c_char) -> AutosemiStatus {
    guard(|| {
        let s = handle(s)?;
        give_string(out, StructureDocument::from_structure(s.decider.structure()).to_json())
    })
}

/// Representative of a word, written in the structure's notation.
///
/// # Safety
/// `s` must be a live handle, `word` a nul-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autosemi_find_representative(s: *const AutosemiStructure, word: *const c_char, out: *mut *mut c_char) -> AutosemiStatus {
    guard(|| {
        let s = handle(s)?;
        let g = s.decider.structure().generators();
        let rep = s.decider.find_representative(&g.parse_word(text(word)?)?)?;
        give_string(out, g.format_word(&rep))
    })
}

/// `OK` if `u` and `v` represent the same element, `NO` otherwise.
///
/// # Safety
/// `s` must be a live handle; `u` and `v` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn autosemi_word_problem(s: *const AutosemiStructure, u: *const c_char, v: *const c_char) -> AutosemiStatus {
    guard(|| {
        let s = handle(s)?;
        let g = s.decider.structure().generators();
        let (u, v) = (g.parse_word(text(u)?)?, g.parse_word(text(v)?)?);
        Ok(answer(s.decider.word_problem(&u, &v)?))
    })
}

/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn autosemi_property(s: *const AutosemiStructure, property: AutosemiProperty) -> AutosemiStatus {
    guard(|| {
        let d = &handle(s)?.decider;
        Ok(answer(match property {
            AutosemiProperty::HasZero => d.zero()?.is_some(),
            AutosemiProperty::HasIdentity => d.identity()?.is_some(),
            AutosemiProperty::RightCancellative => d.is_right_cancellative(),
            AutosemiProperty::CompletelySimple => d.is_completely_simple()?.is_yes(),
            AutosemiProperty::CompletelyZeroSimple => d.is_completely_zero_simple()?.is_yes(),
            AutosemiProperty::HasLeftZero => !d.left_zeros().is_empty(),
        }))
    })
}

/// `OK` if the word represents a unit of the monoid; `ERROR` if there is no identity.
///
/// # Safety
/// `s` must be a live handle and `word` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn autosemi_is_unit(s: *const AutosemiStructure, word: *const c_char) -> AutosemiStatus {
    guard(|| {
        let d = &handle(s)?.decider;
        let w = d.structure().generators().parse_word(text(word)?)?;
        Ok(answer(d.is_unit(&w)?))
    })
}

/// Rees matrix decomposition as JSON. `simple` nonzero treats the input as completely simple.
/// Returns `NO` (and leaves `out` untouched) when the semigroup has no such decomposition.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autosemi_rees_json(s: *const AutosemiStructure, simple: i32, out: *mut *mut c_char) -> AutosemiStatus {
    guard(|| {
        let d = &handle(s)?.decider;
        let r = if simple != 0 { d.rees_decomposition_simple() } else { d.rees_decomposition() };
        match r {
            Ok(r) => give_string(out, serde_json::to_string(&rees_json(&r))?),
            Err(e @ (DecisionError::NotCzs(_) | DecisionError::NotCompletelySimple(_))) => {
                set_error(e.to_string());
                Ok(AutosemiStatus::No)
            }
            Err(e) => Err(e.into()),
        }
    })
}
