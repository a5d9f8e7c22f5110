//! C interface to `tightcl`.
//!
//! Problems are parsed from the same `key = value` text the `tc` binary reads
//! and held behind an opaque `TcProblem` handle. Every call returns a
//! `TcStatus`; on failure the message and error code are kept per thread and
//! can be read with `tc_last_error_message` and `tc_last_error_code`.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with `tc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tightcl::cli::{self, CliError, Command, Document, ErrorCode};
use tightcl::closure::Verdict;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed or invalid problem text, or a request it cannot serve.
    Input = 3,
    /// The bundle did not split within the allowed field extensions.
    Undecided = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcCommand {
    Check = 0,
    Closure = 1,
    Decompose = 2,
    Info = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcVerdict {
    Member = 0,
    NonMember = 1,
}

/// A parsed problem.
pub struct TcProblem {
    inner: cli::Problem,
}

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(code: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { code: clean(code), message: clean(message) }));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: TcStatus, code: &str, message: &str) -> TcStatus {
    set_error(code, message);
    status
}

fn from_cli(e: &CliError) -> TcStatus {
    let status = match e.code {
        ErrorCode::Undecided => TcStatus::Undecided,
        ErrorCode::Internal => TcStatus::Internal,
        _ => TcStatus::Input,
    };
    let msg = match e.line {
        Some(l) => format!("line {l}: {}", e.message),
        None => e.message.clone(),
    };
    fail(status, e.code.as_str(), &msg)
}

/// Runs `f` with panics turned into `TcStatus::Panic`.
fn guard(f: impl FnOnce() -> TcStatus) -> TcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(TcStatus::Panic, "E_INTERNAL", &msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TcStatus> {
    if s.is_null() {
        return Err(fail(TcStatus::NullPointer, "E_NULL", "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(TcStatus::InvalidUtf8, "E_UTF8", "argument is not valid UTF-8"))
}

/// Parses problem text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_problem_parse(text: *const c_char, out: *mut *mut TcProblem) -> TcStatus {
    guard(|| {
        if out.is_null() {
            return fail(TcStatus::NullPointer, "E_NULL", "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::parse_problem(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(TcProblem { inner: p }));
                TcStatus::Ok
            }
            Err(e) => from_cli(&e),
        }
    })
}

/// Releases a handle from `tc_problem_parse`. Null is ignored.
///
/// # Safety
/// `problem` must come from `tc_problem_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_problem_free(problem: *mut TcProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Decides membership of the problem's candidate; the verdict goes to `*verdict`.
///
/// # Safety
/// `problem` must be a live handle and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_check(problem: *const TcProblem, verdict: *mut TcVerdict) -> TcStatus {
    guard(|| {
        if problem.is_null() || verdict.is_null() {
            return fail(TcStatus::NullPointer, "E_NULL", "null argument");
        }
        let p = &(*problem).inner;
        let Some(c) = &p.candidate else {
            return fail(TcStatus::Input, "E_MISSING_FIELD", "`check` needs a `candidate`");
        };
        match tightcl::closure::tight_closure_member(&p.ideal, c) {
            Ok(cert) => {
                *verdict = match cert.verdict {
                    Verdict::Member => TcVerdict::Member,
                    Verdict::NonMember => TcVerdict::NonMember,
                };
                TcStatus::Ok
            }
            Err(e) => from_cli(&CliError { code: code_of(&e), line: None, message: e.to_string() }),
        }
    })
}

fn code_of(e: &tightcl::Error) -> ErrorCode {
    match e {
        tightcl::Error::Undecided(_) => ErrorCode::Undecided,
        tightcl::Error::NotHomogeneous | tightcl::Error::BadCandidate => ErrorCode::Candidate,
        _ => ErrorCode::Internal,
    }
}

/// Runs a command and stores its JSON document (the `--json` output of `tc`) in `*json`.
///
/// `degree` is used by `Decompose` when `has_degree` is nonzero; `e_max < 0`
/// selects the default Frobenius depth for `Check`. `*exit_code`, if not null,
/// receives the exit status `tc` would use.
///
/// # Safety
/// `problem` must be a live handle, `json` a valid pointer, `exit_code` valid or null.
#[no_mangle]
pub unsafe extern "C" fn tc_run_json(
    problem: *const TcProblem,
    command: TcCommand,
    degree: i64,
    has_degree: i32,
    e_max: i32,
    json: *mut *mut c_char,
    exit_code: *mut i32,
) -> TcStatus {
    guard(|| {
        if problem.is_null() || json.is_null() {
            return fail(TcStatus::NullPointer, "E_NULL", "null argument");
        }
        *json = ptr::null_mut();
        let cmd = match command {
            TcCommand::Check => Command::Check { e_max: u32::try_from(e_max).ok() },
            TcCommand::Closure => Command::Closure,
            TcCommand::Decompose => Command::Decompose { degree: (has_degree != 0).then_some(degree) },
            TcCommand::Info => Command::Info,
        };
        let (text, code) = match cli::run(cmd, &(*problem).inner) {
            Ok(doc) => (cli::render_json(&doc), Document::exit_code(&doc)),
            Err(e) => {
                let s = from_cli(&e);
                if !exit_code.is_null() {
                    *exit_code = e.code.exit_code();
                }
                return s;
            }
        };
        if !exit_code.is_null() {
            *exit_code = code;
        }
        *json = CString::new(text).expect("JSON has no NUL").into_raw();
        TcStatus::Ok
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next call on the thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |l| l.message.as_ptr()))
}

/// Code of the last failure on this thread (`"E_CHAR"`, ...), or null.
#[no_mangle]
pub extern "C" fn tc_last_error_code() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |l| l.code.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
