//! C ABI for the permnorm library.
//!
//! Groups travel as opaque `PnGroup` handles, every fallible call returns a
//! `PnStatus`, and results land in out-parameters. Strings handed out here
//! are owned by the library and must be released with `pn_string_free`;
//! handles with `pn_group_free`. The JSON reports are byte-identical to the
//! CLI's, trailing newline included.
//!
//! The committed header lives at `include/permnorm.h`; a test regenerates it
//! with cbindgen and fails if the two drift apart.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use permnorm::cli;
use permnorm::error::Error;
use permnorm::group::Group;
use permnorm::pipeline::PipelineConfig;
use permnorm::{fixtures, groupfile};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PnStatus {
    /// The call succeeded and all out-parameters are filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A text argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input text could not be parsed.
    ParseError = 3,
    /// The input was well-formed but violated a precondition.
    InvalidInput = 4,
    /// A configured enumeration, coset, or backtrack limit was exceeded.
    ResourceLimit = 5,
    /// The library panicked; the panic was caught at the boundary.
    Panic = 6,
}

/// Search limits; a zero field means the built-in default for that limit.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct PnLimits {
    /// Cap on explicit element enumeration (default 1000000).
    pub enum_limit: usize,
    /// Cap on coset enumeration in the almost-simple path (default 4096).
    pub coset_limit: usize,
    /// Cap on backtrack nodes (default 10000000).
    pub backtrack_limit: usize,
}

/// A permutation group behind an opaque handle.
pub struct PnGroup {
    inner: Group,
}

fn config_from(limits: &PnLimits) -> PipelineConfig {
    let mut config = PipelineConfig::default();
    if limits.enum_limit > 0 {
        config.enum_limit = limits.enum_limit;
    }
    if limits.coset_limit > 0 {
        config.coset_limit = limits.coset_limit;
    }
    if limits.backtrack_limit > 0 {
        config.node_limit = limits.backtrack_limit;
    }
    config
}

fn status_of(e: &Error) -> PnStatus {
    match e {
        Error::Parse(_) => PnStatus::ParseError,
        Error::Invalid(_) => PnStatus::InvalidInput,
        Error::ResourceLimit(_) => PnStatus::ResourceLimit,
    }
}

fn guarded<F: FnOnce() -> PnStatus>(f: F) -> PnStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PnStatus::Panic)
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, PnStatus> {
    if p.is_null() {
        return Err(PnStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| PnStatus::InvalidUtf8)
}

/// # Safety
/// `out` must be a valid pointer.
unsafe fn write_string(out: *mut *mut c_char, text: String) -> PnStatus {
    // Library output never contains NUL bytes.
    let c = CString::new(text).expect("output has no interior NUL");
    *out = c.into_raw();
    PnStatus::Ok
}

/// # Safety
/// `out` must be a valid pointer.
unsafe fn write_group(out: *mut *mut PnGroup, group: Group) -> PnStatus {
    *out = Box::into_raw(Box::new(PnGroup { inner: group }));
    PnStatus::Ok
}

/// The default search limits.
#[no_mangle]
pub extern "C" fn pn_limits_default() -> PnLimits {
    let config = PipelineConfig::default();
    PnLimits {
        enum_limit: config.enum_limit,
        coset_limit: config.coset_limit,
        backtrack_limit: config.node_limit,
    }
}

/// Parses a group file (degree line, then one generator per line) into a
/// fresh handle. On success `*out_group` owns the group.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out_group` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_group_parse(
    text: *const c_char,
    out_group: *mut *mut PnGroup,
) -> PnStatus {
    if out_group.is_null() {
        return PnStatus::NullArgument;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(|| match groupfile::parse(text) {
        Ok(group) => write_group(out_group, group),
        Err(e) => status_of(&e),
    })
}

/// Builds a named fixture group (`cyclic-7`, `m11`, `wreath-5-1-2`, ...).
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out_group` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_group_fixture(
    name: *const c_char,
    out_group: *mut *mut PnGroup,
) -> PnStatus {
    if out_group.is_null() {
        return PnStatus::NullArgument;
    }
    let name = match read_str(name) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(|| match fixtures::fixture(name) {
        Ok(group) => write_group(out_group, group),
        Err(e) => status_of(&e),
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `group` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pn_group_free(group: *mut PnGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Number of points the group acts on.
///
/// # Safety
/// `group` must be a live handle and `out_degree` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_group_degree(
    group: *const PnGroup,
    out_degree: *mut usize,
) -> PnStatus {
    if group.is_null() || out_degree.is_null() {
        return PnStatus::NullArgument;
    }
    *out_degree = (*group).inner.degree();
    PnStatus::Ok
}

/// Group order as a decimal string (orders routinely exceed 64 bits).
///
/// # Safety
/// `group` must be a live handle and `out_order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_group_order(
    group: *const PnGroup,
    out_order: *mut *mut c_char,
) -> PnStatus {
    if group.is_null() || out_order.is_null() {
        return PnStatus::NullArgument;
    }
    guarded(|| write_string(out_order, (*group).inner.order().to_string()))
}

/// The group rendered back in group-file format.
///
/// # Safety
/// `group` must be a live handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_group_text(
    group: *const PnGroup,
    out_text: *mut *mut c_char,
) -> PnStatus {
    if group.is_null() || out_text.is_null() {
        return PnStatus::NullArgument;
    }
    guarded(|| write_string(out_text, groupfile::format(&(*group).inner)))
}

/// Primitivity classification plus normaliser in the symmetric group, as the
/// CLI's `classify` JSON report.
///
/// # Safety
/// `group` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_classify_json(
    group: *const PnGroup,
    limits: PnLimits,
    out_json: *mut *mut c_char,
) -> PnStatus {
    if group.is_null() || out_json.is_null() {
        return PnStatus::NullArgument;
    }
    guarded(|| {
        let config = config_from(&limits);
        match cli::classify_report(&(*group).inner, &config) {
            Ok(value) => {
                let text = serde_json::to_string_pretty(&value).expect("report serialises");
                write_string(out_json, format!("{}\n", text))
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Normaliser of `group` inside `ambient` (null ambient means the full
/// symmetric group of the same degree), as the CLI's `normalizer` JSON
/// report.
///
/// # Safety
/// `group` must be a live handle, `ambient` null or a live handle, and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_normalizer_json(
    group: *const PnGroup,
    ambient: *const PnGroup,
    limits: PnLimits,
    out_json: *mut *mut c_char,
) -> PnStatus {
    if group.is_null() || out_json.is_null() {
        return PnStatus::NullArgument;
    }
    guarded(|| {
        let config = config_from(&limits);
        let k = if ambient.is_null() {
            None
        } else {
            Some(&(*ambient).inner)
        };
        match cli::normalizer_report(&(*group).inner, k, &config) {
            Ok(value) => {
                let text = serde_json::to_string_pretty(&value).expect("report serialises");
                write_string(out_json, format!("{}\n", text))
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string produced by this library. Null is a no-op.
///
/// # Safety
/// `text` must be null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pn_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
