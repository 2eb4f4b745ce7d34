//! C ABI for the momhist library.
//!
//! Handles are opaque pointers created and destroyed here; every entry point
//! returns a status code and writes results through out-parameters. Strings
//! crossing the boundary are UTF-8, NUL-terminated, and owned by this
//! library until released with `momhist_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use momhist::consistency::{analyze_catalog, Flavor, RankBands};
use momhist::report::{audit_from_strings, to_json, CatalogDoc, ClassifyDoc, StabilityDoc};
use momhist::selection::stability_cells;
use momhist::{enumerate_level_sets, parse_dataset, Catalog, Dataset, DomainMode, Error};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MomhistStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DegenerateData = 4,
    InvalidGrid = 5,
    InvalidArgument = 6,
    InternalError = 7,
}

fn status_of(e: &Error) -> MomhistStatus {
    match e {
        Error::EmptyInput | Error::ParseToken { .. } | Error::ParseRational { .. } => {
            MomhistStatus::ParseError
        }
        Error::DegenerateData => MomhistStatus::DegenerateData,
        Error::InvalidGrid { .. } => MomhistStatus::InvalidGrid,
        Error::InvalidConfig { .. } | Error::TooFewValues { .. } => MomhistStatus::InvalidArgument,
        _ => MomhistStatus::InternalError,
    }
}

/// Opaque dataset handle.
pub struct MomhistDataset {
    inner: Dataset,
}

/// Opaque catalog handle.
pub struct MomhistCatalog {
    dataset: Dataset,
    inner: Catalog,
}

unsafe fn cstr_arg<'a>(p: *const c_char) -> Result<&'a str, MomhistStatus> {
    if p.is_null() {
        return Err(MomhistStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| MomhistStatus::InvalidUtf8)
}

fn export_string(s: String, out: *mut *mut c_char) -> MomhistStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            MomhistStatus::Ok
        }
        Err(_) => MomhistStatus::InternalError,
    }
}

/// Parses newline/comma-separated decimal text into a dataset handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn momhist_dataset_parse(
    text: *const c_char,
    out: *mut *mut MomhistDataset,
) -> MomhistStatus {
    if out.is_null() {
        return MomhistStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { cstr_arg(text) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_dataset(text) {
        Ok(d) => {
            let handle = Box::new(MomhistDataset { inner: d });
            unsafe { *out = Box::into_raw(handle) };
            MomhistStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of values in the dataset; 0 for a null handle.
///
/// # Safety
/// `ds` must be null or a live handle from `momhist_dataset_parse`.
#[no_mangle]
pub unsafe extern "C" fn momhist_dataset_len(ds: *const MomhistDataset) -> usize {
    match unsafe { ds.as_ref() } {
        Some(d) => d.inner.n(),
        None => 0,
    }
}

/// Releases a dataset handle. Null is a no-op.
///
/// # Safety
/// `ds` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn momhist_dataset_free(ds: *mut MomhistDataset) {
    if !ds.is_null() {
        drop(unsafe { Box::from_raw(ds) });
    }
}

/// Enumerates all shape level sets into a catalog handle.
///
/// # Safety
/// `ds` must be a live dataset handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn momhist_catalog_build(
    ds: *const MomhistDataset,
    max_bins: u32,
    exactly_k: bool,
    out: *mut *mut MomhistCatalog,
) -> MomhistStatus {
    if out.is_null() {
        return MomhistStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(ds) = (unsafe { ds.as_ref() }) else {
        return MomhistStatus::NullArgument;
    };
    let mode = if exactly_k {
        DomainMode::ExactlyK
    } else {
        DomainMode::AtMostK
    };
    match enumerate_level_sets(&ds.inner, max_bins, mode) {
        Ok(c) => {
            let handle = Box::new(MomhistCatalog {
                dataset: ds.inner.clone(),
                inner: c,
            });
            unsafe { *out = Box::into_raw(handle) };
            MomhistStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of shapes in the catalog; 0 for a null handle.
///
/// # Safety
/// `cat` must be null or a live handle from `momhist_catalog_build`.
#[no_mangle]
pub unsafe extern "C" fn momhist_catalog_len(cat: *const MomhistCatalog) -> usize {
    match unsafe { cat.as_ref() } {
        Some(c) => c.inner.len(),
        None => 0,
    }
}

/// Releases a catalog handle. Null is a no-op.
///
/// # Safety
/// `cat` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn momhist_catalog_free(cat: *mut MomhistCatalog) {
    if !cat.is_null() {
        drop(unsafe { Box::from_raw(cat) });
    }
}

/// Serializes the catalog as JSON (level sets with exact vertices).
///
/// # Safety
/// `cat` must be a live catalog handle, `out` a valid pointer; the returned
/// string must be released with `momhist_string_free`.
#[no_mangle]
pub unsafe extern "C" fn momhist_catalog_json(
    cat: *const MomhistCatalog,
    out: *mut *mut c_char,
) -> MomhistStatus {
    if out.is_null() {
        return MomhistStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(cat) = (unsafe { cat.as_ref() }) else {
        return MomhistStatus::NullArgument;
    };
    match to_json(&CatalogDoc::from_catalog(&cat.inner)) {
        Ok(s) => export_string(s, out),
        Err(e) => status_of(&e),
    }
}

/// Serializes the full consistency/skewness classification as JSON.
///
/// # Safety
/// `cat` must be a live catalog handle, `out` a valid pointer; the returned
/// string must be released with `momhist_string_free`.
#[no_mangle]
pub unsafe extern "C" fn momhist_classify_json(
    cat: *const MomhistCatalog,
    density_flavor: bool,
    out: *mut *mut c_char,
) -> MomhistStatus {
    if out.is_null() {
        return MomhistStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(cat) = (unsafe { cat.as_ref() }) else {
        return MomhistStatus::NullArgument;
    };
    let flavor = if density_flavor {
        Flavor::Density
    } else {
        Flavor::Frequency
    };
    let doc = analyze_catalog(&cat.dataset, &cat.inner, flavor, &RankBands::default())
        .map(|a| ClassifyDoc::from_analysis(&cat.inner, &a));
    match doc.and_then(|d| to_json(&d)) {
        Ok(s) => export_string(s, out),
        Err(e) => status_of(&e),
    }
}

/// Serializes the width-stability cells as JSON.
///
/// # Safety
/// `cat` must be a live catalog handle, `out` a valid pointer; the returned
/// string must be released with `momhist_string_free`.
#[no_mangle]
pub unsafe extern "C" fn momhist_stability_json(
    cat: *const MomhistCatalog,
    out: *mut *mut c_char,
) -> MomhistStatus {
    if out.is_null() {
        return MomhistStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(cat) = (unsafe { cat.as_ref() }) else {
        return MomhistStatus::NullArgument;
    };
    let doc = stability_cells(&cat.inner).map(|r| StabilityDoc::build(&cat.inner, &r));
    match doc.and_then(|d| to_json(&d)) {
        Ok(s) => export_string(s, out),
        Err(e) => status_of(&e),
    }
}

/// Audits one grid (anchor and width given as decimal or `p/q` strings)
/// and serializes the verdict as JSON.
///
/// # Safety
/// `ds` must be a live dataset handle, `t0`/`h` valid NUL-terminated
/// strings, `out` a valid pointer; release the result with
/// `momhist_string_free`.
#[no_mangle]
pub unsafe extern "C" fn momhist_audit_json(
    ds: *const MomhistDataset,
    t0: *const c_char,
    h: *const c_char,
    max_bins: u32,
    out: *mut *mut c_char,
) -> MomhistStatus {
    if out.is_null() {
        return MomhistStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(ds) = (unsafe { ds.as_ref() }) else {
        return MomhistStatus::NullArgument;
    };
    let t0 = match unsafe { cstr_arg(t0) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let h = match unsafe { cstr_arg(h) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let doc = audit_from_strings(&ds.inner, t0, h, max_bins, Flavor::Frequency);
    match doc.and_then(|d| to_json(&d)) {
        Ok(s) => export_string(s, out),
        Err(e) => status_of(&e),
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn momhist_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn momhist_status_message(status: MomhistStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        MomhistStatus::Ok => b"ok\0",
        MomhistStatus::NullArgument => b"null argument\0",
        MomhistStatus::InvalidUtf8 => b"invalid utf-8\0",
        MomhistStatus::ParseError => b"parse error\0",
        MomhistStatus::DegenerateData => b"degenerate data\0",
        MomhistStatus::InvalidGrid => b"invalid grid\0",
        MomhistStatus::InvalidArgument => b"invalid argument\0",
        MomhistStatus::InternalError => b"internal error\0",
    };
    msg.as_ptr() as *const c_char
}
