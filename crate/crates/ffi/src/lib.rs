//! C ABI over the heegaard engine.
//!
//! Models travel as opaque `HgModel` handles, every function returns an
//! `HgStatus`, and reports come back as NUL-terminated key=value text that
//! the caller releases with `hg_string_free`. Details of the last failure
//! are available from `hg_last_error`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};

use libc::c_char;

use heegaard_core::generate::{generate, GenSpec};
use heegaard_core::model::SplittingModel;
use heegaard_core::parse::{parse_model, serialize};
use heegaard_core::report::Report;
use heegaard_core::summaries;

/// Opaque handle to a parsed splitting model.
pub struct HgModel {
    inner: SplittingModel,
}

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HgStatus {
    /// Success; report text, if any, is a pass.
    Ok = 0,
    /// The input text did not parse; see `hg_last_error`.
    ParseError = 1,
    /// The model fails validation; the report lists the violations.
    InvalidModel = 2,
    /// The analysis could not finish or found violations; the report or
    /// `hg_last_error` has details.
    AnalysisError = 3,
    /// A null or malformed argument.
    ArgError = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).ok();
    });
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// A copy of the last error message on this thread, or NULL. Free it with
/// `hg_string_free`.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a function of this
/// library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a model handle.
///
/// # Safety
/// `model` must be NULL or a handle previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_model_free(model: *mut HgModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, HgStatus> {
    if ptr.is_null() {
        set_error(format!("{what} is NULL"));
        return Err(HgStatus::ArgError);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        HgStatus::ArgError
    })
}

unsafe fn read_model<'a>(ptr: *const HgModel) -> Result<&'a SplittingModel, HgStatus> {
    if ptr.is_null() {
        set_error("model handle is NULL");
        return Err(HgStatus::ArgError);
    }
    Ok(&(*ptr).inner)
}

/// Parse a model from its line-oriented text form.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_parse(text: *const c_char, out: *mut *mut HgModel) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    let text = match read_str(text, "model text") {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_model(text) {
        Ok(model) => {
            *out = Box::into_raw(Box::new(HgModel { inner: model }));
            HgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            HgStatus::ParseError
        }
    }
}

/// Generate a random valid model from a seeded recipe.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_generate(
    genus: u32,
    disks: u32,
    seed: u64,
    out: *mut *mut HgModel,
) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    match generate(&GenSpec::new(genus, disks as usize, seed)) {
        Ok(model) => {
            *out = Box::into_raw(Box::new(HgModel { inner: model }));
            HgStatus::Ok
        }
        Err(e) => {
            set_error(e);
            HgStatus::AnalysisError
        }
    }
}

/// Copy of the model with all missing meridian disks added.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_synthesize_meridians(
    model: *const HgModel,
    out: *mut *mut HgModel,
) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    let m = match read_model(model) {
        Ok(m) => m,
        Err(status) => return status,
    };
    *out = Box::into_raw(Box::new(HgModel {
        inner: m.synthesize_meridians(),
    }));
    HgStatus::Ok
}

/// Ambient genus of the model.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_genus(model: *const HgModel) -> u32 {
    read_model(model).map_or(0, |m| m.genus())
}

/// Number of declared disks.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_disk_count(model: *const HgModel) -> u32 {
    read_model(model).map_or(0, |m| m.disk_count() as u32)
}

/// Canonical text form of the model; reparses to an identical model.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_serialize(model: *const HgModel, out: *mut *mut c_char) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    match read_model(model) {
        Ok(m) => {
            *out = to_c_string(serialize(m));
            HgStatus::Ok
        }
        Err(status) => status,
    }
}

unsafe fn report_call(
    model: *const HgModel,
    out: *mut *mut c_char,
    synthesize: bool,
    body: impl FnOnce(&SplittingModel) -> Result<(u8, Report), String>,
) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    let m = match read_model(model) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let (code, report) = summaries::validate_report(m);
    if code != 0 {
        *out = to_c_string(report.render());
        return HgStatus::InvalidModel;
    }
    let closed;
    let m = if synthesize {
        closed = m.synthesize_meridians();
        &closed
    } else {
        m
    };
    match body(m) {
        Ok((0, report)) => {
            *out = to_c_string(report.render());
            HgStatus::Ok
        }
        Ok((_, report)) => {
            *out = to_c_string(report.render());
            HgStatus::AnalysisError
        }
        Err(e) => {
            set_error(e);
            HgStatus::AnalysisError
        }
    }
}

/// Validation report: rules R1-R7. `Ok` means valid.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_validate(model: *const HgModel, out: *mut *mut c_char) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    match read_model(model) {
        Ok(m) => {
            let (code, report) = summaries::validate_report(m);
            *out = to_c_string(report.render());
            if code == 0 {
                HgStatus::Ok
            } else {
                HgStatus::InvalidModel
            }
        }
        Err(status) => status,
    }
}

/// Weak reduction report for one pair; `raw` selects the preweak levels.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hg_reduce(
    model: *const HgModel,
    v_id: *const c_char,
    w_id: *const c_char,
    raw: bool,
    out: *mut *mut c_char,
) -> HgStatus {
    let (v, w) = match (read_str(v_id, "v_id"), read_str(w_id, "w_id")) {
        (Ok(v), Ok(w)) => (v.to_string(), w.to_string()),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    report_call(model, out, false, |m| {
        summaries::reduce_report(m, &v, &w, raw)
    })
}

/// Ten-type of one weak reducing pair.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hg_classify(
    model: *const HgModel,
    v_id: *const c_char,
    w_id: *const c_char,
    out: *mut *mut c_char,
) -> HgStatus {
    let (v, w) = match (read_str(v_id, "v_id"), read_str(w_id, "w_id")) {
        (Ok(v), Ok(w)) => (v.to_string(), w.to_string()),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    report_call(model, out, false, |m| {
        summaries::classify_pair_report(m, &v, &w)
    })
}

/// Ten-types of every weak reducing pair.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_classify_all(model: *const HgModel, out: *mut *mut c_char) -> HgStatus {
    report_call(model, out, false, summaries::classify_all_report)
}

/// Cluster decomposition with the S1-S5 structure checks.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_clusters(
    model: *const HgModel,
    synthesize_meridians: bool,
    out: *mut *mut c_char,
) -> HgStatus {
    report_call(model, out, synthesize_meridians, summaries::clusters_report)
}

/// Components of the side-crossing subset of the disk complex.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_components(model: *const HgModel, out: *mut *mut c_char) -> HgStatus {
    report_call(model, out, false, summaries::components_report)
}

/// Criticality verdict with partition or witness face.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_criticality(
    model: *const HgModel,
    synthesize_meridians: bool,
    out: *mut *mut c_char,
) -> HgStatus {
    report_call(
        model,
        out,
        synthesize_meridians,
        summaries::criticality_report,
    )
}

/// Genus-3 component/cluster table with descriptor grouping.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_phi(
    model: *const HgModel,
    synthesize_meridians: bool,
    out: *mut *mut c_char,
) -> HgStatus {
    report_call(model, out, synthesize_meridians, summaries::phi_report)
}

/// Independent recomputation of clusters and thin genera; `Ok` means the
/// decomposition matches.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_oracle_check(
    model: *const HgModel,
    synthesize_meridians: bool,
    out: *mut *mut c_char,
) -> HgStatus {
    report_call(model, out, synthesize_meridians, summaries::oracle_report)
}

/// Plain-text node/edge/face export of the disk complex.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hg_export_graph(model: *const HgModel, out: *mut *mut c_char) -> HgStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return HgStatus::ArgError;
    }
    *out = std::ptr::null_mut();
    let m = match read_model(model) {
        Ok(m) => m,
        Err(status) => return status,
    };
    match heegaard_core::complex::export_graph(m) {
        Ok(text) => {
            *out = to_c_string(text);
            HgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            HgStatus::AnalysisError
        }
    }
}
