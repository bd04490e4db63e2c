//! C interface to `permbase`.
//!
//! Groups and certificates are opaque handles created by `pb_*` functions and
//! released with the matching `_free`. Every fallible call returns a
//! [`PbStatus`]; on failure the message is available from
//! [`pb_last_error_message`]. Strings returned by the library are owned by
//! the caller and released with [`pb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use permbase::documents::CertificateDocument;
use permbase::{catalog, oracles, partitions, Error, PartitionCertificate, PermGroup};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotTransitive = 4,
    LimitExceeded = 5,
    VerificationFailed = 6,
    Internal = 7,
}

/// A permutation group.
pub struct PbGroup {
    group: PermGroup,
}

/// A 2-partition certificate together with the group it was built for.
pub struct PbCertificate {
    cert: PartitionCertificate,
    group: PermGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::Parse(_) | Error::UnknownGroup(_) | Error::Document(_) => PbStatus::Parse,
        Error::NotTransitive => PbStatus::NotTransitive,
        Error::LimitExceeded(_) | Error::TooManyParts(_) => PbStatus::LimitExceeded,
        Error::SelfCheck(_) => PbStatus::Internal,
        _ => PbStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (PbStatus, String)>) -> PbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PbStatus::Internal
        }
    }
}

fn lib<T>(r: permbase::Result<T>) -> Result<T, (PbStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null_err(what: &str) -> (PbStatus, String) {
    (PbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PbStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PbStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (PbStatus, String)> {
    p.as_mut().ok_or_else(|| null_err(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PbStatus, String)> {
    p.as_ref().ok_or_else(|| null_err(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Copy of the last error message on this thread, or null if none.
/// Release with `pb_string_free`.
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a catalog group such as `linked_wreath(7,2,2)`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_group_from_catalog(
    name: *const c_char,
    out: *mut *mut PbGroup,
) -> PbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let g = lib(catalog::parse(str_arg(name, "name")?))?;
        *out = Box::into_raw(Box::new(PbGroup { group: g }));
        Ok(())
    })
}

/// Builds a group from `count` generators in 1-based cycle notation.
///
/// # Safety
/// `generators` must point to `count` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn pb_group_from_cycles(
    degree: usize,
    generators: *const *const c_char,
    count: usize,
    out: *mut *mut PbGroup,
) -> PbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        if count > 0 && generators.is_null() {
            return Err(null_err("generators"));
        }
        let gens = (0..count)
            .map(|i| str_arg(*generators.add(i), "generator"))
            .collect::<Result<Vec<_>, _>>()?;
        let g = lib(PermGroup::from_cycle_strings(degree, &gens))?;
        *out = Box::into_raw(Box::new(PbGroup { group: g }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pb_group_free(g: *mut PbGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Degree of the group, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_group_degree(g: *const PbGroup) -> usize {
    g.as_ref().map_or(0, |g| g.group.degree())
}

/// Group order as a decimal string, or null on a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_group_order(g: *const PbGroup) -> *mut c_char {
    g.as_ref().map_or(ptr::null_mut(), |g| {
        into_c_string(g.group.order().to_string())
    })
}

/// Minimum base size by exhaustive search (degree at most 64).
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_group_base_size(g: *const PbGroup, out: *mut usize) -> PbStatus {
    guard(|| {
        let g = ref_arg(g, "group")?;
        let out = out_arg(out, "out")?;
        *out = lib(oracles::base_size_bruteforce(
            &g.group,
            oracles::BASE_SEARCH_BUDGET,
        ))?;
        Ok(())
    })
}

/// Builds and verifies a certificate for a transitive group.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesize(
    g: *const PbGroup,
    seed: u64,
    out: *mut *mut PbCertificate,
) -> PbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let g = ref_arg(g, "group")?;
        let cert = lib(partitions::synthesize(&g.group, seed))?;
        *out = Box::into_raw(Box::new(PbCertificate {
            cert,
            group: g.group.clone(),
        }));
        Ok(())
    })
}

/// Reads a certificate document. The group is taken from the document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_from_json(
    json: *const c_char,
    out: *mut *mut PbCertificate,
) -> PbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let doc = lib(CertificateDocument::from_json(str_arg(json, "json")?))?;
        let cert = lib(doc.to_certificate())?;
        let group = lib(doc.group())?;
        *out = Box::into_raw(Box::new(PbCertificate { cert, group }));
        Ok(())
    })
}

/// The certificate document as JSON, or null on a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_to_json(c: *const PbCertificate) -> *mut c_char {
    c.as_ref().map_or(ptr::null_mut(), |c| {
        into_c_string(CertificateDocument::new(&c.cert, &c.group).to_json())
    })
}

/// Number of partitions, 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_count(c: *const PbCertificate) -> usize {
    c.as_ref().map_or(0, |c| c.cert.count())
}

/// Whether the certificate records a trivial joint stabilizer.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_verified(c: *const PbCertificate) -> bool {
    c.as_ref().is_some_and(|c| c.cert.verified)
}

/// `count / (1 + log|G| / n)`, NaN for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_bound_ratio(c: *const PbCertificate) -> f64 {
    c.as_ref().map_or(f64::NAN, |c| c.cert.bound_ratio())
}

/// Re-checks the certificate against `g`. Returns `VerificationFailed` if
/// the joint stabilizer is nontrivial.
///
/// # Safety
/// `c` and `g` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_check(
    c: *const PbCertificate,
    g: *const PbGroup,
) -> PbStatus {
    guard(|| {
        let c = ref_arg(c, "certificate")?;
        let g = ref_arg(g, "group")?;
        if lib(c.cert.check(&g.group))? {
            Ok(())
        } else {
            Err((
                PbStatus::VerificationFailed,
                "joint stabilizer is not trivial".into(),
            ))
        }
    })
}

/// # Safety
/// `c` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pb_certificate_free(c: *mut PbCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
