//! C interface to `torus-ham`.
//!
//! Paths come back as opaque `TorusHamPath` handles, released with
//! `torus_ham_path_free`. Fallible calls return a `TorusHamStatus`; after a
//! non-`OK` status, `torus_ham_last_error` describes the failure. Vertices are
//! arrays of `k` residues, most significant coordinate first, and words are
//! arrays of 0-based generator indices.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use torus_ham::oracle::{ham_path_exists, OracleConfig};
use torus_ham::{
    hamiltonian_path, verify_ham_path, Error, PathCertificate, PathOutcome, TorusSpec, Vertex, Word,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusHamStatus {
    Ok = 0,
    /// No hamiltonian path exists: the congruence fails.
    Refused = 1,
    /// The word is not a hamiltonian path between the given vertices.
    NotVerified = 2,
    NullPointer = 3,
    InvalidArgument = 4,
    SizeCapExceeded = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

/// A verified hamiltonian path.
pub struct TorusHamPath {
    cert: PathCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(TorusHamStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SizeCapExceeded { .. } => TorusHamStatus::SizeCapExceeded,
            Error::Internal(_) => TorusHamStatus::Internal,
            _ => TorusHamStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(TorusHamStatus::NullPointer, format!("{what} is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TorusHamStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TorusHamStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside torus-ham".into());
            TorusHamStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` is NULL or points to `len` readable values.
unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and `len` elements readable per the caller's contract.
    Ok(unsafe { std::slice::from_raw_parts(ptr, len) })
}

/// # Safety
/// `ptr` is NULL or points to `spec.dims()` residues.
unsafe fn vertex_or_zero(spec: &TorusSpec, ptr: *const u64) -> Result<Vertex, Fail> {
    if ptr.is_null() {
        return Ok(spec.zero());
    }
    // SAFETY: forwarded from the caller.
    let coords = unsafe { slice(ptr, spec.dims(), "vertex") }?;
    Ok(spec.vertex(coords.to_vec())?)
}

/// # Safety
/// `ptr` is NULL or points to `spec.dims()` residues.
unsafe fn vertex(spec: &TorusSpec, ptr: *const u64, what: &str) -> Result<Vertex, Fail> {
    if ptr.is_null() {
        return Err(null(what));
    }
    // SAFETY: forwarded from the caller.
    unsafe { vertex_or_zero(spec, ptr) }
}

/// Builds a certified hamiltonian path from `from` to `to` in `(Z_m)^k`.
///
/// `from` may be NULL for the zero vertex. On `OK`, `*out` holds a handle to
/// release with `torus_ham_path_free`; otherwise `*out` is set to NULL.
/// Returns `REFUSED` when no path can exist.
///
/// # Safety
/// `from` (if non-NULL) and `to` point to `k` values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_construct(
    m: u64,
    k: usize,
    from: *const u64,
    to: *const u64,
    out: *mut *mut TorusHamPath,
) -> TorusHamStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null above.
        unsafe { *out = ptr::null_mut() };
        let spec = TorusSpec::power(m, k)?;
        // SAFETY: caller guarantees `k` readable residues.
        let u = unsafe { vertex_or_zero(&spec, from) }?;
        // SAFETY: as above.
        let v = unsafe { vertex(&spec, to, "to") }?;
        match hamiltonian_path(m, k, &u, &v)? {
            PathOutcome::Refused(r) => Err(Fail(TorusHamStatus::Refused, r.to_string())),
            PathOutcome::Certified(cert) => {
                let handle = Box::into_raw(Box::new(TorusHamPath { cert }));
                // SAFETY: checked non-null above.
                unsafe { *out = handle };
                Ok(())
            }
        }
    })
}

/// Releases a path handle. NULL is ignored.
///
/// # Safety
/// `path` is NULL or a handle from `torus_ham_construct` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_path_free(path: *mut TorusHamPath) {
    if !path.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(path) });
    }
}

/// # Safety
/// `path` is NULL or a live handle.
unsafe fn cert<'a>(path: *const TorusHamPath) -> Option<&'a PathCertificate> {
    // SAFETY: forwarded from the caller.
    unsafe { path.as_ref() }.map(|p| &p.cert)
}

/// Number of steps (vertex count minus one); 0 for NULL.
///
/// # Safety
/// `path` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_path_length(path: *const TorusHamPath) -> u64 {
    // SAFETY: forwarded from the caller.
    unsafe { cert(path) }.map_or(0, |c| c.length())
}

/// Number of coordinates; 0 for NULL.
///
/// # Safety
/// `path` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_path_dims(path: *const TorusHamPath) -> usize {
    // SAFETY: forwarded from the caller.
    unsafe { cert(path) }.map_or(0, |c| c.spec().dims())
}

/// # Safety
/// `path` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_path_is_verified(path: *const TorusHamPath) -> bool {
    // SAFETY: forwarded from the caller.
    unsafe { cert(path) }.is_some_and(|c| c.is_verified())
}

/// The word in nested run-length form, e.g. `"(x1 x2^2)^3 x1"`. Release with
/// `torus_ham_string_free`. NULL for a NULL handle.
///
/// # Safety
/// `path` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_path_word(path: *const TorusHamPath) -> *mut c_char {
    // SAFETY: forwarded from the caller.
    match unsafe { cert(path) } {
        Some(c) => CString::new(c.word().to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Copies the flat word into `buf`. `*needed` always receives the full
/// length; if it exceeds `cap`, nothing is copied and `BUFFER_TOO_SMALL` is
/// returned. `buf` may be NULL when `cap` is 0.
///
/// # Safety
/// `path` is a live handle, `buf` has room for `cap` values, `needed` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_path_generators(
    path: *const TorusHamPath,
    buf: *mut u32,
    cap: usize,
    needed: *mut usize,
) -> TorusHamStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let c = unsafe { cert(path) }.ok_or_else(|| null("path"))?;
        if needed.is_null() {
            return Err(null("needed"));
        }
        let flat = c.word().to_flat();
        // SAFETY: checked non-null above.
        unsafe { *needed = flat.len() };
        if flat.len() > cap {
            return Err(Fail(
                TorusHamStatus::BufferTooSmall,
                format!("word has {} symbols, buffer holds {cap}", flat.len()),
            ));
        }
        if flat.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        // SAFETY: `buf` holds at least `cap >= flat.len()` values.
        let out = unsafe { std::slice::from_raw_parts_mut(buf, flat.len()) };
        for (slot, g) in out.iter_mut().zip(flat) {
            *slot = g as u32;
        }
        Ok(())
    })
}

/// Checks that `generators[0..len]` is a hamiltonian path of `(Z_m)^k` from
/// `from` (NULL for zero) to `to`. Returns `OK` or `NOT_VERIFIED`, with the
/// first defect in `torus_ham_last_error`.
///
/// # Safety
/// `from` (if non-NULL) and `to` point to `k` values; `generators` points to
/// `len` values.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_verify(
    m: u64,
    k: usize,
    from: *const u64,
    to: *const u64,
    generators: *const u32,
    len: usize,
) -> TorusHamStatus {
    guard(|| {
        let spec = TorusSpec::power(m, k)?;
        // SAFETY: caller guarantees `k` readable residues.
        let u = unsafe { vertex_or_zero(&spec, from) }?;
        // SAFETY: as above.
        let v = unsafe { vertex(&spec, to, "to") }?;
        // SAFETY: caller guarantees `len` readable indices.
        let gens = unsafe { slice(generators, len, "generators") }?;
        let flat: Vec<usize> = gens.iter().map(|&g| g as usize).collect();
        let cert = verify_ham_path(&spec, &u, &v, Word::from_flat(&flat));
        match cert.defect() {
            None => Ok(()),
            Some(d) => Err(Fail(TorusHamStatus::NotVerified, d.to_string())),
        }
    })
}

/// Exhaustive search: is there a hamiltonian path from 0 to `to` in the
/// product of cycles of lengths `moduli[0..k]`? The size cap is read from
/// `TORUS_HAM_CAP` (default 32 vertices).
///
/// # Safety
/// `moduli` and `to` point to `k` values; `exists` is writable.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_oracle_path_exists(
    moduli: *const u64,
    k: usize,
    to: *const u64,
    exists: *mut bool,
) -> TorusHamStatus {
    guard(|| {
        if exists.is_null() {
            return Err(null("exists"));
        }
        if moduli.is_null() {
            return Err(null("moduli"));
        }
        // SAFETY: caller guarantees `k` readable values.
        let spec = TorusSpec::new(unsafe { slice(moduli, k, "moduli") }?.to_vec())?;
        // SAFETY: as above.
        let v = unsafe { vertex(&spec, to, "to") }?;
        let found = ham_path_exists(&spec, &spec.zero(), &v, &OracleConfig::from_env()?)?;
        // SAFETY: checked non-null above.
        unsafe { *exists = found.is_some() };
        Ok(())
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn torus_ham_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or came from `torus_ham_path_word` and was not freed.
#[no_mangle]
pub unsafe extern "C" fn torus_ham_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn torus_ham_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
