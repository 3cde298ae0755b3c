//! C ABI over `kunum`.
//!
//! Every function returns a [`KunumStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`kunum_last_error`]. Strings returned by the library must be released
//! with [`kunum_string_free`]; certificates with [`kunum_certificate_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kunum::catalog::lookup;
use kunum::certifier::{certify, verify, Certificate};
use kunum::cubic::{chi, moduli_dim, KuClass};
use kunum::lattice::{cross, pick_decompose, LatticeVector};
use kunum::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KunumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    InternalError = 4,
    Panic = 5,
}

/// Opaque certificate handle.
pub struct KunumCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: Error) -> KunumStatus {
    let s = if e.is_internal() {
        KunumStatus::InternalError
    } else if matches!(e, Error::Parse { .. }) {
        KunumStatus::InvalidArgument
    } else {
        KunumStatus::DomainError
    };
    set_error(format!("{}: {e}", e.kind()));
    s
}

fn guard(f: impl FnOnce() -> KunumStatus) -> KunumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside kunum".into());
            KunumStatus::Panic
        }
    }
}

fn narrow(x: i128, out: *mut i64) -> KunumStatus {
    match i64::try_from(x) {
        Ok(v) => {
            unsafe { *out = v };
            KunumStatus::Ok
        }
        Err(_) => status_of(Error::Overflow("result does not fit in 64 bits")),
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument".into());
            return KunumStatus::NullPointer;
        }
    };
}

/// Message of the last failure on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kunum_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// `a1·b2 − b1·a2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kunum_cross(a1: i64, b1: i64, a2: i64, b2: i64, out: *mut i64) -> KunumStatus {
    nonnull!(out);
    guard(|| narrow(cross(LatticeVector::new(a1, b1), LatticeVector::new(a2, b2)), out))
}

/// Pick decomposition `v = v₋ + v₊` of the primitive vector `(a, b)`.
///
/// # Safety
/// All out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kunum_pick(
    a: i64,
    b: i64,
    minus_a: *mut i64,
    minus_b: *mut i64,
    plus_a: *mut i64,
    plus_b: *mut i64,
) -> KunumStatus {
    nonnull!(minus_a, minus_b, plus_a, plus_b);
    guard(|| match pick_decompose(LatticeVector::new(a, b)) {
        Ok((m, p)) => {
            unsafe {
                *minus_a = m.a;
                *minus_b = m.b;
                *plus_a = p.a;
                *plus_b = p.b;
            }
            KunumStatus::Ok
        }
        Err(e) => status_of(e),
    })
}

/// Euler pairing on the cubic threefold lattice, in `(α, β)` coordinates.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kunum_chi(n1: i64, m1: i64, n2: i64, m2: i64, out: *mut i64) -> KunumStatus {
    nonnull!(out);
    guard(|| narrow(chi(KuClass::new(n1, m1), KuClass::new(n2, m2)), out))
}

/// Dimension of the moduli space of stable objects of class `nα + mβ`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kunum_moduli_dim(n: i64, m: i64, out: *mut i64) -> KunumStatus {
    nonnull!(out);
    guard(|| match moduli_dim(KuClass::new(n, m)) {
        Ok(d) => narrow(d, out),
        Err(e) => status_of(e),
    })
}

/// Class of `I_C(m)` for a curve of degree `d` and genus `g`.
///
/// # Safety
/// `out_n` and `out_m` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kunum_hilbert_character(
    d: i64,
    g: i64,
    m: i64,
    out_n: *mut i64,
    out_m: *mut i64,
) -> KunumStatus {
    nonnull!(out_n, out_m);
    guard(|| match kunum::chern::hilbert_character(d, g, m) {
        Ok(v) => {
            unsafe {
                *out_n = v.n;
                *out_m = v.m;
            }
            KunumStatus::Ok
        }
        Err(e) => status_of(e),
    })
}

/// Whether the birationality graph up to `sum_bound` is connected.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kunum_birgraph_connected(sum_bound: i64, out: *mut bool) -> KunumStatus {
    nonnull!(out);
    guard(|| match kunum::birgraph::check_connected(sum_bound) {
        Ok(c) => {
            unsafe { *out = c.connected };
            KunumStatus::Ok
        }
        Err(e) => status_of(e),
    })
}

/// Certificate for the class `(a, b)` on catalog entry `(index, degree)`.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives a handle to free
/// with [`kunum_certificate_free`].
#[no_mangle]
pub unsafe extern "C" fn kunum_certify(
    index: u32,
    degree: u32,
    a: i64,
    b: i64,
    out: *mut *mut KunumCertificate,
) -> KunumStatus {
    nonnull!(out);
    guard(|| {
        let cert = lookup(index, degree).and_then(|e| certify(e, LatticeVector::new(a, b)));
        match cert {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(KunumCertificate { inner })) };
                KunumStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// Runs the independent checker.
///
/// # Safety
/// `cert` must come from [`kunum_certify`]; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kunum_certificate_verify(
    cert: *const KunumCertificate,
    out: *mut bool,
) -> KunumStatus {
    nonnull!(cert, out);
    guard(|| {
        let c = unsafe { &*cert };
        let v = verify(&c.inner);
        if !v.is_valid() {
            set_error(v.failures.join("; "));
        }
        unsafe { *out = v.is_valid() };
        KunumStatus::Ok
    })
}

/// Number of nodes and depth of a certificate.
///
/// # Safety
/// `cert` must come from [`kunum_certify`]; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kunum_certificate_shape(
    cert: *const KunumCertificate,
    nodes: *mut usize,
    depth: *mut usize,
) -> KunumStatus {
    nonnull!(cert, nodes, depth);
    guard(|| {
        let c = unsafe { &(*cert).inner };
        unsafe {
            *nodes = c.nodes.len();
            *depth = c.depth();
        }
        KunumStatus::Ok
    })
}

/// Text rendering; free with [`kunum_string_free`]. NULL on failure.
///
/// # Safety
/// `cert` must come from [`kunum_certify`].
#[no_mangle]
pub unsafe extern "C" fn kunum_certificate_to_text(cert: *const KunumCertificate) -> *mut c_char {
    if cert.is_null() {
        set_error("null pointer argument".into());
        return ptr::null_mut();
    }
    let r = catch_unwind(AssertUnwindSafe(|| unsafe { &(*cert).inner }.to_text()));
    match r.ok().and_then(|s| CString::new(s).ok()) {
        Some(s) => s.into_raw(),
        None => {
            set_error("could not render certificate".into());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `cert` must come from [`kunum_certify`] and not be used afterwards.
/// NULL is accepted.
#[no_mangle]
pub unsafe extern "C" fn kunum_certificate_free(cert: *mut KunumCertificate) {
    if !cert.is_null() {
        drop(unsafe { Box::from_raw(cert) });
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is
/// accepted.
#[no_mangle]
pub unsafe extern "C" fn kunum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
