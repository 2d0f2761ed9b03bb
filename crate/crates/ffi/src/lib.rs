//! C ABI for `cuspmap`.
//!
//! Domains and reference maps are opaque heap handles created by a
//! constructor and released with the matching `*_free`.
//! Every fallible function returns a [`CuspmapStatus`]; on failure the
//! message is kept per thread and can be copied out with
//! [`cuspmap_last_error`]. Output pointers are written only on success.
//! Panics never cross the boundary and are reported as
//! [`CuspmapStatus::Panic`].

use cuspmap::asymptotic::{
    argument_asymptote, eval_f_derivative, eval_g, eval_g_derivative, eval_log_f,
    eval_log_f_derivative, h_closed_form, modulus_asymptote,
};
use cuspmap::domain::{
    compute_tuple, is_small_perturbation, AsymptoticTuple, DomainSpec, NormalizedCusp, Preset,
};
use cuspmap::oracles::{catalog_map, quadrature_h, sample_boundary, zipper_map, ConformalOracle};
use cuspmap::Error;
use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CuspmapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// A series operation failed (zero series, wrong order, short truncation).
    Series = 4,
    /// The arcs do not describe an admissible cusp.
    Domain = 5,
    BranchCut = 6,
    OutOfRange = 7,
    Quadrature = 8,
    Zipper = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

impl From<&Error> for CuspmapStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ZeroSeries
            | Error::WrongOrder { .. }
            | Error::CompositionOrder
            | Error::InsufficientTruncation { .. } => CuspmapStatus::Series,
            Error::Irregular(_)
            | Error::NotTangent(_)
            | Error::Degenerate(_)
            | Error::InvalidAngle(_) => CuspmapStatus::Domain,
            Error::BranchCut(_) => CuspmapStatus::BranchCut,
            Error::OutOfRange(_) => CuspmapStatus::OutOfRange,
            Error::Quadrature(_) => CuspmapStatus::Quadrature,
            Error::UnknownPreset(_) => CuspmapStatus::InvalidArgument,
            Error::Zipper(_) => CuspmapStatus::Zipper,
            Error::Parse(_) => CuspmapStatus::Parse,
        }
    }
}

/// Which asymptotic expression [`cuspmap_eval`] computes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CuspmapQuantity {
    /// The mapping function, or its `k`-th derivative.
    F = 0,
    /// Logarithm of the mapping function or of its `k`-th derivative; finite
    /// where the value itself underflows.
    LogF = 1,
    /// The inverse map on the upper half-plane, or its `k`-th derivative.
    G = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CuspmapComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CuspmapComplex {
    fn from(z: Complex64) -> Self {
        CuspmapComplex { re: z.re, im: z.im }
    }
}

impl From<CuspmapComplex> for Complex64 {
    fn from(z: CuspmapComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Scalar part of the asymptotic tuple. The coefficient lists are read with
/// [`cuspmap_domain_c`] and [`cuspmap_domain_b`].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CuspmapTupleInfo {
    /// Order of tangency `N`.
    pub order: usize,
    /// Coefficient of tangency `a`.
    pub coefficient: f64,
    pub sigma: f64,
    /// Length of the `c` list (always `N`).
    pub c_len: usize,
    /// Length of the `b` list.
    pub b_len: usize,
    /// 1 or 0, or -1 when the truncation is too short to decide.
    pub small_perturbation: i32,
    /// Radius `R` of the normalized cusp.
    pub radius: f64,
}

/// A normalized cusp domain with its asymptotic tuple.
pub struct CuspmapDomain {
    preset: Option<Preset>,
    cusp: NormalizedCusp,
    tuple: AsymptoticTuple,
}

/// A reference map of a domain onto the upper half-plane.
pub struct CuspmapOracle(ConformalOracle);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(CuspmapStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(CuspmapStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CuspmapStatus::NullPointer, format!("`{what}` is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(CuspmapStatus::InvalidArgument, msg.into())
}

/// Runs `body`, records any failure and converts it to a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CuspmapStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CuspmapStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            CuspmapStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| invalid(format!("`{what}` is not UTF-8: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn finite(z: Complex64, what: &str) -> Result<Complex64, Failure> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(invalid(format!("`{what}` is not finite")))
    }
}

fn build_domain(spec: DomainSpec, trunc: usize) -> Result<Box<CuspmapDomain>, Failure> {
    if trunc == 0 {
        return Err(invalid("truncation order must be positive"));
    }
    let preset = spec.preset()?;
    let cusp = spec.to_cusp(trunc)?;
    let tuple = compute_tuple(&cusp, None)?;
    Ok(Box::new(CuspmapDomain {
        preset,
        cusp,
        tuple,
    }))
}

/// Copies the message of the last failed call on this thread into `buf`
/// (NUL-terminated, truncated to `cap`) and returns the size needed to hold
/// it in full, NUL included. `buf` may be null to query the size.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cuspmap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a domain from its JSON description, storing `trunc` angle-function
/// coefficients.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_from_json(
    json: *const c_char,
    trunc: usize,
    out: *mut *mut CuspmapDomain,
) -> CuspmapStatus {
    guard(|| {
        let json = text(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let domain = build_domain(DomainSpec::from_json(json)?, trunc)?;
        write(out, Box::into_raw(domain), "out")
    })
}

/// Builds a preset domain: `example_2_6`, `tangent_circles[:r]` or
/// `tangent_circles_sqrt[:r]`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_from_preset(
    name: *const c_char,
    trunc: usize,
    out: *mut *mut CuspmapDomain,
) -> CuspmapStatus {
    guard(|| {
        let name = text(name, "name")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let preset: Preset = name.parse()?;
        let domain = build_domain(preset.into(), trunc)?;
        write(out, Box::into_raw(domain), "out")
    })
}

/// Releases a domain. Null is ignored.
///
/// # Safety
/// `domain` must be null or come from a `cuspmap_domain_from_*` call and not
/// have been freed.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_free(domain: *mut CuspmapDomain) {
    if !domain.is_null() {
        drop(Box::from_raw(domain));
    }
}

/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_tuple(
    domain: *const CuspmapDomain,
    out: *mut CuspmapTupleInfo,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        let small = match is_small_perturbation(&d.cusp) {
            Ok(b) => i32::from(b),
            Err(_) => -1,
        };
        let info = CuspmapTupleInfo {
            order: d.tuple.n,
            coefficient: d.tuple.a,
            sigma: d.tuple.sigma,
            c_len: d.tuple.c.len(),
            b_len: d.tuple.b.len(),
            small_perturbation: small,
            radius: d.cusp.radius(),
        };
        write(out, info, "out")
    })
}

unsafe fn copy_list(
    values: &[f64],
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> Result<(), Failure> {
    write(len, values.len(), "len")?;
    if cap < values.len() {
        return Err(Failure(
            CuspmapStatus::BufferTooSmall,
            format!("need room for {} values, got {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Copies `c_0..c_{N-1}` into `buf`. `*len` always receives the list length,
/// so a call with `cap = 0` sizes the buffer.
///
/// # Safety
/// `buf` must be valid for `cap` doubles and `len` for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_c(
    domain: *const CuspmapDomain,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> CuspmapStatus {
    guard(|| copy_list(&handle(domain, "domain")?.tuple.c, buf, cap, len))
}

/// Copies the Laurent coefficients `b_0, b_1, …` of the reciprocal angle
/// function, with the same sizing protocol as [`cuspmap_domain_c`].
///
/// # Safety
/// `buf` must be valid for `cap` doubles and `len` for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_b(
    domain: *const CuspmapDomain,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> CuspmapStatus {
    guard(|| copy_list(&handle(domain, "domain")?.tuple.b, buf, cap, len))
}

/// The point `t·e^{iθ∢(t)}` of the domain, `θ ∈ [0, 1]`.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_domain_ray_point(
    domain: *const CuspmapDomain,
    t: f64,
    theta: f64,
    out: *mut CuspmapComplex,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        if !(t > 0.0 && t <= d.cusp.radius()) {
            return Err(invalid(format!("t = {t} is outside ]0, R]")));
        }
        if !(0.0..=1.0).contains(&theta) {
            return Err(invalid(format!("theta = {theta} is outside [0, 1]")));
        }
        write(out, d.cusp.ray_point(t, theta).into(), "out")
    })
}

/// Evaluates `quantity` (its `k`-th derivative when `k > 0`) at `z`.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_eval(
    domain: *const CuspmapDomain,
    quantity: CuspmapQuantity,
    k: usize,
    z: CuspmapComplex,
    out: *mut CuspmapComplex,
) -> CuspmapStatus {
    guard(|| {
        let t = &handle(domain, "domain")?.tuple;
        let z = finite(z.into(), "z")?;
        let value = match (quantity, k) {
            (CuspmapQuantity::F, 0) => eval_log_f(t, z)?.exp(),
            (CuspmapQuantity::F, k) => eval_f_derivative(t, k, z)?,
            (CuspmapQuantity::LogF, 0) => eval_log_f(t, z)?,
            (CuspmapQuantity::LogF, k) => eval_log_f_derivative(t, k, z)?,
            (CuspmapQuantity::G, 0) => eval_g(t.n, t.a, z)?,
            (CuspmapQuantity::G, k) => eval_g_derivative(t.n, t.a, k, z)?,
        };
        write(out, value.into(), "out")
    })
}

/// Asymptotic modulus of the mapping function on `|z| = r`.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_modulus_asymptote(
    domain: *const CuspmapDomain,
    r: f64,
    out: *mut f64,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        write(out, modulus_asymptote(&d.tuple, r)?, "out")
    })
}

/// Asymptotic argument of the mapping function at `z`.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_argument_asymptote(
    domain: *const CuspmapDomain,
    z: CuspmapComplex,
    out: *mut f64,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        let z = finite(z.into(), "z")?;
        write(out, argument_asymptote(&d.tuple, z)?, "out")
    })
}

/// `h(r) = -π ∫_r^δ dρ / (ρ∢(ρ))` integrated term by term from the tuple.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_h_closed_form(
    domain: *const CuspmapDomain,
    r: f64,
    delta: f64,
    out: *mut f64,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        write(out, h_closed_form(&d.tuple, r, delta)?, "out")
    })
}

/// The same integral by adaptive quadrature of the angle function.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_h_quadrature(
    domain: *const CuspmapDomain,
    r: f64,
    delta: f64,
    out: *mut f64,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        write(out, quadrature_h(&d.cusp, r, delta)?, "out")
    })
}

/// Closed-form reference map of a preset domain. Fails with
/// `INVALID_ARGUMENT` for domains without one.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_oracle_catalog(
    domain: *const CuspmapDomain,
    out: *mut *mut CuspmapOracle,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let preset = d
            .preset
            .ok_or_else(|| invalid("only preset domains have a closed-form map"))?;
        let oracle = catalog_map(preset).map_err(|e| match e {
            Error::UnknownPreset(_) => invalid(format!("{} has no closed-form map", preset.name())),
            e => e.into(),
        })?;
        write(out, Box::into_raw(Box::new(CuspmapOracle(oracle))), "out")
    })
}

/// Numerical reference map from `nodes` boundary points per arc graded toward
/// the tip by `clustering ∈ ]0, 1[`. The base vertex goes to ∞.
///
/// # Safety
/// `domain` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_oracle_zipper(
    domain: *const CuspmapDomain,
    nodes: usize,
    clustering: f64,
    out: *mut *mut CuspmapOracle,
) -> CuspmapStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let boundary = sample_boundary(&d.cusp, nodes, clustering)?;
        let oracle = zipper_map(&boundary)?;
        write(out, Box::into_raw(Box::new(CuspmapOracle(oracle))), "out")
    })
}

/// Releases a reference map. Null is ignored.
///
/// # Safety
/// `oracle` must be null or come from a `cuspmap_oracle_*` constructor and
/// not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_oracle_free(oracle: *mut CuspmapOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

/// Image of a domain point `z` in the upper half-plane.
///
/// # Safety
/// `oracle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_oracle_forward(
    oracle: *const CuspmapOracle,
    z: CuspmapComplex,
    out: *mut CuspmapComplex,
) -> CuspmapStatus {
    guard(|| {
        let o = handle(oracle, "oracle")?;
        let z = finite(z.into(), "z")?;
        write(out, o.0.forward(z)?.into(), "out")
    })
}

/// Preimage of a half-plane point `w` in the domain.
///
/// # Safety
/// `oracle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cuspmap_oracle_inverse(
    oracle: *const CuspmapOracle,
    w: CuspmapComplex,
    out: *mut CuspmapComplex,
) -> CuspmapStatus {
    guard(|| {
        let o = handle(oracle, "oracle")?;
        let w = finite(w.into(), "w")?;
        write(out, o.0.inverse(w)?.into(), "out")
    })
}
