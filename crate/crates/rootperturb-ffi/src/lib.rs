//! C ABI for the rootperturb library.
//!
//! Conventions:
//! - every function returns an [`RpStatus`] code; `RP_STATUS_OK` is 0;
//! - polynomials travel either as opaque `RpPoly` handles (create with
//!   `rp_poly_new` / `rp_poly_from_json`, release with `rp_poly_free`) or as
//!   JSON strings in the same wire formats the CLI uses;
//! - strings returned through `char **` out-parameters are allocated by this
//!   library and must be released with `rp_string_free`;
//! - the generated header is written to `include/rootperturb.h` at build
//!   time.

use libc::{c_char, size_t};
use rootperturb::bounds;
use rootperturb::error::Error;
use rootperturb::grouping;
use rootperturb::json;
use rootperturb::multivar;
use rootperturb::poly::Poly;
use rootperturb::rootfind::{self, SolverConfig};
use rootperturb::Complex64;
use std::ffi::{CStr, CString};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ZeroPolynomial = 4,
    DegreeZero = 5,
    NoConvergence = 6,
    AmbientMismatch = 7,
    InvalidArgument = 8,
    BufferTooSmall = 9,
    NotAZero = 10,
    OutsideClosure = 11,
    InternalError = 12,
}

fn status_of(e: &Error) -> RpStatus {
    match e {
        Error::ZeroPolynomial => RpStatus::ZeroPolynomial,
        Error::DegreeZero => RpStatus::DegreeZero,
        Error::NoConvergence { .. } => RpStatus::NoConvergence,
        Error::AmbientMismatch { .. } => RpStatus::AmbientMismatch,
        Error::Parse(_) => RpStatus::ParseError,
        Error::NotAZero { .. } => RpStatus::NotAZero,
        Error::OutsideClosure { .. } => RpStatus::OutsideClosure,
        Error::EmptyPoly
        | Error::NonFinite
        | Error::EvalAtRoot
        | Error::LeadingZero
        | Error::InvalidEpsilon
        | Error::ArityMismatch { .. }
        | Error::FullAssignment => RpStatus::InvalidArgument,
    }
}

/// Opaque univariate polynomial handle.
pub struct RpPoly(Poly);

/// Short static description of a status code.
#[no_mangle]
pub extern "C" fn rp_status_message(status: RpStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        RpStatus::Ok => b"ok\0",
        RpStatus::NullArgument => b"null argument\0",
        RpStatus::InvalidUtf8 => b"invalid utf-8\0",
        RpStatus::ParseError => b"parse error\0",
        RpStatus::ZeroPolynomial => b"zero polynomial\0",
        RpStatus::DegreeZero => b"constant polynomial has no roots\0",
        RpStatus::NoConvergence => b"root iteration did not converge\0",
        RpStatus::AmbientMismatch => b"ambient degrees differ\0",
        RpStatus::InvalidArgument => b"invalid argument\0",
        RpStatus::BufferTooSmall => b"buffer too small\0",
        RpStatus::NotAZero => b"point is not a zero\0",
        RpStatus::OutsideClosure => b"point outside the domain closure\0",
        RpStatus::InternalError => b"internal error\0",
    };
    msg.as_ptr() as *const c_char
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RpStatus> {
    if ptr.is_null() {
        return Err(RpStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| RpStatus::InvalidUtf8)
}

fn give_string(s: String, out: *mut *mut c_char) -> RpStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            RpStatus::Ok
        }
        Err(_) => RpStatus::InternalError,
    }
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through a `char **`
/// out-parameter of this library, not yet freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a polynomial from split real/imaginary coefficient arrays of
/// length `len` (ascending powers). The ambient degree is `len - 1`.
///
/// # Safety
/// `re` and `im` must point to `len` readable doubles; `out` must be a valid
/// destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_new(
    re: *const f64,
    im: *const f64,
    len: size_t,
    out: *mut *mut RpPoly,
) -> RpStatus {
    if re.is_null() || im.is_null() || out.is_null() {
        return RpStatus::NullArgument;
    }
    let re = std::slice::from_raw_parts(re, len);
    let im = std::slice::from_raw_parts(im, len);
    let coeffs: Vec<Complex64> = re
        .iter()
        .zip(im)
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect();
    match Poly::new(coeffs) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(RpPoly(p)));
            RpStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Parses the JSON wire format `{"n": .., "coeffs": [[re, im], ..]}`.
///
/// # Safety
/// `json_text` must be a valid NUL-terminated string; `out` must be a valid
/// destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_from_json(
    json_text: *const c_char,
    out: *mut *mut RpPoly,
) -> RpStatus {
    if out.is_null() {
        return RpStatus::NullArgument;
    }
    let text = match read_str(json_text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match json::parse_poly(text) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(RpPoly(p)));
            RpStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Serializes a polynomial handle back to the JSON wire format.
///
/// # Safety
/// `p` must be a live handle; `out` must be a valid destination.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_to_json(p: *const RpPoly, out: *mut *mut c_char) -> RpStatus {
    if p.is_null() || out.is_null() {
        return RpStatus::NullArgument;
    }
    let poly = &(*p).0;
    give_string(json::to_json_string(&json::PolyJson::from(poly)), out)
}

/// Releases a polynomial handle; null is ignored.
///
/// # Safety
/// `p` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_free(p: *mut RpPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient degree (coefficient count minus one).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_ambient_degree(p: *const RpPoly, out: *mut size_t) -> RpStatus {
    if p.is_null() || out.is_null() {
        return RpStatus::NullArgument;
    }
    *out = (*p).0.ambient_degree();
    RpStatus::Ok
}

/// Formal degree: the largest index with a nonzero coefficient, or `-1` for
/// the zero polynomial (whose degree is undefined).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_formal_degree(p: *const RpPoly, out: *mut i64) -> RpStatus {
    if p.is_null() || out.is_null() {
        return RpStatus::NullArgument;
    }
    *out = match (*p).0.formal_degree() {
        Some(d) => d as i64,
        None => -1,
    };
    RpStatus::Ok
}

/// Horner evaluation at `re + i im`.
///
/// # Safety
/// `p` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_poly_eval(
    p: *const RpPoly,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> RpStatus {
    if p.is_null() || out_re.is_null() || out_im.is_null() {
        return RpStatus::NullArgument;
    }
    let v = (*p).0.eval(Complex64::new(re, im));
    *out_re = v.re;
    *out_im = v.im;
    RpStatus::Ok
}

/// All `deg p` roots, counting multiplicities, plus scaled residuals.
/// `capacity` is the size of each output buffer; the root count is written
/// to `out_count` (also on `RP_STATUS_BUFFER_TOO_SMALL`, so callers can
/// resize and retry).
///
/// # Safety
/// `p` must be a live handle; the three buffers must hold `capacity`
/// writable doubles each; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_roots(
    p: *const RpPoly,
    tol: f64,
    roots_re: *mut f64,
    roots_im: *mut f64,
    residuals: *mut f64,
    capacity: size_t,
    out_count: *mut size_t,
) -> RpStatus {
    if p.is_null()
        || roots_re.is_null()
        || roots_im.is_null()
        || residuals.is_null()
        || out_count.is_null()
    {
        return RpStatus::NullArgument;
    }
    if tol.is_nan() || tol <= 0.0 {
        return RpStatus::InvalidArgument;
    }
    let poly = &(*p).0;
    let needed = match poly.formal_degree() {
        Some(d) => d,
        None => return RpStatus::ZeroPolynomial,
    };
    *out_count = needed;
    if needed > capacity {
        return RpStatus::BufferTooSmall;
    }
    match rootfind::roots(poly, tol) {
        Ok(rs) => {
            for (k, (z, r)) in rs.roots.iter().zip(&rs.residuals).enumerate() {
                *roots_re.add(k) = z.re;
                *roots_im.add(k) = z.im;
                *residuals.add(k) = *r;
            }
            RpStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The constants `C`, `D` and `sum_ratio` from a coefficient sequence in the
/// descending positional convention (`b[0]` leading, nonzero), `len = n + 1`.
///
/// # Safety
/// `re` and `im` must point to `len` readable doubles; the out-parameters
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_cd_constants(
    re: *const f64,
    im: *const f64,
    len: size_t,
    out_c: *mut f64,
    out_d: *mut f64,
    out_sum_ratio: *mut f64,
) -> RpStatus {
    if re.is_null()
        || im.is_null()
        || out_c.is_null()
        || out_d.is_null()
        || out_sum_ratio.is_null()
    {
        return RpStatus::NullArgument;
    }
    if len == 0 {
        return RpStatus::InvalidArgument;
    }
    let re = std::slice::from_raw_parts(re, len);
    let im = std::slice::from_raw_parts(im, len);
    let b: Vec<Complex64> = re
        .iter()
        .zip(im)
        .map(|(&a, &bb)| Complex64::new(a, bb))
        .collect();
    match bounds::cd_constants(&b, len - 1) {
        Ok(k) => {
            *out_c = k.c;
            *out_d = k.d;
            *out_sum_ratio = k.sum_ratio;
            RpStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// `(1/C) (2 max |zeta_i|)^(-n)` for an unperturbed polynomial handle;
/// writes `+inf` for a constant polynomial.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_admissibility_threshold(
    q: *const RpPoly,
    out: *mut f64,
) -> RpStatus {
    if q.is_null() || out.is_null() {
        return RpStatus::NullArgument;
    }
    match bounds::admissibility_threshold(&(*q).0) {
        Ok(t) => {
            *out = t;
            RpStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Full two-regime bound report for a perturbed/unperturbed JSON pair;
/// the report uses the same JSON schema as the CLI `bounds` command.
///
/// # Safety
/// `p_json` and `q_json` must be valid NUL-terminated strings; `out_json`
/// must be a valid destination.
#[no_mangle]
pub unsafe extern "C" fn rp_two_regime_report_json(
    p_json: *const c_char,
    q_json: *const c_char,
    out_json: *mut *mut c_char,
) -> RpStatus {
    if out_json.is_null() {
        return RpStatus::NullArgument;
    }
    let (p_text, q_text) = match (read_str(p_json), read_str(q_json)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let inner = || -> Result<String, Error> {
        let p = json::parse_poly(p_text)?;
        let q = json::parse_poly(q_text)?;
        let report = bounds::two_regime_analyze(&p, &q)?;
        Ok(json::to_json_string(&json::BoundReportJson::from(&report)))
    };
    match inner() {
        Ok(s) => give_string(s, out_json),
        Err(e) => status_of(&e),
    }
}

/// Root grouping report (same schema as the CLI `group` command).
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out_json` must be
/// a valid destination.
#[no_mangle]
pub unsafe extern "C" fn rp_group_json(
    p_json: *const c_char,
    q_json: *const c_char,
    epsilon: f64,
    out_json: *mut *mut c_char,
) -> RpStatus {
    if out_json.is_null() {
        return RpStatus::NullArgument;
    }
    let (p_text, q_text) = match (read_str(p_json), read_str(q_json)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let inner = || -> Result<String, Error> {
        let p = json::parse_poly(p_text)?;
        let q = json::parse_poly(q_text)?;
        let cfg = SolverConfig::default();
        let deg_q = q.formal_degree().ok_or(Error::ZeroPolynomial)?;
        let deg_p = p.formal_degree().ok_or(Error::ZeroPolynomial)?;
        let q_distinct = if deg_q >= 1 {
            rootfind::cluster(
                &rootfind::roots_with(&q, &cfg)?,
                rootfind::DEFAULT_CLUSTER_TOL,
            )
        } else {
            rootfind::DistinctRoots::empty()
        };
        let p_rs = rootfind::roots_with(&p, &cfg)?;
        let g = grouping::group_roots(&q_distinct, &p_rs, epsilon, deg_p, deg_q)?;
        Ok(json::to_json_string(&json::GroupingJson::from(&g)))
    };
    match inner() {
        Ok(s) => give_string(s, out_json),
        Err(e) => status_of(&e),
    }
}

/// Empirical admissible-perturbation search (same schema as the CLI
/// `delta-search` command).
///
/// # Safety
/// `q_json` must be a valid NUL-terminated string; `out_json` must be a
/// valid destination.
#[no_mangle]
pub unsafe extern "C" fn rp_delta_search_json(
    q_json: *const c_char,
    epsilon: f64,
    trials: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> RpStatus {
    if out_json.is_null() {
        return RpStatus::NullArgument;
    }
    let q_text = match read_str(q_json) {
        Ok(q) => q,
        Err(s) => return s,
    };
    let inner = || -> Result<String, Error> {
        let q = json::parse_poly(q_text)?;
        let delta = grouping::find_delta_empirically(&q, epsilon, trials, seed)?;
        Ok(json::to_json_string(&json::DeltaSearchJson {
            epsilon,
            trials,
            seed,
            delta,
        }))
    };
    match inner() {
        Ok(s) => give_string(s, out_json),
        Err(e) => status_of(&e),
    }
}

/// Boundary-zero classification (same schema as the CLI `classify` command).
/// `alpha_json` is a JSON array of `[re, im]` pairs.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out_json` must be
/// a valid destination.
#[no_mangle]
pub unsafe extern "C" fn rp_classify_json(
    f_json: *const c_char,
    dom_json: *const c_char,
    alpha_json: *const c_char,
    tol: f64,
    out_json: *mut *mut c_char,
) -> RpStatus {
    if out_json.is_null() {
        return RpStatus::NullArgument;
    }
    let (f_text, dom_text, alpha_text) =
        match (read_str(f_json), read_str(dom_json), read_str(alpha_json)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
    if tol.is_nan() || tol <= 0.0 {
        return RpStatus::InvalidArgument;
    }
    let inner = || -> Result<String, Error> {
        let f = json::parse_multipoly(f_text)?;
        let dom = json::parse_polydomain(dom_text)?;
        let alpha = json::parse_point(alpha_text)?;
        let out = multivar::classify_boundary_zero(&f, &dom, &alpha, tol)?;
        Ok(json::to_json_string(&json::ClassificationJson::from(&out)))
    };
    match inner() {
        Ok(s) => give_string(s, out_json),
        Err(e) => status_of(&e),
    }
}

/// Stability probe (same schema as the CLI `probe` command).
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out_json` must be
/// a valid destination.
#[no_mangle]
pub unsafe extern "C" fn rp_probe_json(
    f_json: *const c_char,
    dom_json: *const c_char,
    samples: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> RpStatus {
    if out_json.is_null() {
        return RpStatus::NullArgument;
    }
    let (f_text, dom_text) = match (read_str(f_json), read_str(dom_json)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let inner = || -> Result<String, Error> {
        let f = json::parse_multipoly(f_text)?;
        let dom = json::parse_polydomain(dom_text)?;
        let report = multivar::stability_probe(&f, &dom, samples, seed)?;
        Ok(json::to_json_string(&json::ProbeJson::from(&report)))
    };
    match inner() {
        Ok(s) => give_string(s, out_json),
        Err(e) => status_of(&e),
    }
}
