//! C ABI over the `tinv` library.
//!
//! Every function returns a [`TinvStatus`]; on failure a message is kept per
//! thread and can be read with [`tinv_last_error`]. Residues cross the
//! boundary as [`TinvQz`] with `0 <= num < den`; values that do not fit in
//! `i64` produce [`TinvStatus::Overflow`]. Handles are opaque and must be
//! released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use tinv::charclass::{t_pullback_series, t_pullback_tbar};
use tinv::classify::{classify_pair, iso_qlf, qlf_from_coboundary, QuadraticLinkingFunction, Verdict};
use tinv::closedforms::{
    fg_admissible, gwz_pn_discrepancy, sphere_bundle_invariants, t_pullback_closed, SphereBundle7,
};
use tinv::coboundary::{mu_hat, q_t_from_coboundary, snf_cokernel, CoboundaryData};
use tinv::exotic::{detect_ks, pinch_twisted_table, KsBit, TTable};
use tinv::{Error, QmodZ};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TinvStatus {
    Ok = 0,
    InvalidInput = 1,
    /// Characteristic vector has the wrong parity.
    Parity = 2,
    SingularMatrix = 3,
    /// A result does not fit the C representation.
    Overflow = 4,
    NullPointer = 5,
    /// A library invariant was violated; this is a bug.
    InvariantViolation = 6,
    /// The group is too large to enumerate.
    TooLarge = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TinvMethod {
    Closed = 0,
    Series = 1,
    Tbar = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TinvVerdict {
    Diffeomorphic = 0,
    AlmostDiffeomorphicOnly = 1,
    Distinct = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TinvKsBit {
    Zero = 0,
    One = 1,
    Inconsistent = 2,
}

/// An element `num/den` of Q/Z in canonical form.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TinvQz {
    pub num: i64,
    pub den: i64,
}

/// Opaque coboundary data (intersection matrix and characteristic vector).
pub struct TinvCoboundary(CoboundaryData);

/// Opaque quadratic linking function on a finite abelian group.
pub struct TinvQlf(QuadraticLinkingFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TinvStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parity(..) => TinvStatus::Parity,
            Error::SingularMatrix => TinvStatus::SingularMatrix,
            Error::InvariantViolation(..) => TinvStatus::InvariantViolation,
            Error::GroupTooLarge { .. } => TinvStatus::TooLarge,
            _ => TinvStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TinvStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TinvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            TinvStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            TinvStatus::Panic
        }
    }
}

fn to_c(q: &QmodZ) -> Result<TinvQz, Failure> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(num), Some(den)) => Ok(TinvQz { num, den }),
        _ => Err(Failure(TinvStatus::Overflow, format!("{q} does not fit in i64"))),
    }
}

fn from_c(q: TinvQz) -> Result<QmodZ, Failure> {
    if q.den <= 0 {
        return Err(Failure(TinvStatus::InvalidInput, format!("denominator must be positive, got {}", q.den)));
    }
    Ok(QmodZ::new(q.num, q.den))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a>(p: *const i64, len: usize, what: &str) -> Result<&'a [i64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Failure> {
    h.as_ref().ok_or_else(|| null(what))
}

/// Message for the last failing call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn tinv_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tinv_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// t-invariant of the pullback of `E_c` to `S^(4k-1)`, `k >= 2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_t_pullback(c: i64, k: i64, method: TinvMethod, out: *mut TinvQz) -> TinvStatus {
    guard(|| {
        let t = match method {
            TinvMethod::Closed => t_pullback_closed(c, k)?,
            TinvMethod::Series => t_pullback_series(c, k)?,
            TinvMethod::Tbar => t_pullback_tbar(c, k)?,
        };
        write(out, to_c(&t)?, "out")
    })
}

/// Feder-Gitler test for `c` on `HP^k`. `failing_j` is 0 when admissible.
///
/// # Safety
/// Both out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_fg_check(c: i64, k: i64, admissible: *mut bool, failing_j: *mut i64) -> TinvStatus {
    guard(|| {
        let v = fg_admissible(c, k)?;
        write(admissible, v.is_admissible(), "admissible")?;
        write(failing_j, v.failing_j().unwrap_or(0), "failing_j")
    })
}

/// t, q and mu of the bundle with `c2 = k` over the sphere bundle `M_{n,p}`.
///
/// # Safety
/// All out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_sphere_bundle(
    n: i64,
    p: i64,
    k: i64,
    t: *mut TinvQz,
    q: *mut TinvQz,
    mu: *mut TinvQz,
) -> TinvStatus {
    guard(|| {
        let inv = sphere_bundle_invariants(&SphereBundle7::new(n, p)?, k);
        write(t, to_c(&inv.t)?, "t")?;
        write(q, to_c(&inv.q)?, "q")?;
        write(mu, to_c(&inv.mu)?, "mu")
    })
}

/// Difference between the GWZ formula at the `P_n` parameters and the `P_n` formula.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_gwz_pn_discrepancy(n: i64, k: i64, out: *mut TinvQz) -> TinvStatus {
    guard(|| write(out, to_c(&gwz_pn_discrepancy(n, k)?)?, "out"))
}

/// Builds coboundary data from a row-major `rank x rank` symmetric matrix and
/// a characteristic vector of length `rank`.
///
/// # Safety
/// `lambda` must hold `rank * rank` values, `p` must hold `rank` values and
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_coboundary_new(
    lambda: *const i64,
    p: *const i64,
    rank: usize,
    out: *mut *mut TinvCoboundary,
) -> TinvStatus {
    guard(|| {
        let entries = rank.checked_mul(rank).ok_or_else(|| Failure(TinvStatus::Overflow, "rank too large".into()))?;
        let flat = slice(lambda, entries, "lambda")?;
        let p = slice(p, rank, "p")?.to_vec();
        let rows = flat.chunks(rank.max(1)).map(<[i64]>::to_vec).collect();
        let cb = CoboundaryData::new(rows, p)?;
        write(out, Box::into_raw(Box::new(TinvCoboundary(cb))), "out")
    })
}

/// # Safety
/// `h` must come from [`tinv_coboundary_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tinv_coboundary_free(h: *mut TinvCoboundary) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// q and t of the class represented by `x` (length = rank).
///
/// # Safety
/// `h` must be a live handle, `x` must hold `len` values and the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tinv_coboundary_q_t(
    h: *const TinvCoboundary,
    x: *const i64,
    len: usize,
    q: *mut TinvQz,
    t: *mut TinvQz,
) -> TinvStatus {
    guard(|| {
        let cb = &handle(h, "handle")?.0;
        let qt = q_t_from_coboundary(cb, slice(x, len, "x")?)?;
        write(q, to_c(&qt.q)?, "q")?;
        write(t, to_c(&qt.t)?, "t")
    })
}

/// The mu-invariant computed from the signature and characteristic vector.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_coboundary_mu(h: *const TinvCoboundary, out: *mut TinvQz) -> TinvStatus {
    guard(|| write(out, to_c(&mu_hat(&handle(h, "handle")?.0))?, "out"))
}

/// Invariant factors of `H^4`. Writes at most `cap` factors and always
/// stores the full count in `len`, so a first call with `cap = 0` sizes the buffer.
///
/// # Safety
/// `factors` must have room for `cap` values; `h` and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tinv_coboundary_group(
    h: *const TinvCoboundary,
    factors: *mut i64,
    cap: usize,
    len: *mut usize,
) -> TinvStatus {
    guard(|| {
        let pres = snf_cokernel(&handle(h, "handle")?.0)?;
        let d = &pres.invariant_factors;
        write(len, d.len(), "len")?;
        if cap > 0 && factors.is_null() {
            return Err(null("factors"));
        }
        for (i, f) in d.iter().take(cap).enumerate() {
            let v = f.to_i64().ok_or_else(|| Failure(TinvStatus::Overflow, format!("factor {f}")))?;
            factors.add(i).write(v);
        }
        Ok(())
    })
}

/// Quadratic linking function of the coboundary on its torsion group.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_qlf_from_coboundary(h: *const TinvCoboundary, out: *mut *mut TinvQlf) -> TinvStatus {
    guard(|| {
        let q = qlf_from_coboundary(&handle(h, "handle")?.0)?;
        write(out, Box::into_raw(Box::new(TinvQlf(q))), "out")
    })
}

/// # Safety
/// `h` must come from [`tinv_qlf_from_coboundary`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tinv_qlf_free(h: *mut TinvQlf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Order of the group carrying the linking function.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_qlf_order(h: *const TinvQlf, out: *mut u64) -> TinvStatus {
    guard(|| write(out, handle(h, "handle")?.0.group().order(), "out"))
}

/// Whether the two linking functions are isomorphic.
///
/// # Safety
/// Both handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_qlf_isomorphic(a: *const TinvQlf, b: *const TinvQlf, out: *mut bool) -> TinvStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        write(out, iso_qlf(&a.0, &b.0).is_some(), "out")
    })
}

/// Classifies two manifolds from their linking functions and mu-invariants.
///
/// # Safety
/// Both handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_classify(
    a: *const TinvQlf,
    b: *const TinvQlf,
    mu_a: TinvQz,
    mu_b: TinvQz,
    out: *mut TinvVerdict,
) -> TinvStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let c = classify_pair(&a.0, &b.0, &from_c(mu_a)?, &from_c(mu_b)?);
        let v = match c.verdict {
            Verdict::Diffeomorphic => TinvVerdict::Diffeomorphic,
            Verdict::AlmostDiffeomorphicOnly => TinvVerdict::AlmostDiffeomorphicOnly,
            Verdict::Distinct => TinvVerdict::Distinct,
        };
        write(out, v, "out")
    })
}

/// Builds the untwisted t-table of `M_{n,p}` (n even), twists it by the pinch
/// map when `twisted` is set, and reports the detected Kirby-Siebenmann bit.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tinv_exotic_ks(n: i64, p: i64, twisted: bool, out: *mut TinvKsBit) -> TinvStatus {
    guard(|| {
        let tab = TTable::untwisted(SphereBundle7::new(n, p)?)?;
        let other = if twisted { pinch_twisted_table(&tab)? } else { tab.clone() };
        let bit = match detect_ks(&tab, &other)? {
            KsBit::Zero => TinvKsBit::Zero,
            KsBit::One => TinvKsBit::One,
            KsBit::Inconsistent => TinvKsBit::Inconsistent,
        };
        write(out, bit, "out")
    })
}
