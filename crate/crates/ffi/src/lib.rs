//! C ABI for `bratio`.
//!
//! Rate sets and generators are opaque heap handles created by `br_*_new`
//! and released by the matching `br_*_free`. Every fallible call returns a
//! [`BrStatus`]; on failure `br_last_error_message` describes the error for
//! the calling thread. Results are written through out-pointers only on
//! success.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bratio::dressed::to_dressed;
use bratio::dynamics::{assemble, evolve, relaxation_gap, steady_state, Generator, Variant};
use bratio::emission::{
    branching_ratio_limits, branching_ratio_maxcoh, branching_ratio_nocoh,
    branching_ratio_operational,
};
use bratio::model::{DensityMatrix, RateParams, RateSet};
use bratio::plasma::{collision_rate, Channel, ChannelData, PlasmaConditions};
use bratio::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidRates = 2,
    AsymmetricRates = 3,
    InvalidArgument = 4,
    SingularSystem = 5,
    StiffnessFailure = 6,
    NonRealCoherence = 7,
    DivisionByZero = 8,
    NegativeWeight = 9,
    Truncation = 10,
    InvalidPlasma = 11,
    Io = 12,
    Panic = 99,
}

impl From<&Error> for BrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidRates(_) => BrStatus::InvalidRates,
            Error::AsymmetricRates => BrStatus::AsymmetricRates,
            Error::InvalidIntegration(_) | Error::Config { .. } => BrStatus::InvalidArgument,
            Error::SingularSystem(_) => BrStatus::SingularSystem,
            Error::StiffnessFailure { .. } => BrStatus::StiffnessFailure,
            Error::NonRealCoherence(_) => BrStatus::NonRealCoherence,
            Error::DivisionByZero(_) => BrStatus::DivisionByZero,
            Error::NegativeWeight(_) => BrStatus::NegativeWeight,
            Error::TruncationError { .. } | Error::ZeroWidth => BrStatus::Truncation,
            Error::UnknownChannel(_) | Error::InvalidPlasma(_) => BrStatus::InvalidPlasma,
            Error::Io { .. } => BrStatus::Io,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrVariant {
    VSubsystem = 0,
    FiveLevel = 1,
    Reduced = 2,
}

impl From<BrVariant> for Variant {
    fn from(v: BrVariant) -> Self {
        match v {
            BrVariant::VSubsystem => Variant::VSubsystem,
            BrVariant::FiveLevel => Variant::FiveLevel,
            BrVariant::Reduced => Variant::Reduced,
        }
    }
}

/// Full rate parameter set. Line frequencies of zero are replaced by one.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrRateParams {
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gamma_uv: f64,
    pub gamma_e: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub r_e: f64,
    pub r_uv: f64,
    pub p: f64,
    pub delta: f64,
    pub omega_vis: f64,
    pub omega_uv: f64,
}

impl From<BrRateParams> for RateParams {
    fn from(b: BrRateParams) -> Self {
        let freq = |w: f64| if w == 0.0 { 1.0 } else { w };
        RateParams {
            gamma_a: b.gamma_a,
            gamma_b: b.gamma_b,
            gamma_uv: b.gamma_uv,
            gamma_e: b.gamma_e,
            r_a: b.r_a,
            r_b: b.r_b,
            r_e: b.r_e,
            r_uv: b.r_uv,
            p: b.p,
            delta: b.delta,
            omega_vis: freq(b.omega_vis),
            omega_uv: freq(b.omega_uv),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BrDensityMatrix {
    pub pop_a: f64,
    pub pop_b: f64,
    pub pop_c: f64,
    pub pop_d: f64,
    pub pop_e: f64,
    pub coh_ab_re: f64,
    pub coh_ab_im: f64,
    pub coh_ca_re: f64,
    pub coh_ca_im: f64,
    pub coh_cb_re: f64,
    pub coh_cb_im: f64,
    pub coh_ad_re: f64,
    pub coh_ad_im: f64,
}

impl From<&DensityMatrix> for BrDensityMatrix {
    fn from(d: &DensityMatrix) -> Self {
        BrDensityMatrix {
            pop_a: d.pop_a,
            pop_b: d.pop_b,
            pop_c: d.pop_c,
            pop_d: d.pop_d,
            pop_e: d.pop_e,
            coh_ab_re: d.coh_ab.re,
            coh_ab_im: d.coh_ab.im,
            coh_ca_re: d.coh_ca.re,
            coh_ca_im: d.coh_ca.im,
            coh_cb_re: d.coh_cb.re,
            coh_cb_im: d.coh_cb.im,
            coh_ad_re: d.coh_ad.re,
            coh_ad_im: d.coh_ad.im,
        }
    }
}

impl From<&BrDensityMatrix> for DensityMatrix {
    fn from(b: &BrDensityMatrix) -> Self {
        DensityMatrix {
            pop_a: b.pop_a,
            pop_b: b.pop_b,
            pop_c: b.pop_c,
            pop_d: b.pop_d,
            pop_e: b.pop_e,
            coh_ab: Complex64::new(b.coh_ab_re, b.coh_ab_im),
            coh_ca: Complex64::new(b.coh_ca_re, b.coh_ca_im),
            coh_cb: Complex64::new(b.coh_cb_re, b.coh_cb_im),
            coh_ad: Complex64::new(b.coh_ad_re, b.coh_ad_im),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BrDressed {
    pub rho_dd_dark: f64,
    pub rho_bb_bright: f64,
    pub rho_db: f64,
}

/// Opaque validated rate set.
pub struct BrRates(RateSet);

/// Opaque assembled generator.
pub struct BrGenerator(Generator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Run `f`, translating errors and panics into a status code.
fn guard<F>(f: F) -> BrStatus
where
    F: FnOnce() -> Result<(), (BrStatus, String)>,
{
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BrStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            BrStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BrStatus, String) {
    (BrStatus::from(&e), e.to_string())
}

fn null(name: &str) -> (BrStatus, String) {
    (BrStatus::NullPointer, format!("{name} is NULL"))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, (BrStatus, String)> {
    // SAFETY: caller guarantees `p` is NULL or valid for reads
    unsafe { p.as_ref() }.ok_or_else(|| null(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), (BrStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    // SAFETY: non-NULL and, per the caller contract, valid for writes
    unsafe { out.write(value) };
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next `br_*` call on the same thread.
#[no_mangle]
pub extern "C" fn br_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn br_status_string(status: BrStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        BrStatus::Ok => b"ok\0",
        BrStatus::NullPointer => b"null pointer argument\0",
        BrStatus::InvalidRates => b"invalid rates\0",
        BrStatus::AsymmetricRates => b"asymmetric rates not supported by this variant\0",
        BrStatus::InvalidArgument => b"invalid argument\0",
        BrStatus::SingularSystem => b"singular steady-state system\0",
        BrStatus::StiffnessFailure => b"step size underflow or step budget exhausted\0",
        BrStatus::NonRealCoherence => b"coherence is not real\0",
        BrStatus::DivisionByZero => b"division by zero\0",
        BrStatus::NegativeWeight => b"negative emission weight\0",
        BrStatus::Truncation => b"spectrum truncated\0",
        BrStatus::InvalidPlasma => b"invalid plasma conditions\0",
        BrStatus::Io => b"i/o error\0",
        BrStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Validate `params` and store a new rate set in `*out`.
///
/// # Safety
/// `params` must be NULL or point to a readable `BrRateParams`; `out` must be
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_rates_new(
    params: *const BrRateParams,
    out: *mut *mut BrRates,
) -> BrStatus {
    guard(|| {
        let params = unsafe { deref(params, "params") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let rates = RateSet::new((*params).into()).map_err(lib_err)?;
        unsafe { write(out, Box::into_raw(Box::new(BrRates(rates))), "out") }
    })
}

/// Symmetric rate set (`r_a = r_b = r_vis`, `gamma_a = gamma_b = gamma_vis`).
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_rates_simplified(
    gamma_vis: f64,
    gamma_uv: f64,
    r_vis: f64,
    r_e: f64,
    r_uv: f64,
    p: f64,
    out: *mut *mut BrRates,
) -> BrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let rates =
            RateSet::simplified(gamma_vis, gamma_uv, r_vis, r_e, r_uv, p).map_err(lib_err)?;
        unsafe { write(out, Box::into_raw(Box::new(BrRates(rates))), "out") }
    })
}

/// Replace the decay rate of the auxiliary level.
///
/// # Safety
/// `rates` must be NULL or a live handle from `br_rates_new`.
#[no_mangle]
pub unsafe extern "C" fn br_rates_set_gamma_e(rates: *mut BrRates, gamma_e: f64) -> BrStatus {
    guard(|| {
        // SAFETY: live handle per the caller contract
        let r = unsafe { rates.as_mut() }.ok_or_else(|| null("rates"))?;
        r.0 = r.0.with_gamma_e(gamma_e).map_err(lib_err)?;
        Ok(())
    })
}

/// # Safety
/// `rates` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn br_rates_free(rates: *mut BrRates) {
    if !rates.is_null() {
        // SAFETY: created by Box::into_raw in br_rates_new
        drop(unsafe { Box::from_raw(rates) });
    }
}

/// Assemble the generator of `variant` for `rates`.
///
/// # Safety
/// `rates` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_generator_new(
    rates: *const BrRates,
    variant: BrVariant,
    out: *mut *mut BrGenerator,
) -> BrStatus {
    guard(|| {
        let rates = unsafe { deref(rates, "rates") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let gen = assemble(&rates.0, variant.into()).map_err(lib_err)?;
        unsafe { write(out, Box::into_raw(Box::new(BrGenerator(gen))), "out") }
    })
}

/// # Safety
/// `gen` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn br_generator_free(gen: *mut BrGenerator) {
    if !gen.is_null() {
        // SAFETY: created by Box::into_raw in br_generator_new
        drop(unsafe { Box::from_raw(gen) });
    }
}

/// # Safety
/// `gen` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_steady_state(
    gen: *const BrGenerator,
    out: *mut BrDensityMatrix,
) -> BrStatus {
    guard(|| {
        let gen = unsafe { deref(gen, "gen") }?;
        let st = steady_state(&gen.0).map_err(lib_err)?;
        unsafe { write(out, BrDensityMatrix::from(&st), "out") }
    })
}

/// Slowest relaxation rate of `gen`. Fails with `SingularSystem` when the
/// generator has no decaying mode.
///
/// # Safety
/// `gen` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_relaxation_gap(gen: *const BrGenerator, out: *mut f64) -> BrStatus {
    guard(|| {
        let gen = unsafe { deref(gen, "gen") }?;
        let gap = relaxation_gap(&gen.0).ok_or_else(|| {
            (
                BrStatus::SingularSystem,
                "generator has no decaying mode".to_string(),
            )
        })?;
        unsafe { write(out, gap, "out") }
    })
}

/// Integrate from `initial` to `t_final` and store the final state.
///
/// # Safety
/// `gen` must be NULL or a live handle; `initial` must be NULL or readable;
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_evolve_final(
    gen: *const BrGenerator,
    initial: *const BrDensityMatrix,
    t_final: f64,
    dt_max: f64,
    tol: f64,
    out: *mut BrDensityMatrix,
) -> BrStatus {
    guard(|| {
        let gen = unsafe { deref(gen, "gen") }?;
        let initial = DensityMatrix::from(unsafe { deref(initial, "initial") }?);
        if out.is_null() {
            return Err(null("out"));
        }
        let traj = evolve(&gen.0, &initial, t_final, dt_max, tol).map_err(lib_err)?;
        unsafe { write(out, BrDensityMatrix::from(traj.final_state()), "out") }
    })
}

/// `(gamma_vis / gamma_uv) W_vis / rho_aa` for a given state.
///
/// # Safety
/// `state` must be NULL or readable; `rates` NULL or a live handle; `out`
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_branching_ratio(
    state: *const BrDensityMatrix,
    rates: *const BrRates,
    out: *mut f64,
) -> BrStatus {
    guard(|| {
        let state = DensityMatrix::from(unsafe { deref(state, "state") }?);
        let rates = unsafe { deref(rates, "rates") }?;
        let r = branching_ratio_operational(&state, &rates.0).map_err(lib_err)?;
        unsafe { write(out, r, "out") }
    })
}

/// Maximal-coherence deep-pump ratio.
///
/// # Safety
/// `rates` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_branching_ratio_maxcoh(
    rates: *const BrRates,
    out: *mut f64,
) -> BrStatus {
    guard(|| {
        let rates = unsafe { deref(rates, "rates") }?;
        let r = branching_ratio_maxcoh(&rates.0).map_err(lib_err)?;
        unsafe { write(out, r, "out") }
    })
}

/// Exact ratio without interference.
///
/// # Safety
/// `rates` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_branching_ratio_nocoh(
    rates: *const BrRates,
    out: *mut f64,
) -> BrStatus {
    guard(|| {
        let rates = unsafe { deref(rates, "rates") }?;
        let r = branching_ratio_nocoh(&rates.0).map_err(lib_err)?;
        unsafe { write(out, r, "out") }
    })
}

/// Low- and high-density limits.
///
/// # Safety
/// `rates` must be NULL or a live handle; `low` and `high` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_branching_ratio_limits(
    rates: *const BrRates,
    low: *mut f64,
    high: *mut f64,
) -> BrStatus {
    guard(|| {
        let rates = unsafe { deref(rates, "rates") }?;
        if low.is_null() || high.is_null() {
            return Err(null("low/high"));
        }
        let l = branching_ratio_limits(&rates.0).map_err(lib_err)?;
        unsafe {
            write(low, l.low_density, "low")?;
            write(high, l.high_density, "high")
        }
    })
}

/// Dark/bright populations of the `{a, b}` block.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_to_dressed(
    pop_a: f64,
    pop_b: f64,
    coh_ab_re: f64,
    coh_ab_im: f64,
    out: *mut BrDressed,
) -> BrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let d = to_dressed(pop_a, pop_b, Complex64::new(coh_ab_re, coh_ab_im)).map_err(lib_err)?;
        unsafe {
            write(
                out,
                BrDressed {
                    rho_dd_dark: d.rho_dd_dark,
                    rho_bb_bright: d.rho_bb_bright,
                    rho_db: d.rho_db,
                },
                "out",
            )
        }
    })
}

/// Thermal electron-impact rate `2 n_e kbar c sqrt(2 kT/(pi M)) exp(-E/kT)`
/// for one channel. Energies and `kT` in eV, `mass` in eV/c^2,
/// `cross_section` in cm^2.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn br_collision_rate(
    n_e: f64,
    temperature: f64,
    mass: f64,
    cross_section: f64,
    energy: f64,
    out: *mut f64,
) -> BrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cond = PlasmaConditions::new(
            n_e,
            temperature,
            mass,
            vec![ChannelData {
                channel: Channel::Vis,
                cross_section,
                energy,
            }],
        )
        .map_err(lib_err)?;
        let r = collision_rate(&cond, Channel::Vis).map_err(lib_err)?;
        unsafe { write(out, r, "out") }
    })
}
