//! C ABI over `lambflux`.
//!
//! Every fallible function returns an [`LfStatus`]; on failure the message
//! is available from [`lf_last_error_message`] on the same thread. Panics
//! never cross the boundary. Models are opaque handles created by
//! [`lf_model_new`] and released with [`lf_model_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lambflux::bath::{bose_occupation, gamma_rate, Sign, SpectralKind};
use lambflux::dynamics::heat_current_closed;
use lambflux::dynamics::steady_state_analytic;
use lambflux::experiments::{self, Grid, Spacing, SweepConfig};
use lambflux::lambshift::{compute_lamb_shift, positivity_margin, LambShiftData};
use lambflux::model::{Channel, Qubit, SystemParams};
use lambflux::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Quadrature = 4,
    Series = 5,
    PoleNearCutoff = 6,
    CotPole = 7,
    Degenerate = 8,
    MissingLamb = 9,
    RouteMismatch = 10,
    Config = 11,
    Io = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

impl LfStatus {
    fn name(self) -> &'static CStr {
        match self {
            LfStatus::Ok => c"OK",
            LfStatus::NullPointer => c"NULL_POINTER",
            LfStatus::InvalidArgument => c"INVALID_ARGUMENT",
            LfStatus::Domain => c"DOMAIN",
            LfStatus::Quadrature => c"QUADRATURE",
            LfStatus::Series => c"SERIES",
            LfStatus::PoleNearCutoff => c"POLE_NEAR_CUTOFF",
            LfStatus::CotPole => c"COT_POLE",
            LfStatus::Degenerate => c"DEGENERATE",
            LfStatus::MissingLamb => c"MISSING_LAMB",
            LfStatus::RouteMismatch => c"ROUTE_MISMATCH",
            LfStatus::Config => c"CONFIG",
            LfStatus::Io => c"IO",
            LfStatus::BufferTooSmall => c"BUFFER_TOO_SMALL",
            LfStatus::Panic => c"PANIC",
        }
    }

    const ALL: [LfStatus; 15] = [
        LfStatus::Ok,
        LfStatus::NullPointer,
        LfStatus::InvalidArgument,
        LfStatus::Domain,
        LfStatus::Quadrature,
        LfStatus::Series,
        LfStatus::PoleNearCutoff,
        LfStatus::CotPole,
        LfStatus::Degenerate,
        LfStatus::MissingLamb,
        LfStatus::RouteMismatch,
        LfStatus::Config,
        LfStatus::Io,
        LfStatus::BufferTooSmall,
        LfStatus::Panic,
    ];
}

impl From<&Error> for LfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => LfStatus::Domain,
            Error::Quadrature { .. } => LfStatus::Quadrature,
            Error::Series(_) => LfStatus::Series,
            Error::PoleNearCutoff { .. } => LfStatus::PoleNearCutoff,
            Error::CotangentPole { .. } => LfStatus::CotPole,
            Error::Degenerate(_) => LfStatus::Degenerate,
            Error::MissingLambData => LfStatus::MissingLamb,
            Error::RouteMismatch { .. } => LfStatus::RouteMismatch,
            Error::Point { source, .. } => LfStatus::from(source.as_ref()),
            Error::Config(_) => LfStatus::Config,
            Error::Io(_) => LfStatus::Io,
        }
    }
}

/// Spectral density tags accepted by the `kind` arguments.
pub const LF_SPECTRAL_DRUDE: c_int = 0;
pub const LF_SPECTRAL_HARD: c_int = 1;
pub const LF_SPECTRAL_GAUSSIAN: c_int = 2;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(LfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(LfStatus::from(&e), e.to_string())
    }
}

fn null() -> Failure {
    Failure(LfStatus::NullPointer, "null pointer argument".into())
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(LfStatus::InvalidArgument, msg.into())
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> LfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            LfStatus::Panic
        }
    }
}

fn kind_from(kind: c_int) -> Result<SpectralKind, Failure> {
    match kind {
        LF_SPECTRAL_DRUDE => Ok(SpectralKind::Drude),
        LF_SPECTRAL_HARD => Ok(SpectralKind::Hard),
        LF_SPECTRAL_GAUSSIAN => Ok(SpectralKind::Gaussian),
        k => Err(invalid(format!("unknown spectral kind {k}"))),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

/// Opaque model: system, baths and evaluation settings.
pub struct LfModel {
    config: SweepConfig,
}

impl LfModel {
    fn lamb(&self, dt: f64) -> Result<LambShiftData, Failure> {
        let c = &self.config;
        let es = c.eigensystem()?;
        let baths = c.baths(dt)?;
        Ok(compute_lamb_shift(
            &es,
            &baths,
            c.policy,
            &c.quadrature,
            c.series_tol,
        )?)
    }
}

unsafe fn model<'a>(m: *const LfModel) -> Result<&'a LfModel, Failure> {
    m.as_ref().ok_or_else(null)
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LfSpectrum {
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub theta: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// `(-beta, beta, alpha, -alpha)`.
    pub eigenvalues: [f64; 4],
}

/// Per-channel arrays are ordered `(j, mu) = (1,1), (1,2), (2,1), (2,2)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LfLambShift {
    pub delta: [f64; 4],
    pub delta_prime: [f64; 4],
    pub r: [f64; 4],
    pub r_estimate: [f64; 4],
    pub level_shifts: [f64; 4],
    pub increments: [f64; 2],
    pub margins: [f64; 2],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LfHeatCurrent {
    pub with_lamb: f64,
    pub no_lamb: f64,
    pub difference: f64,
    pub a: [f64; 2],
    pub increments: [f64; 2],
    pub supremum: f64,
}

/// Creates a model with `T_1 = t1` and both baths of the same `kind` and
/// cutoff `omega_d`. On success `*out` owns a handle for [`lf_model_free`].
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_model_new(
    epsilon1: f64,
    epsilon2: f64,
    g: f64,
    kind: c_int,
    gamma1: f64,
    gamma2: f64,
    omega_d: f64,
    t1: f64,
    out: *mut *mut LfModel,
) -> LfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let params = SystemParams::new(epsilon1, epsilon2, g)?;
        let mut config = SweepConfig::new(params, kind_from(kind)?, gamma1, omega_d);
        config.gamma2 = gamma2;
        config.t1 = t1;
        config.validate()?;
        out.write(Box::into_raw(Box::new(LfModel { config })));
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `m` must come from [`lf_model_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lf_model_free(m: *mut LfModel) {
    if !m.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(m))));
    }
}

/// # Safety
/// `m` must be a live model and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lf_model_spectrum(m: *const LfModel, out: *mut LfSpectrum) -> LfStatus {
    guard(|| {
        let es = model(m)?.config.eigensystem()?;
        write_out(
            out,
            LfSpectrum {
                alpha: es.alpha,
                beta: es.beta,
                phi: es.phi,
                theta: es.theta,
                phi_plus: es.phi_plus,
                phi_minus: es.phi_minus,
                omega1: es.omega1,
                omega2: es.omega2,
                eigenvalues: es.eigenvalues,
            },
        )
    })
}

/// Shift integrals and increments at `T_2 = T_1 + dt`.
///
/// # Safety
/// `m` must be a live model and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lf_model_lamb_shift(
    m: *const LfModel,
    dt: f64,
    out: *mut LfLambShift,
) -> LfStatus {
    guard(|| {
        let model = model(m)?;
        let data = model.lamb(dt)?;
        let es = model.config.eigensystem()?;
        let mut r = LfLambShift::default();
        let mut i = 0;
        for j in Qubit::ALL {
            for mu in Channel::ALL {
                let c = data.channels.get(j, mu);
                r.delta[i] = c.delta;
                r.delta_prime[i] = c.delta_prime();
                r.r[i] = c.r;
                r.r_estimate[i] = c.r_estimate;
                i += 1;
            }
        }
        r.level_shifts = data.level_shifts;
        r.increments = data.increments;
        r.margins = positivity_margin(&es, &data);
        write_out(out, r)
    })
}

/// Eigenbasis populations `(rho_11, rho_22, rho_33, rho_44)` at `dt`.
///
/// # Safety
/// `m` must be a live model and `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn lf_model_steady_state(
    m: *const LfModel,
    dt: f64,
    out: *mut f64,
) -> LfStatus {
    guard(|| {
        let c = &model(m)?.config;
        let s = steady_state_analytic(&c.eigensystem()?, &c.baths(dt)?)?;
        if out.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(s.populations.as_ptr(), out, 4);
        Ok(())
    })
}

/// Bath-1 heat current with and without the Lamb shift at `dt`.
///
/// # Safety
/// `m` must be a live model and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lf_model_heat_current(
    m: *const LfModel,
    dt: f64,
    out: *mut LfHeatCurrent,
) -> LfStatus {
    guard(|| {
        let model = model(m)?;
        let c = &model.config;
        let data = model.lamb(dt)?;
        let r = heat_current_closed(&c.eigensystem()?, &c.baths(dt)?, data.increments)?;
        write_out(
            out,
            LfHeatCurrent {
                with_lamb: r.with_lamb,
                no_lamb: r.no_lamb,
                difference: r.difference,
                a: r.a,
                increments: r.increments,
                supremum: r.supremum,
            },
        )
    })
}

/// Bose occupation `1/(exp(omega/t) - 1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_bose_occupation(omega: f64, t: f64, out: *mut f64) -> LfStatus {
    guard(|| write_out(out, bose_occupation(omega, t)?))
}

/// `Gamma(+omega)` for `sign > 0`, `Gamma(-omega)` for `sign < 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_gamma_rate(
    kind: c_int,
    gamma: f64,
    omega_d: f64,
    t: f64,
    omega: f64,
    sign: c_int,
    out: *mut f64,
) -> LfStatus {
    guard(|| {
        let j = kind_from(kind)?.with(gamma, omega_d)?;
        let s = match sign {
            s if s > 0 => Sign::Plus,
            s if s < 0 => Sign::Minus,
            _ => return Err(invalid("sign must be nonzero")),
        };
        write_out(out, gamma_rate(&j, t, omega, s)?)
    })
}

/// Runs a sweep over `count` values of `dt` in `[dt_min, dt_max]`
/// (`log_spacing != 0` for a log grid) and writes the CSV, NUL-terminated,
/// into `buf`. `*written` receives the required size including the NUL;
/// if `len` is too small nothing is written and `BUFFER_TOO_SMALL` is
/// returned, so a call with `buf = NULL, len = 0` queries the size.
///
/// # Safety
/// `m` must be a live model, `written` writable and `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lf_sweep_csv(
    m: *const LfModel,
    dt_min: f64,
    dt_max: f64,
    count: usize,
    log_spacing: c_int,
    include_lamb: c_int,
    buf: *mut c_char,
    len: usize,
    written: *mut usize,
) -> LfStatus {
    guard(|| {
        if written.is_null() {
            return Err(null());
        }
        let mut config = model(m)?.config.clone();
        config.grid = Grid {
            min: dt_min,
            max: dt_max,
            count,
            spacing: if log_spacing != 0 {
                Spacing::Log
            } else {
                Spacing::Linear
            },
        };
        config.include_lamb = include_lamb != 0;
        let csv = experiments::csv_string(&experiments::sweep(&config)?)?;
        let needed = csv.len() + 1;
        written.write(needed);
        if buf.is_null() || len < needed {
            return Err(Failure(
                LfStatus::BufferTooSmall,
                format!("buffer holds {len} bytes, {needed} needed"),
            ));
        }
        ptr::copy_nonoverlapping(csv.as_ptr(), buf.cast::<u8>(), csv.len());
        buf.add(csv.len()).write(0);
        Ok(())
    })
}

/// Message of the last failure on this thread (empty after a success).
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code, or "UNKNOWN".
#[no_mangle]
pub extern "C" fn lf_status_name(status: c_int) -> *const c_char {
    LfStatus::ALL
        .iter()
        .find(|s| **s as c_int == status)
        .map_or(c"UNKNOWN".as_ptr(), |s| s.name().as_ptr())
}

/// Library version, static string.
#[no_mangle]
pub extern "C" fn lf_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => c"unknown",
        };
    VERSION.as_ptr()
}
