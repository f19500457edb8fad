//! Environment-induced level shifts.
//!
//! For each bath `j` and channel `mu` three integrals are needed:
//! the thermal part `Delta`, and the vacuum parts `Delta^+` and `Delta^-`
//! (with `Delta' = Delta^+ + Delta^-`). Drude baths have closed forms;
//! every bath can be handled by direct principal-value quadrature.

pub mod analytic;
pub mod appendix;
pub mod pv;

use crate::bath::{Bath, SpectralDensity, SpectralKind};
use crate::error::{Error, Result};
use crate::model::{Channel, EigenSystem, Qubit};
use crate::quad::Tolerance;

pub use analytic::{
    analytic_delta, analytic_delta_plus, analytic_delta_prime, euler_maclaurin_r, matsubara_r,
};
pub use appendix::{
    closed_form_big_f_integral, closed_form_f_integral, cotangent_form_delta, mittag_leffler_cot,
    quadrature_big_f_integral, quadrature_f_integral,
};
pub use pv::{
    pv_quadrature_s, quadrature_coth_combination, quadrature_delta, quadrature_delta_minus,
    quadrature_delta_plus, quadrature_delta_prime,
};

/// Default tolerance of the Matsubara tail correction.
pub const DEFAULT_SERIES_TOL: f64 = 1e-13;

/// Controls the principal-value quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound `eta_0` on the half-width of the symmetric pole window.
    pub pole_window: f64,
    /// Truncation `Lambda = truncation_factor * omega_d` for the smooth
    /// cutoffs; beyond it the integral is mapped onto a finite interval.
    /// The hard cutoff always truncates at `omega_d`.
    pub truncation_factor: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-15,
            rel_tol: 1e-11,
            pole_window: 0.5,
            truncation_factor: 100.0,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::domain("tolerances > 0", format!("{self:?}")));
        }
        if !(self.pole_window > 0.0) {
            return Err(Error::domain(
                "pole window > 0",
                format!("{}", self.pole_window),
            ));
        }
        if !(self.truncation_factor > 1.0) {
            return Err(Error::domain(
                "Lambda > omega_d",
                format!("truncation factor {}", self.truncation_factor),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max subdivisions > 0", "0"));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// Which evaluation produced a channel's shift integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Drude closed forms with the Matsubara series.
    Analytic,
    /// Direct principal-value quadrature.
    Quadrature,
}

/// How [`compute_lamb_shift`] picks a route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoutePolicy {
    /// Closed forms for Drude baths, quadrature for the others.
    #[default]
    Auto,
    Quadrature,
}

/// Shift integrals of one `(j, mu)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelShift {
    pub delta: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    /// Residual Matsubara series at this bath's temperature. It depends
    /// only on `(T, omega_mu, omega_d)`; it enters the shift only for Drude.
    pub r: f64,
    pub r_estimate: f64,
    pub route: Route,
}

impl ChannelShift {
    pub fn delta_prime(&self) -> f64 {
        self.delta_plus + self.delta_minus
    }

    /// `2 Delta + Delta'`, the combination entering transition increments.
    pub fn increment_coefficient(&self) -> f64 {
        2.0 * self.delta + self.delta_prime()
    }

    pub fn zero() -> Self {
        ChannelShift {
            delta: 0.0,
            delta_plus: 0.0,
            delta_minus: 0.0,
            r: 0.0,
            r_estimate: 0.0,
            route: Route::Analytic,
        }
    }
}

/// All four channels, indexed by `(j, mu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelShifts(pub [[ChannelShift; 2]; 2]);

impl ChannelShifts {
    pub fn get(&self, j: Qubit, mu: Channel) -> &ChannelShift {
        &self.0[j.index()][mu.index()]
    }

    pub fn zero() -> Self {
        ChannelShifts([[ChannelShift::zero(); 2]; 2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambShiftData {
    pub channels: ChannelShifts,
    /// Diagonal of `H_LS` in the eigenbasis, `(Delta_1, ..., Delta_4)`.
    pub level_shifts: [f64; 4],
    /// `(delta_1, delta_2)`: shifts of the transition frequencies
    /// `E_2 - E_3` and `E_2 - E_4`.
    pub increments: [f64; 2],
}

impl LambShiftData {
    pub fn from_channels(es: &EigenSystem, channels: ChannelShifts) -> Self {
        LambShiftData {
            channels,
            level_shifts: level_shifts(es, &channels),
            increments: transition_increments(es, &channels),
        }
    }

    pub fn zero(es: &EigenSystem) -> Self {
        Self::from_channels(es, ChannelShifts::zero())
    }
}

/// Evaluates one channel's shift integrals for one bath.
pub fn channel_shift(
    spectral: &SpectralDensity,
    t: f64,
    omega_mu: f64,
    policy: RoutePolicy,
    cfg: &QuadratureConfig,
    series_tol: f64,
) -> Result<ChannelShift> {
    let omega_d = spectral.omega_d();
    let r = matsubara_r(t, omega_mu, omega_d, series_tol)?;
    let r_estimate = euler_maclaurin_r(t, omega_mu, omega_d);
    match (spectral, policy) {
        (SpectralDensity::DrudeLorentz { gamma, omega_d }, RoutePolicy::Auto) => {
            let delta = analytic::analytic_delta_from_r(*gamma, *omega_d, t, omega_mu, r);
            let delta_plus = analytic_delta_plus(*gamma, *omega_d, omega_mu);
            let delta_minus = analytic_delta_prime(*gamma, *omega_d, omega_mu) - delta_plus;
            Ok(ChannelShift {
                delta,
                delta_plus,
                delta_minus,
                r,
                r_estimate,
                route: Route::Analytic,
            })
        }
        _ => Ok(ChannelShift {
            delta: quadrature_delta(spectral, t, omega_mu, cfg)?,
            delta_plus: quadrature_delta_plus(spectral, omega_mu, cfg)?,
            delta_minus: quadrature_delta_minus(spectral, omega_mu, cfg)?,
            r,
            r_estimate,
            route: Route::Quadrature,
        }),
    }
}

/// Shift integrals for every `(j, mu)` and the derived level shifts.
pub fn compute_lamb_shift(
    es: &EigenSystem,
    baths: &[Bath; 2],
    policy: RoutePolicy,
    cfg: &QuadratureConfig,
    series_tol: f64,
) -> Result<LambShiftData> {
    let mut channels = ChannelShifts::zero();
    for j in Qubit::ALL {
        let bath = &baths[j.index()];
        for mu in Channel::ALL {
            channels.0[j.index()][mu.index()] = channel_shift(
                &bath.spectral,
                bath.temperature,
                es.omega(mu),
                policy,
                cfg,
                series_tol,
            )?;
        }
    }
    Ok(LambShiftData::from_channels(es, channels))
}

/// Diagonal coefficients of `H_LS = sum S(w) V^dag V + S(-w) V V^dag` with
/// `S(+w) = Delta + Delta^-` and `S(-w) = -(Delta + Delta^+)`.
pub fn level_shifts(es: &EigenSystem, ch: &ChannelShifts) -> [f64; 4] {
    let up = |j, mu| {
        let c: &ChannelShift = ch.get(j, mu);
        c.delta + c.delta_minus
    };
    let down = |j, mu| {
        let c: &ChannelShift = ch.get(j, mu);
        -(c.delta + c.delta_plus)
    };
    let w11 = es.weight(Qubit::One, Channel::One); // sin^2 phi+
    let w12 = es.weight(Qubit::One, Channel::Two); // cos^2 phi+
    let w21 = es.weight(Qubit::Two, Channel::One); // cos^2 phi-
    let w22 = es.weight(Qubit::Two, Channel::Two); // sin^2 phi-
    use Channel::{One as M1, Two as M2};
    use Qubit::{One as J1, Two as J2};
    let d1 = down(J1, M1) * w11 + down(J2, M2) * w22 + down(J1, M2) * w12 + down(J2, M1) * w21;
    let d2 = up(J1, M1) * w11 + up(J2, M2) * w22 + up(J1, M2) * w12 + up(J2, M1) * w21;
    let d3 = down(J1, M1) * w11 + up(J2, M2) * w22 + up(J1, M2) * w12 + down(J2, M1) * w21;
    let d4 = up(J1, M1) * w11 + down(J2, M2) * w22 + down(J1, M2) * w12 + up(J2, M1) * w21;
    [d1, d2, d3, d4]
}

/// `delta_1 = (2 Delta_11 + Delta'_11) sin^2 phi+ + (2 Delta_21 + Delta'_21) cos^2 phi-`
/// and `delta_2 = (2 Delta_22 + Delta'_22) sin^2 phi- + (2 Delta_12 + Delta'_12) cos^2 phi+`.
///
/// In terms of [`level_shifts`]: `delta_1 = Delta_2 - Delta_3` and
/// `delta_2 = Delta_2 - Delta_4`.
pub fn transition_increments(es: &EigenSystem, ch: &ChannelShifts) -> [f64; 2] {
    let term = |j, mu| ch.get(j, mu).increment_coefficient() * es.weight(j, mu);
    [
        term(Qubit::One, Channel::One) + term(Qubit::Two, Channel::One),
        term(Qubit::Two, Channel::Two) + term(Qubit::One, Channel::Two),
    ]
}

/// `(omega_1 + delta_1, omega_2 + delta_2)`; both must stay positive.
pub fn positivity_margin(es: &EigenSystem, data: &LambShiftData) -> [f64; 2] {
    [
        es.omega1 + data.increments[0],
        es.omega2 + data.increments[1],
    ]
}

/// Coefficients of the exact affine form
/// `delta_mu = P_mu + Q_mu dT + (Q_mu omega_d / pi) R_{2,mu}(T_2)`,
/// with `dT = T_2 - T_1`, for two Drude baths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineIncrement {
    pub p: [f64; 2],
    pub q: [f64; 2],
    /// `omega_d` of bath 2, which multiplies `R_{2,mu}`.
    pub omega_d2: f64,
}

impl AffineIncrement {
    pub fn evaluate(&self, mu: Channel, delta_t: f64, r2: f64) -> f64 {
        let i = mu.index();
        self.p[i] + self.q[i] * delta_t + self.q[i] * self.omega_d2 / std::f64::consts::PI * r2
    }
}

pub fn affine_increment(
    es: &EigenSystem,
    baths: &[Bath; 2],
    series_tol: f64,
) -> Result<AffineIncrement> {
    let (g1, wd1) = match baths[0].spectral {
        SpectralDensity::DrudeLorentz { gamma, omega_d } => (gamma, omega_d),
        _ => return Err(drude_only()),
    };
    let wd2 = match baths[1].spectral {
        SpectralDensity::DrudeLorentz { omega_d, .. } => omega_d,
        _ => return Err(drude_only()),
    };
    let t1 = baths[0].temperature;
    let pi = std::f64::consts::PI;
    let j1 = |w: f64| baths[0].j(w);
    let j2 = |w: f64| baths[1].j(w);
    let _ = g1;
    let mut p = [0.0; 2];
    let mut q = [0.0; 2];
    for mu in Channel::ALL {
        let w = es.omega(mu);
        let r1 = matsubara_r(t1, w, wd1, series_tol)?;
        let (w1, w2) = (es.weight(Qubit::One, mu), es.weight(Qubit::Two, mu));
        p[mu.index()] = 2.0 * j1(w) / pi * (pi * t1 / wd1 + r1) * w1 + 2.0 * j2(w) * t1 / wd2 * w2;
        q[mu.index()] = 2.0 * j2(w) / wd2 * w2;
    }
    Ok(AffineIncrement {
        p,
        q,
        omega_d2: wd2,
    })
}

fn drude_only() -> Error {
    Error::domain(
        "Drude baths",
        "the affine increment form exists only for Drude-Lorentz baths",
    )
}

pub fn is_drude(kind: SpectralKind) -> bool {
    kind == SpectralKind::Drude
}
