//! Residue-theorem closed forms for the two Drude integrals
//!
//! ```text
//! f(w) = w / (omega_d^2 + w^2) * n(w) / (omega_mu - w)
//! F(w) = w / (omega_d^2 + w^2) * n(w) / (omega_mu + w)
//! ```
//!
//! written with `cot(beta omega_d / 2)`. They are ill-conditioned near the
//! cotangent poles `beta omega_d = 2 k pi` and serve only as cross-checks;
//! the production path is the divergence-free series in
//! [`super::analytic::analytic_delta`].

use std::f64::consts::PI;

use crate::bath::{occupation_unchecked, omega_times_occupation};
use crate::error::{Error, Result};
use crate::quad::{integrate_to_infinity, Tolerance};

use super::pv::{principal_value, regular_integral, Support};
use super::QuadratureConfig;

/// Inputs with `beta omega_d / 2 pi` closer than this to a positive
/// integer are rejected.
pub const COT_POLE_WINDOW: f64 = 1e-3;

const DIRECT_TERMS: u64 = 4096;

fn guard(t: f64, omega_mu: f64, omega_d: f64) -> Result<f64> {
    for (name, v) in [
        ("T > 0", t),
        ("omega_mu > 0", omega_mu),
        ("omega_d > 0", omega_d),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(name, format!("got {v}")));
        }
    }
    let beta = 1.0 / t;
    let ratio = beta * omega_d / (2.0 * PI);
    let nearest = ratio.round();
    if nearest >= 1.0 && (ratio - nearest).abs() < COT_POLE_WINDOW {
        return Err(Error::CotangentPole { ratio });
    }
    Ok(beta)
}

/// `sum_{k>=1} g(omega_k)` for a summand decaying at least like
/// `ln k / k^2`: direct sum up to `K`, then the midpoint-rule integral
/// `int_{K+1/2}^inf` with its first derivative correction.
fn matsubara_series<G: Fn(f64) -> f64>(g: G, nu: f64, pole_index: f64) -> Result<f64> {
    let k_max = DIRECT_TERMS.max((4.0 * pole_index).ceil() as u64);
    let head: f64 = (1..=k_max).map(|k| g(k as f64 * nu)).sum();
    let x0 = k_max as f64 + 0.5;
    let tol = Tolerance {
        abs: 1e-18,
        rel: 1e-12,
        max_subdivisions: 2000,
    };
    let integral = integrate_to_infinity(|x| g(x * nu), x0, &tol)?.value;
    let h = 1e-2;
    let slope = (g((x0 + h) * nu) - g((x0 - h) * nu)) / (2.0 * h);
    Ok(head + integral - slope / 24.0)
}

/// Closed form of `PV int_0^inf f(w) dw`.
pub fn closed_form_f_integral(t: f64, omega_mu: f64, omega_d: f64) -> Result<f64> {
    let beta = guard(t, omega_mu, omega_d)?;
    let (a, d) = (omega_mu, omega_d);
    let nu = 2.0 * PI / beta;
    let norm = d * d + a * a;
    let series = matsubara_series(
        |w| w * (2.0 * w * w.ln() - PI * a) / ((w * w + a * a) * (d * d - w * w)) / beta,
        nu,
        d / nu,
    )?;
    let cot = 1.0 / (0.5 * beta * d).tan();
    Ok(a * a.ln() / norm * occupation_unchecked(a, t)
        + 0.5 * (a * d.ln() + 0.5 * PI * d) / norm
        + series
        - 0.5 * (d * d.ln() - 0.5 * PI * a) / norm * cot)
}

/// Closed form of `int_0^inf F(w) dw`.
pub fn closed_form_big_f_integral(t: f64, omega_mu: f64, omega_d: f64) -> Result<f64> {
    let beta = guard(t, omega_mu, omega_d)?;
    let (a, d) = (omega_mu, omega_d);
    let nu = 2.0 * PI / beta;
    let norm = d * d + a * a;
    let series = matsubara_series(
        |w| w * (2.0 * w * w.ln() + PI * a) / ((w * w + a * a) * (d * d - w * w)) / beta,
        nu,
        d / nu,
    )?;
    let cot = 1.0 / (0.5 * beta * d).tan();
    // 1/(exp(-beta a) - 1) = -(n(a) + 1)
    let neg_occ = -(occupation_unchecked(a, t) + 1.0);
    Ok(
        a * a.ln() / norm * neg_occ + 0.5 * (a * d.ln() - 0.5 * PI * d) / norm - series
            + 0.5 * (d * d.ln() + 0.5 * PI * a) / norm * cot,
    )
}

fn integrand_support(omega_d: f64, cfg: &QuadratureConfig) -> Support {
    Support {
        end: cfg.truncation_factor * omega_d,
        tail: true,
    }
}

/// `PV int_0^inf f(w) dw` by direct quadrature.
pub fn quadrature_f_integral(
    t: f64,
    omega_mu: f64,
    omega_d: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    let d2 = omega_d * omega_d;
    let est = principal_value(
        |w| omega_times_occupation(w, t) / (d2 + w * w),
        omega_mu,
        integrand_support(omega_d, cfg),
        cfg,
    )?;
    Ok(est.value)
}

/// `int_0^inf F(w) dw` by direct quadrature.
pub fn quadrature_big_f_integral(
    t: f64,
    omega_mu: f64,
    omega_d: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    let d2 = omega_d * omega_d;
    let est = regular_integral(
        |w| omega_times_occupation(w, t) / (d2 + w * w) / (omega_mu + w),
        integrand_support(omega_d, cfg),
        cfg,
    )?;
    Ok(est.value)
}

/// Drude `Delta` from the cotangent form,
/// `pi Delta / (gamma omega_d^2) = omega_mu/(omega_d^2+omega_mu^2) (ln(omega_d/omega_mu) + (pi/2) cot(beta omega_d/2))
///  - (2 pi omega_mu / beta) sum_k omega_k / ((omega_k^2+omega_mu^2)(omega_d^2-omega_k^2))`.
pub fn cotangent_form_delta(gamma: f64, omega_d: f64, t: f64, omega_mu: f64) -> Result<f64> {
    let beta = guard(t, omega_mu, omega_d)?;
    let (a, d) = (omega_mu, omega_d);
    let nu = 2.0 * PI / beta;
    let series = matsubara_series(|w| w / ((w * w + a * a) * (d * d - w * w)), nu, d / nu)?;
    let cot = 1.0 / (0.5 * beta * d).tan();
    let scaled =
        a / (d * d + a * a) * ((d / a).ln() + 0.5 * PI * cot) - 2.0 * PI * a / beta * series;
    Ok(scaled * gamma * d * d / PI)
}

/// Mittag-Leffler expansion `cot x = 1/x - 2x sum_k 1/((k pi)^2 - x^2)`,
/// summed to `terms` with the remainder closed by its midpoint integral.
pub fn mittag_leffler_cot(x: f64, terms: u64) -> f64 {
    let head: f64 = (1..=terms)
        .map(|k| 1.0 / ((k as f64 * PI).powi(2) - x * x))
        .sum();
    let edge = PI * (terms as f64 + 0.5);
    let tail = ((edge + x) / (edge - x)).ln() / (2.0 * PI * x);
    1.0 / x - 2.0 * x * (head + tail)
}
