//! Direct principal-value quadrature of the shift integrals, valid for any
//! of the spectral densities.
//!
//! Every integral here has the form `PV int_0^inf phi(w) / (p - w) dw`.
//! Around the pole the odd part is cancelled analytically:
//! `int_{-eta}^{eta} phi(p + t)/(-t) dt = int_0^eta (phi(p - t) - phi(p + t))/t dt`,
//! leaving a smooth integrand. The rest of `[0, Lambda]` is ordinary
//! adaptive quadrature and `[Lambda, inf)` is mapped onto `(0, 1]`.

use std::f64::consts::PI;

use crate::bath::{
    occupation_plus_one_unchecked, thermal_weight, Sign, SpectralDensity, SpectralKind,
};
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_graded, integrate_to_infinity, Estimate, Tolerance};

use super::QuadratureConfig;

/// Relative distance below which a hard cutoff is considered to collide
/// with the pole.
pub const HARD_CUTOFF_GUARD: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Support {
    pub end: f64,
    pub tail: bool,
}

pub(crate) fn support(j: &SpectralDensity, cfg: &QuadratureConfig) -> Support {
    match j.kind() {
        SpectralKind::Hard => Support {
            end: j.omega_d(),
            tail: false,
        },
        SpectralKind::Drude | SpectralKind::Gaussian => Support {
            end: cfg.truncation_factor * j.omega_d(),
            tail: true,
        },
    }
}

fn piece_tolerance(cfg: &QuadratureConfig) -> Tolerance {
    Tolerance {
        abs: cfg.abs_tol / 4.0,
        rel: cfg.rel_tol,
        max_subdivisions: cfg.max_subdivisions,
    }
}

/// `PV int_0^inf phi(w) / (pole - w) dw` with `phi` vanishing beyond
/// `support.end` unless `support.tail`.
pub(crate) fn principal_value<F: Fn(f64) -> f64>(
    phi: F,
    pole: f64,
    support: Support,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(pole.is_finite() && pole > 0.0) {
        return Err(Error::domain("omega_mu > 0", format!("pole at {pole}")));
    }
    let tol = piece_tolerance(cfg);
    let end = support.end;
    let over = |w: f64| phi(w) / (pole - w);

    if !support.tail && (end - pole).abs() < HARD_CUTOFF_GUARD * end {
        return Err(Error::PoleNearCutoff { pole, cutoff: end });
    }
    if pole >= end {
        if support.tail {
            return Err(Error::domain(
                "omega_mu < Lambda",
                format!("pole {pole} beyond truncation {end}"),
            ));
        }
        // no singularity inside the support
        return integrate_graded(over, 0.0, end, &tol);
    }

    let eta = cfg.pole_window.min(0.5 * pole).min(0.5 * (end - pole));
    let window = integrate(|t: f64| (phi(pole - t) - phi(pole + t)) / t, 0.0, eta, &tol)?;
    let left = integrate_graded(over, 0.0, pole - eta, &tol)?;
    let right = integrate_graded(over, pole + eta, end, &tol)?;
    let mut total = window + left + right;
    if support.tail {
        total = total + integrate_to_infinity(over, end, &tol)?;
    }
    Ok(total)
}

/// Plain `int_0^inf g(w) dw` over the support of `j`.
pub(crate) fn regular_integral<F: Fn(f64) -> f64>(
    g: F,
    support: Support,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let tol = piece_tolerance(cfg);
    let mut total = integrate_graded(&g, 0.0, support.end, &tol)?;
    if support.tail {
        total = total + integrate_to_infinity(&g, support.end, &tol)?;
    }
    Ok(total)
}

fn prepare(j: &SpectralDensity, omega_mu: f64, cfg: &QuadratureConfig) -> Result<Support> {
    cfg.validate()?;
    j.validate()?;
    if !(omega_mu.is_finite() && omega_mu > 0.0) {
        return Err(Error::domain(
            "omega_mu > 0",
            format!("omega_mu = {omega_mu}"),
        ));
    }
    Ok(support(j, cfg))
}

fn check_t(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("T > 0", format!("T = {t}")))
    }
}

/// `S(+w) = (1/pi) PV int J [ (n+1)/(w-x) + n/(w+x) ] dx` and
/// `S(-w) = -(1/pi) PV int J [ n/(w-x) + (n+1)/(w+x) ] dx`.
pub fn pv_quadrature_s(
    j: &SpectralDensity,
    t: f64,
    omega_mu: f64,
    sign: Sign,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_t(t)?;
    let sup = prepare(j, omega_mu, cfg)?;
    let a = omega_mu;
    // J(n+1) = J n + J
    let jn = |w: f64| thermal_weight(j, w, t);
    let jn1 = |w: f64| jn(w) + j.value(w);
    let est = match sign {
        Sign::Plus => principal_value(|w| (jn1(w) + jn(w) * (a - w) / (a + w)) / PI, a, sup, cfg)?,
        Sign::Minus => {
            principal_value(|w| -(jn(w) + jn1(w) * (a - w) / (a + w)) / PI, a, sup, cfg)?
        }
    };
    Ok(est.value)
}

/// `Delta = (2 w/pi) PV int J n / (w^2 - x^2) dx`.
pub fn quadrature_delta(
    j: &SpectralDensity,
    t: f64,
    omega_mu: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_t(t)?;
    let sup = prepare(j, omega_mu, cfg)?;
    let a = omega_mu;
    let est = principal_value(
        |w| 2.0 * a / PI * thermal_weight(j, w, t) / (a + w),
        a,
        sup,
        cfg,
    )?;
    Ok(est.value)
}

/// `Delta' = (2 w/pi) PV int J / (w^2 - x^2) dx`; temperature independent.
pub fn quadrature_delta_prime(
    j: &SpectralDensity,
    omega_mu: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let sup = prepare(j, omega_mu, cfg)?;
    let a = omega_mu;
    let est = principal_value(|w| 2.0 * a / PI * j.value(w) / (a + w), a, sup, cfg)?;
    Ok(est.value)
}

/// `Delta^+ = (1/pi) int J / (w + x) dx`, no singularity.
pub fn quadrature_delta_plus(
    j: &SpectralDensity,
    omega_mu: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let sup = prepare(j, omega_mu, cfg)?;
    let est = regular_integral(|w| j.value(w) / (omega_mu + w) / PI, sup, cfg)?;
    Ok(est.value)
}

/// `Delta^- = (1/pi) PV int J / (w - x) dx`.
pub fn quadrature_delta_minus(
    j: &SpectralDensity,
    omega_mu: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let sup = prepare(j, omega_mu, cfg)?;
    let est = principal_value(|w| j.value(w) / PI, omega_mu, sup, cfg)?;
    Ok(est.value)
}

/// `(2 w/pi) PV int J coth(x/2T) / (w^2 - x^2) dx`, which equals
/// `2 Delta + Delta'`.
pub fn quadrature_coth_combination(
    j: &SpectralDensity,
    t: f64,
    omega_mu: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_t(t)?;
    let sup = prepare(j, omega_mu, cfg)?;
    let a = omega_mu;
    // J coth(x/2T) = J (2n + 1)
    let coth_weight = |w: f64| {
        if w == 0.0 {
            return 2.0 * t * j.value_over_omega(0.0);
        }
        let n1 = occupation_plus_one_unchecked(w, t);
        j.value(w) * (2.0 * n1 - 1.0)
    };
    let est = principal_value(|w| 2.0 * a / PI * coth_weight(w) / (a + w), a, sup, cfg)?;
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambshift::analytic::{analytic_delta, analytic_delta_plus, analytic_delta_prime};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn principal_value_of_known_integral() {
        // PV int_0^2 1/(1-x) dx = 0
        let sup = Support {
            end: 2.0,
            tail: false,
        };
        let v = principal_value(|_| 1.0, 1.0, sup, &cfg()).unwrap();
        assert!(v.value.abs() < 1e-13);
        // PV int_0^3 x/(1-x) dx = -3 - ln 2
        let sup = Support {
            end: 3.0,
            tail: false,
        };
        let v = principal_value(|x| x, 1.0, sup, &cfg()).unwrap();
        assert!((v.value - (-3.0 - 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn drude_routes_agree() {
        let j = SpectralDensity::drude(0.01, 50.0).unwrap();
        let w = 1.842_402_975_609_844_8;
        let q = quadrature_delta(&j, 1.0, w, &cfg()).unwrap();
        let a = analytic_delta(0.01, 50.0, 1.0, w, 1e-13).unwrap();
        assert!(rel(q, a) < 1e-8, "{q} vs {a}");
        let qp = quadrature_delta_prime(&j, w, &cfg()).unwrap();
        assert!(rel(qp, analytic_delta_prime(0.01, 50.0, w)) < 1e-8);
        let plus = quadrature_delta_plus(&j, w, &cfg()).unwrap();
        assert!(rel(plus, analytic_delta_plus(0.01, 50.0, w)) < 1e-9);
    }

    #[test]
    fn s_decomposition() {
        let c = cfg();
        for j in SpectralKind::ALL.map(|k| k.with(0.01, 50.0).unwrap()) {
            let (t, w) = (1.3, 1.8424);
            let sp = pv_quadrature_s(&j, t, w, Sign::Plus, &c).unwrap();
            let sm = pv_quadrature_s(&j, t, w, Sign::Minus, &c).unwrap();
            let d = quadrature_delta(&j, t, w, &c).unwrap();
            let dp = quadrature_delta_plus(&j, w, &c).unwrap();
            let dm = quadrature_delta_minus(&j, w, &c).unwrap();
            assert!((sp - (d + dm)).abs() < 1e-11 * (d.abs() + dm.abs()));
            assert!((sm + (d + dp)).abs() < 1e-11 * (d.abs() + dp.abs()));
            let dprime = quadrature_delta_prime(&j, w, &c).unwrap();
            assert!(((sp - sm) - (2.0 * d + dprime)).abs() < 1e-10 * (2.0 * d + dprime).abs());
        }
    }

    #[test]
    fn coth_identity() {
        let c = cfg();
        for j in SpectralKind::ALL.map(|k| k.with(0.01, 50.0).unwrap()) {
            for &t in &[0.2, 1.0, 40.0] {
                let w = 3.2566;
                let lhs = 2.0 * quadrature_delta(&j, t, w, &c).unwrap()
                    + quadrature_delta_prime(&j, w, &c).unwrap();
                let rhs = quadrature_coth_combination(&j, t, w, &c).unwrap();
                assert!(rel(lhs, rhs) < 1e-8, "{:?} T={t}: {lhs} {rhs}", j.kind());
            }
        }
    }

    #[test]
    fn cold_bath_has_no_thermal_shift() {
        let j = SpectralDensity::drude(0.01, 50.0).unwrap();
        // reference from 30-digit quadrature
        let v = quadrature_delta(&j, 1e-3, 1.8424, &cfg()).unwrap();
        assert!(rel(v, 5.683_883_887_725_5e-9) < 1e-7, "{v}");
    }

    #[test]
    fn linear_in_gamma() {
        let c = cfg();
        for k in SpectralKind::ALL {
            let a = quadrature_delta(&k.with(1e-3, 50.0).unwrap(), 2.0, 1.8, &c).unwrap();
            let b = quadrature_delta(&k.with(1e-6, 50.0).unwrap(), 2.0, 1.8, &c).unwrap();
            assert!(rel(b * 1e3, a) < 1e-9);
            let z = quadrature_delta(&k.with(0.0, 50.0).unwrap(), 2.0, 1.8, &c).unwrap();
            assert_eq!(z, 0.0);
        }
    }

    #[test]
    fn hard_cutoff_pole_guard() {
        let j = SpectralDensity::hard(0.01, 50.0).unwrap();
        let err = quadrature_delta(&j, 1.0, 49.99, &cfg()).unwrap_err();
        assert!(matches!(err, Error::PoleNearCutoff { .. }));
        assert!(quadrature_delta(&j, 1.0, 45.0, &cfg()).is_ok());
    }

    #[test]
    fn gaussian_self_convergence() {
        let j = SpectralDensity::gaussian(0.01, 50.0).unwrap();
        let w = 1.8424;
        let coarse = quadrature_delta_prime(&j, w, &cfg()).unwrap();
        let fine_cfg = QuadratureConfig {
            abs_tol: 1e-17,
            rel_tol: 1e-13,
            pole_window: 0.05,
            ..cfg()
        };
        let fine = quadrature_delta_prime(&j, w, &fine_cfg).unwrap();
        assert!(rel(coarse, fine) < 1e-9);
    }
}
