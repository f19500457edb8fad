//! Closed forms for the Drude-Lorentz bath.
//!
//! With Matsubara spacing `nu = 2 pi T` the residual series is
//! `R = sum_{k>=1} nu h(k nu)` where, after partial fractions,
//! `h(w) = 1/(omega_d + w) - w/(w^2 + omega_mu^2)`.
//! The tail of the sum is closed with Euler-Maclaurin against the exact
//! antiderivative `ln(omega_d + w) - ln sqrt(w^2 + omega_mu^2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, format!("got {v}")))
    }
}

fn drude(gamma: f64, omega_d: f64, omega: f64) -> f64 {
    let x = omega / omega_d;
    gamma * omega / (1.0 + x * x)
}

// B_2, B_4, ..., B_12
const BERNOULLI_EVEN: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// n-th derivative of `h(w) = 1/(d + w) - Re 1/(w + i a)`.
fn h_derivative(n: u32, w: f64, a: f64, d: f64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let nf = factorial(n);
    let first = sign * nf / (d + w).powi(n as i32 + 1);
    let second = sign * nf * (Complex64::new(w, a)).powi(n as i32 + 1).inv().re;
    first - second
}

fn h(w: f64, a: f64, d: f64) -> f64 {
    1.0 / (d + w) - w / (w * w + a * a)
}

/// Sum of `nu h(k nu)` for `k >= first`, by Euler-Maclaurin. Returns the
/// value and the size of the last correction used.
fn tail_sum(first: u64, nu: f64, a: f64, d: f64) -> (f64, f64) {
    let w = first as f64 * nu;
    // integral from w to infinity of h
    let integral = 0.5 * (w * w + a * a).ln() - (d + w).ln();
    let mut total = integral + 0.5 * nu * h(w, a, d);
    let mut last = 0.0;
    for (m, b) in BERNOULLI_EVEN.iter().enumerate() {
        let order = 2 * m as u32 + 1;
        let term = b / factorial(2 * m as u32 + 2)
            * nu.powi(order as i32 + 1)
            * h_derivative(order, w, a, d);
        total -= term;
        last = term.abs();
    }
    (total, last)
}

/// Residual Matsubara series of the Drude Lamb shift,
/// `(2 pi / beta) sum_k (omega_mu^2 - omega_d omega_k) / ((omega_mu^2 + omega_k^2)(omega_d + omega_k))`.
///
/// The first `K - 1` terms are summed directly; `K` doubles until the last
/// Euler-Maclaurin correction of the tail is below `tol`.
pub fn matsubara_r(t: f64, omega_mu: f64, omega_d: f64, tol: f64) -> Result<f64> {
    check_positive("T > 0", t)?;
    check_positive("omega_mu > 0", omega_mu)?;
    check_positive("omega_d > 0", omega_d)?;
    if !(tol.is_finite() && tol >= 1e-15) {
        return Err(Error::Series(format!(
            "tolerance {tol:e} is below what double precision can resolve"
        )));
    }
    let nu = 2.0 * PI * t;
    let mut k: u64 = 8;
    while k <= 1 << 22 {
        let (tail, last) = tail_sum(k, nu, omega_mu, omega_d);
        if last < tol {
            let head: f64 = (1..k)
                .map(|i| nu * h(i as f64 * nu, omega_mu, omega_d))
                .sum();
            return Ok(head + tail);
        }
        k *= 2;
    }
    Err(Error::Series(format!(
        "Matsubara tail correction did not drop below {tol:e}"
    )))
}

/// Euler-Maclaurin estimate `ln( sqrt(4 pi^2 + omega_mu^2 beta^2) / (2 pi + omega_d beta) )`.
pub fn euler_maclaurin_r(t: f64, omega_mu: f64, omega_d: f64) -> f64 {
    let beta = 1.0 / t;
    let two_pi = 2.0 * PI;
    0.5 * (two_pi * two_pi + (omega_mu * beta).powi(2)).ln() - (two_pi + omega_d * beta).ln()
}

/// `Delta = (J(omega_mu)/pi) (ln(omega_d/omega_mu) + pi/(beta omega_d) + R)`.
pub fn analytic_delta(
    gamma: f64,
    omega_d: f64,
    t: f64,
    omega_mu: f64,
    series_tol: f64,
) -> Result<f64> {
    let r = matsubara_r(t, omega_mu, omega_d, series_tol)?;
    Ok(analytic_delta_from_r(gamma, omega_d, t, omega_mu, r))
}

pub(crate) fn analytic_delta_from_r(
    gamma: f64,
    omega_d: f64,
    t: f64,
    omega_mu: f64,
    r: f64,
) -> f64 {
    drude(gamma, omega_d, omega_mu) / PI * ((omega_d / omega_mu).ln() + PI * t / omega_d + r)
}

/// `Delta' = -(2 J(omega_mu)/pi) ln(omega_d/omega_mu)`.
pub fn analytic_delta_prime(gamma: f64, omega_d: f64, omega_mu: f64) -> f64 {
    -2.0 * drude(gamma, omega_d, omega_mu) / PI * (omega_d / omega_mu).ln()
}

/// `Delta^+ = (1/pi) int_0^inf J(w)/(omega_mu + w) dw`, closed form by
/// partial fractions.
pub fn analytic_delta_plus(gamma: f64, omega_d: f64, omega_mu: f64) -> f64 {
    let (a, d) = (omega_mu, omega_d);
    gamma * d * d / PI * (0.5 * PI * d - a * (d / a).ln()) / (a * a + d * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Brute-force partial sum with a midpoint-rule integral tail.
    fn brute_r(t: f64, a: f64, d: f64, terms: u64) -> f64 {
        let nu = 2.0 * PI * t;
        let head: f64 = (1..=terms)
            .map(|k| {
                let wk = k as f64 * nu;
                nu * (a * a - d * wk) / ((a * a + wk * wk) * (d + wk))
            })
            .sum();
        let w = (terms as f64 + 0.5) * nu;
        head + 0.5 * (w * w + a * a).ln() - (d + w).ln()
    }

    #[test]
    fn matches_brute_force() {
        for &t in &[0.05, 0.3, 1.0, 7.0, 60.0] {
            for &a in &[0.5, 1.8424, 3.2566] {
                let fast = matsubara_r(t, a, 50.0, 1e-12).unwrap();
                let slow = brute_r(t, a, 50.0, 400_000);
                assert!((fast - slow).abs() < 1e-9, "T={t} a={a}: {fast} vs {slow}");
            }
        }
    }

    #[test]
    fn tail_insensitive() {
        let a = matsubara_r(1.0, 1.8424, 50.0, 1e-10).unwrap();
        let b = matsubara_r(1.0, 1.8424, 50.0, 1e-14).unwrap();
        assert!((a - b).abs() < 1e-10);
        // reference from 30-digit summation
        assert!((a - -2.616_599_576_879_667).abs() < 1e-12, "{a}");
    }

    #[test]
    fn cold_limit() {
        let a = 1.8424;
        let r = matsubara_r(1e-3, a, 50.0, 1e-12).unwrap();
        let lim = (a / 50.0).ln();
        assert!(((r - lim) / lim).abs() < 0.01);
        let d = analytic_delta(0.01, 50.0, 1e-3, a, 1e-12).unwrap();
        assert!(((d - 5.683_883_887_725_5e-9) / d).abs() < 1e-6, "{d}");
    }

    #[test]
    fn hot_limit() {
        let t = 1e6;
        let r = matsubara_r(t, 1.8424, 50.0, 1e-12).unwrap();
        assert!((r / t).abs() < 1e-6);
    }

    #[test]
    fn tolerance_floor() {
        assert!(matches!(
            matsubara_r(1.0, 1.0, 50.0, 1e-18),
            Err(Error::Series(_))
        ));
        assert!(matsubara_r(0.0, 1.0, 50.0, 1e-10).is_err());
    }

    #[test]
    fn estimate_limits() {
        assert!(euler_maclaurin_r(1e300, 1.0, 50.0).abs() < 1e-15);
        let r = euler_maclaurin_r(1e-4, 1.8424, 50.0);
        assert_relative_eq!(r, (1.8424f64 / 50.0).ln(), max_relative = 1e-3);
    }

    #[test]
    fn delta_prime_values() {
        let (g, wd, w) = (0.01, 50.0, 1.8424);
        let expected = -2.0 * drude(g, wd, w) / PI * (wd / w).ln();
        assert_eq!(analytic_delta_prime(g, wd, w), expected);
        assert_eq!(analytic_delta_prime(g, wd, wd), 0.0);
        for i in 1..50 {
            assert!(analytic_delta_prime(g, wd, i as f64) <= 0.0);
        }
    }

    #[test]
    fn delta_linear_in_gamma() {
        let a = analytic_delta(0.01, 50.0, 2.0, 1.8424, 1e-12).unwrap();
        let b = analytic_delta(0.02, 50.0, 2.0, 1.8424, 1e-12).unwrap();
        assert_relative_eq!(b, 2.0 * a, max_relative = 1e-15);
    }
}
