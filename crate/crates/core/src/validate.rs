//! Oracle cross-checks behind the `validate` subcommand.

use std::fmt;

use crate::bath::{gamma_rate, Sign, SpectralKind};
use crate::dynamics::{
    build_liouvillian, heat_current_closed, heat_current_trace, steady_state_analytic,
    steady_state_numeric, steady_state_svd,
};
use crate::error::Result;
use crate::experiments::SweepConfig;
use crate::lambshift::{compute_lamb_shift, positivity_margin, RoutePolicy};
use crate::model::{hamiltonian_matrix, numeric_spectrum, Qubit};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {status}  {}", self.name, self.detail)
    }
}

fn check(name: &'static str, value: f64, limit: f64, what: &str) -> Check {
    Check {
        name,
        passed: value <= limit,
        detail: format!("{what} = {value:.3e} (limit {limit:.0e})"),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

/// Runs every oracle at temperature difference `dt`.
pub fn run_suite(cfg: &SweepConfig, dt: f64) -> Result<Vec<Check>> {
    cfg.validate()?;
    let es = cfg.eigensystem()?;
    let baths = cfg.baths(dt)?;
    let mut out = Vec::new();

    // eigen-structure
    let numeric = numeric_spectrum(&cfg.params)?;
    let mut analytic = es.eigenvalues;
    analytic.sort_by(f64::total_cmp);
    let err = analytic
        .iter()
        .zip(numeric)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(check(
        "eigen-structure",
        err,
        1e-12,
        "max |analytic - numeric|",
    ));
    let h = es.to_eigenbasis(&hamiltonian_matrix(&cfg.params)?);
    let off = (h - es.diagonal_hamiltonian()).abs().max();
    out.push(check("eigenbasis", off, 1e-12, "max |U^T H U - diag|"));

    // KMS on a 10x10 grid
    let mut worst: f64 = 0.0;
    for kind in SpectralKind::ALL {
        let j = kind.with(cfg.gamma1.max(1e-3), cfg.omega_d)?;
        for a in 0..10 {
            let w = 0.1 + 0.4 * a as f64;
            for b in 0..10 {
                let t = 0.05 * 2f64.powi(b);
                let down = gamma_rate(&j, t, w, Sign::Minus)?;
                let up = gamma_rate(&j, t, w, Sign::Plus)?;
                let kms = (-w / t).exp() * up;
                if kms > 0.0 || down > 0.0 {
                    worst = worst.max(rel(down, kms));
                }
            }
        }
    }
    out.push(check("KMS", worst, 1e-12, "max relative error"));

    // Lamb shift
    let data = compute_lamb_shift(&es, &baths, cfg.policy, &cfg.quadrature, cfg.series_tol)?;
    let q = compute_lamb_shift(
        &es,
        &baths,
        RoutePolicy::Quadrature,
        &cfg.quadrature,
        cfg.series_tol,
    )?;
    let route = (0..2)
        .map(|i| rel(data.increments[i], q.increments[i]))
        .fold(0.0, f64::max);
    out.push(check(
        "Lamb-shift routes",
        route,
        1e-6,
        "max relative delta difference",
    ));
    let l = data.level_shifts;
    let ident = ((data.increments[0] - (l[1] - l[2])).abs())
        .max((data.increments[1] - (l[1] - l[3])).abs());
    out.push(check(
        "increment identity",
        ident,
        1e-12,
        "max |delta - level difference|",
    ));
    let margin = positivity_margin(&es, &data);
    out.push(Check {
        name: "positivity",
        passed: margin.iter().all(|&m| m > 0.0),
        detail: format!("omega + delta = ({:.6}, {:.6})", margin[0], margin[1]),
    });

    // steady state
    let analytic = steady_state_analytic(&es, &baths)?;
    let plain = build_liouvillian(&es, &baths, false, Some(&data))?;
    let shifted = build_liouvillian(&es, &baths, true, Some(&data))?;
    let lu = steady_state_numeric(&plain)?;
    let svd = steady_state_svd(&plain)?;
    let lu_shifted = steady_state_numeric(&shifted)?;
    let mut err: f64 = lu.max_off_diagonal.max(lu_shifted.max_off_diagonal);
    for k in 0..4 {
        err = err
            .max((lu.populations[k] - analytic.populations[k]).abs())
            .max((svd.populations[k] - analytic.populations[k]).abs())
            .max((lu_shifted.populations[k] - lu.populations[k]).abs());
    }
    out.push(check(
        "steady-state oracle",
        err,
        1e-10,
        "max-abs deviation",
    ));

    // currents
    let closed = heat_current_closed(&es, &baths, data.increments)?;
    let mut trace_err: f64 = 0.0;
    let mut conservation: f64 = 0.0;
    for (gen, rho, expected) in [
        (&plain, &lu.rho, closed.no_lamb),
        (&shifted, &lu_shifted.rho, closed.with_lamb),
    ] {
        let j1 = heat_current_trace(gen, Qubit::One, rho);
        let j2 = heat_current_trace(gen, Qubit::Two, rho);
        trace_err = trace_err.max(rel(j1, expected));
        conservation = conservation.max((j1 + j2).abs() / j1.abs().max(1.0));
    }
    out.push(check(
        "current trace vs closed",
        trace_err,
        1e-9,
        "max relative difference",
    ));
    out.push(check(
        "current conservation",
        conservation,
        1e-12,
        "|J1 + J2|",
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemParams;

    #[test]
    fn fig3_passes() {
        let cfg = SweepConfig::new(
            SystemParams::new(3.0, 2.0, 0.5).unwrap(),
            SpectralKind::Drude,
            0.01,
            50.0,
        );
        let checks = run_suite(&cfg, 50.0).unwrap();
        for c in &checks {
            assert!(c.passed, "{c}");
        }
        assert!(checks.iter().any(|c| c.to_string().starts_with("KMS PASS")));
        assert!(checks
            .iter()
            .any(|c| c.to_string().starts_with("steady-state oracle PASS")));
    }
}
