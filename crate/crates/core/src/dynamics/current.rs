//! Heat currents. `J_1 > 0` means energy flows from bath 1 into the system.

use crate::bath::Bath;
use crate::error::{Error, Result};
use crate::lambshift::{affine_increment, AffineIncrement};
use crate::model::{Channel, EigenSystem, Qubit};

use super::liouvillian::{Density, Liouvillian};
use super::steady::steady_state_analytic;

/// `Tr((H_S + H_LS) L_j(rho))`; `H_LS` is present iff the generator was
/// built with the Lamb shift.
pub fn heat_current_trace(l: &Liouvillian, j: Qubit, rho: &Density) -> f64 {
    (l.total_hamiltonian() * l.apply_dissipator(j, rho))
        .trace()
        .re
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatCurrentReport {
    /// Signed `J_1` with the transition increments.
    pub with_lamb: f64,
    /// Signed `J_1` with `delta = 0`.
    pub no_lamb: f64,
    /// `sum_i A_i (n_1 - n_2) delta_i`.
    pub difference: f64,
    pub a: [f64; 2],
    pub increments: [f64; 2],
    /// Large-`dT` limit of `|J_1^0|`.
    pub supremum: f64,
}

impl HeatCurrentReport {
    pub fn with_lamb_magnitude(&self) -> f64 {
        self.with_lamb.abs()
    }

    pub fn no_lamb_magnitude(&self) -> f64 {
        self.no_lamb.abs()
    }

    pub fn difference_magnitude(&self) -> f64 {
        self.difference.abs()
    }
}

/// `J_1 = sum_i A_i (n_1(w_i) - n_2(w_i)) (w_i + delta_i)` with
/// `A_1 = 2 sin^2 phi+ cos^2 phi- J_1(w_1) J_2(w_1) / X` and
/// `A_2 = 2 sin^2 phi- cos^2 phi+ J_1(w_2) J_2(w_2) / Y`.
pub fn heat_current_closed(
    es: &EigenSystem,
    baths: &[Bath; 2],
    increments: [f64; 2],
) -> Result<HeatCurrentReport> {
    let s = steady_state_analytic(es, baths)?;
    let mut a = [0.0; 2];
    let mut with_lamb = 0.0;
    let mut no_lamb = 0.0;
    let mut difference = 0.0;
    for mu in Channel::ALL {
        let w = es.omega(mu);
        let norm = match mu {
            Channel::One => s.x,
            Channel::Two => s.y,
        };
        let i = mu.index();
        a[i] = 2.0
            * es.weight(Qubit::One, mu)
            * es.weight(Qubit::Two, mu)
            * baths[0].j(w)
            * baths[1].j(w)
            / norm;
        let dn = baths[0].occupation(w) - baths[1].occupation(w);
        no_lamb += a[i] * dn * w;
        difference += a[i] * dn * increments[i];
        with_lamb += a[i] * dn * (w + increments[i]);
    }
    Ok(HeatCurrentReport {
        with_lamb,
        no_lamb,
        difference,
        a,
        increments,
        supremum: supremum_no_lamb(es, &baths[0]),
    })
}

/// `J_1(w_1) w_1 sin^2 phi+ + J_1(w_2) w_2 cos^2 phi+`; depends on bath 1 only.
pub fn supremum_no_lamb(es: &EigenSystem, bath1: &Bath) -> f64 {
    Channel::ALL
        .iter()
        .map(|&mu| {
            let w = es.omega(mu);
            bath1.j(w) * w * es.weight(Qubit::One, mu)
        })
        .sum()
}

/// Large-`dT` slope of `|Delta J_1|`:
/// `J_1(w_1) Q_1 sin^2 phi+ + J_1(w_2) Q_2 cos^2 phi+`.
pub fn asymptotic_slope(es: &EigenSystem, bath1: &Bath, affine: &AffineIncrement) -> f64 {
    Channel::ALL
        .iter()
        .map(|&mu| bath1.j(es.omega(mu)) * affine.q[mu.index()] * es.weight(Qubit::One, mu))
        .sum()
}

/// [`asymptotic_slope`] with the affine coefficients computed here; Drude
/// baths only.
pub fn affine_slope(es: &EigenSystem, baths: &[Bath; 2], series_tol: f64) -> Result<f64> {
    let affine = affine_increment(es, baths, series_tol)?;
    Ok(asymptotic_slope(es, &baths[0], &affine))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub increasing: bool,
    pub bounded: bool,
    /// First grid index breaking either property.
    pub first_violation: Option<usize>,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.increasing && self.bounded
    }
}

/// Checks that `values` (current magnitudes on a strictly increasing `dT`
/// grid) increase strictly and stay below `bound`.
pub fn monotonicity_check(grid: &[f64], values: &[f64], bound: f64) -> Result<MonotonicityReport> {
    if grid.len() != values.len() {
        return Err(Error::domain(
            "one value per grid point",
            format!("{} grid points, {} values", grid.len(), values.len()),
        ));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain(
            "grid strictly increasing",
            "dT grid is not strictly increasing",
        ));
    }
    let mut report = MonotonicityReport {
        increasing: true,
        bounded: true,
        first_violation: None,
    };
    for (i, &v) in values.iter().enumerate() {
        let mut bad = false;
        if !(v < bound) {
            report.bounded = false;
            bad = true;
        }
        if i > 0 && !(v > values[i - 1]) {
            report.increasing = false;
            bad = true;
        }
        if bad && report.first_violation.is_none() {
            report.first_violation = Some(i);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::SpectralDensity;
    use crate::dynamics::{build_liouvillian, steady_state_numeric};
    use crate::lambshift::{affine_increment, compute_lamb_shift, QuadratureConfig, RoutePolicy};
    use crate::model::{diagonalize, SystemParams};

    fn baths(t1: f64, t2: f64) -> [Bath; 2] {
        let j = SpectralDensity::drude(0.01, 50.0).unwrap();
        [Bath::new(t1, j).unwrap(), Bath::new(t2, j).unwrap()]
    }

    fn es() -> EigenSystem {
        diagonalize(&SystemParams::new(3.0, 2.0, 0.5).unwrap()).unwrap()
    }

    #[test]
    fn trace_and_closed_forms_agree() {
        let es = es();
        let b = baths(1.0, 51.0);
        let data = compute_lamb_shift(
            &es,
            &b,
            RoutePolicy::Auto,
            &QuadratureConfig::default(),
            1e-13,
        )
        .unwrap();
        let closed = heat_current_closed(&es, &b, data.increments).unwrap();
        for (lamb, expected) in [(false, closed.no_lamb), (true, closed.with_lamb)] {
            let l = build_liouvillian(&es, &b, lamb, Some(&data)).unwrap();
            let rho = steady_state_numeric(&l).unwrap().rho;
            let j1 = heat_current_trace(&l, Qubit::One, &rho);
            let j2 = heat_current_trace(&l, Qubit::Two, &rho);
            assert!(
                ((j1 - expected) / expected).abs() < 1e-9,
                "{j1} vs {expected}"
            );
            assert!((j1 + j2).abs() < 1e-12 * j1.abs().max(1.0));
            assert!(j1 < 0.0);
        }
        assert!((closed.with_lamb - closed.no_lamb - closed.difference).abs() < 1e-15);
    }

    #[test]
    fn equilibrium_carries_no_current() {
        let es = es();
        let r = heat_current_closed(&es, &baths(3.0, 3.0), [0.1, 0.2]).unwrap();
        assert_eq!(r.with_lamb, 0.0);
        assert_eq!(r.no_lamb, 0.0);
    }

    #[test]
    fn swapping_temperatures_flips_sign() {
        let es = es();
        let a = heat_current_closed(&es, &baths(1.0, 20.0), [0.0; 2]).unwrap();
        let b = heat_current_closed(&es, &baths(20.0, 1.0), [0.0; 2]).unwrap();
        assert!(a.no_lamb < 0.0 && b.no_lamb > 0.0);
    }

    #[test]
    fn supremum_is_linear_in_gamma_and_ignores_bath_two() {
        let es = es();
        let b1 = Bath::new(1.0, SpectralDensity::drude(0.01, 50.0).unwrap()).unwrap();
        let b2 = Bath::new(1.0, SpectralDensity::drude(0.02, 50.0).unwrap()).unwrap();
        let s1 = supremum_no_lamb(&es, &b1);
        assert!((supremum_no_lamb(&es, &b2) - 2.0 * s1).abs() < 1e-16);
        let hot = Bath::new(1e5, SpectralDensity::hard(0.01, 50.0).unwrap()).unwrap();
        let r = heat_current_closed(&es, &[b1, hot], [0.0; 2]).unwrap();
        assert_eq!(r.supremum, s1);
    }

    #[test]
    fn slope_positive_with_coupling() {
        let es = es();
        let b = baths(1.0, 100.0);
        let aff = affine_increment(&es, &b, 1e-13).unwrap();
        assert!(asymptotic_slope(&es, &b[0], &aff) > 0.0);
        let q1 = 2.0 * b[1].j(es.omega1) * es.weight(Qubit::Two, Channel::One) / 50.0;
        assert!((aff.q[0] - q1).abs() < 1e-16);
    }

    #[test]
    fn monotonicity_reports_first_violation() {
        let g = [1.0, 2.0, 3.0, 4.0];
        assert!(monotonicity_check(&g, &[0.1, 0.2, 0.3, 0.4], 1.0)
            .unwrap()
            .holds());
        let r = monotonicity_check(&g, &[0.1, 0.3, 0.3, 0.4], 1.0).unwrap();
        assert_eq!(r.first_violation, Some(2));
        let r = monotonicity_check(&g, &[0.1, 0.2, 0.3, 1.4], 1.0).unwrap();
        assert!(r.increasing && !r.bounded);
        assert!(monotonicity_check(&[2.0, 1.0], &[0.0, 0.1], 1.0).is_err());
    }
}
