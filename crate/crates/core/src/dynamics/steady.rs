//! Steady states: closed-form populations and the numerical kernel of the
//! generator.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use crate::bath::Bath;
use crate::error::{Error, Result};
use crate::model::{Channel, EigenSystem, Qubit};

use super::liouvillian::{unvectorize, Density, Liouvillian, Superoperator, VecState};

/// Residual `||L rho||` above which a numeric kernel is rejected.
pub const KERNEL_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    /// `(rho_11, rho_22, rho_33, rho_44)` in the eigenbasis.
    pub populations: [f64; 4],
    pub x_plus: f64,
    pub x_minus: f64,
    pub y_plus: f64,
    pub y_minus: f64,
    pub x: f64,
    pub y: f64,
}

/// Populations from the detailed-balance products
/// `rho_11 = X^- Y^- / XY`, `rho_22 = X^+ Y^+ / XY`,
/// `rho_33 = X^- Y^+ / XY`, `rho_44 = X^+ Y^- / XY`.
pub fn steady_state_analytic(es: &EigenSystem, baths: &[Bath; 2]) -> Result<SteadyState> {
    for b in baths {
        if !(b.temperature.is_finite() && b.temperature > 0.0) {
            return Err(Error::domain("T > 0", format!("T = {}", b.temperature)));
        }
    }
    // sum_j J_j(w) w_j (n_j(w) [+ 1])
    let channel = |mu: Channel, plus_one: bool| -> f64 {
        let w = es.omega(mu);
        Qubit::ALL
            .iter()
            .map(|&j| {
                let b = &baths[j.index()];
                let n = b.occupation(w) + if plus_one { 1.0 } else { 0.0 };
                b.j(w) * n * es.weight(j, mu)
            })
            .sum()
    };
    let x_plus = channel(Channel::One, false);
    let x_minus = channel(Channel::One, true);
    let y_plus = channel(Channel::Two, false);
    let y_minus = channel(Channel::Two, true);
    let (x, y) = (x_plus + x_minus, y_plus + y_minus);
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Degenerate(format!(
            "both baths decouple from a channel (X = {x}, Y = {y})"
        )));
    }
    let xy = x * y;
    Ok(SteadyState {
        populations: [
            x_minus * y_minus / xy,
            x_plus * y_plus / xy,
            x_minus * y_plus / xy,
            x_plus * y_minus / xy,
        ],
        x_plus,
        x_minus,
        y_plus,
        y_minus,
        x,
        y,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericSteadyState {
    pub rho: Density,
    pub populations: [f64; 4],
    /// Largest `|rho_ab|`, `a != b`.
    pub max_off_diagonal: f64,
    /// `||L rho||`.
    pub residual: f64,
}

impl NumericSteadyState {
    fn from_vector(l: &Superoperator, v: &VecState) -> Result<Self> {
        let mut rho = unvectorize(v);
        let tr = rho.trace();
        if !(tr.norm().is_finite() && tr.norm() > 0.0) {
            return Err(Error::Degenerate(format!("kernel vector has trace {tr}")));
        }
        rho /= tr;
        // symmetrize away round-off
        rho = (rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
        let residual = (l * super::liouvillian::vectorize(&rho)).norm();
        if !(residual < KERNEL_RESIDUAL_TOL) {
            return Err(Error::Degenerate(format!(
                "kernel residual {residual:e} exceeds {KERNEL_RESIDUAL_TOL:e}"
            )));
        }
        let mut max_off_diagonal: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    max_off_diagonal = max_off_diagonal.max(rho[(r, c)].norm());
                }
            }
        }
        Ok(NumericSteadyState {
            populations: [0, 1, 2, 3].map(|k| rho[(k, k)].re),
            rho,
            max_off_diagonal,
            residual,
        })
    }
}

/// Kernel of `L` with the first equation replaced by `Tr rho = 1`, solved
/// by LU.
pub fn steady_state_numeric(l: &Liouvillian) -> Result<NumericSteadyState> {
    let m = l.matrix();
    let mut a = m;
    for c in 0..16 {
        a[(0, c)] = Complex64::new(0.0, 0.0);
    }
    for k in 0..4 {
        a[(0, 5 * k)] = Complex64::new(1.0, 0.0);
    }
    let mut rhs = VecState::zeros();
    rhs[0] = Complex64::new(1.0, 0.0);
    let v = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate("generator kernel is not one-dimensional".into()))?;
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Degenerate(
            "generator kernel is not one-dimensional".into(),
        ));
    }
    NumericSteadyState::from_vector(&m, &v)
}

/// Kernel from the right singular vector of the smallest singular value.
/// Fails if the two smallest singular values are not well separated.
pub fn steady_state_svd(l: &Liouvillian) -> Result<NumericSteadyState> {
    let m = l.matrix();
    let svd = m.svd(false, true);
    let v_t: SMatrix<Complex64, 16, 16> = svd
        .v_t
        .ok_or_else(|| Error::Degenerate("SVD did not return singular vectors".into()))?;
    let mut order: Vec<usize> = (0..16).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let (s0, s1) = (svd.singular_values[order[0]], svd.singular_values[order[1]]);
    let scale = svd.singular_values.max();
    if s1 < 1e6 * s0.max(f64::EPSILON * scale) {
        return Err(Error::Degenerate(format!(
            "kernel is not one-dimensional (singular values {s0:e}, {s1:e})"
        )));
    }
    let row = v_t.row(order[0]);
    let v: SVector<Complex64, 16> = row.adjoint();
    NumericSteadyState::from_vector(&m, &v)
}
