//! Two qubits with an XX coupling: exact spectrum, eigenstates and the
//! jump operators through which each qubit talks to its own bath.
//!
//! Conventions used everywhere in the crate:
//!
//! * Product basis ordering is `{|00>, |01>, |10>, |11>}` (first label is
//!   qubit 1) with `sigma_z |0> = +|0>`.
//! * Eigenbasis ordering is `(s1, s2, s3, s4)` with energies
//!   `(-beta, beta, alpha, -alpha)`.
//!
//! The textbook kets for the eigenstates label the lower qubit state `0`;
//! in the product basis above that state is `|1>`, so e.g.
//! `|s1> = cos(phi/2)|11> - sin(phi/2)|00>`.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Error, Result};

/// Bath (and qubit) index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    One,
    Two,
}

/// Transition channel `mu`: `One` at `omega1 = beta - alpha`, `Two` at
/// `omega2 = beta + alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    One,
    Two,
}

impl Qubit {
    pub const ALL: [Qubit; 2] = [Qubit::One, Qubit::Two];

    pub fn index(self) -> usize {
        match self {
            Qubit::One => 0,
            Qubit::Two => 1,
        }
    }
}

impl Channel {
    pub const ALL: [Channel; 2] = [Channel::One, Channel::Two];

    pub fn index(self) -> usize {
        match self {
            Channel::One => 0,
            Channel::Two => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub epsilon1: f64,
    pub epsilon2: f64,
    pub g: f64,
}

impl SystemParams {
    pub fn new(epsilon1: f64, epsilon2: f64, g: f64) -> Result<Self> {
        let p = SystemParams {
            epsilon1,
            epsilon2,
            g,
        };
        p.validate()?;
        Ok(p)
    }

    /// Orders the splittings so that `epsilon1 >= epsilon2`.
    pub fn ordered(epsilon_a: f64, epsilon_b: f64, g: f64) -> Result<Self> {
        Self::new(epsilon_a.max(epsilon_b), epsilon_a.min(epsilon_b), g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.epsilon1.is_finite() && self.epsilon2.is_finite() && self.g.is_finite();
        if !finite {
            return Err(Error::domain("finite parameters", format!("{self:?}")));
        }
        if !(self.epsilon2 > 0.0) {
            return Err(Error::domain(
                "epsilon2 > 0",
                format!("epsilon2 = {}", self.epsilon2),
            ));
        }
        if self.epsilon1 < self.epsilon2 {
            return Err(Error::domain(
                "epsilon1 >= epsilon2",
                format!("epsilon1 = {}, epsilon2 = {}", self.epsilon1, self.epsilon2),
            ));
        }
        if !(self.g > 0.0) {
            return Err(Error::domain("g > 0", format!("g = {}", self.g)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub params: SystemParams,
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub theta: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// `[s1, s2, s3, s4] = [-beta, beta, alpha, -alpha]`.
    pub eigenvalues: [f64; 4],
    /// Column `n` holds `|s_{n+1}>` in the product basis.
    pub eigenvectors: Matrix4<f64>,
}

impl EigenSystem {
    pub fn omega(&self, mu: Channel) -> f64 {
        match mu {
            Channel::One => self.omega1,
            Channel::Two => self.omega2,
        }
    }

    /// Amplitude of `V_{j,mu}`: `sin phi+`, `cos phi+`, `cos phi-`, `sin phi-`.
    pub fn prefactor(&self, j: Qubit, mu: Channel) -> f64 {
        match (j, mu) {
            (Qubit::One, Channel::One) => self.phi_plus.sin(),
            (Qubit::One, Channel::Two) => self.phi_plus.cos(),
            (Qubit::Two, Channel::One) => self.phi_minus.cos(),
            (Qubit::Two, Channel::Two) => self.phi_minus.sin(),
        }
    }

    /// Squared amplitude of `V_{j,mu}`.
    pub fn weight(&self, j: Qubit, mu: Channel) -> f64 {
        self.prefactor(j, mu).powi(2)
    }

    /// Rotates a product-basis operator into the eigenbasis.
    pub fn to_eigenbasis(&self, m: &Matrix4<f64>) -> Matrix4<f64> {
        self.eigenvectors.transpose() * m * self.eigenvectors
    }

    pub fn diagonal_hamiltonian(&self) -> Matrix4<f64> {
        Matrix4::from_diagonal(&self.eigenvalues.into())
    }
}

pub fn diagonalize(params: &SystemParams) -> Result<EigenSystem> {
    params.validate()?;
    let SystemParams {
        epsilon1,
        epsilon2,
        g,
    } = *params;
    let half_diff = 0.5 * (epsilon1 - epsilon2);
    let half_sum = 0.5 * (epsilon1 + epsilon2);
    let alpha = half_diff.hypot(g);
    let beta = half_sum.hypot(g);
    let phi = (2.0 * g).atan2(epsilon1 + epsilon2);
    let theta = (2.0 * g).atan2(epsilon1 - epsilon2);

    let (sp, cp) = (0.5 * phi).sin_cos();
    let (st, ct) = (0.5 * theta).sin_cos();
    // product-basis indices
    const S00: usize = 0;
    const S01: usize = 1;
    const S10: usize = 2;
    const S11: usize = 3;
    let mut u = Matrix4::zeros();
    // |s1> = cos(phi/2)|gg> - sin(phi/2)|ee>
    u[(S11, 0)] = cp;
    u[(S00, 0)] = -sp;
    // |s2> = sin(phi/2)|gg> + cos(phi/2)|ee>
    u[(S11, 1)] = sp;
    u[(S00, 1)] = cp;
    // |s3> = cos(theta/2)|eg> + sin(theta/2)|ge>
    u[(S01, 2)] = ct;
    u[(S10, 2)] = st;
    // |s4> = -sin(theta/2)|eg> + cos(theta/2)|ge>
    u[(S01, 3)] = -st;
    u[(S10, 3)] = ct;

    Ok(EigenSystem {
        params: *params,
        alpha,
        beta,
        phi,
        theta,
        phi_plus: 0.5 * (theta + phi),
        phi_minus: 0.5 * (theta - phi),
        omega1: beta - alpha,
        omega2: beta + alpha,
        eigenvalues: [-beta, beta, alpha, -alpha],
        eigenvectors: u,
    })
}

fn pauli_x() -> nalgebra::Matrix2<f64> {
    nalgebra::Matrix2::new(0.0, 1.0, 1.0, 0.0)
}

fn pauli_z() -> nalgebra::Matrix2<f64> {
    nalgebra::Matrix2::new(1.0, 0.0, 0.0, -1.0)
}

fn kron2(a: &nalgebra::Matrix2<f64>, b: &nalgebra::Matrix2<f64>) -> Matrix4<f64> {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `sigma_j^x` in the product basis.
pub fn coupling_operator(j: Qubit) -> Matrix4<f64> {
    let id = nalgebra::Matrix2::identity();
    match j {
        Qubit::One => kron2(&pauli_x(), &id),
        Qubit::Two => kron2(&id, &pauli_x()),
    }
}

/// `H_S` in the product basis `{|00>, |01>, |10>, |11>}`.
pub fn hamiltonian_matrix(params: &SystemParams) -> Result<Matrix4<f64>> {
    params.validate()?;
    Ok(raw_hamiltonian(params))
}

fn raw_hamiltonian(params: &SystemParams) -> Matrix4<f64> {
    let id = nalgebra::Matrix2::identity();
    kron2(&pauli_z(), &id) * (0.5 * params.epsilon1)
        + kron2(&id, &pauli_z()) * (0.5 * params.epsilon2)
        + kron2(&pauli_x(), &pauli_x()) * params.g
}

/// Same as [`hamiltonian_matrix`] but without parameter validation, for
/// probing limits such as `g = 0`.
pub fn hamiltonian_matrix_unchecked(params: &SystemParams) -> Matrix4<f64> {
    raw_hamiltonian(params)
}

/// Spectrum of `H_S` by numerical diagonalization, ascending.
pub fn numeric_spectrum(params: &SystemParams) -> Result<[f64; 4]> {
    let h = hamiltonian_matrix(params)?;
    let eig = SymmetricEigen::new(h);
    let mut v: [f64; 4] = eig.eigenvalues.into();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// The four jump operators `V_{j,mu}` in the eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenOperatorSet {
    ops: [[Matrix4<f64>; 2]; 2],
    prefactors: [[f64; 2]; 2],
    frequencies: [f64; 2],
}

impl EigenOperatorSet {
    pub fn get(&self, j: Qubit, mu: Channel) -> &Matrix4<f64> {
        &self.ops[j.index()][mu.index()]
    }

    pub fn prefactor(&self, j: Qubit, mu: Channel) -> f64 {
        self.prefactors[j.index()][mu.index()]
    }

    pub fn frequency(&self, mu: Channel) -> f64 {
        self.frequencies[mu.index()]
    }

    /// `sum_mu (V_{j,mu} + V_{j,mu}^dag)`, which should equal `sigma_j^x`
    /// in the eigenbasis.
    pub fn reconstruct_coupling(&self, j: Qubit) -> Matrix4<f64> {
        Channel::ALL
            .iter()
            .map(|&mu| {
                let v = self.get(j, mu);
                v + v.transpose()
            })
            .sum()
    }
}

pub fn eigenoperators(es: &EigenSystem) -> EigenOperatorSet {
    // (row, col, sign) for the unit-amplitude pattern, eigenbasis indices
    let pattern = |j: Qubit, mu: Channel| -> [(usize, usize, f64); 2] {
        match (j, mu) {
            (Qubit::One, Channel::One) => [(2, 1, 1.0), (0, 3, -1.0)],
            (Qubit::One, Channel::Two) => [(0, 2, 1.0), (3, 1, 1.0)],
            (Qubit::Two, Channel::One) => [(2, 1, 1.0), (0, 3, 1.0)],
            (Qubit::Two, Channel::Two) => [(0, 2, 1.0), (3, 1, -1.0)],
        }
    };
    let mut ops = [[Matrix4::zeros(); 2]; 2];
    let mut prefactors = [[0.0; 2]; 2];
    for j in Qubit::ALL {
        for mu in Channel::ALL {
            let c = es.prefactor(j, mu);
            let m = &mut ops[j.index()][mu.index()];
            for (r, col, s) in pattern(j, mu) {
                m[(r, col)] = s * c;
            }
            prefactors[j.index()][mu.index()] = c;
        }
    }
    EigenOperatorSet {
        ops,
        prefactors,
        frequencies: [es.omega1, es.omega2],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fig2() -> SystemParams {
        SystemParams::new(3.0, 2.0, 0.5).unwrap()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn fig2_frequencies() {
        let es = diagonalize(&fig2()).unwrap();
        assert_abs_diff_eq!(es.alpha, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(es.beta, 6.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(es.alpha, 0.707_106_78, epsilon = 1e-8);
        assert_abs_diff_eq!(es.beta, 2.549_509_75, epsilon = 1e-8);
        assert_abs_diff_eq!(es.omega1, 1.842_402_97, epsilon = 1e-8);
        assert_abs_diff_eq!(es.omega2, 3.256_616_54, epsilon = 1e-8);
        assert_abs_diff_eq!(es.omega2 - es.omega1, 2.0 * es.alpha, epsilon = 1e-15);
    }

    #[test]
    fn weak_coupling_limit() {
        let es = diagonalize(&SystemParams::new(3.0, 2.0, 1e-8).unwrap()).unwrap();
        assert_abs_diff_eq!(es.omega1, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(es.omega2, 3.0, epsilon = 1e-12);
        assert!(es.theta.abs() < 1e-7);
        assert!(es.phi.abs() < 1e-8);
    }

    #[test]
    fn degenerate_splittings() {
        let es = diagonalize(&SystemParams::new(2.5, 2.5, 0.5).unwrap()).unwrap();
        assert_eq!(es.theta, std::f64::consts::FRAC_PI_2);
        assert_eq!(es.alpha, 0.5);
        assert_abs_diff_eq!(es.beta, 6.5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(
            SystemParams::new(2.0, 3.0, 0.5),
            Err(Error::Domain {
                invariant: "epsilon1 >= epsilon2",
                ..
            })
        ));
        assert!(SystemParams::new(3.0, 2.0, 0.0).is_err());
        assert!(SystemParams::new(3.0, 2.0, -0.1).is_err());
        assert!(SystemParams::new(3.0, 0.0, 0.5).is_err());
        assert!(SystemParams::new(f64::NAN, 2.0, 0.5).is_err());
    }

    #[test]
    fn hamiltonian_layout() {
        let h = hamiltonian_matrix(&fig2()).unwrap();
        #[rustfmt::skip]
        let expected = Matrix4::new(
            2.5, 0.0, 0.0, 0.5,
            0.0, 0.5, 0.5, 0.0,
            0.0, 0.5, -0.5, 0.0,
            0.5, 0.0, 0.0, -2.5,
        );
        assert_eq!(h, expected);
        assert_eq!(h.trace(), 0.0);

        let commuting = hamiltonian_matrix_unchecked(&SystemParams {
            epsilon1: 2.0,
            epsilon2: 2.0,
            g: 0.0,
        });
        assert_eq!(
            commuting,
            Matrix4::from_diagonal(&[2.0, 0.0, 0.0, -2.0].into())
        );
    }

    #[test]
    fn eigenvectors_diagonalize_h() {
        let p = fig2();
        let es = diagonalize(&p).unwrap();
        let d = es.to_eigenbasis(&hamiltonian_matrix(&p).unwrap());
        assert!((d - es.diagonal_hamiltonian()).amax() < 1e-14);
        let gram = es.eigenvectors.transpose() * es.eigenvectors;
        assert!((gram - Matrix4::identity()).amax() < 1e-15);
    }

    #[test]
    fn v11_pattern() {
        let es = diagonalize(&fig2()).unwrap();
        let ops = eigenoperators(&es);
        let v = ops.get(Qubit::One, Channel::One);
        let s = es.phi_plus.sin();
        assert_eq!(v[(2, 1)], s);
        assert_eq!(v[(0, 3)], -s);
        assert_eq!(v.iter().filter(|x| **x != 0.0).count(), 2);
    }

    #[test]
    fn eigenoperators_lower_energy() {
        let es = diagonalize(&fig2()).unwrap();
        let ops = eigenoperators(&es);
        let h = es.diagonal_hamiltonian();
        for j in Qubit::ALL {
            for mu in Channel::ALL {
                let v = ops.get(j, mu);
                let res = h * v - v * h + v * es.omega(mu);
                assert!(res.amax() < 1e-12, "{j:?} {mu:?}");
            }
        }
    }

    #[test]
    fn coupling_reconstruction() {
        let es = diagonalize(&fig2()).unwrap();
        let ops = eigenoperators(&es);
        for j in Qubit::ALL {
            let expected = es.to_eigenbasis(&coupling_operator(j));
            assert!((ops.reconstruct_coupling(j) - expected).amax() < 1e-14);
        }
    }
}
