//! The 16x16 generator acting on column-stacked density matrices.
//!
//! `vec(A X B) = (B^T kron A) vec(X)`, so entry `(r, c)` of a 4x4 matrix
//! sits at index `4 c + r`. Everything is expressed in the eigenbasis of
//! `H_S`, ordered `(-beta, beta, alpha, -alpha)`.

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use crate::bath::{Bath, Sign, TransitionRates};
use crate::error::{Error, Result};
use crate::lambshift::LambShiftData;
use crate::model::{eigenoperators, Channel, EigenSystem, Qubit};

pub type Superoperator = SMatrix<Complex64, 16, 16>;
pub type VecState = SVector<Complex64, 16>;
pub type Density = Matrix4<Complex64>;

pub fn vectorize(rho: &Density) -> VecState {
    VecState::from_column_slice(rho.as_slice())
}

pub fn unvectorize(v: &VecState) -> Density {
    Density::from_column_slice(v.as_slice())
}

fn complexify(m: &Matrix4<f64>) -> Density {
    m.map(|x| Complex64::new(x, 0.0))
}

fn kron(a: &Density, b: &Density) -> Superoperator {
    let mut out = Superoperator::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let aij = a[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..4 {
                for l in 0..4 {
                    out[(4 * i + k, 4 * j + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `-i [H, .]`.
pub fn commutator_superoperator(h: &Density) -> Superoperator {
    let id = Density::identity();
    (kron(&id, h) - kron(&h.transpose(), &id)) * Complex64::new(0.0, -1.0)
}

/// `rate (L . L^dag - {L^dag L, .}/2)`.
pub fn dissipator_superoperator(l: &Density, rate: f64) -> Superoperator {
    let id = Density::identity();
    let ldl = l.adjoint() * l;
    let d = kron(&l.conjugate(), l)
        - (kron(&id, &ldl) + kron(&ldl.transpose(), &id)) * Complex64::new(0.5, 0.0);
    d * Complex64::new(rate, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    /// `-i [H_S (+ H_LS), .]`.
    pub hamiltonian: Superoperator,
    /// One dissipator per bath.
    pub dissipators: [Superoperator; 2],
    /// Diagonal of `H_S (+ H_LS)` in the eigenbasis.
    pub energies: [f64; 4],
    pub include_lamb: bool,
}

impl Liouvillian {
    pub fn matrix(&self) -> Superoperator {
        self.hamiltonian + self.dissipators[0] + self.dissipators[1]
    }

    pub fn apply(&self, rho: &Density) -> Density {
        unvectorize(&(self.matrix() * vectorize(rho)))
    }

    pub fn apply_dissipator(&self, j: Qubit, rho: &Density) -> Density {
        unvectorize(&(self.dissipators[j.index()] * vectorize(rho)))
    }

    pub fn total_hamiltonian(&self) -> Density {
        complexify(&Matrix4::from_diagonal(&self.energies.into()))
    }
}

/// Assembles the generator. `lamb` is required when `include_lamb` is set
/// and ignored otherwise.
pub fn build_liouvillian(
    es: &EigenSystem,
    baths: &[Bath; 2],
    include_lamb: bool,
    lamb: Option<&LambShiftData>,
) -> Result<Liouvillian> {
    let mut energies = es.eigenvalues;
    if include_lamb {
        let data = lamb.ok_or(Error::MissingLambData)?;
        for (e, d) in energies.iter_mut().zip(data.level_shifts) {
            *e += d;
        }
    }
    let hamiltonian =
        commutator_superoperator(&complexify(&Matrix4::from_diagonal(&energies.into())));
    let rates = TransitionRates::compute(es, baths)?;
    let ops = eigenoperators(es);
    let mut dissipators = [Superoperator::zeros(); 2];
    for j in Qubit::ALL {
        for mu in Channel::ALL {
            let v = complexify(ops.get(j, mu));
            dissipators[j.index()] += dissipator_superoperator(&v, rates.get(j, mu, Sign::Plus));
            dissipators[j.index()] +=
                dissipator_superoperator(&v.adjoint(), rates.get(j, mu, Sign::Minus));
        }
    }
    Ok(Liouvillian {
        hamiltonian,
        dissipators,
        energies,
        include_lamb,
    })
}
