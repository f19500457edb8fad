//! Ohmic baths: spectral densities, Bose occupations and golden-rule rates.

use crate::error::{Error, Result};
use crate::model::{Channel, EigenSystem, Qubit};

/// Ohmic spectral density `J(w) = gamma * w * cutoff(w / omega_d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralDensity {
    /// `gamma w / (1 + (w/omega_d)^2)`
    DrudeLorentz { gamma: f64, omega_d: f64 },
    /// `gamma w` for `w < omega_d`, zero from `omega_d` on.
    HardCutoff { gamma: f64, omega_d: f64 },
    /// `gamma w exp(-w^2/omega_d^2)`
    GaussianCutoff { gamma: f64, omega_d: f64 },
}

/// Which cutoff shape a [`SpectralDensity`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectralKind {
    Drude,
    Hard,
    Gaussian,
}

impl SpectralKind {
    pub const ALL: [SpectralKind; 3] = [
        SpectralKind::Drude,
        SpectralKind::Hard,
        SpectralKind::Gaussian,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SpectralKind::Drude => "drude",
            SpectralKind::Hard => "hard",
            SpectralKind::Gaussian => "gaussian",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "drude" | "drude-lorentz" | "lorentz" => Some(SpectralKind::Drude),
            "hard" | "hard-cutoff" | "sharp" => Some(SpectralKind::Hard),
            "gaussian" | "gauss" => Some(SpectralKind::Gaussian),
            _ => None,
        }
    }

    pub fn with(self, gamma: f64, omega_d: f64) -> Result<SpectralDensity> {
        match self {
            SpectralKind::Drude => SpectralDensity::drude(gamma, omega_d),
            SpectralKind::Hard => SpectralDensity::hard(gamma, omega_d),
            SpectralKind::Gaussian => SpectralDensity::gaussian(gamma, omega_d),
        }
    }
}

fn check_shape(gamma: f64, omega_d: f64) -> Result<()> {
    // gamma = 0 is allowed and means a decoupled bath
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::domain("gamma >= 0", format!("gamma = {gamma}")));
    }
    if !(omega_d.is_finite() && omega_d > 0.0) {
        return Err(Error::domain("omega_d > 0", format!("omega_d = {omega_d}")));
    }
    Ok(())
}

impl SpectralDensity {
    pub fn drude(gamma: f64, omega_d: f64) -> Result<Self> {
        check_shape(gamma, omega_d)?;
        Ok(SpectralDensity::DrudeLorentz { gamma, omega_d })
    }

    pub fn hard(gamma: f64, omega_d: f64) -> Result<Self> {
        check_shape(gamma, omega_d)?;
        Ok(SpectralDensity::HardCutoff { gamma, omega_d })
    }

    pub fn gaussian(gamma: f64, omega_d: f64) -> Result<Self> {
        check_shape(gamma, omega_d)?;
        Ok(SpectralDensity::GaussianCutoff { gamma, omega_d })
    }

    pub fn validate(&self) -> Result<()> {
        check_shape(self.gamma(), self.omega_d())
    }

    pub fn kind(&self) -> SpectralKind {
        match self {
            SpectralDensity::DrudeLorentz { .. } => SpectralKind::Drude,
            SpectralDensity::HardCutoff { .. } => SpectralKind::Hard,
            SpectralDensity::GaussianCutoff { .. } => SpectralKind::Gaussian,
        }
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            SpectralDensity::DrudeLorentz { gamma, .. }
            | SpectralDensity::HardCutoff { gamma, .. }
            | SpectralDensity::GaussianCutoff { gamma, .. } => gamma,
        }
    }

    pub fn omega_d(&self) -> f64 {
        match *self {
            SpectralDensity::DrudeLorentz { omega_d, .. }
            | SpectralDensity::HardCutoff { omega_d, .. }
            | SpectralDensity::GaussianCutoff { omega_d, .. } => omega_d,
        }
    }

    /// Same shape with a different coupling strength.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        self.kind().with(gamma, self.omega_d())
    }

    /// `J(w) / w`, finite at `w = 0`.
    pub fn value_over_omega(&self, omega: f64) -> f64 {
        match *self {
            SpectralDensity::DrudeLorentz { gamma, omega_d } => {
                let x = omega / omega_d;
                gamma / (1.0 + x * x)
            }
            SpectralDensity::HardCutoff { gamma, omega_d } => {
                if omega < omega_d {
                    gamma
                } else {
                    0.0
                }
            }
            SpectralDensity::GaussianCutoff { gamma, omega_d } => {
                let x = omega / omega_d;
                gamma * (-x * x).exp()
            }
        }
    }

    /// `J(w)` for `w >= 0`.
    pub fn value(&self, omega: f64) -> f64 {
        omega * self.value_over_omega(omega)
    }
}

/// Free function form of [`SpectralDensity::value`].
pub fn spectral_value(j: &SpectralDensity, omega: f64) -> f64 {
    j.value(omega)
}

fn check_temperature(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("T > 0", format!("T = {t}")))
    }
}

/// Bose occupation `1 / (exp(w/T) - 1)`.
///
/// Evaluated as `e^{-x} / (1 - e^{-x})` with `expm1`, so it neither loses
/// precision for `w << T` nor overflows for `w >> T` (it underflows to 0).
pub fn bose_occupation(omega: f64, t: f64) -> Result<f64> {
    check_temperature(t)?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain("omega > 0", format!("omega = {omega}")));
    }
    Ok(occupation_unchecked(omega, t))
}

pub(crate) fn occupation_unchecked(omega: f64, t: f64) -> f64 {
    let x = omega / t;
    (-x).exp() / -(-x).exp_m1()
}

/// `n(w) + 1 = 1 / (1 - e^{-x})`.
pub(crate) fn occupation_plus_one_unchecked(omega: f64, t: f64) -> f64 {
    let x = omega / t;
    1.0 / -(-x).exp_m1()
}

/// `w * n(w)`, continuous at `w = 0` where it equals `T`.
pub(crate) fn omega_times_occupation(omega: f64, t: f64) -> f64 {
    if omega == 0.0 {
        return t;
    }
    let x = omega / t;
    omega * (-x).exp() / -(-x).exp_m1()
}

/// `J(w) n(w)` without the `0 * inf` at `w = 0`.
pub(crate) fn thermal_weight(j: &SpectralDensity, omega: f64, t: f64) -> f64 {
    j.value_over_omega(omega) * omega_times_occupation(omega, t)
}

/// Sign of the frequency argument of a rate: `Plus` is `Gamma(+w)`
/// (emission into the bath), `Minus` is `Gamma(-w)` (absorption).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// `Gamma(+w) = 2 J(w) (n + 1)`, `Gamma(-w) = 2 J(w) n`.
pub fn gamma_rate(j: &SpectralDensity, t: f64, omega: f64, sign: Sign) -> Result<f64> {
    check_temperature(t)?;
    j.validate()?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain("omega > 0", format!("omega = {omega}")));
    }
    let two_j = 2.0 * j.value(omega);
    Ok(match sign {
        Sign::Plus => two_j * occupation_plus_one_unchecked(omega, t),
        Sign::Minus => two_j * occupation_unchecked(omega, t),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bath {
    pub temperature: f64,
    pub spectral: SpectralDensity,
}

impl Bath {
    pub fn new(temperature: f64, spectral: SpectralDensity) -> Result<Self> {
        check_temperature(temperature)?;
        spectral.validate()?;
        Ok(Bath {
            temperature,
            spectral,
        })
    }

    pub fn inverse_temperature(&self) -> f64 {
        1.0 / self.temperature
    }

    pub fn occupation(&self, omega: f64) -> f64 {
        occupation_unchecked(omega, self.temperature)
    }

    pub fn j(&self, omega: f64) -> f64 {
        self.spectral.value(omega)
    }
}

/// `Gamma_j(+-omega_mu)` for both baths and channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRates {
    rates: [[[f64; 2]; 2]; 2],
}

impl TransitionRates {
    pub fn compute(es: &EigenSystem, baths: &[Bath; 2]) -> Result<Self> {
        let mut rates = [[[0.0; 2]; 2]; 2];
        for j in Qubit::ALL {
            let bath = &baths[j.index()];
            for mu in Channel::ALL {
                for s in Sign::ALL {
                    rates[j.index()][mu.index()][s.index()] =
                        gamma_rate(&bath.spectral, bath.temperature, es.omega(mu), s)?;
                }
            }
        }
        Ok(TransitionRates { rates })
    }

    pub fn get(&self, j: Qubit, mu: Channel, sign: Sign) -> f64 {
        self.rates[j.index()][mu.index()][sign.index()]
    }
}
