//! Flat TOML run configuration. Keys mirror the physical symbols; figure
//! setups ship as `configs/*.cfg`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::bath::SpectralKind;
use crate::error::{Error, Result};
use crate::experiments::{Grid, Spacing, SweepConfig};
use crate::lambshift::{QuadratureConfig, RoutePolicy, DEFAULT_SERIES_TOL};
use crate::model::{diagonalize, Channel, SystemParams};

/// Directory searched for relative config paths that do not exist in the
/// working directory.
pub const CONFIG_DIR_ENV: &str = "LAMBFLUX_CONFIG_DIR";

fn default_t1() -> f64 {
    1.0
}
fn default_gamma() -> f64 {
    0.01
}
fn default_omega_d() -> f64 {
    50.0
}
fn default_spectral() -> String {
    "drude".into()
}
fn default_true() -> bool {
    true
}
fn default_grid_min() -> f64 {
    1e-2
}
fn default_grid_max() -> f64 {
    1e2
}
fn default_grid_count() -> usize {
    200
}
fn default_spacing() -> String {
    "log".into()
}
fn default_route() -> String {
    "auto".into()
}
fn default_series_tol() -> f64 {
    DEFAULT_SERIES_TOL
}
fn default_spot_check() -> usize {
    20
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub epsilon1: f64,
    pub epsilon2: f64,
    pub g: f64,
    #[serde(default = "default_t1")]
    pub t1: f64,
    #[serde(default = "default_gamma")]
    pub gamma1: f64,
    #[serde(default = "default_gamma")]
    pub gamma2: f64,
    #[serde(default = "default_omega_d")]
    pub omega_d: f64,
    /// `drude`, `hard` or `gaussian`.
    #[serde(default = "default_spectral")]
    pub spectral: String,
    #[serde(default = "default_true")]
    pub include_lamb: bool,
    /// Single temperature difference for point commands.
    #[serde(default)]
    pub dt: Option<f64>,
    /// Sweep grid, in units of `omega_d`.
    #[serde(default = "default_grid_min")]
    pub dt_over_omega_d_min: f64,
    #[serde(default = "default_grid_max")]
    pub dt_over_omega_d_max: f64,
    #[serde(default = "default_grid_count")]
    pub dt_count: usize,
    /// `log` or `linear`.
    #[serde(default = "default_spacing")]
    pub dt_spacing: String,
    /// `auto` or `quadrature`.
    #[serde(default = "default_route")]
    pub route: String,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub abs_tol: Option<f64>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub pole_window: Option<f64>,
    #[serde(default)]
    pub truncation_factor: Option<f64>,
    #[serde(default)]
    pub max_subdivisions: Option<usize>,
    #[serde(default = "default_series_tol")]
    pub series_tol: f64,
    #[serde(default = "default_spot_check")]
    pub spot_check_every: usize,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let resolved = resolve_path(path);
        let text = std::fs::read_to_string(&resolved)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", resolved.display())))?;
        Self::parse(&text)
    }

    pub fn params(&self) -> Result<SystemParams> {
        SystemParams::new(self.epsilon1, self.epsilon2, self.g)
    }

    pub fn spectral_kind(&self) -> Result<SpectralKind> {
        SpectralKind::from_tag(&self.spectral)
            .ok_or_else(|| Error::Config(format!("unknown spectral density `{}`", self.spectral)))
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        let d = QuadratureConfig::default();
        QuadratureConfig {
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            pole_window: self.pole_window.unwrap_or(d.pole_window),
            truncation_factor: self.truncation_factor.unwrap_or(d.truncation_factor),
            max_subdivisions: self.max_subdivisions.unwrap_or(d.max_subdivisions),
        }
    }

    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let spacing = match self.dt_spacing.as_str() {
            "log" => Spacing::Log,
            "linear" => Spacing::Linear,
            other => return Err(Error::Config(format!("unknown dt_spacing `{other}`"))),
        };
        let policy = match self.route.as_str() {
            "auto" => RoutePolicy::Auto,
            "quadrature" => RoutePolicy::Quadrature,
            other => return Err(Error::Config(format!("unknown route `{other}`"))),
        };
        let cfg = SweepConfig {
            params: self.params()?,
            t1: self.t1,
            grid: Grid {
                min: self.dt_over_omega_d_min * self.omega_d,
                max: self.dt_over_omega_d_max * self.omega_d,
                count: self.dt_count,
                spacing,
            },
            spectral: self.spectral_kind()?,
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            omega_d: self.omega_d,
            include_lamb: self.include_lamb,
            policy,
            quadrature: self.quadrature(),
            series_tol: self.series_tol,
            spot_check_every: self.spot_check_every,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parameters outside `gamma << omega_mu ~ g << omega_d` run, but warn.
    pub fn regime_warnings(&self) -> Result<Vec<String>> {
        let es = diagonalize(&self.params()?)?;
        let mut out = Vec::new();
        for mu in Channel::ALL {
            let w = es.omega(mu);
            let n = mu.index() + 1;
            for (name, gamma) in [("gamma1", self.gamma1), ("gamma2", self.gamma2)] {
                if gamma >= w / 10.0 {
                    out.push(format!(
                        "{name} = {gamma} is not small against omega{n} = {w:.6}"
                    ));
                }
            }
            if w >= self.omega_d / 10.0 {
                out.push(format!(
                    "omega{n} = {w:.6} is not small against omega_d = {}",
                    self.omega_d
                ));
            }
        }
        Ok(out)
    }
}

/// `path` itself if it exists or is absolute, else `$LAMBFLUX_CONFIG_DIR/path`
/// when that exists.
pub fn resolve_path(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Some(dir) = std::env::var_os(CONFIG_DIR_ENV) {
        let candidate = Path::new(&dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}
