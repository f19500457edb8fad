//! Temperature sweeps, spectral-density comparison, crossing search and the
//! versioned CSV output.

use std::io::Write;

use rayon::prelude::*;

use crate::bath::{Bath, SpectralKind};
use crate::dynamics::{heat_current_closed, supremum_no_lamb};
use crate::error::{Error, Result};
use crate::lambshift::{
    compute_lamb_shift, positivity_margin, LambShiftData, QuadratureConfig, RoutePolicy,
    DEFAULT_SERIES_TOL,
};
use crate::model::{diagonalize, Channel, EigenSystem, Qubit, SystemParams};

pub const SCHEMA: &str = "schema=lambflux.v1";

pub const COLUMNS: [&str; 16] = [
    "dt", "omega1", "omega2", "delta1", "delta2", "r21", "r22", "r21_est", "r22_est", "j0",
    "jdelta", "djdelta", "supremum", "margin1", "margin2", "spectral",
];

/// Relative tolerance of the analytic-vs-quadrature spot checks.
pub const SPOT_CHECK_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `count` values of `dT` between `min` and `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Grid {
    /// 200 log-spaced points with `dT / omega_d` in `[1e-2, 1e2]`.
    pub fn default_for(omega_d: f64) -> Self {
        Grid {
            min: 1e-2 * omega_d,
            max: 1e2 * omega_d,
            count: 200,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Ok(());
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min >= 0.0) {
            return Err(Error::domain(
                "dT grid finite and >= 0",
                format!("{self:?}"),
            ));
        }
        if self.count > 1 && !(self.max > self.min) {
            return Err(Error::domain(
                "grid strictly increasing",
                format!("min {} max {}", self.min, self.max),
            ));
        }
        if self.spacing == Spacing::Log && !(self.min > 0.0) {
            return Err(Error::domain(
                "log grid starts above 0",
                format!("min {}", self.min),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.min],
            n => {
                let last = (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        let s = i as f64 / last;
                        match self.spacing {
                            Spacing::Linear => self.min + s * (self.max - self.min),
                            Spacing::Log => (self.min.ln() + s * (self.max / self.min).ln()).exp(),
                        }
                    })
                    .map({
                        let (min, max) = (self.min, self.max);
                        move |v| v.clamp(min, max)
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub params: SystemParams,
    pub t1: f64,
    pub grid: Grid,
    pub spectral: SpectralKind,
    pub gamma1: f64,
    pub gamma2: f64,
    pub omega_d: f64,
    pub include_lamb: bool,
    pub policy: RoutePolicy,
    pub quadrature: QuadratureConfig,
    pub series_tol: f64,
    /// Every n-th Drude point is re-evaluated by quadrature; 0 disables.
    pub spot_check_every: usize,
}

impl SweepConfig {
    pub fn new(params: SystemParams, spectral: SpectralKind, gamma: f64, omega_d: f64) -> Self {
        SweepConfig {
            params,
            t1: 1.0,
            grid: Grid::default_for(omega_d),
            spectral,
            gamma1: gamma,
            gamma2: gamma,
            omega_d,
            include_lamb: true,
            policy: RoutePolicy::Auto,
            quadrature: QuadratureConfig::default(),
            series_tol: DEFAULT_SERIES_TOL,
            spot_check_every: 20,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.grid.validate()?;
        self.quadrature.validate()?;
        self.baths(0.0)?;
        Ok(())
    }

    pub fn baths(&self, dt: f64) -> Result<[Bath; 2]> {
        Ok([
            Bath::new(self.t1, self.spectral.with(self.gamma1, self.omega_d)?)?,
            Bath::new(self.t1 + dt, self.spectral.with(self.gamma2, self.omega_d)?)?,
        ])
    }

    pub fn eigensystem(&self) -> Result<EigenSystem> {
        diagonalize(&self.params)
    }

    pub fn supremum(&self) -> Result<f64> {
        Ok(supremum_no_lamb(&self.eigensystem()?, &self.baths(0.0)?[0]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub dt: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub r21: f64,
    pub r22: f64,
    pub r21_est: f64,
    pub r22_est: f64,
    /// Signed bath-1 current without the Lamb shift.
    pub j0: f64,
    /// Signed bath-1 current with the Lamb shift (equals `j0` when the
    /// sweep excludes it).
    pub jdelta: f64,
    pub djdelta: f64,
    pub supremum: f64,
    pub margin1: f64,
    pub margin2: f64,
    pub spectral: SpectralKind,
}

impl SweepRow {
    fn record(&self) -> Vec<String> {
        let nums = [
            self.dt,
            self.omega1,
            self.omega2,
            self.delta1,
            self.delta2,
            self.r21,
            self.r22,
            self.r21_est,
            self.r22_est,
            self.j0,
            self.jdelta,
            self.djdelta,
            self.supremum,
            self.margin1,
            self.margin2,
        ];
        let mut out: Vec<String> = nums.iter().map(|v| format!("{v:e}")).collect();
        out.push(self.spectral.tag().to_string());
        out
    }
}

/// Lamb-shift data at one `dT`, spot-checking the analytic route when asked.
fn lamb_at(
    cfg: &SweepConfig,
    es: &EigenSystem,
    baths: &[Bath; 2],
    spot_check: bool,
) -> Result<LambShiftData> {
    let data = compute_lamb_shift(es, baths, cfg.policy, &cfg.quadrature, cfg.series_tol)?;
    if spot_check && cfg.spectral == SpectralKind::Drude && cfg.policy == RoutePolicy::Auto {
        let q = compute_lamb_shift(
            es,
            baths,
            RoutePolicy::Quadrature,
            &cfg.quadrature,
            cfg.series_tol,
        )?;
        for mu in Channel::ALL {
            let (a, b) = (data.increments[mu.index()], q.increments[mu.index()]);
            if !((a - b).abs() <= SPOT_CHECK_TOL * a.abs().max(b.abs())) {
                return Err(Error::RouteMismatch {
                    what: format!("delta_{}", mu.index() + 1),
                    lhs: a,
                    rhs: b,
                });
            }
        }
    }
    Ok(data)
}

/// Evaluates one grid point.
pub fn evaluate_point(cfg: &SweepConfig, dt: f64, spot_check: bool) -> Result<SweepRow> {
    let es = cfg.eigensystem()?;
    let baths = cfg.baths(dt)?;
    let data = lamb_at(cfg, &es, &baths, spot_check)?;
    let increments = if cfg.include_lamb {
        data.increments
    } else {
        [0.0; 2]
    };
    let report = heat_current_closed(&es, &baths, increments)?;
    let margins = positivity_margin(&es, &data);
    let r2 = |mu| data.channels.get(Qubit::Two, mu);
    Ok(SweepRow {
        dt,
        omega1: es.omega1,
        omega2: es.omega2,
        delta1: data.increments[0],
        delta2: data.increments[1],
        r21: r2(Channel::One).r,
        r22: r2(Channel::Two).r,
        r21_est: r2(Channel::One).r_estimate,
        r22_est: r2(Channel::Two).r_estimate,
        j0: report.no_lamb,
        jdelta: report.with_lamb,
        djdelta: report.difference,
        supremum: report.supremum,
        margin1: margins[0],
        margin2: margins[1],
        spectral: cfg.spectral,
    })
}

/// One row per grid point, in grid order. Points are evaluated in parallel;
/// the first failing point (by index) is reported.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let grid = cfg.grid.values();
    let results: Vec<Result<SweepRow>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &dt)| {
            let spot = cfg.spot_check_every > 0 && i % cfg.spot_check_every == 0;
            evaluate_point(cfg, dt, spot).map_err(|e| Error::Point {
                index: i,
                delta_t: dt,
                source: Box::new(e),
            })
        })
        .collect();
    results.into_iter().collect()
}

/// Sweeps of the three spectral densities, all through quadrature.
pub fn compare_spectra(cfg: &SweepConfig) -> Result<Vec<(SpectralKind, Vec<SweepRow>)>> {
    SpectralKind::ALL
        .iter()
        .map(|&kind| {
            let c = SweepConfig {
                spectral: kind,
                policy: RoutePolicy::Quadrature,
                ..cfg.clone()
            };
            Ok((kind, sweep(&c)?))
        })
        .collect()
}

/// Absolute `dT` resolution of the crossing search, per unit `omega_d`.
pub const CROSSING_TOL: f64 = 1e-6;

/// First `dT` where `|J_1^delta|` reaches the no-Lamb supremum.
pub fn find_crossing(cfg: &SweepConfig) -> Result<Option<f64>> {
    find_crossing_with_bound(cfg, cfg.supremum()?)
}

/// First `dT` on the grid hull where `|J_1^delta|` reaches `bound`, refined
/// by bisection to `CROSSING_TOL * omega_d`. `None` if it never does.
pub fn find_crossing_with_bound(cfg: &SweepConfig, bound: f64) -> Result<Option<f64>> {
    if !(bound.is_finite() && bound > 0.0) {
        return Err(Error::domain(
            "finite positive bound",
            format!("bound = {bound}"),
        ));
    }
    let cfg = SweepConfig {
        include_lamb: true,
        ..cfg.clone()
    };
    cfg.validate()?;
    let excess =
        |dt: f64| -> Result<f64> { Ok(evaluate_point(&cfg, dt, false)?.jdelta.abs() - bound) };
    let grid = cfg.grid.values();
    let mut lo = 0.0;
    let mut hi = None;
    for &dt in &grid {
        if excess(dt)? >= 0.0 {
            hi = Some(dt);
            break;
        }
        lo = dt;
    }
    let Some(mut hi) = hi else { return Ok(None) };
    let tol = CROSSING_TOL * cfg.omega_d;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Least-squares line through `(x, y)`: `(slope, intercept, r^2)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, my - slope * mx, r2)
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record([SCHEMA]).map_err(io)?;
    w.write_record(COLUMNS).map_err(io)?;
    for r in rows {
        w.write_record(r.record()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}
