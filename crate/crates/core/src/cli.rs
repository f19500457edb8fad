//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage, config or domain
//! error, 3 runtime failure. Errors print one line:
//! `error: code=<CODE> message=<text>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bath::{Sign, TransitionRates};
use crate::config::RunConfig;
use crate::dynamics::{
    affine_slope, build_liouvillian, heat_current_closed, steady_state_analytic,
    steady_state_numeric,
};
use crate::error::{Error, Result};
use crate::experiments::{self, SweepConfig, SweepRow};
use crate::lambshift::{compute_lamb_shift, positivity_margin, LambShiftData, RoutePolicy};
use crate::model::{Channel, Qubit};
use crate::validate::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lambflux",
    version,
    about = "Heat current through two coupled qubits with the Lamb shift"
)]
pub struct Cli {
    /// Flat TOML config; relative paths also resolve against $LAMBFLUX_CONFIG_DIR.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Temperature difference T2 - T1 for point commands (default: config `dt`, else omega_d).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    /// CSV destination for sweeps (default: config `output`, else stdout).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Omit the timestamp line so output is byte-reproducible.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Eigenvalues, mixing angles and transition frequencies.
    Spectrum,
    /// Transition rates Gamma_j(+-omega_mu).
    Rates,
    /// Shift integrals, R series, level shifts and increments by both routes.
    Lambshift,
    /// Steady-state populations, analytic and numeric.
    Steady,
    /// Heat currents with and without the Lamb shift, supremum and margins.
    Current,
    /// Temperature sweep to CSV.
    Sweep,
    /// Sweeps of all three spectral densities to CSV.
    CompareSpectra,
    /// Temperature difference where the Lamb-shifted current reaches the supremum.
    Crossing,
    /// Runs the oracle cross-checks and prints a pass/fail table.
    Validate,
}

const DEFAULT_CONFIG: &str = "epsilon1 = 3.0\nepsilon2 = 2.0\ng = 0.5\n";

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Point { source, .. } => exit_code(source),
        Error::Domain { .. }
        | Error::Config(_)
        | Error::PoleNearCutoff { .. }
        | Error::CotangentPole { .. }
        | Error::MissingLambData => EXIT_USAGE,
        Error::Quadrature { .. }
        | Error::Series(_)
        | Error::Degenerate(_)
        | Error::RouteMismatch { .. }
        | Error::Io(_) => EXIT_RUNTIME,
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error: code=USAGE message={}", one_line(first));
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(
                err,
                "error: code={} message={}",
                e.code(),
                one_line(&e.to_string())
            );
            exit_code(&e)
        }
    }
}

struct Context {
    run: RunConfig,
    sweep: SweepConfig,
    dt: f64,
}

fn load(cli: &Cli, err: &mut dyn Write) -> Result<Context> {
    let run = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::parse(DEFAULT_CONFIG)?,
    };
    let sweep = run.sweep_config()?;
    for w in run.regime_warnings()? {
        writeln!(err, "warning: {w}")?;
    }
    let dt = cli.dt.or(run.dt).unwrap_or(run.omega_d);
    if !(dt.is_finite() && dt >= 0.0) {
        return Err(Error::domain("dT >= 0", format!("dT = {dt}")));
    }
    Ok(Context { run, sweep, dt })
}

fn timestamp(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    if !cli.no_timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        writeln!(out, "# generated at unix time {secs}")?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let ctx = load(cli, err)?;
    if cli.verbose > 0 {
        writeln!(err, "info: {:?}", ctx.sweep)?;
    }
    match cli.command {
        Command::Sweep | Command::CompareSpectra => return emit_csv(cli, &ctx, out),
        _ => timestamp(cli, out)?,
    }
    let cfg = &ctx.sweep;
    let es = cfg.eigensystem()?;
    let baths = cfg.baths(ctx.dt)?;
    let lamb = || compute_lamb_shift(&es, &baths, cfg.policy, &cfg.quadrature, cfg.series_tol);
    match cli.command {
        Command::Spectrum => {
            writeln!(out, "alpha = {:.12}", es.alpha)?;
            writeln!(out, "beta = {:.12}", es.beta)?;
            writeln!(out, "phi = {:.12}", es.phi)?;
            writeln!(out, "theta = {:.12}", es.theta)?;
            writeln!(out, "phi_plus = {:.12}", es.phi_plus)?;
            writeln!(out, "phi_minus = {:.12}", es.phi_minus)?;
            writeln!(out, "omega1 = {:.12}", es.omega1)?;
            writeln!(out, "omega2 = {:.12}", es.omega2)?;
            let e = es.eigenvalues;
            writeln!(
                out,
                "eigenvalues = [{:.12}, {:.12}, {:.12}, {:.12}]",
                e[0], e[1], e[2], e[3]
            )?;
            for j in Qubit::ALL {
                for mu in Channel::ALL {
                    writeln!(
                        out,
                        "prefactor V{}{} = {:.12}",
                        j.index() + 1,
                        mu.index() + 1,
                        es.prefactor(j, mu)
                    )?;
                }
            }
        }
        Command::Rates => {
            let r = TransitionRates::compute(&es, &baths)?;
            writeln!(
                out,
                "T1 = {}  T2 = {}",
                baths[0].temperature, baths[1].temperature
            )?;
            for j in Qubit::ALL {
                for mu in Channel::ALL {
                    writeln!(
                        out,
                        "Gamma{}(+omega{}) = {:.12e}  Gamma{}(-omega{}) = {:.12e}",
                        j.index() + 1,
                        mu.index() + 1,
                        r.get(j, mu, Sign::Plus),
                        j.index() + 1,
                        mu.index() + 1,
                        r.get(j, mu, Sign::Minus)
                    )?;
                }
            }
        }
        Command::Lambshift => {
            let data = lamb()?;
            print_lamb(out, "selected route", &data)?;
            if cfg.policy != RoutePolicy::Quadrature {
                let q = compute_lamb_shift(
                    &es,
                    &baths,
                    RoutePolicy::Quadrature,
                    &cfg.quadrature,
                    cfg.series_tol,
                )?;
                print_lamb(out, "quadrature route", &q)?;
            }
            let m = positivity_margin(&es, &data);
            writeln!(out, "margins = [{:.12}, {:.12}]", m[0], m[1])?;
        }
        Command::Steady => {
            let a = steady_state_analytic(&es, &baths)?;
            let n = steady_state_numeric(&build_liouvillian(&es, &baths, false, None)?)?;
            let p = a.populations;
            writeln!(
                out,
                "analytic = [{:.12e}, {:.12e}, {:.12e}, {:.12e}]",
                p[0], p[1], p[2], p[3]
            )?;
            let p = n.populations;
            writeln!(
                out,
                "numeric = [{:.12e}, {:.12e}, {:.12e}, {:.12e}]",
                p[0], p[1], p[2], p[3]
            )?;
            writeln!(out, "max_off_diagonal = {:.3e}", n.max_off_diagonal)?;
            writeln!(
                out,
                "X+ = {:.12e}  X- = {:.12e}  Y+ = {:.12e}  Y- = {:.12e}",
                a.x_plus, a.x_minus, a.y_plus, a.y_minus
            )?;
        }
        Command::Current => {
            let data = lamb()?;
            let inc = if cfg.include_lamb {
                data.increments
            } else {
                [0.0; 2]
            };
            let r = heat_current_closed(&es, &baths, inc)?;
            let m = positivity_margin(&es, &data);
            writeln!(out, "dT = {}", ctx.dt)?;
            writeln!(out, "J0 = {:.12e}", r.no_lamb)?;
            writeln!(out, "Jdelta = {:.12e}", r.with_lamb)?;
            writeln!(out, "dJ = {:.12e}", r.difference)?;
            writeln!(
                out,
                "|J0| = {:.12e}  |Jdelta| = {:.12e}",
                r.no_lamb_magnitude(),
                r.with_lamb_magnitude()
            )?;
            writeln!(out, "supremum = {:.12e}", r.supremum)?;
            writeln!(out, "A = [{:.12e}, {:.12e}]", r.a[0], r.a[1])?;
            writeln!(out, "margins = [{:.12}, {:.12}]", m[0], m[1])?;
            if let Ok(slope) = affine_slope(&es, &baths, cfg.series_tol) {
                writeln!(out, "asymptotic_slope = {slope:.12e}")?;
            }
        }
        Command::Crossing => match experiments::find_crossing(cfg)? {
            Some(dt) => writeln!(
                out,
                "crossing dT = {dt:.9}  (dT/omega_d = {:.9})",
                dt / cfg.omega_d
            )?,
            None => writeln!(out, "crossing none")?,
        },
        Command::Validate => {
            let checks = run_suite(cfg, ctx.dt)?;
            let mut ok = true;
            for c in &checks {
                writeln!(out, "{c}")?;
                ok &= c.passed;
            }
            writeln!(out, "{}", if ok { "ALL PASS" } else { "SOME FAILED" })?;
            if !ok {
                return Ok(EXIT_VALIDATION);
            }
        }
        Command::Sweep | Command::CompareSpectra => unreachable!(),
    }
    Ok(EXIT_OK)
}

fn print_lamb(out: &mut dyn Write, label: &str, data: &LambShiftData) -> Result<()> {
    writeln!(out, "[{label}]")?;
    for j in Qubit::ALL {
        for mu in Channel::ALL {
            let c = data.channels.get(j, mu);
            writeln!(
                out,
                "j={} mu={} Delta = {:.12e}  DeltaPrime = {:.12e}  R = {:.12e}  R_est = {:.12e}  route = {:?}",
                j.index() + 1,
                mu.index() + 1,
                c.delta,
                c.delta_prime(),
                c.r,
                c.r_estimate,
                c.route
            )?;
        }
    }
    let l = data.level_shifts;
    writeln!(
        out,
        "level_shifts = [{:.12e}, {:.12e}, {:.12e}, {:.12e}]",
        l[0], l[1], l[2], l[3]
    )?;
    writeln!(
        out,
        "increments = [{:.12e}, {:.12e}]",
        data.increments[0], data.increments[1]
    )?;
    Ok(())
}

fn emit_csv(cli: &Cli, ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let rows: Vec<SweepRow> = match cli.command {
        Command::Sweep => experiments::sweep(&ctx.sweep)?,
        _ => experiments::compare_spectra(&ctx.sweep)?
            .into_iter()
            .flat_map(|(_, rows)| rows)
            .collect(),
    };
    let path = cli.output.clone().or_else(|| ctx.run.output.clone());
    match path {
        Some(p) => {
            let file = std::fs::File::create(&p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            experiments::write_csv(std::io::BufWriter::new(file), &rows)?;
            timestamp(cli, out)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), p.display())?;
        }
        None => experiments::write_csv(out, &rows)?,
    }
    Ok(EXIT_OK)
}
