//! Command-line front end: phase curves, swap and entangling reports, the
//! coupling-strength sweep, and time-domain verification runs.
//!
//! Exit codes: 0 success, 2 configuration error, 3 verification failure.

// Negated float comparisons (`!(x > 0.0)`) are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lambda_qed::oracle::{
    max_phase_deviation, oracle_phase, oracle_transfer_check, write_phase_audit_csv, OracleGrid,
    DEFAULT_DT, DEFAULT_X0_WIDTHS,
};
use lambda_qed::{
    bell_probability, entangle_frequencies, min_swap_fidelity, phase_factor, swap_frequencies,
    sweep_swap_and_bell, write_sweep_csv, Error, RootMethod,
};

use config::{packet, resolve, ParamFlags, Resolved};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Verification(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureNotConverged { .. } => CliError::Verification(e.to_string()),
            Error::Io(io) => CliError::Io(io),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lambda-qed",
    about = "Single-photon scattering on a three-level atom in a leaky cavity: \
             phase curves, qubit-swap and entangling figures of merit, and \
             brute-force verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scattering phase factor over a frequency grid (CSV)
    #[command(allow_negative_numbers = true)]
    Phase {
        #[command(flatten)]
        flags: ParamFlags,
        /// Lowest frequency of the grid (default k_c - 5 kappa)
        #[arg(long)]
        k_min: Option<f64>,
        /// Highest frequency of the grid (default k_c + 5 kappa)
        #[arg(long)]
        k_max: Option<f64>,
        /// Number of grid rows
        #[arg(long)]
        n_points: Option<usize>,
    },
    /// Swap operating frequencies, xi, and minimum fidelity (JSON)
    #[command(allow_negative_numbers = true)]
    Swap {
        #[command(flatten)]
        flags: ParamFlags,
    },
    /// Entangling frequencies with Bell phase, and success probability (JSON)
    #[command(allow_negative_numbers = true)]
    Entangle {
        #[command(flatten)]
        flags: ParamFlags,
    },
    /// Minimum swap fidelity and Bell probability versus lambda/kappa (CSV)
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[command(flatten)]
        flags: ParamFlags,
        /// Ascending lambda/kappa values, comma separated
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<f64>>,
    },
    /// Time-domain check of the scattering kernel (CSV audit + JSON summary)
    #[command(allow_negative_numbers = true)]
    Oracle {
        #[command(flatten)]
        flags: ParamFlags,
        /// Number of continuum modes (odd)
        #[arg(long)]
        n_modes: Option<usize>,
        /// Grid half-span around k_c, in frequency units
        #[arg(long)]
        span: Option<f64>,
        /// Integrator step
        #[arg(long)]
        dt: Option<f64>,
        /// Total evolution time (default 2 x_0 + 10/kappa)
        #[arg(long)]
        t_final: Option<f64>,
        /// Maximum allowed |oracle - analytic| deviation
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Writes to the configured path, or stdout when none is set.
fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn json_complex(z: lambda_qed::Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Phase { flags, k_min, k_max, n_points } => {
            let r = resolve(&flags)?;
            r.file.check_format("csv")?;
            let p = &r.params;
            let lo = k_min.or(r.file.k_min).unwrap_or(p.k_c - 5.0 * p.kappa);
            let hi = k_max.or(r.file.k_max).unwrap_or(p.k_c + 5.0 * p.kappa);
            let n = n_points.or(r.file.n_points).unwrap_or(201);
            if !(hi > lo) || n < 2 {
                return Err(CliError::Config(format!(
                    "field k_min/k_max/n_points: need k_min < k_max and n_points >= 2 \
                     (got {lo}, {hi}, {n})"
                )));
            }
            let mut out = String::from("k,re_phase,im_phase,abs_phase\n");
            for j in 0..n {
                let k = lo + (hi - lo) * j as f64 / (n - 1) as f64;
                let e = phase_factor(k, p);
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    k,
                    e.re,
                    e.im,
                    e.norm()
                ));
            }
            emit(&r.output, &out)
        }

        Command::Swap { flags } => {
            let r = resolve(&flags)?;
            r.file.check_format("json")?;
            let p = &r.params;
            let roots = swap_frequencies(p)?;
            let w = packet(&r, p.k_c)?;
            let fom = min_swap_fidelity(&w, p)?;
            let mut report = json!({
                "roots": roots.roots,
                "method": match roots.method {
                    RootMethod::ExactCubic => "exact-cubic",
                    RootMethod::NumericMinimization => "numeric-minimization",
                },
                "F_min": fom.value,
                "xi": json_complex(fom.xi),
                "packet": {
                    "k_peak": r.k_peak.unwrap_or(p.k_c),
                    "kappa_in": r.kappa_in,
                    "x_0": r.x_0,
                },
            });
            if roots.complex_pair_omitted {
                report["warning"] =
                    json!("2 lambda^2 < kappa^2: off-resonant root pair is complex and omitted");
            }
            emit(&r.output, &format!("{}\n", serde_json::to_string_pretty(&report)?))
        }

        Command::Entangle { flags } => {
            let r = resolve(&flags)?;
            r.file.check_format("json")?;
            let p = &r.params;
            let (points, warning) = match entangle_frequencies(p) {
                Ok(points) => (points, None),
                Err(Error::NoBalancedPoint { .. }) => (Vec::new(), Some("no balanced point")),
                Err(e) => return Err(e.into()),
            };
            let w = packet(&r, p.k_c + p.kappa)?;
            let fom = bell_probability(&w, p)?;
            let mut report = json!({
                "points": points.iter().map(|pt| json!({
                    "k": pt.k,
                    "theta": pt.theta,
                    "balance_residual": pt.balance_residual,
                })).collect::<Vec<_>>(),
                "P": fom.value,
                "xi": json_complex(fom.xi),
                "packet": {
                    "k_peak": r.k_peak.unwrap_or(p.k_c + p.kappa),
                    "kappa_in": r.kappa_in,
                    "x_0": r.x_0,
                },
            });
            if let Some(w) = warning {
                report["warning"] = json!(w);
            }
            emit(&r.output, &format!("{}\n", serde_json::to_string_pretty(&report)?))
        }

        Command::Sweep { flags, lambdas } => {
            let r = resolve_for_sweep(&flags)?;
            r.file.check_format("csv")?;
            let list = lambdas
                .or_else(|| r.file.lambdas.clone())
                .ok_or_else(|| CliError::Config("field lambdas: missing".into()))?;
            let kappa = r.params.kappa;
            let rows = sweep_swap_and_bell(&list, r.params.gamma, r.kappa_in, kappa, r.params.k_c)?;
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            emit(&r.output, std::str::from_utf8(&buf).expect("csv is ascii"))
        }

        Command::Oracle { flags, n_modes, span, dt, t_final, tolerance } => {
            let r = resolve(&flags)?;
            r.file.check_format("csv")?;
            let p = &r.params;
            let kappa_in = if flags.kappa_in.is_none() && r.file.kappa_in.is_none() {
                0.5 * p.kappa
            } else {
                r.kappa_in
            };
            let x_0 = if flags.x_0.is_none() && r.file.x_0.is_none() {
                DEFAULT_X0_WIDTHS / kappa_in
            } else {
                r.x_0
            };
            let w = lambda_qed::gaussian_spectrum(r.k_peak.unwrap_or(p.k_c), kappa_in, x_0)?;
            let n = n_modes.or(r.file.n_modes).unwrap_or(4001);
            let half_span = span.or(r.file.span).unwrap_or(40.0 * p.kappa);
            let grid = OracleGrid::centered(
                p.k_c,
                half_span,
                n,
                dt.or(r.file.dt).unwrap_or(DEFAULT_DT / p.kappa),
                t_final
                    .or(r.file.t_final)
                    .unwrap_or(2.0 * x_0 + 10.0 / p.kappa),
            )?;
            let tol = tolerance.or(r.file.tolerance).unwrap_or(1e-3);

            let samples = oracle_phase(p, &grid, &w)?;
            let phase_error = max_phase_deviation(&samples, p);
            let transfer_error = oracle_transfer_check(p, &grid, &w)?;
            let max_abs_error = phase_error.max(transfer_error);

            if let Some(path) = &r.output {
                let mut buf = Vec::new();
                write_phase_audit_csv(&samples, p, &mut buf)?;
                std::fs::write(path, buf)?;
            }
            let summary = json!({
                "max_abs_error": max_abs_error,
                "phase_error": phase_error,
                "transfer_error": transfer_error,
                "tolerance": tol,
                "n_modes": n,
                "span": half_span,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if max_abs_error > tol {
                return Err(CliError::Verification(format!(
                    "max_abs_error {max_abs_error:.3e} exceeds tolerance {tol:.3e}"
                )));
            }
            Ok(())
        }
    }
}

/// The sweep builds its own parameter set per row; a coupling is not
/// required up front, so resolution falls back to a placeholder when none
/// was given anywhere.
fn resolve_for_sweep(flags: &ParamFlags) -> Result<Resolved, CliError> {
    let mut flags = flags.clone();
    if flags.lambda.is_none() {
        let file = match &flags.config {
            Some(path) => config::FileConfig::load(path)?,
            None => config::FileConfig::default(),
        };
        if file.lambda.is_none() && file.lambda_l.is_none() && file.lambda_r.is_none() {
            flags.lambda = Some(1.0);
        }
    }
    resolve(&flags)
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(format!("json: {e}"))
    }
}
