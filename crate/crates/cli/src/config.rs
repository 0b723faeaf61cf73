//! Config file schema and flag/config/default resolution.
//!
//! All rates are in units of kappa unless an explicit `kappa` key (or flag)
//! supplies the unit. Flags win over config values, which win over defaults.

use std::path::PathBuf;

use serde::Deserialize;

use lambda_qed::{SystemParams, Wavepacket};

use crate::CliError;

/// JSON config file; keys match the parameter names.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub kappa: Option<f64>,
    pub k_c: Option<f64>,
    pub delta_e: Option<f64>,
    pub gamma: Option<f64>,
    /// Swap-configuration shorthand: lambda_L = lambda_R = lambda with
    /// theta_L = pi, theta_R = 0.
    pub lambda: Option<f64>,
    #[serde(rename = "lambda_L")]
    pub lambda_l: Option<f64>,
    #[serde(rename = "lambda_R")]
    pub lambda_r: Option<f64>,
    #[serde(rename = "theta_L")]
    pub theta_l: Option<f64>,
    #[serde(rename = "theta_R")]
    pub theta_r: Option<f64>,

    pub kappa_in: Option<f64>,
    pub x_0: Option<f64>,
    pub k_peak: Option<f64>,
    /// Sampled spectral amplitudes as `k,re_f,im_f` rows; overrides the
    /// Gaussian packet fields.
    pub packet_csv: Option<PathBuf>,

    // phase command
    pub k_min: Option<f64>,
    pub k_max: Option<f64>,
    pub n_points: Option<usize>,

    // sweep command
    pub lambdas: Option<Vec<f64>>,

    // oracle command
    pub n_modes: Option<usize>,
    pub span: Option<f64>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    pub tolerance: Option<f64>,

    pub output: Option<PathBuf>,
    /// csv | json; commands with a fixed contract reject a conflicting value.
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }

    pub fn check_format(&self, expected: &str) -> Result<(), CliError> {
        if let Some(f) = &self.format {
            match f.as_str() {
                "csv" | "json" => {
                    if f != expected {
                        return Err(CliError::Config(format!(
                            "field format: this command emits {expected}, not {f}"
                        )));
                    }
                }
                other => {
                    return Err(CliError::Config(format!(
                        "field format: expected \"csv\" or \"json\", got \"{other}\""
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Parameter flags shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct ParamFlags {
    /// JSON config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cavity leakage rate (sets the unit; default 1)
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Quasi-mode resonance frequency
    #[arg(long)]
    pub k_c: Option<f64>,
    /// Atom-cavity detuning
    #[arg(long)]
    pub delta_e: Option<f64>,
    /// Spontaneous decay rate into side modes
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Swap-configuration coupling strength (lambda_L = lambda_R)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Spectral width of the photon packet
    #[arg(long = "kin")]
    pub kappa_in: Option<f64>,
    /// Initial packet distance from the cavity
    #[arg(long = "x0")]
    pub x_0: Option<f64>,
    /// Packet peak frequency (defaults per command)
    #[arg(long)]
    pub k_peak: Option<f64>,
    /// Sampled packet as k,re_f,im_f CSV (overrides the Gaussian fields)
    #[arg(long)]
    pub packet_csv: Option<PathBuf>,
    /// Output path (defaults to stdout)
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Everything resolved: parameters plus raw config for command extras.
pub struct Resolved {
    pub params: SystemParams,
    pub kappa_in: f64,
    pub x_0: f64,
    pub k_peak: Option<f64>,
    pub packet_csv: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub file: FileConfig,
}

pub fn resolve(flags: &ParamFlags) -> Result<Resolved, CliError> {
    let file = match &flags.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };

    let kappa = flags.kappa.or(file.kappa).unwrap_or(1.0);
    let k_c = flags.k_c.or(file.k_c).unwrap_or(0.0);
    let delta_e = flags.delta_e.or(file.delta_e).unwrap_or(0.0);
    let gamma = flags.gamma.or(file.gamma).unwrap_or(0.0);

    let shorthand = flags.lambda.or(file.lambda);
    let full = (file.lambda_l, file.lambda_r);
    let params = match (shorthand, full) {
        (Some(_), (Some(_), _)) | (Some(_), (_, Some(_))) => {
            return Err(CliError::Config(
                "field lambda: give either lambda or lambda_L/lambda_R, not both".into(),
            ))
        }
        (Some(lambda), _) => SystemParams {
            k_c,
            delta_e,
            kappa,
            gamma,
            lambda_l: lambda,
            lambda_r: lambda,
            theta_l: std::f64::consts::PI,
            theta_r: 0.0,
        },
        (None, (Some(l), Some(r))) => SystemParams {
            k_c,
            delta_e,
            kappa,
            gamma,
            lambda_l: l,
            lambda_r: r,
            theta_l: file.theta_l.unwrap_or(std::f64::consts::PI),
            theta_r: file.theta_r.unwrap_or(0.0),
        },
        (None, (None, None)) => {
            return Err(CliError::Config(
                "field lambda: missing (set lambda, or lambda_L and lambda_R)".into(),
            ))
        }
        (None, _) => {
            return Err(CliError::Config(
                "field lambda_L/lambda_R: both are required in full form".into(),
            ))
        }
    };
    let params = params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let kappa_in = flags.kappa_in.or(file.kappa_in).unwrap_or(0.1 * kappa);
    if !(kappa_in > 0.0) {
        return Err(CliError::Config(format!(
            "field kappa_in: must be positive (got {kappa_in})"
        )));
    }
    let x_0 = flags.x_0.or(file.x_0).unwrap_or(0.0);

    Ok(Resolved {
        params,
        kappa_in,
        x_0,
        k_peak: flags.k_peak.or(file.k_peak),
        packet_csv: flags.packet_csv.clone().or(file.packet_csv.clone()),
        output: flags.output.clone().or(file.output.clone()),
        file,
    })
}

/// Packet for figure-of-merit commands: a sampled CSV when configured,
/// otherwise a Gaussian at the command-specific default peak.
pub fn packet(r: &Resolved, default_peak: f64) -> Result<Wavepacket, CliError> {
    if let Some(path) = &r.packet_csv {
        let reader = std::io::BufReader::new(std::fs::File::open(path).map_err(|e| {
            CliError::Config(format!("cannot read packet {}: {e}", path.display()))
        })?);
        let w = lambda_qed::read_packet_csv(reader).map_err(|e| CliError::Config(e.to_string()))?;
        let norm = lambda_qed::packet_norm(&w).map_err(|e| CliError::Config(e.to_string()))?;
        if (norm - 1.0).abs() > 1e-6 {
            return Err(CliError::Config(format!(
                "field packet_csv: packet norm^2 = {norm} is not 1 (tolerance 1e-6)"
            )));
        }
        return Ok(w);
    }
    lambda_qed::gaussian_spectrum(r.k_peak.unwrap_or(default_peak), r.kappa_in, r.x_0)
        .map_err(|e| CliError::Config(e.to_string()))
}
