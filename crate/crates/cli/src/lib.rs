//! Argument parsing and dispatch behind the `fconv` binary.
//!
//! Every value can come from a flag, from a TOML `--config` file using the
//! flag names in snake_case, or from the built-in default, in that order
//! of precedence. The cutoff additionally falls back to
//! `FCONV_DEFAULT_CUTOFF` before the built-in choice.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use fconv_core::experiments::{
    linear_spaced, log_spaced, run_depletion_convergence, run_fringe, run_linearity,
    run_noise_comparison, run_wdm, DepletionConfig, FringeConfig, LinearityConfig, NoiseConfig,
    WdmChannel, WdmSpec,
};
use fconv_core::scan::{write_csv, ScanResult};
use fconv_core::{Backend, C64};

pub const CUTOFF_ENV: &str = "FCONV_DEFAULT_CUTOFF";

/// Largest tolerated difference between the two backends under `--backend both`.
pub const AGREEMENT_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendChoice {
    Fock,
    Gaussian,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    Linearity(LinearityConfig),
    Fringe(FringeConfig),
    Noise(NoiseConfig),
    Depletion(DepletionConfig),
    Wdm(WdmSpec),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Linearity(_) => "linearity",
            Experiment::Fringe(_) => "fringe",
            Experiment::Noise(_) => "noise",
            Experiment::Depletion(_) => "depletion",
            Experiment::Wdm(_) => "wdm",
        }
    }

    pub fn run(&self, backend: Backend) -> fconv_core::Result<ScanResult> {
        match self {
            Experiment::Linearity(c) => run_linearity(c, backend),
            Experiment::Fringe(c) => run_fringe(c, backend),
            Experiment::Noise(c) => run_noise_comparison(c, backend),
            Experiment::Depletion(c) => run_depletion_convergence(c),
            Experiment::Wdm(s) => run_wdm(s).map(|r| r.scan),
        }
    }

    fn fock_only(&self) -> Option<fconv_core::Error> {
        match self {
            Experiment::Depletion(_) => {
                Some(fconv_core::Error::NonGaussianDevice("trilinear".into()))
            }
            Experiment::Wdm(_) => Some(fconv_core::Error::InvalidScan(
                "the single-photon input of wdm has no Gaussian representation".into(),
            )),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub backend: BackendChoice,
    /// Explicit Fock cutoff; each experiment picks its own when `None`.
    pub cutoff: Option<usize>,
    pub output_path: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed command line; carries clap's own rendering and exit code.
    Clap(clap::Error),
    Usage(String),
    Run(fconv_core::Error),
    Disagreement {
        max_diff: Option<f64>,
        paths: Vec<PathBuf>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Clap(e) => e.exit_code() as u8,
            CliError::Usage(_) => 2,
            CliError::Run(_) => 1,
            CliError::Disagreement { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Run(e) => write!(f, "{e}"),
            CliError::Disagreement { max_diff, paths } => {
                let files: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
                match max_diff {
                    Some(d) => write!(
                        f,
                        "backends disagree by {d:e} (tolerance {AGREEMENT_TOLERANCE:e}): {}",
                        files.join(", ")
                    ),
                    None => write!(f, "backend results differ in shape: {}", files.join(", ")),
                }
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<fconv_core::Error> for CliError {
    fn from(e: fconv_core::Error) -> Self {
        CliError::Run(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "fconv",
    version,
    about = "Frequency-conversion scans written as CSV",
    after_help = "Environment:\n  FCONV_DEFAULT_CUTOFF  Fock cutoff used when neither --cutoff nor the config file sets one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Idler photons against pump transmission (log-spaced from 1 down to --t-min)
    Linearity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: LinearityParams,
    },
    /// Output-port photons against pump phase after interfering the idler with a reference
    Fringe {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: FringeParams,
    },
    /// Idler quadrature noise of the converter against the amplifier
    Noise {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: NoiseParams,
    },
    /// Fidelity of the trilinear coupler to its linearized converter (Fock only)
    Depletion {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: DepletionParams,
    },
    /// Single-photon split over a cascade of converters (Fock only)
    Wdm {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: WdmParams,
    },
}

const COMMON_KEYS: [&str; 4] = ["backend", "cutoff", "output", "points"];

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
struct Common {
    /// Simulation backend; `both` runs each and checks agreement [default: fock]
    #[arg(long, value_enum)]
    backend: Option<BackendChoice>,
    /// Fock cutoff per mode (the signal mode for depletion; unused by wdm)
    /// [default: $FCONV_DEFAULT_CUTOFF, else derived from the field amplitudes]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cutoff: Option<u64>,
    /// Output CSV path [default: <experiment>.csv]
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Number of scan points [default: linearity 20, fringe 33, noise 10]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    points: Option<u64>,
    /// TOML file supplying defaults for any flag, keys in snake_case
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearityParams {
    /// Converter angle in radians [default: asin(0.1)]
    #[arg(long, conflicts_with = "theta_eff")]
    theta: Option<f64>,
    /// Conversion efficiency sin^2(theta), an alternative to --theta
    #[arg(long)]
    theta_eff: Option<f64>,
    /// Real pump amplitude [default: 1]
    #[arg(long)]
    alpha_pump: Option<f64>,
    /// Smallest transmission of the scan [default: 0.01]
    #[arg(long)]
    t_min: Option<f64>,
    /// Constant detector background added to the idler [default: 0]
    #[arg(long)]
    noise_floor: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
struct FringeParams {
    /// Converter angle in radians [default: pi/6]
    #[arg(long, conflicts_with = "theta_eff")]
    theta: Option<f64>,
    /// Conversion efficiency sin^2(theta), an alternative to --theta
    #[arg(long)]
    theta_eff: Option<f64>,
    /// Real pump amplitude [default: 1]
    #[arg(long)]
    alpha_pump: Option<f64>,
    /// Real reference amplitude [default: 0.25]
    #[arg(long)]
    alpha_ref: Option<f64>,
    /// Converter phase in radians [default: 0]
    #[arg(long)]
    phi_s: Option<f64>,
    /// Pump-phase range in units of 2 pi [default: 2]
    #[arg(long)]
    periods: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
struct NoiseParams {
    /// Largest coupling strength of the scan, starting from 0 [default: pi/2]
    #[arg(long)]
    max_strength: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
struct DepletionParams {
    /// Comma-separated signal amplitudes [default: 2,3,4,5]
    #[arg(long, value_delimiter = ',')]
    alpha_s: Option<Vec<f64>>,
    /// Linearized converter angle in radians [default: pi/2]
    #[arg(long)]
    theta: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
struct WdmParams {
    /// Pump frequency [default: 3]
    #[arg(long)]
    pump_frequency: Option<f64>,
    /// Channel as signal_frequency:theta[:phi], repeatable
    /// [default: 1:pi/4 and 1.5:pi/2, an even split]
    #[arg(long = "channel")]
    #[serde(rename = "channels")]
    channel: Option<Vec<String>>,
}

/// Parses `argv` (program name first) with the cutoff fallback read from
/// the process environment.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var(CUTOFF_ENV).ok().as_deref())
}

/// As [`parse_args`] with an explicit value standing in for `FCONV_DEFAULT_CUTOFF`.
pub fn parse_args_with_env<I, T>(argv: I, env_cutoff: Option<&str>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    match cli.command {
        Command::Linearity { common, params } => build(common, params, env_cutoff, linearity),
        Command::Fringe { common, params } => build(common, params, env_cutoff, fringe),
        Command::Noise { common, params } => build(common, params, env_cutoff, noise),
        Command::Depletion { common, params } => build(common, params, env_cutoff, depletion),
        Command::Wdm { common, params } => build(common, params, env_cutoff, wdm),
    }
}

trait Merge {
    /// Fills unset fields of `self` from `file`.
    fn merge(self, file: Self) -> Self;
}

fn build<P: Merge + Default + DeserializeOwned>(
    common: Common,
    params: P,
    env_cutoff: Option<&str>,
    make: fn(P, Option<usize>, Option<usize>) -> Result<Experiment, CliError>,
) -> Result<RunConfig, CliError> {
    let (file_common, file_params) = match &common.config {
        Some(path) => read_config::<P>(path)?,
        None => (Common::default(), P::default()),
    };
    let params = params.merge(file_params);
    let env_cutoff = match env_cutoff {
        Some(v) => Some(
            v.trim()
                .parse::<u64>()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| usage(format!("{CUTOFF_ENV}={v:?} is not a positive integer")))?,
        ),
        None => None,
    };
    let cutoff = common.cutoff.or(file_common.cutoff).or(env_cutoff);
    if cutoff == Some(0) {
        return Err(usage("cutoff must be at least 1"));
    }
    let cutoff = cutoff.map(|c| c as usize);
    let points = common.points.or(file_common.points).map(|p| p as usize);
    if points == Some(0) {
        return Err(usage("points must be at least 1"));
    }
    let backend = common
        .backend
        .or(file_common.backend)
        .unwrap_or(BackendChoice::Fock);

    let experiment = make(params, cutoff, points)?;
    if backend != BackendChoice::Fock {
        if let Some(e) = experiment.fock_only() {
            return Err(usage(format!(
                "{} cannot use --backend {}: {e}",
                experiment.name(),
                if backend == BackendChoice::Both {
                    "both"
                } else {
                    "gaussian"
                }
            )));
        }
    }
    let output_path = common
        .output
        .or(file_common.output)
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", experiment.name())));
    Ok(RunConfig {
        experiment,
        backend,
        cutoff,
        output_path,
    })
}

fn read_config<P: DeserializeOwned>(path: &Path) -> Result<(Common, P), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config `{}`: {e}", path.display())))?;
    let bad = |e: toml::de::Error| usage(format!("config `{}`: {e}", path.display()));
    let table: toml::Table = toml::from_str(&text).map_err(bad)?;
    let (common, rest): (toml::Table, toml::Table) = table
        .into_iter()
        .partition(|(k, _)| COMMON_KEYS.contains(&k.as_str()));
    let common = Common::deserialize(toml::Value::Table(common))
        .map_err(|e| usage(format!("config `{}`: {e}", path.display())))?;
    let params = P::deserialize(toml::Value::Table(rest))
        .map_err(|e| usage(format!("config `{}`: {e}", path.display())))?;
    Ok((common, params))
}

/// Converter angle from either `theta` or `theta_eff = sin^2(theta)`.
fn angle(theta: Option<f64>, theta_eff: Option<f64>, default: f64) -> Result<f64, CliError> {
    match (theta, theta_eff) {
        (Some(_), Some(_)) => Err(usage("theta and theta_eff are mutually exclusive")),
        (Some(t), None) => Ok(t),
        (None, Some(e)) if (0.0..=1.0).contains(&e) => Ok(e.sqrt().asin()),
        (None, Some(e)) => Err(usage(format!("--theta-eff {e} is outside [0, 1]"))),
        (None, None) => Ok(default),
    }
}

fn reject_points(points: Option<usize>, name: &str, instead: &str) -> Result<(), CliError> {
    match points {
        Some(_) => Err(usage(format!(
            "--points does not apply to {name}; use {instead}"
        ))),
        None => Ok(()),
    }
}

impl Merge for LinearityParams {
    fn merge(self, file: Self) -> Self {
        let angle_from_flags = self.theta.is_some() || self.theta_eff.is_some();
        Self {
            theta: if angle_from_flags {
                self.theta
            } else {
                file.theta
            },
            theta_eff: if angle_from_flags {
                self.theta_eff
            } else {
                file.theta_eff
            },
            alpha_pump: self.alpha_pump.or(file.alpha_pump),
            t_min: self.t_min.or(file.t_min),
            noise_floor: self.noise_floor.or(file.noise_floor),
        }
    }
}

fn linearity(
    p: LinearityParams,
    cutoff: Option<usize>,
    points: Option<usize>,
) -> Result<Experiment, CliError> {
    let base = LinearityConfig::default();
    let t_min = p.t_min.unwrap_or(0.01);
    if !(t_min > 0.0 && t_min <= 1.0) {
        return Err(usage(format!("--t-min {t_min} is outside (0, 1]")));
    }
    Ok(Experiment::Linearity(LinearityConfig {
        transmissions: log_spaced(1.0, t_min, points.unwrap_or(20)),
        theta: angle(p.theta, p.theta_eff, base.theta)?,
        alpha_pump: p.alpha_pump.map_or(base.alpha_pump, |a| C64::new(a, 0.0)),
        noise_floor: p.noise_floor.unwrap_or(base.noise_floor),
        cutoff,
    }))
}

impl Merge for FringeParams {
    fn merge(self, file: Self) -> Self {
        let angle_from_flags = self.theta.is_some() || self.theta_eff.is_some();
        Self {
            theta: if angle_from_flags {
                self.theta
            } else {
                file.theta
            },
            theta_eff: if angle_from_flags {
                self.theta_eff
            } else {
                file.theta_eff
            },
            alpha_pump: self.alpha_pump.or(file.alpha_pump),
            alpha_ref: self.alpha_ref.or(file.alpha_ref),
            phi_s: self.phi_s.or(file.phi_s),
            periods: self.periods.or(file.periods),
        }
    }
}

fn fringe(
    p: FringeParams,
    cutoff: Option<usize>,
    points: Option<usize>,
) -> Result<Experiment, CliError> {
    let periods = p.periods.unwrap_or(2.0);
    if periods.is_nan() || periods <= 0.0 {
        return Err(usage("--periods must be > 0"));
    }
    Ok(Experiment::Fringe(FringeConfig {
        phi_p_points: linear_spaced(0.0, 2.0 * PI * periods, points.unwrap_or(33)),
        alpha_pump: C64::new(p.alpha_pump.unwrap_or(1.0), 0.0),
        alpha_ref: C64::new(p.alpha_ref.unwrap_or(0.25), 0.0),
        theta: angle(p.theta, p.theta_eff, FRAC_PI_6)?,
        phi_s: p.phi_s.unwrap_or(0.0),
        cutoff,
    }))
}

impl Merge for NoiseParams {
    fn merge(self, file: Self) -> Self {
        Self {
            max_strength: self.max_strength.or(file.max_strength),
        }
    }
}

fn noise(
    p: NoiseParams,
    cutoff: Option<usize>,
    points: Option<usize>,
) -> Result<Experiment, CliError> {
    Ok(Experiment::Noise(NoiseConfig {
        strengths: linear_spaced(
            0.0,
            p.max_strength.unwrap_or(FRAC_PI_2),
            points.unwrap_or(10),
        ),
        cutoff,
    }))
}

impl Merge for DepletionParams {
    fn merge(self, file: Self) -> Self {
        Self {
            alpha_s: self.alpha_s.or(file.alpha_s),
            theta: self.theta.or(file.theta),
        }
    }
}

fn depletion(
    p: DepletionParams,
    cutoff: Option<usize>,
    points: Option<usize>,
) -> Result<Experiment, CliError> {
    reject_points(points, "depletion", "--alpha-s")?;
    let base = DepletionConfig::single_photon();
    Ok(Experiment::Depletion(DepletionConfig {
        alpha_s_points: p.alpha_s.unwrap_or(base.alpha_s_points.clone()),
        theta: p.theta.unwrap_or(base.theta),
        signal_cutoff: cutoff,
        ..base
    }))
}

impl Merge for WdmParams {
    fn merge(self, file: Self) -> Self {
        Self {
            pump_frequency: self.pump_frequency.or(file.pump_frequency),
            channel: self.channel.or(file.channel),
        }
    }
}

fn parse_channel(s: &str) -> Result<WdmChannel, CliError> {
    let fields: Result<Vec<f64>, _> = s.split(':').map(|f| f.trim().parse::<f64>()).collect();
    match fields.as_deref() {
        Ok([f, theta]) => Ok(WdmChannel {
            signal_frequency: *f,
            theta: *theta,
            phi: 0.0,
        }),
        Ok([f, theta, phi]) => Ok(WdmChannel {
            signal_frequency: *f,
            theta: *theta,
            phi: *phi,
        }),
        _ => Err(usage(format!(
            "--channel {s:?}: expected signal_frequency:theta[:phi]"
        ))),
    }
}

fn wdm(
    p: WdmParams,
    _cutoff: Option<usize>,
    points: Option<usize>,
) -> Result<Experiment, CliError> {
    reject_points(points, "wdm", "--channel")?;
    let channels = match p.channel {
        Some(list) => list
            .iter()
            .map(|s| parse_channel(s))
            .collect::<Result<_, _>>()?,
        None => vec![
            WdmChannel {
                signal_frequency: 1.0,
                theta: FRAC_PI_4,
                phi: 0.0,
            },
            WdmChannel {
                signal_frequency: 1.5,
                theta: FRAC_PI_2,
                phi: 0.0,
            },
        ],
    };
    Ok(Experiment::Wdm(WdmSpec {
        pump_frequency: p.pump_frequency.unwrap_or(3.0),
        channels,
    }))
}

/// `out.csv` -> `out.fock.csv`.
pub fn backend_path(path: &Path, backend: Backend) -> PathBuf {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = name.strip_suffix(".csv").unwrap_or(&name);
    path.with_file_name(format!("{stem}.{}.csv", backend.name()))
}

/// Writes through a sibling temporary file so `path` only ever holds a
/// complete result.
fn write_complete(result: &ScanResult, path: &Path) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    write_csv(result, &tmp)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::Run(fconv_core::Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    })
}

/// Runs the scan and writes its CSV; returns the paths written.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    match cfg.backend {
        BackendChoice::Fock | BackendChoice::Gaussian => {
            let backend = if cfg.backend == BackendChoice::Fock {
                Backend::Fock
            } else {
                Backend::Gaussian
            };
            let result = cfg.experiment.run(backend)?;
            write_complete(&result, &cfg.output_path)?;
            Ok(vec![cfg.output_path.clone()])
        }
        BackendChoice::Both => {
            let fock = cfg.experiment.run(Backend::Fock)?;
            let gaussian = cfg.experiment.run(Backend::Gaussian)?;
            let paths = vec![
                backend_path(&cfg.output_path, Backend::Fock),
                backend_path(&cfg.output_path, Backend::Gaussian),
            ];
            write_complete(&fock, &paths[0])?;
            write_complete(&gaussian, &paths[1])?;
            match fock.max_abs_diff(&gaussian) {
                Some(d) if d <= AGREEMENT_TOLERANCE => Ok(paths),
                max_diff => Err(CliError::Disagreement { max_diff, paths }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        parse_args_with_env(std::iter::once("fconv").chain(args.iter().copied()), None)
    }

    #[test]
    fn theta_eff_maps_to_angle() {
        let cfg = parse(&[
            "linearity",
            "--theta-eff",
            "0.01",
            "--points",
            "20",
            "-o",
            "out.csv",
        ])
        .unwrap();
        let Experiment::Linearity(lin) = &cfg.experiment else {
            panic!("wrong experiment")
        };
        assert!((lin.theta - 0.1f64.asin()).abs() < 1e-15);
        assert_eq!(lin.transmissions.len(), 20);
        assert_eq!(cfg.output_path, PathBuf::from("out.csv"));
        assert_eq!(cfg.backend, BackendChoice::Fock);
    }

    #[test]
    fn missing_subcommand_is_usage_error() {
        let err = parse(&[]).unwrap_err();
        assert!(matches!(err, CliError::Clap(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_flag_is_named() {
        let err = parse(&["noise", "--bogus", "1"]).unwrap_err();
        assert!(err.to_string().contains("--bogus"));
        assert_ne!(err.exit_code(), 0);
    }

    #[test]
    fn gaussian_depletion_is_rejected() {
        let err = parse(&["depletion", "--backend", "gaussian"]).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("not Gaussian") && msg.contains("trilinear"),
            "{msg}"
        );
        assert!(parse(&["wdm", "--backend", "both"]).is_err());
    }

    #[test]
    fn env_cutoff_is_the_last_fallback() {
        let argv = ["fconv", "fringe"];
        assert_eq!(
            parse_args_with_env(argv, Some("9")).unwrap().cutoff,
            Some(9)
        );
        let argv = ["fconv", "fringe", "--cutoff", "12"];
        assert_eq!(
            parse_args_with_env(argv, Some("9")).unwrap().cutoff,
            Some(12)
        );
        assert!(parse_args_with_env(["fconv", "fringe"], Some("zero")).is_err());
        assert_eq!(parse(&["fringe"]).unwrap().cutoff, None);
    }

    #[test]
    fn both_paths_are_suffixed() {
        assert_eq!(
            backend_path(Path::new("dir/out.csv"), Backend::Fock),
            PathBuf::from("dir/out.fock.csv")
        );
        assert_eq!(
            backend_path(Path::new("out"), Backend::Gaussian),
            PathBuf::from("out.gaussian.csv")
        );
    }

    #[test]
    fn channels_parse() {
        let cfg = parse(&["wdm", "--channel", "1:0.5", "--channel", "2:0.25:1"]).unwrap();
        let Experiment::Wdm(spec) = cfg.experiment else {
            panic!("wrong experiment")
        };
        assert_eq!(spec.channels[1].phi, 1.0);
        assert!(parse(&["wdm", "--channel", "1"]).is_err());
        assert!(parse(&["wdm", "--points", "3"]).is_err());
    }
}
