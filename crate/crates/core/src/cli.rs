//! Scenario files, sweep arguments and result files.
//!
//! A scenario file is a list of `key = value [unit]` lines. `#` starts a
//! comment. Keys that are not given keep their defaults:
//!
//! ```text
//! carrier_freq   = 60 GHz
//! beamwidth_bs   = 30 deg
//! ues_per_beam   = 12
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::mobility::MobilityParams;
use crate::sim::{AggregateStats, ScenarioConfig, SimError, Sweep};
use crate::tracking::Mechanism;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: `{key}`: {message}")]
    Parse {
        line: usize,
        key: String,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("no results to write")]
    EmptyResults,
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Sim(#[from] SimError),
}

pub const CSV_HEADER: &str = "m,freq_hz,beamwidth_rad,mechanism,mean_tr,ci_tr,mean_throughput_bps,ci_throughput,mean_handoff_prob,ci_handoff";

#[derive(Clone, Copy)]
enum Kind {
    Frequency,
    Length,
    Angle,
    PowerDbm,
    DensityDbmHz,
    Decibel,
    Speed,
    Time,
    Plain,
}

fn scale(kind: Kind, unit: Option<&str>) -> Result<f64, String> {
    let u = unit.unwrap_or("");
    let factor = match (kind, u) {
        (Kind::Frequency, "" | "Hz") => 1.0,
        (Kind::Frequency, "kHz") => 1e3,
        (Kind::Frequency, "MHz") => 1e6,
        (Kind::Frequency, "GHz") => 1e9,
        (Kind::Length, "" | "m") => 1.0,
        (Kind::Length, "km") => 1e3,
        (Kind::Angle, "" | "rad") => 1.0,
        (Kind::Angle, "deg") => return Ok(f64::NAN),
        (Kind::PowerDbm, "" | "dBm") => 1.0,
        (Kind::DensityDbmHz, "" | "dBm/Hz") => 1.0,
        (Kind::Decibel, "" | "dB") => 1.0,
        (Kind::Speed, "" | "m/s") => 1.0,
        (Kind::Speed, "km/h") => 1.0 / 3.6,
        (Kind::Time, "" | "s") => 1.0,
        (Kind::Time, "ms") => 1e-3,
        (Kind::Plain, "") => 1.0,
        _ => return Err(format!("unsupported unit `{u}`")),
    };
    Ok(factor)
}

/// Splits `"28GHz"` or `"28 GHz"` into its number and optional unit.
fn split_quantity(text: &str) -> Result<(f64, Option<&str>), String> {
    let text = text.trim();
    let end = text
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || matches!(c, '.' | '+' | '-')
                || ((c == 'e' || c == 'E')
                    && text[i + 1..]
                        .starts_with(|n: char| n.is_ascii_digit() || n == '-' || n == '+')))
        })
        .map_or(text.len(), |(i, _)| i);
    let (num, unit) = text.split_at(end);
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    let unit = unit.trim();
    Ok((value, (!unit.is_empty()).then_some(unit)))
}

fn parse_quantity(text: &str, kind: Kind) -> Result<f64, String> {
    let (value, unit) = split_quantity(text)?;
    let factor = scale(kind, unit)?;
    let v = if factor.is_nan() {
        value.to_radians()
    } else {
        value * factor
    };
    if !v.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(v)
}

fn parse_count(text: &str) -> Result<u64, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("`{}` is not a non-negative integer", text.trim()))
}

fn parse_usize(text: &str) -> Result<usize, String> {
    usize::try_from(parse_count(text)?).map_err(|e| e.to_string())
}

/// Parses a scenario file on top of the default scenario.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let mut cfg = ScenarioConfig::default();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| CliError::Parse {
            line,
            key: content.to_string(),
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let err = |message: String| CliError::Parse {
            line,
            key: key.to_string(),
            message,
        };
        if !seen.insert(key.to_string()) {
            return Err(err("duplicate key".into()));
        }
        let q = |kind| parse_quantity(value, kind).map_err(err);
        match key {
            "carrier_freq" => cfg.carrier_freq = q(Kind::Frequency)?,
            "bandwidth" => cfg.bandwidth = q(Kind::Frequency)?,
            "cell_radius" => cfg.r_cell = q(Kind::Length)?,
            "ues_per_beam" => cfg.ues_per_beam = parse_usize(value).map_err(err)?,
            "beamwidth_bs" => cfg.beamwidth_bs = q(Kind::Angle)?,
            "beamwidth_ue" => cfg.beamwidth_ue = q(Kind::Angle)?,
            "tx_power" => cfg.tx_power = q(Kind::PowerDbm)?,
            "side_lobe" => cfg.side_lobe = q(Kind::Plain)?,
            "noise_density" => cfg.noise_density = q(Kind::DensityDbmHz)?,
            "shadowing_sigma" => cfg.shadowing_sigma = q(Kind::Decibel)?,
            "pathloss_exp" => cfg.pathloss_exp = q(Kind::Plain)?,
            "n_beams" => cfg.n_beams = parse_usize(value).map_err(err)?,
            "tracking_area_width" => {
                cfg.tracking_area_width = match value.trim() {
                    "auto" => None,
                    _ => Some(q(Kind::Angle)?),
                }
            }
            "speed_min" => cfg.mobility.speed_min = q(Kind::Speed)?,
            "speed_max" => cfg.mobility.speed_max = q(Kind::Speed)?,
            "step_duration" => cfg.mobility.step_duration = q(Kind::Time)?,
            "mobility_model" => match value.trim() {
                "random_direction" => {}
                other => return Err(err(format!("unknown mobility model `{other}`"))),
            },
            "normalization" => cfg.normalization = value.parse().map_err(err)?,
            "trials" => cfg.n_trials = parse_usize(value).map_err(err)?,
            "seed" => cfg.seed = parse_count(value).map_err(err)?,
            _ => return Err(err("unknown key".into())),
        }
    }
    cfg.validate()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(cfg)
}

/// Renders `cfg` in the scenario file format. Values are written in SI base
/// units with shortest round-trip formatting, so parsing the output gives
/// back an identical scenario.
pub fn config_text(cfg: &ScenarioConfig) -> String {
    let MobilityParams {
        speed_min,
        speed_max,
        step_duration,
        ..
    } = cfg.mobility;
    let area = match cfg.tracking_area_width {
        Some(w) => format!("{w} rad"),
        None => "auto".to_string(),
    };
    let mut s = String::new();
    let mut put = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    put("carrier_freq", format!("{} Hz", cfg.carrier_freq));
    put("bandwidth", format!("{} Hz", cfg.bandwidth));
    put("cell_radius", format!("{} m", cfg.r_cell));
    put("ues_per_beam", cfg.ues_per_beam.to_string());
    put("beamwidth_bs", format!("{} rad", cfg.beamwidth_bs));
    put("beamwidth_ue", format!("{} rad", cfg.beamwidth_ue));
    put("tx_power", format!("{} dBm", cfg.tx_power));
    put("side_lobe", format!("{}", cfg.side_lobe));
    put("noise_density", format!("{} dBm/Hz", cfg.noise_density));
    put("shadowing_sigma", format!("{} dB", cfg.shadowing_sigma));
    put("pathloss_exp", format!("{}", cfg.pathloss_exp));
    put("n_beams", cfg.n_beams.to_string());
    put("tracking_area_width", area);
    put("mobility_model", "random_direction".to_string());
    put("speed_min", format!("{speed_min} m/s"));
    put("speed_max", format!("{speed_max} m/s"));
    put("step_duration", format!("{step_duration} s"));
    put("normalization", cfg.normalization.label().to_string());
    put("trials", cfg.n_trials.to_string());
    put("seed", cfg.seed.to_string());
    s
}

/// Parses `lo..hi` (inclusive), `lo..hi:step`, or a comma list.
pub fn parse_m_range(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = |m: String| CliError::Argument(format!("--sweep-m `{text}`: {m}"));
    let values = if let Some((lo, rest)) = text.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((h, s)) => (h, parse_usize(s).map_err(bad)?),
            None => (rest, 1),
        };
        let (lo, hi) = (parse_usize(lo).map_err(bad)?, parse_usize(hi).map_err(bad)?);
        if step == 0 || lo > hi {
            return Err(bad("expected lo <= hi and step >= 1".into()));
        }
        (lo..=hi).step_by(step).collect()
    } else {
        text.split(',')
            .map(|t| parse_usize(t).map_err(bad))
            .collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() || values.contains(&0) {
        return Err(bad("populations must be >= 1".into()));
    }
    Ok(values)
}

/// Parses comma-separated frequencies; bare numbers are Hz.
pub fn parse_freqs(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            parse_quantity(t, Kind::Frequency)
                .map_err(|m| CliError::Argument(format!("--freqs: {m}")))
        })
        .collect()
}

/// Parses comma-separated beamwidths; bare numbers are radians.
pub fn parse_widths(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            parse_quantity(t, Kind::Angle).map_err(|m| CliError::Argument(format!("--widths: {m}")))
        })
        .collect()
}

pub fn parse_mechanisms(text: &str) -> Result<Vec<Mechanism>, CliError> {
    let mut out: Vec<Mechanism> = text
        .split(',')
        .map(|t| t.parse().map_err(CliError::Argument))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Provenance written next to every results file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub config_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub config: ScenarioConfig,
    pub sweep: Sweep,
    pub mechanisms: Vec<Mechanism>,
    pub version: String,
}

impl RunManifest {
    pub fn new(config: ScenarioConfig, sweep: Sweep, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            config_path: None,
            out_dir: out_dir.into(),
            config,
            sweep,
            mechanisms: Mechanism::ALL.to_vec(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.config.seed
    }

    pub fn render(&self) -> String {
        let join = |xs: Vec<String>| xs.join(",");
        let mut s = String::new();
        let _ = writeln!(s, "# beamtrack {}", self.version);
        let _ = writeln!(
            s,
            "# config_path = {}",
            self.config_path
                .as_deref()
                .map_or("<defaults>".to_string(), |p| p.display().to_string())
        );
        let _ = writeln!(s, "# master_seed = {}", self.seed());
        let _ = writeln!(
            s,
            "# sweep_m = {}",
            join(self.sweep.m_values.iter().map(|m| m.to_string()).collect())
        );
        let _ = writeln!(
            s,
            "# sweep_freq_hz = {}",
            join(self.sweep.freqs.iter().map(|f| f.to_string()).collect())
        );
        let _ = writeln!(
            s,
            "# sweep_beamwidth_rad = {}",
            join(self.sweep.widths.iter().map(|w| w.to_string()).collect())
        );
        let _ = writeln!(
            s,
            "# mechanisms = {}",
            join(
                self.mechanisms
                    .iter()
                    .map(|m| m.label().to_string())
                    .collect()
            )
        );
        let _ = writeln!(s, "# all_covered_handoff_floor = 1/(2m)");
        s.push_str(&config_text(&self.config));
        s
    }
}

/// Formats sweep statistics as CSV, one row per point and selected mechanism.
pub fn results_csv(stats: &[AggregateStats], mechanisms: &[Mechanism]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for point in stats {
        for &mech in mechanisms {
            let m = point.get(mech);
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                point.m,
                point.freq_hz,
                point.beamwidth_rad,
                mech.label(),
                m.mean_tr,
                m.ci_tr,
                m.mean_throughput,
                m.ci_throughput,
                m.mean_handoff,
                m.ci_handoff
            );
        }
    }
    s
}

/// Writes `results.csv` and `manifest.txt` into the manifest's output
/// directory and returns their paths.
pub fn emit_results(
    stats: &[AggregateStats],
    manifest: &RunManifest,
) -> Result<(PathBuf, PathBuf), CliError> {
    if stats.is_empty() || manifest.mechanisms.is_empty() {
        return Err(CliError::EmptyResults);
    }
    fs::create_dir_all(&manifest.out_dir)?;
    let results = manifest.out_dir.join("results.csv");
    let manifest_path = manifest.out_dir.join("manifest.txt");
    fs::write(&results, results_csv(stats, &manifest.mechanisms))?;
    fs::write(&manifest_path, manifest.render())?;
    Ok((results, manifest_path))
}

pub fn read_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    parse_config(&fs::read_to_string(path)?)
}
