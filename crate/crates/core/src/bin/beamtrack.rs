use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use beamtrack::cli::{
    emit_results, parse_freqs, parse_m_range, parse_mechanisms, parse_widths, read_config,
    CliError, RunManifest,
};
use beamtrack::sim::{self, ScenarioConfig, Sweep};

/// Monte Carlo comparison of mmWave beam tracking mechanisms.
#[derive(Debug, Parser)]
#[command(name = "beamtrack", version)]
struct Args {
    /// Scenario file (`key = value [unit]` lines); defaults apply otherwise.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for results.csv and manifest.txt.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Master seed, overrides the scenario file.
    #[arg(long)]
    seed: Option<u64>,
    /// Drops per sweep point, overrides the scenario file.
    #[arg(long)]
    trials: Option<usize>,
    /// UEs per beam: `lo..hi`, `lo..hi:step` or `a,b,c`.
    #[arg(long = "sweep-m")]
    sweep_m: Option<String>,
    /// Carrier frequencies, e.g. `28GHz,60GHz`.
    #[arg(long)]
    freqs: Option<String>,
    /// BS beamwidths, e.g. `10deg,30deg`.
    #[arg(long)]
    widths: Option<String>,
    /// Mechanisms to report, e.g. `TRBT,MTBT`.
    #[arg(long, default_value = "TRBT,WoBT,MNBT,MTBT")]
    mechanisms: String,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

fn run(args: Args) -> Result<(), CliError> {
    let mut cfg = match &args.config {
        Some(path) => read_config(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.n_trials = trials;
    }
    cfg.validate()
        .map_err(|e| CliError::Validation(e.to_string()))?;

    let mut sweep = Sweep::single(&cfg);
    if let Some(m) = &args.sweep_m {
        sweep.m_values = parse_m_range(m)?;
    }
    if let Some(f) = &args.freqs {
        sweep.freqs = parse_freqs(f)?;
    }
    if let Some(w) = &args.widths {
        sweep.widths = parse_widths(w)?;
    }
    let mechanisms = parse_mechanisms(&args.mechanisms)?;

    let stats = match args.workers {
        Some(0) => return Err(CliError::Argument("--workers must be >= 1".into())),
        #[cfg(feature = "parallel")]
        Some(n) => sim::run_sweep_with_workers(&cfg, &sweep, n)?,
        // Built without rayon everything runs on this thread; the output is
        // the same either way.
        #[cfg(not(feature = "parallel"))]
        Some(_) => sim::run_sweep(&cfg, &sweep)?,
        None => sim::run_sweep(&cfg, &sweep)?,
    };

    let mut manifest = RunManifest::new(cfg, sweep, &args.out);
    manifest.config_path = args.config.clone();
    manifest.mechanisms = mechanisms;
    let (results, _) = emit_results(&stats, &manifest)?;
    eprintln!(
        "wrote {} sweep points x {} mechanisms to {}",
        stats.len(),
        manifest.mechanisms.len(),
        results.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("beamtrack: {e}");
            ExitCode::FAILURE
        }
    }
}
