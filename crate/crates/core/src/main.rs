use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bratio::emission::{branching_ratio_limits, enhancement_ratio};
use bratio::sweep::{
    emit_csv, monotonicity_warnings, parse_config, parse_flag_list, run_density_sweep,
    run_spectrum_command, write_csv, ConfigOverrides, ModelKind,
};
use bratio::{Error, RateSet, Result};

#[derive(Parser)]
#[command(
    name = "bratio",
    version,
    about = "Branching ratios of a collisionally pumped five-level emitter"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady-state branching ratio over a log-spaced electron density grid.
    Sweep(SweepArgs),
    /// Visible and UV spectra at one density.
    Spectrum(SpectrumArgs),
    /// Closed-form low- and high-density limits.
    Limits(LimitsArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated UV decay rates.
    #[arg(long = "gamma-uv", allow_hyphen_values = true)]
    gamma_uv: Option<String>,
    /// Comma-separated polarization overlaps.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// reduced or five_level.
    #[arg(long)]
    model: Option<ModelKind>,
}

impl ConfigArgs {
    fn overrides(&self) -> Result<ConfigOverrides> {
        Ok(ConfigOverrides {
            gamma_uv_list: self
                .gamma_uv
                .as_deref()
                .map(|v| parse_flag_list("gamma-uv", v))
                .transpose()?,
            p_list: self
                .p
                .as_deref()
                .map(|v| parse_flag_list("p", v))
                .transpose()?,
            model: self.model,
            ..ConfigOverrides::default()
        })
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: ConfigArgs,
    #[arg(long = "ne-min")]
    ne_min: Option<f64>,
    #[arg(long = "ne-max")]
    ne_max: Option<f64>,
    #[arg(long = "ne-points")]
    ne_points: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: ConfigArgs,
    /// Electron density.
    #[arg(long)]
    ne: f64,
    /// Half-width of the frequency grid; default 200 times the wider line.
    #[arg(long = "omega-max")]
    omega_max: Option<f64>,
    #[arg(long, default_value_t = 2001)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LimitsArgs {
    #[arg(long = "gamma-vis", default_value_t = 1.0)]
    gamma_vis: f64,
    /// Comma-separated UV decay rates.
    #[arg(long = "gamma-uv", default_value = "0.1,1,5")]
    gamma_uv: String,
}

fn write_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut overrides = args.common.overrides()?;
    overrides.ne_min = args.ne_min;
    overrides.ne_max = args.ne_max;
    overrides.ne_points = args.ne_points;
    overrides.output_path = args.out;
    let cfg = parse_config(args.common.config.as_deref(), &overrides)?;
    let rows = run_density_sweep(&cfg)?;
    for w in monotonicity_warnings(&rows) {
        eprintln!("warning: {w}");
    }
    match &cfg.output_path {
        Some(path) => emit_csv(&rows, path),
        None => write_csv(&rows, std::io::stdout().lock()).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn spectrum(args: SpectrumArgs) -> Result<()> {
    let cfg = parse_config(args.common.config.as_deref(), &args.common.overrides()?)?;
    let table = run_spectrum_command(&cfg, args.ne, args.omega_max, args.points)?;
    write_text(&table.to_csv(), args.out.as_deref())
}

fn limits(args: LimitsArgs) -> Result<()> {
    let mut text = String::from("gamma_vis,gamma_uv,R_limit_low,R_limit_high,enhancement\n");
    for g in parse_flag_list("gamma-uv", &args.gamma_uv)? {
        let rates = RateSet::simplified(args.gamma_vis, g, 0.0, 0.0, 0.0, 0.0)
            .map_err(|e| Error::config("gamma-uv", e.to_string()))?;
        let lim =
            branching_ratio_limits(&rates).map_err(|e| Error::config("gamma-uv", e.to_string()))?;
        let enh = enhancement_ratio(&rates)?;
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            args.gamma_vis, g, lim.low_density, lim.high_density, enh
        ));
    }
    write_text(&text, None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Limits(a) => limits(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
