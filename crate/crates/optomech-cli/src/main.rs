use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use optomech::params::SystemConfig;
use optomech_cli::output::{emit_csv, gnuplot_script};
use optomech_cli::presets;
use optomech_cli::runner::{
    self, with_threads, SweepAxis, SweepSpec, COOLING_HEADER, COUPLING_HEADER, RESPONSE_HEADER,
};
use optomech_cli::validate;

/// Membrane-cavity cooling calculator: steady states, mechanical response,
/// quadrature variances, and effective occupancy, emitted as CSV.
#[derive(Parser)]
#[command(name = "optomech", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full cooling report at a single detuning.
    Report(ReportArgs),
    /// Sweep one parameter axis, all three variance methods per point.
    Sweep(SweepArgs),
    /// Evaluate a named figure preset.
    Figure(FigureArgs),
    /// Tabulate the intensity-dependent coupling profile f(n_b).
    Coupling(CouplingArgs),
    /// Effective mechanical frequency and damping over a frequency grid.
    Response(ResponseArgs),
    /// Run every oracle cross-check and report the consistency residuals.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write a gnuplot script plotting the CSV (requires --out).
    #[arg(long, value_name = "FILE")]
    gnuplot: Option<PathBuf>,
    /// Relative tolerance for the spectral quadrature.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Worker threads for sweeps (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON file with the physical system parameters.
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Start from a named figure preset's base configuration.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    cfg: ConfigArgs,
    /// Detuning in units of omega_m.
    #[arg(long, default_value_t = 1.65)]
    delta: f64,
    /// Interpret --delta as the bare cavity detuning instead of the
    /// effective (steady-state-shifted) one.
    #[arg(long)]
    bare: bool,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    cfg: ConfigArgs,
    /// Which parameter the sweep varies.
    #[arg(long, value_enum, default_value_t = AxisArg::Delta)]
    axis: AxisArg,
    #[arg(long)]
    start: f64,
    #[arg(long)]
    stop: f64,
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Space the grid logarithmically (start must be positive).
    #[arg(long)]
    log_scale: bool,
    /// Fixed detuning (units of omega_m) used when the sweep axis is not
    /// the detuning itself.
    #[arg(long, default_value_t = 1.65)]
    delta: f64,
    /// Sweep the bare detuning instead of the effective one.
    #[arg(long)]
    sweep_bare: bool,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Copy, Clone, ValueEnum)]
enum AxisArg {
    Delta,
    LdpScale,
    Reflectivity,
    Temperature,
    Power,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Delta => SweepAxis::Delta,
            AxisArg::LdpScale => SweepAxis::LdpScale,
            AxisArg::Reflectivity => SweepAxis::Reflectivity,
            AxisArg::Temperature => SweepAxis::Temperature,
            AxisArg::Power => SweepAxis::Power,
        }
    }
}

#[derive(Args)]
struct FigureArgs {
    /// Preset name; run `optomech figure list` to enumerate them.
    name: String,
    /// Override the preset's grid resolution.
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct CouplingArgs {
    #[arg(long, default_value_t = 0.99)]
    r_c: f64,
    /// Effective Lamb-Dicke parameter for the profile.
    #[arg(long, default_value_t = 8e-5)]
    eta: f64,
    /// Largest phonon index tabulated.
    #[arg(long, default_value_t = 200_000)]
    max_nb: u32,
    #[arg(long, default_value_t = 401)]
    points: usize,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ResponseArgs {
    #[command(flatten)]
    cfg: ConfigArgs,
    /// Detuning in units of omega_m.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Upper edge of the frequency grid, units of omega_m.
    #[arg(long, default_value_t = 2.0)]
    omega_max: f64,
    #[arg(long, default_value_t = 501)]
    points: usize,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    cfg: ConfigArgs,
    /// Worker threads for the parallel checks.
    #[arg(long)]
    threads: Option<usize>,
}

/// Exit codes: 0 success, 1 validation failure, 2 bad input.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_config(cfg: &ConfigArgs, default: fn() -> SystemConfig) -> Result<SystemConfig, String> {
    if let Some(path) = &cfg.config {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        SystemConfig::from_json(&text).map_err(|e| e.to_string())
    } else if let Some(name) = &cfg.preset {
        presets::find(name)
            .map(|p| p.config.clone())
            .ok_or_else(|| unknown_preset(name))
    } else {
        Ok(default())
    }
}

fn unknown_preset(name: &str) -> String {
    let known: Vec<&str> = presets::all().iter().map(|p| p.name).collect();
    format!("unknown preset '{name}'; known presets: {}", known.join(", "))
}

fn deliver(
    io: &IoArgs,
    header: &[&str],
    rows: &[Vec<String>],
    plot: Option<(usize, usize, usize, &str, Vec<String>)>,
) -> Result<ExitCode, String> {
    let csv = emit_csv(header, rows);
    match &io.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            if let Some(gp) = &io.gnuplot {
                let (x, y, series, y_label, series_vals) = plot.ok_or_else(|| {
                    "--gnuplot is only available for figure presets".to_string()
                })?;
                let script = gnuplot_script(
                    &path.to_string_lossy(),
                    x,
                    y,
                    series,
                    &series_vals,
                    header[x],
                    y_label,
                );
                fs::write(gp, script)
                    .map_err(|e| format!("cannot write {}: {e}", gp.display()))?;
            }
        }
        None => {
            if io.gnuplot.is_some() {
                return Err("--gnuplot requires --out".into());
            }
            print!("{csv}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Report(a) => {
            let cfg = load_config(&a.cfg, presets::cooling_base)?;
            let rows = runner::report_rows(&cfg, a.delta, a.bare, a.io.tol)?;
            deliver(&a.io, &COOLING_HEADER, &rows, None)
        }
        Cmd::Sweep(a) => {
            let cfg = load_config(&a.cfg, presets::cooling_base)?;
            let sweep = SweepSpec {
                axis: a.axis.into(),
                start: a.start,
                stop: a.stop,
                points: a.points,
                log_scale: a.log_scale,
            };
            let series = [presets::Series::plain("base")];
            let rows = with_threads(a.io.threads, || {
                runner::cooling_sweep_rows(&cfg, &series, &sweep, a.delta, a.sweep_bare, a.io.tol)
            })?;
            deliver(&a.io, &COOLING_HEADER, &rows, None)
        }
        Cmd::Figure(a) => {
            if a.name == "list" {
                for p in presets::all() {
                    println!("{}", p.name);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let preset = presets::find(&a.name).ok_or_else(|| unknown_preset(&a.name))?;
            let (header, rows) = with_threads(a.io.threads, || {
                runner::figure_rows(&preset, a.points, a.io.tol)
            })?;
            let (x, y, series, y_label) = runner::gnuplot_columns(&preset);
            let plot = Some((x, y, series, y_label, runner::gnuplot_series_values(&preset)));
            deliver(&a.io, &header, &rows, plot)
        }
        Cmd::Coupling(a) => {
            let rows = runner::coupling_rows(a.r_c, a.eta, a.max_nb, a.points)?;
            deliver(&a.io, &COUPLING_HEADER, &rows, None)
        }
        Cmd::Response(a) => {
            let cfg = load_config(&a.cfg, presets::response_base)?;
            let series = [presets::Series::plain("base")];
            let rows = runner::response_rows(&cfg, &series, a.delta, a.omega_max, a.points)?;
            deliver(&a.io, &RESPONSE_HEADER, &rows, None)
        }
        Cmd::Validate(a) => {
            let cfg = load_config(&a.cfg, presets::cooling_base)?;
            let lines = with_threads(a.threads, || validate::run(&cfg));
            print!("{}", validate::render(&lines));
            if validate::all_ok(&lines) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
