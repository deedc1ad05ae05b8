//! `ifm`: command-line front end for the interaction-free measurement simulator.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::output::Format;

#[derive(Parser)]
#[command(name = "ifm", version, about = "Interaction-free measurement in a 2DEG: transfer matrices, WKB absorber, shot noise, Monte Carlo")]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write data to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// JSON file with material presets and a default tip distance.
    #[arg(long, value_name = "PATH", global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Absorber given either directly as a transparency or through the tip barrier.
#[derive(Args, Debug, Clone)]
pub struct AbsorberArgs {
    /// Absorber transparency η in [0, 1].
    #[arg(long, conflicts_with = "delta_w")]
    pub eta: Option<f64>,

    /// Effective tip barrier ΔW = ⟨Φ⟩ − e|V|/2, eV.
    #[arg(long = "delta-w", allow_negative_numbers = true)]
    pub delta_w: Option<f64>,

    /// Tunnelling distance s, m (default: config file, else 6.0e-8).
    #[arg(long)]
    pub distance: Option<f64>,

    /// Effective mass in units of the free electron mass.
    #[arg(long = "m-eff", default_value_t = 0.067)]
    pub m_eff: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ChainArgs {
    /// Number of beam splitters N.
    #[arg(long)]
    pub n: u32,

    /// Splitter angle in radians (default π/(2N)).
    #[arg(long)]
    pub theta: Option<f64>,

    #[command(flatten)]
    pub absorber: AbsorberArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Transport scales τ, v_F, l, k_F of a 2DEG.
    Material {
        /// Named preset (`gaas` or one from --config).
        #[arg(long, conflicts_with_all = ["m_eff", "fermi_energy", "mobility"])]
        preset: Option<String>,
        /// Effective mass in units of the free electron mass.
        #[arg(long = "m-eff")]
        m_eff: Option<f64>,
        /// Fermi energy, eV.
        #[arg(long = "fermi-energy")]
        fermi_energy: Option<f64>,
        /// Mobility, m²/(V·s).
        #[arg(long)]
        mobility: Option<f64>,
        /// Emission period of a single-electron source, s; adds the emitter current row.
        #[arg(long = "emission-period")]
        emission_period: Option<f64>,
    },
    /// Decay constant, current ratio and transparency of the tip barrier.
    Wkb {
        /// Effective barrier ΔW, eV.
        #[arg(long = "delta-w", allow_negative_numbers = true, conflicts_with_all = ["phi", "bias"])]
        delta_w: Option<f64>,
        /// Mean barrier height ⟨Φ⟩, eV (default 5.0 with --bias).
        #[arg(long)]
        phi: Option<f64>,
        /// Tip bias V, volts.
        #[arg(long, allow_negative_numbers = true)]
        bias: Option<f64>,
        /// Tunnelling distance s, m.
        #[arg(long)]
        distance: Option<f64>,
        /// Effective mass in units of the free electron mass.
        #[arg(long = "m-eff", default_value_t = 0.067)]
        m_eff: f64,
    },
    /// Success probability and port probabilities of the chain.
    Ifm(ChainArgs),
    /// Zero-frequency shot noise at the lower-right port.
    Noise {
        #[command(flatten)]
        chain: ChainArgs,
        /// Bias |V| in volts; adds the SI spectral density.
        #[arg(long, allow_negative_numbers = true)]
        bias: Option<f64>,
    },
    /// Check the T = 0 bias-window integral ∫ f_L(1 − f_U) dε = e|V|.
    EnergyWindow {
        #[arg(long, allow_negative_numbers = true)]
        bias: f64,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
    },
    /// Normalized noise surface over (N, η).
    SweepNoise {
        #[arg(long = "n-max", default_value_t = ifm_core::sweep::DEFAULT_N_MAX)]
        n_max: u32,
        #[arg(long = "eta-steps", default_value_t = ifm_core::sweep::DEFAULT_STEPS)]
        eta_steps: usize,
    },
    /// Success probability surface over (N, ΔW).
    SweepProb {
        #[arg(long = "n-max", default_value_t = ifm_core::sweep::DEFAULT_N_MAX)]
        n_max: u32,
        /// Upper edge of the ΔW axis, eV.
        #[arg(long = "dw-max", default_value_t = ifm_core::sweep::DEFAULT_DW_MAX)]
        dw_max: f64,
        #[arg(long = "dw-steps", default_value_t = ifm_core::sweep::DEFAULT_STEPS)]
        dw_steps: usize,
        #[arg(long)]
        distance: Option<f64>,
    },
    /// Monte Carlo estimate of the port probabilities.
    Mc {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: IFM_THREADS, else all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Monte Carlo partition noise of one lossless splitter.
    Partition {
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Elitzur–Vaidman single-interferometer baseline.
    Ev {
        #[arg(long)]
        reflectivity: f64,
        /// Retry inconclusive outcomes and report the overall detection probability.
        #[arg(long)]
        repeated: bool,
    },
    /// Smallest N reaching a target success probability.
    MinStages {
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long = "n-cap", default_value_t = 1000)]
        n_cap: u32,
    },
    /// Largest ΔW keeping the success probability at or above a target.
    RequiredDw {
        #[arg(long)]
        target: f64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        distance: Option<f64>,
        /// Bisection tolerance, eV.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Upper edge of the search bracket, eV.
        #[arg(long = "dw-max", default_value_t = ifm_core::sweep::DEFAULT_DW_MAX)]
        dw_max: f64,
    },
}

/// Thread cap from `IFM_THREADS`, if set.
fn env_threads() -> CliResult<Option<usize>> {
    match std::env::var("IFM_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("IFM_THREADS must be a positive integer, got `{v}`"))),
        _ => Ok(None),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = config::Config::load_opt(cli.config.as_deref())?;
    let ctx = commands::Context { config, format: cli.format, env_threads: env_threads()? };
    let bytes = match ctx.env_threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| commands::dispatch(&ctx, cli.command))?,
        None => commands::dispatch(&ctx, cli.command)?,
    };
    output::emit(&bytes, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ifm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
