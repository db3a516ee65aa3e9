use clap::{Args, Parser, Subcommand};
use spinon_dcf_cli::commands::*;
use spinon_dcf_cli::config::{OutputFormat, Overrides, RunConfig};
use spinon_dcf_cli::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

/// Two-spinon dynamical structure factor of the isotropic Heisenberg chain.
#[derive(Parser, Debug)]
#[command(name = "spinon-dcf", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// JSON configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, global = true, allow_hyphen_values = true)]
    quad_tol: Option<f64>,
    /// Where the form-factor integrals switch to their asymptote.
    #[arg(long, global = true, allow_hyphen_values = true)]
    split_point: Option<f64>,
    /// Maximum bisection depth of any quadrature panel.
    #[arg(long, global = true)]
    max_subdivisions: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Output file, `-` for stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, env = "SPINON_DCF_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prefactor and form-factor normalisation constants.
    Constants,
    /// The structure factor at one point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
    /// Sᶻᶻ on a k-by-ω grid.
    Scan {
        #[arg(long, default_value_t = 64)]
        k_points: usize,
        #[arg(long, default_value_t = 64)]
        omega_points: usize,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        k_max: f64,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        omega_max: f64,
    },
    /// Integrated two-spinon intensity and its change under refinement.
    Sumrule {
        #[arg(long, default_value_t = 64)]
        k_points: usize,
        #[arg(long, default_value_t = 64)]
        omega_points: usize,
    },
    /// Exact-diagonalization spectral lines of a periodic chain.
    Ed {
        #[arg(long)]
        sites: usize,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        delta: f64,
    },
    /// Exact diagonalization against the two-spinon result.
    Compare {
        #[arg(long)]
        sites: usize,
        #[arg(long, default_value_t = 64)]
        omega_points: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let flags = Overrides {
        quad_tol: g.quad_tol,
        split_point: g.split_point,
        max_subdivisions: g.max_subdivisions,
        format: g.format,
        output: g.output,
        threads: g.threads,
    };
    let cfg = RunConfig::load(g.config.as_deref(), &flags)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let table = match cli.command {
        Command::Constants => cmd_constants(&cfg)?,
        Command::Eval { k, omega } => cmd_eval(k, omega, &cfg)?,
        Command::Scan {
            k_points,
            omega_points,
            k_max,
            omega_max,
        } => {
            let grid = ScanGrid {
                k_points,
                omega_points,
                k_max,
                omega_max,
            };
            cmd_scan(&grid, &cfg)?
        }
        Command::Sumrule { k_points, omega_points } => cmd_sumrule(k_points, omega_points, &cfg)?,
        Command::Ed { sites, delta } => cmd_ed(sites, delta, &cfg)?,
        Command::Compare { sites, omega_points } => {
            let (table, summary) = cmd_compare(sites, omega_points, &cfg)?;
            eprint!("{summary}");
            table
        }
    };
    write_output(&table, &cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spinon-dcf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
