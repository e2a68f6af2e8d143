use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use phasetomo::commands::{self, DemoArgs};
use phasetomo::config::parse_matrix;
use phasetomo::{CliError, CliResult, Outcome, Overrides, RunConfig, THREADS_ENV};
use phasetomo_core::RayMatrix;

/// Phase-space tomography of paraxial ABCD systems.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare output intensities with Radon projections of the Wigner
    /// distribution for every configured matrix.
    Verify(Common),
    /// Tabulate the Wigner distribution of the configured field.
    Wigner(Common),
    /// Radon projection along the lines of the first matrix.
    Radon(Common),
    /// Propagate the field through the first matrix.
    Propagate {
        #[command(flatten)]
        common: Common,
        /// Use the inverse system [D, -B, -C, A].
        #[arg(long)]
        dual: bool,
    },
    /// Gaussian chirplet: numerical output intensity against its closed form.
    ChirpletDemo {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value = "1,0.7,0,1", allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 8.0)]
        half_width: f64,
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
        #[arg(long, default_value = "phasetomo-out")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Samples per axis.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    half_width: Option<f64>,
    /// "A,B,C,D" or an element string such as "free:0.7 lens:2"; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Vec<String>,
    #[arg(long)]
    tolerance: Option<f64>,
}

impl Common {
    fn plan(&self) -> CliResult<phasetomo::Plan> {
        let overrides = Overrides {
            n: self.n,
            half_width: self.half_width,
            matrices: self.matrix.clone(),
            tolerance: self.tolerance,
            out_dir: self.out_dir.clone(),
        };
        RunConfig::load(&self.config)?.resolve(&overrides)
    }
}

fn matrix_arg(text: &str) -> CliResult<RayMatrix> {
    parse_matrix(text).map_err(|e| CliError::invalid(format!("--matrix \"{text}\""), e))
}

fn run(cli: Cli) -> CliResult<u8> {
    let (dir, outcome): (PathBuf, CliResult<Outcome>) = match cli.command {
        Command::Verify(c) => {
            let plan = c.plan()?;
            (plan.out_dir.clone(), commands::verify(&plan))
        }
        Command::Wigner(c) => {
            let plan = c.plan()?;
            (plan.out_dir.clone(), commands::wigner(&plan))
        }
        Command::Radon(c) => {
            let plan = c.plan()?;
            (plan.out_dir.clone(), commands::radon(&plan, &plan.matrices[0]))
        }
        Command::Propagate { common, dual } => {
            let plan = common.plan()?;
            (plan.out_dir.clone(), commands::propagate(&plan, &plan.matrices[0], dual))
        }
        Command::ChirpletDemo {
            epsilon,
            beta,
            matrix,
            n,
            half_width,
            tolerance,
            out_dir,
        } => {
            let args = DemoArgs {
                epsilon,
                beta,
                matrix: matrix_arg(&matrix)?,
                n,
                half_width,
                tolerance,
            };
            (out_dir, commands::chirplet_demo(&args))
        }
    };
    match outcome {
        Ok(o) => {
            commands::write_outputs(&dir, &o.files)?;
            Ok(o.status.exit_code())
        }
        Err(CliError::CaseFailed { message, files }) => {
            commands::write_outputs(&dir, &files)?;
            Err(CliError::CaseFailed {
                message,
                files: Vec::new(),
            })
        }
        Err(e) => Err(e),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| CliError::invalid(THREADS_ENV, format!("'{value}' is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::invalid(THREADS_ENV, e))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|_| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
