//! `qsteer`: steerability analysis of two-qubit states from the command
//! line. Every run is reproducible from its argument vector: seeds are
//! explicit and quadrature orders are flags with documented defaults.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qsteer_cli::commands;
use qsteer_cli::output::{emit, Format};
use qsteer_core::quadrature::QuadratureSpec;

#[derive(Parser)]
#[command(
    name = "qsteer",
    version,
    about = "EPR-steerability of two-qubit states via the steering ellipsoid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Gauss-Legendre nodes in cos(theta).
    #[arg(long, global = true, default_value_t = 96)]
    order_theta: usize,
    /// Uniform trapezoid nodes in phi.
    #[arg(long, global = true, default_value_t = 192)]
    order_phi: usize,
    /// Seed for every randomized quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format for row-oriented data.
    #[arg(long, global = true, value_enum, default_value_t = CliFormat::Csv)]
    format: CliFormat,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Json,
    Csv,
}

impl From<CliFormat> for Format {
    fn from(f: CliFormat) -> Format {
        match f {
            CliFormat::Json => Format::Json,
            CliFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a state: separable / nonsteerable / steerable / gap.
    Classify {
        /// JSON state file ({"a", "b", "T"} or the T-state shorthand {"t"}).
        #[arg(long)]
        state: PathBuf,
    },
    /// Print the steering ellipsoid (center, semiaxes, orientation).
    Ellipsoid {
        #[arg(long)]
        state: PathBuf,
        /// Emit an N x N (theta, phi) grid of surface points instead.
        #[arg(long)]
        surface: Option<usize>,
    },
    /// Boundary-surface data: an (s1, s2) root grid, or the symmetric slice.
    Boundary {
        /// Grid resolution per axis for the (s1, s2, s3*) sweep.
        #[arg(long, conflicts_with_all = ["symmetric", "u_range"])]
        grid: Option<usize>,
        /// Sweep the symmetric slice s1 = s2 instead of the grid.
        #[arg(long, requires = "u_range")]
        symmetric: bool,
        /// LO,HI,N range of u = s3/s1 for the symmetric sweep.
        #[arg(long, value_name = "LO,HI,N")]
        u_range: Option<String>,
    },
    /// Boundary surface plus the linear and separability planes (grid data).
    Figure1a {
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// Symmetric-slice cross section: necessary, linear, nonlinear curves.
    Figure1b {
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Compare the hemisphere-integral closed form against quadrature.
    VerifyTheorem1 {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Fix T to the identity (exactness smoke test).
        #[arg(long)]
        iso: bool,
    },
    /// Print the hidden-state normalization constant by both routes.
    Ntconst {
        /// Diagonal t1,t2,t3 of the correlation matrix.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Sample the hidden-state model and report reconstruction statistics.
    LhsSimulate {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 1_000_000)]
        count: usize,
        /// JSON file with an array of unit 3-vectors.
        #[arg(long)]
        directions: Option<PathBuf>,
        /// Number of generated directions when no file is given.
        #[arg(long, default_value_t = 20)]
        num_directions: usize,
    },
    /// Check the deterministic model constraints on a boundary state.
    LhsVerify {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        directions: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        num_directions: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<(String, i32)> {
    let spec = QuadratureSpec {
        order_theta: cli.order_theta,
        order_phi: cli.order_phi,
        ..QuadratureSpec::default()
    };
    let format: Format = cli.format.into();
    match cli.command {
        Command::Classify { state } => Ok((commands::run_classify(&state)?, 0)),
        Command::Ellipsoid { state, surface } => {
            Ok((commands::run_ellipsoid(&state, surface, format)?, 0))
        }
        Command::Boundary {
            grid,
            symmetric,
            u_range,
        } => match (grid, symmetric, u_range) {
            (Some(grid), false, None) => Ok((commands::run_boundary_grid(grid, &spec, format)?, 0)),
            (None, true, Some(range)) => {
                let parts = commands::parse_triple(&range)?;
                Ok((
                    commands::run_boundary_symmetric(
                        parts[0],
                        parts[1],
                        parts[2] as usize,
                        format,
                    )?,
                    0,
                ))
            }
            _ => anyhow::bail!("use either --grid N or --symmetric --u-range LO,HI,N"),
        },
        Command::Figure1a { grid } => Ok((commands::run_figure1a(grid, &spec, format)?, 0)),
        Command::Figure1b { samples } => Ok((commands::run_figure1b(samples, format)?, 0)),
        Command::VerifyTheorem1 { trials, iso } => {
            commands::run_verify_theorem1(trials, cli.seed, iso, &spec)
        }
        Command::Ntconst { t } => Ok((commands::run_ntconst(&t, &spec)?, 0)),
        Command::LhsSimulate {
            t,
            count,
            directions,
            num_directions,
        } => Ok((
            commands::run_lhs_simulate(
                &t,
                count,
                cli.seed,
                directions.as_deref(),
                num_directions,
                &spec,
            )?,
            0,
        )),
        Command::LhsVerify {
            t,
            directions,
            num_directions,
        } => commands::run_lhs_verify(&t, directions.as_deref(), num_directions, cli.seed, &spec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((payload, code)) => {
            if let Err(e) = emit(out.as_deref(), &payload) {
                eprintln!("qsteer: write failed: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("qsteer: {e:#}");
            ExitCode::from(2)
        }
    }
}
