use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use trisym::commands::{self, Context, PeriodArgs, QuotientDemoArgs, EXIT_INPUT};
use trisym_core::lts::GridConstraint;
use trisym_core::TolerancePolicy;

#[derive(Parser)]
#[command(name = "trisym", version, about = "Lie triple systems, symmetric pairs and kernel lattices")]
struct Cli {
    /// Uniform tolerance for equality, rank and membership tests.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Emit the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit the report as `key: value` lines.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Constraint {
    Path,
    Loop,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms applicable to a fixture file.
    Check { path: PathBuf },
    /// Center of a triple system or Lie algebra, optionally of a grid path/loop system.
    Center {
        path: PathBuf,
        /// Number of grid nodes T.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = Constraint::Loop)]
        constraint: Constraint,
    },
    /// Standard embedding of a triple system.
    Embed {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient by an ideal given as `;`-separated vectors.
    Quotient {
        path: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct product of two triple systems.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `Exp(t·x)` on a symmetric pair.
    PairExp {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Geodesic translation and one-parameter laws on a sample grid.
    Geodesic {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        velocity: Option<String>,
        /// Points per axis of the (s, t) grid on [-2, 2]².
        #[arg(long, default_value_t = 9)]
        samples: usize,
    },
    /// Kernel lattice along a central direction, or discreteness of a subgroup.
    Period {
        path: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        /// full_fixed_group or identity_component_heuristic.
        #[arg(long)]
        policy: Option<String>,
        /// Generators: `a,b,c` (one-dimensional) or `x1,y1;x2,y2`.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: Option<String>,
        /// Decide discreteness exactly over the rationals.
        #[arg(long)]
        exact: bool,
    },
    /// Non-discrete projection of the U(2)/O(2) kernel lattice square.
    QuotientDemo {
        #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
        slope: f64,
        #[arg(long, default_value = "2")]
        control_slope: String,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Grid loops along the U(2)/O(2) center direction.
    LoopDemo {
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5])]
        grid: Vec<usize>,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
    },
    /// Write the fixture gallery and its manifest.
    Gallery {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<commands::Report, commands::CommandError> {
    let tol = match cli.tol {
        Some(t) => TolerancePolicy::uniform(t)?,
        None => TolerancePolicy::default(),
    };
    let ctx = Context { tol, seed: cli.seed };
    match cli.command {
        Command::Check { path } => commands::check(&path, &ctx),
        Command::Center { path, grid, constraint } => {
            let c = match constraint {
                Constraint::Path => GridConstraint::PathZeroAtStart,
                Constraint::Loop => GridConstraint::LoopZeroAtBothEnds,
            };
            commands::center_cmd(&path, grid.map(|t| (t, c)), &ctx)
        }
        Command::Embed { path, out } => commands::embed(&path, out.as_deref(), &ctx),
        Command::Quotient { path, ideal, out } => commands::quotient_cmd(&path, &ideal, out.as_deref(), &ctx),
        Command::Product { a, b, out } => commands::product(&a, &b, out.as_deref(), &ctx),
        Command::PairExp { path, x, t } => commands::pair_exp(&path, &x, t, &ctx),
        Command::Geodesic { path, velocity, samples } => commands::geodesic(&path, velocity.as_deref(), samples, &ctx),
        Command::Period {
            path,
            direction,
            tmax,
            epsilon,
            bound,
            policy,
            subgroup,
            exact,
        } => commands::period(
            &PeriodArgs {
                pair: path,
                direction,
                t_max: tmax,
                epsilon,
                bound,
                policy,
                subgroup,
                exact,
            },
            &ctx,
        ),
        Command::QuotientDemo {
            slope,
            control_slope,
            epsilon,
            bound,
        } => commands::quotient_demo(
            &QuotientDemoArgs {
                slope,
                control_slope,
                epsilon,
                bound,
                ..Default::default()
            },
            &ctx,
        ),
        Command::LoopDemo { grid, tmax } => commands::loop_demo(&grid, tmax, &ctx),
        Command::Gallery { out } => commands::gallery_cmd(&out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let text = cli.text;
    match run(cli) {
        Ok(report) => {
            if text {
                print!("{}", report.to_text());
            } else {
                print!("{}", report.to_json());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
