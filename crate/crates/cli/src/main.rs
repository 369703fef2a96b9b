mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Parser)]
#[command(name = "quandlelab", version, about = "Quandle homology, associated groups and knot colouring invariants")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Config {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Coset cap for Todd-Coxeter enumeration
    #[arg(long, global = true, default_value_t = quandlelab::group::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Cap on the number of basis elements of a chain group
    #[arg(long, global = true)]
    max_basis: Option<usize>,
    /// Raise the chain-complex cap for large quandles
    #[arg(long, global = true)]
    large: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FlavorArg {
    Rack,
    Quandle,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CoeffArg {
    /// Y = a point
    Point,
    /// Y = X acted on by right translation
    Primitive,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a quandle: axioms, orbits, type, Inn, Ker ε, H2Q, extended quandle
    Quandle {
        /// Catalog name or path to a quandle JSON file
        quandle: String,
    },
    /// Rack or quandle homology in one degree
    Homology {
        #[arg(long)]
        quandle: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FlavorArg::Quandle)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = CoeffArg::Point)]
        coeffs: CoeffArg,
        /// Also emit generating 2-cocycles with values in Z/M (degree 2, quandle flavor)
        #[arg(long, value_name = "M")]
        cocycles: Option<u64>,
    },
    /// Colourings of a knot diagram
    Color {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        quandle: String,
        /// List every colouring, not just the count
        #[arg(long)]
        list: bool,
    },
    /// Cocycle invariant and state-sum classes
    Invariant {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        quandle: String,
        /// Cocycle JSON: one cocycle, a list, or the output of `homology --cocycles`
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Colouring polynomial: longitude classes in Stab(x)_ab
    Colpoly {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        quandle: String,
    },
    /// Homology of the cyclic branched cover, optionally with θ
    Cover {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        fold: usize,
        #[arg(long, requires = "theta")]
        quandle: Option<String>,
        /// Evaluate θ for every colouring (fold must equal the type)
        #[arg(long, requires = "quandle")]
        theta: bool,
    },
    /// Exhaustive checks of the bar-complex chain maps and homotopies
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
        #[arg(long)]
        quandle: String,
    },
    /// List or export the built-in catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    #[value(name = "appendixC", alias = "chain-maps")]
    ChainMaps,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Write quandles/*.json and knots/*.json
    Export {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<serde_json::Value, Failure> {
    let cfg = &cli.config;
    if let Some(t) = cfg.threads {
        if t == 0 {
            return Err(Failure::input("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| Failure::input(e.to_string()))?;
    }
    if cfg.max_cosets == 0 || cfg.max_basis == Some(0) {
        return Err(Failure::input("caps must be positive"));
    }
    match cli.command {
        Command::Quandle { quandle } => commands::quandle_info(cfg, &quandle),
        Command::Homology { quandle, n, flavor, coeffs, cocycles } => {
            commands::homology(cfg, &quandle, n, flavor, coeffs, cocycles)
        }
        Command::Color { knot, quandle, list } => commands::color(&knot, &quandle, list),
        Command::Invariant { knot, quandle, cocycle } => commands::invariant(&knot, &quandle, &cocycle),
        Command::Colpoly { knot, quandle } => commands::colpoly(&knot, &quandle),
        Command::Cover { knot, fold, quandle, theta } => {
            commands::cover(cfg, &knot, fold, quandle.as_deref().filter(|_| theta))
        }
        Command::Verify { what: VerifyTarget::ChainMaps, quandle } => commands::verify(cfg, &quandle),
        Command::Catalog { action: CatalogAction::List } => Ok(commands::catalog_list()),
        Command::Catalog { action: CatalogAction::Export { dir } } => commands::catalog_export(dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.config.format;
    match run(cli) {
        Ok(v) => {
            report::print(&v, format);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(v) = &f.report {
                report::print(v, format);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
