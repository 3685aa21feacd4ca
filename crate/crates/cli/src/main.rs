//! `cxgame`: exact analysis of cooperative games on simplicial complexes.
//!
//! Exit codes: 0 success, 2 parse/config error, 3 mathematical precondition
//! violated, 4 verification failure. Errors print one line to stderr,
//! prefixed by an upper-case code.

mod commands;
mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cxgame::io::{parse_complex, parse_game};
use cxgame::{Game, SimplicialComplex, Vertex};

use commands::Report;

const EXIT_CONFIG: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cxgame",
    version,
    about = "Exact cooperative games on simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Common {
    /// Complex file: {"n": 5, "facets": [[1,2,3], ...]}
    #[arg(long, value_name = "PATH")]
    complex: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Size, facets, f-vector, vertex links and Shapley classification.
    Info(Common),
    /// Generalized Shapley value of every player, with the efficiency check.
    Shapley {
        #[command(flatten)]
        common: Common,
        /// Game file: {"values": {"1,2": "3/4", ...}}
        #[arg(long, value_name = "PATH")]
        game: PathBuf,
    },
    /// Symmetry group, link-swap generators and the symmetry reduction.
    Symmetry(Common),
    /// The common-probability system and its solution family.
    Psystem(Common),
    /// Facet weights expressing the value as a mix of facet Shapley values.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Only this player (default: every vertex).
        #[arg(long, value_name = "N")]
        player: Option<Vertex>,
        /// Seed for the random cross-validation games.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Axiom suite and efficiency identity on seeded random games.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Extra game to include in the efficiency check.
        #[arg(long, value_name = "PATH")]
        game: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Efficiency coefficients a_T, closed form, and the identity on a game.
    Efficiency {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "PATH")]
        game: Option<PathBuf>,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Core(cxgame::Error),
}

impl From<cxgame::Error> for Failure {
    fn from(e: cxgame::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => EXIT_CONFIG,
            Failure::Core(e) if e.is_input_error() => EXIT_CONFIG,
            Failure::Core(_) => EXIT_PRECONDITION,
        }
    }

    fn line(&self) -> String {
        let line = match self {
            Failure::Io(path, e) => format!("IO: {}: {e}", path.display()),
            Failure::Core(e) => format!("{}: {e}", e.code()),
        };
        line.replace(['\n', '\r'], " ")
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_complex(path: &Path) -> Result<Arc<SimplicialComplex>, Failure> {
    Ok(Arc::new(parse_complex(&read(path)?)?))
}

fn load_game(path: &Path, complex: &Arc<SimplicialComplex>) -> Result<Game, Failure> {
    Ok(parse_game(&read(path)?, complex)?)
}

fn run(command: &Command) -> Result<(Report, Format), Failure> {
    let report = match command {
        Command::Info(c) => (commands::info(&*load_complex(&c.complex)?)?, c.format),
        Command::Shapley { common, game } => {
            let d = load_complex(&common.complex)?;
            let v = load_game(game, &d)?;
            (commands::shapley(&d, &v)?, common.format)
        }
        Command::Symmetry(c) => (commands::symmetry(&*load_complex(&c.complex)?)?, c.format),
        Command::Psystem(c) => (commands::psystem(&*load_complex(&c.complex)?)?, c.format),
        Command::Decompose {
            common,
            player,
            seed,
        } => {
            let d = load_complex(&common.complex)?;
            (commands::decompose(&d, *player, *seed)?, common.format)
        }
        Command::Verify { common, game, seed } => {
            let d = load_complex(&common.complex)?;
            let v = game.as_deref().map(|p| load_game(p, &d)).transpose()?;
            (commands::verify(&d, v.as_ref(), *seed)?, common.format)
        }
        Command::Efficiency { common, game } => {
            let d = load_complex(&common.complex)?;
            let v = game.as_deref().map(|p| load_game(p, &d)).transpose()?;
            (commands::efficiency(&d, v.as_ref())?, common.format)
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                eprintln!("USAGE: a subcommand is required: info, shapley, symmetry, psystem, decompose, verify, efficiency");
                return ExitCode::from(EXIT_CONFIG);
            }
            // clap's message spans several lines; keep the part before the usage block
            let message = e.to_string();
            let summary: Vec<&str> = message
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("USAGE: {}", summary.join(" ").trim_start_matches("error: "));
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run(&cli.command) {
        Ok((report, format)) => {
            match format {
                Format::Table => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("plain data serializes")
                ),
            }
            if report.failed {
                eprintln!("VERIFICATION_FAILED: at least one check did not hold");
                ExitCode::from(EXIT_VERIFICATION)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("{}", f.line());
            ExitCode::from(f.exit_code())
        }
    }
}
