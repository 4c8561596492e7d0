use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use christol::algebraize::guess_polynomial;
use christol::automaton::{build_dfao, dfao_from_linear, CoefficientMachine};
use christol::kernel::orbit_closure;
use christol::{
    expand_branch, selftest, weed, weed_via_derivative, BranchSpec, ClosureConfig, Dfao, Prime,
    Series,
};

#[derive(Parser)]
#[command(
    name = "christol",
    version,
    about = "Automata for algebraic power series over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N coefficients of a branch.
    Expand {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long)]
        terms: usize,
    },
    /// Apply a weeding of degree K to a finite series.
    Weed {
        #[arg(long)]
        p: u64,
        /// Comma-separated residues, constant term first.
        #[arg(long)]
        series: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Route::Section)]
        via: Route,
    },
    /// Build the coefficient automaton of a branch.
    Automaton {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long)]
        minimize: bool,
        /// Write dfao-v1 JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write Graphviz DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = ClosureConfig::default().n_eq)]
        n_eq: usize,
        #[arg(long, default_value_t = ClosureConfig::default().max_states)]
        max_states: usize,
        #[arg(long, value_enum, default_value_t = Construction::Orbit)]
        construction: Construction,
    },
    /// Evaluate a saved automaton at a decimal index.
    Query {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, value_parser = decimal, allow_hyphen_values = true)]
        n: String,
    },
    /// Search for a polynomial relation satisfied by a coefficient prefix.
    Algebraize {
        #[arg(long)]
        p: u64,
        /// File holding comma-separated residues.
        #[arg(long)]
        series_file: PathBuf,
        #[arg(long)]
        dx: usize,
        #[arg(long)]
        dy: usize,
    },
    /// Run the built-in oracle checks.
    Selftest,
}

#[derive(Args)]
struct BranchArgs {
    #[arg(long)]
    p: u64,
    /// Polynomial in x and y, e.g. "(1+x)^3*y^2 + (1+x)^2*y + x".
    #[arg(long)]
    poly: String,
    /// Comma-separated leading coefficients of the branch; may be empty.
    #[arg(long, default_value = "")]
    seed: String,
}

impl BranchArgs {
    fn spec(&self) -> christol::Result<BranchSpec> {
        BranchSpec::parse(&self.poly, &self.seed, Prime::new(self.p)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Section,
    Derivative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// One state per distinct series in the section orbit.
    Orbit,
    /// One state per distinct coordinate vector of the linear representation.
    Linear,
}

fn decimal(s: &str) -> Result<String, String> {
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
        Ok(s.to_string())
    } else {
        Err(format!("{s:?} is not a non-negative decimal integer"))
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn lib<T>(r: christol::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<String, String> {
    match command {
        Command::Expand { branch, terms } => {
            let f = lib(expand_branch(&lib(branch.spec())?, terms))?;
            Ok(f.to_string())
        }
        Command::Weed {
            p,
            series,
            degree,
            via,
        } => {
            let f = lib(Series::parse(&series, lib(Prime::new(p))?))?;
            let g = match via {
                Route::Section => weed(&f, degree),
                Route::Derivative => weed_via_derivative(&f, degree),
            };
            Ok(lib(g)?.to_string())
        }
        Command::Automaton {
            branch,
            minimize,
            out,
            dot,
            n_eq,
            max_states,
            construction,
        } => {
            let spec = lib(branch.spec())?;
            let cfg = ClosureConfig {
                n_eq,
                max_states,
                ..ClosureConfig::default()
            };
            lib(cfg.validate())?;
            let mut dfao = match construction {
                Construction::Orbit => lib(build_dfao(&spec, &cfg))?,
                Construction::Linear => lib(dfao_from_linear(
                    &lib(orbit_closure(&spec, &cfg))?,
                    max_states,
                ))?,
            };
            if minimize {
                dfao = dfao.minimize();
            }
            if let Some(path) = dot {
                write(&path, &dfao.to_dot())?;
            }
            match out {
                Some(path) => {
                    write(&path, &dfao.to_json())?;
                    Ok(String::new())
                }
                None => Ok(dfao.to_json()),
            }
        }
        Command::Query { automaton, n } => {
            let dfao = lib(Dfao::from_json(&read(&automaton)?))?;
            Ok(lib(dfao.query(&n))?.to_string())
        }
        Command::Algebraize {
            p,
            series_file,
            dx,
            dy,
        } => {
            let text = read(&series_file)?;
            let f = lib(Series::parse(text.trim(), lib(Prime::new(p))?))?;
            Ok(lib(guess_polynomial(&f, dx, dy))?.to_string())
        }
        Command::Selftest => {
            let report = selftest::run();
            print!("{report}");
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            if failed == 0 {
                Ok(String::new())
            } else {
                Err(format!("{failed} self-test checks failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
