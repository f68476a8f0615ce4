use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use goodpair::verdict::EngineClass;
use goodpair_cli::commands::{cmd_crosscheck, cmd_decide, cmd_gen, cmd_oracle, cmd_verify, CrosscheckParams, GenParams};
use goodpair_cli::{CliError, Report, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "goodpair", version, about = "Arc-disjoint out- and in-branchings with prescribed roots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RootArgs {
    /// Root of the out-branching (overrides the document's roots line)
    #[arg(long)]
    u: Option<String>,
    /// Root of the in-branching
    #[arg(long)]
    v: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a document: exit 0 with a pair, 1 with an obstruction
    Decide {
        input: PathBuf,
        #[command(flatten)]
        roots: RootArgs,
        /// auto, semicomplete, composition, transitive or qt
        #[arg(long, default_value = "auto")]
        class: EngineClass,
        /// Print the digraph with the pair highlighted in DOT
        #[arg(long)]
        dot: bool,
    },
    /// Check a claimed pair (`out a b` / `in a b` lines, decide output works)
    Verify {
        input: PathBuf,
        pair: PathBuf,
        #[command(flatten)]
        roots: RootArgs,
    },
    /// Brute-force answer for a small document
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        roots: RootArgs,
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
    },
    /// Write a generated instance document
    Gen {
        /// table1a..table1g, kind-a, kind-b, separation, random-composition or qt
        #[arg(long)]
        family: String,
        /// Vertex count (Table 1 families and qt)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        /// Order of the layered quotient (kind-a, kind-b)
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        max_layer: usize,
        #[arg(long, default_value_t = 2)]
        max_part: usize,
        #[arg(long, default_value_t = 3)]
        quotient: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the engines with the oracle; exit 1 on any mismatch
    Crosscheck {
        #[arg(long)]
        exhaustive_semicomplete: Option<usize>,
        #[arg(long)]
        exhaustive_tournaments: Option<usize>,
        #[arg(long)]
        exhaustive_qt: Option<usize>,
        #[arg(long)]
        random_compositions: Option<usize>,
        #[arg(long, default_value_t = 3)]
        quotient: usize,
        #[arg(long, default_value_t = 2)]
        max_part: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
        /// Append per-record timings (output is then not reproducible)
        #[arg(long)]
        timings: bool,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Decide { input, roots, class, dot } => cmd_decide(&read(&input)?, roots.u.as_deref(), roots.v.as_deref(), class, dot),
        Command::Verify { input, pair, roots } => cmd_verify(&read(&input)?, &read(&pair)?, roots.u.as_deref(), roots.v.as_deref()),
        Command::Oracle { input, roots, max_vertices } => cmd_oracle(&read(&input)?, roots.u.as_deref(), roots.v.as_deref(), max_vertices),
        Command::Gen { family, n, t, h, order, max_layer, max_part, quotient, extra, seed, out } => {
            let rep = cmd_gen(&GenParams { family, n, t, h, order, max_layer, max_part, quotient, extra, seed })?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &rep.text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                    Ok(Report { code: 0, text: String::new() })
                }
                None => Ok(rep),
            }
        }
        Command::Crosscheck {
            exhaustive_semicomplete,
            exhaustive_tournaments,
            exhaustive_qt,
            random_compositions,
            quotient,
            max_part,
            seed,
            max_vertices,
            timings,
        } => cmd_crosscheck(&CrosscheckParams {
            exhaustive_semicomplete,
            exhaustive_tournaments,
            exhaustive_qt,
            random_compositions,
            quotient,
            max_part,
            seed,
            max_vertices,
            timings,
        }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(rep) => {
            print!("{}", rep.text);
            ExitCode::from(rep.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
