use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use matspan::counting::DEFAULT_BUDGET;
use matspan::linalg::rank;
use matspan::suites::SuiteConfig;
use matspan::{Mat, DEFAULT_SEED};
use matspan_cli::commands::{self, Kind, Output, Style, EXIT_ERROR};
use matspan_cli::instance::{Instance, InstanceFile};

/// Span criteria for {A^i S B^j} over finite fields.
#[derive(Parser)]
#[command(name = "matspan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full span report with a witness when the eigenvector condition fails.
    /// Exit 0 if the span is full, 1 if not, 2 on error.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Size of P^h[A] S P^k[B] from the closed formula, optionally checked
    /// by enumeration.
    Cardinality {
        file: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Dimension of span{A^i S B^j}.
    SpanDim { file: PathBuf },
    /// Krylov and eigenvalue-pencil rank conditions with H = A and K = S.
    Pbh {
        file: PathBuf,
        /// Krylov depth; defaults to the size of A.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Write a seeded instance file.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites. Exit 0 iff all pass.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replace the rank routine with a wrong one, to check that the
        /// suites notice.
        #[arg(long, hide = true)]
        mutate_rank: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

fn broken_rank(m: &Mat) -> usize {
    rank(m).saturating_sub(1)
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    InstanceFile::read(path)?.instance()
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    let style = Style::detect();
    match cli.command {
        Command::Analyze { file, json } => commands::analyze(&load(&file)?, json, style),
        Command::Cardinality {
            file,
            h,
            k,
            enumerate,
            budget,
        } => commands::cardinality(&load(&file)?, h, k, enumerate, budget),
        Command::SpanDim { file } => commands::span_dim(&load(&file)?),
        Command::Pbh { file, d } => commands::pbh(&load(&file)?, d, style),
        Command::Generate {
            kind,
            p,
            degree,
            m,
            n,
            seed,
            out,
        } => {
            let text = commands::generate(kind, p, degree, m, n, seed)?.to_json() + "\n";
            match out {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    Ok(Output {
                        stdout: String::new(),
                        stderr: format!("wrote {}\n", path.display()),
                        code: 0,
                    })
                }
                None => Ok(Output {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }),
            }
        }
        Command::Selftest {
            level,
            seed,
            mutate_rank,
        } => {
            let rank_fn = if mutate_rank { broken_rank } else { rank };
            let cfg = SuiteConfig {
                seed,
                rank: rank_fn,
            };
            Ok(commands::selftest(level == Level::Full, &cfg, style))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
