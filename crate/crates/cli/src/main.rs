mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Ctx, TriplePaths};
use report::{Fingerprint, Report};
use tdcat::SizeGuard;

const DEFAULT_SEED: u64 = 0x7d_ca7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "tdcat", version, about = "Checks total distributivity and related structure on finite posets and categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    guard_objects: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    guard_arrows: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ccd, distributivity, way-below, continuity and Scott duality of a poset file.
    AnalyzePoset { path: PathBuf },
    /// Idempotent arrow ideals of a category file or builtin.
    EnumerateIdeals {
        path: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Also write the ideal lattice as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Verifies t -| c -| y for presheaves on a category file.
    TdWitness {
        path: PathBuf,
        /// Presheaf sample suite replacing the standard one.
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Wavy-arrow comonad of a poset file and its fixed points.
    Wavy {
        path: PathBuf,
        /// Copresheaf sample suite replacing the standard one.
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Transfer of ccd along q -| r -| s: one given triple, or a seeded sweep.
    Transfer {
        #[arg(long, requires_all = ["e", "q", "r", "s"])]
        d: Option<PathBuf>,
        #[arg(long)]
        e: Option<PathBuf>,
        /// Images of D's elements in E, comma separated.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Restriction of the down-set triple to join-dense generators.
    GeneratorRestrict {
        path: PathBuf,
        /// Comma-separated generators; every join-dense subset when absent.
        #[arg(long)]
        generators: Option<String>,
    },
    /// Prints a builtin category, or with --poset a builtin poset.
    Builtin {
        name: String,
        #[arg(default_value_t = 0)]
        n: usize,
        #[arg(long)]
        poset: bool,
    },
}

enum Output {
    Checks(Vec<report::Check>, Option<String>),
    Raw(String),
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Output, CliError> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::EnumerateIdeals { .. }) {
        return Err(CliError::Usage("--format dot is only available for enumerate-ideals".into()));
    }
    Ok(match &cli.command {
        Command::AnalyzePoset { path } => Output::Checks(commands::analyze_poset(ctx, path)?, None),
        Command::EnumerateIdeals { path, builtin, n, dot } => {
            let (name, c) = commands::load_category(ctx, path.as_deref(), builtin.as_deref(), *n)?;
            let (checks, lat) = commands::enumerate_ideals(ctx, &c)?;
            let dot_text = lat.to_dot(&name);
            if let Some(out) = dot {
                std::fs::write(out, &dot_text).map_err(|source| CliError::Io {
                    path: out.display().to_string(),
                    source,
                })?;
            }
            Output::Checks(checks, Some(dot_text))
        }
        Command::TdWitness { path, samples } => Output::Checks(commands::td_witness_cmd(ctx, path, samples.as_deref())?, None),
        Command::Wavy { path, samples } => Output::Checks(commands::wavy_cmd(ctx, path, samples.as_deref())?, None),
        Command::Transfer { d, e, q, r, s, count, max_size } => {
            let checks = match (d, e, q, r, s) {
                (Some(d), Some(e), Some(q), Some(r), Some(s)) => commands::transfer_single(ctx, TriplePaths { d, e, q, r, s })?,
                (None, None, None, None, None) => commands::transfer_sweep(ctx, *count, *max_size)?,
                _ => return Err(CliError::Usage("give all of --d --e --q --r --s, or none for a sweep".into())),
            };
            Output::Checks(checks, None)
        }
        Command::GeneratorRestrict { path, generators } => Output::Checks(commands::generator_restrict(ctx, path, generators.as_deref())?, None),
        Command::Builtin { name, n, poset } => Output::Raw(commands::builtin_text(name, *n, *poset, &ctx.guard)?),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::AnalyzePoset { .. } => "analyze-poset",
        Command::EnumerateIdeals { .. } => "enumerate-ideals",
        Command::TdWitness { .. } => "td-witness",
        Command::Wavy { .. } => "wavy",
        Command::Transfer { .. } => "transfer",
        Command::GeneratorRestrict { .. } => "generator-restrict",
        Command::Builtin { .. } => "builtin",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut guard = SizeGuard::default();
    if let Some(o) = cli.guard_objects {
        guard.max_objects = o as usize;
    }
    if let Some(a) = cli.guard_arrows {
        guard.max_arrows = a as usize;
    }
    let mut ctx = Ctx {
        guard,
        seed: cli.seed,
        fingerprint: Fingerprint::default(),
    };
    let start = Instant::now();
    match run(&cli, &mut ctx) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Checks(checks, dot)) => {
            let report = Report::new(command_name(&cli.command), ctx.fingerprint, cli.seed, checks, start.elapsed().as_millis());
            match (cli.format, dot) {
                (Format::Dot, Some(d)) => print!("{d}"),
                (Format::Json, _) => println!("{}", report.to_json()),
                _ => print!("{}", report.to_text()),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
