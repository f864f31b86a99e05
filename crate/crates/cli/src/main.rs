use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use snarkdom::{ExportFormat, Variant};
use snarkdom_cli::commands::{self, Outcome, SolveFlags, EXIT_USAGE};

/// Domination toolkit for flower snarks.
#[derive(Debug, Parser)]
#[command(name = "snarkdom", version)]
struct Cli {
    /// Aligned text tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

fn parse_n(s: &str) -> Result<usize, String> {
    let n: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if n < 3 {
        return Err(format!("n must be at least 3, got {n}"));
    }
    Ok(n)
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(t) if t > 0 => Ok(t),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Zero the timing field so output is reproducible byte for byte.
    #[arg(long)]
    deterministic: bool,
    /// Allow the slower opt-in ranges (secure, roman, weak_roman up to n = 8).
    #[arg(long)]
    long_running: bool,
    /// Worker threads [default: $SNARKDOM_THREADS, else all cores].
    #[arg(long, value_parser = parse_threads)]
    threads: Option<usize>,
    /// Disable the every-copy-occupied pruning.
    #[arg(long)]
    no_prefilter: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print J_n in dimacs, json or adjlist form.
    Gen {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, default_value = "dimacs")]
        format: ExportFormat,
    },
    /// Exact optimum with a witness and the refuted adjacent size.
    Solve {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long)]
        variant: Variant,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Build the constructive certificate and check it.
    Certify {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long)]
        variant: Variant,
    },
    /// Formula, certificate and solver values for n = 3..=n_max.
    Formulas {
        #[arg(long, value_parser = parse_n)]
        n_max: usize,
        /// Fill the solver column where the variant's range allows.
        #[arg(long)]
        with_solver: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Write a CPLEX LP model for a covering-style variant.
    ExportLp {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long)]
        variant: Variant,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Every valid set of a given size, with per-copy weights.
    Patterns {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        size: usize,
        /// Stop after this many sets.
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn flags(args: &SolverArgs, pretty: bool) -> Result<SolveFlags, String> {
    Ok(SolveFlags {
        deterministic: args.deterministic,
        long_running: args.long_running,
        prefilter: !args.no_prefilter,
        threads: commands::resolve_threads(args.threads)?,
        pretty,
    })
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let pretty = cli.pretty;
    Ok(match cli.command {
        Command::Gen { n, format } => commands::gen(n, format),
        Command::Solve { n, variant, solver } => {
            commands::solve(n, variant, flags(&solver, pretty)?)
        }
        Command::Certify { n, variant } => commands::certify(n, variant, pretty),
        Command::Formulas {
            n_max,
            with_solver,
            solver,
        } => commands::formulas(n_max, with_solver, flags(&solver, pretty)?),
        Command::ExportLp { n, variant, output } => commands::export_lp(n, variant, &output),
        Command::Patterns {
            n,
            variant,
            size,
            limit,
            solver,
        } => commands::patterns(n, variant, size, limit, flags(&solver, pretty)?),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            eprintln!("\n{}", Cli::command().render_usage());
            return ExitCode::from(EXIT_USAGE as u8);
        }
        Err(e) => e.exit(),
    };
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code as u8)
}
