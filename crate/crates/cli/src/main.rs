use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use render::Format;

/// Comma-separated, strictly ascending generators.
#[derive(Debug, Clone)]
pub struct Gens(pub Vec<u64>);

fn parse_gens(text: &str) -> Result<Gens, String> {
    let gens = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("'{t}' is not a non-negative integer"))
        })
        .collect::<Result<Vec<u64>, String>>()?;
    if gens.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("generators must be strictly ascending, got {text}"));
    }
    Ok(Gens(gens))
}

#[derive(Parser)]
#[command(name = "monocat", version, about = "Factorization invariants of numerical monoids")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Replace the generator list by the minimal generating set before computing.
    #[arg(long, global = true)]
    reduce: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All factorizations of one element.
    Factorizations {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
        #[arg(long)]
        element: u64,
    },
    /// Element degrees and length profile, or set-level degrees without --element.
    Invariants {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
        #[arg(long)]
        element: Option<u64>,
        /// Emit the chains certifying each element degree.
        #[arg(long, requires = "element")]
        witness: bool,
        #[arg(long)]
        scan_bound: Option<u64>,
    },
    /// c(M), c_eq(M), c_adj(M) and c_mon(M) with exactness flags.
    SetInvariants {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
        #[arg(long)]
        scan_bound: Option<u64>,
    },
    /// Betti elements and the catenary degree at each.
    Betti {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
    },
    /// Closed forms for a named family, optionally checked by computation.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Run a parameter sweep.
    Sweep(SweepArgs),
    /// Data for the Frobenius-family table.
    Figure {
        #[command(subcommand)]
        figure: FigureCommand,
    },
}

#[derive(Args, Clone, Copy)]
pub struct VerifyArgs {
    /// Check the closed forms by computation.
    #[arg(long)]
    pub verify: bool,
    /// Element bound (or scan window) for --verify.
    #[arg(long, requires = "verify")]
    pub bound: Option<u64>,
}

#[derive(Subcommand)]
pub enum FamilyCommand {
    /// ⟨a, a+d, …, a+kd⟩.
    Arithmetic {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// ⟨a, ah+d, ah+2d⟩.
    GenArith {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// ⟨na, na+n, 2na+nx+1⟩.
    Gap {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        x: u64,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// ⟨a, a+1, a²−a−1⟩.
    Frobenius {
        #[arg(long)]
        a: u64,
        #[command(flatten)]
        verify: VerifyArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Theorem1,
    Arithmetic,
    #[value(name = "conjecture1-2")]
    Conjecture12,
    Conjecture3,
    StrictInequality,
}

#[derive(Args)]
pub struct SweepArgs {
    pub kind: SweepKind,
    /// Grid such as `a=3..12;d=1..4;k=1..4;bound=400`.
    #[arg(long, default_value = "")]
    pub grid: String,
    /// Explicit monoid (theorem1 and strict-inequality); repeatable.
    #[arg(long, value_parser = parse_gens)]
    pub gens: Vec<Gens>,
    /// CSV report; counterexamples go to a sibling `.counterexamples.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Journal for resuming; defaults to `<out>.journal.jsonl` when --out is given.
    #[arg(long)]
    pub journal: Option<PathBuf>,
    /// Discard an existing journal instead of resuming from it.
    #[arg(long)]
    pub fresh: bool,
}

#[derive(Subcommand)]
enum FigureCommand {
    /// c(M) and c_mon(M) for ⟨a, a+1, a²−a−1⟩ over a range of a.
    Frobenius {
        #[arg(long, default_value_t = 4)]
        a_min: u64,
        #[arg(long, default_value_t = 20)]
        a_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Element window for the c_adj scan (default 3·(ℱ(M) + n₃)).
        #[arg(long)]
        window: Option<u64>,
    },
}

fn run(cli: &Cli) -> monocat::Result<render::Rendered> {
    let reduce = cli.reduce;
    match &cli.command {
        Command::Factorizations { gens, element } => commands::factorizations(gens, reduce, *element),
        Command::Invariants {
            gens,
            element: Some(element),
            witness,
            ..
        } => commands::element_invariants(gens, reduce, *element, *witness),
        Command::Invariants {
            gens,
            element: None,
            scan_bound,
            ..
        }
        | Command::SetInvariants { gens, scan_bound } => commands::set_invariants(gens, reduce, *scan_bound),
        Command::Betti { gens } => commands::betti(gens, reduce),
        Command::Family { family } => commands::family(family),
        Command::Sweep(args) => commands::sweep(args),
        Command::Figure {
            figure: FigureCommand::Frobenius {
                a_min,
                a_max,
                out,
                window,
            },
        } => commands::figure(*a_min, *a_max, out.as_deref(), *window),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            let argv: Vec<String> = std::env::args().skip(1).collect();
            if let Err(e) = render::emit(&out, cli.format, argv, start.elapsed()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.failed {
                eprintln!("counterexample found");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_guard() { 3 } else { 2 })
        }
    }
}
