use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lrgame::{
    even_nim_outcome, Engine, EvenNimPile, EvenNimState, Periodicity, Position, SubtractionSet,
    Verdict,
};

/// Evaluate, simplify and compare LR-ending partisan game positions.
///
/// Positions use the notation `*L`, `*R`, `*L_n`, `*R_n`, `Mn`, `Bn`,
/// `{a, b, ...}` and `a + b`.
#[derive(Debug, Parser)]
#[command(name = "lrgame", version)]
struct Cli {
    /// Print subtrees that match a named family as `*L_n`, `*R_n`, `Mn`, `Bn`.
    #[arg(long, global = true)]
    names: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the outcome class and the simplified value.
    Eval { expr: String },
    /// Print the full game tree of the expression.
    Sum { expr: String },
    /// Print the conjugate (all terminals swapped).
    Conj { expr: String },
    /// Print the height of the game tree.
    Birthday { expr: String },
    /// Print the simplified value.
    Simplify { expr: String },
    /// Search every context born by day D for one that tells A and B apart.
    Equiv {
        a: String,
        b: String,
        #[arg(long, default_value_t = 2)]
        day: u32,
    },
    /// List every position born by day D.
    Enumerate {
        #[arg(long)]
        day: u32,
    },
    /// Single-pile value tables.
    #[command(subcommand)]
    Table(TableCommand),
    /// Outcome of a ruleset position.
    #[command(subcommand)]
    Outcome(OutcomeCommand),
}

#[derive(Debug, Subcommand)]
enum TableCommand {
    /// Subtraction game with the given removal set.
    Subtraction {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u32>,
        #[command(flatten)]
        opts: TableOpts,
    },
    /// Even Nim, one pile of each size.
    EvenNim {
        /// Piles that have already been moved in (only even removals remain).
        #[arg(long)]
        touched: bool,
        #[command(flatten)]
        opts: TableOpts,
    },
}

#[derive(Debug, Args)]
struct TableOpts {
    #[arg(long)]
    max: usize,
    /// Append a `period<TAB>q<TAB>p` line when the table is periodic.
    #[arg(long)]
    report: bool,
}

#[derive(Debug, Subcommand)]
enum OutcomeCommand {
    /// Initial Even Nim position with the given even pile sizes.
    EvenNim {
        #[arg(required = true)]
        sizes: Vec<u32>,
    },
}

/// Failure while running a command; reported on stderr with exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let mut engine = Engine::new();
    match run(&mut engine, &cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(engine: &mut Engine, cli: &Cli) -> Result<u8, Failure> {
    let names = cli.names;
    match &cli.command {
        Command::Eval { expr } => {
            let g = engine.eval_str(expr)?;
            let s = engine.simplify(g);
            println!("{}\t{}", engine.outcome(g), engine.format(s, names));
        }
        Command::Sum { expr } => {
            let g = engine.eval_str(expr)?;
            println!("{}", engine.format(g, names));
        }
        Command::Conj { expr } => {
            let g = engine.eval_str(expr)?;
            let c = engine.conjugate(g);
            println!("{}", engine.format(c, names));
        }
        Command::Birthday { expr } => {
            let g = engine.eval_str(expr)?;
            println!("{}", engine.birthday(g));
        }
        Command::Simplify { expr } => {
            let g = engine.eval_str(expr)?;
            let s = engine.simplify(g);
            println!("{}", engine.format(s, names));
        }
        Command::Equiv { a, b, day } => {
            let g = engine.eval_str(a)?;
            let h = engine.eval_str(b)?;
            match engine.equivalent_bounded(g, h, *day)? {
                Verdict::Refuted {
                    witness,
                    left,
                    right,
                } => {
                    let w = engine.format(witness, names);
                    println!("refuted\t{w}\t{left}\t{right}");
                    return Ok(2);
                }
                Verdict::NoCounterexample => println!("no-counterexample"),
            }
        }
        Command::Enumerate { day } => {
            let universe = engine.enumerate_universe(*day)?;
            for &g in universe.members.iter() {
                println!("{}", engine.format(g, names));
            }
        }
        Command::Table(TableCommand::Subtraction { set, opts }) => {
            let set = SubtractionSet::new(set)?;
            let table = engine.value_table(&set, opts.max);
            for (n, &g) in table.entries.iter().enumerate() {
                print_row(engine, n, g, names);
            }
            if opts.report {
                print_period(table.periodicity);
            }
        }
        Command::Table(TableCommand::EvenNim { touched, opts }) => {
            let mut entries = Vec::with_capacity(opts.max + 1);
            for size in 0..=opts.max {
                let size = u32::try_from(size).map_err(|_| "pile size too large")?;
                let state = EvenNimState {
                    piles: vec![EvenNimPile {
                        size,
                        fresh: !touched,
                    }],
                };
                let tree = engine.even_nim_tree(&state);
                let g = engine.simplify(tree);
                print_row(engine, size as usize, g, names);
                entries.push(g);
            }
            if opts.report {
                print_period(lrgame::detect_periodicity(&entries));
            }
        }
        Command::Outcome(OutcomeCommand::EvenNim { sizes }) => {
            println!("{}", even_nim_outcome(sizes)?);
        }
    }
    Ok(0)
}

fn print_row(engine: &mut Engine, n: usize, g: Position, names: bool) {
    let text = engine.format(g, names);
    println!("{n}\t{text}\t{}", engine.outcome(g));
}

fn print_period(periodicity: Option<Periodicity>) {
    if let Some(p) = periodicity {
        println!("period\t{}\t{}", p.preperiod, p.period);
    }
}
