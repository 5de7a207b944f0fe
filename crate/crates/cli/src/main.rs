use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use partcat::cache::{cached_listing, listing, read_generators};
use partcat::category::{generate_closure, ClosureOptions};
use partcat::classifier::{classify_with, table1_text, ClassifyOptions};
use partcat::partition::{ExplicitPartition, Partition};
use partcat::relation::emit;
use partcat::verify::{run_suite, SUITES};

/// Two-colored partitions and the categories they generate.
#[derive(Parser)]
#[command(name = "partcat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a single operation and print the canonical word.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// List the elements of a bounded closure.
    Closure {
        /// Generator file, one partition per line.
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Directory for cached listings.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Identify the table row of a globally colorized category.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Largest s probed for the parametrized rows.
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
    /// Run a self-check suite, or `all`.
    Verify {
        #[arg(value_parser = suite_names())]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the relation a partition imposes on an n x n matrix.
    Emit {
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the classification table.
    Table1,
}

#[derive(Args)]
struct Bounds {
    /// Length bound L for reported elements.
    #[arg(long, default_value_t = 6)]
    bound: usize,
    /// Working bound L' for intermediate partitions.
    #[arg(long)]
    working_bound: Option<usize>,
}

impl Bounds {
    fn options(&self, generators: &[Partition]) -> ClosureOptions {
        match self.working_bound {
            Some(w) => ClosureOptions::new(self.bound, w),
            None => ClosureOptions::with_default_working(self.bound, generators),
        }
    }
}

#[derive(Subcommand)]
enum Op {
    Tensor { left: String, right: String },
    Contract {
        /// 1-based position; the successor of the last point is the first.
        #[arg(long)]
        at: usize,
        word: String,
    },
    Reflect { word: String },
    Rotate { word: String },
    /// White minus black points.
    ColorSum { word: String },
    /// Drop the colors.
    Forget { word: String },
    Noncrossing { word: String },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names = vec!["all", "glue2-shadow"];
    names.extend(SUITES);
    clap::builder::PossibleValuesParser::new(names)
}

type Failure = Box<dyn std::error::Error>;

/// A word, or the explicit JSON form for partitions beyond the alphabet.
fn parse(text: &str) -> Result<Partition, Failure> {
    let p = if text.trim_start().starts_with('{') {
        Partition::try_from(ExplicitPartition::from_json(text)?)?
    } else {
        Partition::parse(text)?
    };
    Ok(p)
}

/// Words when they fit the alphabet, explicit form otherwise.
fn show(p: &Partition) -> String {
    p.render()
        .unwrap_or_else(|_| ExplicitPartition::from(p).to_json())
}

fn run_op(op: Op) -> Result<String, Failure> {
    Ok(match op {
        Op::Tensor { left, right } => show(&parse(&left)?.tensor(&parse(&right)?)),
        Op::Contract { at, word } => show(&parse(&word)?.contract(at)?),
        Op::Reflect { word } => show(&parse(&word)?.reflect()),
        Op::Rotate { word } => show(&parse(&word)?.rotate()?),
        Op::ColorSum { word } => parse(&word)?.c().to_string(),
        Op::Forget { word } => {
            let p = parse(&word)?.forget_colors();
            p.render()?
        }
        Op::Noncrossing { word } => parse(&word)?.is_noncrossing().to_string(),
    })
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Op { op } => println!("{}", run_op(op)?),
        Command::Closure { file, bounds, cache } => {
            let gens = read_generators(&file)?;
            let options = bounds.options(&gens);
            let text = match cache {
                Some(dir) => cached_listing(&dir, &gens, options)?.0,
                None => listing(&generate_closure(&gens, options)?),
            };
            print!("{text}");
        }
        Command::Classify { file, bounds, s_max } => {
            let gens = read_generators(&file)?;
            let cat = generate_closure(&gens, bounds.options(&gens))?;
            let report = classify_with(&cat, ClassifyOptions { s_max })?;
            print!("{}", report.to_text());
        }
        Command::Verify { suite, seed } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut ok = true;
            for name in names {
                let report = run_suite(name, seed).ok_or_else(|| format!("unknown suite {name:?}"))?;
                print!("{report}");
                ok &= report.passed();
            }
            return Ok(ok);
        }
        Command::Emit { word, n, out } => {
            if n == 0 {
                return Err("n must be positive".into());
            }
            let text = emit(&parse(&word)?, n).to_rel();
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Table1 => print!("{}", table1_text()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
