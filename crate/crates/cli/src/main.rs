use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

#[derive(Parser, Debug)]
#[command(
    name = "solvlat",
    version,
    about = "Cohomology, obstructions and lattices for solvable Lie algebras"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Lex,
    Grevlex,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Antisymmetry and Jacobi identity, plus nilpotency and solvability.
    Validate { target: String },
    /// Betti numbers of the Chevalley-Eilenberg complex.
    Betti { target: String },
    /// Betti numbers and cocycle representatives in every degree.
    Cohomology { target: String },
    /// Is the two-form closed and nondegenerate.
    Symplectic {
        target: String,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Cup with powers of [omega] from H^(n-k) to H^(n+k).
    HardLefschetz {
        target: String,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Case analysis showing the group admits no lattice.
    Obstruct {
        target: String,
        /// Also report the reduced Groebner basis of the root system in this order.
        #[arg(long, value_enum)]
        order: Option<Order>,
    },
    /// Certificate for the lattice built from x^3 - p x^2 + q x - 1.
    BuildLattice {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        /// Width of the root enclosures, e.g. 1/1000000.
        #[arg(long)]
        width: Option<String>,
    },
    /// Re-check a lattice certificate or an obstruction report.
    Verify {
        file: PathBuf,
        /// Seed for the random product check on lattice certificates.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Builtin algebras.
    ListExamples,
}

/// Exit status: the command ran and the answer is yes, or the answer is no.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub verdict: Verdict,
}

fn dispatch(verb: Verb) -> anyhow::Result<Output> {
    match verb {
        Verb::Validate { target } => commands::validate(&target),
        Verb::Betti { target } => commands::betti(&target),
        Verb::Cohomology { target } => commands::cohomology(&target),
        Verb::Symplectic { target, omega } => commands::symplectic(&target, omega.as_deref()),
        Verb::HardLefschetz { target, omega } => {
            commands::hard_lefschetz(&target, omega.as_deref())
        }
        Verb::Obstruct { target, order } => commands::obstruct(&target, order),
        Verb::BuildLattice { p, q, width } => commands::build_lattice(p, q, width.as_deref()),
        Verb::Verify { file, seed } => commands::verify(&file, seed),
        Verb::ListExamples => Ok(commands::list_examples()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let format = cli.format;
    let result = dispatch(cli.verb).and_then(|out| {
        if let Some(path) = &cli.out {
            std::fs::write(path, serde_json::to_string_pretty(&out.json)? + "\n")
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("json"))
                }
            }
            match out.verdict {
                Verdict::Yes => ExitCode::SUCCESS,
                Verdict::No => ExitCode::from(2),
            }
        }
        Err(e) => {
            match format {
                Format::Text => eprintln!("error: {e:#}"),
                Format::Json => println!("{}", serde_json::json!({ "error": format!("{e:#}") })),
            }
            ExitCode::from(1)
        }
    }
}
