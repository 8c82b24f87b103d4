use std::process::ExitCode;

use clap::{Parser, Subcommand};

use medial::constructions::{fresh_bindings, instantiate, labels};
use medial::groups::{nseq, verify_direct_product, DEFAULT_BUDGET};
use medial::{arrows_equal, brauer, eval_perm, parse_arrow, Error};

#[derive(Parser)]
#[command(name = "medial", version, about = "Arrow terms for medial commutativity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the source and target of an arrow.
    Type { arrow: String },
    /// Print the permutation of an arrow as a JSON array.
    Perm { arrow: String },
    /// Decide whether two arrows are equal; exit 1 if not.
    Eq { left: String, right: String },
    /// Check catalog equations at fresh letters.
    Verify {
        /// An equation label, or "all".
        label: String,
        /// Comma-separated letters to bind, in metavariable order.
        #[arg(long, value_delimiter = ',')]
        letters: Option<Vec<String>>,
    },
    /// Verify the group of automorphisms of p^n and print a JSON report.
    Group {
        n: usize,
        /// Largest group to enumerate (default 10^6, or $MEDIAL_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the labelling sequence N^n.
    Nseq { n: usize },
    /// Check the strand-diagram lift against the Yang-Baxter equation.
    BrauerYb,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn pass_fail(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn budget_from_env() -> Result<u64, Error> {
    match std::env::var("MEDIAL_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Syntax {
            offset: 0,
            message: format!("MEDIAL_BUDGET is not a number: {v:?}"),
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Type { arrow } => {
            let (s, t) = parse_arrow(&arrow)?.infer_type()?;
            println!("{s} -> {t}");
        }
        Command::Perm { arrow } => {
            let p = eval_perm(&parse_arrow(&arrow)?)?;
            println!("{p}");
        }
        Command::Eq { left, right } => {
            let equal = arrows_equal(&parse_arrow(&left)?, &parse_arrow(&right)?)?;
            println!("{}", if equal { "equal" } else { "not-equal" });
            if !equal {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify { label, letters } => {
            let chosen: Vec<&str> = if label == "all" {
                labels().collect()
            } else {
                vec![label.as_str()]
            };
            let mut all = true;
            for l in chosen {
                let bindings = fresh_bindings(l, letters.as_deref())?;
                let check = instantiate(l, &bindings)?.check()?;
                all &= check.holds();
                println!("{} {l}", pass_fail(check.holds()));
            }
            if !all {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Group { n, budget } => {
            let budget = match budget {
                Some(b) => b,
                None => budget_from_env()?,
            };
            let report = verify_direct_product(n, budget)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Nseq { n } => println!("{}", nseq(n)),
        Command::BrauerYb => {
            let checks = brauer::yang_baxter_suite()?;
            for c in &checks {
                println!("{} {}", pass_fail(c.pass), c.name);
            }
            if !checks.iter().all(|c| c.pass) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
