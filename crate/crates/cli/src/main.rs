//! `superbbw`: command-line front end for the BBW toolkit.

mod commands;
mod table;

use clap::{Parser, Subcommand};
use commands::{Action, CliError, CliResult, Rendered};
use serde_json::json;
use std::process::ExitCode;
use superbbw_core::{limits, Error};

/// Exit statuses, also listed in the README.
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_LIMIT: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "superbbw",
    version,
    about = "Exact Bott-Borel-Weil computations for basic classical Lie superalgebras"
)]
struct Cli {
    /// Emit a schema-versioned JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumeration sizes (overrides SUPERBBW_LIMIT).
    #[arg(long, global = true, value_name = "N")]
    limit: Option<u64>,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive, simple and ρ data of a Borel subalgebra.
    Roots {
        algebra: String,
        #[arg(default_value = "distinguished", allow_hyphen_values = true)]
        borel: String,
    },
    /// Weyl group order, length distribution and the orbit of a weight.
    Weyl {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, value_enum, default_value = "dot")]
        action: Action,
        /// Borel used for ρ in the dot action.
        #[arg(long, default_value = "distinguished", allow_hyphen_values = true)]
        borel: String,
    },
    /// Euler characteristic E(λ) as a virtual sum of even simple modules.
    Euler {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        borel: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// Also print the expanded g0-character.
        #[arg(long)]
        expand: bool,
        /// Also print the formal series truncated this far below the top.
        #[arg(long, value_name = "DEPTH")]
        window: Option<i64>,
    },
    /// Typicality and genericness flags.
    GenericCheck {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        borel: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Star action w*λ with the odd-reflection audit trail.
    Star {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        borel: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// Reduced word such as "s1 s2" (applied right to left) or "e".
        word: String,
    },
    /// Cohomology of the line bundle (or parabolic bundle with --levi).
    Bbw {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        borel: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// Comma-separated simple roots generating the Levi, e.g. "d1,e1-e2".
        #[arg(long, allow_hyphen_values = true)]
        levi: Option<String>,
    },
    /// Block chart, layer tables and Kostant tables for osp(m|2).
    Block {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// Search radius for block members.
        #[arg(long, default_value_t = 8)]
        radius: i64,
        /// Largest chain position to tabulate.
        #[arg(long)]
        window: Option<i64>,
    },
    /// BGG reciprocity check for the projective cover of L_λ.
    Reciprocity {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        borel: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
}

fn dispatch(command: &Command) -> CliResult<Rendered> {
    match command {
        Command::Roots { algebra, borel } => commands::roots(algebra, borel),
        Command::Weyl {
            algebra,
            weight,
            action,
            borel,
        } => commands::weyl(algebra, borel, weight.as_deref(), *action),
        Command::Euler {
            algebra,
            borel,
            weight,
            expand,
            window,
        } => commands::euler(algebra, borel, weight, *expand, *window),
        Command::GenericCheck {
            algebra,
            borel,
            weight,
        } => commands::generic_check(algebra, borel, weight),
        Command::Star {
            algebra,
            borel,
            weight,
            word,
        } => commands::star(algebra, borel, weight, word),
        Command::Bbw {
            algebra,
            borel,
            weight,
            levi,
        } => commands::bbw(algebra, borel, weight, levi.as_deref()),
        Command::Block {
            algebra,
            weight,
            radius,
            window,
        } => commands::block(algebra, weight, *radius, *window),
        Command::Reciprocity {
            algebra,
            borel,
            weight,
        } => commands::reciprocity(algebra, borel, weight),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::InvalidAlgebra(_) | Error::Precondition(_) | Error::NotApplicable(_) => {
            EXIT_PRECONDITION
        }
        Error::LimitExceeded { .. } => EXIT_LIMIT,
        Error::Consistency(_) => EXIT_INTERNAL,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::InvalidAlgebra(_) => "invalid_algebra",
        Error::Precondition(_) => "precondition",
        Error::NotApplicable(_) => "not_applicable",
        Error::LimitExceeded { .. } => "limit_exceeded",
        Error::Consistency(_) => "consistency",
    }
}

fn report_error(err: &CliError, as_json: bool) {
    if as_json {
        let mut doc = json!({
            "schema": commands::schema("error"),
            "kind": kind(&err.error),
            "message": err.error.to_string(),
        });
        if let Some((name, input)) = &err.argument {
            doc["argument"] = json!(name);
            doc["input"] = json!(input);
        }
        if let Error::Parse { position, .. } = &err.error {
            doc["position"] = json!(position);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("error document")
        );
        return;
    }
    eprintln!("error: {}", err.error);
    if let Some((name, input)) = &err.argument {
        eprintln!("  {name}: {input}");
        if let Error::Parse { position, .. } = &err.error {
            eprintln!("  {}^", " ".repeat(name.chars().count() + 2 + position));
        }
    }
}

fn setup(cli: &Cli) -> Result<(), CliError> {
    limits::apply_env_limit()?;
    if let Some(n) = cli.limit {
        limits::set_enumeration_limit(n);
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| {
                CliError::from(Error::precondition(format!(
                    "cannot start {jobs} workers: {e}"
                )))
            })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = setup(&cli).and_then(|_| dispatch(&cli.command));
    match result {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("document")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            report_error(&err, cli.json);
            ExitCode::from(exit_code(&err.error))
        }
    }
}
