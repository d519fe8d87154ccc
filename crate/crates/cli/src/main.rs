use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use autocomm::automorphism::AutLimits;
use autocomm::catalog::build_str;
use autocomm::isoclinism::{find_autoisoclinism, IsoclinismResult, DEFAULT_BUDGET};
use autocomm::report::{analyze, render_table, survey, survey_csv, survey_table, AnalyzeOptions};
use autocomm::{Error, Execution};

const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATED: u8 = 2;
const EXIT_NONE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "autocomm",
    version,
    about = "Autocommuting probabilities of small finite groups"
)]
struct Cli {
    /// Largest group order whose automorphism group is enumerated.
    #[arg(long, global = true, env = "AUTOCOMM_MAX_ORDER")]
    max_aut_order: Option<usize>,

    /// Print progress and diagnostics to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Distribution, bounds and characterizations for one group.
    Analyze {
        /// Group spec such as `cyclic:4`, `product:cyclic:3,cyclic:4` or `file:g.json`.
        #[arg(long)]
        group: String,
        /// Report Pr_g for every element g.
        #[arg(long)]
        all_g: bool,
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        characterize: bool,
        /// Include the automorphism image arrays (json only).
        #[arg(long)]
        automorphisms: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One row per corpus group up to the given order.
    Survey {
        #[arg(long)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Searches for an autoisoclinism between two groups.
    Isoclinic {
        a: String,
        b: String,
        /// Largest number of (psi, gamma) pairs to check.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), u8> {
    let res = match output {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    })
}

fn input_error(e: Error) -> u8 {
    eprintln!("error: {e}");
    EXIT_INPUT
}

fn limits(cli: &Cli) -> AutLimits {
    let mut l = AutLimits::default();
    if let Some(cap) = cli.max_aut_order {
        l.max_order = cap;
    }
    l
}

fn run(cli: Cli) -> Result<(), u8> {
    let limits = limits(&cli);
    let verbose = cli.verbose;
    match cli.command {
        Command::Analyze {
            group,
            all_g,
            bounds,
            characterize,
            automorphisms,
            format,
            output,
        } => {
            if format == Format::Csv {
                eprintln!("error: csv output is only available for survey");
                return Err(EXIT_INPUT);
            }
            let g = build_str(&group).map_err(input_error)?;
            if verbose > 0 {
                eprintln!("built {} of order {}", g.name(), g.order());
            }
            let opts = AnalyzeOptions {
                all_g,
                bounds,
                characterize,
                automorphisms,
            };
            let report = analyze(&g, opts, limits, Execution::default()).map_err(input_error)?;
            let text = match format {
                Format::Json => report.to_json() + "\n",
                _ => render_table(&report, &g),
            };
            emit(&output, &text)?;
            let violations = report.violations();
            if !violations.is_empty() {
                for v in violations {
                    eprintln!("violated: {} (g = {:?})", v.id, v.g);
                }
                return Err(EXIT_VIOLATED);
            }
            Ok(())
        }
        Command::Survey {
            max_order,
            format,
            jobs,
            output,
        } => {
            let rows = if jobs == 0 {
                survey(max_order, limits, Execution::default())
            } else {
                Execution::with_jobs(jobs, |exec| survey(max_order, limits, exec))
            };
            if verbose > 0 {
                eprintln!("{} groups", rows.len());
            }
            let text = match format {
                Format::Csv => survey_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
                Format::Table => survey_table(&rows),
            };
            emit(&output, &text)
        }
        Command::Isoclinic {
            a,
            b,
            budget,
            output,
        } => {
            let g = build_str(&a).map_err(input_error)?;
            let h = build_str(&b).map_err(input_error)?;
            match find_autoisoclinism(&g, &h, budget, limits, Execution::default()) {
                Ok(IsoclinismResult::Found(w)) => {
                    let text = serde_json::to_string_pretty(&w).expect("witness serializes");
                    emit(&output, &(text + "\n"))
                }
                Ok(IsoclinismResult::None { reason }) => {
                    println!("not autoisoclinic: {reason}");
                    Err(EXIT_NONE)
                }
                Err(Error::SearchBudgetExceeded { budget }) => {
                    eprintln!("search budget of {budget} exhausted");
                    Err(EXIT_BUDGET)
                }
                Err(e) => Err(input_error(e)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
