use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use semiglue::groebner::OrderKind;
use semiglue::resolution::FieldChoice;
use semiglue_cli::commands::SUBCOMMANDS;
use semiglue_cli::corpus::{corpus_report, run_corpus};
use semiglue_cli::{parse_problem, run, CliError, Options, Report};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Grevlex,
    Grlex,
    Lex,
}

#[derive(Parser, Debug)]
#[command(name = "semiglue", version, about = "Gluing of affine semigroups and their toric ideals")]
struct Args {
    /// One of: rank, toric, member, cone, dval, sval, glue-check, glue-build,
    /// glue-verify, resolve, invariants, paper.
    subcommand: String,
    /// Problem file, or `-` for standard input. Not used by `paper`.
    file: Option<String>,
    /// Monomial order for Groebner bases.
    #[arg(long, value_enum, default_value = "grevlex")]
    order: Order,
    /// Coefficient field for resolutions: 32003 or QQ.
    #[arg(long, default_value = "32003")]
    field: FieldChoice,
    /// Largest number of variables accepted.
    #[arg(long, default_value_t = 12)]
    limit_vars: usize,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Corpus entries to run (repeatable); all when absent.
    #[arg(long)]
    only: Vec<String>,
    /// Leave the timing field out of the output.
    #[arg(long)]
    no_timing: bool,
    /// Corpus self-test: perturb one expected value per entry.
    #[arg(long)]
    perturb: bool,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn execute(args: &Args) -> Result<(Report, bool), CliError> {
    let opts = Options {
        order: match args.order {
            Order::Grevlex => OrderKind::Grevlex,
            Order::Grlex => OrderKind::Grlex,
            Order::Lex => OrderKind::Lex,
        },
        field: args.field,
        limit_vars: args.limit_vars,
    };
    let start = Instant::now();
    if args.subcommand == "paper" {
        let results = run_corpus(&opts, &args.only, args.perturb)?;
        let mut report = corpus_report(&results, !args.no_timing);
        if !args.no_timing {
            report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
        }
        let ok = report.all_passed();
        return Ok((report, ok));
    }
    if !SUBCOMMANDS.contains(&args.subcommand.as_str()) {
        return Err(CliError::Input(format!("unknown subcommand '{}' (expected one of {})", args.subcommand, SUBCOMMANDS.join(", "))));
    }
    let path = args.file.as_deref().ok_or_else(|| CliError::Input("missing problem file (use - for stdin)".into()))?;
    let problem = parse_problem(&read_input(path)?)?;
    let mut report = run(&args.subcommand, &problem, &opts)?;
    if !args.no_timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    Ok((report, true))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok((report, ok)) => {
            if args.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_human());
            }
            // A failing corpus is neither an input error nor a resource limit.
            ExitCode::from(if ok { 0 } else { 3 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
