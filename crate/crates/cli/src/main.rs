use std::process::ExitCode;

use clap::{Parser, Subcommand};
use realcycle::cycleclass::OracleFlags;
use realcycle::qform::{FieldCtx, Place};
use realcycle_cli::parse::{parse_curve_spec, parse_field, parse_form_entries, parse_ordering, parse_rational, parse_twist, ParseError};
use realcycle_cli::report::{bound_report, curve_report, form_report, to_json, CliError};
use realcycle_cli::suite::{run, SuiteOptions};

const DEFAULT_BUDGET: u64 = 50;

#[derive(Parser)]
#[command(name = "realcycle", version, about = "Cycle class maps on real curves, with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a curve: components, twisted cohomology, cycle class images and bounds.
    Curve {
        #[arg(long)]
        spec: String,
        /// `points:(x,+|-)[*m],...`
        #[arg(long)]
        twist: Option<String>,
        /// Height budget for the witness search (overrides RC_SEARCH_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exponent bounds for the cokernel of the cycle class map.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        real_nonempty: bool,
        #[arg(long)]
        etale_vanishing: bool,
    },
    /// Invariants of a diagonal form `<e1,e2,...>`.
    Form {
        form: String,
        /// q, r, c, rt (=R(t)), qt (=Q(t)) or fp:<p>. Defaults to rt when an entry involves t, else q.
        #[arg(long)]
        field: Option<String>,
        /// Ordering: arch, inf, -inf, a+ or a-. Repeatable.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
        /// Place for the second residue: a rational or inf. Repeatable.
        #[arg(long = "residue-at", allow_hyphen_values = true)]
        residue_at: Vec<String>,
    },
    /// Run the curated check suite.
    Suite {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true)]
        inject_wrong_gamma: bool,
    },
}

fn budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("RC_SEARCH_BUDGET") {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Ok(b),
            _ => Err(ParseError::BadArgument(format!("RC_SEARCH_BUDGET must be a positive integer, got {v:?}")).into()),
        },
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn place(s: &str) -> Result<Place, CliError> {
    match s.trim() {
        "inf" | "infinity" => Ok(Place::Infinity),
        t => Ok(Place::Finite(parse_rational(t)?)),
    }
}

fn execute(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Curve { spec, twist, budget: b } => {
            let b = budget(b)?;
            let spec = parse_curve_spec(&spec)?;
            let twist = twist.as_deref().map(parse_twist).transpose()?.unwrap_or_default();
            let model = spec.into_model()?;
            Ok(to_json(&curve_report(&model, &twist, b)?))
        }
        Command::Bound { d, c, proper, real_nonempty, etale_vanishing } => {
            if d < 0 || c < 0 {
                return Err(ParseError::BadArgument("--d and --c must be non-negative".into()).into());
            }
            let flags = OracleFlags { proper, real_nonempty, etale_vanishing };
            Ok(to_json(&bound_report(d, c, flags)?))
        }
        Command::Form { form, field, at, residue_at } => {
            let entries = parse_form_entries(&form)?;
            let ctx = match field {
                Some(f) => parse_field(&f)?,
                None if entries.iter().any(|e| e.as_poly().is_none_or(|p| !p.is_constant())) => {
                    FieldCtx::RationalFunctions
                }
                None => FieldCtx::Rationals,
            };
            let orderings = at.iter().map(|o| parse_ordering(o)).collect::<Result<Vec<_>, _>>()?;
            let places = residue_at.iter().map(|p| place(p)).collect::<Result<Vec<_>, _>>()?;
            Ok(to_json(&form_report(ctx, &entries, &orderings, &places)?))
        }
        Command::Suite { .. } => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Suite { filter, inject_wrong_gamma } = &cli.command {
        let outcomes = run(filter.as_deref(), &SuiteOptions { inject_wrong_gamma: *inject_wrong_gamma });
        let mut failed = 0;
        for o in &outcomes {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            print!("{tag} {:<36} [{}] {}ms", o.id, o.label, o.millis);
            if o.passed {
                println!();
            } else {
                failed += 1;
                println!(" :: {}", o.detail);
            }
        }
        println!("{} checks, {} passed, {} failed", outcomes.len(), outcomes.len() - failed, failed);
        return if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
