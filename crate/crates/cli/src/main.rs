use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypred::poly::DEFAULT_PAIR_BUDGET;
use hypred_cli::commands::{self, envelope, DemoPair, FormSource};
use hypred_cli::config::{validate_prime, DEFAULT_PRIME, DEFAULT_SEED, SECOND_PRIME};
use hypred_cli::error::{EXIT_OK, EXIT_SUITE_FAILURE, EXIT_USAGE};
use hypred_cli::render::render;
use hypred_cli::suite::{self, SuiteConfig};
use hypred_cli::{CliError, Format, RunConfig};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "hypred", version, about = "Quadric bundles, hyperbolic reduction and discriminant node counts")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Prime characteristic for finite-field computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Maximum pair reductions per Gröbner basis.
    #[arg(long, global = true, default_value_t = DEFAULT_PAIR_BUDGET)]
    budget: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// A generated family such as C4 or GM21.
    #[arg(long)]
    family: Option<String>,
    /// A form file in the JSON schema.
    #[arg(long)]
    form: Option<PathBuf>,
}

impl Source {
    fn resolve(self) -> FormSource {
        match (self.family, self.form) {
            (Some(f), _) => FormSource::Family(f),
            (None, Some(p)) => FormSource::File(p),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Numerical invariants of a named surface.
    Invariants { scene: String },
    /// Generate a hyperbolic-reduction pair and check it end to end.
    DemoPair { pair: String },
    /// Count the singular points of a discriminant.
    Nodes(Source),
    /// Discriminant equations of a form, per chart and global.
    Discriminant(Source),
    /// Write a generated family member as a form file.
    Generate {
        #[arg(long)]
        family: String,
    },
    /// Hyperbolic reduction of a form file along a coordinate direction.
    Reduce {
        #[arg(long)]
        form: PathBuf,
        /// Coordinate direction eK, 1-indexed.
        #[arg(long)]
        direction: String,
    },
    /// Run the full verification suite.
    VerifyAll {
        /// Comma-separated primes for the cross-prime checks.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

fn execute(cli: Cli) -> Result<(Value, i32), CliError> {
    let cfg = RunConfig {
        seed: cli.seed,
        prime: validate_prime(cli.prime)?,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        budget: cli.budget,
        out: cli.out,
    };
    let wrap = |name: &str, v: Value| (envelope(&cfg, name, v), EXIT_OK);
    Ok(match cli.command {
        Command::Invariants { scene } => wrap("invariants", commands::invariants(&scene)?),
        Command::DemoPair { pair } => {
            let r = commands::demo_pair(&cfg, pair.parse::<DemoPair>()?)?;
            let code = if r["pass"] == Value::Bool(true) { EXIT_OK } else { EXIT_SUITE_FAILURE };
            (envelope(&cfg, "demo-pair", r), code)
        }
        Command::Nodes(src) => wrap("nodes", commands::nodes(&cfg, &src.resolve())?),
        Command::Discriminant(src) => wrap("discriminant", commands::discriminant_cmd(&cfg, &src.resolve())?),
        Command::Generate { family } => (commands::generate_cmd(&cfg, &family)?, EXIT_OK),
        Command::Reduce { form, direction } => (commands::reduce_cmd(&form, &direction)?, EXIT_OK),
        Command::VerifyAll { primes } => {
            let primes = match primes {
                Some(ps) => ps.into_iter().map(validate_prime).collect::<Result<Vec<_>, _>>()?,
                None if cfg.prime == SECOND_PRIME => vec![cfg.prime, DEFAULT_PRIME],
                None => vec![cfg.prime, SECOND_PRIME],
            };
            if primes.is_empty() {
                return Err(CliError::Usage("at least one prime is needed".into()));
            }
            let scfg = SuiteConfig { seed: cfg.seed, primes: primes.clone(), budget: cfg.budget };
            let report = suite::run_all(&scfg)?;
            for item in &report.items {
                eprintln!("{}", item.line());
            }
            let code = if report.pass() { EXIT_OK } else { EXIT_SUITE_FAILURE };
            let mut v = envelope(&cfg, "verify-all", serde_json::to_value(&report).expect("reports serialize"));
            v["primes"] = serde_json::json!(primes);
            (v, code)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let out = cli.out.clone();
    let start = Instant::now();
    let result = execute(cli);
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    let (report, code) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = render(&report, format);
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                let e = CliError::Output(format!("{}: {e}", path.display()));
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
