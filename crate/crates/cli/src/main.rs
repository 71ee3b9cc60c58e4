use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use stylic::algebra::StylAlgebra;
use stylic::alphabet::MAX_ALPHABET;
use stylic::cartan::{cartan_combinatorial, cartan_linear};
use stylic::monoid::{EnumerateOptions, StylMonoid};
use stylic::quiver::Quiver;
use stylic::verify::{verify_up_to, VerifyConfig, DEFAULT_SEED};

/// Largest alphabet accepted by `verify` and `cartan` without `--force`.
const GUARD_LIMIT: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "stylic", version, about = "Stylic monoids, their algebras, quivers and Cartan matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Enumerate Styl(A) and print its elements.
    Enumerate,
    /// Print the idempotents e_γ and check that they form a complete primitive system.
    Idempotents,
    /// Export the quiver Q(A), or Q'(A) with --extended.
    Quiver,
    /// Compute the Cartan matrix two ways and compare.
    Cartan,
    /// Run the full invariant suite for every alphabet size up to n.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Dot,
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Alphabet size.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the artifact here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Include the loops of the extended quiver.
    #[arg(long, global = true)]
    extended: bool,
    /// Precompute the full multiplication table.
    #[arg(long, global = true)]
    memoize_mult: bool,
    /// Word length bound for the surjectivity search (default 2n).
    #[arg(long, global = true)]
    max_word_search_length: Option<usize>,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Allow verify and cartan beyond n = 6.
    #[arg(long, global = true)]
    force: bool,
}

/// A configuration error; exits with status 2.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

/// What a command produced: the artifact, a summary for stderr, and whether
/// every check passed.
struct Outcome {
    artifact: String,
    summary: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.run) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.run, &outcome) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) if e.is::<Invalid>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(config: &RunConfig, outcome: &Outcome) -> Result<()> {
    match &config.output {
        Some(path) => {
            fs::write(path, &outcome.artifact).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().write_all(outcome.artifact.as_bytes())?,
    }
    io::stderr().write_all(outcome.summary.as_bytes())?;
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("STYLIC_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| invalid(format!("STYLIC_THREADS must be a non-negative integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the worker pool")
}

fn validate(command: Command, config: &RunConfig) -> Result<(usize, Format)> {
    let n = config.n.ok_or_else(|| invalid("--n is required"))?;
    if n == 0 || n > MAX_ALPHABET {
        return Err(invalid(format!("--n must be in 1..={MAX_ALPHABET}, got {n}")));
    }
    if matches!(command, Command::Verify | Command::Cartan) && n > GUARD_LIMIT && !config.force {
        return Err(invalid(format!(
            "--n {n} is above {GUARD_LIMIT} for {}; pass --force to run anyway",
            name(command)
        )));
    }
    let (default, allowed): (Format, &[Format]) = match command {
        Command::Enumerate => (Format::Json, &[Format::Json, Format::Text]),
        Command::Idempotents => (Format::Json, &[Format::Json, Format::Text]),
        Command::Quiver => (Format::Dot, &[Format::Dot, Format::Json, Format::Text]),
        Command::Cartan => (Format::Text, &[Format::Csv, Format::Json, Format::Text]),
        Command::Verify => (Format::Text, &[Format::Json, Format::Text]),
    };
    let format = config.format.unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(invalid(format!("{} does not support --format {}", name(command), name(format))));
    }
    if config.extended && command != Command::Quiver {
        return Err(invalid("--extended only applies to the quiver command"));
    }
    Ok((n, format))
}

fn name(value: impl std::fmt::Debug) -> String {
    format!("{value:?}").to_lowercase()
}

fn run(command: Command, config: &RunConfig) -> Result<Outcome> {
    let (n, format) = validate(command, config)?;
    configure_threads()?;
    let options = EnumerateOptions {
        memoize: config.memoize_mult,
        ..EnumerateOptions::default()
    };
    match command {
        Command::Enumerate => enumerate(n, format, options),
        Command::Idempotents => idempotents(n, format, options),
        Command::Quiver => quiver(n, config.extended, format),
        Command::Cartan => cartan(n, format, options),
        Command::Verify => verify(n, config, format),
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn enumerate(n: usize, format: Format, options: EnumerateOptions) -> Result<Outcome> {
    let monoid = StylMonoid::enumerate_with(n, options)?;
    let artifact = match format {
        Format::Json => to_json(&monoid.to_json())?,
        _ => {
            let mut out = String::new();
            for x in monoid.ids() {
                let _ = writeln!(out, "{:>6}  {}", x.0, monoid.rep_word(x));
            }
            out
        }
    };
    Ok(Outcome {
        artifact,
        summary: format!("|Styl| = {}\n", monoid.size()),
        passed: true,
    })
}

fn idempotents(n: usize, format: Format, options: EnumerateOptions) -> Result<Outcome> {
    let monoid = StylMonoid::enumerate_with(n, options)?;
    let algebra = StylAlgebra::new(&monoid);
    let columns: Vec<_> = monoid.alphabet().columns().collect();
    let artifact = match format {
        Format::Json => {
            let list = columns
                .iter()
                .map(|&g| algebra.idempotent_json(g))
                .collect::<Result<Vec<_>, _>>()?;
            to_json(&list)?
        }
        _ => {
            let mut out = String::new();
            for (g, e) in columns.iter().zip(algebra.idempotents()) {
                let _ = writeln!(out, "e_{} = {}", g.name(), e.display(&monoid));
            }
            out
        }
    };
    let report = algebra.verify_idempotent_system();
    let mut summary = String::new();
    for (name, check) in report.checks() {
        let verdict = if check.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(summary, "{verdict}  {name}");
        if let Some(w) = &check.witness {
            let _ = writeln!(summary, "      counterexample: {w}");
        }
    }
    Ok(Outcome {
        artifact,
        summary,
        passed: report.all_passed(),
    })
}

fn quiver(n: usize, extended: bool, format: Format) -> Result<Outcome> {
    let q = if extended {
        Quiver::build_extended(n)?
    } else {
        Quiver::build(n)?
    };
    let artifact = match format {
        Format::Dot => q.to_dot(),
        Format::Json => to_json(&q.to_json())?,
        _ => {
            let mut out = String::new();
            for e in q.edges() {
                let _ = writeln!(out, "{} -{}-> {}", e.source.name(), e.label, e.target.name());
            }
            out
        }
    };
    Ok(Outcome {
        summary: format!("{} vertices, {} edges\n", q.vertices().count(), q.edges().len()),
        artifact,
        passed: true,
    })
}

fn cartan(n: usize, format: Format, options: EnumerateOptions) -> Result<Outcome> {
    let monoid = StylMonoid::enumerate_with(n, options)?;
    let linear = cartan_linear(&monoid);
    let combinatorial = cartan_combinatorial(&monoid);
    let equal = linear == combinatorial;
    let artifact = match format {
        Format::Json => to_json(&json!({
            "n": n,
            "linear": linear.entries,
            "combinatorial": combinatorial.entries,
            "equal": equal,
        }))?,
        Format::Csv if equal => linear.to_csv(),
        Format::Csv => format!("{}\n{}", linear.to_csv(), combinatorial.to_csv()),
        _ => format!(
            "by ranks:\n{}\nby counting:\n{}",
            linear.to_text(),
            combinatorial.to_text()
        ),
    };
    let verdict = if equal { "agree" } else { "DISAGREE" };
    Ok(Outcome {
        artifact,
        summary: format!("Cartan matrices {verdict}; total {} = |Styl| = {}\n", linear.total(), monoid.size()),
        passed: equal && linear.total() == monoid.size(),
    })
}

fn verify(n: usize, config: &RunConfig, format: Format) -> Result<Outcome> {
    let vc = VerifyConfig {
        seed: config.seed,
        max_search_len: config.max_word_search_length.unwrap_or(2 * n),
        memoize: config.memoize_mult,
        ..VerifyConfig::new(n)
    };
    let reports = verify_up_to(&vc)?;
    let passed = reports.iter().all(|r| r.all_passed());
    let artifact = match format {
        Format::Json => to_json(&reports)?,
        _ => reports.iter().map(|r| format!("{r}\n")).collect(),
    };
    let summary = match reports
        .iter()
        .find_map(|r| r.first_failure().map(|c| (r.n, c)))
    {
        Some((n, c)) => format!(
            "FAILED at n = {n}: {} ({})\n",
            c.name,
            c.failure.as_deref().unwrap_or_default()
        ),
        None => format!(
            "all checks passed for n = 1..={n}; |Styl| = {}\n",
            reports.last().map_or(0, |r| r.size)
        ),
    };
    Ok(Outcome {
        artifact,
        summary,
        passed,
    })
}
