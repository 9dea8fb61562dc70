use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trace_forge::survey::{run_survey, SurveyConfig};
use trace_forge::{parse_prime, parse_samples, parse_semigroup, CliError, Output};
use trace_forge_core::arith::FieldSpec;

#[derive(Parser)]
#[command(name = "trace-forge", version, about = "Trace ideals of numerical semigroup rings")]
struct Cli {
    /// Worker threads for `survey` (default: all cores).
    #[arg(long, global = true, env = "TRACE_FORGE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semigroup invariants.
    Sgp {
        #[command(subcommand)]
        command: SgpCommand,
    },
    /// Trace ideals of K[[H]].
    Trace {
        #[command(subcommand)]
        command: TraceCommand,
    },
    /// Ideals and trace ideals of a finite local algebra: sq0, gor, dvr<l>, sgp:<gens>.
    Artin {
        preset: String,
        /// Prime field for enumeration.
        #[arg(long = "p")]
        p: Option<u64>,
        /// Gorenstein family separation over Q for (x + a*y), a in the list.
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run every check over a corpus and write per-semigroup JSON plus a CSV summary.
    Survey {
        #[arg(long)]
        max_genus: Option<u32>,
        /// One semigroup per line, comma-separated generators, '#' comments.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long = "p", default_value_t = 2)]
        p: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family-probe samples per semigroup.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SgpCommand {
    Info {
        gens: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TraceCommand {
    /// All trace ideals over F_p.
    Enum {
        gens: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check I -> I/t^e from Tr(R)\{R} onto Tr(B) (minimal multiplicity only).
    Bijection {
        gens: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Colons R : R[t^n + k t^(n+1)] over Q for the sampled k.
    Probe {
        gens: String,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        samples: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn emit(out: Output, json: Option<PathBuf>) -> Result<(), CliError> {
    print!("{}", out.text);
    if let Some(path) = json {
        std::fs::write(path, serde_json::to_string_pretty(&out.json)? + "\n")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sgp {
            command: SgpCommand::Info { gens, json },
        } => emit(trace_forge::info(&parse_semigroup(&gens)?), json),
        Command::Trace { command } => match command {
            TraceCommand::Enum { gens, p, json } => {
                emit(trace_forge::trace_enum(&parse_semigroup(&gens)?, parse_prime(p)?)?, json)
            }
            TraceCommand::Bijection { gens, p, json } => {
                emit(trace_forge::bijection(&parse_semigroup(&gens)?, parse_prime(p)?)?, json)
            }
            TraceCommand::Probe { gens, n, samples, json } => emit(
                trace_forge::probe(&parse_semigroup(&gens)?, n, &parse_samples(&samples)?)?,
                json,
            ),
        },
        Command::Artin { preset, p, samples, json } => {
            let field = match p {
                Some(p) => parse_prime(p)?,
                None => FieldSpec::Rationals,
            };
            let samples = samples.as_deref().map(parse_samples).transpose()?;
            emit(trace_forge::artin(&preset, field, samples.as_deref())?, json)
        }
        Command::Survey { max_genus, corpus, p, out, seed, samples } => {
            let config = SurveyConfig {
                max_genus,
                corpus,
                p,
                seed,
                samples,
                out,
                threads: cli.threads,
            };
            let outcome = run_survey(&config)?;
            let run = &outcome.run;
            println!(
                "surveyed {} semigroups over F_{p}: {} violations, {} value-set failures, {} recorded errors",
                run.semigroups,
                run.violations.len(),
                run.value_set_failures.len(),
                run.errors
            );
            println!("wrote {}", config.out.display());
            match run.violations.first() {
                Some(v) => Err(CliError::Violation(format!("{}: {}", v.gens, v.what))),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
