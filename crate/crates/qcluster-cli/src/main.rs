use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcluster::scalar::Mode;
use qcluster_cli::commands::{self, CcmapArgs, CliError, CliResult};
use qcluster_cli::statements::{defaults, verify, JsonReport, VerifyOptions, STATEMENTS};

#[derive(Parser)]
#[command(name = "qcc", version, about = "Quantum cluster characters over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character of a module plus shifted projectives.
    Ccmap {
        #[arg(long)]
        rep: PathBuf,
        /// Catalog name or quiver file; defaults to the one named in the rep file.
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, value_delimiter = ',')]
        prime: Vec<u32>,
        /// Also compute with counts as polynomials in q.
        #[arg(long)]
        formal: bool,
        #[arg(long, value_delimiter = ',')]
        shifts: Vec<u32>,
        /// Value substituted for L.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Number of subrepresentations of a dimension vector.
    Grass {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_delimiter = ',')]
        e: Vec<usize>,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        /// Also interpolate the count as a polynomial in q.
        #[arg(long)]
        poly: bool,
    },
    /// Filtrations of E with sub isomorphic to N and quotient isomorphic to M.
    Hall {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        quot: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
    },
    /// Auslander-Reiten translate.
    Tau {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
    },
    /// Reflection at a sink of the ice quiver.
    Reflect {
        #[arg(long)]
        rep: PathBuf,
        /// 1-based principal vertex.
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_delimiter = ',')]
        shifts: Vec<u32>,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
    },
    /// Mutates the initial seed along a sequence of 1-based vertices.
    Mutate {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
        /// Specialize at a prime instead of working formally.
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Checks a statement on its default inputs or on the given ones.
    Verify {
        statement: String,
        #[arg(long, value_delimiter = ',')]
        quiver: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        prime: Vec<u32>,
        #[arg(long)]
        formal: bool,
        /// Use the full sweep bounds.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().samples)]
        samples: usize,
        /// Cap on matrix tuples visited when classifying modules.
        #[arg(long)]
        orbit_budget: Option<u128>,
    },
    /// Generic elements of a box and their independence.
    Basis {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1, 1])]
        bounds: Vec<i64>,
        /// Box of standard monomials used for the expansions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-3, 3])]
        standard: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Prints a quiver file with its matrices and grading.
    Show {
        #[arg(long)]
        quiver: String,
    },
}

fn pair(v: &[i64], flag: &str) -> CliResult<(i64, i64)> {
    match v {
        [lo, hi] if lo <= hi => Ok((*lo, *hi)),
        _ => Err(CliError::Input(format!("--{flag} takes lo,hi"))),
    }
}

fn run(cli: Cli) -> CliResult<(String, u8)> {
    let text = match cli.command {
        Command::Ccmap { rep, quiver, prime, formal, shifts, lambda, json } => commands::ccmap(&CcmapArgs {
            rep: &rep,
            quiver: quiver.as_deref(),
            primes: &prime,
            formal,
            shifts: &shifts,
            lambda,
            json,
        })?,
        Command::Grass { rep, e, prime, lambda, poly } => commands::grass(&rep, &e, prime, lambda, poly)?,
        Command::Hall { rep, quot, sub, prime, lambda } => commands::hall(&rep, &quot, &sub, prime, lambda)?,
        Command::Tau { rep, inverse, prime, lambda } => commands::tau_cmd(&rep, inverse, prime, lambda)?,
        Command::Reflect { rep, vertex, shifts, prime, lambda } => commands::reflect(&rep, vertex, prime, lambda, &shifts)?,
        Command::Mutate { quiver, seq, prime, json } => commands::mutate(&quiver, &seq, prime, json)?,
        Command::Basis { quiver, prime, bounds, standard, json } => {
            let (lo, hi) = pair(&bounds, "box")?;
            let (slo, shi) = pair(&standard, "standard")?;
            let (out, ok) = commands::basis(&quiver, prime, lo, hi, slo, shi, json)?;
            return Ok((out, u8::from(!ok)));
        }
        Command::Show { quiver } => commands::show(&quiver)?,
        Command::Verify { statement, quiver, prime, formal, all_pairs, json, jobs, seed, samples, orbit_budget } => {
            if !STATEMENTS.contains(&statement.as_str()) {
                return Err(CliError::Input(format!("unknown statement '{statement}'; one of {}", STATEMENTS.join(", "))));
            }
            let (dq, dm) = defaults(&statement);
            let quivers: Vec<String> = if quiver.is_empty() { dq.iter().map(|s| s.to_string()).collect() } else { quiver };
            let mut modes: Vec<Mode> = prime.iter().map(|&p| Mode::Specialized(p)).collect();
            if formal {
                modes.push(Mode::Formal);
            }
            if modes.is_empty() {
                modes = dm;
            }
            if modes.contains(&Mode::Specialized(2)) {
                eprintln!("warning: statements about tame quivers assume the field has more than two elements");
            }
            let opts = VerifyOptions { all_pairs, seed, samples, orbit_budget };
            let run = verify(&statement, &quivers, &modes, jobs, &opts);
            for e in &run.errors {
                eprintln!("error: {e}");
            }
            let mut out = String::new();
            if json {
                let reps: Vec<JsonReport> = run.reports.iter().map(JsonReport::from).collect();
                out.push_str(&serde_json::to_string_pretty(&reps).expect("serializable"));
                out.push('\n');
            } else {
                for r in &run.reports {
                    out.push_str(&format!("{r}\n"));
                }
                let fails = run.reports.iter().filter(|r| r.failed()).count();
                out.push_str(&format!("{} reports, {} failed\n", run.reports.len(), fails));
            }
            return Ok((out, run.outcome as u8));
        }
    };
    Ok((text, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
