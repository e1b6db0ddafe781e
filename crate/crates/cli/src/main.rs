mod commands;
mod corpus;
mod golden;
mod job;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use stanley_core::syntax::parse_ideal;
use stanley_core::{Error, RingContext};

use job::{Certificate, Command, DecomposeMethod, FiltrationMode, JobOptions, JobSpec};

#[derive(Parser)]
#[command(name = "stanley", version, about = "Depth, prime filtrations and Stanley decompositions of monomial modules")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Input {
    /// Variables, as `x1..x5` or `x,y,z`.
    #[arg(long, conflicts_with = "n")]
    ring: Option<String>,
    /// Shorthand for `--ring x1..xN`.
    #[arg(long)]
    n: Option<usize>,
    /// Field characteristic, 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// The ideal `I`, e.g. `[x1*x3, x2^2]`.
    #[arg(long)]
    ideal: String,
    /// The ideal `J ⊇ I` of the module `J/I`; the whole ring by default.
    #[arg(long)]
    mod_ideal: Option<String>,
}

#[derive(Args)]
struct Common {
    /// Extra exponent margin of the Koszul box.
    #[arg(long, default_value_t = 1)]
    box_margin: u32,
    /// Node budget for searches.
    #[arg(long)]
    search_cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Abort instead of searching when an explicit construction fails.
    #[arg(long)]
    no_fallback: bool,
    /// Print the JSON certificate.
    #[arg(long)]
    json: bool,
    /// Record wall time in the certificate.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Depth of `J/I` from Koszul homology.
    Depth {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Irredundant primary decomposition, associated primes and dimension filtration of `I`.
    PrimaryDec {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Tilde steps, the reduction `(J₁, I₁)` or the full polarization.
    Polarize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        /// Single tilde step in this variable (0-based).
        #[arg(long, conflicts_with = "full")]
        var: Option<usize>,
        /// Allow a tilde step whose variable does not attain `d(I)`.
        #[arg(long, requires = "var")]
        relaxed: bool,
        /// Full polarization of `S/I`.
        #[arg(long)]
        full: bool,
    },
    /// Build and certify a prime filtration.
    Filtrate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: FiltrationMode,
    },
    /// Build and verify a Stanley decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "pipeline")]
        method: DecomposeMethod,
    },
    /// Exact Stanley depth by interval partitions.
    Sdepth {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Certify `sdepth S/I ≥ depth S/I` for `n ≤ 5`.
    CheckStanley {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        /// Skip the exact Stanley depth search.
        #[arg(long)]
        no_exact: bool,
    },
    /// Re-run the job of a certificate and compare verdicts.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in worked examples against their expected verdicts.
    Golden {
        #[command(flatten)]
        common: Common,
    },
    /// Random sweep with every check enabled.
    Corpus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long, default_value_t = 4)]
        gens: usize,
    },
}

fn options(c: &Common) -> JobOptions {
    JobOptions {
        box_margin: c.box_margin,
        search_cap: c.search_cap,
        seed: c.seed,
        allow_fallback: !c.no_fallback,
    }
}

fn job_from_input(command: Command, input: &Input, common: &Common) -> stanley_core::Result<JobSpec> {
    let ring = match (&input.ring, input.n) {
        (Some(spec), _) => RingContext::parse_spec(spec, input.characteristic)?,
        (None, Some(n)) => RingContext::new((1..=n).map(|i| format!("x{i}")).collect(), input.characteristic)?,
        (None, None) => return Err(Error::Malformed("give --ring or --n".into())),
    };
    let ideal = parse_ideal(&ring, &input.ideal)?;
    let mod_ideal = input.mod_ideal.as_deref().map(|s| parse_ideal(&ring, s)).transpose()?;
    Ok(JobSpec {
        command,
        ring: Some(ring),
        ideal: Some(ideal),
        mod_ideal,
        options: options(common),
    })
}

enum Failure {
    Engine(Error),
    Io(String),
    Mismatch(serde_json::Value),
}

impl Failure {
    fn payload(&self) -> serde_json::Value {
        match self {
            Failure::Engine(e) => json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
            Failure::Io(msg) => json!({ "error": { "kind": "io", "message": msg } }),
            Failure::Mismatch(diff) => json!({ "error": { "kind": "verify-mismatch", "message": "recomputed verdicts differ", "recomputed": diff } }),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Io(_) => 2,
            Failure::Engine(e) => match e.kind() {
                "malformed" | "parse" | "range" | "ring-mismatch" => 2,
                "domain" | "precondition" | "not-sequentially-cm" => 3,
                "infeasible" => 4,
                _ => 5,
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn execute(job: JobSpec, timing: bool) -> Result<Certificate, Failure> {
    let start = Instant::now();
    let verdicts = commands::run(&job)?;
    Ok(Certificate {
        job,
        verdicts,
        timing_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        toolchain: job::toolchain(),
    })
}

fn verify(path: &PathBuf) -> Result<Certificate, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let stored: Certificate =
        serde_json::from_str(&text).map_err(|e| Failure::Engine(Error::Malformed(format!("certificate: {e}"))))?;
    let fresh = execute(stored.job.clone(), false)?;
    if fresh.verdicts != stored.verdicts {
        return Err(Failure::Mismatch(fresh.verdicts));
    }
    Ok(fresh)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_out, outcome) = match &cli.command {
        Sub::Verify { certificate, json } => (*json, verify(certificate)),
        Sub::Golden { common } => {
            let job = JobSpec {
                command: Command::Golden,
                ring: None,
                ideal: None,
                mod_ideal: None,
                options: options(common),
            };
            (common.json, execute(job, common.timing))
        }
        Sub::Corpus {
            common,
            n,
            count,
            max_degree,
            gens,
        } => {
            let job = JobSpec {
                command: Command::Corpus {
                    nvars: *n,
                    count: *count,
                    max_degree: *max_degree,
                    gens: *gens,
                },
                ring: None,
                ideal: None,
                mod_ideal: None,
                options: options(common),
            };
            (common.json, execute(job, common.timing))
        }
        other => {
            let (command, input, common) = match other {
                Sub::Depth { input, common } => (Command::Depth, input, common),
                Sub::PrimaryDec { input, common } => (Command::PrimaryDec, input, common),
                Sub::Polarize {
                    input,
                    common,
                    var,
                    relaxed,
                    full,
                } => (
                    Command::Polarize {
                        var: *var,
                        relaxed: *relaxed,
                        full: *full,
                    },
                    input,
                    common,
                ),
                Sub::Filtrate { input, common, mode } => (Command::Filtrate { mode: *mode }, input, common),
                Sub::Decompose { input, common, method } => (Command::Decompose { method: *method }, input, common),
                Sub::Sdepth { input, common } => (Command::Sdepth, input, common),
                Sub::CheckStanley { input, common, no_exact } => (Command::CheckStanley { exact: !no_exact }, input, common),
                Sub::Verify { .. } | Sub::Golden { .. } | Sub::Corpus { .. } => unreachable!("handled above"),
            };
            let outcome = job_from_input(command, input, common)
                .map_err(Failure::from)
                .and_then(|job| execute(job, common.timing));
            (common.json, outcome)
        }
    };
    match outcome {
        Ok(cert) => {
            if json_out {
                println!("{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"));
            } else {
                print!("{}", render::text(&cert));
            }
            let golden_failed = cert.job.command == Command::Golden && cert.verdicts["passed"] != cert.verdicts["total"];
            if golden_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            let payload = f.payload();
            if json_out {
                println!("{}", serde_json::to_string_pretty(&payload).expect("payload serializes"));
            } else {
                eprintln!("error[{}]: {}", payload["error"]["kind"].as_str().unwrap_or("?"), payload["error"]["message"].as_str().unwrap_or(""));
            }
            ExitCode::from(f.exit_code())
        }
    }
}
