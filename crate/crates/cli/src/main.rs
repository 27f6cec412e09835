//! Batch front end: every subcommand reads JSON, emits a machine-readable
//! report on stdout (or to --out), and exits 0 only when all checks pass.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 unsupported regime
//! (non-split spectrum, field too small, guardrail), 64 usage error.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use matvar_core::{
    check_sandwich_full, count_fixed_subspaces_with, dimension_by_interpolation,
    exhaustive_sum_scan, jordan_type_of, sandwich, verify_witness, CountOptions,
    Error as CoreError, FieldSpec, FixedCountSample, JordanData, Matrix, SandwichOptions,
    VarietyDescriptor, WitnessFamily,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "matvar",
    version,
    about = "Jordan-type invariants, degeneration witnesses, and fixed-space counts over exact fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field to work over: "rational" or "prime:P"
    #[arg(long, global = true, default_value = "rational")]
    field: String,

    /// Seed for all randomness (reports embed it)
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Comma-separated prime schedule for counting subcommands
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Vec<u64>,

    /// Refuse enumerations with more Grassmannian points than this
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_enum: u64,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessMode {
    #[value(name = "ss-to-x")]
    SsToX,
    #[value(name = "x-to-u")]
    XToU,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for a matrix (JSON inline, file path, or '-')
    Analyze(MatrixInput),
    /// Build a degeneration family for a Jordan type and verify its fibers
    Witness {
        #[command(flatten)]
        delta: DeltaInput,
        #[arg(long, value_enum)]
        mode: WitnessMode,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// The invariants shared across the sandwich of a Jordan type
    Sandwich {
        #[command(flatten)]
        delta: DeltaInput,
    },
    /// Count invariant d-subspaces over F_q
    #[command(name = "count-fixed")]
    CountFixed {
        #[arg(long, conflicts_with = "descriptor")]
        matrix: Option<String>,
        /// Variety descriptor JSON, e.g. `{"kind":"u","gamma":[3,1]}`
        #[arg(long)]
        descriptor: Option<String>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u64,
    },
    /// Certify a fixed-space dimension by interpolating counts across primes
    Dimension {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        d: usize,
    },
    /// Scan the fixed-space sum inequality over all type multisets
    #[command(name = "verify-sum")]
    VerifySum {
        /// Matrix size (at most 10; the type universe grows fast)
        #[arg(long)]
        n: usize,
        /// Number of types per instance (2 or 3)
        #[arg(long)]
        s: usize,
    },
    /// Run the full sandwich verification for one Jordan type
    #[command(name = "verify-sandwich")]
    VerifySandwich {
        #[command(flatten)]
        delta: DeltaInput,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// List every abstract Jordan type of size n
    #[command(name = "enumerate-types")]
    EnumerateTypes {
        /// Size (at most 16)
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct MatrixInput {
    /// Matrix JSON: inline, a file path, or '-' for stdin
    #[arg(long)]
    matrix: String,
}

#[derive(Args)]
struct DeltaInput {
    /// Jordan type: `{"n":4,"blocks":[[2],[1,1]]}` or bare `[[2],[1,1]]`
    #[arg(long)]
    delta: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match e {
            CoreError::NonSplit(_)
            | CoreError::FieldTooSmall { .. }
            | CoreError::GuardrailExceeded { .. }
            | CoreError::ModulusTooLarge { .. }
            | CoreError::PrimeFieldRequired(_)
            | CoreError::TooFewPrimes { .. } => EXIT_UNSUPPORTED,
            CoreError::TypeMismatch { .. }
            | CoreError::NotPolynomial { .. }
            | CoreError::Counterexample { .. }
            | CoreError::CheckFailed { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let field = parse_field(&cli.field)?;
    let primes = if cli.primes.is_empty() {
        vec![2, 3, 5, 7, 11, 13]
    } else {
        cli.primes.clone()
    };
    let count_opts = CountOptions {
        max_points: cli.max_enum,
    };
    if cli.output == OutputFormat::Tsv
        && !matches!(
            cli.command,
            Command::CountFixed { .. } | Command::Dimension { .. }
        )
    {
        return Err(Failure::usage(
            "--output tsv is only available for count-fixed and dimension",
        ));
    }

    let mut exit = 0u8;
    let rendered: String = match &cli.command {
        Command::Analyze(input) => {
            let matrix: Matrix = parse_json(&read_input(&input.matrix)?)?;
            let concrete = jordan_type_of(&matrix)?;
            let delta = concrete.abstract_type();
            let report = sandwich(&delta);
            let commutant = matrix.commutant_dim()?;
            let doc = json!({
                "config": config_block("analyze", &cli, &matrix.field(), None),
                "n": matrix.rows(),
                "jordan": concrete,
                "delta": delta,
                "gamma": report.gamma,
                "gamma_t": report.gamma_t,
                "centralizer_dim": report.centralizer_dim,
                "commutant_dim": commutant,
                "max_eigenspace_dim": delta.max_eigenspace_dim(),
                "min_poly_degree": delta.min_poly_degree(),
                "quadratic_min_poly": delta.has_quadratic_min_poly(),
                "char_poly": matrix.char_poly()?.to_string(),
                "fixed_dims": report.fixed_dims,
                "claims": ["centralizer-identity"],
            });
            render_json(&doc)
        }
        Command::Witness {
            delta,
            mode,
            samples,
        } => {
            if *samples == 0 {
                return Err(Failure::usage("--samples must be at least 1"));
            }
            let delta = parse_delta(&delta.delta)?;
            let family = match mode {
                WitnessMode::SsToX => WitnessFamily::semisimple_to_x(&delta),
                WitnessMode::XToU => WitnessFamily::x_to_u(&delta),
            };
            let claim = match mode {
                WitnessMode::SsToX => "closure-ss-to-x",
                WitnessMode::XToU => "closure-x-to-u",
            };
            let report = verify_witness(&family, field, *samples, cli.seed)?;
            let doc = json!({
                "config": config_block("witness", &cli, &field, None),
                "family": family,
                "report": report,
                "claims": [claim],
            });
            render_json(&doc)
        }
        Command::Sandwich { delta } => {
            let delta = parse_delta(&delta.delta)?;
            let report = sandwich(&delta);
            let doc = json!({
                "config": config_block("sandwich", &cli, &field, None),
                "report": report,
                "claims": ["centralizer-identity", "fixed-dim-constancy"],
            });
            render_json(&doc)
        }
        Command::CountFixed {
            matrix,
            descriptor,
            d,
            q,
        } => {
            let fq = FieldSpec::prime(*q)?;
            let (label, m) = match (matrix, descriptor) {
                (Some(m), None) => {
                    let m: Matrix = parse_json(&read_input(m)?)?;
                    if m.field() != fq {
                        return Err(Failure::usage(format!(
                            "matrix field {} does not match --q {q}",
                            m.field()
                        )));
                    }
                    (
                        format!("matrix({}x{},{})", m.rows(), m.cols(), m.field()),
                        m,
                    )
                }
                (None, Some(desc)) => {
                    let desc: VarietyDescriptor = parse_json(desc)?;
                    (desc.to_string(), desc.representative(fq)?)
                }
                _ => {
                    return Err(Failure::usage(
                        "count-fixed needs exactly one of --matrix or --descriptor",
                    ))
                }
            };
            let count = count_fixed_subspaces_with(&m, *d, &count_opts)?;
            let sample = FixedCountSample {
                descriptor: label,
                d: *d,
                q: *q,
                count,
            };
            match cli.output {
                OutputFormat::Tsv => {
                    format!("{}\n{}\n", FixedCountSample::tsv_header(), sample.to_tsv())
                }
                OutputFormat::Json => {
                    let doc = json!({
                        "config": config_block("count-fixed", &cli, &FieldSpec::Prime(*q), None),
                        "samples": [sample],
                    });
                    render_json(&doc)
                }
            }
        }
        Command::Dimension { descriptor, d } => {
            let desc: VarietyDescriptor = parse_json(descriptor)?;
            let outcome = dimension_by_interpolation(&desc, *d, &primes, &count_opts)?;
            match cli.output {
                OutputFormat::Tsv => {
                    let mut s = String::from(FixedCountSample::tsv_header());
                    s.push('\n');
                    for row in &outcome.samples {
                        s.push_str(&row.to_tsv());
                        s.push('\n');
                    }
                    s
                }
                OutputFormat::Json => {
                    let doc = json!({
                        "config": config_block("dimension", &cli, &field, Some(&primes)),
                        "outcome": outcome,
                        "claims": ["fixed-dim-constancy"],
                    });
                    render_json(&doc)
                }
            }
        }
        Command::VerifySum { n, s } => {
            if *n == 0 || *n > 10 {
                return Err(Failure::usage("verify-sum needs 1 <= --n <= 10"));
            }
            if !(2..=3).contains(s) {
                return Err(Failure::usage("verify-sum supports --s 2 or 3"));
            }
            let report = exhaustive_sum_scan(*n, *s)?;
            if !report.pass {
                exit = EXIT_CHECK_FAILED;
            }
            let doc = json!({
                "config": config_block("verify-sum", &cli, &field, None),
                "report": report,
                "claims": ["sum-inequality"],
            });
            render_json(&doc)
        }
        Command::VerifySandwich { delta, samples } => {
            if *samples == 0 {
                return Err(Failure::usage("--samples must be at least 1"));
            }
            let delta = parse_delta(&delta.delta)?;
            let opts = SandwichOptions {
                field,
                primes: primes.clone(),
                seed: cli.seed,
                samples: *samples,
                count: count_opts,
            };
            let verification = check_sandwich_full(&delta, &opts)?;
            if !verification.pass {
                exit = EXIT_CHECK_FAILED;
            }
            let doc = json!({
                "config": config_block("verify-sandwich", &cli, &field, Some(&primes)),
                "verification": verification,
            });
            render_json(&doc)
        }
        Command::EnumerateTypes { n } => {
            if *n == 0 || *n > 16 {
                return Err(Failure::usage("enumerate-types needs 1 <= --n <= 16"));
            }
            let types = JordanData::enumerate(*n);
            let doc = json!({
                "config": config_block("enumerate-types", &cli, &field, None),
                "count": types.len(),
                "types": types,
            });
            render_json(&doc)
        }
    };

    match &cli.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Failure::usage(format!("cannot write {path}: {e}")))?,
        None => print!("{rendered}"),
    }
    Ok(exit)
}

fn config_block(
    subcommand: &str,
    cli: &Cli,
    field: &FieldSpec,
    primes: Option<&[u64]>,
) -> serde_json::Value {
    let mut cfg = json!({
        "subcommand": subcommand,
        "field": field,
        "seed": cli.seed,
        "max_enum": cli.max_enum,
    });
    if let Some(primes) = primes {
        cfg["primes"] = json!(primes);
    }
    cfg
}

fn render_json(doc: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_field(s: &str) -> Result<FieldSpec, Failure> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("rational") || s == "q" || s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    let digits = s.strip_prefix("prime:").unwrap_or(s);
    let p: u64 = digits.parse().map_err(|_| {
        Failure::usage(format!("cannot parse field {s:?}; use rational or prime:P"))
    })?;
    Ok(FieldSpec::prime(p)?)
}

fn read_input(s: &str) -> Result<String, Failure> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(s.to_string());
    }
    if s == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(s).map_err(|e| Failure::usage(format!("cannot read {s}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::usage(format!("bad JSON input: {e}")))
}

fn parse_delta(s: &str) -> Result<JordanData, Failure> {
    let raw = read_input(s)?;
    let value: serde_json::Value = parse_json(&raw)?;
    if value.is_array() {
        let blocks: Vec<matvar_core::Partition> =
            serde_json::from_value(value).map_err(|e| Failure::usage(format!("bad delta: {e}")))?;
        return Ok(JordanData::new(blocks)?);
    }
    serde_json::from_value(value).map_err(|e| Failure::usage(format!("bad delta: {e}")))
}
