//! Command-line interface: parses algebra documents, runs the cohomology
//! engine, prints human-readable tables and optionally writes JSON result
//! documents.
//!
//! Exit codes: 0 success/pass, 1 failed check, 2 input error, 3 resource cap.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use qpcoh::algebra::{self_module, validate_poisson, PoissonAlgebra};
use qpcoh::cochain::LieModuleStructure;
use qpcoh::document::{
    parse_algebra, sha256_hex, BettiPayload, CountPayload, CrossCheckPayload, EnvCheckPayload,
    Payload, ResultDocument, Timings, ValidationPayload,
};
use qpcoh::engine::{
    betti_hh, betti_hl, betti_hq, hq0_direct, hq1_direct, kunneth_check, ses_check,
    standard_hq1_check, tensor_check, truncated_betti, BettiTable, CrossCheckReport, Hypothesis,
};
use qpcoh::enveloping::property_suite;
use qpcoh::{Limits, Result};

/// Default matrix entry cap for the CLI, sized so the shipped example
/// documents complete; override with `QPCOH_ENTRY_CAP`.
const CLI_ENTRY_CAP: u64 = 1_000_000_000;

#[derive(Parser)]
#[command(
    name = "qpcoh",
    version,
    about = "Exact quasi-Poisson, Hochschild and Lie-algebra cohomology of finite-dimensional Poisson algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the machine-readable result document to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Skip axiom validation when loading the algebra document.
    #[arg(long, global = true)]
    no_validate: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra document against all Poisson axioms.
    Check { file: PathBuf },
    /// Quasi-Poisson cohomology dimensions with self coefficients.
    Hq {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Compute through the truncation to tensor degree <= K.
        #[arg(long, value_name = "K")]
        truncate: Option<usize>,
        /// Verify the Hochschild vanishing hypothesis behind the truncation
        /// instead of asserting it.
        #[arg(long)]
        verify_hypothesis: bool,
    },
    /// Hochschild cohomology dimensions with self coefficients.
    Hh {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Lie-algebra cohomology dimensions of the bracket.
    Hl {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Coefficient module: the trivial module or the adjoint structure.
        #[arg(long, default_value = "trivial", value_parser = ["trivial", "self"])]
        coefficients: String,
    },
    /// Closed-form dim HQ^0 = dim (Z(A) meet Z{A}).
    Hq0 { file: PathBuf },
    /// Closed-form dim HQ^1 via the compatible-pair space.
    Hq1 { file: PathBuf },
    /// Short-exact-sequence dimension identity (outer derivations / center).
    SesCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Tensor dimension identity dim HQ^n = dim Z(A) * dim HL^n(A, K).
    TensorCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Künneth dimension identity for trivial brackets.
    KunnethCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Degree-1 decomposition check for the standard Poisson structure.
    Hq1Check {
        file: PathBuf,
    },
    /// Seeded property suite for the enveloping arithmetic.
    EnvCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = qpcoh::enveloping::DEFAULT_U_DEGREE_CAP)]
        max_u_degree: usize,
    },
}

fn limits() -> Limits {
    let entry_cap = std::env::var("QPCOH_ENTRY_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(CLI_ENTRY_CAP);
    Limits::with_entry_cap(entry_cap)
}

struct Context {
    input_hash: String,
    comment: Option<String>,
    command_line: String,
    json_path: Option<PathBuf>,
    started: Instant,
}

impl Context {
    fn emit(&self, payload: Payload, seed: Option<u64>, per_degree: Option<Vec<u128>>) -> Result<()> {
        if let Some(path) = &self.json_path {
            let doc = ResultDocument {
                tool_version: env!("CARGO_PKG_VERSION").into(),
                input_hash: self.input_hash.clone(),
                command: self.command_line.clone(),
                seed,
                comment: self.comment.clone(),
                payload,
                timings_ms: Timings {
                    total_ms: self.started.elapsed().as_millis(),
                    per_degree_ms: per_degree,
                },
            };
            std::fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Ok(())
    }
}

fn load(path: &Path, validate: bool) -> Result<(PoissonAlgebra, String, Option<String>)> {
    let text = std::fs::read_to_string(path)?;
    let hash = sha256_hex(text.as_bytes());
    let comment = toml::from_str::<toml::Value>(&text)
        .ok()
        .and_then(|v| v.get("comment").and_then(|c| c.as_str().map(String::from)));
    let p = parse_algebra(&text, validate)?;
    Ok((p, hash, comment))
}

fn print_betti(table: &BettiTable) {
    println!(
        "{} Betti table for {} (method {}, coefficients {})",
        table.theory,
        table.algebra,
        table.method.tag(),
        table.coefficients
    );
    println!("{:>4} {:>12} {:>10} {:>10}", "n", "cochain dim", "rank", "dim");
    for row in &table.rows {
        println!(
            "{:>4} {:>12} {:>10} {:>10}",
            row.n, row.cochain_dim, row.rank_out, row.dim
        );
    }
    if let Some(notice) = &table.notice {
        println!("notice: {notice}");
    }
}

fn print_cross_check(report: &CrossCheckReport) -> bool {
    let pass = report.pass();
    println!(
        "{} for {}: {}",
        report.identity,
        report.algebra,
        if pass { "PASS" } else { "FAIL" }
    );
    println!("{:>4} {:>8} {:>8}", "n", "left", "right");
    for d in &report.degrees {
        let marker = if d.left == d.right { "" } else { "  <- mismatch" };
        println!("{:>4} {:>8} {:>8}{marker}", d.n, d.left, d.right);
    }
    if let Some(h) = &report.hypothesis {
        let values: Vec<String> = h
            .values
            .iter()
            .map(|(n, dim)| format!("HH^{n} = {dim}"))
            .collect();
        println!(
            "hypothesis: {} -> {} ({})",
            h.statement,
            if h.verified { "verified" } else { "FAILED" },
            values.join(", ")
        );
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    pass
}

fn run(cli: Cli) -> Result<ExitCode> {
    let limits = limits();
    let validate = !cli.no_validate;
    let command_line: Vec<String> = std::env::args().skip(1).collect();

    macro_rules! ctx {
        ($hash:expr, $comment:expr) => {
            Context {
                input_hash: $hash,
                comment: $comment,
                command_line: command_line.join(" "),
                json_path: cli.json.clone(),
                started: Instant::now(),
            }
        };
    }

    match &cli.command {
        Command::Check { file } => {
            let text = std::fs::read_to_string(file)?;
            let hash = sha256_hex(text.as_bytes());
            let ctx = ctx!(hash, None);
            // Parse structurally first so axioms are reported as a check
            // result rather than a load error.
            let p = parse_algebra(&text, false)?;
            let report = validate_poisson(&p);
            ctx.emit(
                Payload::Validation(ValidationPayload::from_report(&report)),
                None,
                None,
            )?;
            if report.is_valid() {
                println!("{}: all axioms hold (dim {})", p.name(), p.dim());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{}: axiom violations", p.name());
                print!("{report}");
                Ok(ExitCode::from(1))
            }
        }
        Command::Hq {
            file,
            max_degree,
            truncate,
            verify_hypothesis,
        } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let table = match truncate {
                None => {
                    let module = self_module(&p);
                    let mut t = betti_hq(&p, &module, *max_degree, &limits)?;
                    t.coefficients = "self".into();
                    t
                }
                Some(k) => {
                    let hypothesis = if *verify_hypothesis {
                        Hypothesis::Verify {
                            probe_bound: max_degree + 1,
                        }
                    } else {
                        Hypothesis::Assert
                    };
                    truncated_betti(&p, *k, *max_degree, hypothesis, &limits)?
                }
            };
            print_betti(&table);
            ctx.emit(
                Payload::Betti(BettiPayload::from_table(&table)),
                None,
                Some(table.timing_ms.clone()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hh { file, max_degree } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let module = self_module(&p);
            let mut table = betti_hh(p.algebra(), &module, *max_degree, &limits)?;
            table.algebra = p.name().into();
            table.coefficients = "self".into();
            print_betti(&table);
            ctx.emit(
                Payload::Betti(BettiPayload::from_table(&table)),
                None,
                Some(table.timing_ms.clone()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hl {
            file,
            max_degree,
            coefficients,
        } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let coeff = match coefficients.as_str() {
                "self" => LieModuleStructure::adjoint(&p),
                _ => LieModuleStructure::trivial(p.dim()),
            };
            let mut table = betti_hl(&p, &coeff, *max_degree, &limits)?;
            table.coefficients = coefficients.clone();
            print_betti(&table);
            ctx.emit(
                Payload::Betti(BettiPayload::from_table(&table)),
                None,
                Some(table.timing_ms.clone()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hq0 { file } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let value = hq0_direct(&p);
            println!("dim HQ^0({}) = {value}", p.name());
            ctx.emit(
                Payload::Count(CountPayload {
                    name: "hq0".into(),
                    algebra: p.name().into(),
                    value,
                }),
                None,
                None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hq1 { file } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let value = hq1_direct(&p);
            println!("dim HQ^1({}) = {value}", p.name());
            ctx.emit(
                Payload::Count(CountPayload {
                    name: "hq1".into(),
                    algebra: p.name().into(),
                    value,
                }),
                None,
                None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SesCheck { file, max_degree } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let report = ses_check(&p, *max_degree, &limits)?;
            let pass = print_cross_check(&report);
            ctx.emit(
                Payload::CrossCheck(CrossCheckPayload::from_report(&report)),
                None,
                None,
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::TensorCheck { file, max_degree } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let report = tensor_check(&p, *max_degree, &limits)?;
            let pass = print_cross_check(&report);
            ctx.emit(
                Payload::CrossCheck(CrossCheckPayload::from_report(&report)),
                None,
                None,
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::KunnethCheck { file, max_degree } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let report = kunneth_check(&p, *max_degree, &limits)?;
            let pass = print_cross_check(&report);
            ctx.emit(
                Payload::CrossCheck(CrossCheckPayload::from_report(&report)),
                None,
                None,
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Hq1Check { file } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let report = standard_hq1_check(p.algebra(), &limits)?;
            let pass = print_cross_check(&report);
            ctx.emit(
                Payload::CrossCheck(CrossCheckPayload::from_report(&report)),
                None,
                None,
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::EnvCheck {
            file,
            samples,
            seed,
            max_u_degree,
        } => {
            let (p, hash, comment) = load(file, validate)?;
            let ctx = ctx!(hash, comment);
            let module = self_module(&p);
            let report = property_suite(&p, &module, *samples, *seed, *max_u_degree)?;
            println!(
                "enveloping property suite for {} (seed {}, {} samples, U-degree cap {})",
                p.name(),
                report.seed,
                report.samples,
                report.max_u_degree
            );
            for check in &report.checks {
                println!(
                    "  {:<42} {:>5} cases  {}",
                    check.name,
                    check.cases,
                    if check.pass() {
                        "ok".to_string()
                    } else {
                        format!(
                            "{} FAILURES ({})",
                            check.failures,
                            check.witness.as_deref().unwrap_or("no witness")
                        )
                    }
                );
            }
            let pass = report.pass();
            ctx.emit(
                Payload::EnvCheck(EnvCheckPayload::from_report(&report)),
                Some(*seed),
                None,
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
