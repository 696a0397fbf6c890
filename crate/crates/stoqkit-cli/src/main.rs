//! Command-line front end: every library operation behind one binary,
//! with machine-readable reports.
//!
//! Exit codes: 0 = YES / Stoquastic / success, 1 = NO / NotStoquastic,
//! 2 = Undecided / NotApplicable / budget exceeded, 64 = usage error,
//! 65 = input parse failure, 66 = I/O failure.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::CommandReport;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use stoqkit::cnf::{gadget_3sat_to_minmax, parse_dimacs, serialize_dimacs};
use stoqkit::curing::CuringError;
use stoqkit::decompose::decompose_global;
use stoqkit::hamiltonian::Hamiltonian;
use stoqkit::hsum::{parse_chain, parse_graph, parse_hsum, serialize_hsum};
use stoqkit::qmc::{run_qmc, EnergyNorm, QmcMode, QmcParams};
use stoqkit::ratio::parse_rat;
use stoqkit::reductions::{gen_conp, gen_prop1, IsingInstance};
use stoqkit::stoq_check::{check_global, StoqStatus, DEFAULT_GLOBAL_BUDGET};
use stoqkit::termwise::{check_termwise, TermwiseCertificate};
use stoqkit::verify::run_suite;
use stoqkit::xyz::{cure_xyz_clifford, search_xyz_single_qubit, XyzChain, XyzCureError};

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_IO: u8 = 66;

#[derive(Parser)]
#[command(
    name = "stoqkit",
    version,
    about = "Stoquasticity deciders, sign-curing constructions, hardness instance generators, and path-integral Monte Carlo"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of human output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stoquasticity deciders.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Decompose a globally stoquastic Hamiltonian into conjugated flip terms.
    Decompose {
        file: PathBuf,
    },
    /// Sign-curing searches.
    Cure {
        #[command(subcommand)]
        which: CureCommand,
    },
    /// Hardness-instance generators.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
    /// Path-integral Monte Carlo with sign diagnostics.
    Qmc(QmcArgs),
    /// Run a named self-verification suite (see `verify list`).
    Verify {
        suite: String,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Global stoquasticity: all off-diagonal entries nonpositive.
    Global {
        file: PathBuf,
        /// Cap on any flip group's relevant-support size.
        #[arg(long, default_value_t = DEFAULT_GLOBAL_BUDGET)]
        budget: usize,
    },
    /// m-termwise stoquasticity with a constructive certificate.
    Termwise {
        file: PathBuf,
        #[arg(short, long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum CureCommand {
    /// Exhaustive Hadamard-mask search.
    Hadamard {
        file: PathBuf,
        #[arg(long, default_value_t = stoqkit::curing::DEFAULT_MASK_SEARCH_BUDGET)]
        max_n: usize,
    },
    /// XYZ-chain cures.
    Xyz {
        chain: PathBuf,
        #[arg(long, value_enum)]
        method: XyzMethod,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum XyzMethod {
    SingleQubit,
    Clifford,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Flip-qubit construction X_0 (E_0 - H_Ising) from a graph file.
    Prop1 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Spin-glass threshold construction on vertices + 1 qubits.
    Conp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        k: i64,
        /// Rational offset strictly between 0 and 1.
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Mask-curability assembly from a 2-CNF with a forall block.
    Sigma2 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short, long)]
        k: i64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Clause gadget: <=3-CNF to <=2-CNF with threshold 7m.
    Minmax {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct QmcArgs {
    file: PathBuf,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    slices: usize,
    #[arg(long)]
    sweeps: u64,
    /// Default seed is fixed and printed in the report.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = CliQmcMode::Direct)]
    mode: CliQmcMode,
    #[arg(long)]
    burn_in: Option<u64>,
    #[arg(long, default_value_t = 1)]
    thinning: u64,
    #[arg(long, default_value_t = 1)]
    chains: usize,
    #[arg(long, default_value_t = 2)]
    max_flip_span: usize,
    #[arg(long, value_enum, default_value_t = CliEnergyNorm::OverN)]
    energy_norm: CliEnergyNorm,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliQmcMode {
    Direct,
    Reweighted,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliEnergyNorm {
    OverN,
    OverNMinus1,
}

struct Outcome {
    exit: u8,
    verdict: String,
    result: serde_json::Value,
    human: String,
}

enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(String),
    Usage(String),
}

impl CliError {
    fn exit(&self) -> u8 {
        match self {
            CliError::Io(..) => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(path, e) => format!("cannot read {}: {e}", path.display()),
            CliError::Parse(m) => m.clone(),
            CliError::Usage(m) => m.clone(),
        }
    }
}

fn read_input(path: &PathBuf, inputs: &mut Vec<(PathBuf, String)>) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    inputs.push((path.clone(), report::sha256_hex(text.as_bytes())));
    Ok(text)
}

fn load_hamiltonian(
    path: &PathBuf,
    inputs: &mut Vec<(PathBuf, String)>,
) -> Result<Hamiltonian, CliError> {
    let text = read_input(path, inputs)?;
    parse_hsum(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_output(path: &Option<PathBuf>, content: &str, human: &mut String) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, content).map_err(|e| CliError::Io(p.clone(), e))?;
            human.push_str(&format!("written to {}\n", p.display()));
        }
        None => human.push_str(content),
    }
    Ok(())
}

fn run(cli: &Cli, inputs: &mut Vec<(PathBuf, String)>) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check {
            which: CheckCommand::Global { file, budget },
        } => {
            let h = load_hamiltonian(file, inputs)?;
            let verdict = check_global(&h, *budget)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let (exit, name) = match &verdict.status {
                StoqStatus::Stoquastic => (EXIT_OK, "Stoquastic"),
                StoqStatus::NotStoquastic => (EXIT_NO, "NotStoquastic"),
                StoqStatus::Undecided { .. } => (EXIT_UNDECIDED, "Undecided"),
            };
            let mut human = format!("{name}\n");
            if let Some((x, y)) = &verdict.witness {
                human.push_str(&format!(
                    "witness <x|H|y> = {} at x={x} y={y}\n",
                    verdict.witness_value.unwrap_or_default()
                ));
            }
            if let StoqStatus::Undecided { group } = &verdict.status {
                human.push_str(&format!("offending flip group {group}\n"));
            }
            Ok(Outcome {
                exit,
                verdict: name.to_string(),
                result: serde_json::to_value(&verdict).unwrap(),
                human,
            })
        }
        Command::Check {
            which: CheckCommand::Termwise { file, m },
        } => {
            let h = load_hamiltonian(file, inputs)?;
            let cert = check_termwise(&h, *m).map_err(|e| CliError::Parse(e.to_string()))?;
            let (exit, name, human) = match &cert {
                TermwiseCertificate::Yes { generators, .. } => (
                    EXIT_OK,
                    "Yes",
                    format!("{}-termwise stoquastic ({} generators)\n", m, generators.len()),
                ),
                TermwiseCertificate::No { s, a, reason, .. } => (
                    EXIT_NO,
                    "No",
                    format!("not {m}-termwise stoquastic: flip group {s}, pair {a} ({reason:?})\n"),
                ),
            };
            Ok(Outcome {
                exit,
                verdict: name.to_string(),
                result: serde_json::to_value(&cert).unwrap(),
                human,
            })
        }
        Command::Decompose { file } => {
            let h = load_hamiltonian(file, inputs)?;
            match decompose_global(&h) {
                Ok(d) => Ok(Outcome {
                    exit: EXIT_OK,
                    verdict: "Decomposed".into(),
                    human: format!(
                        "beta = {}, m' = {}, M = {}\n",
                        stoqkit::ratio::format_rat(&d.beta),
                        d.m_prime,
                        stoqkit::ratio::format_rat(&d.norm_bound)
                    ),
                    result: serde_json::to_value(&d).unwrap(),
                }),
                Err(stoqkit::decompose::DecomposeError::NotStoquastic(status)) => {
                    let undecided = matches!(status, StoqStatus::Undecided { .. });
                    Ok(Outcome {
                        exit: if undecided { EXIT_UNDECIDED } else { EXIT_NO },
                        verdict: "NotStoquastic".into(),
                        human: format!("input is not globally stoquastic ({status:?})\n"),
                        result: json!({ "status": format!("{status:?}") }),
                    })
                }
                Err(e) => Err(CliError::Parse(e.to_string())),
            }
        }
        Command::Cure {
            which: CureCommand::Hadamard { file, max_n },
        } => {
            let h = load_hamiltonian(file, inputs)?;
            match stoqkit::curing::search_hadamard_mask(&h, *max_n) {
                Ok(Some(mask)) => Ok(Outcome {
                    exit: EXIT_OK,
                    verdict: "Cured".into(),
                    human: format!("curing mask {mask}\n"),
                    result: json!({ "mask": mask.to_bitstring() }),
                }),
                Ok(None) => Ok(Outcome {
                    exit: EXIT_NO,
                    verdict: "None".into(),
                    human: "no Hadamard mask cures this Hamiltonian\n".into(),
                    result: json!({ "mask": null }),
                }),
                Err(e @ CuringError::SearchBudgetExceeded(..))
                | Err(e @ CuringError::Undecided(_)) => Ok(Outcome {
                    exit: EXIT_UNDECIDED,
                    verdict: "Undecided".into(),
                    human: format!("{e}\n"),
                    result: json!({ "error": e.to_string() }),
                }),
                Err(e) => Err(CliError::Parse(e.to_string())),
            }
        }
        Command::Cure {
            which: CureCommand::Xyz { chain, method },
        } => {
            let text = read_input(chain, inputs)?;
            let file = parse_chain(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", chain.display())))?;
            let chain = XyzChain::from_file(&file);
            match method {
                XyzMethod::SingleQubit => match search_xyz_single_qubit(&chain) {
                    Some(cure) => {
                        let assignment: Vec<String> = cure
                            .assignment
                            .iter()
                            .map(|p| format!("perm {:?} signs {:?}", p.perm, p.sign))
                            .collect();
                        Ok(Outcome {
                            exit: EXIT_OK,
                            verdict: "Cured".into(),
                            human: format!("per-site signed permutations:\n  {}\n", assignment.join("\n  ")),
                            result: json!({ "assignment": assignment }),
                        })
                    }
                    None => Ok(Outcome {
                        exit: EXIT_NO,
                        verdict: "None".into(),
                        human: "no single-qubit signed-permutation cure exists\n".into(),
                        result: json!({ "assignment": null }),
                    }),
                },
                XyzMethod::Clifford => match cure_xyz_clifford(&chain) {
                    Ok(cure) => {
                        let images: Vec<String> = cure
                            .map
                            .pairs()
                            .iter()
                            .map(|(s, t)| format!("{s} -> {t}"))
                            .chain(cure.map.induced().iter().map(|(s, t)| format!("{s} -> {t} (induced)")))
                            .collect();
                        Ok(Outcome {
                            exit: EXIT_OK,
                            verdict: "Cured".into(),
                            human: format!(
                                "generator images:\n  {}\ntransformed Hamiltonian:\n{}",
                                images.join("\n  "),
                                serialize_hsum(&cure.transformed)
                            ),
                            result: json!({
                                "images": images,
                                "transformed": serialize_hsum(&cure.transformed),
                            }),
                        })
                    }
                    Err(e @ XyzCureError::NotApplicable(_)) => Ok(Outcome {
                        exit: EXIT_UNDECIDED,
                        verdict: "NotApplicable".into(),
                        human: format!("{e}\n"),
                        result: json!({ "error": e.to_string() }),
                    }),
                    Err(e) => Err(CliError::Parse(e.to_string())),
                },
            }
        }
        Command::Gen { which } => run_gen(which, inputs),
        Command::Qmc(args) => {
            let h = load_hamiltonian(&args.file, inputs)?;
            let mut params = QmcParams::new(
                args.beta,
                args.slices,
                args.sweeps,
                args.seed,
                match args.mode {
                    CliQmcMode::Direct => QmcMode::Direct,
                    CliQmcMode::Reweighted => QmcMode::Reweighted,
                },
            );
            if let Some(b) = args.burn_in {
                params.burn_in = b;
            }
            params.thinning = args.thinning;
            params.chains = args.chains;
            params.max_flip_span = args.max_flip_span;
            params.energy_norm = match args.energy_norm {
                CliEnergyNorm::OverN => EnergyNorm::OverN,
                CliEnergyNorm::OverNMinus1 => EnergyNorm::OverNMinusOne,
            };
            match run_qmc(&h, &params) {
                Ok(result) => Ok(Outcome {
                    exit: EXIT_OK,
                    verdict: "Done".into(),
                    human: format!(
                        "energy = {:.6} +- {:.6}\navg sign = {:.6} +- {:.6}\nacceptance = {:.4}, samples = {}, seed = {}\n",
                        result.energy,
                        result.stderr,
                        result.avg_sign,
                        result.sign_stderr,
                        result.acceptance,
                        result.samples,
                        result.seed
                    ),
                    result: serde_json::to_value(&result).unwrap(),
                }),
                Err(stoqkit::qmc::QmcError::NotStoquastic(status)) => Ok(Outcome {
                    exit: if matches!(status, StoqStatus::Undecided { .. }) {
                        EXIT_UNDECIDED
                    } else {
                        EXIT_NO
                    },
                    verdict: "NotStoquastic".into(),
                    human: format!("direct mode requires a stoquastic input ({status:?})\n"),
                    result: json!({ "status": format!("{status:?}") }),
                }),
                Err(e) => Err(CliError::Parse(e.to_string())),
            }
        }
        Command::Verify { suite } => {
            if suite == "list" {
                let names = stoqkit::verify::SUITES.join("\n");
                return Ok(Outcome {
                    exit: EXIT_OK,
                    verdict: "Suites".into(),
                    human: format!("{names}\n"),
                    result: json!({ "suites": stoqkit::verify::SUITES }),
                });
            }
            let Some(report) = run_suite(suite) else {
                return Err(CliError::Usage(format!(
                    "unknown suite `{suite}`; try `stoqkit verify list`"
                )));
            };
            let mut human = String::new();
            for c in &report.checks {
                human.push_str(&format!(
                    "[{}] {}: {}\n",
                    if c.passed { "ok" } else { "FAIL" },
                    c.name,
                    c.details
                ));
            }
            Ok(Outcome {
                exit: if report.passed { EXIT_OK } else { EXIT_NO },
                verdict: if report.passed { "Passed" } else { "Failed" }.to_string(),
                human,
                result: serde_json::to_value(&report).unwrap(),
            })
        }
    }
}

fn run_gen(
    which: &GenCommand,
    inputs: &mut Vec<(PathBuf, String)>,
) -> Result<Outcome, CliError> {
    match which {
        GenCommand::Prop1 { graph, out } => {
            let text = read_input(graph, inputs)?;
            let g = parse_graph(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", graph.display())))?;
            let inst = IsingInstance::from_graph(&g, false);
            let (h, frustrated) =
                gen_prop1(&inst).map_err(|e| CliError::Parse(e.to_string()))?;
            let hsum = serialize_hsum(&h);
            let mut human = format!("frustrated: {frustrated}\n");
            write_output(out, &hsum, &mut human)?;
            Ok(Outcome {
                exit: EXIT_OK,
                verdict: "Generated".into(),
                human,
                result: json!({ "frustrated": frustrated, "hsum": hsum }),
            })
        }
        GenCommand::Conp { graph, k, eps, out } => {
            let text = read_input(graph, inputs)?;
            let g = parse_graph(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", graph.display())))?;
            let eps = parse_rat(eps)
                .ok_or_else(|| CliError::Usage(format!("bad --eps value `{eps}`")))?;
            let inst = IsingInstance::from_graph(&g, true);
            let h = gen_conp(&inst, *k, &eps).map_err(|e| CliError::Usage(e.to_string()))?;
            let hsum = serialize_hsum(&h);
            let mut human = String::new();
            write_output(out, &hsum, &mut human)?;
            Ok(Outcome {
                exit: EXIT_OK,
                verdict: "Generated".into(),
                human,
                result: json!({ "k": k, "hsum": hsum }),
            })
        }
        GenCommand::Sigma2 { cnf, k, out } => {
            let text = read_input(cnf, inputs)?;
            let f = parse_dimacs(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", cnf.display())))?;
            let (h, layout) = stoqkit::gadgets::assemble_sigma2(&f, *k)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let hsum = serialize_hsum(&h);
            let mut human = format!(
                "{} qubits (control {}, d-block {:?})\n",
                layout.total_qubits, layout.control, layout.d_block
            );
            write_output(out, &hsum, &mut human)?;
            Ok(Outcome {
                exit: EXIT_OK,
                verdict: "Generated".into(),
                human,
                result: json!({
                    "layout": serde_json::to_value(&layout).unwrap(),
                    "hsum": hsum,
                }),
            })
        }
        GenCommand::Minmax { cnf, out } => {
            let text = read_input(cnf, inputs)?;
            let f = parse_dimacs(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", cnf.display())))?;
            let (g, k) =
                gadget_3sat_to_minmax(&f).map_err(|e| CliError::Parse(e.to_string()))?;
            let dimacs = serialize_dimacs(&g);
            let mut human = format!("threshold k = {k}\n");
            write_output(out, &dimacs, &mut human)?;
            Ok(Outcome {
                exit: EXIT_OK,
                verdict: "Generated".into(),
                human,
                result: json!({ "k": k, "dimacs": dimacs }),
            })
        }
    }
}

fn command_name(cli: &Cli) -> String {
    match &cli.command {
        Command::Check {
            which: CheckCommand::Global { .. },
        } => "check global".into(),
        Command::Check {
            which: CheckCommand::Termwise { .. },
        } => "check termwise".into(),
        Command::Decompose { .. } => "decompose".into(),
        Command::Cure {
            which: CureCommand::Hadamard { .. },
        } => "cure hadamard".into(),
        Command::Cure {
            which: CureCommand::Xyz { .. },
        } => "cure xyz".into(),
        Command::Gen { .. } => "gen".into(),
        Command::Qmc(_) => "qmc".into(),
        Command::Verify { .. } => "verify".into(),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("STOQKIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            stoqkit::configure_thread_pool(n);
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::from(EXIT_OK);
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let start = Instant::now();
    let mut inputs = Vec::new();
    match run(&cli, &mut inputs) {
        Ok(outcome) => {
            if cli.json {
                let report = CommandReport::new(
                    command_name(&cli),
                    &inputs,
                    outcome.verdict,
                    outcome.result,
                    start.elapsed(),
                );
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", outcome.human);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            if cli.json {
                let report = CommandReport::new(
                    command_name(&cli),
                    &inputs,
                    "Error".into(),
                    json!({ "error": e.message() }),
                    start.elapsed(),
                );
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(e.exit())
        }
    }
}
