//! `secq` command-line entry point.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 when the input data is
//! rejected.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use secq::io::{
    operator_from_json, operator_to_json, parse_fcidump, rotation_from_json, tensor_from_json,
    tensor_to_json, MolecularArchive,
};
use secq::linalg::{eigenspectrum, to_sparse};
use secq::models::{
    bose_hubbard, fermi_hubbard, jellium, mean_field_dwave, JelliumBasis, PlaneWaveGrid,
};
use secq::quadratic::gaussian_circuit;
use secq::tensors::rotate_basis;
use secq::transforms::{bravyi_kitaev, extract_quadratic, jordan_wigner, tensor_to_fermion};
use secq::trotter::{pauli_exp_to_qasm, trotter_error_v1, TermSequence};
use secq::{TermOperator, Variant};

const COMPRESS_TOLERANCE: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "secq",
    version,
    about = "Second-quantized operators, encodings and circuits"
)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel sections. Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a fermion operator to qubits.
    Transform {
        #[arg(long, value_enum)]
        encoding: Encoding,
        #[arg(long = "in")]
        input: PathBuf,
        /// Qubit count for Bravyi-Kitaev; defaults to the operator's mode count.
        #[arg(long)]
        n_qubits: Option<usize>,
    },
    /// Eigenvalues of a qubit or fermion operator, ascending.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
        /// Only the lowest K eigenvalues.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Build a model Hamiltonian.
    Model {
        #[command(subcommand)]
        model: Model,
    },
    /// QASM for the product of exponentials of each Pauli term.
    TrotterQasm {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        time: f64,
    },
    /// Leading-order error operator of the second-order Trotter step.
    TrotterError {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rotate the single-particle basis of an interaction tensor.
    RotateBasis {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        u: PathBuf,
    },
    /// Convert an FCIDUMP file into a molecular archive.
    FcidumpImport {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Givens-rotation circuit preparing the ground state of a quadratic Hamiltonian.
    GaussianPrep {
        /// Interaction tensor JSON, or operator JSON.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    Jw,
    Bk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    PlaneWave,
    Dual,
}

#[derive(Subcommand)]
enum Model {
    Hubbard {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long)]
        spinless: bool,
    },
    BoseHubbard {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
    },
    Jellium {
        #[arg(long, default_value_t = 1)]
        dimensions: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, value_enum, default_value = "plane-wave")]
        basis: Basis,
        #[arg(long)]
        spinless: bool,
    },
    Dwave {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        gap: f64,
    },
}

#[derive(clap::Args)]
struct LatticeArgs {
    #[arg(long)]
    x: usize,
    #[arg(long, default_value_t = 1)]
    y: usize,
    #[arg(long)]
    periodic: bool,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<secq::Error> for Failure {
    fn from(e: secq::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {n} worker threads: {e}")))?;
    }
    let output = execute(cli.command)?;
    match cli.out {
        Some(path) => {
            fs::write(&path, output).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Data(e.to_string()))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn operator_output(op: &TermOperator) -> Result<String, Failure> {
    Ok(with_newline(operator_to_json(
        &op.compress(COMPRESS_TOLERANCE)?,
    )?))
}

/// Fermion input goes through Jordan-Wigner; qubit input passes unchanged.
fn as_qubits(op: TermOperator) -> Result<TermOperator, Failure> {
    match op.variant() {
        Variant::Qubit => Ok(op),
        Variant::Fermion => Ok(jordan_wigner(&op)?),
        other => Err(Failure::Data(format!(
            "expected a qubit or fermion operator, got {other:?}"
        ))),
    }
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Transform {
            encoding,
            input,
            n_qubits,
        } => {
            let op = operator_from_json(&read(&input)?)?;
            let mapped = match encoding {
                Encoding::Jw => {
                    if n_qubits.is_some() {
                        return Err(Failure::Usage(
                            "--n-qubits applies to --encoding bk only".into(),
                        ));
                    }
                    jordan_wigner(&op)?
                }
                Encoding::Bk => bravyi_kitaev(&op, n_qubits.unwrap_or_else(|| op.n_modes()))?,
            };
            operator_output(&mapped)
        }
        Command::Spectrum { input, k } => {
            let op = as_qubits(operator_from_json(&read(&input)?)?)?;
            let values: Vec<f64> = eigenspectrum(&to_sparse(&op, None)?, k)?
                .into_iter()
                // Avoid printing -0.0.
                .map(|v| v + 0.0)
                .collect();
            Ok(with_newline(
                serde_json::to_string(&values).map_err(|e| Failure::Data(e.to_string()))?,
            ))
        }
        Command::Model { model } => operator_output(&build_model(model)?),
        Command::TrotterQasm { input, time } => {
            let op = as_qubits(operator_from_json(&read(&input)?)?)?;
            Ok(pauli_exp_to_qasm(
                &op.compress(COMPRESS_TOLERANCE)?.split_terms(),
                time,
            )?)
        }
        Command::TrotterError { input } => {
            let op = operator_from_json(&read(&input)?)?;
            operator_output(&trotter_error_v1(&TermSequence::from_operator(&op)?)?)
        }
        Command::RotateBasis { input, u } => {
            let tensor = tensor_from_json(&read(&input)?)?;
            let rotation = rotation_from_json(&read(&u)?)?;
            Ok(with_newline(tensor_to_json(&rotate_basis(
                &tensor, &rotation,
            )?)?))
        }
        Command::FcidumpImport { input } => {
            let dump = parse_fcidump(&read(&input)?)?;
            let multiplicity = u32::try_from(dump.ms2.unsigned_abs() + 1)
                .map_err(|_| Failure::Data(format!("MS2 = {} is out of range", dump.ms2)))?;
            let archive = MolecularArchive::new(
                Vec::new(),
                "unknown",
                multiplicity,
                0,
                dump.nelec,
                dump.to_interaction_tensor(),
            )?;
            Ok(with_newline(archive.to_json()?))
        }
        Command::GaussianPrep { input } => {
            let text = read(&input)?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Data(format!("{}: {e}", input.display())))?;
            let op = if value.get("one_body").is_some() {
                tensor_to_fermion(&tensor_from_json(&text)?)
            } else {
                operator_from_json(&text)?
            };
            let circuit = gaussian_circuit(&extract_quadratic(&op, false)?)?;
            let json =
                serde_json::to_string_pretty(&circuit).map_err(|e| Failure::Data(e.to_string()))?;
            Ok(with_newline(json))
        }
    }
}

fn build_model(model: Model) -> Result<TermOperator, Failure> {
    Ok(match model {
        Model::Hubbard {
            lattice,
            t,
            u,
            mu,
            spinless,
        } => fermi_hubbard(lattice.x, lattice.y, t, u, mu, lattice.periodic, spinless)?,
        Model::BoseHubbard { lattice, t, u, mu } => {
            bose_hubbard(lattice.x, lattice.y, t, u, mu, lattice.periodic)?
        }
        Model::Jellium {
            dimensions,
            length,
            scale,
            basis,
            spinless,
        } => {
            let grid = PlaneWaveGrid::new(dimensions, length, scale)?;
            let basis = match basis {
                Basis::PlaneWave => JelliumBasis::PlaneWave,
                Basis::Dual => JelliumBasis::Dual,
            };
            jellium(&grid, None, basis, spinless)
        }
        Model::Dwave { lattice, t, gap } => {
            mean_field_dwave(lattice.x, lattice.y, t, gap, lattice.periodic)?
        }
    })
}
