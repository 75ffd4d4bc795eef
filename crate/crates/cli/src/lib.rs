//! Command-line front end: synthesis, verification, cost tables, drawing and
//! simulation of circuit documents.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use peres_core::io::{read_document, render_ascii, render_document, CircuitDocument};
use peres_core::simulation::{dense_unitary, simulate_basis, ClassicalOutput, DEFAULT_DENSE_WIDTH_LIMIT};
use peres_core::synthesis::{
    alpha_table, gray_alpha_sequence, synth_barenco_toffoli, synth_peres, synth_toffoli,
    synth_zero_polarity, MAX_CONTROLS,
};
use peres_core::verification::{check_equivalence, Family, GateFamilySpec};
use peres_core::{ActivationVector, BitString, Circuit, Error, ZeroPolarityMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `--max-n` accepted by `table`; every row is synthesized.
pub const TABLE_MAX_N: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "peres", about = "Ancilla-free mixed-polarity Peres and Toffoli gate synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a circuit document.
    Synth {
        #[arg(value_enum)]
        kind: SynthKind,
        #[arg(long)]
        n: usize,
        /// Activation vector a1..an, leftmost is control 1. Defaults to all ones.
        #[arg(long)]
        activation: Option<String>,
        /// Output path; `.json` selects the JSON form. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Annotate each controlled root with its α vector.
        #[arg(long)]
        annotate: bool,
    },
    /// Check a circuit against a gate family over its basis inputs.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        activation: Option<String>,
    },
    /// Print quantum cost and gate census.
    Cost {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Print an ASCII diagram.
    Draw {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Run one basis input (controls then target) through a circuit.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        input: String,
    },
    /// Tabulate costs and gate counts for n = 1..max-n.
    Table {
        #[arg(long = "max-n")]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SynthKind {
    Peres,
    Toffoli,
    Barenco,
    Orgate,
    Andzero,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn verify(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VERIFY_FAILED, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Synth { kind, n, activation, out: path, annotate } => {
            synth(kind, n, activation.as_deref(), path.as_deref(), annotate, out)
        }
        Command::Verify { circuit, family, n, activation } => {
            verify(&circuit, &family, n, activation.as_deref(), out)
        }
        Command::Cost { circuit } => cost(&circuit, out),
        Command::Draw { circuit } => {
            let c = load(&circuit)?;
            emit(out, &render_ascii(&c))
        }
        Command::Simulate { circuit, input } => simulate(&circuit, &input, out),
        Command::Table { max_n } => table(max_n, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn activation_or_default(n: usize, activation: Option<&str>) -> Result<ActivationVector, Failure> {
    let a = match activation {
        Some(s) => s.parse::<ActivationVector>()?,
        None => ActivationVector::all_ones(n),
    };
    if a.len() != n {
        return Err(Failure::usage(format!("activation {a} has length {} but --n is {n}", a.len())));
    }
    Ok(a)
}

fn synth(
    kind: SynthKind,
    n: usize,
    activation: Option<&str>,
    path: Option<&Path>,
    annotate: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let (circuit, alphas) = match kind {
        SynthKind::Peres | SynthKind::Toffoli | SynthKind::Barenco => {
            let a = activation_or_default(n, activation)?;
            match kind {
                SynthKind::Peres => (synth_peres(n, &a)?, alpha_table(n)?),
                SynthKind::Toffoli => (synth_toffoli(n, &a)?, alpha_table(n)?),
                _ => (synth_barenco_toffoli(n, &a)?, gray_alpha_sequence(n)?),
            }
        }
        SynthKind::Orgate | SynthKind::Andzero => {
            if activation.is_some() {
                return Err(Failure::usage("zero-polarity circuits take no --activation"));
            }
            let mode = if kind == SynthKind::Orgate {
                ZeroPolarityMode::OrGate
            } else {
                ZeroPolarityMode::AndComplemented
            };
            (synth_zero_polarity(n, mode)?, alpha_table(n)?)
        }
    };
    // n = 1 emits its single controlled gate as a Feynman gate, which carries
    // no annotation.
    let has_roots = circuit.gate_census().controlled_count() == alphas.len();
    let alphas = (annotate && has_roots).then_some(alphas);
    let doc = CircuitDocument::from_circuit(&circuit, alphas)?;
    match path {
        Some(path) => {
            fs::write(path, render_document(path, &doc))
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => emit(out, &doc.to_text()),
    }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = read_document(path, &text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(doc.to_circuit()?)
}

fn verify(
    path: &Path,
    family: &str,
    n: usize,
    activation: Option<&str>,
    out: &mut dyn Write,
) -> CmdResult {
    let family: Family = family.parse()?;
    let activation = if family.needs_activation() {
        Some(activation_or_default(n, activation)?)
    } else if activation.is_some() {
        return Err(Failure::usage(format!("family {family} takes no --activation")));
    } else {
        None
    };
    let spec = GateFamilySpec::new(family, n, activation)?;
    let circuit = load(path)?;
    if circuit.n_controls() != n {
        return Err(Failure::verify(format!(
            "fail: circuit has {} controls, expected {n}",
            circuit.n_controls()
        )));
    }
    match check_equivalence(&circuit, &spec) {
        Ok(report) if report.passed() => emit(out, &format!("{report}\n")),
        Ok(report) => {
            emit(out, &format!("fail: {report}\n"))?;
            Err(Failure::verify("verification failed"))
        }
        Err(e @ Error::UnsupportedShape(_)) => Err(Failure::verify(format!("fail: {e}"))),
        Err(e) => Err(e.into()),
    }
}

fn cost(path: &Path, out: &mut dyn Write) -> CmdResult {
    let c = load(path)?;
    let census = c.gate_census();
    emit(
        out,
        &format!(
            "quantum cost: {}\nfeynman: {}\nroot: {}\nadjoint: {}\nnot: {}\n",
            c.quantum_cost(),
            census.feynman_count,
            census.root_count,
            census.adjoint_count,
            census.not_count
        ),
    )
}

fn simulate(path: &Path, input: &str, out: &mut dyn Write) -> CmdResult {
    let c = load(path)?;
    let input: BitString = input.parse()?;
    if input.len() != c.width() {
        return Err(Failure::usage(format!(
            "input {input} has length {} but the circuit has width {}",
            input.len(),
            c.width()
        )));
    }
    let output = match simulate_basis(&c, &input) {
        Ok(output) => output,
        // Not layered: fall back to the dense simulator when it fits.
        Err(Error::UnsupportedShape(_)) if c.width() <= DEFAULT_DENSE_WIDTH_LIMIT => {
            let column = dense_unitary(&c)?.column(input.lex_index() as usize);
            column
                .as_basis_state(c.width(), 1e-9)
                .map_or(ClassicalOutput::NonClassical, ClassicalOutput::Classical)
        }
        Err(e) => return Err(e.into()),
    };
    match output {
        ClassicalOutput::Classical(bits) => emit(out, &format!("{bits}\n")),
        ClassicalOutput::NonClassical => emit(out, "NonClassical\n"),
    }
}

fn table(max_n: usize, out: &mut dyn Write) -> CmdResult {
    if !(1..=TABLE_MAX_N.min(MAX_CONTROLS)).contains(&max_n) {
        return Err(Failure::usage(format!("--max-n must be in 1..={TABLE_MAX_N}")));
    }
    let mut text = format!("{:>3} {:>9} {:>9} {:>9} {:>9}\n", "n", "peres", "toffoli", "roots", "feynman");
    for n in 1..=max_n {
        let a = ActivationVector::all_ones(n);
        let peres = synth_peres(n, &a)?;
        let toffoli = synth_toffoli(n, &a)?;
        text.push_str(&format!(
            "{:>3} {:>9} {:>9} {:>9} {:>9}\n",
            n,
            peres.quantum_cost(),
            toffoli.quantum_cost(),
            peres.target_controlled_count(),
            peres.control_feynman_count()
        ));
    }
    emit(out, &text)
}
