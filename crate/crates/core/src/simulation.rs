//! Two independent executors for circuits of Feynman, NOT and controlled
//! root-of-NOT gates.
//!
//! [`dense_unitary`] builds the full 2^w × 2^w matrix and is the ground truth
//! for small widths. [`exponent_simulate`] exploits the structure of layered
//! circuits: control lines only ever see Feynman gates, so they stay classical,
//! and every controlled root lands on the same target, so the target's state is
//! V^e·NOT^f for an integer power e and a flip bit f. Both commute because any
//! root of NOT commutes with NOT.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;

use crate::bits::BitString;
use crate::circuit::{Circuit, Direction, Gate, Kappa};
use crate::error::{Error, Result};

/// Widest circuit [`dense_unitary`] will expand.
pub const DEFAULT_DENSE_WIDTH_LIMIT: usize = 7;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2 {
    pub m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2 { m: [[ONE, ZERO], [ZERO, ONE]] };
    pub const NOT: Unitary2 = Unitary2 { m: [[ZERO, ONE], [ONE, ZERO]] };

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Unitary2 {
        let m = &self.m;
        Unitary2 { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    pub fn pow(&self, exp: u64) -> Unitary2 {
        (0..exp).fold(Unitary2::IDENTITY, |acc, _| acc * *self)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Unitary2) -> f64 {
        (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| (self.m[r][c] - other.m[r][c]).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.adjoint()).max_deviation(&Unitary2::IDENTITY) <= tol
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (&self.m, &rhs.m);
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Unitary2 { m }
    }
}

/// Principal κ-th root of NOT, ½·[[1+ω, 1−ω], [1−ω, 1+ω]] with ω = e^{iπ/κ}.
///
/// Its eigenvalues are 1 (on |+⟩) and ω (on |−⟩), so V^κ = NOT exactly and
/// V^{2κ} = I.
pub fn root_of_not(kappa: u64) -> Result<Unitary2> {
    let kappa = Kappa::new(kappa)?;
    if kappa == Kappa::ONE {
        return Ok(Unitary2::NOT);
    }
    let omega = Complex64::from_polar(1.0, PI / kappa.get() as f64);
    let p = (ONE + omega) * 0.5;
    let q = (ONE - omega) * 0.5;
    Ok(Unitary2 { m: [[p, q], [q, p]] })
}

fn gate_matrix(kappa: Kappa, direction: Direction) -> Unitary2 {
    let v = root_of_not(kappa.get()).expect("Kappa is always a power of two");
    match direction {
        Direction::Root => v,
        Direction::Adjoint => v.adjoint(),
    }
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        DenseMatrix { dim, data }
    }

    /// The permutation matrix sending basis state `j` to `perm[j]`.
    pub fn from_permutation(perm: &[u64]) -> Self {
        let dim = perm.len();
        let mut data = vec![ZERO; dim * dim];
        for (col, &row) in perm.iter().enumerate() {
            data[row as usize * dim + col] = ONE;
        }
        DenseMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> DenseState {
        DenseState { amplitudes: (0..self.dim).map(|r| self.get(r, col)).collect() }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn swap_rows(&mut self, r0: usize, r1: usize) {
        let dim = self.dim;
        for col in 0..dim {
            self.data.swap(r0 * dim + col, r1 * dim + col);
        }
    }

    fn mix_rows(&mut self, r0: usize, r1: usize, u: &Unitary2) {
        let dim = self.dim;
        for col in 0..dim {
            let (x0, x1) = (self.data[r0 * dim + col], self.data[r1 * dim + col]);
            self.data[r0 * dim + col] = u.m[0][0] * x0 + u.m[0][1] * x1;
            self.data[r1 * dim + col] = u.m[1][0] * x0 + u.m[1][1] * x1;
        }
    }
}

/// A state vector over 2^width basis states, indexed by
/// [`BitString::lex_index`].
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    pub amplitudes: Vec<Complex64>,
}

impl DenseState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The basis state this vector equals within `tol`, if any.
    pub fn as_basis_state(&self, width: usize, tol: f64) -> Option<BitString> {
        let (idx, peak) = self
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
        let clean = (peak - ONE).norm() <= tol
            && self
                .amplitudes
                .iter()
                .enumerate()
                .all(|(i, a)| i == idx || a.norm() <= tol);
        clean.then(|| BitString::from_lex_index(idx as u64, width))
    }
}

/// Product of the circuit's gate unitaries, refusing widths beyond
/// [`DEFAULT_DENSE_WIDTH_LIMIT`].
pub fn dense_unitary(c: &Circuit) -> Result<DenseMatrix> {
    dense_unitary_with_limit(c, DEFAULT_DENSE_WIDTH_LIMIT)
}

pub fn dense_unitary_with_limit(c: &Circuit, limit: usize) -> Result<DenseMatrix> {
    let width = c.width();
    if width > limit || width >= usize::BITS as usize / 2 {
        return Err(Error::ResourceLimit { width, limit });
    }
    let dim = 1usize << width;
    // Line l is bit (width - l) of a basis index.
    let bit = |line: usize| 1usize << (width - line);
    let mut u = DenseMatrix::identity(dim);
    for gate in c.gates() {
        match *gate {
            Gate::Feynman { control, target } => {
                let (cb, tb) = (bit(control), bit(target));
                for r in (0..dim).filter(|r| r & cb != 0 && r & tb == 0) {
                    u.swap_rows(r, r | tb);
                }
            }
            Gate::ControlledRoot { kappa, direction, control, target } => {
                let (cb, tb) = (bit(control), bit(target));
                let v = gate_matrix(kappa, direction);
                for r in (0..dim).filter(|r| r & cb != 0 && r & tb == 0) {
                    u.mix_rows(r, r | tb, &v);
                }
            }
            Gate::Not { line } => {
                let tb = bit(line);
                for r in (0..dim).filter(|r| r & tb == 0) {
                    u.swap_rows(r, r | tb);
                }
            }
        }
    }
    Ok(u)
}

/// Result of [`exponent_simulate`]: classical control outputs plus the net
/// power of V = root_of_not(κ) and the number of plain flips (mod 2) applied
/// to the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimState {
    pub control_bits: BitString,
    /// Net root power, in `0..2κ`.
    pub exponent: u64,
    pub target_flips: bool,
    pub kappa: Kappa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalOutput {
    /// Control outputs followed by the target bit.
    Classical(BitString),
    NonClassical,
}

impl ClassicalOutput {
    pub fn bits(&self) -> Option<BitString> {
        match self {
            ClassicalOutput::Classical(b) => Some(*b),
            ClassicalOutput::NonClassical => None,
        }
    }
}

/// The single κ shared by all controlled roots, or κ = 1 if there are none.
/// Fails unless the circuit is layered: Feynman gates act among control
/// lines or onto the target, controlled roots all land on the target with a
/// common κ, and nothing is ever controlled by the target.
pub fn layered_kappa(c: &Circuit) -> Result<Kappa> {
    let target_line = c.target_line();
    let mut kappa: Option<Kappa> = None;
    for (pos, gate) in c.gates().iter().enumerate() {
        match *gate {
            Gate::Feynman { control, .. } if control == target_line => {
                return Err(Error::UnsupportedShape(format!(
                    "gate {pos} ({gate}) is controlled by the target line"
                )));
            }
            Gate::ControlledRoot { kappa: k, target, .. } => {
                if target != target_line {
                    return Err(Error::UnsupportedShape(format!(
                        "gate {pos} ({gate}) applies a root to a control line"
                    )));
                }
                match kappa {
                    Some(existing) if existing != k => {
                        return Err(Error::UnsupportedShape(format!(
                            "gate {pos} ({gate}) mixes kappa {k} with kappa {existing}"
                        )));
                    }
                    _ => kappa = Some(k),
                }
            }
            _ => {}
        }
    }
    Ok(kappa.unwrap_or(Kappa::ONE))
}

/// Runs a layered circuit on the basis input `input` (controls then target).
/// The target input bit does not influence the returned state; pass it to
/// [`classical_output`].
pub fn exponent_simulate(c: &Circuit, input: &BitString) -> Result<SimState> {
    if input.len() != c.width() {
        return Err(Error::invalid_argument(format!(
            "input {input} has length {} but the circuit has width {}",
            input.len(),
            c.width()
        )));
    }
    let kappa = layered_kappa(c)?;
    let modulus = 2 * kappa.get();
    let target_line = c.target_line();
    let mut controls = input.prefix(c.n_controls());
    let mut exponent = 0u64;
    let mut flips = false;
    for gate in c.gates() {
        match *gate {
            Gate::Feynman { control, target } if target == target_line => {
                flips ^= controls.get(control);
            }
            Gate::Feynman { control, target } => {
                if controls.get(control) {
                    controls = controls.flipped(target);
                }
            }
            Gate::ControlledRoot { direction, control, .. } => {
                if controls.get(control) {
                    exponent = match direction {
                        Direction::Root => (exponent + 1) % modulus,
                        Direction::Adjoint => (exponent + modulus - 1) % modulus,
                    };
                }
            }
            Gate::Not { line } if line == target_line => flips = !flips,
            Gate::Not { line } => controls = controls.flipped(line),
        }
    }
    Ok(SimState { control_bits: controls, exponent, target_flips: flips, kappa })
}

/// V^e maps a basis state to a basis state only when e ≡ 0 (mod κ); then the
/// target picks up one extra flip when e = κ.
pub fn classical_output(sim: &SimState, target_in: bool) -> ClassicalOutput {
    let kappa = sim.kappa.get();
    if !sim.exponent.is_multiple_of(kappa) {
        return ClassicalOutput::NonClassical;
    }
    let target = target_in ^ sim.target_flips ^ (sim.exponent == kappa);
    ClassicalOutput::Classical(sim.control_bits.push(target))
}

/// Exponent simulation followed by [`classical_output`].
pub fn simulate_basis(c: &Circuit, input: &BitString) -> Result<ClassicalOutput> {
    let sim = exponent_simulate(c, input)?;
    Ok(classical_output(&sim, input.get(input.len())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruthTable {
    /// `outputs[i]` is the lex index of the output for the input with lex
    /// index `i`.
    Permutation(Vec<u64>),
    /// Inputs whose output is not a basis state, in lexicographic order.
    NonClassical(Vec<BitString>),
}

impl TruthTable {
    pub fn permutation(&self) -> Option<&[u64]> {
        match self {
            TruthTable::Permutation(p) => Some(p),
            TruthTable::NonClassical(_) => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.permutation()
            .is_some_and(|p| p.iter().enumerate().all(|(i, &o)| i as u64 == o))
    }
}

/// Exponent simulation over every basis input.
pub fn truth_table(c: &Circuit) -> Result<TruthTable> {
    layered_kappa(c)?;
    let mut outputs = Vec::with_capacity(1 << c.width());
    let mut non_classical = Vec::new();
    for input in BitString::all(c.width()) {
        match simulate_basis(c, &input)? {
            ClassicalOutput::Classical(out) => outputs.push(out.lex_index()),
            ClassicalOutput::NonClassical => non_classical.push(input),
        }
    }
    Ok(if non_classical.is_empty() {
        TruthTable::Permutation(outputs)
    } else {
        TruthTable::NonClassical(non_classical)
    })
}
