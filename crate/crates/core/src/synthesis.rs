//! Generators for ancilla-free multi-control Peres and Toffoli gates.
//!
//! Every controlled elementary gate in these circuits is a controlled κ-th
//! root of NOT (or its adjoint) with κ = 2^(n-1), driven by an XOR-linear
//! function α1·c1 ⊕ … ⊕ αn·cn of the control inputs. The driving function is
//! assembled on one of the control lines by Feynman gates just before the
//! controlled gate fires. A controlled gate is a root when the driving
//! function evaluates to 1 on the activation vector and an adjoint otherwise;
//! the net power of the root reaching the target is then κ on the activation
//! vector and 0 everywhere else.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::circuit::{Circuit, Direction, Gate, Kappa};
use crate::error::{Error, Result};

/// Largest control count accepted by the generators. Circuits grow as 2^n.
pub const MAX_CONTROLS: usize = 24;

/// Coefficients (α1..αn) of the driving function α1·c1 ⊕ … ⊕ αn·cn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaVector(BitString);

impl AlphaVector {
    pub fn new(bits: BitString) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::invalid_argument("alpha vector must have at least one coordinate"));
        }
        Ok(AlphaVector(bits))
    }

    pub fn bits(&self) -> BitString {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i)
    }

    pub fn hamming_weight(&self) -> u32 {
        self.0.count_ones()
    }

    /// Value of the driving function on the control vector `controls`.
    pub fn drive(&self, controls: &BitString) -> bool {
        self.0.dot(controls)
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The control vector on which a gate fires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActivationVector(BitString);

impl ActivationVector {
    pub fn new(bits: BitString) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::invalid_argument("activation vector must have at least one coordinate"));
        }
        Ok(ActivationVector(bits))
    }

    /// The standard activation vector 1…1.
    pub fn all_ones(n: usize) -> Self {
        ActivationVector(BitString::ones(n))
    }

    pub fn bits(&self) -> BitString {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The polarity vector p with p_i = a_i ⊕ 1.
    pub fn polarity(&self) -> PolarityVector {
        PolarityVector(self.0.complement())
    }

    /// Every nonzero activation vector of length `n`, in lexicographic order.
    pub fn all_nonzero(n: usize) -> impl Iterator<Item = ActivationVector> {
        BitString::all(n).filter(|b| !b.is_zero()).map(ActivationVector)
    }
}

impl std::str::FromStr for ActivationVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ActivationVector::new(s.parse()?)
    }
}

impl fmt::Display for ActivationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Marks which controls are complemented: p_i = 1 means control i fires on 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolarityVector(BitString);

impl PolarityVector {
    pub fn new(bits: BitString) -> Self {
        PolarityVector(bits)
    }

    pub fn bits(&self) -> BitString {
        self.0
    }

    pub fn activation(&self) -> Result<ActivationVector> {
        ActivationVector::new(self.0.complement())
    }
}

impl fmt::Display for PolarityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroPolarityMode {
    /// Target output t ⊕ (c1 ∨ … ∨ cn).
    OrGate,
    /// The OR gate followed by an inverter on the target: fires on 0…0.
    AndComplemented,
}

/// α vector of the `k`-th controlled gate: α_i is bit `i - 1` of `k`, i.e.
/// `k` written in binary and read least-significant bit first.
pub fn bit_reversal_alpha(k: u64, n: usize) -> Result<AlphaVector> {
    check_controls(n)?;
    if k == 0 || k >= 1 << n {
        return Err(Error::invalid_argument(format!(
            "alpha index {k} out of range 1..={}",
            (1u64 << n) - 1
        )));
    }
    AlphaVector::new(BitString::from_mask(k, n)?)
}

/// α vectors of all 2^n - 1 controlled gates of the Peres construction, in
/// circuit order.
pub fn alpha_table(n: usize) -> Result<Vec<AlphaVector>> {
    check_controls(n)?;
    (1..1u64 << n).map(|k| bit_reversal_alpha(k, n)).collect()
}

/// α vectors of the Gray-code baseline, in circuit order: g_k = k ⊕ (k >> 1)
/// with control 1 as the least significant Gray bit.
pub fn gray_alpha_sequence(n: usize) -> Result<Vec<AlphaVector>> {
    check_controls(n)?;
    (1..1u64 << n)
        .map(|k| AlphaVector::new(BitString::from_mask(k ^ (k >> 1), n)?))
        .collect()
}

/// Root when the driving function is 1 on `a`, adjoint otherwise.
pub fn gate_direction(alpha: &AlphaVector, a: &ActivationVector) -> Result<Direction> {
    if alpha.len() != a.len() {
        return Err(Error::invalid_argument(format!(
            "alpha has length {} but activation has length {}",
            alpha.len(),
            a.len()
        )));
    }
    Ok(if alpha.drive(&a.bits()) { Direction::Root } else { Direction::Adjoint })
}

/// Peres gate with `n` controls firing on activation vector `a`.
///
/// Control output i is c1 ⊕ … ⊕ ci; the target output is t ⊕ [c = a].
/// Cost 2^(n+1) - n - 2.
pub fn synth_peres(n: usize, a: &ActivationVector) -> Result<Circuit> {
    check_activation(n, a)?;
    let gates = peres_gates(n, |alpha| {
        if alpha.drive(&a.bits()) { Direction::Root } else { Direction::Adjoint }
    })?;
    Ok(Circuit::from_trusted(n, gates, format!("peres n={n} a={a}")))
}

/// Block-by-block Peres layout. Block b first drives a gate directly from
/// c_b, then walks j = 1..2^(b-1) - 1, folding the prefix parity held on line
/// trailing_zeros(j) + 1 into line b. After step j, line b holds
/// c_b ⊕ ⟨bit_reversal_alpha(j), c⟩, and after the last step it holds the
/// prefix parity c1 ⊕ … ⊕ cb.
fn peres_gates(n: usize, direction: impl Fn(&AlphaVector) -> Direction) -> Result<Vec<Gate>> {
    check_controls(n)?;
    let kappa = Kappa::pow2((n - 1) as u32)?;
    let target = n + 1;
    let mut gates = Vec::with_capacity((1usize << (n + 1)) - n - 2);
    let emit_controlled = |gates: &mut Vec<Gate>, mask: u64, line: usize| -> Result<()> {
        let alpha = AlphaVector::new(BitString::from_mask(mask, n)?)?;
        gates.push(controlled_gate(kappa, direction(&alpha), line, target));
        Ok(())
    };
    for block in 1..=n {
        let top = 1u64 << (block - 1);
        emit_controlled(&mut gates, top, block)?;
        for j in 1..top {
            gates.push(Gate::feynman(j.trailing_zeros() as usize + 1, block));
            emit_controlled(&mut gates, top | j, block)?;
        }
    }
    Ok(gates)
}

/// κ = 1 roots are NOT itself, which is its own adjoint; emit a Feynman gate.
fn controlled_gate(kappa: Kappa, direction: Direction, control: usize, target: usize) -> Gate {
    if kappa == Kappa::ONE {
        Gate::feynman(control, target)
    } else {
        Gate::root(kappa, direction, control, target)
    }
}

/// Maps raw controls (c1..cn) to prefix parities. Cost n - 1.
pub fn converter_toffoli_to_peres(n: usize) -> Result<Circuit> {
    check_converter(n)?;
    let gates = (1..n).map(|i| Gate::feynman(i, i + 1)).collect();
    Ok(Circuit::from_trusted(n, gates, format!("toffoli-to-peres n={n}")))
}

/// Maps prefix parities back to raw controls. Cost n - 1.
pub fn converter_peres_to_toffoli(n: usize) -> Result<Circuit> {
    check_converter(n)?;
    let gates = (1..n).rev().map(|i| Gate::feynman(i, i + 1)).collect();
    Ok(Circuit::from_trusted(n, gates, format!("peres-to-toffoli n={n}")))
}

/// Toffoli gate firing on `a`: the Peres gate followed by the
/// Peres-to-Toffoli converter. Cost 2^(n+1) - 3.
pub fn synth_toffoli(n: usize, a: &ActivationVector) -> Result<Circuit> {
    let peres = synth_peres(n, a)?;
    let circuit = if n == 1 { peres } else { peres.compose(&converter_peres_to_toffoli(n)?)? };
    Ok(circuit.with_label(format!("toffoli n={n} a={a}")))
}

/// Gray-code Toffoli baseline. Nonempty control subsets are visited in
/// binary-reflected Gray order; the running parity of the current subset
/// lives on the line of its largest element. Cost 2^(n+1) - 3.
pub fn synth_barenco_toffoli(n: usize, a: &ActivationVector) -> Result<Circuit> {
    check_activation(n, a)?;
    let kappa = Kappa::pow2((n - 1) as u32)?;
    let target = n + 1;
    let sequence = gray_alpha_sequence(n)?;
    let mut gates = Vec::with_capacity((1usize << (n + 1)) - 3);
    let mut previous: Option<u64> = None;
    for alpha in &sequence {
        let mask = alpha.bits().mask();
        let max_line = max_element(mask);
        if let Some(prev) = previous {
            let changed = (prev ^ mask).trailing_zeros() as usize + 1;
            let prev_max = max_element(prev);
            if max_line > prev_max {
                gates.push(Gate::feynman(prev_max, max_line));
            } else {
                gates.push(Gate::feynman(changed, max_line));
            }
        }
        gates.push(controlled_gate(kappa, gate_direction(alpha, a)?, max_line, target));
        previous = Some(mask);
    }
    Ok(Circuit::from_trusted(n, gates, format!("barenco-toffoli n={n} a={a}")))
}

fn max_element(mask: u64) -> usize {
    64 - mask.leading_zeros() as usize
}

/// The Peres layout with every controlled gate a root. The target output is
/// t ⊕ (c1 ∨ … ∨ cn); with [`ZeroPolarityMode::AndComplemented`] a trailing
/// inverter makes it t ⊕ (¬c1 ∧ … ∧ ¬cn).
pub fn synth_zero_polarity(n: usize, mode: ZeroPolarityMode) -> Result<Circuit> {
    let mut gates = peres_gates(n, |_| Direction::Root)?;
    let label = match mode {
        ZeroPolarityMode::OrGate => format!("or-gate n={n}"),
        ZeroPolarityMode::AndComplemented => {
            gates.push(Gate::not(n + 1));
            format!("and-complemented n={n}")
        }
    };
    Ok(Circuit::from_trusted(n, gates, label))
}

/// Negates every controlled gate whose α has α_i = 1, which moves the
/// activation vector's coordinate i to its complement.
///
/// `table` lists the α vector of each [`Gate::ControlledRoot`] in circuit
/// order, as returned by [`alpha_table`] or [`gray_alpha_sequence`].
pub fn iterative_polarity_flip(c: &Circuit, table: &[AlphaVector], i: usize) -> Result<Circuit> {
    let n = c.n_controls();
    if !(1..=n).contains(&i) {
        return Err(Error::invalid_argument(format!("control index {i} out of 1..={n}")));
    }
    let roots = c.gates().iter().filter(|g| matches!(g, Gate::ControlledRoot { .. })).count();
    if roots != table.len() || table.iter().any(|alpha| alpha.len() != n) {
        return Err(Error::invalid_argument(format!(
            "alpha assignment ({} entries) does not match the circuit's {roots} controlled roots",
            table.len()
        )));
    }
    let mut alphas = table.iter();
    let gates = c
        .gates()
        .iter()
        .map(|&g| match g {
            Gate::ControlledRoot { .. } => {
                let alpha = alphas.next().expect("counted above");
                if alpha.get(i) { g.adjoint() } else { g }
            }
            other => other,
        })
        .collect();
    Ok(Circuit::from_trusted(n, gates, c.label().to_string()))
}

fn check_controls(n: usize) -> Result<()> {
    if !(1..=MAX_CONTROLS).contains(&n) {
        return Err(Error::invalid_argument(format!(
            "control count {n} out of 1..={MAX_CONTROLS}"
        )));
    }
    Ok(())
}

fn check_converter(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid_argument("converters need at least two controls"));
    }
    check_controls(n)
}

fn check_activation(n: usize, a: &ActivationVector) -> Result<()> {
    check_controls(n)?;
    if a.len() != n {
        return Err(Error::invalid_argument(format!(
            "activation vector {a} has length {} but n = {n}",
            a.len()
        )));
    }
    if a.is_zero() {
        return Err(Error::UseZeroPolarityGenerator);
    }
    Ok(())
}
