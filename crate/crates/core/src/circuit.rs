//! Gate and circuit representation.
//!
//! A [`Circuit`] is an immutable, ordered list of elementary gates over
//! `n_controls + 1` lines. Lines `1..=n_controls` carry the control signals
//! and line `n_controls + 1` is the target. Every elementary gate has a
//! quantum cost of 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Root order of a controlled root-of-NOT gate. Always a power of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Kappa(u64);

impl Kappa {
    pub const ONE: Kappa = Kappa(1);

    pub fn new(value: u64) -> Result<Self> {
        if value == 0 || !value.is_power_of_two() {
            return Err(Error::invalid_argument(format!(
                "kappa must be a positive power of two, got {value}"
            )));
        }
        Ok(Kappa(value))
    }

    /// `2^exp`.
    pub fn pow2(exp: u32) -> Result<Self> {
        1u64.checked_shl(exp)
            .filter(|_| exp < 64)
            .map(Kappa)
            .ok_or_else(|| Error::invalid_argument(format!("kappa 2^{exp} is too large")))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Kappa {
    type Error = Error;

    fn try_from(v: u64) -> Result<Self> {
        Kappa::new(v)
    }
}

impl From<Kappa> for u64 {
    fn from(k: Kappa) -> u64 {
        k.0
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Whether a controlled gate applies the root of NOT or its adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub enum Direction {
    Root,
    Adjoint,
}

impl Direction {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Direction::Root),
            -1 => Ok(Direction::Adjoint),
            other => Err(Error::invalid_argument(format!("direction must be +1 or -1, got {other}"))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Direction::Root => 1,
            Direction::Adjoint => -1,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Direction::Root => Direction::Adjoint,
            Direction::Adjoint => Direction::Root,
        }
    }
}

impl TryFrom<i32> for Direction {
    type Error = Error;

    fn try_from(sign: i32) -> Result<Self> {
        Direction::from_sign(sign)
    }
}

impl From<Direction> for i32 {
    fn from(d: Direction) -> i32 {
        d.sign()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Root => "+1",
            Direction::Adjoint => "-1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    /// Controlled NOT: `target ^= control`.
    #[serde(rename = "cnot")]
    Feynman { control: usize, target: usize },
    /// Controlled κ-th root of NOT (or its adjoint) on `target`.
    #[serde(rename = "croot")]
    ControlledRoot { kappa: Kappa, direction: Direction, control: usize, target: usize },
    Not { line: usize },
}

impl Gate {
    pub fn feynman(control: usize, target: usize) -> Self {
        Gate::Feynman { control, target }
    }

    pub fn root(kappa: Kappa, direction: Direction, control: usize, target: usize) -> Self {
        Gate::ControlledRoot { kappa, direction, control, target }
    }

    pub fn not(line: usize) -> Self {
        Gate::Not { line }
    }

    /// The inverse gate. Feynman and NOT are self-inverse.
    pub fn adjoint(self) -> Self {
        match self {
            Gate::ControlledRoot { kappa, direction, control, target } => Gate::ControlledRoot {
                kappa,
                direction: direction.inverse(),
                control,
                target,
            },
            other => other,
        }
    }

    pub fn lines(&self) -> (Option<usize>, usize) {
        match *self {
            Gate::Feynman { control, target } | Gate::ControlledRoot { control, target, .. } => {
                (Some(control), target)
            }
            Gate::Not { line } => (None, line),
        }
    }

    pub(crate) fn validate(&self, width: usize) -> Result<()> {
        let (control, target) = self.lines();
        let in_range = |l: usize| (1..=width).contains(&l);
        if !in_range(target) || control.is_some_and(|c| !in_range(c)) {
            return Err(Error::InvalidGate(format!("{self} uses a line outside 1..={width}")));
        }
        if control == Some(target) {
            return Err(Error::InvalidGate(format!("{self} has control equal to target")));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Feynman { control, target } => write!(f, "cnot {control} {target}"),
            Gate::ControlledRoot { kappa, direction, control, target } => {
                write!(f, "croot {kappa} {direction} {control} {target}")
            }
            Gate::Not { line } => write!(f, "not {line}"),
        }
    }
}

/// An ordered gate sequence over `n_controls` control lines and one target.
///
/// Equality compares structure only (line count and gate list); the label is
/// descriptive metadata.
#[derive(Clone, Debug)]
pub struct Circuit {
    n_controls: usize,
    gates: Vec<Gate>,
    label: String,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.n_controls == other.n_controls && self.gates == other.gates
    }
}

impl Eq for Circuit {}

impl Circuit {
    /// An empty circuit with `n_controls` control lines plus a target line.
    pub fn new(n_controls: usize) -> Result<Self> {
        if n_controls < 1 {
            return Err(Error::invalid_argument("a circuit needs at least one control line"));
        }
        Ok(Circuit { n_controls, gates: Vec::new(), label: String::new() })
    }

    pub fn from_gates(n_controls: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        gates
            .into_iter()
            .try_fold(Circuit::new(n_controls)?, |c, g| c.append_gate(g))
    }

    /// Returns the circuit with `gate` appended.
    pub fn append_gate(mut self, gate: Gate) -> Result<Self> {
        gate.validate(self.width())?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn width(&self) -> usize {
        self.n_controls + 1
    }

    pub fn n_controls(&self) -> usize {
        self.n_controls
    }

    pub fn target_line(&self) -> usize {
        self.width()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Every elementary gate costs 1.
    pub fn quantum_cost(&self) -> usize {
        self.gates.len()
    }

    /// The inverse circuit: gates reversed, root directions negated.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            n_controls: self.n_controls,
            gates: self.gates.iter().rev().map(|g| g.adjoint()).collect(),
            label: if self.label.is_empty() { String::new() } else { format!("adjoint({})", self.label) },
        }
    }

    /// `self` followed by `next`. The result keeps `self`'s label.
    pub fn compose(&self, next: &Circuit) -> Result<Circuit> {
        if self.width() != next.width() {
            return Err(Error::invalid_argument(format!(
                "cannot compose circuits of width {} and {}",
                self.width(),
                next.width()
            )));
        }
        let mut gates = Vec::with_capacity(self.gates.len() + next.gates.len());
        gates.extend_from_slice(&self.gates);
        gates.extend_from_slice(&next.gates);
        Ok(Circuit { n_controls: self.n_controls, gates, label: self.label.clone() })
    }

    pub fn gate_census(&self) -> GateCensus {
        self.gates.iter().fold(GateCensus::default(), |mut census, g| {
            match g {
                Gate::Feynman { .. } => census.feynman_count += 1,
                Gate::ControlledRoot { direction: Direction::Root, .. } => census.root_count += 1,
                Gate::ControlledRoot { direction: Direction::Adjoint, .. } => {
                    census.adjoint_count += 1
                }
                Gate::Not { .. } => census.not_count += 1,
            }
            census
        })
    }

    /// Controlled gates acting on the target line, whatever their kind. A
    /// κ = 1 root is emitted as a Feynman gate onto the target and is counted
    /// here, not in [`Circuit::control_feynman_count`].
    pub fn target_controlled_count(&self) -> usize {
        let target = self.target_line();
        self.gates
            .iter()
            .filter(|g| matches!(g.lines(), (Some(_), t) if t == target))
            .count()
    }

    /// Feynman gates acting among control lines only.
    pub fn control_feynman_count(&self) -> usize {
        let target = self.target_line();
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Feynman { target: t, .. } if *t != target))
            .count()
    }

    /// Crate-internal constructor for generators that build gates already
    /// known to be in range.
    pub(crate) fn from_trusted(n_controls: usize, gates: Vec<Gate>, label: String) -> Circuit {
        debug_assert!(gates.iter().all(|g| g.validate(n_controls + 1).is_ok()));
        Circuit { n_controls, gates, label }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCensus {
    pub feynman_count: usize,
    pub root_count: usize,
    pub adjoint_count: usize,
    pub not_count: usize,
}

impl GateCensus {
    /// Controlled root-of-NOT gates of either direction.
    pub fn controlled_count(&self) -> usize {
        self.root_count + self.adjoint_count
    }

    pub fn total(&self) -> usize {
        self.feynman_count + self.root_count + self.adjoint_count + self.not_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u64) -> Kappa {
        Kappa::new(v).unwrap()
    }

    #[test]
    fn make_circuit_widths() {
        assert_eq!(Circuit::new(2).unwrap().width(), 3);
        assert_eq!(Circuit::new(2).unwrap().quantum_cost(), 0);
        assert_eq!(Circuit::new(1).unwrap().width(), 2);
        assert_eq!(Circuit::new(4).unwrap().width(), 5);
        assert!(matches!(Circuit::new(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn append_checks_bounds() {
        let c = Circuit::new(2).unwrap();
        assert_eq!(c.clone().append_gate(Gate::feynman(1, 2)).unwrap().gates().len(), 1);
        let root = Gate::root(k(2), Direction::Root, 2, 3);
        assert_eq!(c.clone().append_gate(root).unwrap().gates().len(), 1);
        assert!(matches!(c.clone().append_gate(Gate::feynman(1, 4)), Err(Error::InvalidGate(_))));
        assert!(matches!(c.clone().append_gate(Gate::feynman(2, 2)), Err(Error::InvalidGate(_))));
        assert!(matches!(c.append_gate(Gate::not(0)), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn kappa_must_be_power_of_two() {
        assert!(Kappa::new(0).is_err());
        assert!(Kappa::new(3).is_err());
        assert_eq!(Kappa::new(8).unwrap().get(), 8);
        assert_eq!(Kappa::pow2(3).unwrap(), k(8));
        assert!(Kappa::pow2(64).is_err());
    }

    #[test]
    fn adjoint_single_root() {
        let c = Circuit::from_gates(2, [Gate::root(k(2), Direction::Root, 1, 3)]).unwrap();
        assert_eq!(c.adjoint().gates(), &[Gate::root(k(2), Direction::Adjoint, 1, 3)]);
    }

    #[test]
    fn adjoint_reverses_order() {
        let c = Circuit::from_gates(
            2,
            [Gate::feynman(1, 2), Gate::root(k(2), Direction::Root, 2, 3)],
        )
        .unwrap();
        assert_eq!(
            c.adjoint().gates(),
            &[Gate::root(k(2), Direction::Adjoint, 2, 3), Gate::feynman(1, 2)]
        );
        assert_eq!(c.adjoint().adjoint(), c);
    }

    #[test]
    fn compose_rules() {
        let c = Circuit::from_gates(2, [Gate::feynman(1, 2), Gate::not(3)]).unwrap();
        let empty = Circuit::new(2).unwrap();
        assert_eq!(c.compose(&empty).unwrap(), c);
        let cc = c.compose(&c).unwrap();
        assert_eq!(cc.quantum_cost(), 2 * c.quantum_cost());
        assert!(c.compose(&Circuit::new(3).unwrap()).is_err());
    }

    #[test]
    fn census_counts_kinds() {
        assert_eq!(Circuit::new(3).unwrap().gate_census(), GateCensus::default());
        let c = Circuit::from_gates(
            2,
            [
                Gate::feynman(1, 2),
                Gate::root(k(2), Direction::Root, 1, 3),
                Gate::root(k(2), Direction::Adjoint, 2, 3),
                Gate::not(3),
            ],
        )
        .unwrap();
        let census = c.gate_census();
        assert_eq!(
            census,
            GateCensus { feynman_count: 1, root_count: 1, adjoint_count: 1, not_count: 1 }
        );
        assert_eq!(census.total(), c.quantum_cost());
    }

    #[test]
    fn label_is_not_part_of_equality() {
        let a = Circuit::new(2).unwrap().with_label("a");
        let b = Circuit::new(2).unwrap().with_label("b");
        assert_eq!(a, b);
    }
}
