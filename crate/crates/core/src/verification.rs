//! Functional oracles and equivalence checking.
//!
//! The oracles here are written directly from the gate definitions and never
//! look at how the generators lay out their gates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::simulation::{dense_unitary, simulate_basis, ClassicalOutput};
use crate::synthesis::{alpha_table, gate_direction, ActivationVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Output i is c1 ⊕ … ⊕ ci; target t ⊕ [c = a].
    Peres,
    /// Controls pass through; target t ⊕ [c = a].
    Toffoli,
    /// Prefix parities; target t ⊕ (c1 ∨ … ∨ cn).
    OrGate,
    /// Prefix parities; target t ⊕ ¬(c1 ∨ … ∨ cn).
    AndComplemented,
    /// Every line passes through.
    Identity,
}

impl Family {
    pub fn needs_activation(self) -> bool {
        matches!(self, Family::Peres | Family::Toffoli)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "peres" => Ok(Family::Peres),
            "toffoli" => Ok(Family::Toffoli),
            "or-gate" | "orgate" => Ok(Family::OrGate),
            "and-complemented" | "andzero" => Ok(Family::AndComplemented),
            "identity" => Ok(Family::Identity),
            other => Err(Error::invalid_argument(format!("unknown gate family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Peres => "peres",
            Family::Toffoli => "toffoli",
            Family::OrGate => "or-gate",
            Family::AndComplemented => "and-complemented",
            Family::Identity => "identity",
        })
    }
}

/// Which reversible function a circuit is supposed to realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateFamilySpec {
    family: Family,
    n: usize,
    activation: Option<ActivationVector>,
}

impl GateFamilySpec {
    pub fn new(family: Family, n: usize, activation: Option<ActivationVector>) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid_argument("a gate family needs at least one control"));
        }
        match (family.needs_activation(), activation) {
            (true, None) => {
                return Err(Error::invalid_argument(format!("{family} needs an activation vector")))
            }
            (false, Some(_)) => {
                return Err(Error::invalid_argument(format!(
                    "{family} does not take an activation vector"
                )))
            }
            (true, Some(a)) if a.len() != n => {
                return Err(Error::invalid_argument(format!(
                    "activation {a} has length {} but n = {n}",
                    a.len()
                )))
            }
            (true, Some(a)) if a.is_zero() => return Err(Error::UseZeroPolarityGenerator),
            _ => {}
        }
        Ok(GateFamilySpec { family, n, activation })
    }

    pub fn peres(n: usize, a: ActivationVector) -> Result<Self> {
        Self::new(Family::Peres, n, Some(a))
    }

    pub fn toffoli(n: usize, a: ActivationVector) -> Result<Self> {
        Self::new(Family::Toffoli, n, Some(a))
    }

    pub fn or_gate(n: usize) -> Result<Self> {
        Self::new(Family::OrGate, n, None)
    }

    pub fn and_complemented(n: usize) -> Result<Self> {
        Self::new(Family::AndComplemented, n, None)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(Family::Identity, n, None)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn activation(&self) -> Option<ActivationVector> {
        self.activation
    }
}

/// Expected output for a basis input (controls c1..cn, then target t).
pub fn spec_output(spec: &GateFamilySpec, input: &BitString) -> Result<BitString> {
    let n = spec.n;
    if input.len() != n + 1 {
        return Err(Error::invalid_argument(format!(
            "input {input} has length {} but the spec expects {}",
            input.len(),
            n + 1
        )));
    }
    let controls = input.prefix(n);
    let t = input.get(n + 1);

    let prefix_parities = || {
        let mut acc = false;
        let bits: Vec<bool> = controls
            .iter()
            .map(|c| {
                acc ^= c;
                acc
            })
            .collect();
        BitString::from_bools(&bits)
    };
    // ∏ (c_i ⊕ a_i ⊕ 1), one factor per control.
    let fires = |a: &ActivationVector| {
        (1..=n).all(|i| controls.get(i) ^ a.get(i) ^ true)
    };
    let any_set = controls.iter().any(|c| c);

    let out = match spec.family {
        Family::Peres => {
            let a = spec.activation.expect("validated on construction");
            prefix_parities().push(t ^ fires(&a))
        }
        Family::Toffoli => {
            let a = spec.activation.expect("validated on construction");
            controls.push(t ^ fires(&a))
        }
        Family::OrGate => prefix_parities().push(t ^ any_set),
        Family::AndComplemented => prefix_parities().push(t ^ !any_set),
        Family::Identity => *input,
    };
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceReport {
    Pass {
        inputs_checked: usize,
        exhaustive: bool,
        dense_checked: bool,
    },
    /// The lexicographically smallest failing input among those checked.
    Counterexample {
        input: BitString,
        expected: BitString,
        actual: ClassicalOutput,
    },
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        matches!(self, EquivalenceReport::Pass { .. })
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceReport::Pass { inputs_checked, exhaustive, dense_checked } => {
                write!(
                    f,
                    "pass ({inputs_checked} inputs, {}{})",
                    if *exhaustive { "exhaustive" } else { "sampled" },
                    if *dense_checked { ", dense cross-check" } else { "" }
                )
            }
            EquivalenceReport::Counterexample { input, expected, actual } => {
                let actual = match actual {
                    ClassicalOutput::Classical(b) => b.to_string(),
                    ClassicalOutput::NonClassical => "NonClassical".to_string(),
                };
                write!(f, "counterexample: input {input} expected {expected} got {actual}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Up to this many controls every basis input is checked.
    pub exhaustive_max_n: usize,
    /// Random inputs checked above `exhaustive_max_n`.
    pub samples: usize,
    pub seed: u64,
    /// Also compare against the dense unitary, up to this width.
    pub dense_max_width: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { exhaustive_max_n: 5, samples: 1000, seed: 0x5eed, dense_max_width: Some(6) }
    }
}

pub fn check_equivalence(c: &Circuit, spec: &GateFamilySpec) -> Result<EquivalenceReport> {
    check_equivalence_with(c, spec, &CheckOptions::default())
}

pub fn check_equivalence_with(
    c: &Circuit,
    spec: &GateFamilySpec,
    opts: &CheckOptions,
) -> Result<EquivalenceReport> {
    if c.n_controls() != spec.n {
        return Err(Error::invalid_argument(format!(
            "circuit has {} controls but the spec has {}",
            c.n_controls(),
            spec.n
        )));
    }
    let width = c.width();
    let exhaustive = spec.n <= opts.exhaustive_max_n;
    let inputs: Vec<BitString> = if exhaustive {
        BitString::all(width).collect()
    } else {
        sample_inputs(spec, opts)
    };
    let dense = match opts.dense_max_width {
        Some(limit) if width <= limit => Some(dense_unitary(c)?),
        _ => None,
    };

    // Inputs are in lexicographic order, so the first failure is the smallest.
    for input in &inputs {
        let expected = spec_output(spec, input)?;
        let actual = simulate_basis(c, input)?;
        if actual != ClassicalOutput::Classical(expected) {
            return Ok(EquivalenceReport::Counterexample { input: *input, expected, actual });
        }
        if let Some(u) = &dense {
            let column = u.column(input.lex_index() as usize);
            match column.as_basis_state(width, 1e-9) {
                Some(out) if out == expected => {}
                other => {
                    let actual = other
                        .map(ClassicalOutput::Classical)
                        .unwrap_or(ClassicalOutput::NonClassical);
                    return Ok(EquivalenceReport::Counterexample { input: *input, expected, actual });
                }
            }
        }
    }
    Ok(EquivalenceReport::Pass {
        inputs_checked: inputs.len(),
        exhaustive,
        dense_checked: dense.is_some(),
    })
}

/// Random inputs plus the control vectors where the families change
/// behavior (0…0, 1…1 and the activation vector), each with t = 0 and t = 1.
fn sample_inputs(spec: &GateFamilySpec, opts: &CheckOptions) -> Vec<BitString> {
    let width = spec.n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let full = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
    let mut picked: BTreeSet<BitString> = (0..opts.samples)
        .map(|_| BitString::from_lex_index(rng.gen::<u64>() & full, width))
        .collect();
    let mut landmarks = vec![BitString::zeros(spec.n), BitString::ones(spec.n)];
    landmarks.extend(spec.activation.map(|a| a.bits()));
    for ctl in landmarks {
        picked.insert(ctl.push(false));
        picked.insert(ctl.push(true));
    }
    picked.into_iter().collect()
}

/// Control vectors on which the circuit flips its target bit.
pub fn activation_set(c: &Circuit) -> Result<BTreeSet<BitString>> {
    let mut set = BTreeSet::new();
    for ctl in BitString::all(c.n_controls()) {
        let input = ctl.push(false);
        match simulate_basis(c, &input)? {
            ClassicalOutput::Classical(out) => {
                if out.get(out.len()) {
                    set.insert(ctl);
                }
            }
            ClassicalOutput::NonClassical => return Err(Error::NonClassical { input }),
        }
    }
    Ok(set)
}

/// Net root power reaching the target when every nonzero α drives one
/// controlled gate whose direction follows `a`:
/// Σ_α dir(α, a) · ⟨α, c⟩.
pub fn exponent_sum(a: &ActivationVector, c: &BitString) -> Result<i64> {
    if a.len() != c.len() {
        return Err(Error::invalid_argument("activation and control vector lengths differ"));
    }
    alpha_table(a.len())?.iter().try_fold(0i64, |acc, alpha| {
        let dir = gate_direction(alpha, a)?;
        Ok(acc + if alpha.drive(c) { i64::from(dir.sign()) } else { 0 })
    })
}

/// The same sum with every controlled gate a root.
pub fn all_root_exponent_sum(c: &BitString) -> Result<i64> {
    Ok(alpha_table(c.len())?.iter().filter(|alpha| alpha.drive(c)).count() as i64)
}
