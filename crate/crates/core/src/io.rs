//! Circuit documents and ASCII diagrams.
//!
//! The text format is line oriented:
//!
//! ```text
//! circuit v1
//! width 3
//! controls 2
//! label peres n=2 a=11
//! croot 2 +1 1 3
//! croot 2 +1 2 3
//! cnot 1 2
//! croot 2 -1 2 3
//! ```
//!
//! `label` is optional. `#` starts a comment; a controlled root may carry a
//! `# alpha <bits>` annotation naming its driving function. The JSON form
//! ([`CircuitDocument`]) carries the same fields.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Direction, Gate, Kappa};
use crate::error::{Error, Result};
use crate::synthesis::AlphaVector;

pub const FORMAT_VERSION: &str = "v1";

/// Serializable form of a circuit, optionally annotated with the α vector of
/// each controlled root (in circuit order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitDocument {
    pub format_version: String,
    pub width: usize,
    pub n_controls: usize,
    #[serde(default)]
    pub label: String,
    pub gates: Vec<Gate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<AlphaVector>>,
}

impl CircuitDocument {
    pub fn from_circuit(c: &Circuit, alphas: Option<Vec<AlphaVector>>) -> Result<Self> {
        if let Some(alphas) = &alphas {
            let roots = count_roots(c.gates());
            if alphas.len() != roots {
                return Err(Error::invalid_argument(format!(
                    "{} alpha annotations for {roots} controlled roots",
                    alphas.len()
                )));
            }
        }
        Ok(CircuitDocument {
            format_version: FORMAT_VERSION.to_string(),
            width: c.width(),
            n_controls: c.n_controls(),
            label: c.label().to_string(),
            gates: c.gates().to_vec(),
            alphas,
        })
    }

    pub fn to_circuit(&self) -> Result<Circuit> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::invalid_argument(format!(
                "unsupported format version {:?}",
                self.format_version
            )));
        }
        if self.width != self.n_controls + 1 {
            return Err(Error::invalid_argument(format!(
                "width {} does not equal controls + 1 = {}",
                self.width,
                self.n_controls + 1
            )));
        }
        if let Some(alphas) = &self.alphas {
            if alphas.len() != count_roots(&self.gates) {
                return Err(Error::invalid_argument("alpha annotations do not match the controlled roots"));
            }
        }
        Ok(Circuit::from_gates(self.n_controls, self.gates.iter().copied())?.with_label(&self.label))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "circuit {}", self.format_version);
        let _ = writeln!(out, "width {}", self.width);
        let _ = writeln!(out, "controls {}", self.n_controls);
        if !self.label.is_empty() {
            let _ = writeln!(out, "label {}", self.label.replace(['\n', '\r'], " "));
        }
        let mut alphas = self.alphas.iter().flatten();
        for gate in &self.gates {
            match (gate, self.alphas.is_some()) {
                (Gate::ControlledRoot { .. }, true) => {
                    let alpha = alphas.next().expect("alpha count checked");
                    let _ = writeln!(out, "{gate} # alpha {alpha}");
                }
                _ => {
                    let _ = writeln!(out, "{gate}");
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }
}

fn count_roots(gates: &[Gate]) -> usize {
    gates.iter().filter(|g| matches!(g, Gate::ControlledRoot { .. })).count()
}

pub fn serialize(c: &Circuit) -> String {
    CircuitDocument::from_circuit(c, None).expect("no annotations").to_text()
}

pub fn serialize_annotated(c: &Circuit, alphas: &[AlphaVector]) -> Result<String> {
    Ok(CircuitDocument::from_circuit(c, Some(alphas.to_vec()))?.to_text())
}

pub fn parse(text: &str) -> Result<Circuit> {
    CircuitDocument::from_text(text)?.to_circuit()
}

/// Reads a document, choosing JSON when the path ends in `.json`.
pub fn read_document(path: &Path, text: &str) -> Result<CircuitDocument> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        CircuitDocument::from_json(text)
    } else {
        CircuitDocument::from_text(text)
    }
}

/// Writes `doc` as JSON when the path ends in `.json`, text otherwise.
pub fn render_document(path: &Path, doc: &CircuitDocument) -> String {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        doc.to_json()
    } else {
        doc.to_text()
    }
}

#[derive(Default)]
struct Parser {
    version_seen: bool,
    width: Option<usize>,
    controls: Option<usize>,
    label: String,
    gates: Vec<Gate>,
    alphas: Vec<Option<AlphaVector>>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<CircuitDocument> {
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            self.line(line_no, raw)?;
        }
        if !self.version_seen {
            return Err(parse_err(last_line.max(1), "missing `circuit v1` header"));
        }
        let (width, n_controls) = self.header(last_line.max(1))?;
        let alphas = if self.alphas.iter().all(Option::is_some) && !self.alphas.is_empty() {
            Some(self.alphas.into_iter().flatten().collect())
        } else if self.alphas.iter().all(Option::is_none) {
            None
        } else {
            return Err(parse_err(last_line, "alpha annotations must cover every controlled root"));
        };
        Ok(CircuitDocument {
            format_version: FORMAT_VERSION.to_string(),
            width,
            n_controls,
            label: self.label,
            gates: self.gates,
            alphas,
        })
    }

    fn header(&self, line_no: usize) -> Result<(usize, usize)> {
        let width = self.width.ok_or_else(|| parse_err(line_no, "missing `width` header"))?;
        let controls = self.controls.ok_or_else(|| parse_err(line_no, "missing `controls` header"))?;
        if controls < 1 || width != controls + 1 {
            return Err(parse_err(
                line_no,
                format!("width {width} must equal controls + 1 with at least one control"),
            ));
        }
        Ok((width, controls))
    }

    fn line(&mut self, line_no: usize, raw: &str) -> Result<()> {
        let trimmed = raw.trim();
        if let Some(label) = trimmed.strip_prefix("label") {
            if label.is_empty() || label.starts_with(char::is_whitespace) {
                self.require_version(line_no)?;
                self.label = label.trim().to_string();
                return Ok(());
            }
        }
        let (body, comment) = match trimmed.split_once('#') {
            Some((body, comment)) => (body.trim(), Some(comment.trim())),
            None => (trimmed, None),
        };
        if body.is_empty() {
            return Ok(());
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "circuit" => {
                if self.version_seen {
                    return Err(parse_err(line_no, "duplicate `circuit` header"));
                }
                if tokens.len() != 2 || tokens[1] != FORMAT_VERSION {
                    return Err(parse_err(line_no, format!("expected `circuit {FORMAT_VERSION}`")));
                }
                self.version_seen = true;
            }
            "width" => {
                self.require_version(line_no)?;
                self.width = Some(single_number(line_no, &tokens)?);
            }
            "controls" => {
                self.require_version(line_no)?;
                self.controls = Some(single_number(line_no, &tokens)?);
            }
            "cnot" | "croot" | "not" => {
                self.require_version(line_no)?;
                let (width, _) = self.header(line_no)?;
                let gate = parse_gate(line_no, &tokens)?;
                gate.validate(width).map_err(|e| match e {
                    Error::InvalidGate(message) => Error::InvalidGateAt { line: line_no, message },
                    other => other,
                })?;
                if matches!(gate, Gate::ControlledRoot { .. }) {
                    self.alphas.push(parse_alpha(line_no, comment)?);
                } else if comment.is_some_and(|c| c.starts_with("alpha")) {
                    return Err(parse_err(line_no, "alpha annotation on a gate that is not a controlled root"));
                }
                self.gates.push(gate);
            }
            other => return Err(parse_err(line_no, format!("unknown directive {other:?}"))),
        }
        Ok(())
    }

    fn require_version(&self, line_no: usize) -> Result<()> {
        if self.version_seen {
            Ok(())
        } else {
            Err(parse_err(line_no, "expected `circuit v1` as the first line"))
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn number(line_no: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line_no, format!("expected a non-negative integer, got {token:?}")))
}

fn single_number(line_no: usize, tokens: &[&str]) -> Result<usize> {
    if tokens.len() != 2 {
        return Err(parse_err(line_no, format!("`{}` takes exactly one number", tokens[0])));
    }
    number(line_no, tokens[1])
}

fn parse_gate(line_no: usize, tokens: &[&str]) -> Result<Gate> {
    let arity = |n: usize| {
        if tokens.len() == n + 1 {
            Ok(())
        } else {
            Err(parse_err(line_no, format!("`{}` takes {n} arguments", tokens[0])))
        }
    };
    match tokens[0] {
        "cnot" => {
            arity(2)?;
            Ok(Gate::feynman(number(line_no, tokens[1])?, number(line_no, tokens[2])?))
        }
        "croot" => {
            arity(4)?;
            let kappa = tokens[1]
                .parse::<u64>()
                .ok()
                .and_then(|k| Kappa::new(k).ok())
                .ok_or_else(|| {
                    parse_err(line_no, format!("kappa must be a positive power of two, got {:?}", tokens[1]))
                })?;
            let direction = match tokens[2] {
                "+1" => Direction::Root,
                "-1" => Direction::Adjoint,
                other => return Err(parse_err(line_no, format!("direction must be +1 or -1, got {other:?}"))),
            };
            Ok(Gate::root(kappa, direction, number(line_no, tokens[3])?, number(line_no, tokens[4])?))
        }
        "not" => {
            arity(1)?;
            Ok(Gate::not(number(line_no, tokens[1])?))
        }
        _ => unreachable!("dispatched on gate keywords"),
    }
}

fn parse_alpha(line_no: usize, comment: Option<&str>) -> Result<Option<AlphaVector>> {
    let Some(rest) = comment.and_then(|c| c.strip_prefix("alpha")) else {
        return Ok(None);
    };
    let bits = rest
        .trim()
        .parse()
        .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
    Ok(Some(AlphaVector::new(bits).map_err(|e| parse_err(line_no, e.to_string()))?))
}

/// One row per line (controls, then the target), one column per gate, time
/// flowing left to right.
pub fn render_ascii(c: &Circuit) -> String {
    let width = c.width();
    let symbols: Vec<String> = c.gates().iter().map(target_symbol).collect();
    let cell = symbols.iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut rows: Vec<String> = (1..=width)
        .map(|line| {
            if line == width {
                format!("{:<4}", "t")
            } else {
                format!("{:<4}", format!("c{line}"))
            }
        })
        .collect();
    for (gate, symbol) in c.gates().iter().zip(&symbols) {
        let (control, target) = gate.lines();
        let span = control.map(|c| (c.min(target), c.max(target)));
        for (idx, row) in rows.iter_mut().enumerate() {
            let line = idx + 1;
            let mark = if line == target {
                symbol.as_str()
            } else if Some(line) == control {
                "●"
            } else if span.is_some_and(|(lo, hi)| lo < line && line < hi) {
                "┼"
            } else {
                "─"
            };
            row.push('─');
            row.push_str(&center(mark, cell));
            row.push('─');
        }
    }
    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push_str("─\n");
    }
    out
}

fn target_symbol(gate: &Gate) -> String {
    match gate {
        Gate::Feynman { .. } => "⊕".to_string(),
        Gate::ControlledRoot { kappa, direction: Direction::Root, .. } => format!("[V{kappa}]"),
        Gate::ControlledRoot { kappa, direction: Direction::Adjoint, .. } => format!("[V{kappa}†]"),
        Gate::Not { .. } => "[X]".to_string(),
    }
}

fn center(mark: &str, cell: usize) -> String {
    let len = mark.chars().count();
    let left = (cell - len) / 2;
    let right = cell - len - left;
    format!("{}{mark}{}", "─".repeat(left), "─".repeat(right))
}
