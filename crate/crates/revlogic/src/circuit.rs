//! Circuit intermediate representation and exhaustive analysis.
//!
//! A circuit is an ordered cascade of gate applications over `width` lines.
//! Each line is classified on the input side as a named primary input or a
//! constant, and on the output side as a named primary output or garbage.
//! Gates apply strictly in sequence; fan-out and feedback are not
//! representable.

use crate::cost::CostVector;
use crate::gate::GateSpec;
use crate::table::{TruthTable, MAX_ENUM_WIDTH};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on circuit lines (simulation state is packed into a word).
pub const MAX_CIRCUIT_WIDTH: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("missing value for primary input `{0}`")]
    MissingInput(String),
    #[error("`{0}` is not a primary input of this circuit")]
    UnknownInput(String),
    #[error("{what} needs {bits} bits, above the exhaustive cap of {max}")]
    WidthTooLarge {
        what: &'static str,
        bits: usize,
        max: usize,
    },
}

/// Input-side classification of a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputClass {
    Primary(String),
    Constant(bool),
}

/// Output-side classification of a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputClass {
    Primary(String),
    Garbage,
}

/// One gate bound to an ordered set of distinct lines; position `k` binds
/// gate port `k`.
#[derive(Clone, Debug)]
pub struct GateApplication {
    gate: Arc<GateSpec>,
    lines: Vec<usize>,
}

impl GateApplication {
    pub fn new(gate: Arc<GateSpec>, lines: Vec<usize>) -> Self {
        GateApplication { gate, lines }
    }

    pub fn gate(&self) -> &Arc<GateSpec> {
        &self.gate
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Input,
    Output,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Input => write!(f, "input"),
            Side::Output => write!(f, "output"),
        }
    }
}

/// A single validation finding. `gate` and `record` indices refer to the
/// order in which applications and classification records were added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    BadArity {
        gate: usize,
        expected: usize,
        got: usize,
    },
    DuplicateLine {
        gate: usize,
        line: usize,
    },
    LineOutOfRange {
        gate: usize,
        line: usize,
    },
    ClassificationOutOfRange {
        side: Side,
        record: usize,
        line: usize,
    },
    DuplicateClassification {
        side: Side,
        record: usize,
        line: usize,
    },
    Unclassified {
        side: Side,
        line: usize,
    },
    DuplicateName {
        side: Side,
        record: usize,
        name: String,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::BadArity {
                gate,
                expected,
                got,
            } => write!(
                f,
                "application {gate}: gate expects {expected} lines, got {got}"
            ),
            Diagnostic::DuplicateLine { gate, line } => {
                write!(f, "application {gate}: line {line} bound more than once")
            }
            Diagnostic::LineOutOfRange { gate, line } => {
                write!(f, "application {gate}: line {line} out of range")
            }
            Diagnostic::ClassificationOutOfRange { side, line, .. } => {
                write!(f, "{side} classification targets line {line}, out of range")
            }
            Diagnostic::DuplicateClassification { side, line, .. } => {
                write!(
                    f,
                    "line {line} classified more than once on the {side} side"
                )
            }
            Diagnostic::Unclassified { side, line } => {
                write!(f, "line {line} has no {side} classification")
            }
            Diagnostic::DuplicateName { side, name, .. } => {
                write!(f, "{side} name `{name}` used more than once")
            }
        }
    }
}

/// Outcome of validating a circuit description; empty means well-formed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "ok");
        }
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Unvalidated circuit description. Records are kept in insertion order so
/// diagnostics can point back at the offending record.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    width: usize,
    inputs: Vec<(usize, InputClass)>,
    outputs: Vec<(usize, OutputClass)>,
    gates: Vec<GateApplication>,
}

impl CircuitBuilder {
    pub fn new(width: usize) -> Self {
        assert!(
            (1..=MAX_CIRCUIT_WIDTH).contains(&width),
            "circuit width {width} out of range 1..={MAX_CIRCUIT_WIDTH}"
        );
        CircuitBuilder {
            width,
            ..Default::default()
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn primary_input(mut self, line: usize, name: &str) -> Self {
        self.inputs
            .push((line, InputClass::Primary(name.to_string())));
        self
    }

    pub fn constant(mut self, line: usize, value: bool) -> Self {
        self.inputs.push((line, InputClass::Constant(value)));
        self
    }

    pub fn primary_output(mut self, line: usize, name: &str) -> Self {
        self.outputs
            .push((line, OutputClass::Primary(name.to_string())));
        self
    }

    pub fn garbage(mut self, line: usize) -> Self {
        self.outputs.push((line, OutputClass::Garbage));
        self
    }

    pub fn apply(mut self, gate: Arc<GateSpec>, lines: &[usize]) -> Self {
        self.gates.push(GateApplication::new(gate, lines.to_vec()));
        self
    }

    pub fn push_input(&mut self, line: usize, class: InputClass) {
        self.inputs.push((line, class));
    }

    pub fn push_output(&mut self, line: usize, class: OutputClass) {
        self.outputs.push((line, class));
    }

    pub fn push_gate(&mut self, app: GateApplication) {
        self.gates.push(app);
    }

    pub fn input_records(&self) -> &[(usize, InputClass)] {
        &self.inputs
    }

    pub fn output_records(&self) -> &[(usize, OutputClass)] {
        &self.outputs
    }

    pub fn gate_records(&self) -> &[GateApplication] {
        &self.gates
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut diags = Vec::new();

        for (idx, app) in self.gates.iter().enumerate() {
            let expected = app.gate.width();
            if app.lines.len() != expected {
                diags.push(Diagnostic::BadArity {
                    gate: idx,
                    expected,
                    got: app.lines.len(),
                });
            }
            let mut seen = vec![false; self.width];
            for &line in &app.lines {
                if line >= self.width {
                    diags.push(Diagnostic::LineOutOfRange { gate: idx, line });
                } else if seen[line] {
                    diags.push(Diagnostic::DuplicateLine { gate: idx, line });
                } else {
                    seen[line] = true;
                }
            }
        }

        self.validate_side(Side::Input, &mut diags);
        self.validate_side(Side::Output, &mut diags);
        ValidationReport { diagnostics: diags }
    }

    fn validate_side(&self, side: Side, diags: &mut Vec<Diagnostic>) {
        let mut classified = vec![false; self.width];
        let mut names: Vec<&str> = Vec::new();
        let records: Vec<(usize, Option<&str>)> = match side {
            Side::Input => self
                .inputs
                .iter()
                .map(|(line, class)| {
                    let name = match class {
                        InputClass::Primary(n) => Some(n.as_str()),
                        InputClass::Constant(_) => None,
                    };
                    (*line, name)
                })
                .collect(),
            Side::Output => self
                .outputs
                .iter()
                .map(|(line, class)| {
                    let name = match class {
                        OutputClass::Primary(n) => Some(n.as_str()),
                        OutputClass::Garbage => None,
                    };
                    (*line, name)
                })
                .collect(),
        };
        for (record, (line, name)) in records.into_iter().enumerate() {
            if line >= self.width {
                diags.push(Diagnostic::ClassificationOutOfRange { side, record, line });
                continue;
            }
            if classified[line] {
                diags.push(Diagnostic::DuplicateClassification { side, record, line });
            }
            classified[line] = true;
            if let Some(name) = name {
                if names.iter().any(|n| n.eq_ignore_ascii_case(name)) {
                    diags.push(Diagnostic::DuplicateName {
                        side,
                        record,
                        name: name.to_string(),
                    });
                }
                names.push(name);
            }
        }
        for (line, &done) in classified.iter().enumerate() {
            if !done {
                diags.push(Diagnostic::Unclassified { side, line });
            }
        }
    }

    /// Validates and produces an immutable circuit.
    pub fn build(self) -> Result<Circuit, ValidationReport> {
        let report = self.validate();
        if !report.is_clean() {
            return Err(report);
        }
        let mut input_class = vec![InputClass::Constant(false); self.width];
        for (line, class) in self.inputs {
            input_class[line] = class;
        }
        let mut output_class = vec![OutputClass::Garbage; self.width];
        for (line, class) in self.outputs {
            output_class[line] = class;
        }
        Ok(Circuit {
            width: self.width,
            input_class,
            output_class,
            gates: self.gates,
        })
    }
}

/// Per-assignment simulation result: named outputs and garbage line values,
/// both in ascending line order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimOutcome {
    pub outputs: Vec<(String, bool)>,
    pub garbage: Vec<(usize, bool)>,
}

impl SimOutcome {
    pub fn output(&self, name: &str) -> Option<bool> {
        self.outputs
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|&(_, v)| v)
    }
}

/// One row of a restricted function table. Bits are packed most significant
/// first in ascending line order of the named outputs / garbage lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedRow {
    pub outputs: u64,
    pub garbage: u64,
}

/// The function a circuit computes from its primary inputs to all of its
/// outputs, with constants already fixed.
#[derive(Clone, Debug)]
pub struct RestrictedFunction {
    pub input_names: Vec<String>,
    pub output_names: Vec<String>,
    pub garbage_lines: Vec<usize>,
    pub rows: Vec<RestrictedRow>,
    pub injective: bool,
}

impl RestrictedFunction {
    /// Value of a named output on one row.
    pub fn output(&self, row: usize, name: &str) -> Option<bool> {
        let pos = self
            .output_names
            .iter()
            .position(|n| n.eq_ignore_ascii_case(name))?;
        let shift = self.output_names.len() - 1 - pos;
        Some((self.rows[row].outputs >> shift) & 1 == 1)
    }
}

/// Aggregate circuit metrics: gate count, quantum cost, constant inputs,
/// garbage outputs, logic-operation cost.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    pub gate_count: u32,
    pub quantum_cost: u32,
    pub constant_inputs: u32,
    pub garbage_outputs: u32,
    pub logic_cost: CostVector,
}

impl fmt::Display for Metrics {
    /// Renders as `gates=2,ci=2,go=4,qc=20,T=14A+8B+6D`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gates={},ci={},go={},qc={},T={}",
            self.gate_count,
            self.constant_inputs,
            self.garbage_outputs,
            self.quantum_cost,
            self.logic_cost
        )
    }
}

/// A validated circuit. Immutable once built.
#[derive(Clone, Debug)]
pub struct Circuit {
    width: usize,
    input_class: Vec<InputClass>,
    output_class: Vec<OutputClass>,
    gates: Vec<GateApplication>,
}

impl Circuit {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn input_class(&self) -> &[InputClass] {
        &self.input_class
    }

    pub fn output_class(&self) -> &[OutputClass] {
        &self.output_class
    }

    pub fn gates(&self) -> &[GateApplication] {
        &self.gates
    }

    /// Lines carrying primary inputs, ascending.
    pub fn primary_input_lines(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|&i| matches!(self.input_class[i], InputClass::Primary(_)))
            .collect()
    }

    /// Lines carrying primary outputs, ascending.
    pub fn primary_output_lines(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|&i| matches!(self.output_class[i], OutputClass::Primary(_)))
            .collect()
    }

    /// Primary input names in ascending line order.
    pub fn input_names(&self) -> Vec<&str> {
        self.input_class
            .iter()
            .filter_map(|c| match c {
                InputClass::Primary(n) => Some(n.as_str()),
                InputClass::Constant(_) => None,
            })
            .collect()
    }

    /// Primary output names in ascending line order.
    pub fn output_names(&self) -> Vec<&str> {
        self.output_class
            .iter()
            .filter_map(|c| match c {
                OutputClass::Primary(n) => Some(n.as_str()),
                OutputClass::Garbage => None,
            })
            .collect()
    }

    /// Applies the cascade to a packed line state (line `i` at bit `i`).
    pub(crate) fn run_state(&self, mut state: u64) -> u64 {
        for app in &self.gates {
            let gw = app.gate.width();
            let mut word = 0u32;
            for (k, &line) in app.lines.iter().enumerate() {
                word |= (((state >> line) & 1) as u32) << (gw - 1 - k);
            }
            let out = app.gate.apply(word);
            for (k, &line) in app.lines.iter().enumerate() {
                let bit = u64::from((out >> (gw - 1 - k)) & 1);
                state = (state & !(1u64 << line)) | (bit << line);
            }
        }
        state
    }

    /// Runs the circuit on one assignment of the primary inputs.
    pub fn simulate(
        &self,
        assignment: &BTreeMap<String, bool>,
    ) -> Result<SimOutcome, CircuitError> {
        let known: Vec<&str> = self.input_names();
        for name in assignment.keys() {
            if !known.iter().any(|k| k.eq_ignore_ascii_case(name)) {
                return Err(CircuitError::UnknownInput(name.clone()));
            }
        }
        let mut state = 0u64;
        for (line, class) in self.input_class.iter().enumerate() {
            let value = match class {
                InputClass::Constant(v) => *v,
                InputClass::Primary(name) => *assignment
                    .iter()
                    .find(|(k, _)| k.eq_ignore_ascii_case(name))
                    .map(|(_, v)| v)
                    .ok_or_else(|| CircuitError::MissingInput(name.clone()))?,
            };
            state |= u64::from(value) << line;
        }
        let state = self.run_state(state);
        let mut outputs = Vec::new();
        let mut garbage = Vec::new();
        for (line, class) in self.output_class.iter().enumerate() {
            let value = (state >> line) & 1 == 1;
            match class {
                OutputClass::Primary(name) => outputs.push((name.clone(), value)),
                OutputClass::Garbage => garbage.push((line, value)),
            }
        }
        Ok(SimOutcome { outputs, garbage })
    }

    /// The permutation the cascade realizes over all lines, ignoring
    /// classifications. Line 0 is the most significant bit of the word.
    pub fn full_permutation(&self) -> Result<TruthTable, CircuitError> {
        if self.width > MAX_ENUM_WIDTH {
            return Err(CircuitError::WidthTooLarge {
                what: "full permutation",
                bits: self.width,
                max: MAX_ENUM_WIDTH,
            });
        }
        let width = self.width;
        let image = |word: u32| {
            let state = word_to_state(word, width);
            state_to_word(self.run_state(state), width)
        };
        // Parallelism only pays off once the enumeration is large.
        let mapping: Vec<u32> = if width <= 12 {
            (0..1u32 << width).map(image).collect()
        } else {
            (0..1u32 << width).into_par_iter().map(image).collect()
        };
        Ok(TruthTable::new(width, mapping).expect("cascade of bijections is a bijection"))
    }

    /// Enumerates every primary-input assignment and tabulates all outputs.
    ///
    /// Row `r` assigns the primary inputs (ascending line order, first one
    /// most significant) from the bits of `r`. The injectivity of the rows
    /// is checked, not assumed.
    pub fn restricted_function(&self) -> Result<RestrictedFunction, CircuitError> {
        let in_lines = self.primary_input_lines();
        if in_lines.len() > MAX_ENUM_WIDTH {
            return Err(CircuitError::WidthTooLarge {
                what: "restricted function",
                bits: in_lines.len(),
                max: MAX_ENUM_WIDTH,
            });
        }
        let out_lines = self.primary_output_lines();
        let garbage_lines: Vec<usize> = (0..self.width)
            .filter(|&i| matches!(self.output_class[i], OutputClass::Garbage))
            .collect();
        let mut base = 0u64;
        for (line, class) in self.input_class.iter().enumerate() {
            if let InputClass::Constant(true) = class {
                base |= 1 << line;
            }
        }
        let n = in_lines.len();
        let row = |r: u64| {
            let mut state = base;
            for (k, &line) in in_lines.iter().enumerate() {
                let bit = (r >> (n - 1 - k)) & 1;
                state |= bit << line;
            }
            let state = self.run_state(state);
            RestrictedRow {
                outputs: collect_bits(state, &out_lines),
                garbage: collect_bits(state, &garbage_lines),
            }
        };
        let rows: Vec<RestrictedRow> = if n <= 12 {
            (0..1u64 << n).map(row).collect()
        } else {
            (0..1u64 << n).into_par_iter().map(row).collect()
        };
        let mut keys: Vec<u128> = rows
            .iter()
            .map(|row| (u128::from(row.outputs) << 64) | u128::from(row.garbage))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let injective = keys.len() == rows.len();
        Ok(RestrictedFunction {
            input_names: self.input_names().iter().map(|s| s.to_string()).collect(),
            output_names: self.output_names().iter().map(|s| s.to_string()).collect(),
            garbage_lines,
            rows,
            injective,
        })
    }

    /// Aggregate metrics of the circuit.
    pub fn metrics(&self) -> Metrics {
        Metrics {
            gate_count: self.gates.len() as u32,
            quantum_cost: self.gates.iter().map(|a| a.gate.quantum_cost()).sum(),
            constant_inputs: self
                .input_class
                .iter()
                .filter(|c| matches!(c, InputClass::Constant(_)))
                .count() as u32,
            garbage_outputs: self
                .output_class
                .iter()
                .filter(|c| matches!(c, OutputClass::Garbage))
                .count() as u32,
            logic_cost: self.gates.iter().map(|a| a.gate.logic_cost()).sum(),
        }
    }

    /// The circuit followed by the reversed sequence of inverse gates; its
    /// full permutation is the identity.
    pub fn append_inverse(&self) -> Circuit {
        let mut gates = self.gates.clone();
        for app in self.gates.iter().rev() {
            gates.push(GateApplication::new(
                Arc::new(app.gate.inverse()),
                app.lines.clone(),
            ));
        }
        Circuit {
            width: self.width,
            input_class: self.input_class.clone(),
            output_class: self.output_class.clone(),
            gates,
        }
    }

    /// Concatenates two circuits of equal width: this cascade, then the
    /// other's. Input classes come from `self`, output classes from `other`.
    pub fn then(&self, other: &Circuit) -> Circuit {
        assert_eq!(self.width, other.width, "width mismatch in concatenation");
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Circuit {
            width: self.width,
            input_class: self.input_class.clone(),
            output_class: other.output_class.clone(),
            gates,
        }
    }
}

fn collect_bits(state: u64, lines: &[usize]) -> u64 {
    lines
        .iter()
        .fold(0u64, |acc, &line| (acc << 1) | ((state >> line) & 1))
}

/// Public word (line 0 = MSB) to internal state (line i = bit i).
fn word_to_state(word: u32, width: usize) -> u64 {
    let mut state = 0u64;
    for line in 0..width {
        state |= u64::from((word >> (width - 1 - line)) & 1) << line;
    }
    state
}

fn state_to_word(state: u64, width: usize) -> u32 {
    let mut word = 0u32;
    for line in 0..width {
        word |= (((state >> line) & 1) as u32) << (width - 1 - line);
    }
    word
}
