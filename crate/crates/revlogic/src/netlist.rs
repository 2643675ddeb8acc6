//! Line-oriented text formats: circuit netlists, primitive decompositions
//! and gate-registry tables.
//!
//! All three formats share the same lexical rules: one record per line,
//! `#` starts a comment, keywords are case-insensitive, line endings are
//! normalized on parse. Emission is canonical and byte-deterministic:
//! lowercase keywords, uppercase names, single spaces, `\n` endings.
//!
//! Netlist grammar (`width` must come first):
//!
//! ```text
//! width 7
//! input 0 I1
//! const 3 0
//! apply INV0 0 1 2 3
//! output 0 SUM
//! garbage 2
//! ```
//!
//! Decomposition grammar (control first, target second):
//!
//! ```text
//! width 3
//! cv 1 2
//! cnot 0 1
//! x 2
//! ```
//!
//! Gate-table grammar, one gate per record: name, width, 2^width output
//! words in hexadecimal, quantum cost, alpha, beta, delta, and an optional
//! transistor count:
//!
//! ```text
//! SWAP 2 0 2 1 3 0 0 0 0
//! ```

use crate::circuit::{
    Circuit, CircuitBuilder, Diagnostic, GateApplication, InputClass, OutputClass, Side,
    ValidationReport, MAX_CIRCUIT_WIDTH,
};
use crate::cost::CostVector;
use crate::gate::{GateError, GateSpec};
use crate::quantum::{PrimitiveKind, PrimitiveSequence, QuantumPrimitive, MAX_SEQUENCE_WIDTH};
use crate::registry::GateRegistry;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("the document must start with a `width` record")]
    MissingWidth,
    #[error("`width` given more than once")]
    DuplicateWidth,
    #[error("width {got} out of range 1..={max}")]
    WidthOutOfRange { got: usize, max: usize },
    #[error("unknown keyword `{0}`")]
    UnknownKeyword(String),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("expected an integer, got `{0}`")]
    ExpectedInteger(String),
    #[error("expected 0 or 1, got `{0}`")]
    ExpectedBit(String),
    #[error("`{0}` is not a valid name")]
    ExpectedName(String),
    #[error("missing {0}")]
    MissingField(&'static str),
    #[error("unexpected trailing token `{0}`")]
    TrailingToken(String),
    #[error("line {line} out of range for width {width}")]
    LineOutOfRange { line: usize, width: usize },
    #[error("control and target coincide on line {0}")]
    ControlIsTarget(usize),
    #[error("bad gate definition: {0}")]
    BadGateDefinition(String),
}

/// A token with its 1-based column.
struct Tok<'a> {
    column: usize,
    text: &'a str,
}

/// Splits a source line into tokens, dropping `#` comments.
fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let code = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut toks = Vec::new();
    let mut offset = 0;
    for piece in code.split_whitespace() {
        let start = code[offset..].find(piece).unwrap() + offset;
        toks.push(Tok {
            column: start + 1,
            text: piece,
        });
        offset = start + piece.len();
    }
    toks
}

struct Cursor<'a> {
    line_no: usize,
    line_len: usize,
    toks: std::vec::IntoIter<Tok<'a>>,
}

impl<'a> Cursor<'a> {
    fn new(line_no: usize, line: &'a str) -> Self {
        Cursor {
            line_no,
            line_len: line.len(),
            toks: tokenize(line).into_iter(),
        }
    }

    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line_no,
            column,
            kind,
        }
    }

    fn next(&mut self, what: &'static str) -> Result<Tok<'a>, ParseError> {
        self.toks
            .next()
            .ok_or_else(|| self.err(self.line_len + 1, ParseErrorKind::MissingField(what)))
    }

    fn integer(&mut self, what: &'static str) -> Result<usize, ParseError> {
        let tok = self.next(what)?;
        tok.text
            .parse::<usize>()
            .map_err(|_| self.err(tok.column, ParseErrorKind::ExpectedInteger(tok.text.into())))
    }

    fn bit(&mut self, what: &'static str) -> Result<bool, ParseError> {
        let tok = self.next(what)?;
        match tok.text {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(self.err(tok.column, ParseErrorKind::ExpectedBit(other.into()))),
        }
    }

    fn name(&mut self, what: &'static str) -> Result<String, ParseError> {
        let tok = self.next(what)?;
        if !is_identifier(tok.text) {
            return Err(self.err(tok.column, ParseErrorKind::ExpectedName(tok.text.into())));
        }
        Ok(tok.text.to_ascii_uppercase())
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.toks.next() {
            None => Ok(()),
            Some(tok) => Err(self.err(tok.column, ParseErrorKind::TrailingToken(tok.text.into()))),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A parsed netlist: the raw circuit description plus the source line of
/// every record, for diagnostics.
#[derive(Clone, Debug)]
pub struct NetlistDocument {
    builder: CircuitBuilder,
    input_lines: Vec<usize>,
    output_lines: Vec<usize>,
    gate_lines: Vec<usize>,
}

impl NetlistDocument {
    pub fn builder(&self) -> &CircuitBuilder {
        &self.builder
    }

    /// Semantic check of the parsed description.
    pub fn validate(&self) -> ValidationReport {
        self.builder.validate()
    }

    /// Source line (1-based) of the record a diagnostic points at.
    pub fn locate(&self, diagnostic: &Diagnostic) -> Option<usize> {
        match diagnostic {
            Diagnostic::BadArity { gate, .. }
            | Diagnostic::DuplicateLine { gate, .. }
            | Diagnostic::LineOutOfRange { gate, .. } => self.gate_lines.get(*gate).copied(),
            Diagnostic::ClassificationOutOfRange { side, record, .. }
            | Diagnostic::DuplicateClassification { side, record, .. }
            | Diagnostic::DuplicateName { side, record, .. } => match side {
                Side::Input => self.input_lines.get(*record).copied(),
                Side::Output => self.output_lines.get(*record).copied(),
            },
            Diagnostic::Unclassified { .. } => None,
        }
    }

    /// Validates and yields the circuit.
    pub fn into_circuit(self) -> Result<Circuit, ValidationReport> {
        self.builder.build()
    }
}

/// Parses a circuit netlist, resolving gate names against the registry.
/// Syntax and resolution errors carry line/column; structural problems are
/// deferred to [`NetlistDocument::validate`].
pub fn parse(text: &str, registry: &GateRegistry) -> Result<NetlistDocument, ParseError> {
    let mut doc: Option<NetlistDocument> = None;
    for (idx, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(idx + 1, raw);
        let keyword = match cur.toks.next() {
            None => continue,
            Some(tok) => tok,
        };
        let kw = keyword.text.to_ascii_lowercase();
        if doc.is_none() {
            if kw != "width" {
                return Err(cur.err(keyword.column, ParseErrorKind::MissingWidth));
            }
            let width = cur.integer("width value")?;
            if width == 0 || width > MAX_CIRCUIT_WIDTH {
                return Err(cur.err(
                    keyword.column,
                    ParseErrorKind::WidthOutOfRange {
                        got: width,
                        max: MAX_CIRCUIT_WIDTH,
                    },
                ));
            }
            cur.finish()?;
            doc = Some(NetlistDocument {
                builder: CircuitBuilder::new(width),
                input_lines: Vec::new(),
                output_lines: Vec::new(),
                gate_lines: Vec::new(),
            });
            continue;
        }
        let doc = doc.as_mut().unwrap();
        match kw.as_str() {
            "width" => {
                return Err(cur.err(keyword.column, ParseErrorKind::DuplicateWidth));
            }
            "input" => {
                let line = cur.integer("line index")?;
                let name = cur.name("input name")?;
                cur.finish()?;
                doc.builder.push_input(line, InputClass::Primary(name));
                doc.input_lines.push(idx + 1);
            }
            "const" => {
                let line = cur.integer("line index")?;
                let value = cur.bit("constant value")?;
                cur.finish()?;
                doc.builder.push_input(line, InputClass::Constant(value));
                doc.input_lines.push(idx + 1);
            }
            "output" => {
                let line = cur.integer("line index")?;
                let name = cur.name("output name")?;
                cur.finish()?;
                doc.builder.push_output(line, OutputClass::Primary(name));
                doc.output_lines.push(idx + 1);
            }
            "garbage" => {
                let line = cur.integer("line index")?;
                cur.finish()?;
                doc.builder.push_output(line, OutputClass::Garbage);
                doc.output_lines.push(idx + 1);
            }
            "apply" => {
                let tok = cur.next("gate name")?;
                let gate = registry.lookup(tok.text).map_err(|_| {
                    cur.err(tok.column, ParseErrorKind::UnknownGate(tok.text.into()))
                })?;
                let mut lines = Vec::new();
                loop {
                    match cur.toks.next() {
                        None => break,
                        Some(tok) => {
                            let line = tok.text.parse::<usize>().map_err(|_| {
                                cur.err(
                                    tok.column,
                                    ParseErrorKind::ExpectedInteger(tok.text.into()),
                                )
                            })?;
                            lines.push(line);
                        }
                    }
                }
                doc.builder.push_gate(GateApplication::new(gate, lines));
                doc.gate_lines.push(idx + 1);
            }
            _ => {
                return Err(cur.err(
                    keyword.column,
                    ParseErrorKind::UnknownKeyword(keyword.text.into()),
                ));
            }
        }
    }
    doc.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingWidth,
    })
}

/// Emits a circuit in canonical form: width, inputs ascending, constants
/// ascending, applications in order, outputs ascending, garbage ascending.
pub fn emit(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "width {}", circuit.width());
    for (line, class) in circuit.input_class().iter().enumerate() {
        if let InputClass::Primary(name) = class {
            let _ = writeln!(out, "input {line} {}", name.to_ascii_uppercase());
        }
    }
    for (line, class) in circuit.input_class().iter().enumerate() {
        if let InputClass::Constant(value) = class {
            let _ = writeln!(out, "const {line} {}", u8::from(*value));
        }
    }
    for app in circuit.gates() {
        let _ = write!(out, "apply {}", app.gate().name());
        for line in app.lines() {
            let _ = write!(out, " {line}");
        }
        out.push('\n');
    }
    for (line, class) in circuit.output_class().iter().enumerate() {
        if let OutputClass::Primary(name) = class {
            let _ = writeln!(out, "output {line} {}", name.to_ascii_uppercase());
        }
    }
    for (line, class) in circuit.output_class().iter().enumerate() {
        if matches!(class, OutputClass::Garbage) {
            let _ = writeln!(out, "garbage {line}");
        }
    }
    out
}

/// Parses a primitive decomposition (`width` header, then one primitive
/// per record, control before target).
pub fn parse_decomposition(text: &str) -> Result<PrimitiveSequence, ParseError> {
    let mut width: Option<usize> = None;
    let mut steps: Vec<QuantumPrimitive> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(idx + 1, raw);
        let keyword = match cur.toks.next() {
            None => continue,
            Some(tok) => tok,
        };
        let kw = keyword.text.to_ascii_lowercase();
        if width.is_none() {
            if kw != "width" {
                return Err(cur.err(keyword.column, ParseErrorKind::MissingWidth));
            }
            let w = cur.integer("width value")?;
            if w == 0 || w > MAX_SEQUENCE_WIDTH {
                return Err(cur.err(
                    keyword.column,
                    ParseErrorKind::WidthOutOfRange {
                        got: w,
                        max: MAX_SEQUENCE_WIDTH,
                    },
                ));
            }
            cur.finish()?;
            width = Some(w);
            continue;
        }
        let w = width.unwrap();
        let check = |cur: &Cursor, col: usize, line: usize| -> Result<(), ParseError> {
            if line >= w {
                Err(cur.err(col, ParseErrorKind::LineOutOfRange { line, width: w }))
            } else {
                Ok(())
            }
        };
        let step = match kw.as_str() {
            "width" => return Err(cur.err(keyword.column, ParseErrorKind::DuplicateWidth)),
            "x" => {
                let tok = cur.next("target line")?;
                let col = tok.column;
                let target = tok
                    .text
                    .parse::<usize>()
                    .map_err(|_| cur.err(col, ParseErrorKind::ExpectedInteger(tok.text.into())))?;
                check(&cur, col, target)?;
                QuantumPrimitive::x(target)
            }
            "cnot" | "cv" | "cvdag" => {
                let ctl_tok = cur.next("control line")?;
                let ctl_col = ctl_tok.column;
                let control = ctl_tok.text.parse::<usize>().map_err(|_| {
                    cur.err(
                        ctl_col,
                        ParseErrorKind::ExpectedInteger(ctl_tok.text.into()),
                    )
                })?;
                check(&cur, ctl_col, control)?;
                let tgt_tok = cur.next("target line")?;
                let tgt_col = tgt_tok.column;
                let target = tgt_tok.text.parse::<usize>().map_err(|_| {
                    cur.err(
                        tgt_col,
                        ParseErrorKind::ExpectedInteger(tgt_tok.text.into()),
                    )
                })?;
                check(&cur, tgt_col, target)?;
                if control == target {
                    return Err(cur.err(tgt_col, ParseErrorKind::ControlIsTarget(target)));
                }
                match kw.as_str() {
                    "cnot" => QuantumPrimitive::cnot(control, target),
                    "cv" => QuantumPrimitive::cv(control, target),
                    _ => QuantumPrimitive::cvdag(control, target),
                }
            }
            _ => {
                return Err(cur.err(
                    keyword.column,
                    ParseErrorKind::UnknownKeyword(keyword.text.into()),
                ))
            }
        };
        cur.finish()?;
        steps.push(step);
    }
    match width {
        Some(w) => Ok(PrimitiveSequence::new(w, steps).expect("records were range-checked")),
        None => Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::MissingWidth,
        }),
    }
}

/// Emits a primitive sequence in canonical form.
pub fn emit_decomposition(seq: &PrimitiveSequence) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "width {}", seq.width());
    for step in seq.steps() {
        match step.kind {
            PrimitiveKind::X => {
                let _ = writeln!(out, "x {}", step.target);
            }
            kind => {
                let _ = writeln!(
                    out,
                    "{} {} {}",
                    kind.keyword(),
                    step.control.expect("controlled primitive"),
                    step.target
                );
            }
        }
    }
    out
}

/// Parses a gate-table document into gate definitions.
pub fn parse_gate_table(text: &str) -> Result<Vec<GateSpec>, ParseError> {
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(idx + 1, raw);
        let name_tok = match cur.toks.next() {
            None => continue,
            Some(tok) => tok,
        };
        let name_col = name_tok.column;
        if !is_identifier(name_tok.text) {
            return Err(cur.err(name_col, ParseErrorKind::ExpectedName(name_tok.text.into())));
        }
        let name = name_tok.text.to_ascii_uppercase();
        let width = cur.integer("gate width")?;
        if width == 0 || width > crate::gate::MAX_GATE_WIDTH {
            return Err(cur.err(
                name_col,
                ParseErrorKind::BadGateDefinition(GateError::BadWidth(width).to_string()),
            ));
        }
        let mut rows = Vec::with_capacity(1 << width);
        for _ in 0..1usize << width {
            let tok = cur.next("output word")?;
            let col = tok.column;
            let word = u32::from_str_radix(tok.text, 16)
                .map_err(|_| cur.err(col, ParseErrorKind::ExpectedInteger(tok.text.into())))?;
            rows.push(word);
        }
        let qc = cur.integer("quantum cost")? as u32;
        let alpha = cur.integer("alpha")? as u32;
        let beta = cur.integer("beta")? as u32;
        let delta = cur.integer("delta")? as u32;
        let transistors = match cur.toks.next() {
            None => None,
            Some(tok) => {
                let col = tok.column;
                let count = tok
                    .text
                    .parse::<u32>()
                    .map_err(|_| cur.err(col, ParseErrorKind::ExpectedInteger(tok.text.into())))?;
                Some(count)
            }
        };
        cur.finish()?;
        let gate = GateSpec::from_rows(&name, width, rows)
            .map_err(|e| cur.err(name_col, ParseErrorKind::BadGateDefinition(e.to_string())))?
            .with_quantum_cost(qc)
            .with_logic_cost(CostVector::new(alpha, beta, delta))
            .with_transistor_count(transistors);
        gates.push(gate);
    }
    Ok(gates)
}

/// Emits every gate of a registry as a gate-table document, in name order.
pub fn emit_gate_table(registry: &GateRegistry) -> String {
    let mut out = String::new();
    for gate in registry.iter() {
        let _ = write!(out, "{} {}", gate.name(), gate.width());
        for &word in gate.table().rows() {
            let _ = write!(out, " {word:x}");
        }
        let cost = gate.logic_cost();
        let _ = write!(
            out,
            " {} {} {} {}",
            gate.quantum_cost(),
            cost.alpha,
            cost.beta,
            cost.delta
        );
        if let Some(count) = gate.transistor_count() {
            let _ = write!(out, " {count}");
        }
        out.push('\n');
    }
    out
}
