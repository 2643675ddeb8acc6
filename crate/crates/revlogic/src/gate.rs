//! Reversible gate definitions.
//!
//! Every gate is a named truth-table permutation carrying declared cost
//! metadata: a quantum cost, a logic-operation cost vector, and an optional
//! transistor count. The library ships the standard gates (NOT, CNOT, F2G,
//! TG, PG, FRG, BJN, URG) plus the 4x4 INV0 gate; arbitrary gates can be
//! defined from a truth table.

use crate::cost::CostVector;
use crate::table::{pack_word, word_bit, TableError, TruthTable};
use thiserror::Error;

/// Widest gate the library accepts (tables stay desk-scale).
pub const MAX_GATE_WIDTH: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GateError {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate width {0} out of range 1..={MAX_GATE_WIDTH}")]
    BadWidth(usize),
    #[error("expected {expected} table rows, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("output word {word:#x} appears more than once")]
    NonBijective { word: u32 },
    #[error("output word {word:#x} does not fit in {width} bits")]
    RowOutOfRange { width: usize, word: u32 },
    #[error("port {port} out of range for a {width}-port gate")]
    UnknownPort { port: usize, width: usize },
    #[error("port {0} pinned more than once")]
    DuplicatePin(usize),
    #[error("`{0}` is not a valid gate name")]
    BadName(String),
}

impl From<TableError> for GateError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::BadWidth(w) => GateError::BadWidth(w),
            TableError::BadArity { expected, got, .. } => GateError::BadArity { expected, got },
            TableError::NonBijective { word } => GateError::NonBijective { word },
            TableError::RowOutOfRange { width, word } => GateError::RowOutOfRange { width, word },
        }
    }
}

/// A named reversible gate: truth table plus declared cost metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateSpec {
    name: String,
    table: TruthTable,
    quantum_cost: u32,
    logic_cost: CostVector,
    transistor_count: Option<u32>,
}

impl GateSpec {
    /// Builds a gate from an explicit output-word table. Costs default to
    /// zero; use the `with_*` methods to declare them.
    pub fn from_rows(name: &str, width: usize, rows: Vec<u32>) -> Result<Self, GateError> {
        if width == 0 || width > MAX_GATE_WIDTH {
            return Err(GateError::BadWidth(width));
        }
        let expected = 1usize << width;
        if rows.len() != expected {
            return Err(GateError::BadArity {
                expected,
                got: rows.len(),
            });
        }
        let table = TruthTable::new(width, rows)?;
        Self::from_table(name, table)
    }

    /// Wraps an existing truth table as a gate with zero declared costs.
    pub fn from_table(name: &str, table: TruthTable) -> Result<Self, GateError> {
        if table.width() > MAX_GATE_WIDTH {
            return Err(GateError::BadWidth(table.width()));
        }
        let name = canonical_name(name)?;
        Ok(GateSpec {
            name,
            table,
            quantum_cost: 0,
            logic_cost: CostVector::ZERO,
            transistor_count: None,
        })
    }

    pub fn with_quantum_cost(mut self, qc: u32) -> Self {
        self.quantum_cost = qc;
        self
    }

    pub fn with_logic_cost(mut self, cost: CostVector) -> Self {
        self.logic_cost = cost;
        self
    }

    pub fn with_transistor_count(mut self, count: Option<u32>) -> Self {
        self.transistor_count = count;
        self
    }

    /// Canonical (uppercase) gate name.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.table.width()
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn quantum_cost(&self) -> u32 {
        self.quantum_cost
    }

    pub fn logic_cost(&self) -> CostVector {
        self.logic_cost
    }

    pub fn transistor_count(&self) -> Option<u32> {
        self.transistor_count
    }

    /// Output word for an input word.
    pub fn apply(&self, word: u32) -> u32 {
        self.table.apply(word)
    }

    /// The inverse gate: same costs, inverted permutation.
    pub fn inverse(&self) -> GateSpec {
        let name = if let Some(base) = self.name.strip_suffix("_INV") {
            base.to_string()
        } else {
            format!("{}_INV", self.name)
        };
        GateSpec {
            name,
            table: self.table.inverse(),
            quantum_cost: self.quantum_cost,
            logic_cost: self.logic_cost,
            transistor_count: self.transistor_count,
        }
    }

    /// Restriction of the gate with some ports pinned to fixed bits.
    pub fn mode_table(&self, pins: &[(usize, bool)]) -> Result<ModeTable, GateError> {
        ModeTable::new(self, pins)
    }
}

/// Gate names are identifiers, compared case-insensitively and stored
/// uppercase.
fn canonical_name(name: &str) -> Result<String, GateError> {
    let ok = !name.is_empty()
        && name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(GateError::BadName(name.to_string()));
    }
    Ok(name.to_ascii_uppercase())
}

/// Truth table of the INV0 gate, ports A,B,C,D in, P,Q,R,S out.
///
/// ```text
///   A B C D | P Q R S          A B C D | P Q R S
///   0 0 0 0 | 0 0 0 1          1 0 0 0 | 1 0 0 1
///   0 0 0 1 | 0 1 0 0          1 0 0 1 | 1 1 0 0
///   0 0 1 0 | 1 0 1 0          1 0 1 0 | 0 1 1 1
///   0 0 1 1 | 1 1 1 1          1 0 1 1 | 0 0 1 0
///   0 1 0 0 | 1 0 0 0          1 1 0 0 | 0 1 0 1
///   0 1 0 1 | 1 1 0 1          1 1 0 1 | 0 0 0 0
///   0 1 1 0 | 0 1 1 0          1 1 1 0 | 1 1 1 0
///   0 1 1 1 | 0 0 1 1          1 1 1 1 | 1 0 1 1
/// ```
pub const INV0_TABLE: [u32; 16] = [
    0x1, 0x4, 0xA, 0xF, 0x8, 0xD, 0x6, 0x3, 0x9, 0xC, 0x7, 0x2, 0x5, 0x0, 0xE, 0xB,
];

/// Closed-form output expressions of INV0.
///
/// Returns `(P, Q, R, S)` with
/// `P = A^B^C`, `Q = ((A^B)C | AB) ^ D`, `R = C`,
/// `S = (!(A^B)&C | !A&B) ^ D ^ 1`. Agrees with [`INV0_TABLE`] on every
/// input; with D=0, `(P, Q)` is a full adder's (sum, carry) and with D=1,
/// `S` is a full subtractor's borrow for A-B-C.
pub fn derived_inv0_expressions(a: bool, b: bool, c: bool, d: bool) -> (bool, bool, bool, bool) {
    let p = a ^ b ^ c;
    let q = (((a ^ b) & c) | (a & b)) ^ d;
    let r = c;
    let s = ((!(a ^ b) & c) | (!a & b)) ^ d ^ true;
    (p, q, r, s)
}

/// The gates the library ships with.
pub const BUILTIN_NAMES: [&str; 9] = [
    "NOT", "CNOT", "F2G", "TG", "PG", "FRG", "BJN", "URG", "INV0",
];

/// Looks up a library gate by name (case-insensitive; FG is an alias for
/// CNOT).
pub fn builtin_gate(name: &str) -> Result<GateSpec, GateError> {
    let upper = name.to_ascii_uppercase();
    let gate = match upper.as_str() {
        "NOT" => gate_1(upper, |a| !a, 1),
        "CNOT" | "FG" => gate_2("CNOT", |a, b| (a, a ^ b), 1),
        "F2G" => gate_3(upper, |a, b, c| (a, a ^ b, a ^ c), 2),
        "TG" => gate_3(upper, |a, b, c| (a, b, (a & b) ^ c), 5),
        "PG" => gate_3(upper, |a, b, c| (a, a ^ b, (a & b) ^ c), 4),
        "FRG" => gate_3(
            upper,
            |a, b, c| (a, (!a & b) | (a & c), (a & b) | (!a & c)),
            5,
        ),
        "BJN" => gate_3(upper, |a, b, c| (a, b, (a | b) ^ c), 5),
        "URG" => gate_3(upper, |a, b, c| ((a | b) ^ c, b, (a & b) ^ c), 6),
        "INV0" => GateSpec::from_rows("INV0", 4, INV0_TABLE.to_vec())
            .expect("INV0 table is a permutation")
            .with_quantum_cost(10)
            .with_logic_cost(CostVector::new(7, 4, 3)),
        _ => return Err(GateError::UnknownGate(name.to_string())),
    };
    Ok(gate)
}

fn gate_1(name: String, f: impl Fn(bool) -> bool, qc: u32) -> GateSpec {
    let rows = (0..2u32).map(|w| u32::from(f(w == 1))).collect();
    GateSpec::from_rows(&name, 1, rows)
        .expect("1-port builtin is a permutation")
        .with_quantum_cost(qc)
}

fn gate_2(name: &str, f: impl Fn(bool, bool) -> (bool, bool), qc: u32) -> GateSpec {
    let rows = (0..4u32)
        .map(|w| {
            let (p, q) = f(word_bit(w, 2, 0), word_bit(w, 2, 1));
            pack_word(&[p, q])
        })
        .collect();
    GateSpec::from_rows(name, 2, rows)
        .expect("2-port builtin is a permutation")
        .with_quantum_cost(qc)
}

fn gate_3(name: String, f: impl Fn(bool, bool, bool) -> (bool, bool, bool), qc: u32) -> GateSpec {
    let rows = (0..8u32)
        .map(|w| {
            let (p, q, r) = f(word_bit(w, 3, 0), word_bit(w, 3, 1), word_bit(w, 3, 2));
            pack_word(&[p, q, r])
        })
        .collect();
    GateSpec::from_rows(&name, 3, rows)
        .expect("3-port builtin is a permutation")
        .with_quantum_cost(qc)
}

/// A gate restricted by pinning some ports to constant bits.
///
/// Rows are indexed by the assignment of the free ports in ascending port
/// order (first free port is the most significant bit of the row index);
/// each row holds the full output word over all ports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeTable {
    width: usize,
    pins: Vec<(usize, bool)>,
    free_ports: Vec<usize>,
    rows: Vec<u32>,
}

impl ModeTable {
    fn new(gate: &GateSpec, pins: &[(usize, bool)]) -> Result<Self, GateError> {
        let width = gate.width();
        let mut pinned = vec![None; width];
        for &(port, bit) in pins {
            if port >= width {
                return Err(GateError::UnknownPort { port, width });
            }
            if pinned[port].is_some() {
                return Err(GateError::DuplicatePin(port));
            }
            pinned[port] = Some(bit);
        }
        let free_ports: Vec<usize> = (0..width).filter(|&p| pinned[p].is_none()).collect();
        let mut rows = Vec::with_capacity(1 << free_ports.len());
        for assignment in 0..1u32 << free_ports.len() {
            let mut word = 0u32;
            for (k, &port) in free_ports.iter().enumerate() {
                let bit = word_bit(assignment, free_ports.len(), k);
                word = crate::table::set_word_bit(word, width, port, bit);
            }
            for (port, pin) in pinned.iter().enumerate() {
                if let Some(bit) = pin {
                    word = crate::table::set_word_bit(word, width, port, *bit);
                }
            }
            rows.push(gate.apply(word));
        }
        let mut pins = pins.to_vec();
        pins.sort_unstable_by_key(|&(p, _)| p);
        Ok(ModeTable {
            width,
            pins,
            free_ports,
            rows,
        })
    }

    /// Ports left free, ascending.
    pub fn free_ports(&self) -> &[usize] {
        &self.free_ports
    }

    /// Pinned ports with their bits, ascending by port.
    pub fn pins(&self) -> &[(usize, bool)] {
        &self.pins
    }

    /// Full output words, indexed by free-port assignment.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Output of one port for a given free-port assignment.
    pub fn output(&self, assignment: u32, port: usize) -> bool {
        word_bit(self.rows[assignment as usize], self.width, port)
    }
}
