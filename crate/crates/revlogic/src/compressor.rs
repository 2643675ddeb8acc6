//! Synthesis and exhaustive verification of n:2 carry-save compressors.
//!
//! An n:2 compressor takes n operand bits plus max(0, n-3) carry-in bits
//! and produces one sum bit and one carry bit per stage such that the
//! weighted sum is conserved: the number of set inputs equals
//! SUM + 2 * (number of set carry outputs).
//!
//! Construction chains full-adder stages built from the INV0 gate with its
//! fourth port tied to constant 0, so each stage's P output is the running
//! sum and its Q output is a true carry. Stage 1 consumes I1..I3; each
//! later stage consumes the running sum plus two bits from the pool of
//! remaining operands followed by carry-ins.

use crate::circuit::{Circuit, CircuitBuilder, Metrics};
use crate::gate::builtin_gate;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Smallest compressor: a single full-adder stage.
pub const MIN_COMPRESSOR_N: u32 = 3;

/// Largest compressor; keeps exhaustive verification at or under 2^25
/// assignments.
pub const MAX_COMPRESSOR_N: u32 = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompressorError {
    #[error("compressor needs at least {MIN_COMPRESSOR_N} operand inputs, got {0}")]
    NTooSmall(u32),
    #[error("compressor size {0} above the exhaustive cap of {MAX_COMPRESSOR_N}")]
    NTooLarge(u32),
    #[error("circuit does not have the shape of a {n}:2 compressor: {reason}")]
    ShapeMismatch { n: u32, reason: String },
    #[error("invalid range {lo}..={hi}; need {min} <= lo <= hi <= {max}")]
    RangeError {
        lo: u32,
        hi: u32,
        min: u32,
        max: u32,
    },
}

/// Shape parameters of an n:2 compressor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompressorSpec {
    /// Number of operand inputs.
    pub n: u32,
    /// Carry-in count: max(0, n-3).
    pub carry_ins: u32,
    /// Full-adder stages (and gates): n-2 for n >= 4, 1 for n = 3.
    pub stages: u32,
}

impl CompressorSpec {
    pub fn new(n: u32) -> Result<Self, CompressorError> {
        if n < MIN_COMPRESSOR_N {
            return Err(CompressorError::NTooSmall(n));
        }
        if n > MAX_COMPRESSOR_N {
            return Err(CompressorError::NTooLarge(n));
        }
        Ok(CompressorSpec {
            n,
            carry_ins: n.saturating_sub(3),
            stages: if n == 3 { 1 } else { n - 2 },
        })
    }

    /// Total primary input bits: operands plus carry-ins.
    pub fn input_bits(&self) -> u32 {
        self.n + self.carry_ins
    }

    /// Meaningful outputs: one sum plus one carry per stage.
    pub fn output_bits(&self) -> u32 {
        1 + self.stages
    }

    /// Circuit lines: inputs plus one ancilla per stage.
    pub fn width(&self) -> u32 {
        self.input_bits() + self.stages
    }
}

/// Closed-form metric predictions for n >= 4: (n-2) gates, (2n-4) garbage
/// outputs, (n-2) ancilla inputs, 10(n-2) quantum cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictedMetrics {
    pub gate_count: u32,
    pub garbage_outputs: u32,
    pub ancilla_inputs: u32,
    pub quantum_cost: u32,
}

/// Evaluates the prediction formulas for n >= 4.
pub fn predicted_metrics(n: u32) -> Result<PredictedMetrics, CompressorError> {
    if n < 4 {
        return Err(CompressorError::NTooSmall(n));
    }
    Ok(PredictedMetrics {
        gate_count: n - 2,
        garbage_outputs: 2 * n - 4,
        ancilla_inputs: n - 2,
        quantum_cost: 10 * (n - 2),
    })
}

/// Builds the n:2 compressor circuit from INV0 stages.
///
/// Canonical line layout: lines 0..2 hold I1..I3 and line 3 the first
/// ancilla; stage k >= 2 occupies three fresh lines (two pool bits and an
/// ancilla). Inputs are named I1..In then CIN1..CINk; outputs SUM and
/// C1..C(stages).
pub fn build_compressor(n: u32) -> Result<Circuit, CompressorError> {
    let spec = CompressorSpec::new(n)?;
    let inv0 = Arc::new(builtin_gate("INV0").expect("INV0 is builtin"));
    let width = spec.width() as usize;

    // Pool of inputs consumed by stages 2..: operands first, then carry-ins.
    let pool_names: Vec<String> = (4..=n)
        .map(|i| format!("I{i}"))
        .chain((1..=spec.carry_ins).map(|i| format!("CIN{i}")))
        .collect();

    let mut b = CircuitBuilder::new(width)
        .primary_input(0, "I1")
        .primary_input(1, "I2")
        .primary_input(2, "I3")
        .constant(3, false)
        .apply(inv0.clone(), &[0, 1, 2, 3])
        .garbage(2)
        .garbage(3);

    // Stage 1's P output (line 0) carries the running sum through the
    // whole cascade; its Q output (line 1) is carry C1.
    b = b.primary_output(1, "C1");

    for stage in 2..=spec.stages {
        let base = (4 + 3 * (stage - 2)) as usize;
        let bit_a = &pool_names[2 * (stage - 2) as usize];
        let bit_b = &pool_names[2 * (stage - 2) as usize + 1];
        b = b
            .primary_input(base, bit_a)
            .primary_input(base + 1, bit_b)
            .constant(base + 2, false)
            .apply(inv0.clone(), &[0, base, base + 1, base + 2])
            .primary_output(base, &format!("C{stage}"))
            .garbage(base + 1)
            .garbage(base + 2);
    }

    b = b.primary_output(0, "SUM");
    Ok(b.build().expect("generated compressor is well formed"))
}

/// First failing assignment of a compressor check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Primary input values in ascending line order.
    pub inputs: Vec<(String, bool)>,
    /// Set input bits.
    pub input_weight: u32,
    /// SUM + 2 * (set carry outputs) for that assignment.
    pub measured_weight: u32,
}

/// Result of the exhaustive conservation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompressorCheck {
    Pass { assignments: u64 },
    Fail(Box<Counterexample>),
}

impl CompressorCheck {
    pub fn passed(&self) -> bool {
        matches!(self, CompressorCheck::Pass { .. })
    }
}

/// Brute-forces the conservation identity over every primary-input
/// assignment: sum of input bits = SUM + 2 * (sum of carry bits).
///
/// The circuit must expose `n + max(0, n-3)` primary inputs and a primary
/// output named SUM; every other primary output counts as a carry.
pub fn verify_compressor(circuit: &Circuit, n: u32) -> Result<CompressorCheck, CompressorError> {
    let spec = CompressorSpec::new(n)?;
    let in_lines = circuit.primary_input_lines();
    if in_lines.len() != spec.input_bits() as usize {
        return Err(CompressorError::ShapeMismatch {
            n,
            reason: format!(
                "expected {} primary inputs, found {}",
                spec.input_bits(),
                in_lines.len()
            ),
        });
    }
    let output_names = circuit.output_names();
    let sum_position = output_names
        .iter()
        .position(|name| name.eq_ignore_ascii_case("SUM"))
        .ok_or_else(|| CompressorError::ShapeMismatch {
            n,
            reason: "no primary output named SUM".to_string(),
        })?;

    let bits = in_lines.len();
    let total = 1u64 << bits;
    let outputs_len = output_names.len();
    let out_lines = circuit.primary_output_lines();
    let mut base = 0u64;
    for (line, class) in circuit.input_class().iter().enumerate() {
        if let crate::circuit::InputClass::Constant(true) = class {
            base |= 1 << line;
        }
    }
    let run = |r: u64| run_assignment(circuit, base, &in_lines, &out_lines, r);
    let violates = |&r: &u64| !row_conserves(r, run(r), outputs_len, sum_position);
    // Partitioned search stays deterministic: find_first picks the lowest
    // assignment regardless of scheduling.
    let failure = if bits <= 12 {
        (0..total).find(violates)
    } else {
        (0..total).into_par_iter().find_first(violates)
    };

    match failure {
        None => Ok(CompressorCheck::Pass { assignments: total }),
        Some(r) => {
            let row = run(r);
            let inputs = circuit
                .input_names()
                .iter()
                .enumerate()
                .map(|(k, name)| (name.to_string(), (r >> (bits - 1 - k)) & 1 == 1))
                .collect();
            let sum_bit = (row >> (outputs_len - 1 - sum_position)) & 1;
            let carries = (row.count_ones() as u64 - sum_bit) as u32;
            Ok(CompressorCheck::Fail(Box::new(Counterexample {
                inputs,
                input_weight: r.count_ones(),
                measured_weight: sum_bit as u32 + 2 * carries,
            })))
        }
    }
}

/// Runs one assignment and returns the packed primary-output row.
fn run_assignment(
    circuit: &Circuit,
    base: u64,
    in_lines: &[usize],
    out_lines: &[usize],
    r: u64,
) -> u64 {
    let mut state = base;
    let bits = in_lines.len();
    for (k, &line) in in_lines.iter().enumerate() {
        state |= ((r >> (bits - 1 - k)) & 1) << line;
    }
    let final_state = circuit.run_state(state);
    out_lines
        .iter()
        .fold(0u64, |acc, &line| (acc << 1) | ((final_state >> line) & 1))
}

fn row_conserves(r: u64, row: u64, outputs_len: usize, sum_position: usize) -> bool {
    let input_weight = r.count_ones();
    let sum_bit = (row >> (outputs_len - 1 - sum_position)) & 1;
    let carry_weight = row.count_ones() as u64 - sum_bit;
    u64::from(input_weight) == sum_bit + 2 * carry_weight
}

/// One row of a lemma comparison: formula predictions against measured
/// circuit metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaRow {
    pub n: u32,
    pub predicted: PredictedMetrics,
    pub measured: Metrics,
    pub matches: bool,
}

/// Prediction-versus-measurement table over a range of compressor sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub rows: Vec<LemmaRow>,
}

impl LemmaReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>3} {:>14} {:>14} {:>14} {:>14} {:>6}",
            "n", "gates p/m", "garbage p/m", "ancilla p/m", "qc p/m", "match"
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>3} {:>14} {:>14} {:>14} {:>14} {:>6}",
                row.n,
                format!("{}/{}", row.predicted.gate_count, row.measured.gate_count),
                format!(
                    "{}/{}",
                    row.predicted.garbage_outputs, row.measured.garbage_outputs
                ),
                format!(
                    "{}/{}",
                    row.predicted.ancilla_inputs, row.measured.constant_inputs
                ),
                format!(
                    "{}/{}",
                    row.predicted.quantum_cost, row.measured.quantum_cost
                ),
                if row.matches { "yes" } else { "NO" }
            )?;
        }
        write!(
            f,
            "note: the quantum-cost prediction is 10*(n-2), ten per stage \
             over (n-2) stages; the alternative closed form 10*(n-3) \
             undercounts every measured cascade by one gate."
        )
    }
}

/// Compares predicted and measured metrics for each n in `n_lo..=n_hi`.
pub fn lemma_report(n_lo: u32, n_hi: u32) -> Result<LemmaReport, CompressorError> {
    const LO: u32 = 4;
    const HI: u32 = 12;
    if n_lo < LO || n_hi > HI || n_lo > n_hi {
        return Err(CompressorError::RangeError {
            lo: n_lo,
            hi: n_hi,
            min: LO,
            max: HI,
        });
    }
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        let predicted = predicted_metrics(n)?;
        let measured = build_compressor(n)?.metrics();
        let matches = predicted.gate_count == measured.gate_count
            && predicted.garbage_outputs == measured.garbage_outputs
            && predicted.ancilla_inputs == measured.constant_inputs
            && predicted.quantum_cost == measured.quantum_cost;
        rows.push(LemmaRow {
            n,
            predicted,
            measured,
            matches,
        });
    }
    Ok(LemmaReport { rows })
}
