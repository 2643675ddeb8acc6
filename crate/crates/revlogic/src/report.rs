//! Comparison reporting for compressor designs.

use crate::circuit::Circuit;
use crate::compressor::{build_compressor, CompressorError};
use std::fmt::Write as _;

/// Where a comparison row's numbers come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSource {
    /// Metrics computed from a circuit by this toolkit.
    Measured,
    /// Published figures shipped as static data.
    Literature,
}

impl RowSource {
    pub fn label(self) -> &'static str {
        match self {
            RowSource::Measured => "measured",
            RowSource::Literature => "literature",
        }
    }
}

/// One design in a comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub design: String,
    pub gate_count: u32,
    pub constant_inputs: u32,
    pub garbage_outputs: u32,
    pub quantum_cost: u32,
    pub source: RowSource,
}

impl ComparisonRow {
    /// Computes a measured row from a circuit's metrics.
    pub fn measured(design: &str, circuit: &Circuit) -> Self {
        let m = circuit.metrics();
        ComparisonRow {
            design: design.to_string(),
            gate_count: m.gate_count,
            constant_inputs: m.constant_inputs,
            garbage_outputs: m.garbage_outputs,
            quantum_cost: m.quantum_cost,
            source: RowSource::Measured,
        }
    }
}

/// Published 4:2 compressor figures, kept verbatim including the repeated
/// design label, distinguished by reference tag.
pub fn literature_rows_4_2() -> Vec<ComparisonRow> {
    let rows = [
        ("Existing design 1 [3]", 4, 3, 5, 28),
        ("Existing design 2 [3]", 7, 3, 5, 20),
        ("Existing design 4 [3]", 2, 2, 3, 26),
        ("Existing design 4 [15]", 2, 3, 5, 18),
    ];
    rows.iter()
        .map(|&(design, gates, ci, go, qc)| ComparisonRow {
            design: design.to_string(),
            gate_count: gates,
            constant_inputs: ci,
            garbage_outputs: go,
            quantum_cost: qc,
            source: RowSource::Literature,
        })
        .collect()
}

/// The comparison table for an n:2 compressor: the generated design,
/// measured, plus literature rows where available (n = 4).
pub fn comparison_table(n: u32) -> Result<Vec<ComparisonRow>, CompressorError> {
    let circuit = build_compressor(n)?;
    comparison_table_for(n, &circuit)
}

/// Same, but measuring a caller-supplied circuit instead of the generated
/// one.
pub fn comparison_table_for(
    n: u32,
    proposed: &Circuit,
) -> Result<Vec<ComparisonRow>, CompressorError> {
    let mut rows = vec![ComparisonRow::measured("Proposed", proposed)];
    if n == 4 {
        rows.extend(literature_rows_4_2());
    }
    Ok(rows)
}

/// Renders rows as CSV with a header; names need no quoting.
pub fn render_csv(rows: &[ComparisonRow]) -> String {
    let mut out =
        String::from("design,gate_count,constant_inputs,garbage_outputs,quantum_cost,source\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.design,
            row.gate_count,
            row.constant_inputs,
            row.garbage_outputs,
            row.quantum_cost,
            row.source.label()
        );
    }
    out
}

/// Renders rows as a Markdown table.
pub fn render_markdown(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(
        "| Design | Gate count | Constant inputs | Garbage outputs | Quantum cost | Source |\n\
         |---|---|---|---|---|---|\n",
    );
    for row in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            row.design,
            row.gate_count,
            row.constant_inputs,
            row.garbage_outputs,
            row.quantum_cost,
            row.source.label()
        );
    }
    out
}
