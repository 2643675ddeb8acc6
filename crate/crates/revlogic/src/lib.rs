//! Reversible-logic synthesis and verification toolkit.
//!
//! The crate models reversible gates as truth-table permutations with
//! declared cost metadata, composes them into circuits over classified
//! lines, synthesizes n:2 carry-save compressors from the INV0 gate, and
//! verifies everything with exhaustive desk-scale oracles: bijectivity,
//! the carry-save conservation identity, metric formulas, and quantum
//! primitive decompositions checked on a small state-vector engine.
//!
//! Entry points:
//! - [`gate::builtin_gate`] and [`registry::GateRegistry`] for the gate
//!   library;
//! - [`circuit::CircuitBuilder`] for the circuit IR, with simulation,
//!   permutation extraction and metrics on [`circuit::Circuit`];
//! - [`compressor::build_compressor`] / [`compressor::verify_compressor`]
//!   for synthesis;
//! - [`quantum::verify_decomposition`] for quantum-cost checks;
//! - [`netlist`] for the text formats and [`report`] for comparison
//!   tables.

pub mod circuit;
pub mod compressor;
pub mod cost;
pub mod gate;
pub mod netlist;
pub mod quantum;
pub mod registry;
pub mod report;
pub mod table;

pub use circuit::{Circuit, CircuitBuilder, Metrics, ValidationReport};
pub use cost::CostVector;
pub use gate::{builtin_gate, GateSpec};
pub use registry::GateRegistry;
pub use table::TruthTable;
