//! Property tests over randomly generated gates, circuits and primitive
//! sequences.

use proptest::prelude::*;
use proptest::sample;
use revlogic::circuit::{Circuit, CircuitBuilder};
use revlogic::gate::{builtin_gate, GateSpec, BUILTIN_NAMES};
use revlogic::netlist;
use revlogic::quantum::{apply, PrimitiveSequence, QuantumPrimitive};
use revlogic::registry::GateRegistry;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A random permutation table of the given width.
fn permutation(width: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..1u32 << width).collect::<Vec<u32>>()).prop_shuffle()
}

/// A random application of a builtin gate inside a circuit of `width`
/// lines: the gate name plus a shuffled choice of distinct lines.
fn application(width: usize) -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    sample::select(BUILTIN_NAMES.to_vec()).prop_flat_map(move |name| {
        let gate_width = builtin_gate(name).unwrap().width();
        let lines: Vec<usize> = (0..width).collect();
        (
            Just(name),
            sample::subsequence(lines, gate_width).prop_shuffle(),
        )
    })
}

/// A random circuit: width 4..=6, at most 6 builtin applications, every
/// line a named primary input and output.
fn circuit() -> impl Strategy<Value = Circuit> {
    (4usize..=6)
        .prop_flat_map(|width| {
            (
                Just(width),
                proptest::collection::vec(application(width), 0..=6),
            )
        })
        .prop_map(|(width, apps)| {
            let mut b = CircuitBuilder::new(width);
            for line in 0..width {
                b = b
                    .primary_input(line, &format!("L{line}"))
                    .primary_output(line, &format!("O{line}"));
            }
            for (name, lines) in apps {
                b = b.apply(Arc::new(builtin_gate(name).unwrap()), &lines);
            }
            b.build().expect("generated circuit is well formed")
        })
}

/// A random primitive sequence over `width` lines.
fn primitive_sequence(width: usize) -> impl Strategy<Value = PrimitiveSequence> {
    let step = (0usize..4, 0..width, 0..width).prop_filter_map(
        "control must differ from target",
        move |(kind, a, b)| {
            if kind == 0 {
                return Some(QuantumPrimitive::x(b));
            }
            if a == b {
                return None;
            }
            Some(match kind {
                1 => QuantumPrimitive::cnot(a, b),
                2 => QuantumPrimitive::cv(a, b),
                _ => QuantumPrimitive::cvdag(a, b),
            })
        },
    );
    proptest::collection::vec(step, 0..=8)
        .prop_map(move |steps| PrimitiveSequence::new(width, steps).unwrap())
}

proptest! {
    #[test]
    fn random_gate_inverse_composes_to_identity(
        width in 1usize..=5,
    ) {
        // Nested so the table size tracks the width.
        proptest!(|(rows in permutation(width))| {
            let gate = GateSpec::from_rows("RANDOM", width, rows).unwrap();
            let inverse = gate.inverse();
            for w in 0..1u32 << width {
                prop_assert_eq!(inverse.apply(gate.apply(w)), w);
                prop_assert_eq!(gate.apply(inverse.apply(w)), w);
            }
        });
    }

    #[test]
    fn circuit_cascade_is_a_permutation(c in circuit()) {
        // TruthTable construction re-checks bijectivity exhaustively.
        let table = c.full_permutation().unwrap();
        prop_assert_eq!(table.len(), 1 << c.width());
    }

    #[test]
    fn inverse_cascade_is_identity(c in circuit()) {
        prop_assert!(c.append_inverse().full_permutation().unwrap().is_identity());
    }

    #[test]
    fn simulate_matches_restricted_function(c in circuit(), seed in any::<u64>()) {
        let f = c.restricted_function().unwrap();
        prop_assert!(f.injective);
        let n = c.width();
        let row = (seed % (1u64 << n)) as usize;
        let assignment: BTreeMap<String, bool> = (0..n)
            .map(|line| (format!("L{line}"), (row >> (n - 1 - line)) & 1 == 1))
            .collect();
        let sim = c.simulate(&assignment).unwrap();
        for line in 0..n {
            let name = format!("O{line}");
            prop_assert_eq!(sim.output(&name), f.output(row, &name));
        }
    }

    #[test]
    fn netlist_round_trip_preserves_everything(c in circuit()) {
        let registry = GateRegistry::with_builtins();
        let first = netlist::emit(&c);
        let doc = netlist::parse(&first, &registry).unwrap();
        prop_assert!(doc.validate().is_clean());
        let reparsed = doc.into_circuit().unwrap();
        prop_assert_eq!(netlist::emit(&reparsed), first);
        prop_assert_eq!(reparsed.metrics(), c.metrics());
        prop_assert_eq!(
            reparsed.full_permutation().unwrap(),
            c.full_permutation().unwrap()
        );
    }

    #[test]
    fn metrics_are_additive_under_concatenation(a in circuit(), b in circuit()) {
        prop_assume!(a.width() == b.width());
        let joined = a.then(&b);
        let (ma, mb, mj) = (a.metrics(), b.metrics(), joined.metrics());
        prop_assert_eq!(mj.gate_count, ma.gate_count + mb.gate_count);
        prop_assert_eq!(mj.quantum_cost, ma.quantum_cost + mb.quantum_cost);
        prop_assert_eq!(mj.logic_cost, ma.logic_cost + mb.logic_cost);
    }

    #[test]
    fn primitive_sequences_preserve_norm_and_invert(
        width in 2usize..=4,
        seed in any::<u32>(),
    ) {
        proptest!(|(seq in primitive_sequence(width))| {
            let input = seed % (1u32 << width);
            let state = apply(&seq, input).unwrap();
            prop_assert!((state.norm() - 1.0).abs() < 1e-12);

            let mut steps = seq.steps().to_vec();
            steps.extend(seq.inverse().steps().iter().copied());
            let round_trip = PrimitiveSequence::new(width, steps).unwrap();
            let state = apply(&round_trip, input).unwrap();
            prop_assert!((state.amplitude(input).norm() - 1.0).abs() < 1e-12);
        });
    }

    #[test]
    fn decomposition_text_round_trips(width in 2usize..=4) {
        proptest!(|(seq in primitive_sequence(width))| {
            let text = netlist::emit_decomposition(&seq);
            let reparsed = netlist::parse_decomposition(&text).unwrap();
            prop_assert_eq!(reparsed, seq);
        });
    }
}
