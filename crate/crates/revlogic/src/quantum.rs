//! State-vector verification of quantum primitive decompositions.
//!
//! The primitive set is NOT (X), CNOT, controlled-V and controlled-V†,
//! where V is the square root of NOT. A claimed decomposition of a
//! reversible gate is checked by driving every computational basis state
//! through the sequence and comparing against the gate's truth table; the
//! primitive count is the quantum cost.

use crate::gate::GateSpec;
use thiserror::Error;

pub use num_complex::Complex64;

/// Exhaustive simulation bound for decomposition checks.
pub const MAX_SEQUENCE_WIDTH: usize = 12;

/// Default amplitude tolerance; V's entries are exact in f64.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum QuantumError {
    #[error("sequence width {0} above the exhaustive cap of {MAX_SEQUENCE_WIDTH}")]
    WidthTooLarge(usize),
    #[error("line {line} out of range for width {width}")]
    BadIndex { line: usize, width: usize },
    #[error("control and target coincide on line {0}")]
    ControlIsTarget(usize),
    #[error("sequence width {seq} does not match gate width {gate}")]
    WidthMismatch { seq: usize, gate: usize },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// The four primitive kinds of the cost model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimitiveKind {
    X,
    Cnot,
    CV,
    CVDag,
}

impl PrimitiveKind {
    pub fn needs_control(self) -> bool {
        !matches!(self, PrimitiveKind::X)
    }

    /// Keyword used in the decomposition text format.
    pub fn keyword(self) -> &'static str {
        match self {
            PrimitiveKind::X => "x",
            PrimitiveKind::Cnot => "cnot",
            PrimitiveKind::CV => "cv",
            PrimitiveKind::CVDag => "cvdag",
        }
    }
}

/// One primitive application: a target line and, except for X, a control
/// line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumPrimitive {
    pub kind: PrimitiveKind,
    pub control: Option<usize>,
    pub target: usize,
}

impl QuantumPrimitive {
    pub fn x(target: usize) -> Self {
        QuantumPrimitive {
            kind: PrimitiveKind::X,
            control: None,
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        QuantumPrimitive {
            kind: PrimitiveKind::Cnot,
            control: Some(control),
            target,
        }
    }

    pub fn cv(control: usize, target: usize) -> Self {
        QuantumPrimitive {
            kind: PrimitiveKind::CV,
            control: Some(control),
            target,
        }
    }

    pub fn cvdag(control: usize, target: usize) -> Self {
        QuantumPrimitive {
            kind: PrimitiveKind::CVDag,
            control: Some(control),
            target,
        }
    }

    /// The step-wise inverse: V and V† swap, X and CNOT are self-inverse.
    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            PrimitiveKind::CV => PrimitiveKind::CVDag,
            PrimitiveKind::CVDag => PrimitiveKind::CV,
            other => other,
        };
        QuantumPrimitive { kind, ..self }
    }
}

/// An ordered primitive sequence over `width` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveSequence {
    width: usize,
    steps: Vec<QuantumPrimitive>,
}

impl PrimitiveSequence {
    pub fn new(width: usize, steps: Vec<QuantumPrimitive>) -> Result<Self, QuantumError> {
        if width > MAX_SEQUENCE_WIDTH {
            return Err(QuantumError::WidthTooLarge(width));
        }
        for step in &steps {
            if step.target >= width {
                return Err(QuantumError::BadIndex {
                    line: step.target,
                    width,
                });
            }
            if let Some(ctrl) = step.control {
                if ctrl >= width {
                    return Err(QuantumError::BadIndex { line: ctrl, width });
                }
                if ctrl == step.target {
                    return Err(QuantumError::ControlIsTarget(ctrl));
                }
            }
        }
        Ok(PrimitiveSequence { width, steps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn steps(&self) -> &[QuantumPrimitive] {
        &self.steps
    }

    /// Number of primitives; every X/CNOT/CV/CV† counts one.
    pub fn quantum_cost(&self) -> u32 {
        self.steps.len() as u32
    }

    /// The reversed sequence of step-wise inverses.
    pub fn inverse(&self) -> PrimitiveSequence {
        PrimitiveSequence {
            width: self.width,
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }
}

/// 2x2 single-target action of a primitive kind, row-major.
pub fn primitive_matrix(kind: PrimitiveKind) -> [Complex64; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match kind {
        PrimitiveKind::X | PrimitiveKind::Cnot => [zero, one, one, zero],
        // V = ((1+i)/2) [[1, -i], [-i, 1]], the square root of X.
        PrimitiveKind::CV => {
            let h = Complex64::new(0.5, 0.5);
            [
                h,
                h * Complex64::new(0.0, -1.0),
                h * Complex64::new(0.0, -1.0),
                h,
            ]
        }
        PrimitiveKind::CVDag => {
            let h = Complex64::new(0.5, -0.5);
            [
                h,
                h * Complex64::new(0.0, 1.0),
                h * Complex64::new(0.0, 1.0),
                h,
            ]
        }
    }
}

/// A normalized pure state over `width` lines. Basis index bit convention
/// matches the truth tables: line 0 is the most significant bit.
#[derive(Clone, Debug)]
pub struct StateVector {
    width: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state |word⟩.
    pub fn basis(width: usize, word: u32) -> Result<Self, QuantumError> {
        if width > MAX_SEQUENCE_WIDTH {
            return Err(QuantumError::WidthTooLarge(width));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << width];
        amplitudes[word as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { width, amplitudes })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, word: u32) -> Complex64 {
        self.amplitudes[word as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn apply_primitive(&mut self, step: &QuantumPrimitive) {
        let m = primitive_matrix(step.kind);
        let target_mask = 1usize << (self.width - 1 - step.target);
        let control_mask = step.control.map(|c| 1usize << (self.width - 1 - c));
        for index in 0..self.amplitudes.len() {
            // Visit each target pair once, via its low member.
            if index & target_mask != 0 {
                continue;
            }
            if let Some(cm) = control_mask {
                if index & cm == 0 {
                    continue;
                }
            }
            let hi = index | target_mask;
            let a0 = self.amplitudes[index];
            let a1 = self.amplitudes[hi];
            self.amplitudes[index] = m[0] * a0 + m[1] * a1;
            self.amplitudes[hi] = m[2] * a0 + m[3] * a1;
        }
    }
}

/// Runs a primitive sequence on a computational basis input.
pub fn apply(seq: &PrimitiveSequence, basis_in: u32) -> Result<StateVector, QuantumError> {
    if basis_in as usize >= 1 << seq.width {
        return Err(QuantumError::BadIndex {
            line: basis_in as usize,
            width: seq.width,
        });
    }
    let mut state = StateVector::basis(seq.width, basis_in)?;
    for step in &seq.steps {
        state.apply_primitive(step);
    }
    Ok(state)
}

/// Why a decomposition check failed on some basis input.
#[derive(Clone, Debug, PartialEq)]
pub enum VerifyFailure {
    /// The state is not concentrated on the expected basis word.
    WrongImage { expected: u32, amplitude: Complex64 },
    /// The per-input phase differs from the phase of earlier inputs.
    PhaseDrift {
        phase: Complex64,
        reference: Complex64,
    },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::WrongImage {
                expected,
                amplitude,
            } => write!(
                f,
                "amplitude at expected word {expected:#b} is {amplitude} (magnitude {:.6})",
                amplitude.norm()
            ),
            VerifyFailure::PhaseDrift { phase, reference } => write!(
                f,
                "phase {phase} differs from the phase {reference} of earlier inputs"
            ),
        }
    }
}

/// Result of checking a primitive sequence against a gate's truth table.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOutcome {
    /// Uniform global phase when the check passes.
    pub global_phase: Option<Complex64>,
    /// First failing basis input, if any.
    pub counterexample: Option<(u32, VerifyFailure)>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that `seq` maps every basis state |x⟩ to |g(x)⟩ up to one global
/// phase shared by all inputs.
pub fn verify_decomposition(
    seq: &PrimitiveSequence,
    gate: &GateSpec,
    tol: f64,
) -> Result<VerifyOutcome, QuantumError> {
    if seq.width != gate.width() {
        return Err(QuantumError::WidthMismatch {
            seq: seq.width,
            gate: gate.width(),
        });
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(QuantumError::BadTolerance(tol));
    }
    let mut reference: Option<Complex64> = None;
    for input in 0..1u32 << seq.width {
        let state = apply(seq, input)?;
        let expected = gate.apply(input);
        let amplitude = state.amplitude(expected);
        if (amplitude.norm() - 1.0).abs() > tol {
            return Ok(VerifyOutcome {
                global_phase: None,
                counterexample: Some((
                    input,
                    VerifyFailure::WrongImage {
                        expected,
                        amplitude,
                    },
                )),
            });
        }
        let phase = amplitude / amplitude.norm();
        match reference {
            None => reference = Some(phase),
            Some(r) => {
                if phase_distance(phase, r) > tol {
                    return Ok(VerifyOutcome {
                        global_phase: None,
                        counterexample: Some((
                            input,
                            VerifyFailure::PhaseDrift {
                                phase,
                                reference: r,
                            },
                        )),
                    });
                }
            }
        }
    }
    Ok(VerifyOutcome {
        global_phase: reference,
        counterexample: None,
    })
}

pub(crate) fn phase_distance(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

/// The standard five-primitive realization of the Toffoli gate on lines
/// (control, control, target) = (0, 1, 2).
pub fn toffoli_decomposition() -> PrimitiveSequence {
    PrimitiveSequence::new(
        3,
        vec![
            QuantumPrimitive::cv(1, 2),
            QuantumPrimitive::cnot(0, 1),
            QuantumPrimitive::cvdag(1, 2),
            QuantumPrimitive::cv(0, 2),
            QuantumPrimitive::cnot(0, 1),
        ],
    )
    .expect("static sequence is well formed")
}

/// The standard four-primitive realization of the Peres gate on lines
/// (0, 1, 2).
pub fn peres_decomposition() -> PrimitiveSequence {
    PrimitiveSequence::new(
        3,
        vec![
            QuantumPrimitive::cv(1, 2),
            QuantumPrimitive::cv(0, 2),
            QuantumPrimitive::cnot(0, 1),
            QuantumPrimitive::cvdag(1, 2),
        ],
    )
    .expect("static sequence is well formed")
}
