//! Hardware-complexity accounting in terms of two-input XOR, two-input AND
//! and NOT operations.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

/// Count of elementary logic operations needed to realize a gate or circuit.
///
/// `alpha` counts two-input XOR gates, `beta` two-input AND gates and
/// `delta` NOT gates. Values are declared metadata on a gate, not derived
/// from its truth table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CostVector {
    pub alpha: u32,
    pub beta: u32,
    pub delta: u32,
}

impl CostVector {
    pub const ZERO: CostVector = CostVector::new(0, 0, 0);

    pub const fn new(alpha: u32, beta: u32, delta: u32) -> Self {
        CostVector { alpha, beta, delta }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for CostVector {
    type Output = CostVector;

    fn add(self, rhs: CostVector) -> CostVector {
        CostVector {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
            delta: self.delta + rhs.delta,
        }
    }
}

impl AddAssign for CostVector {
    fn add_assign(&mut self, rhs: CostVector) {
        *self = *self + rhs;
    }
}

impl Sum for CostVector {
    fn sum<I: Iterator<Item = CostVector>>(iter: I) -> CostVector {
        iter.fold(CostVector::ZERO, Add::add)
    }
}

impl fmt::Display for CostVector {
    /// Renders as `aA+bB+dD`, e.g. `7A+4B+3D`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}A+{}B+{}D", self.alpha, self.beta, self.delta)
    }
}
