//! Truth tables as permutations on fixed-width words.
//!
//! A reversible function on `w` ports is stored as the full list of output
//! words indexed by input word. Port 0 is the most significant bit of the
//! word, so reading a row left to right matches reading the table columns
//! left to right.

use thiserror::Error;

/// Widest table that may be materialized explicitly (2^20 words).
pub const MAX_ENUM_WIDTH: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table width {0} out of range 1..={MAX_ENUM_WIDTH}")]
    BadWidth(usize),
    #[error("expected {expected} rows for width {width}, got {got}")]
    BadArity {
        width: usize,
        expected: usize,
        got: usize,
    },
    #[error("output word {word:#x} appears more than once")]
    NonBijective { word: u32 },
    #[error("output word {word:#x} does not fit in {width} bits")]
    RowOutOfRange { width: usize, word: u32 },
}

/// A bijection on `width`-bit words.
///
/// Construction checks that the mapping is a permutation, so every value of
/// this type is reversible by definition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    width: usize,
    mapping: Vec<u32>,
}

impl TruthTable {
    /// Builds a table from the sequence of output words, indexed by input
    /// word. Rejects non-permutations, reporting the first duplicated output.
    pub fn new(width: usize, mapping: Vec<u32>) -> Result<Self, TableError> {
        if width == 0 || width > MAX_ENUM_WIDTH {
            return Err(TableError::BadWidth(width));
        }
        let expected = 1usize << width;
        if mapping.len() != expected {
            return Err(TableError::BadArity {
                width,
                expected,
                got: mapping.len(),
            });
        }
        let mut seen = vec![false; expected];
        for &word in &mapping {
            if word as usize >= expected {
                return Err(TableError::RowOutOfRange { width, word });
            }
            if seen[word as usize] {
                return Err(TableError::NonBijective { word });
            }
            seen[word as usize] = true;
        }
        Ok(TruthTable { width, mapping })
    }

    /// The identity permutation on `width`-bit words.
    pub fn identity(width: usize) -> Result<Self, TableError> {
        if width == 0 || width > MAX_ENUM_WIDTH {
            return Err(TableError::BadWidth(width));
        }
        let mapping = (0..1u32 << width).collect();
        Ok(TruthTable { width, mapping })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Output word for the given input word.
    pub fn apply(&self, word: u32) -> u32 {
        self.mapping[word as usize]
    }

    /// The output words in input order.
    pub fn rows(&self) -> &[u32] {
        &self.mapping
    }

    /// The inverse permutation: `inverse().apply(apply(x)) == x`.
    pub fn inverse(&self) -> TruthTable {
        let mut inv = vec![0u32; self.mapping.len()];
        for (input, &output) in self.mapping.iter().enumerate() {
            inv[output as usize] = input as u32;
        }
        TruthTable {
            width: self.width,
            mapping: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &w)| i as u32 == w)
    }

    /// Value of the given port in a word, under the port-0-is-MSB convention.
    pub fn port_value(&self, word: u32, port: usize) -> bool {
        assert!(port < self.width, "port {port} out of range");
        word_bit(word, self.width, port)
    }
}

/// Bit of `word` carrying port `port` for a `width`-port gate (port 0 = MSB).
pub fn word_bit(word: u32, width: usize, port: usize) -> bool {
    debug_assert!(port < width);
    (word >> (width - 1 - port)) & 1 == 1
}

/// Sets the bit of `word` carrying port `port` to `value`.
pub fn set_word_bit(word: u32, width: usize, port: usize, value: bool) -> u32 {
    debug_assert!(port < width);
    let mask = 1u32 << (width - 1 - port);
    if value {
        word | mask
    } else {
        word & !mask
    }
}

/// Packs port values (port 0 first) into a word.
pub fn pack_word(bits: &[bool]) -> u32 {
    bits.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_round_trip() {
        let t = TruthTable::identity(3).unwrap();
        assert!(t.is_identity());
        for w in 0..8 {
            assert_eq!(t.apply(w), w);
        }
    }

    #[test]
    fn rejects_duplicate_outputs() {
        let err = TruthTable::new(1, vec![0, 0]).unwrap_err();
        assert_eq!(err, TableError::NonBijective { word: 0 });
    }

    #[test]
    fn rejects_bad_length() {
        let err = TruthTable::new(2, vec![0, 1, 2]).unwrap_err();
        assert_eq!(
            err,
            TableError::BadArity {
                width: 2,
                expected: 4,
                got: 3
            }
        );
    }

    #[test]
    fn rejects_out_of_range_row() {
        let err = TruthTable::new(1, vec![0, 2]).unwrap_err();
        assert_eq!(err, TableError::RowOutOfRange { width: 1, word: 2 });
    }

    #[test]
    fn rejects_zero_and_oversized_width() {
        assert_eq!(
            TruthTable::new(0, vec![]).unwrap_err(),
            TableError::BadWidth(0)
        );
        assert_eq!(
            TruthTable::identity(MAX_ENUM_WIDTH + 1).unwrap_err(),
            TableError::BadWidth(MAX_ENUM_WIDTH + 1)
        );
    }

    #[test]
    fn inverse_composes_to_identity() {
        // An arbitrary 3-bit permutation.
        let t = TruthTable::new(3, vec![5, 1, 0, 7, 2, 6, 3, 4]).unwrap();
        let inv = t.inverse();
        for w in 0..8 {
            assert_eq!(inv.apply(t.apply(w)), w);
            assert_eq!(t.apply(inv.apply(w)), w);
        }
    }

    #[test]
    fn port_zero_is_most_significant() {
        assert!(word_bit(0b100, 3, 0));
        assert!(!word_bit(0b100, 3, 1));
        assert!(!word_bit(0b100, 3, 2));
        assert_eq!(set_word_bit(0, 3, 0, true), 0b100);
        assert_eq!(set_word_bit(0b111, 3, 2, false), 0b110);
        assert_eq!(pack_word(&[true, false, true]), 0b101);
    }
}
