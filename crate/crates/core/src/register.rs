//! Layout of the oracle's input register and restrictions of it.
//!
//! Inputs are ordered display by display (`a..g`), then operator slots
//! (most significant bit first), then the K bits (least significant first).
//! A candidate is a `u64` whose bit `i` is input `i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::segcode::{OperatorCode, PuzzleConfig, SegmentCode, SEGMENTS, SEGMENT_NAMES};

pub const MAX_INPUTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputLayout {
    pub displays: usize,
    pub op_width: usize,
    pub op_slots: usize,
    pub k_bits: usize,
}

/// A candidate split back into its parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub displays: Vec<SegmentCode>,
    pub operators: Vec<OperatorCode>,
    pub k: Option<u8>,
}

impl InputLayout {
    pub fn of(puzzle: &PuzzleConfig) -> Result<Self> {
        let l = InputLayout {
            displays: puzzle.displays.len(),
            op_width: puzzle.encoding.width(),
            op_slots: puzzle.operators.len(),
            k_bits: puzzle.k_input_bits(),
        };
        if l.width() > MAX_INPUTS {
            return Err(Error::Capacity(format!(
                "{} input bits exceed the {MAX_INPUTS}-bit candidate word",
                l.width()
            )));
        }
        Ok(l)
    }

    pub fn width(&self) -> usize {
        self.displays * SEGMENTS + self.op_slots * self.op_width + self.k_bits
    }

    pub fn segment_offset(&self, display: usize) -> usize {
        display * SEGMENTS
    }

    pub fn op_offset(&self, slot: usize) -> usize {
        self.displays * SEGMENTS + slot * self.op_width
    }

    pub fn k_offset(&self) -> usize {
        self.displays * SEGMENTS + self.op_slots * self.op_width
    }

    /// Bits that count towards the Hamming distance: segments and operators.
    pub fn hd_mask(&self) -> u64 {
        mask(self.k_offset())
    }

    pub fn segment_mask(&self) -> u64 {
        mask(self.displays * SEGMENTS)
    }

    pub fn display_mask(&self, display: usize) -> u64 {
        mask(SEGMENTS) << self.segment_offset(display)
    }

    pub fn op_mask(&self) -> u64 {
        mask(self.op_slots * self.op_width) << self.op_offset(0)
    }

    pub fn k_mask(&self) -> u64 {
        mask(self.k_bits) << self.k_offset()
    }

    pub fn names(&self) -> Vec<String> {
        let mut v = Vec::with_capacity(self.width());
        for d in 0..self.displays {
            v.extend(SEGMENT_NAMES.iter().map(|n| format!("{n}{d}")));
        }
        for s in 0..self.op_slots {
            v.extend((0..self.op_width).rev().map(|b| format!("op{s}_{b}")));
        }
        v.extend((0..self.k_bits).map(|b| format!("k{b}")));
        v
    }

    pub fn encode(&self, displays: &[SegmentCode], operators: &[OperatorCode], k: Option<u8>) -> u64 {
        let mut x = 0u64;
        for (d, code) in displays.iter().enumerate() {
            for v in 0..SEGMENTS {
                x |= (code.segment(v) as u64) << (self.segment_offset(d) + v);
            }
        }
        for (s, op) in operators.iter().enumerate() {
            for (i, b) in op.bits().into_iter().enumerate() {
                x |= (b as u64) << (self.op_offset(s) + i);
            }
        }
        if let Some(k) = k {
            x |= (u64::from(k) & mask(self.k_bits)) << self.k_offset();
        }
        x
    }

    pub fn decode(&self, x: u64) -> Decoded {
        let displays = (0..self.displays)
            .map(|d| {
                let off = self.segment_offset(d);
                let bits = (0..SEGMENTS).fold(0u8, |acc, v| acc << 1 | (x >> (off + v) & 1) as u8);
                SegmentCode::from_bits(bits).unwrap()
            })
            .collect();
        let operators = (0..self.op_slots)
            .map(|s| {
                let off = self.op_offset(s);
                let code = (0..self.op_width).fold(0u8, |acc, i| acc << 1 | (x >> (off + i) & 1) as u8);
                OperatorCode {
                    code,
                    width: self.op_width,
                }
            })
            .collect();
        let k = (self.k_bits > 0).then(|| (x >> self.k_offset() & mask(self.k_bits)) as u8);
        Decoded {
            displays,
            operators,
            k,
        }
    }

    /// The puzzle's initial configuration (K bits zero).
    pub fn initial(&self, puzzle: &PuzzleConfig) -> u64 {
        self.encode(&puzzle.displays, &puzzle.operators, None)
    }

    /// Search register with the listed displays, and optionally every
    /// operator slot, pinned to their initial values.
    pub fn register_fixing(&self, puzzle: &PuzzleConfig, displays: &[usize], operators: bool) -> Result<SearchRegister> {
        let mut fixed = 0;
        for &d in displays {
            if d >= self.displays {
                return Err(Error::Domain(format!("display {d} does not exist, puzzle has {}", self.displays)));
            }
            fixed |= self.display_mask(d);
        }
        if operators {
            fixed |= self.op_mask();
        }
        Ok(SearchRegister::full(self.width()).fixing(fixed, self.initial(puzzle)))
    }

    /// Candidate as a bit string in input order.
    pub fn bit_string(&self, x: u64) -> String {
        (0..self.width())
            .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// The searched part of the input register: free bits vary, the rest are
/// pinned to `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRegister {
    pub width: usize,
    pub free: Vec<usize>,
    pub base: u64,
}

impl SearchRegister {
    pub fn full(width: usize) -> Self {
        SearchRegister {
            width,
            free: (0..width).collect(),
            base: 0,
        }
    }

    /// Pins the bits in `fixed_mask` to their values in `values`.
    pub fn fixing(&self, fixed_mask: u64, values: u64) -> Self {
        SearchRegister {
            width: self.width,
            free: self
                .free
                .iter()
                .copied()
                .filter(|&i| fixed_mask >> i & 1 == 0)
                .collect(),
            base: (self.base & !fixed_mask) | (values & fixed_mask),
        }
    }

    pub fn n_free(&self) -> usize {
        self.free.len()
    }

    pub fn fixed_mask(&self) -> u64 {
        let free = self.free.iter().fold(0u64, |acc, &i| acc | 1 << i);
        mask(self.width) & !free
    }

    /// Candidate for register index `r` (bit `j` of `r` drives `free[j]`).
    pub fn candidate(&self, r: u64) -> u64 {
        self.free
            .iter()
            .enumerate()
            .fold(self.base & self.fixed_mask(), |acc, (j, &i)| acc | (r >> j & 1) << i)
    }

    /// Inverse of [`SearchRegister::candidate`] for candidates that agree
    /// with the pinned bits.
    pub fn index_of(&self, x: u64) -> Option<u64> {
        if (x ^ self.base) & self.fixed_mask() != 0 {
            return None;
        }
        Some(
            self.free
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &i)| acc | (x >> i & 1) << j),
        )
    }

    pub fn admits(&self, x: u64) -> bool {
        self.index_of(x).is_some()
    }
}
