//! Seven-segment codes, digit codes, operator codes and the puzzle state.
//!
//! Segment bits are stored `a` = bit 6 (MSB) down to `g` = bit 0, so the
//! textual form `"1111011"` reads left to right as `abcdefg`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const SEGMENTS: usize = 7;
pub const SEGMENT_NAMES: [char; SEGMENTS] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

/// Lit/unlit state of the seven segments of one display.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SegmentCode(u8);

impl SegmentCode {
    pub const DARK: SegmentCode = SegmentCode(0);

    /// Builds a code from its 7-bit value (`a` in bit 6).
    pub fn from_bits(bits: u8) -> Result<Self> {
        if bits >= 1 << SEGMENTS {
            return domain(format!("segment code {bits:#x} wider than 7 bits"));
        }
        Ok(SegmentCode(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// State of segment `i` (0 = `a`, 6 = `g`).
    pub fn segment(self, i: usize) -> bool {
        debug_assert!(i < SEGMENTS);
        self.0 >> (SEGMENTS - 1 - i) & 1 == 1
    }

    /// Segments in `a..g` order.
    pub fn to_array(self) -> [bool; SEGMENTS] {
        std::array::from_fn(|i| self.segment(i))
    }

    pub fn from_array(segs: [bool; SEGMENTS]) -> Self {
        SegmentCode(
            segs.iter()
                .fold(0u8, |acc, &s| (acc << 1) | u8::from(s)),
        )
    }

    /// Number of lit segments (matchsticks).
    pub fn lit_count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn distance(self, other: SegmentCode) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    pub fn digit(self) -> Option<u8> {
        decode_segment(self)
    }

    pub fn is_valid(self) -> bool {
        is_valid_sc(self)
    }

    /// Every one of the 128 codes, in ascending numeric order.
    pub fn all() -> impl Iterator<Item = SegmentCode> {
        (0u8..128).map(SegmentCode)
    }
}

impl fmt::Debug for SegmentCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SegmentCode({self})")
    }
}

impl fmt::Display for SegmentCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:07b}", self.0)
    }
}

impl FromStr for SegmentCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() != SEGMENTS || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return domain(format!("'{s}' is not a 7-character 0/1 segment string"));
        }
        Ok(SegmentCode(u8::from_str_radix(s, 2).expect("checked binary")))
    }
}

/// The ten lit patterns for digits 0..=9, indexed by digit.
const DIGIT_SEGMENTS: [u8; 10] = [
    0b1111110, // 0
    0b0110000, // 1
    0b1101101, // 2
    0b1111001, // 3
    0b0110011, // 4
    0b1011011, // 5
    0b1011111, // 6
    0b1110000, // 7
    0b1111111, // 8
    0b1111011, // 9
];

/// A decimal digit with its 4-bit binary code `x4x3x2x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitCode(u8);

impl DigitCode {
    pub fn new(value: u8) -> Result<Self> {
        if value > 9 {
            return domain(format!("digit {value} outside 0..=9"));
        }
        Ok(DigitCode(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Bits `[x1, x2, x3, x4]`, least significant first.
    pub fn bits(self) -> [bool; 4] {
        std::array::from_fn(|i| self.0 >> i & 1 == 1)
    }
}

/// One row of the digit table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitRow {
    pub digit: u8,
    pub segments: SegmentCode,
    pub binary: DigitCode,
}

/// The ten valid display states with their digit and binary code.
#[derive(Clone, Debug)]
pub struct DigitTable {
    rows: [DigitRow; 10],
}

impl DigitTable {
    pub fn standard() -> Self {
        DigitTable {
            rows: std::array::from_fn(|d| DigitRow {
                digit: d as u8,
                segments: SegmentCode(DIGIT_SEGMENTS[d]),
                binary: DigitCode(d as u8),
            }),
        }
    }

    pub fn rows(&self) -> &[DigitRow; 10] {
        &self.rows
    }

    pub fn by_segments(&self, sc: SegmentCode) -> Option<&DigitRow> {
        self.rows.iter().find(|r| r.segments == sc)
    }
}

impl Default for DigitTable {
    fn default() -> Self {
        Self::standard()
    }
}

pub fn encode_digit(d: u8) -> Result<SegmentCode> {
    match DIGIT_SEGMENTS.get(d as usize) {
        Some(&bits) => Ok(SegmentCode(bits)),
        None => domain(format!("digit {d} outside 0..=9")),
    }
}

pub fn decode_segment(sc: SegmentCode) -> Option<u8> {
    DIGIT_SEGMENTS
        .iter()
        .position(|&bits| bits == sc.0)
        .map(|d| d as u8)
}

pub fn is_valid_sc(sc: SegmentCode) -> bool {
    decode_segment(sc).is_some()
}

/// Number of positions where two equal-width bit vectors differ.
pub fn hamming_distance(a: &[bool], b: &[bool]) -> Result<u32> {
    if a.len() != b.len() {
        return domain(format!(
            "hamming distance of widths {} and {}",
            a.len(),
            b.len()
        ));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() as u32)
}

/// Number of configurations reachable by moving `k` of `matchsticks` sticks
/// among `total_positions` positions: `C(total - matchsticks + k, k)`.
pub fn search_space_size(total_positions: u32, matchsticks: u32, k: u32) -> Result<u128> {
    if k >= 8 {
        return domain(format!("K = {k} must be below 8"));
    }
    if k > matchsticks {
        return domain(format!("K = {k} exceeds the {matchsticks} matchsticks"));
    }
    if matchsticks > total_positions {
        return domain(format!(
            "{matchsticks} matchsticks do not fit in {total_positions} positions"
        ));
    }
    let n = (total_positions - matchsticks + k) as u128;
    let k = k as u128;
    // C(n, k) with exact intermediate division
    Ok((0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1)))
}

/// Operators a puzzle may display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    Plus,
    Minus,
    Times,
    Divide,
    Less,
    Equals,
    Greater,
}

impl Operator {
    pub const ALL: [Operator; 7] = [
        Operator::Plus,
        Operator::Minus,
        Operator::Times,
        Operator::Divide,
        Operator::Less,
        Operator::Equals,
        Operator::Greater,
    ];

    pub fn symbol(self) -> char {
        match self {
            Operator::Plus => '+',
            Operator::Minus => '-',
            Operator::Times => '*',
            Operator::Divide => '/',
            Operator::Less => '<',
            Operator::Equals => '=',
            Operator::Greater => '>',
        }
    }

    pub fn from_symbol(c: char) -> Option<Operator> {
        Some(match c {
            '+' => Operator::Plus,
            '-' | '−' => Operator::Minus,
            '*' | 'x' | '×' => Operator::Times,
            '/' | '÷' => Operator::Divide,
            '<' => Operator::Less,
            '=' => Operator::Equals,
            '>' => Operator::Greater,
            _ => return None,
        })
    }

    /// True for the operators that can join the two operands of an equation.
    pub fn is_arithmetic(self) -> bool {
        matches!(
            self,
            Operator::Plus | Operator::Minus | Operator::Times | Operator::Divide
        )
    }

    pub fn apply(self, a: u32, b: u32) -> Option<u32> {
        match self {
            Operator::Plus => Some(a + b),
            Operator::Minus => a.checked_sub(b),
            Operator::Times => Some(a * b),
            Operator::Divide => (b != 0 && a % b == 0).then(|| a / b),
            _ => None,
        }
    }

    /// Matchsticks in the usual drawing of the symbol.
    pub fn default_weight(self) -> u32 {
        match self {
            Operator::Minus => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Binary codes assigned to operators, plus each operator's matchstick weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorEncoding {
    width: usize,
    entries: Vec<(Operator, u8)>,
    weights: Vec<(Operator, u32)>,
}

impl OperatorEncoding {
    /// `00 = +`, `01 = -`, `10 = =`, `11` unused.
    pub fn standard() -> Self {
        OperatorEncoding::new(
            2,
            vec![
                (Operator::Plus, 0b00),
                (Operator::Minus, 0b01),
                (Operator::Equals, 0b10),
            ],
        )
        .expect("standard encoding is valid")
    }

    pub fn new(width: usize, entries: Vec<(Operator, u8)>) -> Result<Self> {
        if width == 0 || width > 8 {
            return domain(format!("operator code width {width} outside 1..=8"));
        }
        if entries.len() > 1 << width {
            return domain(format!(
                "{} operators do not fit in {width}-bit codes",
                entries.len()
            ));
        }
        for (i, &(op, code)) in entries.iter().enumerate() {
            if u32::from(code) >= 1 << width {
                return domain(format!("code {code:#b} for '{op}' wider than {width} bits"));
            }
            if entries[..i].iter().any(|&(o, c)| o == op || c == code) {
                return domain(format!("operator '{op}' or code {code:#b} assigned twice"));
            }
        }
        let weights = entries
            .iter()
            .map(|&(op, _)| (op, op.default_weight()))
            .collect();
        Ok(OperatorEncoding {
            width,
            entries,
            weights,
        })
    }

    pub fn with_weight(mut self, op: Operator, weight: u32) -> Self {
        match self.weights.iter_mut().find(|(o, _)| *o == op) {
            Some(entry) => entry.1 = weight,
            None => self.weights.push((op, weight)),
        }
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &[(Operator, u8)] {
        &self.entries
    }

    pub fn code_of(&self, op: Operator) -> Option<u8> {
        self.entries.iter().find(|(o, _)| *o == op).map(|&(_, c)| c)
    }

    pub fn operator_of(&self, code: u8) -> Option<Operator> {
        self.entries.iter().find(|(_, c)| *c == code).map(|&(o, _)| o)
    }

    pub fn weight(&self, op: Operator) -> u32 {
        self.weights
            .iter()
            .find(|(o, _)| *o == op)
            .map_or_else(|| op.default_weight(), |&(_, w)| w)
    }

    pub fn weights(&self) -> &[(Operator, u32)] {
        &self.weights
    }

    /// Encodes `op`, failing if the encoding has no code for it.
    pub fn encode(&self, op: Operator) -> Result<OperatorCode> {
        match self.code_of(op) {
            Some(code) => Ok(OperatorCode {
                code,
                width: self.width,
            }),
            None => domain(format!("operator '{op}' has no code in this encoding")),
        }
    }
}

impl Default for OperatorEncoding {
    fn default() -> Self {
        Self::standard()
    }
}

/// A raw `k`-bit operator code; what it means depends on the encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorCode {
    pub code: u8,
    pub width: usize,
}

impl OperatorCode {
    /// Bits most significant first.
    pub fn bits(self) -> Vec<bool> {
        (0..self.width)
            .rev()
            .map(|i| self.code >> i & 1 == 1)
            .collect()
    }
}

impl fmt::Display for OperatorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0w$b}", self.code, w = self.width)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KMode {
    /// Hamming distance must equal `hd_factor * K`.
    Exact,
    /// Hamming distance must not exceed `hd_factor * K`.
    AtMost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KBudget {
    /// K is a compile-time constant.
    Fixed(u8),
    /// K is part of the searched register (3 bits, K < 8).
    Search,
}

pub const K_BITS: usize = 3;

/// Initial configuration of a puzzle together with its change budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleConfig {
    pub displays: Vec<SegmentCode>,
    pub operators: Vec<OperatorCode>,
    pub encoding: OperatorEncoding,
    pub k_budget: KBudget,
    pub k_mode: KMode,
    /// Segment changes counted per unit of K (1 or 2).
    pub hd_factor: u8,
    pub conserve_matchsticks: bool,
}

impl PuzzleConfig {
    pub fn new(displays: Vec<SegmentCode>, operators: Vec<OperatorCode>) -> Self {
        PuzzleConfig {
            displays,
            operators,
            encoding: OperatorEncoding::standard(),
            k_budget: KBudget::Fixed(1),
            k_mode: KMode::Exact,
            hd_factor: 1,
            conserve_matchsticks: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.displays.is_empty() {
            return domain("a puzzle needs at least one display");
        }
        if !matches!(self.hd_factor, 1 | 2) {
            return domain(format!("hd_factor {} is not 1 or 2", self.hd_factor));
        }
        if let KBudget::Fixed(k) = self.k_budget {
            if k >= 8 {
                return domain(format!("K = {k} must be below 8"));
            }
        }
        if let Some(op) = self
            .operators
            .iter()
            .find(|op| op.width != self.encoding.width())
        {
            return domain(format!(
                "operator code {op} does not have the encoding width {}",
                self.encoding.width()
            ));
        }
        Ok(())
    }

    /// Matchsticks on the board: lit segments plus operator weights.
    /// Codes that name no operator weigh nothing.
    pub fn matchsticks(&self) -> u32 {
        matchsticks_of(&self.displays, &self.operators, &self.encoding)
    }

    pub fn k_input_bits(&self) -> usize {
        match self.k_budget {
            KBudget::Fixed(_) => 0,
            KBudget::Search => K_BITS,
        }
    }

    /// Whether a Hamming distance satisfies the K constraint for a given K.
    pub fn k_admits(&self, hd: u32, k: u8) -> bool {
        let bound = u32::from(self.hd_factor) * u32::from(k);
        match self.k_mode {
            KMode::Exact => hd == bound,
            KMode::AtMost => hd <= bound,
        }
    }
}

pub fn matchsticks_of(
    displays: &[SegmentCode],
    operators: &[OperatorCode],
    encoding: &OperatorEncoding,
) -> u32 {
    let segs: u32 = displays.iter().map(|d| d.lit_count()).sum();
    let ops: u32 = operators
        .iter()
        .filter_map(|c| encoding.operator_of(c.code))
        .map(|op| encoding.weight(op))
        .sum();
    segs + ops
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> SegmentCode {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_digit(9).unwrap(), sc("1111011"));
        assert_eq!(encode_digit(2).unwrap(), sc("1101101"));
        assert_eq!(encode_digit(0).unwrap(), sc("1111110"));
        assert!(matches!(encode_digit(10), Err(Error::Domain(_))));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_segment(sc("0110000")), Some(1));
        assert_eq!(decode_segment(sc("0000000")), None);
        assert_eq!(decode_segment(sc("1111111")), Some(8));
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid_sc(sc("1011011")));
        assert!(!is_valid_sc(sc("1111101")));
        assert!(is_valid_sc(sc("1111110")));
    }

    #[test]
    fn sparsity_and_round_trip() {
        assert_eq!(SegmentCode::all().filter(|&c| is_valid_sc(c)).count(), 10);
        for d in 0..10 {
            assert_eq!(decode_segment(encode_digit(d).unwrap()), Some(d));
        }
        for c in SegmentCode::all() {
            assert_eq!(is_valid_sc(c), decode_segment(c).is_some());
        }
    }

    #[test]
    fn hamming_examples() {
        let s = |d| encode_digit(d).unwrap().to_array();
        assert_eq!(hamming_distance(&s(9), &s(3)).unwrap(), 1);
        assert_eq!(hamming_distance(&s(9), &s(1)).unwrap(), 4);
        assert_eq!(hamming_distance(&s(8), &s(8)).unwrap(), 0);
        assert!(hamming_distance(&[true], &[true, false]).is_err());
    }

    #[test]
    fn hamming_is_a_metric() {
        let codes: Vec<_> = SegmentCode::all().collect();
        for &x in &codes {
            for &y in &codes {
                let dxy = x.distance(y);
                assert_eq!(dxy, y.distance(x));
                assert_eq!(dxy == 0, x == y);
            }
        }
        // triangle inequality on a stride to keep this quick
        for x in codes.iter().step_by(3) {
            for y in codes.iter().step_by(5) {
                for z in &codes {
                    assert!(x.distance(*z) <= x.distance(*y) + y.distance(*z));
                }
            }
        }
    }

    #[test]
    fn search_space_examples() {
        assert_eq!(search_space_size(30, 30, 0).unwrap(), 1);
        assert_eq!(search_space_size(30, 20, 2).unwrap(), 66);
        assert_eq!(search_space_size(30, 18, 3).unwrap(), 455);
        for m in 0..=30 {
            assert_eq!(search_space_size(30, m, 0).unwrap(), 1);
        }
        assert!(search_space_size(30, 20, 8).is_err());
        assert!(search_space_size(30, 2, 3).is_err());
        assert!(search_space_size(30, 31, 1).is_err());
    }

    #[test]
    fn segment_string_round_trip() {
        for c in SegmentCode::all() {
            assert_eq!(c.to_string().parse::<SegmentCode>().unwrap(), c);
            assert_eq!(SegmentCode::from_array(c.to_array()), c);
        }
        assert!("111".parse::<SegmentCode>().is_err());
        assert!("11110a1".parse::<SegmentCode>().is_err());
    }

    #[test]
    fn digit_table_matches_codes() {
        let table = DigitTable::standard();
        for row in table.rows() {
            assert_eq!(row.segments, encode_digit(row.digit).unwrap());
            assert_eq!(row.binary.value(), row.digit);
            assert_eq!(table.by_segments(row.segments).unwrap().digit, row.digit);
        }
        assert_eq!(DigitCode::new(6).unwrap().bits(), [false, true, true, false]);
        assert!(DigitCode::new(10).is_err());
    }

    #[test]
    fn encoding_rules() {
        let enc = OperatorEncoding::standard();
        assert_eq!(enc.code_of(Operator::Minus), Some(1));
        assert_eq!(enc.operator_of(3), None);
        assert_eq!(enc.weight(Operator::Plus), 2);
        assert_eq!(enc.weight(Operator::Minus), 1);
        assert!(OperatorEncoding::new(1, vec![
            (Operator::Plus, 0),
            (Operator::Minus, 1),
            (Operator::Equals, 0)
        ])
        .is_err());
        assert_eq!(enc.encode(Operator::Minus).unwrap().bits(), vec![false, true]);
    }

    #[test]
    fn matchstick_count() {
        let displays = [5, 5, 0, 8].map(|d| encode_digit(d).unwrap()).to_vec();
        let enc = OperatorEncoding::standard();
        let ops = vec![enc.encode(Operator::Plus).unwrap()];
        let p = PuzzleConfig::new(displays, ops);
        assert_eq!(p.matchsticks(), 5 + 5 + 6 + 7 + 2);
    }
}
