//! Combination sequence of exclusive sums.
//!
//! A sparse function given as a set of minterms is turned into an ordered,
//! XOR-merged list of product terms that share a few reusable conjunctions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::segcode::{SegmentCode, SEGMENTS, SEGMENT_NAMES};

const ABCD: u8 = 0b111_1000;
const EFG: u8 = 0b000_0111;
const FULL: u8 = 0b111_1111;

/// Bit mask of variable `v` (0 = `a`).
pub(crate) fn var_bit(v: usize) -> u8 {
    1 << (SEGMENTS - 1 - v)
}

/// Product term over all seven variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Minterm {
    /// Polarity per variable, `a` in bit 6; 1 = positive literal.
    pub bits: u8,
    /// Index `i` of the source code `s_i`, if the minterm came from the table.
    pub label: Option<usize>,
}

impl Minterm {
    pub fn new(bits: u8, label: Option<usize>) -> Self {
        Minterm {
            bits: bits & FULL,
            label,
        }
    }

    /// The ten digit codes, labelled by digit.
    pub fn digits() -> Vec<Minterm> {
        (0..10)
            .map(|d| Minterm::new(crate::segcode::encode_digit(d).unwrap().bits(), Some(d as usize)))
            .collect()
    }

    pub fn code(self) -> SegmentCode {
        SegmentCode::from_bits(self.bits).expect("7 bits")
    }

    pub fn negative_literals(self) -> u32 {
        (!self.bits & FULL).count_ones()
    }

    pub fn to_cube(self) -> Cube {
        Cube::new(FULL, self.bits)
    }
}

impl fmt::Display for Minterm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            Some(i) => write!(f, "s{i}"),
            None => write!(f, "{}", self.to_cube()),
        }
    }
}

/// Conjunction of literals: variables in `care` with polarities from `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cube {
    pub care: u8,
    pub value: u8,
}

impl Cube {
    pub fn new(care: u8, value: u8) -> Self {
        Cube {
            care: care & FULL,
            value: value & care & FULL,
        }
    }

    pub fn literal_count(self) -> u32 {
        self.care.count_ones()
    }

    pub fn is_full(self) -> bool {
        self.care == FULL
    }

    pub fn contains(self, x: u8) -> bool {
        (x ^ self.value) & self.care == 0
    }

    /// Every literal of `self` also appears in `other`.
    pub fn subsumes_literals_of(self, other: Cube) -> bool {
        self.care & !other.care == 0 && (self.value ^ other.value) & self.care == 0
    }

    /// Literals `(variable, positive)` in variable order.
    pub fn literals(self) -> Vec<(usize, bool)> {
        (0..SEGMENTS)
            .filter(|&v| self.care & var_bit(v) != 0)
            .map(|v| (v, self.value & var_bit(v) != 0))
            .collect()
    }

    pub fn without(self, other: Cube) -> Cube {
        Cube::new(self.care & !other.care, self.value)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, pos) in self.literals() {
            if !pos {
                f.write_str("~")?;
            }
            write!(f, "{}", SEGMENT_NAMES[v])?;
        }
        Ok(())
    }
}

/// A cube, optionally multiplied by `(x XOR y)` or its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub cube: Cube,
    /// `(x, y, xnor)`: variables of the two-literal factor.
    pub factor: Option<(usize, usize, bool)>,
}

impl Term {
    pub fn eval(&self, x: u8) -> bool {
        self.cube.contains(x)
            && match self.factor {
                None => true,
                Some((u, v, xnor)) => {
                    let p = (x & var_bit(u) != 0) ^ (x & var_bit(v) != 0);
                    p != xnor
                }
            }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cube)?;
        if let Some((u, v, xnor)) = self.factor {
            let op = if xnor { "xnor" } else { "^" };
            write!(f, "({}{op}{})", SEGMENT_NAMES[u], SEGMENT_NAMES[v])?;
        }
        Ok(())
    }
}

/// Positive/negative occurrence counts per variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceTally {
    pub counts: [(u32, u32); SEGMENTS],
}

pub fn count_occurrences(minterms: &[Minterm]) -> OccurrenceTally {
    let mut counts = [(0, 0); SEGMENTS];
    for m in minterms {
        for (v, c) in counts.iter_mut().enumerate() {
            if m.bits & var_bit(v) != 0 {
                c.0 += 1;
            } else {
                c.1 += 1;
            }
        }
    }
    OccurrenceTally { counts }
}

/// Majority polarity per variable; ties go positive.
pub fn initial_minterm(tally: &OccurrenceTally) -> Minterm {
    let bits = (0..SEGMENTS)
        .filter(|&v| tally.counts[v].0 >= tally.counts[v].1)
        .fold(0, |acc, v| acc | var_bit(v));
    Minterm::new(bits, None)
}

/// Greedy ordering starting at `start`.
///
/// Next is the remaining minterm with the fewest `abcd` differences to the
/// previous one, then fewest `efg` differences, then fewest negative
/// literals, then lowest label. If `start` coincides with a member of `rest`
/// that member takes its place.
pub fn sequence_minterms(start: Minterm, rest: &[Minterm]) -> Vec<Minterm> {
    let mut pool: Vec<Minterm> = rest.to_vec();
    let first = match pool.iter().position(|m| m.bits == start.bits) {
        Some(i) => pool.remove(i),
        None => start,
    };
    let mut seq = vec![first];
    while !pool.is_empty() {
        let prev = seq[seq.len() - 1].bits;
        let (i, _) = pool
            .iter()
            .enumerate()
            .min_by_key(|(_, m)| {
                let d = prev ^ m.bits;
                (
                    (d & ABCD).count_ones(),
                    (d & EFG).count_ones(),
                    m.negative_literals(),
                    m.label.unwrap_or(usize::MAX),
                )
            })
            .unwrap();
        seq.push(pool.remove(i));
    }
    seq
}

/// Ordered groups, their factored terms and the shared-conjunction schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cses {
    pub sequence: Vec<Minterm>,
    pub groups: Vec<Vec<Minterm>>,
    pub terms: Vec<Vec<Term>>,
    /// Shared conjunction held while each group is emitted.
    pub step_outputs: Vec<Option<Cube>>,
}

impl Cses {
    /// Distinct step-outputs in order of first use.
    pub fn step_output_schedule(&self) -> Vec<Cube> {
        let mut out: Vec<Cube> = Vec::new();
        for s in self.step_outputs.iter().flatten() {
            if out.last() != Some(s) {
                out.push(*s);
            }
        }
        out
    }

    pub fn all_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().flatten()
    }

    pub fn eval(&self, x: u8) -> bool {
        self.all_terms().fold(false, |acc, t| acc ^ t.eval(x))
    }
}

fn group_label_set(group: &[Minterm]) -> Vec<u8> {
    let mut v: Vec<u8> = group.iter().map(|m| m.bits).collect();
    v.sort_unstable();
    v
}

/// Splits the sequence into XOR groups and factors each group.
///
/// A minterm joins the open group when it is within two literals of the
/// previous minterm. Groups listed in `taps` are closed as soon as they are
/// complete, and a minterm that opens a tap group never joins another group.
pub fn merge_minterms(seq: &[Minterm], taps: &[Vec<Minterm>]) -> Cses {
    let tap_sets: Vec<Vec<u8>> = taps.iter().map(|t| group_label_set(t)).collect();
    let opens_tap = |m: &Minterm| taps.iter().any(|t| t.first().map(|f| f.bits) == Some(m.bits));
    let mut groups: Vec<Vec<Minterm>> = Vec::new();
    let mut closed = true;
    for (i, m) in seq.iter().enumerate() {
        let joins = !closed && !opens_tap(m) && (seq[i - 1].bits ^ m.bits).count_ones() <= 2;
        if joins {
            groups.last_mut().unwrap().push(*m);
        } else {
            groups.push(vec![*m]);
        }
        let open = group_label_set(groups.last().unwrap());
        closed = tap_sets.contains(&open);
    }
    let terms: Vec<Vec<Term>> = groups.iter().map(|g| factor_group(g)).collect();
    let step_outputs = schedule_step_outputs(seq.first().copied(), &terms);
    Cses {
        sequence: seq.to_vec(),
        groups,
        terms,
        step_outputs,
    }
}

/// Left-to-right factoring of one XOR group.
fn factor_group(group: &[Minterm]) -> Vec<Term> {
    let mut terms: Vec<Term> = Vec::new();
    for m in group {
        if let Some(last) = terms.last_mut() {
            if last.factor.is_none() && last.cube.is_full() {
                let d = last.cube.value ^ m.bits;
                if d.count_ones() == 1 {
                    last.cube = Cube::new(FULL & !d, m.bits);
                    continue;
                }
                if d.count_ones() == 2 {
                    let vars: Vec<usize> = (0..SEGMENTS).filter(|&v| d & var_bit(v) != 0).collect();
                    let (u, v) = (vars[0], vars[1]);
                    let pu = last.cube.value & var_bit(u) != 0;
                    let pv = last.cube.value & var_bit(v) != 0;
                    last.cube = Cube::new(FULL & !d, m.bits);
                    // mixed polarities (u ~v, ~u v) give XOR, matching ones give XNOR
                    last.factor = Some((u, v, pu == pv));
                    continue;
                }
            }
        }
        terms.push(Term {
            cube: m.to_cube(),
            factor: None,
        });
    }
    terms
}

const STEP_WIDTH: usize = 4;

/// Chooses the shared conjunction for each group.
///
/// The first one is the leading four literals of the first minterm. It is
/// kept while every term of a group contains it; otherwise four literals
/// common to the group are picked, favouring variables of the current one,
/// then positive literals, then variable order.
fn schedule_step_outputs(first: Option<Minterm>, terms: &[Vec<Term>]) -> Vec<Option<Cube>> {
    let Some(first) = first else { return Vec::new() };
    let lead = (0..STEP_WIDTH).fold(0, |acc, v| acc | var_bit(v));
    let mut current = Some(Cube::new(lead, first.bits));
    let mut out = Vec::new();
    for group in terms {
        let fits = |c: Cube| group.iter().all(|t| c.subsumes_literals_of(t.cube));
        if !current.is_some_and(fits) {
            // literals shared by all cubes of the group
            let care = group.iter().fold(FULL, |acc, t| acc & t.cube.care);
            let agree = group
                .iter()
                .fold(care, |acc, t| acc & !(t.cube.value ^ group[0].cube.value));
            let common = Cube::new(agree, group[0].cube.value);
            let mut lits = common.literals();
            let cur = current.map(|c| c.care).unwrap_or(0);
            lits.sort_by_key(|&(v, pos)| (cur & var_bit(v) == 0, !pos, v));
            current = (lits.len() >= 2).then(|| {
                lits.iter()
                    .take(STEP_WIDTH)
                    .fold(Cube::new(0, 0), |c, &(v, pos)| {
                        Cube::new(c.care | var_bit(v), c.value | if pos { var_bit(v) } else { 0 })
                    })
            });
        }
        out.push(current);
    }
    out
}

/// The full pipeline on the digit table with the decoder's reusable groups.
pub fn digit_cses() -> Cses {
    let digits = Minterm::digits();
    let start = initial_minterm(&count_occurrences(&digits));
    let seq = sequence_minterms(start, &digits);
    let d = |i: usize| digits[i];
    merge_minterms(&seq, &[vec![d(9), d(8)], vec![d(3), d(2)], vec![d(6), d(5)]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ms: &[Minterm]) -> Vec<usize> {
        ms.iter().map(|m| m.label.unwrap()).collect()
    }

    fn cube(s: &str) -> Cube {
        let mut care = 0;
        let mut value = 0;
        let mut neg = false;
        for ch in s.chars() {
            if ch == '~' {
                neg = true;
                continue;
            }
            let v = SEGMENT_NAMES.iter().position(|&n| n == ch).unwrap();
            care |= var_bit(v);
            if !neg {
                value |= var_bit(v);
            }
            neg = false;
        }
        Cube::new(care, value)
    }

    #[test]
    fn tally_examples() {
        let t = count_occurrences(&Minterm::digits());
        assert_eq!(t.counts[2], (9, 1));
        assert_eq!(t.counts[4], (4, 6));
        let one = count_occurrences(&[Minterm::new(0b111_1111, None)]);
        assert!(one.counts.iter().all(|&c| c == (1, 0)));
    }

    #[test]
    fn initial_minterm_examples() {
        let t = count_occurrences(&Minterm::digits());
        assert_eq!(initial_minterm(&t).bits, 0b111_1011);

        let mut skewed = t;
        skewed.counts[6] = (3, 7);
        assert_eq!(initial_minterm(&skewed).bits, 0b111_1010);

        let all_pos = OccurrenceTally {
            counts: [(2, 1); SEGMENTS],
        };
        assert_eq!(initial_minterm(&all_pos).bits, FULL);
    }

    #[test]
    fn digit_sequence() {
        let digits = Minterm::digits();
        let start = initial_minterm(&count_occurrences(&digits));
        let seq = sequence_minterms(start, &digits);
        assert_eq!(labels(&seq), [9, 8, 0, 3, 2, 6, 5, 7, 1, 4]);
        let adjacent: u32 = seq.windows(2).map(|w| (w[0].bits ^ w[1].bits).count_ones()).sum();
        assert_eq!(adjacent, 18);
        let natural: u32 = digits.windows(2).map(|w| (w[0].bits ^ w[1].bits).count_ones()).sum();
        assert!(adjacent <= natural);

        let pair = sequence_minterms(digits[1], &digits[..1]);
        assert_eq!(pair.len(), 2);
    }

    #[test]
    fn digit_groups_and_terms() {
        let c = digit_cses();
        let groups: Vec<Vec<usize>> = c.groups.iter().map(|g| labels(g)).collect();
        assert_eq!(groups, vec![vec![9, 8], vec![0], vec![3, 2], vec![6, 5], vec![7, 1, 4]]);
        let terms: Vec<String> = c.all_terms().map(|t| t.to_string()).collect();
        assert_eq!(
            terms,
            ["abcdfg", "abcdef~g", "abd~fg(c^e)", "a~bcdfg", "bc~d~e~f~g", "~abc~d~efg"]
        );
        let sched = c.step_output_schedule();
        assert_eq!(sched, vec![cube("abcd"), cube("abdg"), cube("a~bdg"), cube("bc~d~e")]);
    }

    #[test]
    fn cses_is_xor_of_minterms() {
        let c = digit_cses();
        for x in 0..128u8 {
            let want = Minterm::digits().iter().filter(|m| m.bits == x).count() == 1;
            assert_eq!(c.eval(x), want, "{x:07b}");
        }
    }

    #[test]
    fn single_minterm_stays_alone() {
        let m = Minterm::new(0b101_0101, Some(0));
        let c = merge_minterms(&[m], &[]);
        assert_eq!(c.groups, vec![vec![m]]);
        assert_eq!(c.terms[0], vec![Term { cube: m.to_cube(), factor: None }]);
    }

    #[test]
    fn xnor_factor_for_matching_polarities() {
        let a = Minterm::new(0b111_1100, None);
        let b = Minterm::new(0b111_1111, None);
        let c = merge_minterms(&[a, b], &[]);
        assert_eq!(c.terms[0].len(), 1);
        assert_eq!(c.terms[0][0].factor, Some((5, 6, true)));
        for x in 0..128u8 {
            assert_eq!(c.eval(x), x == a.bits || x == b.bits);
        }
    }
}
