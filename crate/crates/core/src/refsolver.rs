//! Brute-force classical solver used as ground truth for the oracle.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::circuit::LANES;
use crate::oracle::{ConstraintSpec, Extra, OracleArtifact};
use crate::register::{InputLayout, SearchRegister};
use crate::segcode::{
    encode_digit, KBudget, OperatorCode, PuzzleConfig, SegmentCode, K_BITS,
};

/// Value of a number spread over `displays`, most significant first.
fn number(codes: &[SegmentCode], displays: &[usize]) -> Option<u32> {
    displays
        .iter()
        .try_fold(0u32, |acc, &d| Some(acc * 10 + u32::from(codes[d].digit()?)))
}

/// Whether candidate `x` satisfies every constraint of `spec`.
pub fn satisfies(puzzle: &PuzzleConfig, spec: &ConstraintSpec, layout: &InputLayout, x: u64) -> bool {
    let dec = layout.decode(x);
    if !dec.displays.iter().all(|d| d.is_valid()) {
        return false;
    }
    let enc = &puzzle.encoding;
    for (slot, code) in dec.operators.iter().enumerate() {
        let Some(op) = enc.operator_of(code.code) else { return false };
        if spec.equation.as_ref().is_some_and(|e| e.operator == slot) && !op.is_arithmetic() {
            return false;
        }
    }
    if let Some(eq) = &spec.equation {
        let op = enc.operator_of(dec.operators[eq.operator].code).unwrap();
        let (Some(a), Some(b), Some(r)) = (
            number(&dec.displays, &eq.left),
            number(&dec.displays, &eq.right),
            number(&dec.displays, &eq.result),
        ) else {
            return false;
        };
        if op.apply(a, b) != Some(r) {
            return false;
        }
    }
    let hd = ((x ^ layout.initial(puzzle)) & layout.hd_mask()).count_ones();
    let k = match puzzle.k_budget {
        KBudget::Fixed(k) => k,
        KBudget::Search => dec.k.unwrap(),
    };
    if !puzzle.k_admits(hd, k) {
        return false;
    }
    spec.extras.iter().all(|e| match e {
        Extra::ConserveMatchsticks => {
            crate::segcode::matchsticks_of(&dec.displays, &dec.operators, enc) == puzzle.matchsticks()
        }
        Extra::DisplayUnchanged(d) => dec.displays[*d] == puzzle.displays[*d],
    })
}

/// Solutions as candidates in input order, sorted by bit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub layout: InputLayout,
    pub candidates: Vec<u64>,
}

impl SolutionSet {
    fn new(layout: InputLayout, mut candidates: Vec<u64>) -> Self {
        candidates.sort_by_key(|&x| layout.bit_string(x));
        candidates.dedup();
        SolutionSet { layout, candidates }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.candidates.contains(&x)
    }

    /// Tab-separated `bits`, `equation`, `hd`, `k` rows with a header.
    pub fn to_tsv(&self, puzzle: &PuzzleConfig, spec: &ConstraintSpec) -> String {
        let mut s = String::from("bits\tequation\thd\tk\n");
        let initial = self.layout.initial(puzzle);
        for &x in &self.candidates {
            let hd = ((x ^ initial) & self.layout.hd_mask()).count_ones();
            let k = match puzzle.k_budget {
                KBudget::Fixed(k) => k,
                KBudget::Search => self.layout.decode(x).k.unwrap_or(0),
            };
            let _ = writeln!(
                s,
                "{}\t{}\t{hd}\t{k}",
                self.layout.bit_string(x),
                render_candidate(puzzle, spec, &self.layout, x)
            );
        }
        s
    }
}

/// Displays and operators of a candidate as text, laid out as
/// `left op right=result` when the spec has an equation. Displays that show
/// no digit print as `?`, unnamed operator codes as `#`.
pub fn render_candidate(puzzle: &PuzzleConfig, spec: &ConstraintSpec, layout: &InputLayout, x: u64) -> String {
    let dec = layout.decode(x);
    let digit = |d: usize| dec.displays[d].digit().map_or('?', |v| char::from(b'0' + v));
    let op = |s: usize| {
        puzzle
            .encoding
            .operator_of(dec.operators[s].code)
            .map_or('#', |o| o.symbol())
    };
    match &spec.equation {
        Some(eq) => {
            let mut s: String = eq.left.iter().map(|&d| digit(d)).collect();
            s.push(op(eq.operator));
            s.extend(eq.right.iter().map(|&d| digit(d)));
            s.push('=');
            s.extend(eq.result.iter().map(|&d| digit(d)));
            s
        }
        None => {
            let mut s: String = (0..layout.displays).map(digit).collect();
            if layout.op_slots > 0 {
                s.push(' ');
                s.extend((0..layout.op_slots).map(op));
            }
            s
        }
    }
}

/// Exhaustive check of every candidate the register admits.
pub fn solve_register(
    puzzle: &PuzzleConfig,
    spec: &ConstraintSpec,
    register: &SearchRegister,
) -> Result<SolutionSet> {
    spec.validate(puzzle)?;
    let layout = InputLayout::of(puzzle)?;
    if register.width != layout.width() {
        return domain(format!(
            "register has {} bits, puzzle has {}",
            register.width,
            layout.width()
        ));
    }
    if register.n_free() > 36 {
        return Err(crate::Error::Capacity(format!(
            "{} free bits are too many for exhaustive search",
            register.n_free()
        )));
    }
    let found: Vec<u64> = (0..1u64 << register.n_free())
        .into_par_iter()
        .map(|r| register.candidate(r))
        .filter(|&x| satisfies(puzzle, spec, &layout, x))
        .collect();
    Ok(SolutionSet::new(layout, found))
}

/// All solutions, enumerating only digit codes and named operator codes.
pub fn solve_classical(puzzle: &PuzzleConfig, spec: &ConstraintSpec) -> Result<SolutionSet> {
    spec.validate(puzzle)?;
    let layout = InputLayout::of(puzzle)?;
    let digits: Vec<SegmentCode> = (0..10).map(|d| encode_digit(d).unwrap()).collect();
    let ops: Vec<OperatorCode> = puzzle
        .encoding
        .entries()
        .iter()
        .map(|&(_, code)| OperatorCode {
            code,
            width: puzzle.encoding.width(),
        })
        .collect();
    let ks: Vec<Option<u8>> = match puzzle.k_budget {
        KBudget::Fixed(_) => vec![None],
        KBudget::Search => (0..1u8 << K_BITS).map(Some).collect(),
    };
    let m = layout.displays;
    let n_ops = layout.op_slots;
    let total = 10u64.pow(m as u32) * (ops.len() as u64).pow(n_ops as u32) * ks.len() as u64;
    let found: Vec<u64> = (0..total)
        .into_par_iter()
        .filter_map(|mut i| {
            let k = ks[(i % ks.len() as u64) as usize];
            i /= ks.len() as u64;
            let mut o = Vec::with_capacity(n_ops);
            for _ in 0..n_ops {
                o.push(ops[(i % ops.len() as u64) as usize]);
                i /= ops.len() as u64;
            }
            let mut d = Vec::with_capacity(m);
            for _ in 0..m {
                d.push(digits[(i % 10) as usize]);
                i /= 10;
            }
            let x = layout.encode(&d, &o, k);
            satisfies(puzzle, spec, &layout, x).then_some(x)
        })
        .collect();
    Ok(SolutionSet::new(layout, found))
}

/// Smallest fixed K with at least one solution, with those solutions.
pub fn solve_min_k(puzzle: &PuzzleConfig, spec: &ConstraintSpec) -> Result<Option<(u8, SolutionSet)>> {
    for k in 0..1u8 << K_BITS {
        let mut p = puzzle.clone();
        p.k_budget = KBudget::Fixed(k);
        let s = solve_classical(&p, spec)?;
        if !s.is_empty() {
            return Ok(Some((k, s)));
        }
    }
    Ok(None)
}

/// Outcome of comparing a compiled oracle with [`satisfies`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub exhaustive: bool,
    pub checked: u64,
    pub marked: u64,
    /// Candidates on which the two disagree, at most the first 16.
    pub mismatches: Vec<u64>,
    pub mismatch_count: u64,
}

/// Free-bit count up to which [`cross_check`] sweeps the whole register.
pub const EXHAUSTIVE_LIMIT: usize = 22;

/// Compares the oracle with the reference predicate on every candidate of
/// `register` when it has at most [`EXHAUSTIVE_LIMIT`] free bits, otherwise
/// on `samples` random candidates drawn with `seed`. Ancilla restoration is
/// checked on every evaluation.
pub fn cross_check(art: &OracleArtifact, register: &SearchRegister, samples: u64, seed: u64) -> Result<CrossCheck> {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let n = register.n_free();
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let total = if exhaustive { 1u64 << n } else { samples };
    let blocks = total.div_ceil(LANES as u64);
    let results: Vec<(u64, Vec<u64>, u64)> = (0..blocks)
        .into_par_iter()
        .map(|blk| {
            let lo = blk * LANES as u64;
            let hi = (lo + LANES as u64).min(total);
            let cands: Vec<u64> = if exhaustive {
                (lo..hi).map(|r| register.candidate(r)).collect()
            } else {
                let mut rng = StdRng::seed_from_u64(seed ^ blk.wrapping_mul(0x9e37_79b9_7f4a_7c15));
                (lo..hi)
                    .map(|_| register.candidate(rng.gen::<u64>() & crate::register::mask(n)))
                    .collect()
            };
            let out = art.evaluate_lanes(&cands)?;
            let mut bad = Vec::new();
            for (j, &x) in cands.iter().enumerate() {
                if (out >> j & 1 == 1) != satisfies(&art.puzzle, &art.spec, &art.layout, x) {
                    bad.push(x);
                }
            }
            Ok((out.count_ones() as u64, bad, hi - lo))
        })
        .collect::<Result<_>>()?;
    let mut report = CrossCheck {
        exhaustive,
        checked: 0,
        marked: 0,
        mismatches: Vec::new(),
        mismatch_count: 0,
    };
    for (marked, bad, checked) in results {
        report.checked += checked;
        report.marked += marked;
        report.mismatch_count += bad.len() as u64;
        report.mismatches.extend(bad.into_iter().take(16 - report.mismatches.len().min(16)));
    }
    report.mismatches.truncate(16);
    Ok(report)
}
