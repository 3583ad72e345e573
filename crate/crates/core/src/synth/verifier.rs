//! Segment-code verifier and segment-code-to-BCD decoder.

use std::cmp::Reverse;

use super::cses::{digit_cses, var_bit, Cses, Cube, Minterm, Term};
use crate::circuit::{Circuit, Control, WireRole};
use crate::segcode::{encode_digit, SEGMENTS, SEGMENT_NAMES};

/// Extra outputs driven from the verifier's gate stream.
#[derive(Clone, Debug, Default)]
struct Hooks {
    /// `(k, wire)`: copy the running XOR of the first `k` terms onto `wire`.
    taps: Vec<(usize, usize)>,
    /// `(cube, wire)`: XOR the cube onto `wire` where a step-output covers it.
    residuals: Vec<(Cube, usize)>,
}

fn literal_controls(inputs: &[usize; SEGMENTS], cube: Cube) -> Vec<Control> {
    cube.literals()
        .into_iter()
        .map(|(v, pos)| Control::new(inputs[v], pos))
        .collect()
}

fn transition(
    c: &mut Circuit,
    inputs: &[usize; SEGMENTS],
    anc: usize,
    from: Option<Cube>,
    to: Option<Cube>,
) {
    if from == to {
        return;
    }
    let (old, new) = match (from, to) {
        (None, Some(n)) => return c.mcx(literal_controls(inputs, n), anc),
        (Some(o), None) => return c.mcx(literal_controls(inputs, o), anc),
        (Some(o), Some(n)) => (o, n),
        (None, None) => unreachable!(),
    };
    let agree = old.care & new.care & !(old.value ^ new.value);
    let common = Cube::new(agree, old.value);
    let width = old.literal_count();
    if new.literal_count() == width && common.literal_count() + 1 == width {
        let u = (0..SEGMENTS).find(|&v| old.care & !agree & var_bit(v) != 0).unwrap();
        let w = (0..SEGMENTS).find(|&v| new.care & !agree & var_bit(v) != 0).unwrap();
        let mut ctl = literal_controls(inputs, common);
        if u == w {
            // same variable, flipped polarity
            return c.mcx(ctl, anc);
        }
        let pu = old.value & var_bit(u) != 0;
        let pw = new.value & var_bit(w) != 0;
        c.cx(inputs[u], inputs[w]);
        ctl.push(Control::new(inputs[w], pu == pw));
        c.mcx(ctl, anc);
        c.cx(inputs[u], inputs[w]);
        return;
    }
    c.mcx(literal_controls(inputs, old), anc);
    c.mcx(literal_controls(inputs, new), anc);
}

fn emit_term(
    c: &mut Circuit,
    inputs: &[usize; SEGMENTS],
    anc: usize,
    step: Option<Cube>,
    term: &Term,
    target: usize,
) {
    let mut ctl = Vec::new();
    let rest = match step {
        Some(s) if s.subsumes_literals_of(term.cube) => {
            ctl.push(Control::pos(anc));
            term.cube.without(s)
        }
        _ => term.cube,
    };
    ctl.extend(literal_controls(inputs, rest));
    match term.factor {
        None => c.mcx(ctl, target),
        Some((u, v, xnor)) => {
            c.cx(inputs[u], inputs[v]);
            ctl.push(Control::new(inputs[v], !xnor));
            c.mcx(ctl, target);
            c.cx(inputs[u], inputs[v]);
        }
    }
}

fn emit_cses(
    c: &mut Circuit,
    inputs: &[usize; SEGMENTS],
    anc: usize,
    v1: usize,
    cses: &Cses,
    hooks: &Hooks,
) {
    let mut placed = vec![false; hooks.residuals.len()];
    let mut current = None;
    let mut k = 0;
    for (group, &step) in cses.terms.iter().zip(&cses.step_outputs) {
        transition(c, inputs, anc, current, step);
        current = step;
        if let Some(s) = step {
            for (i, &(cube, wire)) in hooks.residuals.iter().enumerate() {
                if !placed[i] && s.subsumes_literals_of(cube) {
                    placed[i] = true;
                    emit_term(c, inputs, anc, step, &Term { cube, factor: None }, wire);
                }
            }
        }
        for term in group {
            emit_term(c, inputs, anc, current, term, v1);
            k += 1;
            for &(_, wire) in hooks.taps.iter().filter(|t| t.0 == k) {
                c.cx(v1, wire);
            }
        }
    }
    transition(c, inputs, anc, current, None);
    for (i, &(cube, wire)) in hooks.residuals.iter().enumerate() {
        if !placed[i] {
            c.mcx(literal_controls(inputs, cube), wire);
        }
    }
}

fn segment_inputs(c: &mut Circuit) -> [usize; SEGMENTS] {
    SEGMENT_NAMES.map(|n| c.wire(n.to_string(), WireRole::Input))
}

/// Outputs 1 on `v1` exactly for the ten digit codes.
///
/// Wires: `a..g` inputs, one step-output ancilla `anc0`, output `v1`.
pub fn build_sc_verifier() -> Circuit {
    let mut c = Circuit::new();
    let inputs = segment_inputs(&mut c);
    let anc = c.wire("anc0", WireRole::StepOutput);
    let v1 = c.wire("v1", WireRole::Output);
    emit_cses(&mut c, &inputs, anc, v1, &digit_cses(), &Hooks::default());
    c
}

/// Digits whose code satisfies `term`, as a bit set.
fn digit_set(pred: impl Fn(u8) -> bool) -> u16 {
    (0..10)
        .filter(|&d| pred(encode_digit(d).unwrap().bits()))
        .fold(0, |acc, d| acc | 1 << d)
}

/// Pairs minterms one literal apart into cubes; the rest stay whole.
fn merge_residual(set: u16) -> Vec<Cube> {
    let digits: Vec<u8> = (0..10).filter(|&d| set >> d & 1 == 1).collect();
    let codes: Vec<u8> = digits
        .iter()
        .map(|&d| encode_digit(d).unwrap().bits())
        .collect();
    let mut used = vec![false; codes.len()];
    let mut cubes = Vec::new();
    for i in 0..codes.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mate = (i + 1..codes.len()).find(|&j| !used[j] && (codes[i] ^ codes[j]).count_ones() == 1);
        match mate {
            Some(j) => {
                used[j] = true;
                cubes.push(Cube::new(0x7f & !(codes[i] ^ codes[j]), codes[i]));
            }
            None => cubes.push(Minterm::new(codes[i], None).to_cube()),
        }
    }
    cubes
}

fn toffoli_estimate(controls: u32) -> u32 {
    match controls {
        0 | 1 => 0,
        2 => 1,
        n => 4 * (n - 2),
    }
}

/// How one decoder output is assembled from verifier taps plus residual cubes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderPlan {
    /// Indices of the verifier terms whose XOR is tapped.
    pub terms: Vec<usize>,
    pub taps: Vec<usize>,
    pub residual: Vec<Cube>,
}

/// Picks the terms to tap for an output whose ones are the digits in `target`.
///
/// Minimises residual cubes, residual minterms, residual Toffoli cost and tap
/// count, in that order.
pub fn plan_decoder_output(cses: &Cses, target: u16) -> DecoderPlan {
    let terms: Vec<&Term> = cses.all_terms().collect();
    let sets: Vec<u16> = terms.iter().map(|t| digit_set(|x| t.eval(x))).collect();
    let schedule = cses.step_output_schedule();
    let n = terms.len();
    let best = (0..1u32 << n)
        .map(|mask| {
            let covered = (0..n)
                .filter(|&t| mask >> t & 1 == 1)
                .fold(0u16, |acc, t| acc ^ sets[t]);
            let residual = merge_residual(target ^ covered);
            let cost: u32 = residual
                .iter()
                .map(|&r| {
                    let lits = r.literal_count();
                    let n = if schedule.iter().any(|s| s.subsumes_literals_of(r)) {
                        lits - 3
                    } else {
                        lits
                    };
                    toffoli_estimate(n)
                })
                .sum();
            let inc = |t: usize| t < n && mask >> t & 1 == 1;
            let taps: Vec<usize> = (1..=n).filter(|&k| inc(k - 1) != inc(k)).collect();
            let key = (
                residual.len(),
                (target ^ covered).count_ones(),
                cost,
                taps.len(),
                Reverse(mask),
            );
            (key, mask, taps, residual)
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .unwrap();
    DecoderPlan {
        terms: (0..n).filter(|&t| best.1 >> t & 1 == 1).collect(),
        taps: best.2,
        residual: best.3,
    }
}

/// Digits whose 4-bit code has bit `j` set (`j` = 0 is `x1`).
pub(crate) fn bcd_target(j: usize) -> u16 {
    (0..10u16).filter(|d| d >> j & 1 == 1).fold(0, |acc, d| acc | 1 << d)
}

/// Verifier plus decoder: outputs `v1` and the digit value `x4 x3 x2 x1`.
///
/// Decoder outputs are only meaningful when `v1 = 1`; on invalid codes they
/// read 0.
pub fn build_sc_bcd() -> Circuit {
    let mut c = Circuit::new();
    let inputs = segment_inputs(&mut c);
    let anc = c.wire("anc0", WireRole::StepOutput);
    let v1 = c.wire("v1", WireRole::Output);
    let x: Vec<usize> = (1..=4).map(|j| c.wire(format!("x{j}"), WireRole::Output)).collect();
    let cses = digit_cses();
    let mut hooks = Hooks::default();
    for (j, &wire) in x.iter().enumerate().rev() {
        let plan = plan_decoder_output(&cses, bcd_target(j));
        hooks.taps.extend(plan.taps.iter().map(|&k| (k, wire)));
        hooks.residuals.extend(plan.residual.iter().map(|&r| (r, wire)));
    }
    emit_cses(&mut c, &inputs, anc, v1, &cses, &hooks);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::cost;
    use crate::segcode::{decode_segment, is_valid_sc, SegmentCode};

    // input wires are a..g = 0..6, so a code's bit for `a` goes to wire 0
    fn state_of(code: u8) -> u64 {
        (0..7).fold(0, |acc, v| acc | (((code >> (6 - v)) & 1) as u64) << v)
    }

    #[test]
    fn verifier_truth_table() {
        let c = build_sc_verifier();
        assert_eq!(c.width(), 9);
        let mut ones = 0;
        for code in 0..128u8 {
            let out = c.apply_u64(state_of(code));
            assert_eq!(out & 0x7f, state_of(code));
            assert_eq!(out >> 7 & 1, 0, "step-output left dirty");
            let v1 = out >> 8 & 1 == 1;
            assert_eq!(v1, is_valid_sc(SegmentCode::from_bits(code).unwrap()));
            ones += v1 as u32;
        }
        assert_eq!(ones, 10);
    }

    #[test]
    fn decoder_truth_table() {
        let c = build_sc_bcd();
        let v = build_sc_verifier();
        assert_eq!(c.width(), 13);
        for code in 0..128u8 {
            let out = c.apply_u64(state_of(code));
            assert_eq!(out >> 7 & 1, 0);
            assert_eq!(out >> 8 & 1, v.apply_u64(state_of(code)) >> 8 & 1);
            if let Some(d) = decode_segment(SegmentCode::from_bits(code).unwrap()) {
                assert_eq!(out >> 9, d as u64, "digit {d}");
            }
        }
        let s8 = c.apply_u64(state_of(0b111_1111));
        assert_eq!(s8 >> 8, 0b10001);
        let s7 = c.apply_u64(state_of(0b111_0000));
        assert_eq!(s7 >> 9, 0b0111);
    }

    #[test]
    fn decoder_plans_reuse_verifier_terms() {
        let cses = digit_cses();
        // x4 is exactly the first group
        let x4 = plan_decoder_output(&cses, bcd_target(3));
        assert_eq!(x4.terms, vec![0]);
        assert!(x4.residual.is_empty());
        for j in 0..4 {
            let plan = plan_decoder_output(&cses, bcd_target(j));
            assert!(plan.residual.len() <= 2);
        }
    }

    #[test]
    fn costs_near_reference() {
        let v = cost(&build_sc_verifier());
        assert_eq!((v.n_input, v.n_ancilla, v.n_output, v.n_total_qubits), (7, 1, 1, 9));
        let b = cost(&build_sc_bcd());
        assert_eq!(b.n_total_qubits, 13);
        assert!(b.n_toffoli - v.n_toffoli <= 40, "{b:?} vs {v:?}");
    }
}
