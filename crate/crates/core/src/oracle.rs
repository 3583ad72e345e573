//! Compilation of a puzzle into one Boolean oracle circuit.
//!
//! The input register holds a candidate final configuration. The oracle
//! decodes every display, checks the equation, counts the segments that
//! differ from the initial configuration and compares that count with the K
//! budget. All condition bits are ANDed into `out` and every intermediate
//! value is then uncomputed by replaying the compute stage in reverse.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{cost, AncillaPool, BitSliced, Circuit, Control, QuantumCost, WireRole, LANES};
use crate::error::{domain, Error, Result};
use crate::register::{InputLayout, SearchRegister};
use crate::segcode::{KBudget, KMode, Operator, PuzzleConfig, SEGMENTS};
use crate::synth::{
    build_sc_bcd, build_sc_verifier, build_tdn_generator, const_bits, count_width, emit_add_sub,
    emit_equality, emit_greater, emit_popcount, wire_bits, Bit,
};

/// Which displays form the equation `left op right = result`.
/// Numbers list their displays most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationShape {
    pub left: Vec<usize>,
    pub operator: usize,
    pub right: Vec<usize>,
    pub result: Vec<usize>,
}

impl EquationShape {
    /// The common `d op d = dd` layout over four displays.
    pub fn two_addends_two_digit_sum() -> Self {
        EquationShape {
            left: vec![0],
            operator: 0,
            right: vec![1],
            result: vec![2, 3],
        }
    }

    pub fn displays(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.iter().chain(&self.right).chain(&self.result).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extra {
    /// Lit segments plus operator weights equal those of the initial state.
    ConserveMatchsticks,
    /// The display keeps its initial code.
    DisplayUnchanged(usize),
}

/// Conditions the oracle checks beyond display validity and the K budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub equation: Option<EquationShape>,
    pub extras: Vec<Extra>,
}

impl ConstraintSpec {
    pub fn new(equation: Option<EquationShape>) -> Self {
        ConstraintSpec {
            equation,
            extras: Vec::new(),
        }
    }

    /// Spec for `puzzle` with matchstick conservation taken from its flag.
    pub fn for_puzzle(puzzle: &PuzzleConfig, equation: Option<EquationShape>) -> Self {
        let mut s = ConstraintSpec::new(equation);
        if puzzle.conserve_matchsticks {
            s.extras.push(Extra::ConserveMatchsticks);
        }
        s
    }

    pub fn with_extra(mut self, extra: Extra) -> Self {
        if !self.extras.contains(&extra) {
            self.extras.push(extra);
        }
        self
    }

    pub fn conserves(&self) -> bool {
        self.extras.contains(&Extra::ConserveMatchsticks)
    }

    pub fn validate(&self, puzzle: &PuzzleConfig) -> Result<()> {
        puzzle.validate()?;
        let m = puzzle.displays.len();
        if let Some(eq) = &self.equation {
            if eq.left.is_empty() || eq.right.is_empty() || eq.result.is_empty() {
                return domain("every number of the equation needs a display");
            }
            if let Some(d) = eq.displays().find(|&d| d >= m) {
                return domain(format!("equation names display {d}, puzzle has {m}"));
            }
            if eq.operator >= puzzle.operators.len() {
                return domain(format!("equation names operator slot {}", eq.operator));
            }
        }
        for e in &self.extras {
            if let Extra::DisplayUnchanged(d) = e {
                if *d >= m {
                    return domain(format!("extra names display {d}, puzzle has {m}"));
                }
            }
        }
        Ok(())
    }
}

/// A compiled oracle with its wire map and cost.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleArtifact {
    pub circuit: Circuit,
    pub layout: InputLayout,
    /// Input wires in register order; these are wires `0..n` of the circuit.
    pub input_wires: Vec<usize>,
    pub ancilla_wires: Vec<usize>,
    pub output_wire: usize,
    pub cost: QuantumCost,
    pub puzzle: PuzzleConfig,
    pub spec: ConstraintSpec,
    #[serde(skip)]
    program: Option<BitSliced>,
}

/// Machine-readable description written next to a netlist.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub schema: String,
    pub inputs: Vec<String>,
    pub ancilla: Vec<String>,
    pub output: String,
    pub cost: QuantumCost,
    pub puzzle: PuzzleConfig,
    pub spec: ConstraintSpec,
}

pub const SIDECAR_SCHEMA: &str = "segrover-oracle/1";

impl OracleArtifact {
    pub fn sidecar(&self) -> Sidecar {
        let name = |w: usize| self.circuit.wires()[w].name.clone();
        Sidecar {
            schema: SIDECAR_SCHEMA.into(),
            inputs: self.input_wires.iter().map(|&w| name(w)).collect(),
            ancilla: self.ancilla_wires.iter().map(|&w| name(w)).collect(),
            output: name(self.output_wire),
            cost: self.cost,
            puzzle: self.puzzle.clone(),
            spec: self.spec.clone(),
        }
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(&self.sidecar()).expect("plain data serializes")
    }

    pub fn n_inputs(&self) -> usize {
        self.input_wires.len()
    }

    fn program(&self) -> std::borrow::Cow<'_, BitSliced> {
        match &self.program {
            Some(p) => std::borrow::Cow::Borrowed(p),
            None => std::borrow::Cow::Owned(BitSliced::new(&self.circuit)),
        }
    }

    /// Oracle outputs for up to 64 candidates, checking that every ancilla
    /// returns to zero and every input is preserved.
    pub fn evaluate_lanes(&self, candidates: &[u64]) -> Result<u64> {
        assert!(candidates.len() <= LANES);
        let prog = self.program();
        let mut lanes = vec![0u64; self.circuit.width()];
        for (j, &x) in candidates.iter().enumerate() {
            for (i, lane) in lanes.iter_mut().enumerate().take(self.n_inputs()) {
                *lane |= (x >> i & 1) << j;
            }
        }
        let before: Vec<u64> = lanes[..self.n_inputs()].to_vec();
        prog.run(&mut lanes);
        let used = if candidates.len() == LANES {
            !0
        } else {
            (1u64 << candidates.len()) - 1
        };
        if let Some(&w) = self.ancilla_wires.iter().find(|&&w| lanes[w] & used != 0) {
            return Err(Error::Internal(format!(
                "ancilla '{}' not restored",
                self.circuit.wires()[w].name
            )));
        }
        if lanes[..self.n_inputs()] != before[..] {
            return Err(Error::Internal("oracle modified its input register".into()));
        }
        Ok(lanes[self.output_wire] & used)
    }

    /// Register indices whose candidate the oracle marks, in ascending order.
    pub fn marked(&self, register: &SearchRegister) -> Result<Vec<u64>> {
        if register.width != self.n_inputs() {
            return domain(format!(
                "register has {} bits, oracle has {} inputs",
                register.width,
                self.n_inputs()
            ));
        }
        if register.n_free() >= 40 {
            return Err(Error::Capacity(format!("{} free bits cannot be swept", register.n_free())));
        }
        let total = 1u64 << register.n_free();
        let blocks = total.div_ceil(LANES as u64);
        let found: Result<Vec<Vec<u64>>> = (0..blocks)
            .into_par_iter()
            .map(|blk| {
                let lo = blk * LANES as u64;
                let hi = (lo + LANES as u64).min(total);
                let cands: Vec<u64> = (lo..hi).map(|r| register.candidate(r)).collect();
                let hits = self.evaluate_lanes(&cands)?;
                Ok((0..cands.len() as u64)
                    .filter(|j| hits >> j & 1 == 1)
                    .map(|j| lo + j)
                    .collect())
            })
            .collect();
        Ok(found?.into_iter().flatten().collect())
    }
}

/// Runs the oracle on one candidate given as bits in register order.
pub fn evaluate_oracle(art: &OracleArtifact, candidate: &[bool]) -> Result<bool> {
    if candidate.len() != art.n_inputs() {
        return domain(format!(
            "candidate has {} bits, oracle has {} inputs",
            candidate.len(),
            art.n_inputs()
        ));
    }
    let x = candidate
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
    Ok(art.evaluate_lanes(&[x])? & 1 == 1)
}

struct Builder {
    c: Circuit,
    pool: AncillaPool,
}

impl Builder {
    fn place(&mut self, component: &Circuit, bind: &[(&str, usize)]) -> Vec<(String, usize)> {
        let mut map = Vec::with_capacity(component.width());
        let mut fresh = Vec::new();
        for w in component.wires() {
            match bind.iter().find(|(n, _)| *n == w.name) {
                Some(&(_, target)) => map.push(target),
                None => {
                    debug_assert!(w.role != WireRole::Input, "unbound input {}", w.name);
                    let t = self.pool.take(&mut self.c);
                    fresh.push((w.name.clone(), t, w.role));
                    map.push(t);
                }
            }
        }
        self.c.append_mapped(component, &map);
        let mut outs = Vec::new();
        for (name, t, role) in fresh {
            if role.is_scratch() {
                self.pool.give(t);
            } else {
                outs.push((name, t));
            }
        }
        outs
    }

    fn output(outs: &[(String, usize)], name: &str) -> usize {
        outs.iter().find(|(n, _)| n == name).expect("component output").1
    }

    /// `flag ^= [wires == value]` bit by bit.
    fn match_const(&mut self, wires: &[usize], value: u64) -> Vec<Control> {
        wires
            .iter()
            .enumerate()
            .map(|(i, &w)| Control::new(w, value >> i & 1 == 1))
            .collect()
    }
}

/// Compiles `puzzle` under `spec` into an oracle.
pub fn compile_oracle(puzzle: &PuzzleConfig, spec: &ConstraintSpec) -> Result<OracleArtifact> {
    spec.validate(puzzle)?;
    let layout = InputLayout::of(puzzle)?;
    let mut b = Builder {
        c: Circuit::new(),
        pool: AncillaPool::new(),
    };
    let inputs: Vec<usize> = layout
        .names()
        .into_iter()
        .map(|n| b.c.wire(n, WireRole::Input))
        .collect();
    let out = b.c.wire("out", WireRole::Output);
    let seg = |d: usize| -> [usize; SEGMENTS] {
        std::array::from_fn(|v| inputs[layout.segment_offset(d) + v])
    };
    let op_wires = |s: usize| -> Vec<usize> {
        // least significant first
        (0..layout.op_width)
            .rev()
            .map(|i| inputs[layout.op_offset(s) + i])
            .collect()
    };
    let mut conditions: Vec<Control> = Vec::new();

    // displays: validity and, where the equation needs them, digit values
    let verifier = build_sc_verifier();
    let decoder = build_sc_bcd();
    let mut digits: Vec<Option<Vec<usize>>> = vec![None; layout.displays];
    let in_equation: Vec<bool> = (0..layout.displays)
        .map(|d| spec.equation.as_ref().is_some_and(|e| e.displays().any(|x| x == d)))
        .collect();
    for d in 0..layout.displays {
        let s = seg(d);
        let bind: Vec<(&str, usize)> = ["a", "b", "c", "d", "e", "f", "g"]
            .iter()
            .zip(s)
            .map(|(&n, w)| (n, w))
            .collect();
        if in_equation[d] {
            let outs = b.place(&decoder, &bind);
            conditions.push(Control::pos(Builder::output(&outs, "v1")));
            digits[d] = Some((1..=4).map(|j| Builder::output(&outs, &format!("x{j}"))).collect());
        } else {
            let outs = b.place(&verifier, &bind);
            conditions.push(Control::pos(Builder::output(&outs, "v1")));
        }
    }

    // operator slots: equation slot must be + or -, others any named code
    let enc = &puzzle.encoding;
    for slot in 0..layout.op_slots {
        let ops = op_wires(slot);
        let is_eq_slot = spec.equation.as_ref().is_some_and(|e| e.operator == slot);
        let valid: Vec<u8> = enc
            .entries()
            .iter()
            .filter(|(op, _)| !is_eq_slot || op.is_arithmetic())
            .map(|&(op, code)| {
                if is_eq_slot && !matches!(op, Operator::Plus | Operator::Minus) {
                    Err(Error::Unsupported(format!("no circuit for operator '{op}'")))
                } else {
                    Ok(code)
                }
            })
            .collect::<Result<_>>()?;
        if valid.len() == 1 << layout.op_width {
            continue;
        }
        let flag = b.pool.take(&mut b.c);
        for code in valid {
            let ctl = b.match_const(&ops, code.into());
            b.c.mcx(ctl, flag);
        }
        conditions.push(Control::pos(flag));
    }

    if let Some(eq) = &spec.equation {
        let number = |b: &mut Builder, ds: &[usize]| -> Result<Vec<usize>> {
            match ds {
                [d] => Ok(digits[*d].clone().unwrap()),
                [t, u] => {
                    let tdn = build_tdn_generator();
                    let x = digits[*t].clone().unwrap();
                    let y = digits[*u].clone().unwrap();
                    let names: Vec<String> = (1..=4)
                        .map(|j| format!("x{j}"))
                        .chain((1..=4).map(|j| format!("y{j}")))
                        .collect();
                    let bind: Vec<(&str, usize)> = names
                        .iter()
                        .map(|n| n.as_str())
                        .zip(x.iter().chain(&y).copied())
                        .collect();
                    let outs = b.place(&tdn, &bind);
                    Ok((1..=8).map(|j| Builder::output(&outs, &format!("z{j}"))).collect())
                }
                _ => Err(Error::Unsupported(format!(
                    "numbers of {} digits have no decoder",
                    ds.len()
                ))),
            }
        };
        let mut left = number(&mut b, &eq.left)?;
        let mut right = number(&mut b, &eq.right)?;
        let result = number(&mut b, &eq.result)?;
        let w = left.len().max(right.len());
        for v in [&mut left, &mut right] {
            while v.len() < w {
                let z = b.pool.take(&mut b.c);
                v.push(z);
            }
        }
        let minus = match enc.code_of(Operator::Minus) {
            Some(code) => {
                let m = b.pool.take(&mut b.c);
                let ctl = b.match_const(&op_wires(eq.operator), code.into());
                b.c.mcx(ctl, m);
                Some(m)
            }
            None => None,
        };
        let sum = b.pool.take_n(&mut b.c, w + 1);
        emit_add_sub(&mut b.c, &left, &right, &sum, minus);
        let eqf = b.pool.take(&mut b.c);
        emit_equality(&mut b.c, &wire_bits(&sum), &wire_bits(&result), eqf);
        conditions.push(Control::pos(eqf));
        if let Some(m) = minus {
            // a borrow means the difference is negative
            let borrow = b.pool.take(&mut b.c);
            b.c.ccx(m, sum[w], borrow);
            conditions.push(Control::neg(borrow));
        }
    }

    // Hamming distance to the initial configuration
    let initial = layout.initial(puzzle);
    let hd_bits: Vec<usize> = (0..layout.k_offset()).map(|i| inputs[i]).collect();
    let flips: Vec<usize> = hd_bits.iter().copied().filter(|&i| initial >> i & 1 == 1).collect();
    for &w in &flips {
        b.c.x(w);
    }
    let hd = emit_popcount(&mut b.c, &mut b.pool, &hd_bits);
    for &w in &flips {
        b.c.x(w);
    }
    let factor = usize::from(puzzle.hd_factor);
    match puzzle.k_budget {
        KBudget::Fixed(k) => {
            let bound = (factor * k as usize) as u64;
            let kf = b.pool.take(&mut b.c);
            match puzzle.k_mode {
                KMode::Exact => {
                    let width = hd.len().max(count_width(bound as usize));
                    emit_equality(&mut b.c, &wire_bits(&hd), &const_bits(bound, width), kf);
                }
                KMode::AtMost => {
                    if bound + 1 >= 1 << hd.len() {
                        b.c.x(kf);
                    } else {
                        // hd < bound + 1, as disjoint prefix terms
                        let t = bound + 1;
                        for i in (0..hd.len()).rev().filter(|&i| t >> i & 1 == 1) {
                            let mut ctl: Vec<Control> = (i + 1..hd.len())
                                .map(|j| Control::new(hd[j], t >> j & 1 == 1))
                                .collect();
                            ctl.push(Control::neg(hd[i]));
                            b.c.mcx(ctl, kf);
                        }
                    }
                }
            }
            conditions.push(Control::pos(kf));
        }
        KBudget::Search => {
            let kw: Vec<usize> = (0..layout.k_bits).map(|i| inputs[layout.k_offset() + i]).collect();
            let mut scaled: Vec<Bit> = vec![Bit::Const(false); factor - 1];
            scaled.extend(wire_bits(&kw));
            match puzzle.k_mode {
                KMode::Exact => {
                    let kf = b.pool.take(&mut b.c);
                    emit_equality(&mut b.c, &wire_bits(&hd), &scaled, kf);
                    conditions.push(Control::pos(kf));
                }
                KMode::AtMost => {
                    let w = hd.len().max(scaled.len());
                    let wire_of = |b: &mut Builder, bit: Option<&Bit>| match bit {
                        Some(Bit::Wire(x)) => *x,
                        _ => b.pool.take(&mut b.c),
                    };
                    let hd_bits: Vec<Bit> = wire_bits(&hd);
                    let lhs: Vec<usize> = (0..w).map(|i| wire_of(&mut b, hd_bits.get(i))).collect();
                    let rhs: Vec<usize> = (0..w).map(|i| wire_of(&mut b, scaled.get(i))).collect();
                    let carry = b.pool.take(&mut b.c);
                    let gt = b.pool.take(&mut b.c);
                    emit_greater(&mut b.c, &lhs, &rhs, carry, gt);
                    b.pool.give(carry);
                    conditions.push(Control::neg(gt));
                }
            }
        }
    }

    for extra in &spec.extras {
        let flag = b.pool.take(&mut b.c);
        match extra {
            Extra::ConserveMatchsticks => {
                let segs: Vec<usize> = (0..layout.displays * SEGMENTS).map(|i| inputs[i]).collect();
                let pop = emit_popcount(&mut b.c, &mut b.pool, &segs);
                let total = u64::from(puzzle.matchsticks());
                let slot_bits = layout.op_slots * layout.op_width;
                for combo in 0..1u64 << slot_bits {
                    let weight: u64 = (0..layout.op_slots)
                        .map(|s| {
                            let code = (combo >> (s * layout.op_width)) as u8 & ((1 << layout.op_width) - 1) as u8;
                            enc.operator_of(code).map_or(0, |op| u64::from(enc.weight(op)))
                        })
                        .sum();
                    let Some(need) = total.checked_sub(weight) else { continue };
                    if need >= 1 << pop.len() {
                        continue;
                    }
                    let mut ctl = Vec::new();
                    for s in 0..layout.op_slots {
                        let code = combo >> (s * layout.op_width) & ((1 << layout.op_width) - 1);
                        ctl.extend(b.match_const(&op_wires(s), code));
                    }
                    ctl.extend(b.match_const(&pop, need));
                    b.c.mcx(ctl, flag);
                }
            }
            Extra::DisplayUnchanged(d) => {
                let s = seg(*d);
                let code = puzzle.displays[*d];
                let ctl: Vec<Control> = (0..SEGMENTS).map(|v| Control::new(s[v], code.segment(v))).collect();
                b.c.mcx(ctl, flag);
            }
        }
        conditions.push(Control::pos(flag));
    }

    let compute: Vec<_> = b.c.gates().to_vec();
    if conditions.is_empty() {
        b.c.x(out);
    } else {
        b.c.mcx(conditions, out);
    }
    b.c.extend_gates(compute.into_iter().rev());

    let circuit = b.c;
    let ancilla_wires = circuit.wires_with_role(WireRole::Ancilla);
    let program = Some(BitSliced::new(&circuit));
    Ok(OracleArtifact {
        cost: cost(&circuit),
        layout,
        input_wires: inputs,
        ancilla_wires,
        output_wire: out,
        puzzle: puzzle.clone(),
        spec: spec.clone(),
        circuit,
        program,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refsolver::{satisfies, solve_classical};
    use crate::segcode::{encode_digit, OperatorEncoding};

    fn puzzle(digits: [u8; 4], op: Operator) -> PuzzleConfig {
        PuzzleConfig::new(
            digits.iter().map(|&d| encode_digit(d).unwrap()).collect(),
            vec![OperatorEncoding::standard().encode(op).unwrap()],
        )
    }

    fn eq_spec(p: &PuzzleConfig) -> ConstraintSpec {
        ConstraintSpec::for_puzzle(p, Some(EquationShape::two_addends_two_digit_sum()))
    }

    fn variants() -> Vec<PuzzleConfig> {
        let mut out = Vec::new();
        for (digits, op) in [([5, 9, 0, 6], Operator::Plus), ([8, 3, 0, 6], Operator::Minus)] {
            for (budget, mode, factor, conserve) in [
                (KBudget::Fixed(1), KMode::Exact, 1, false),
                (KBudget::Fixed(2), KMode::AtMost, 1, false),
                (KBudget::Fixed(1), KMode::Exact, 2, true),
                (KBudget::Search, KMode::Exact, 2, true),
                (KBudget::Search, KMode::AtMost, 1, false),
            ] {
                let mut p = puzzle(digits, op);
                p.k_budget = budget;
                p.k_mode = mode;
                p.hd_factor = factor;
                p.conserve_matchsticks = conserve;
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn shape_of_the_standard_oracle() {
        let mut p = puzzle([5, 9, 0, 6], Operator::Plus);
        p.k_budget = KBudget::Search;
        let art = compile_oracle(&p, &eq_spec(&p)).unwrap();
        assert_eq!(art.n_inputs(), 33);
        assert_eq!(art.cost.n_input, 33);
        assert_eq!(art.cost.n_output, 1);
        assert_eq!(
            art.cost.n_total_qubits,
            art.cost.n_input + art.cost.n_ancilla + art.cost.n_output
        );
        assert!(!evaluate_oracle(&art, &[false; 33]).unwrap());
    }

    #[test]
    fn matches_reference_on_restricted_registers() {
        for p in variants() {
            let spec = eq_spec(&p);
            let art = compile_oracle(&p, &spec).unwrap();
            let l = &art.layout;
            let initial = l.initial(&p);
            // searching displays 1 and 3 plus operator and K bits
            let reg = SearchRegister::full(l.width())
                .fixing(l.display_mask(0) | l.display_mask(2), initial);
            assert!(reg.n_free() <= 22);
            let marked = art.marked(&reg).unwrap();
            let expect: Vec<u64> = (0..1u64 << reg.n_free())
                .filter(|&r| satisfies(&p, &spec, l, reg.candidate(r)))
                .collect();
            assert_eq!(marked, expect, "{p:?}");
        }
    }

    #[test]
    fn matches_reference_on_sampled_and_solution_candidates() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for p in variants() {
            let spec = eq_spec(&p);
            let art = compile_oracle(&p, &spec).unwrap();
            let l = &art.layout;
            let mut cands: Vec<u64> = solve_classical(&p, &spec).unwrap().candidates;
            let n_sol = cands.len();
            let initial = l.initial(&p);
            // near the initial state the predicate is far from constant
            for _ in 0..6_000 {
                let flips = (0..3).fold(0u64, |acc, _| acc | 1 << rng.gen_range(0..l.width()));
                cands.push(initial ^ flips);
                cands.push(rng.gen::<u64>() & crate::register::mask(l.width()));
            }
            let mut hits = 0;
            for chunk in cands.chunks(LANES) {
                let out = art.evaluate_lanes(chunk).unwrap();
                for (j, &x) in chunk.iter().enumerate() {
                    let want = satisfies(&p, &spec, l, x);
                    assert_eq!(out >> j & 1 == 1, want, "{}", l.bit_string(x));
                    hits += want as usize;
                }
            }
            assert!(hits >= n_sol);
        }
    }

    #[test]
    fn display_unchanged_and_invalid_inputs() {
        let mut p = puzzle([5, 9, 0, 6], Operator::Plus);
        p.k_budget = KBudget::Fixed(3);
        p.k_mode = KMode::AtMost;
        let spec = eq_spec(&p).with_extra(Extra::DisplayUnchanged(2));
        let art = compile_oracle(&p, &spec).unwrap();
        let l = &art.layout;
        let sols = solve_classical(&p, &spec).unwrap();
        assert!(!sols.is_empty());
        for &x in &sols.candidates {
            assert_eq!(x & l.display_mask(2), l.initial(&p) & l.display_mask(2));
            assert_eq!(art.evaluate_lanes(&[x]).unwrap(), 1);
            // invalid code on display 0
            assert_eq!(art.evaluate_lanes(&[x & !l.display_mask(0)]).unwrap(), 0);
            // operator code 11 names nothing
            assert_eq!(art.evaluate_lanes(&[x | l.op_mask()]).unwrap(), 0);
        }
    }

    #[test]
    fn unsupported_and_invalid_specs() {
        let enc = OperatorEncoding::new(2, vec![(Operator::Plus, 0), (Operator::Times, 1)]).unwrap();
        let mut p = puzzle([2, 3, 0, 6], Operator::Plus);
        p.encoding = enc;
        assert!(matches!(compile_oracle(&p, &eq_spec(&p)), Err(Error::Unsupported(_))));
        let p = puzzle([2, 3, 0, 6], Operator::Plus);
        let bad = ConstraintSpec::new(Some(EquationShape {
            left: vec![0],
            operator: 0,
            right: vec![1],
            result: vec![7],
        }));
        assert!(matches!(compile_oracle(&p, &bad), Err(Error::Domain(_))));
        let three = ConstraintSpec::new(Some(EquationShape {
            left: vec![0],
            operator: 0,
            right: vec![1],
            result: vec![1, 2, 3],
        }));
        assert!(matches!(compile_oracle(&p, &three), Err(Error::Unsupported(_))));
    }

    #[test]
    fn deterministic_netlist_and_sidecar() {
        let p = puzzle([5, 9, 0, 6], Operator::Plus);
        let a = compile_oracle(&p, &eq_spec(&p)).unwrap();
        let b = compile_oracle(&p, &eq_spec(&p)).unwrap();
        assert_eq!(a.circuit.to_string(), b.circuit.to_string());
        let v: serde_json::Value = serde_json::from_str(&a.sidecar_json()).unwrap();
        assert_eq!(v["schema"], SIDECAR_SCHEMA);
        assert_eq!(v["inputs"].as_array().unwrap().len(), 30);
        assert_eq!(v["output"], "out");
    }
}
