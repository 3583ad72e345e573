//! Lowering of multi-controlled gates to the {NOT, CNOT, Toffoli} basis.

use serde::{Deserialize, Serialize};

use super::{Circuit, Control, Gate, WireRole};
use crate::error::{Error, Result};

/// How gates with three or more controls are broken up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoweringPolicy {
    /// Borrow idle wires in any state; `4(n-2)` Toffolis per gate.
    #[default]
    Borrow,
    /// Toffoli ladder on fresh zeroed ancilla; `2(n-2)+1` Toffolis per gate.
    Clean,
}

fn ladder_circuit(n: usize, available: usize, keep: Option<usize>) -> Result<Circuit> {
    let need = n.saturating_sub(2);
    if available < need {
        return Err(Error::Capacity(format!(
            "{n}-control gate needs {need} ancilla, {available} available"
        )));
    }
    let mut c = Circuit::new();
    let ctl: Vec<usize> = (0..n).map(|i| c.wire(format!("c{i}"), WireRole::Input)).collect();
    let anc: Vec<usize> = (0..need)
        .map(|i| {
            let role = if keep == Some(i) {
                WireRole::StepOutput
            } else {
                WireRole::Ancilla
            };
            c.wire(format!("anc{i}"), role)
        })
        .collect();
    let t = c.wire("t", WireRole::Output);
    match n {
        0 => c.x(t),
        1 => c.cx(ctl[0], t),
        2 => c.ccx(ctl[0], ctl[1], t),
        _ => {
            let mut up = vec![Gate::toffoli(ctl[0], ctl[1], anc[0])];
            for i in 1..need {
                up.push(Gate::toffoli(anc[i - 1], ctl[i + 1], anc[i]));
            }
            c.extend_gates(up.iter().cloned());
            c.ccx(anc[need - 1], ctl[n - 1], t);
            match keep {
                None => c.extend_gates(up.into_iter().rev()),
                Some(j) => {
                    c.extend_gates(up[j + 1..].iter().rev().cloned());
                    c.extend_gates(up[..j].iter().rev().cloned());
                }
            }
        }
    }
    Ok(c)
}

/// Clean-ancilla decomposition of an `n`-control NOT.
///
/// Wires are `c0..c{n-1}`, then `n-2` ancilla, then the target.
pub fn decompose_mcx(n_controls: usize, available_ancilla: usize) -> Result<Circuit> {
    ladder_circuit(n_controls, available_ancilla, None)
}

/// Like [`decompose_mcx`] but ancilla `step` keeps the conjunction of the
/// first `step + 2` controls instead of being cleared.
pub fn decompose_mcx_with_step_output(
    n_controls: usize,
    available_ancilla: usize,
    step: usize,
) -> Result<Circuit> {
    if n_controls < 3 || step + 2 >= n_controls {
        return Err(Error::Domain(format!(
            "step output {step} out of range for {n_controls} controls"
        )));
    }
    ladder_circuit(n_controls, available_ancilla, Some(step))
}

/// Positive-control NOT on `controls` using `borrowed` wires in arbitrary
/// states, which are restored afterwards.
pub fn mcx_borrowed(controls: &[usize], target: usize, borrowed: &[usize]) -> Result<Vec<Gate>> {
    let m = controls.len();
    if m < 3 {
        let ctl = controls.iter().map(|&w| Control::pos(w)).collect();
        return Ok(vec![Gate::new(ctl, target)?]);
    }
    if borrowed.len() < m - 2 {
        return Err(Error::Capacity(format!(
            "{m}-control gate needs {} borrowed wires, {} given",
            m - 2,
            borrowed.len()
        )));
    }
    // one-based names: x(i) is the i-th control, a(i) the i-th borrowed wire
    let x = |i: usize| controls[i - 1];
    let a = |i: usize| borrowed[i - 1];
    let mut g = Vec::with_capacity(4 * (m - 2));
    let down = |g: &mut Vec<Gate>, top: usize| {
        for i in (3..=top).rev() {
            g.push(Gate::toffoli(x(i), a(i - 2), a(i - 1)));
        }
        g.push(Gate::toffoli(x(1), x(2), a(1)));
        for i in 3..=top {
            g.push(Gate::toffoli(x(i), a(i - 2), a(i - 1)));
        }
    };
    g.push(Gate::toffoli(x(m), a(m - 2), target));
    down(&mut g, m - 1);
    g.push(Gate::toffoli(x(m), a(m - 2), target));
    down(&mut g, m - 1);
    Ok(g)
}

/// Rewrites `circuit` into NOT, CNOT and positive Toffoli gates.
///
/// Negative controls become X conjugations; adjacent X pairs on a wire are
/// cancelled afterwards. Extra scratch wires are appended when the circuit
/// has too few wires to decompose its largest gate.
pub fn lower(circuit: &Circuit, policy: LoweringPolicy) -> Circuit {
    lower_with(circuit, policy, true)
}

pub(crate) fn lower_with(circuit: &Circuit, policy: LoweringPolicy, cancel: bool) -> Circuit {
    let width = circuit.width();
    let extra = circuit
        .gates()
        .iter()
        .filter(|g| g.controls().len() >= 3)
        .map(|g| {
            let n = g.controls().len();
            match policy {
                LoweringPolicy::Clean => n - 2,
                LoweringPolicy::Borrow => (n - 2).saturating_sub(width - n - 1),
            }
        })
        .max()
        .unwrap_or(0);
    let mut out = circuit.clone();
    out.gates.clear();
    let scratch: Vec<usize> = (0..extra)
        .map(|i| {
            let mut name = format!("lower_anc{i}");
            while out.wire_index(&name).is_some() {
                name.push('_');
            }
            out.wire(name, WireRole::Ancilla)
        })
        .collect();

    let mut emitted = Vec::new();
    for g in circuit.gates() {
        let negs: Vec<usize> = g
            .controls()
            .iter()
            .filter(|c| !c.positive)
            .map(|c| c.wire)
            .collect();
        emitted.extend(negs.iter().map(|&w| Gate::not(w)));
        let ctl: Vec<usize> = g.controls().iter().map(|c| c.wire).collect();
        if ctl.len() < 3 {
            emitted.push(Gate::new(ctl.iter().map(|&w| Control::pos(w)).collect(), g.target()).unwrap());
        } else {
            match policy {
                LoweringPolicy::Clean => {
                    let anc = &scratch[..ctl.len() - 2];
                    let mut up = vec![Gate::toffoli(ctl[0], ctl[1], anc[0])];
                    for i in 1..anc.len() {
                        up.push(Gate::toffoli(anc[i - 1], ctl[i + 1], anc[i]));
                    }
                    emitted.extend(up.iter().cloned());
                    emitted.push(Gate::toffoli(anc[anc.len() - 1], ctl[ctl.len() - 1], g.target()));
                    emitted.extend(up.into_iter().rev());
                }
                LoweringPolicy::Borrow => {
                    let idle: Vec<usize> = (0..width)
                        .filter(|&w| !g.touches(w))
                        .chain(scratch.iter().copied())
                        .collect();
                    emitted.extend(mcx_borrowed(&ctl, g.target(), &idle).expect("enough idle wires"));
                }
            }
        }
        emitted.extend(negs.iter().map(|&w| Gate::not(w)));
    }
    out.gates = if cancel { cancel_not_pairs(emitted, out.width()) } else { emitted };
    out
}

/// Drops pairs of NOT gates on one wire with nothing touching it in between.
fn cancel_not_pairs(gates: Vec<Gate>, width: usize) -> Vec<Gate> {
    let mut keep = vec![true; gates.len()];
    let mut pending: Vec<Option<usize>> = vec![None; width];
    for (i, g) in gates.iter().enumerate() {
        if g.controls().is_empty() {
            let t = g.target();
            match pending[t].take() {
                Some(j) => {
                    keep[j] = false;
                    keep[i] = false;
                }
                None => pending[t] = Some(i),
            }
        } else {
            pending[g.target()] = None;
            for c in g.controls() {
                pending[c.wire] = None;
            }
        }
    }
    gates
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;

    #[test]
    fn small_decompositions() {
        let c = decompose_mcx(2, 0).unwrap();
        assert_eq!(c.gates().len(), 1);
        assert_eq!(c.gates()[0].kind(), GateKind::Toffoli);
        assert_eq!(c.width(), 3);
        assert!(matches!(decompose_mcx(5, 2), Err(Error::Capacity(_))));
    }

    #[test]
    fn ladder_is_exact_and_clean() {
        for n in 3..=7 {
            let c = decompose_mcx(n, n - 2).unwrap();
            assert_eq!(c.gates().len(), 2 * (n - 2) + 1);
            assert!(c.gates().iter().all(|g| g.kind() == GateKind::Toffoli));
            let t = c.width() - 1;
            for x in 0..1u64 << n {
                let out = c.apply_u64(x);
                let all = x == (1 << n) - 1;
                assert_eq!(out, x | (all as u64) << t, "n={n} x={x:b}");
            }
        }
    }

    #[test]
    fn step_output_keeps_prefix_conjunction() {
        let n = 6;
        for step in 0..n - 2 {
            let c = decompose_mcx_with_step_output(n, n - 2, step).unwrap();
            assert_eq!(c.gates().len(), 2 * (n - 2));
            let anc = n + step;
            assert_eq!(c.wires()[anc].role, WireRole::StepOutput);
            for x in 0..1u64 << n {
                let out = c.apply_u64(x);
                let prefix = (x & ((1 << (step + 2)) - 1)) == (1 << (step + 2)) - 1;
                let all = x == (1 << n) - 1;
                let expect = x | (prefix as u64) << anc | (all as u64) << (c.width() - 1);
                assert_eq!(out, expect);
            }
        }
    }

    #[test]
    fn borrowed_ancilla_any_state() {
        for m in 3..=6 {
            let controls: Vec<usize> = (0..m).collect();
            let borrowed: Vec<usize> = (m..2 * m - 2).collect();
            let target = 2 * m - 2;
            let gates = mcx_borrowed(&controls, target, &borrowed).unwrap();
            assert_eq!(gates.len(), 4 * (m - 2));
            let mut c = Circuit::new();
            for i in 0..=target {
                c.wire(format!("w{i}"), WireRole::Input);
            }
            c.extend_gates(gates);
            for s in 0..1u64 << (target + 1) {
                let all = s & ((1 << m) - 1) == (1 << m) - 1;
                assert_eq!(c.apply_u64(s), s ^ (all as u64) << target);
            }
        }
    }

    fn mixed_circuit() -> Circuit {
        let mut c = Circuit::new();
        for i in 0..9 {
            c.wire(format!("w{i}"), WireRole::Input);
        }
        c.mcx(
            [Control::pos(0), Control::neg(1), Control::pos(2), Control::neg(3), Control::pos(4)],
            5,
        );
        c.mcx([Control::neg(1), Control::neg(3), Control::pos(6)], 7);
        c.mcx([Control::neg(0)], 6);
        c
    }

    #[test]
    fn lowering_preserves_function() {
        let c = mixed_circuit();
        for policy in [LoweringPolicy::Borrow, LoweringPolicy::Clean] {
            let l = lower(&c, policy);
            assert!(l.gates().iter().all(|g| g.controls().len() <= 2 && !g.has_negative_controls()));
            let extra = l.width() - c.width();
            for s in 0..1u64 << 9 {
                assert_eq!(l.apply_u64(s), c.apply_u64(s), "{policy:?}");
            }
            if policy == LoweringPolicy::Borrow {
                assert_eq!(extra, 0);
            }
        }
    }

    #[test]
    fn not_pairs_cancel_between_neighbours() {
        let c = mixed_circuit();
        let raw = lower_with(&c, LoweringPolicy::Borrow, false);
        let opt = lower(&c, LoweringPolicy::Borrow);
        // X on w1 and w3 between the first two gates cancel
        assert_eq!(raw.gates().len() - opt.gates().len(), 4);
    }

    #[test]
    fn borrow_adds_wires_when_crowded() {
        let mut c = Circuit::new();
        for i in 0..5 {
            c.wire(format!("w{i}"), WireRole::Input);
        }
        c.mcx((0..4).map(Control::pos), 4);
        let l = lower(&c, LoweringPolicy::Borrow);
        assert_eq!(l.width(), 7);
        for s in 0..32u64 {
            assert_eq!(l.apply_u64(s), c.apply_u64(s));
        }
    }
}
