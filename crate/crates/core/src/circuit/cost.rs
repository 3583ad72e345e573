use serde::{Deserialize, Serialize};

use super::lower::lower_with;
use super::{Circuit, GateKind, LoweringPolicy, WireRole};

/// Resource summary of a circuit after lowering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumCost {
    pub n_input: usize,
    pub n_ancilla: usize,
    pub n_output: usize,
    pub n_total_qubits: usize,
    pub n_toffoli: usize,
    pub n_cnot: usize,
    pub n_not: usize,
    pub n_total_gates: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostOptions {
    pub policy: LoweringPolicy,
    pub cancel_not_pairs: bool,
}

impl Default for CostOptions {
    fn default() -> Self {
        CostOptions {
            policy: LoweringPolicy::Borrow,
            cancel_not_pairs: true,
        }
    }
}

pub fn cost(circuit: &Circuit) -> QuantumCost {
    cost_with(circuit, CostOptions::default())
}

pub fn cost_with(circuit: &Circuit, options: CostOptions) -> QuantumCost {
    let lowered = lower_with(circuit, options.policy, options.cancel_not_pairs);
    let roles = |pred: fn(WireRole) -> bool| lowered.wires().iter().filter(|w| pred(w.role)).count();
    let counts = lowered.gate_kind_counts();
    debug_assert_eq!(counts[GateKind::Mcx as usize], 0);
    QuantumCost {
        n_input: roles(|r| r == WireRole::Input),
        n_ancilla: roles(WireRole::is_scratch),
        n_output: roles(|r| r == WireRole::Output),
        n_total_qubits: lowered.width(),
        n_toffoli: counts[GateKind::Toffoli as usize],
        n_cnot: counts[GateKind::Cnot as usize],
        n_not: counts[GateKind::Not as usize],
        n_total_gates: lowered.gates().len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;

    #[test]
    fn counts_by_kind() {
        let mut c = Circuit::new();
        let a = c.wire("a", WireRole::Input);
        let b = c.wire("b", WireRole::Input);
        let s = c.wire("s", WireRole::Ancilla);
        let o = c.wire("o", WireRole::Output);
        c.ccx(a, b, s);
        c.cx(s, o);
        c.x(o);
        c.mcx([Control::neg(a), Control::pos(b)], o);
        let q = cost(&c);
        assert_eq!(
            q,
            QuantumCost {
                n_input: 2,
                n_ancilla: 1,
                n_output: 1,
                n_total_qubits: 4,
                n_toffoli: 2,
                n_cnot: 1,
                n_not: 3,
                n_total_gates: 6,
            }
        );
    }
}
