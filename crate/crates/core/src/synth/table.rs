use serde::Serialize;

use super::{
    build_add_sub, build_adder, build_eq_verifier_mixed, build_hd_counter, build_sc_bcd,
    build_sc_verifier, build_tdn_generator,
};
use crate::circuit::{cost, Circuit, QuantumCost};

/// One builder with its measured cost and the published reference cost.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentRow {
    pub name: &'static str,
    #[serde(skip)]
    pub circuit: Circuit,
    pub measured: QuantumCost,
    pub reference: QuantumCost,
}

fn reference(q: [usize; 4], g: [usize; 4]) -> QuantumCost {
    QuantumCost {
        n_input: q[0],
        n_ancilla: q[1],
        n_output: q[2],
        n_total_qubits: q[3],
        n_toffoli: g[0],
        n_cnot: g[1],
        n_not: g[2],
        n_total_gates: g[3],
    }
}

pub fn component_table() -> Vec<ComponentRow> {
    let rows: Vec<(&'static str, Circuit, QuantumCost)> = vec![
        ("SC verifier", build_sc_verifier(), reference([7, 1, 1, 9], [68, 4, 16, 88])),
        ("SC verifier + SC-BCD", build_sc_bcd(), reference([7, 1, 5, 13], [104, 16, 24, 144])),
        ("Adder / Subtractor", build_add_sub(4).unwrap(), reference([10, 1, 5, 16], [9, 24, 2, 35])),
        ("TDN generator", build_tdn_generator(), reference([8, 1, 8, 17], [16, 27, 0, 43])),
        ("Eq verifier", build_eq_verifier_mixed(5, 8).unwrap(), reference([13, 1, 1, 15], [16, 10, 16, 42])),
        ("SC-HDC", build_hd_counter(), reference([14, 2, 3, 19], [14, 22, 2, 38])),
        ("4-bit adder", build_adder(4).unwrap(), reference([8, 0, 5, 13], [7, 11, 0, 18])),
    ];
    rows.into_iter()
        .map(|(name, circuit, reference)| ComponentRow {
            name,
            measured: cost(&circuit),
            circuit,
            reference,
        })
        .collect()
}

/// Tab-separated table: measured counts, reference counts and the gate delta.
pub fn render_component_table(rows: &[ComponentRow]) -> String {
    let mut s = String::from(
        "name\tin\tanc\tout\tqubits\tccx\tcx\tx\tgates\tref_qubits\tref_ccx\tref_cx\tref_x\tref_gates\tdelta_gates\n",
    );
    for r in rows {
        let (m, p) = (r.measured, r.reference);
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:+}\n",
            r.name,
            m.n_input,
            m.n_ancilla,
            m.n_output,
            m.n_total_qubits,
            m.n_toffoli,
            m.n_cnot,
            m.n_not,
            m.n_total_gates,
            p.n_total_qubits,
            p.n_toffoli,
            p.n_cnot,
            p.n_not,
            p.n_total_gates,
            m.n_total_gates as i64 - p.n_total_gates as i64
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_within_a_quarter_of_reference() {
        let rows = component_table();
        for r in &rows {
            let (m, p) = (r.measured.n_total_gates as f64, r.reference.n_total_gates as f64);
            assert!((m - p).abs() <= 0.25 * p, "{}: {m} vs {p}", r.name);
            assert_eq!(r.measured.n_total_qubits, r.reference.n_total_qubits, "{}", r.name);
        }
        let text = render_component_table(&rows);
        assert_eq!(text.lines().count(), rows.len() + 1);
    }
}
