use std::collections::HashMap;

use proptest::prelude::*;

use segrover::circuit::{cost_with, emit_netlist, parse_netlist, Circuit, Control, CostOptions, Gate, WireRole};

const WIDTH: usize = 6;

fn gate() -> impl Strategy<Value = Gate> {
    (0..WIDTH, proptest::sample::subsequence((0..WIDTH).collect::<Vec<_>>(), 0..=4), any::<u8>()).prop_filter_map(
        "target among controls",
        |(target, wires, signs)| {
            let controls = wires
                .into_iter()
                .filter(|&w| w != target)
                .enumerate()
                .map(|(i, w)| Control::new(w, signs >> i & 1 == 1))
                .collect();
            Gate::new(controls, target).ok()
        },
    )
}

fn circuit() -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(gate(), 0..24).prop_map(|gates| {
        let mut c = Circuit::new();
        for i in 0..WIDTH {
            c.add_wire(format!("w{i}"), WireRole::Output).unwrap();
        }
        for g in gates {
            c.push(g).unwrap();
        }
        c
    })
}

fn identity() -> HashMap<usize, usize> {
    (0..WIDTH).map(|i| (i, i)).collect()
}

proptest! {
    #[test]
    fn circuits_are_permutations(c in circuit()) {
        let inv = c.inverse();
        let mut seen = [false; 1 << WIDTH];
        for s in 0..1u64 << WIDTH {
            let out = c.apply_u64(s);
            prop_assert!(!std::mem::replace(&mut seen[out as usize], true));
            prop_assert_eq!(inv.apply_u64(out), s);
        }
    }

    #[test]
    fn composition_runs_in_order(a in circuit(), b in circuit()) {
        let ab = a.compose(&b, &identity()).unwrap();
        prop_assert_eq!(ab.gates().len(), a.gates().len() + b.gates().len());
        for s in 0..1u64 << WIDTH {
            prop_assert_eq!(ab.apply_u64(s), b.apply_u64(a.apply_u64(s)));
        }
    }

    #[test]
    fn cost_is_additive(a in circuit(), b in circuit()) {
        let opts = CostOptions { cancel_not_pairs: false, ..CostOptions::default() };
        let ab = a.compose(&b, &identity()).unwrap();
        let (ca, cb, cab) = (cost_with(&a, opts), cost_with(&b, opts), cost_with(&ab, opts));
        prop_assert_eq!(cab.n_toffoli, ca.n_toffoli + cb.n_toffoli);
        prop_assert_eq!(cab.n_cnot, ca.n_cnot + cb.n_cnot);
        prop_assert_eq!(cab.n_not, ca.n_not + cb.n_not);
        prop_assert_eq!(cab.n_total_gates, ca.n_total_gates + cb.n_total_gates);
    }

    #[test]
    fn netlist_round_trip(c in circuit()) {
        prop_assert_eq!(parse_netlist(&emit_netlist(&c)).unwrap(), c);
    }
}
