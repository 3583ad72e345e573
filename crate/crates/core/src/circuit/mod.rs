//! Reversible-circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of multi-controlled NOT gates over named
//! wires. Controls carry a polarity, so `~a` conditions on `a = 0`. Every
//! gate is self-inverse, which makes [`Circuit::inverse`] a reversal of the
//! gate list.

mod cost;
mod lower;
mod netlist;
mod pool;
mod sim;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cost::{cost, cost_with, CostOptions, QuantumCost};
pub use lower::{
    decompose_mcx, decompose_mcx_with_step_output, lower, mcx_borrowed, LoweringPolicy,
};
pub use netlist::{emit_netlist, parse_netlist};
pub use pool::AncillaPool;
pub use sim::{BitSliced, LANES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WireRole {
    Input,
    Ancilla,
    /// Ancilla that holds a partial conjunction reused by later gates.
    StepOutput,
    Output,
}

impl WireRole {
    pub fn name(self) -> &'static str {
        match self {
            WireRole::Input => "input",
            WireRole::Ancilla => "ancilla",
            WireRole::StepOutput => "step-output",
            WireRole::Output => "output",
        }
    }

    pub fn from_name(s: &str) -> Option<WireRole> {
        Some(match s {
            "input" => WireRole::Input,
            "ancilla" => WireRole::Ancilla,
            "step-output" => WireRole::StepOutput,
            "output" => WireRole::Output,
            _ => return None,
        })
    }

    /// Ancilla-like wires start at zero and must end at zero.
    pub fn is_scratch(self) -> bool {
        matches!(self, WireRole::Ancilla | WireRole::StepOutput)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wire {
    pub name: String,
    pub role: WireRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Control {
    pub wire: usize,
    pub positive: bool,
}

impl Control {
    pub fn new(wire: usize, positive: bool) -> Self {
        Control { wire, positive }
    }

    pub fn pos(wire: usize) -> Self {
        Control::new(wire, true)
    }

    pub fn neg(wire: usize) -> Self {
        Control::new(wire, false)
    }

    pub fn negated(self) -> Self {
        Control::new(self.wire, !self.positive)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
    Mcx,
}

/// Flips `target` when every control matches its polarity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    controls: Vec<Control>,
    target: usize,
}

impl Gate {
    pub fn new(controls: Vec<Control>, target: usize) -> Result<Gate> {
        for (i, c) in controls.iter().enumerate() {
            if c.wire == target {
                return Err(Error::Domain(format!("wire {target} is both control and target")));
            }
            if controls[..i].iter().any(|d| d.wire == c.wire) {
                return Err(Error::Domain(format!("wire {} used twice as control", c.wire)));
            }
        }
        Ok(Gate { controls, target })
    }

    pub fn not(target: usize) -> Gate {
        Gate {
            controls: Vec::new(),
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::new(vec![Control::pos(control)], target).expect("distinct wires")
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Gate {
        Gate::new(vec![Control::pos(c1), Control::pos(c2)], target).expect("distinct wires")
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn kind(&self) -> GateKind {
        match self.controls.len() {
            0 => GateKind::Not,
            1 => GateKind::Cnot,
            2 => GateKind::Toffoli,
            _ => GateKind::Mcx,
        }
    }

    pub fn touches(&self, wire: usize) -> bool {
        self.target == wire || self.controls.iter().any(|c| c.wire == wire)
    }

    pub fn has_negative_controls(&self) -> bool {
        self.controls.iter().any(|c| !c.positive)
    }

    fn fires(&self, state: &[bool]) -> bool {
        self.controls.iter().all(|c| state[c.wire] == c.positive)
    }

    fn remapped(&self, map: &[usize]) -> Gate {
        Gate {
            controls: self
                .controls
                .iter()
                .map(|c| Control::new(map[c.wire], c.positive))
                .collect(),
            target: map[self.target],
        }
    }
}

/// Reversible gate netlist over named wires.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    wires: Vec<Wire>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_wire(&mut self, name: impl Into<String>, role: WireRole) -> Result<usize> {
        let name = name.into();
        if self.wire_index(&name).is_some() {
            return Err(Error::Domain(format!("wire '{name}' declared twice")));
        }
        self.wires.push(Wire { name, role });
        Ok(self.wires.len() - 1)
    }

    /// Declares a wire whose name the caller guarantees is fresh.
    pub(crate) fn wire(&mut self, name: impl Into<String>, role: WireRole) -> usize {
        self.add_wire(name, role).expect("builder wire names are unique")
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn width(&self) -> usize {
        self.wires.len()
    }

    pub fn wire_index(&self, name: &str) -> Option<usize> {
        self.wires.iter().position(|w| w.name == name)
    }

    pub fn wires_with_role(&self, role: WireRole) -> Vec<usize> {
        (0..self.wires.len())
            .filter(|&i| self.wires[i].role == role)
            .collect()
    }

    pub fn set_role(&mut self, wire: usize, role: WireRole) {
        self.wires[wire].role = role;
    }

    /// Appends a gate after checking that it references declared wires.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let width = self.wires.len();
        if gate.target >= width || gate.controls.iter().any(|c| c.wire >= width) {
            return Err(Error::Domain(format!(
                "gate references a wire outside 0..{width}"
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn emit(&mut self, gate: Gate) {
        self.push(gate).expect("builder emits declared wires");
    }

    pub(crate) fn x(&mut self, target: usize) {
        self.emit(Gate::not(target));
    }

    pub(crate) fn cx(&mut self, control: usize, target: usize) {
        self.emit(Gate::cnot(control, target));
    }

    pub(crate) fn ccx(&mut self, c1: usize, c2: usize, target: usize) {
        self.emit(Gate::toffoli(c1, c2, target));
    }

    pub(crate) fn mcx(&mut self, controls: impl IntoIterator<Item = Control>, target: usize) {
        let gate = Gate::new(controls.into_iter().collect(), target).expect("valid gate");
        self.emit(gate);
    }

    pub(crate) fn extend_gates(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.emit(g);
        }
    }

    /// Appends the gates of `other`, sending its wire `i` to `map[i]`.
    pub(crate) fn append_mapped(&mut self, other: &Circuit, map: &[usize]) {
        assert_eq!(map.len(), other.width());
        for g in &other.gates {
            self.emit(g.remapped(map));
        }
    }

    /// Same wires, gates in reverse order.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            wires: self.wires.clone(),
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// Runs `other` after `self`.
    ///
    /// `wire_map` sends wires of `other` onto wires of `self`; unmapped wires
    /// of `other` are appended as new wires. An input of `other` may read any
    /// wire, scratch wires must land on scratch wires, and outputs of `other`
    /// must not overwrite inputs of `self`.
    pub fn compose(&self, other: &Circuit, wire_map: &HashMap<usize, usize>) -> Result<Circuit> {
        let mut out = self.clone();
        let mut map = vec![usize::MAX; other.width()];
        let mut used = vec![false; self.width()];
        let mut pairs: Vec<_> = wire_map.iter().map(|(&b, &a)| (b, a)).collect();
        pairs.sort_unstable();
        for (b, a) in pairs {
            if b >= other.width() || a >= self.width() {
                return Err(Error::Composition(format!("mapping {b} -> {a} names a missing wire")));
            }
            if std::mem::replace(&mut used[a], true) {
                return Err(Error::Composition(format!(
                    "wire '{}' receives more than one wire",
                    self.wires[a].name
                )));
            }
            let (rb, ra) = (other.wires[b].role, self.wires[a].role);
            let compatible = match rb {
                WireRole::Input => true,
                WireRole::Ancilla | WireRole::StepOutput => ra.is_scratch(),
                WireRole::Output => ra != WireRole::Input,
            };
            if !compatible {
                return Err(Error::Composition(format!(
                    "{} wire '{}' cannot bind to {} wire '{}'",
                    rb.name(),
                    other.wires[b].name,
                    ra.name(),
                    self.wires[a].name
                )));
            }
            map[b] = a;
        }
        for (b, slot) in map.iter_mut().enumerate() {
            if *slot == usize::MAX {
                let base = &other.wires[b].name;
                let mut name = base.clone();
                let mut n = 1;
                while out.wire_index(&name).is_some() {
                    name = format!("{base}_{n}");
                    n += 1;
                }
                *slot = out.wire(name, other.wires[b].role);
            }
        }
        out.gates
            .extend(other.gates.iter().map(|g| g.remapped(&map)));
        Ok(out)
    }

    /// Classical action on one basis state (one bool per wire).
    pub fn apply_to_basis_state(&self, state: &[bool]) -> Result<Vec<bool>> {
        if state.len() != self.width() {
            return Err(Error::Domain(format!(
                "state has {} bits, circuit has {} wires",
                state.len(),
                self.width()
            )));
        }
        let mut s = state.to_vec();
        for g in &self.gates {
            if g.fires(&s) {
                s[g.target] = !s[g.target];
            }
        }
        Ok(s)
    }

    /// Convenience for circuits of at most 64 wires: bit `i` is wire `i`.
    pub fn apply_u64(&self, state: u64) -> u64 {
        assert!(self.width() <= 64, "apply_u64 needs at most 64 wires");
        let mut s = state;
        for g in &self.gates {
            if g.controls
                .iter()
                .all(|c| (s >> c.wire & 1 == 1) == c.positive)
            {
                s ^= 1 << g.target;
            }
        }
        s
    }

    pub fn gate_kind_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for g in &self.gates {
            counts[g.kind() as usize] += 1;
        }
        counts
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_netlist(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn wires(n: usize) -> Circuit {
        let mut c = Circuit::new();
        for i in 0..n {
            c.wire(format!("w{i}"), WireRole::Input);
        }
        c
    }

    #[test]
    fn basis_examples() {
        let c = wires(4);
        assert_eq!(c.apply_to_basis_state(&bits("1011")).unwrap(), bits("1011"));

        let mut c = wires(2);
        c.cx(0, 1);
        assert_eq!(c.apply_to_basis_state(&bits("10")).unwrap(), bits("11"));

        let mut c = wires(3);
        c.ccx(0, 1, 2);
        assert_eq!(c.apply_to_basis_state(&bits("110")).unwrap(), bits("111"));
        assert!(c.apply_to_basis_state(&bits("11")).is_err());
    }

    #[test]
    fn negative_controls_fire_on_zero() {
        let mut c = wires(3);
        c.mcx([Control::neg(0), Control::pos(1)], 2);
        assert_eq!(c.apply_u64(0b010), 0b110);
        assert_eq!(c.apply_u64(0b011), 0b011);
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::new(vec![Control::pos(1)], 1).is_err());
        assert!(Gate::new(vec![Control::pos(0), Control::neg(0)], 1).is_err());
        let mut c = wires(2);
        assert!(c.push(Gate::cnot(0, 5)).is_err());
        assert_eq!(Gate::not(0).kind(), GateKind::Not);
        assert_eq!(
            Gate::new(vec![Control::pos(0), Control::pos(1), Control::pos(2)], 3)
                .unwrap()
                .kind(),
            GateKind::Mcx
        );
    }

    #[test]
    fn inverse_examples() {
        let empty = Circuit::new();
        assert_eq!(empty.inverse(), empty);
        let mut c = wires(1);
        c.x(0);
        assert_eq!(c.inverse(), c);
        let mut c = wires(3);
        c.cx(0, 1);
        c.ccx(1, 2, 0);
        assert_eq!(c.inverse().inverse(), c);
        for s in 0..8u64 {
            assert_eq!(c.inverse().apply_u64(c.apply_u64(s)), s);
        }
    }

    #[test]
    fn compose_identity_and_inverse() {
        let mut c = wires(3);
        c.cx(0, 1);
        c.ccx(0, 1, 2);
        let ident: HashMap<usize, usize> = (0..3).map(|i| (i, i)).collect();
        let e = wires(3);
        assert_eq!(c.compose(&e, &ident).unwrap(), c);
        let round = c.compose(&c.inverse(), &ident).unwrap();
        for s in 0..8u64 {
            assert_eq!(round.apply_u64(s), s);
        }
    }

    #[test]
    fn compose_role_checks() {
        let mut a = Circuit::new();
        let i = a.wire("i", WireRole::Input);
        let o = a.wire("o", WireRole::Output);
        a.cx(i, o);

        let mut b = Circuit::new();
        let bi = b.wire("bi", WireRole::Input);
        let bo = b.wire("bo", WireRole::Output);
        b.cx(bi, bo);

        // output of a feeds input of b; b's output is appended
        let ok = a.compose(&b, &HashMap::from([(bi, o)])).unwrap();
        assert_eq!(ok.width(), 3);
        assert_eq!(ok.apply_u64(0b001), 0b111);

        // b's output onto a's input is refused
        assert!(matches!(
            a.compose(&b, &HashMap::from([(bo, i)])),
            Err(Error::Composition(_))
        ));
        // two wires onto one
        assert!(matches!(
            a.compose(&b, &HashMap::from([(bi, o), (bo, o)])),
            Err(Error::Composition(_))
        ));
    }
}
