//! Ripple adders, equality and magnitude comparison.

use crate::circuit::{Circuit, Control, WireRole};
use crate::error::{domain, Result};

/// An operand bit: a wire or a compile-time constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bit {
    Wire(usize),
    Const(bool),
}

/// Constant operand, least significant bit first.
pub fn const_bits(value: u64, width: usize) -> Vec<Bit> {
    (0..width).map(|i| Bit::Const(value >> i & 1 == 1)).collect()
}

pub fn wire_bits(wires: &[usize]) -> Vec<Bit> {
    wires.iter().map(|&w| Bit::Wire(w)).collect()
}

/// `s ^= a + b` for `n`-bit `a`, `b` and `(n+1)`-bit `s` starting at zero.
///
/// Uses `2n-1` Toffoli and `3n-1` CNOT gates; `a` and `b` are restored.
pub(crate) fn emit_adder(c: &mut Circuit, a: &[usize], b: &[usize], s: &[usize]) {
    let n = a.len();
    assert!(n >= 1 && b.len() == n && s.len() == n + 1);
    c.ccx(a[0], b[0], s[1]);
    c.cx(a[0], s[0]);
    c.cx(b[0], s[0]);
    for i in 1..n {
        c.ccx(a[i], b[i], s[i + 1]);
        c.cx(a[i], b[i]);
        c.ccx(b[i], s[i], s[i + 1]);
        c.cx(b[i], s[i]);
        c.cx(a[i], b[i]);
    }
}

/// `s = a + b` when `minus` is clear and `s = a - b` (low `n` bits, borrow
/// in the top bit) when it is set. Without a `minus` wire this is the adder.
pub(crate) fn emit_add_sub(
    c: &mut Circuit,
    a: &[usize],
    b: &[usize],
    s: &[usize],
    minus: Option<usize>,
) {
    let n = a.len();
    if let Some(m) = minus {
        for &w in a {
            c.cx(m, w);
        }
        emit_adder(c, a, b, s);
        for &w in &s[..n] {
            c.cx(m, w);
        }
        for &w in a {
            c.cx(m, w);
        }
    } else {
        emit_adder(c, a, b, s);
    }
}

fn operands(c: &mut Circuit, width: usize, names: &[&str]) -> Vec<Vec<usize>> {
    names
        .iter()
        .map(|n| {
            (0..width)
                .map(|i| c.wire(format!("{n}{i}"), WireRole::Input))
                .collect()
        })
        .collect()
}

fn outputs(c: &mut Circuit, width: usize, name: &str) -> Vec<usize> {
    (0..width)
        .map(|i| c.wire(format!("{name}{i}"), WireRole::Output))
        .collect()
}

/// Wires `a0..`, `b0..` inputs, `s0..s{n}` outputs.
pub fn build_adder(width: usize) -> Result<Circuit> {
    if width == 0 {
        return domain("adder width must be positive");
    }
    let mut c = Circuit::new();
    let ab = operands(&mut c, width, &["a", "b"]);
    let s = outputs(&mut c, width + 1, "s");
    emit_adder(&mut c, &ab[0], &ab[1], &s);
    Ok(c)
}

/// `s = a - b` modulo `2^n` with the borrow in `s{n}`.
pub fn build_subtractor(width: usize) -> Result<Circuit> {
    if width == 0 {
        return domain("subtractor width must be positive");
    }
    let mut c = Circuit::new();
    let ab = operands(&mut c, width, &["a", "b"]);
    let s = outputs(&mut c, width + 1, "s");
    for &w in &ab[0] {
        c.x(w);
    }
    emit_adder(&mut c, &ab[0], &ab[1], &s);
    for &w in &s[..width] {
        c.x(w);
    }
    for &w in &ab[0] {
        c.x(w);
    }
    Ok(c)
}

/// Adder/subtractor selected by a two-bit operator code `op1 op0`:
/// `00` adds, `01` subtracts. The minus flag lives in `anc0`.
pub fn build_add_sub(width: usize) -> Result<Circuit> {
    if width == 0 {
        return domain("adder width must be positive");
    }
    let mut c = Circuit::new();
    let ab = operands(&mut c, width, &["a", "b"]);
    let op1 = c.wire("op1", WireRole::Input);
    let op0 = c.wire("op0", WireRole::Input);
    let m = c.wire("anc0", WireRole::Ancilla);
    let s = outputs(&mut c, width + 1, "s");
    let flag = [Control::neg(op1), Control::pos(op0)];
    c.mcx(flag, m);
    emit_add_sub(&mut c, &ab[0], &ab[1], &s, Some(m));
    c.mcx(flag, m);
    Ok(c)
}

/// `out ^= [a == b]`, shorter operand zero-extended.
///
/// Wire pairs are compared by XOR-ing `a` into `b` around one
/// multi-controlled gate; constant bits become control polarities.
pub(crate) fn emit_equality(c: &mut Circuit, a: &[Bit], b: &[Bit], out: usize) {
    let n = a.len().max(b.len());
    let get = |v: &[Bit], i: usize| v.get(i).copied().unwrap_or(Bit::Const(false));
    let mut controls = Vec::new();
    let mut xors = Vec::new();
    for i in 0..n {
        match (get(a, i), get(b, i)) {
            (Bit::Wire(x), Bit::Wire(y)) => {
                xors.push((x, y));
                controls.push(Control::neg(y));
            }
            (Bit::Wire(w), Bit::Const(k)) | (Bit::Const(k), Bit::Wire(w)) => {
                controls.push(Control::new(w, k));
            }
            (Bit::Const(p), Bit::Const(q)) => {
                if p != q {
                    return;
                }
            }
        }
    }
    for &(x, y) in &xors {
        c.cx(x, y);
    }
    c.mcx(controls, out);
    for &(x, y) in xors.iter().rev() {
        c.cx(x, y);
    }
}

/// Wires `a0..`, `b0..` inputs and output `eq`.
pub fn build_eq_verifier(width: usize) -> Result<Circuit> {
    build_eq_verifier_mixed(width, width)
}

/// Equality of a `wa`-bit and a `wb`-bit unsigned operand.
pub fn build_eq_verifier_mixed(wa: usize, wb: usize) -> Result<Circuit> {
    if wa == 0 || wb == 0 {
        return domain("equality operands need at least one bit");
    }
    let mut c = Circuit::new();
    let a: Vec<usize> = (0..wa).map(|i| c.wire(format!("a{i}"), WireRole::Input)).collect();
    let b: Vec<usize> = (0..wb).map(|i| c.wire(format!("b{i}"), WireRole::Input)).collect();
    let out = c.wire("eq", WireRole::Output);
    emit_equality(&mut c, &wire_bits(&a), &wire_bits(&b), out);
    Ok(c)
}

/// `out ^= [a > b]` through an in-place majority chain computing the carry
/// of `a + ~b`. `carry` must be a zero wire; everything is restored.
pub(crate) fn emit_greater(c: &mut Circuit, a: &[usize], b: &[usize], carry: usize, out: usize) {
    let n = a.len();
    assert!(n >= 1 && b.len() == n);
    let start = c.gates().len();
    for &w in b {
        c.x(w);
    }
    let mut prev = carry;
    for i in 0..n {
        c.cx(a[i], b[i]);
        c.cx(a[i], prev);
        c.ccx(prev, b[i], a[i]);
        prev = a[i];
    }
    let chain: Vec<_> = c.gates()[start..].to_vec();
    c.cx(a[n - 1], out);
    c.extend_gates(chain.into_iter().rev());
}

/// Wires `a0..`, `b0..` inputs, ancilla `anc0`, outputs `lt`, `gt`.
pub fn build_comparator(width: usize) -> Result<Circuit> {
    if width == 0 {
        return domain("comparator width must be positive");
    }
    let mut c = Circuit::new();
    let ab = operands(&mut c, width, &["a", "b"]);
    let carry = c.wire("anc0", WireRole::Ancilla);
    let lt = c.wire("lt", WireRole::Output);
    let gt = c.wire("gt", WireRole::Output);
    emit_greater(&mut c, &ab[1], &ab[0], carry, lt);
    emit_greater(&mut c, &ab[0], &ab[1], carry, gt);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::cost;

    fn field(v: u64, at: usize, w: usize) -> u64 {
        v >> at & ((1 << w) - 1)
    }

    #[test]
    fn adder_exhaustive_and_cost() {
        for n in 1..=6 {
            let c = build_adder(n).unwrap();
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    let out = c.apply_u64(a | b << n);
                    assert_eq!(field(out, 0, 2 * n), a | b << n);
                    assert_eq!(out >> (2 * n), a + b);
                }
            }
        }
        for n in 2..=8 {
            let q = cost(&build_adder(n).unwrap());
            assert_eq!((q.n_toffoli, q.n_cnot, q.n_not), (2 * n - 1, 3 * n - 1, 0));
            assert_eq!(q.n_total_gates, 5 * n - 2);
            assert_eq!((q.n_input, q.n_ancilla, q.n_output), (2 * n, 0, n + 1));
        }
    }

    #[test]
    fn adder_examples() {
        let c = build_adder(4).unwrap();
        assert_eq!(c.apply_u64(9 | 9 << 4) >> 8, 0b10010);
        assert_eq!(cost(&c).n_total_gates, 18);
    }

    #[test]
    fn subtractor_exhaustive() {
        for n in 1..=6 {
            let c = build_subtractor(n).unwrap();
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    let out = c.apply_u64(a | b << n);
                    let diff = a.wrapping_sub(b) & ((1 << n) - 1);
                    assert_eq!(out >> (2 * n), diff | ((a < b) as u64) << n);
                    assert_eq!(field(out, 0, 2 * n), a | b << n);
                }
            }
        }
    }

    #[test]
    fn add_sub_by_operator_code() {
        let n = 4;
        let c = build_add_sub(n).unwrap();
        for op in 0..4u64 {
            for a in 0..16u64 {
                for b in 0..16u64 {
                    // op1 is wire 8, op0 wire 9
                    let input = a | b << 4 | (op >> 1) << 8 | (op & 1) << 9;
                    let out = c.apply_u64(input);
                    assert_eq!(out & 0x7ff, input);
                    let want = if op == 1 {
                        (a.wrapping_sub(b) & 15) | ((a < b) as u64) << 4
                    } else {
                        a + b
                    };
                    assert_eq!(out >> 11, want);
                }
            }
        }
        let q = cost(&c);
        assert_eq!(q.n_total_qubits, 16);
    }

    #[test]
    fn equality() {
        let c = build_eq_verifier(4).unwrap();
        assert_eq!(c.apply_u64(0b0110 | 0b0110 << 4) >> 8, 1);
        assert_eq!(c.apply_u64(0b0110 | 0b0111 << 4) >> 8, 0);
        // HD = 4 against 2K with K = 2
        assert_eq!(c.apply_u64(4 | (2 * 2) << 4) >> 8, 1);
        for (wa, wb) in [(3, 3), (2, 4), (5, 3)] {
            let c = build_eq_verifier_mixed(wa, wb).unwrap();
            for a in 0..1u64 << wa {
                for b in 0..1u64 << wb {
                    let out = c.apply_u64(a | b << wa);
                    assert_eq!(field(out, 0, wa + wb), a | b << wa);
                    assert_eq!(out >> (wa + wb), (a == b) as u64);
                }
            }
        }
    }

    #[test]
    fn equality_with_constants() {
        let mut c = Circuit::new();
        let w: Vec<usize> = (0..3).map(|i| c.wire(format!("w{i}"), WireRole::Input)).collect();
        let out = c.wire("o", WireRole::Output);
        emit_equality(&mut c, &wire_bits(&w), &const_bits(5, 3), out);
        for v in 0..8u64 {
            assert_eq!(c.apply_u64(v) >> 3, (v == 5) as u64);
        }
        let mut never = Circuit::new();
        let o = never.wire("o", WireRole::Output);
        emit_equality(&mut never, &const_bits(1, 2), &const_bits(2, 2), o);
        assert!(never.gates().is_empty());
    }

    #[test]
    fn comparator_exhaustive() {
        for n in 1..=4 {
            let c = build_comparator(n).unwrap();
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    let out = c.apply_u64(a | b << n);
                    assert_eq!(field(out, 0, 2 * n + 1), a | b << n);
                    assert_eq!(field(out, 2 * n + 1, 2), (a < b) as u64 | ((a > b) as u64) << 1);
                }
            }
        }
        let c = build_comparator(3).unwrap();
        let run = |a: u64, b: u64| c.apply_u64(a | b << 3) >> 7;
        assert_eq!(run(3, 5), 0b01);
        assert_eq!(run(5, 5), 0b00);
        assert_eq!(run(7, 0), 0b10);
    }
}
