//! Two-digit-number generator: `z = 10x + y` for digits `x`, `y`.

use crate::circuit::{Circuit, Control, WireRole};

/// Carries, step outputs and result bits of the two-digit construction,
/// evaluated classically. Index `i` holds the quantity with subscript `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TdnSignals {
    pub c: [bool; 8],
    pub p: [bool; 9],
    pub c_final: [bool; 9],
    pub z: [bool; 10],
}

impl TdnSignals {
    pub fn value(&self) -> u32 {
        (1..=9).map(|i| (self.z[i] as u32) << (i - 1)).sum()
    }
}

/// The reference equations for `10x + y` on 4-bit operands.
pub fn tdn_reference(x: u8, y: u8) -> TdnSignals {
    let xb = |i: usize| x >> (i - 1) & 1 == 1;
    let yb = |i: usize| y >> (i - 1) & 1 == 1;
    let mut s = TdnSignals::default();
    s.c[4] = xb(3) & xb(1);
    s.c[5] = (xb(4) & xb(2)) ^ (s.c[4] & (xb(4) ^ xb(2)));
    s.c[6] = s.c[5] & xb(3);
    s.c[7] = s.c[6] & xb(4);
    s.p[4] = xb(3) ^ xb(1);
    s.p[5] = xb(4) ^ xb(2) ^ s.c[4];
    s.p[6] = xb(3) ^ s.c[5];
    s.p[7] = xb(4) ^ s.c[6];
    s.p[8] = s.c[7];
    s.c_final[2] = xb(1) & yb(2);
    s.c_final[3] = (xb(2) & yb(3)) ^ (s.c_final[2] & (xb(2) ^ yb(3)));
    s.c_final[4] = (s.p[4] & yb(4)) ^ (s.c_final[3] & (s.p[4] ^ yb(4)));
    s.c_final[5] = s.c_final[4] & s.p[5];
    s.c_final[6] = s.c_final[5] & s.p[6];
    s.c_final[7] = s.c_final[6] & s.p[7];
    s.c_final[8] = s.c_final[7] & s.p[8];
    s.z[1] = yb(1);
    s.z[2] = xb(1) ^ yb(2);
    s.z[3] = xb(2) ^ yb(3) ^ s.c_final[2];
    s.z[4] = s.p[4] ^ yb(4) ^ s.c_final[3];
    s.z[5] = s.p[5] ^ s.c_final[4];
    s.z[6] = s.p[6] ^ s.c_final[5];
    s.z[7] = s.p[7] ^ s.c_final[6];
    s.z[8] = s.p[8] ^ s.c_final[7];
    s.z[9] = s.c_final[8];
    s
}

/// Wires: inputs `x1..x4`, `y1..y4`, ancilla `anc0`, outputs `z1..z8`.
///
/// Valid for digit inputs only. `z8` is always 0 for such inputs and serves
/// as scratch for the third carry.
pub fn build_tdn_generator() -> Circuit {
    let mut c = Circuit::new();
    let x: Vec<usize> = (1..=4).map(|i| c.wire(format!("x{i}"), WireRole::Input)).collect();
    let y: Vec<usize> = (1..=4).map(|i| c.wire(format!("y{i}"), WireRole::Input)).collect();
    let a = c.wire("anc0", WireRole::Ancilla);
    let z: Vec<usize> = (1..=8).map(|i| c.wire(format!("z{i}"), WireRole::Output)).collect();
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let (y1, y2, y3, y4) = (y[0], y[1], y[2], y[3]);
    let (z1, z2, z3, z4, z5, z6, z7, z8) = (z[0], z[1], z[2], z[3], z[4], z[5], z[6], z[7]);

    // 10x into z4..z7
    c.cx(x3, z4);
    c.cx(x1, z4);
    c.ccx(x3, x1, a);
    c.cx(x4, z5);
    c.cx(x2, z5);
    c.cx(a, z5);
    c.ccx(a, x2, z6);
    c.cx(z6, z7);
    c.cx(x4, z7);
    c.cx(x3, z6);
    c.ccx(x3, x1, a);

    // add y, carries c'2 in z1, c'3 in z8, c'4 in the ancilla
    c.ccx(x1, y2, z1);
    c.cx(x1, z2);
    c.cx(y2, z2);
    c.cx(x2, z3);
    c.cx(y3, z3);
    c.ccx(x2, y3, z8);
    c.ccx(z1, z3, z8);
    c.cx(z1, z3);
    c.ccx(z4, y4, a);
    c.cx(y4, z4);
    c.ccx(z8, z4, a);
    c.cx(z8, z4);

    // propagate c'4 through z5..z7
    c.mcx([Control::pos(a), Control::pos(z5), Control::pos(z6)], z7);
    c.ccx(a, z5, z6);
    c.cx(a, z5);

    // clear c'4
    c.cx(z8, z4);
    c.ccx(z8, z4, a);
    c.cx(y4, z4);
    c.ccx(z4, y4, a);
    c.cx(y4, z4);
    c.cx(z8, z4);

    // clear c'3 and c'2
    c.cx(z1, z3);
    c.ccx(z1, z3, z8);
    c.cx(z1, z3);
    c.ccx(x2, y3, z8);
    c.ccx(x1, y2, z1);
    c.cx(y1, z1);
    c
}
