//! Bit counting: the seven-segment Hamming-distance counter and a general
//! popcount by column compression.

use crate::circuit::{AncillaPool, Circuit, WireRole};

/// Number of bits needed to hold a count of `n`.
pub fn count_width(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Full adder on `x, y, z`: carry into `carry`, sum left in `z`, `y` holds
/// `x ^ y` afterwards.
fn full_adder(c: &mut Circuit, x: usize, y: usize, z: usize, carry: usize) {
    c.ccx(x, y, carry);
    c.cx(x, y);
    c.ccx(y, z, carry);
    c.cx(y, z);
}

/// Hamming distance of two 7-bit codes as a 3-bit count.
///
/// Wires: `p_a..p_g`, `q_a..q_g` inputs, `anc0`, `anc1`, outputs `o1..o3`
/// (`o1` least significant).
pub fn build_hd_counter() -> Circuit {
    let mut c = Circuit::new();
    let names = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];
    let p: Vec<usize> = names.iter().map(|n| c.wire(format!("p_{n}"), WireRole::Input)).collect();
    let d: Vec<usize> = names.iter().map(|n| c.wire(format!("q_{n}"), WireRole::Input)).collect();
    let anc1 = c.wire("anc0", WireRole::Ancilla);
    let anc2 = c.wire("anc1", WireRole::Ancilla);
    let o: Vec<usize> = (1..=3).map(|i| c.wire(format!("o{i}"), WireRole::Output)).collect();

    for i in 0..7 {
        c.cx(p[i], d[i]);
    }
    let start = c.gates().len();
    full_adder(&mut c, d[0], d[1], d[2], anc1);
    full_adder(&mut c, d[3], d[4], d[5], anc2);
    let adders: Vec<_> = c.gates()[start..].to_vec();

    // weight 1
    c.cx(d[2], o[0]);
    c.cx(d[5], o[0]);
    c.cx(d[6], o[0]);
    // third weight-2 carry, then sum the three weight-2 bits
    c.ccx(d[2], d[5], o[1]);
    c.cx(d[2], d[5]);
    c.ccx(d[5], d[6], o[1]);
    c.cx(d[2], d[5]);
    c.ccx(anc1, anc2, o[2]);
    c.cx(anc1, anc2);
    c.ccx(anc2, o[1], o[2]);
    c.cx(anc2, o[1]);
    c.cx(anc1, anc2);

    c.extend_gates(adders.into_iter().rev());
    for i in (0..7).rev() {
        c.cx(p[i], d[i]);
    }
    c
}

/// Writes the number of set wires among `bits` into fresh wires taken from
/// `pool`, least significant first. Scratch carries go back to the pool.
pub(crate) fn emit_popcount(c: &mut Circuit, pool: &mut AncillaPool, bits: &[usize]) -> Vec<usize> {
    let width = count_width(bits.len());
    let out = pool.take_n(c, width);
    let start = c.gates().len();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); width + 1];
    columns[0] = bits.to_vec();
    let mut carries = Vec::new();
    for w in 0..width {
        while columns[w].len() >= 2 {
            let carry = pool.take(c);
            carries.push(carry);
            if columns[w].len() >= 3 {
                let x = columns[w].remove(0);
                let y = columns[w].remove(0);
                let z = columns[w].remove(0);
                full_adder(c, x, y, z, carry);
                columns[w].push(z);
            } else {
                let x = columns[w].remove(0);
                let y = columns[w].remove(0);
                c.ccx(x, y, carry);
                c.cx(x, y);
                columns[w].push(y);
            }
            columns[w + 1].push(carry);
        }
    }
    let compute: Vec<_> = c.gates()[start..].to_vec();
    for w in 0..width {
        if let Some(&src) = columns[w].first() {
            c.cx(src, out[w]);
        }
    }
    c.extend_gates(compute.into_iter().rev());
    pool.give_all(carries);
    out
}
