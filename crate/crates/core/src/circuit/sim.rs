use super::Circuit;

/// Number of basis states evaluated per pass.
pub const LANES: usize = 64;

const NEG: u32 = 1 << 31;

/// Flattened circuit that evaluates 64 basis states at once.
///
/// Wire `w` is a `u64` whose bit `j` is the value of `w` in lane `j`.
#[derive(Clone, Debug)]
pub struct BitSliced {
    width: usize,
    controls: Vec<u32>,
    gates: Vec<(u32, u32, u32)>,
}

impl BitSliced {
    pub fn new(circuit: &Circuit) -> Self {
        let mut controls = Vec::new();
        let mut gates = Vec::with_capacity(circuit.gates().len());
        for g in circuit.gates() {
            let start = controls.len() as u32;
            for c in g.controls() {
                controls.push(c.wire as u32 | if c.positive { 0 } else { NEG });
            }
            gates.push((start, controls.len() as u32, g.target() as u32));
        }
        BitSliced {
            width: circuit.width(),
            controls,
            gates,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn run(&self, lanes: &mut [u64]) {
        assert_eq!(lanes.len(), self.width, "one u64 per wire");
        for &(s, e, t) in &self.gates {
            let mut m = !0u64;
            for &c in &self.controls[s as usize..e as usize] {
                let v = lanes[(c & !NEG) as usize];
                m &= if c & NEG == 0 { v } else { !v };
            }
            lanes[t as usize] ^= m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Control, WireRole};

    #[test]
    fn matches_scalar_simulation() {
        let mut c = Circuit::new();
        for i in 0..5 {
            c.wire(format!("w{i}"), WireRole::Input);
        }
        c.cx(0, 1);
        c.mcx([Control::neg(1), Control::pos(2), Control::pos(3)], 4);
        c.ccx(4, 0, 2);
        c.x(3);
        let bs = BitSliced::new(&c);
        let mut lanes = vec![0u64; 5];
        for s in 0..32u64 {
            for (w, lane) in lanes.iter_mut().enumerate() {
                *lane |= (s >> w & 1) << s;
            }
        }
        bs.run(&mut lanes);
        for s in 0..32u64 {
            let got: u64 = (0..5).map(|w| (lanes[w] >> s & 1) << w).sum();
            assert_eq!(got, c.apply_u64(s));
        }
    }
}
