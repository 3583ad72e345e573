use super::{Circuit, WireRole};

/// Reusable zeroed scratch wires.
///
/// `take` hands out the lowest free wire, declaring a new `anc<N>` wire when
/// none is free. Callers return wires with `give` only once they are zero.
#[derive(Clone, Debug, Default)]
pub struct AncillaPool {
    free: Vec<usize>,
    created: usize,
}

impl AncillaPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn take(&mut self, c: &mut Circuit) -> usize {
        if let Some(w) = self.free.pop() {
            return w;
        }
        let mut name = format!("anc{}", self.created);
        while c.wire_index(&name).is_some() {
            name.push('_');
        }
        self.created += 1;
        c.wire(name, WireRole::Ancilla)
    }

    pub fn take_n(&mut self, c: &mut Circuit, n: usize) -> Vec<usize> {
        (0..n).map(|_| self.take(c)).collect()
    }

    pub fn give(&mut self, w: usize) {
        debug_assert!(!self.free.contains(&w));
        self.free.push(w);
        // highest first so that pop yields the lowest index
        self.free.sort_unstable_by(|a, b| b.cmp(a));
    }

    pub fn give_all(&mut self, ws: impl IntoIterator<Item = usize>) {
        for w in ws {
            self.give(w);
        }
    }

    /// Number of wires this pool has declared.
    pub fn created(&self) -> usize {
        self.created
    }
}
