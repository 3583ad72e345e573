//! Functional Grover simulation over the oracle's search register.
//!
//! The compiled oracle is a reversible Boolean function with clean ancillas,
//! so its phase oracle acts on the search register alone as `(-1)^f(x)`.
//! Amplitudes are therefore stored only for the free input bits.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::OracleArtifact;
use crate::refsolver::render_candidate;
use crate::register::SearchRegister;

pub const DEFAULT_CAPACITY: usize = 26;

/// floor(pi/4 * sqrt(2^n / M)).
pub fn optimal_iterations(n: usize, solutions: u64) -> Result<u64> {
    if solutions == 0 {
        return Err(Error::NoSolution("an oracle without solutions has no optimal iteration count".into()));
    }
    let big_n = 2f64.powi(n as i32);
    if solutions as f64 >= big_n {
        return Err(Error::Domain(format!("{solutions} solutions do not fit in {n} bits")));
    }
    Ok((FRAC_PI_4 * (big_n / solutions as f64).sqrt()).floor() as u64)
}

/// sin^2((2r+1) theta) with sin theta = sqrt(M/N).
pub fn success_probability(n: usize, solutions: u64, r: u64) -> f64 {
    let theta = (solutions as f64 / 2f64.powi(n as i32)).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

/// Real amplitudes over `2^n` basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeVector {
    pub n: usize,
    pub amplitudes: Vec<f64>,
}

impl AmplitudeVector {
    pub fn uniform(n: usize) -> Self {
        let len = 1usize << n;
        AmplitudeVector {
            n,
            amplitudes: vec![1.0 / (len as f64).sqrt(); len],
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.par_iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Negates the amplitude of every marked index.
    pub fn phase_flip(&mut self, marked: &[u64]) {
        for &i in marked {
            self.amplitudes[i as usize] = -self.amplitudes[i as usize];
        }
    }

    /// Inversion about the mean.
    pub fn diffuse(&mut self) {
        let sum = self.amplitudes.par_iter().sum::<f64>();
        self.diffuse_with_sum(sum);
    }

    /// Inversion about the mean given the current amplitude sum; returns
    /// the sum afterwards, accumulated during the same pass.
    fn diffuse_with_sum(&mut self, sum: f64) -> f64 {
        let twice_mean = 2.0 * sum / self.amplitudes.len() as f64;
        self.amplitudes
            .par_iter_mut()
            .map(|a| {
                *a = twice_mean - *a;
                *a
            })
            .sum()
    }

    pub fn probability_of(&self, indices: &[u64]) -> f64 {
        indices.iter().map(|&i| self.amplitudes[i as usize].powi(2)).sum()
    }
}

/// Outcome of `r` Grover iterations.
#[derive(Clone, Debug)]
pub struct GroverRun {
    pub n: usize,
    pub iterations: u64,
    pub marked: Vec<u64>,
    /// Success probability before the first and after every iteration.
    pub history: Vec<f64>,
    pub state: AmplitudeVector,
}

impl GroverRun {
    pub fn success_probability(&self) -> f64 {
        *self.history.last().unwrap()
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.state.amplitudes[index as usize].powi(2)
    }

    /// Indices measured with probability above the uniform level `1/N`.
    pub fn found(&self) -> Vec<u64> {
        let level = 1.0 / self.state.amplitudes.len() as f64;
        (0..self.state.amplitudes.len() as u64)
            .filter(|&i| self.probability(i) > level * (1.0 + 1e-9))
            .collect()
    }
}

/// Runs Grover's iteration `r` times on `n` qubits with a phase oracle
/// marking `marked` (ascending, distinct).
pub fn run_marked(n: usize, marked: &[u64], r: u64, capacity: usize) -> Result<GroverRun> {
    if n > capacity {
        return Err(Error::Capacity(format!(
            "{n}-qubit register exceeds the simulator capacity of {capacity}"
        )));
    }
    if let Some(&bad) = marked.iter().find(|&&i| i >> n != 0) {
        return Err(Error::Domain(format!("marked index {bad} outside {n} bits")));
    }
    let mut state = AmplitudeVector::uniform(n);
    let mut history = vec![state.probability_of(marked)];
    let mut sum: f64 = state.amplitudes.par_iter().sum();
    for _ in 0..r {
        sum -= 2.0 * marked.iter().map(|&i| state.amplitudes[i as usize]).sum::<f64>();
        state.phase_flip(marked);
        sum = state.diffuse_with_sum(sum);
        history.push(state.probability_of(marked));
    }
    Ok(GroverRun {
        n,
        iterations: r,
        marked: marked.to_vec(),
        history,
        state,
    })
}

/// Runs Grover with the compiled oracle acting on `register`.
pub fn run_grover(
    art: &OracleArtifact,
    register: &SearchRegister,
    r: u64,
    capacity: usize,
) -> Result<GroverRun> {
    if register.n_free() > capacity {
        return Err(Error::Capacity(format!(
            "{}-qubit register exceeds the simulator capacity of {capacity}",
            register.n_free()
        )));
    }
    let marked = art.marked(register)?;
    run_marked(register.n_free(), &marked, r, capacity)
}

/// Result of a quantum solve: the solutions read off the final distribution.
#[derive(Clone, Debug)]
pub struct QuantumSolve {
    pub run: GroverRun,
    /// Extra qubits of a padded register (see [`solve_quantum`]).
    pub padding: usize,
    pub register: SearchRegister,
    /// Candidates in input order, sorted like the classical solution set.
    pub candidates: Vec<u64>,
}

/// Solves with the optimal number of iterations and returns every candidate
/// whose final probability exceeds the uniform level.
///
/// When solutions make up more than a quarter of the register, the register
/// is enlarged by idle qubits whose nonzero values are never marked, so that
/// the amplitude of solutions still grows.
pub fn solve_quantum(art: &OracleArtifact, register: &SearchRegister, capacity: usize) -> Result<QuantumSolve> {
    let n = register.n_free();
    if n > capacity {
        return Err(Error::Capacity(format!(
            "{n}-qubit register exceeds the simulator capacity of {capacity}"
        )));
    }
    let marked = art.marked(register)?;
    if marked.is_empty() {
        return Err(Error::NoSolution("the oracle marks no candidate in the register".into()));
    }
    let mut padding = 0;
    while (marked.len() as u64) << 2 > 1u64 << (n + padding) {
        padding += 1;
    }
    if n + padding > capacity {
        return Err(Error::Capacity(format!(
            "padding to {} qubits exceeds the simulator capacity of {capacity}",
            n + padding
        )));
    }
    let r = optimal_iterations(n + padding, marked.len() as u64)?;
    let run = run_marked(n + padding, &marked, r, capacity)?;
    let mut candidates: Vec<u64> = run
        .found()
        .into_iter()
        .filter(|&i| i >> n == 0)
        .map(|i| register.candidate(i))
        .collect();
    candidates.sort_by_key(|&x| art.layout.bit_string(x));
    Ok(QuantumSolve {
        run,
        padding,
        register: register.clone(),
        candidates,
    })
}

impl QuantumSolve {
    /// `bits`, `equation`, `probability` rows sorted by probability, most
    /// likely first. Only states above the uniform level are listed.
    pub fn histogram_tsv(&self, art: &OracleArtifact) -> String {
        let n = self.register.n_free();
        let mut rows: Vec<(u64, f64)> = self
            .run
            .found()
            .into_iter()
            .filter(|&i| i >> n == 0)
            .map(|i| (self.register.candidate(i), self.run.probability(i)))
            .collect();
        rows.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then_with(|| art.layout.bit_string(a.0).cmp(&art.layout.bit_string(b.0)))
        });
        let mut s = String::from("bits\tequation\tprobability\n");
        for (x, p) in rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{p:.6}",
                art.layout.bit_string(x),
                render_candidate(&art.puzzle, &art.spec, &art.layout, x)
            );
        }
        s
    }
}

/// Worker count from `SEGROVER_THREADS`, if set to a positive integer.
pub fn configured_threads() -> Option<usize> {
    std::env::var("SEGROVER_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Sizes the global rayon pool from `SEGROVER_THREADS`. Later calls and
/// calls after the pool has started have no effect.
pub fn init_thread_pool() {
    if let Some(n) = configured_threads() {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_counts() {
        assert_eq!(optimal_iterations(7, 10).unwrap(), 2);
        assert_eq!(optimal_iterations(14, 2).unwrap(), 71);
        assert_eq!(optimal_iterations(1, 1).unwrap(), 1);
        assert!(matches!(optimal_iterations(5, 0), Err(Error::NoSolution(_))));
    }

    #[test]
    fn closed_form_agreement() {
        for (n, m) in [(6usize, 1u64), (8, 3), (10, 17), (12, 5)] {
            let marked: Vec<u64> = (0..m).map(|i| (i * 37 + 11) % (1 << n)).collect();
            let run = run_marked(n, &marked, 200, DEFAULT_CAPACITY).unwrap();
            for (r, &p) in run.history.iter().enumerate() {
                assert!((p - success_probability(n, m, r as u64)).abs() < 1e-6, "{n} {m} {r}");
            }
            assert!((run.state.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn uniform_is_fixed_by_diffuser() {
        let mut v = AmplitudeVector::uniform(9);
        let u = v.clone();
        v.diffuse();
        for (a, b) in v.amplitudes.iter().zip(&u.amplitudes) {
            assert!((a - b).abs() < 1e-12);
        }
        let run = run_marked(9, &[], 13, DEFAULT_CAPACITY).unwrap();
        assert!(run.state.amplitudes.iter().all(|a| (a - u.amplitudes[0]).abs() < 1e-12));
    }

    #[test]
    fn amplitude_symmetry() {
        let marked = [3u64, 40, 77, 100];
        let mut v = AmplitudeVector::uniform(7);
        for _ in 0..6 {
            v.phase_flip(&marked);
            v.diffuse();
            let sol = v.amplitudes[3];
            let other = v.amplitudes[0];
            for (i, &a) in v.amplitudes.iter().enumerate() {
                let want = if marked.contains(&(i as u64)) { sol } else { other };
                assert!((a - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(run_marked(27, &[0], 1, DEFAULT_CAPACITY), Err(Error::Capacity(_))));
    }
}
