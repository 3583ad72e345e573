//! Python bindings for segrover.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use segrover::circuit::{emit_netlist, QuantumCost};
use segrover::grover;
use segrover::oracle::{compile_oracle, evaluate_oracle, OracleArtifact};
use segrover::puzzle::{KRequest, PuzzleFile};
use segrover::refsolver::{render_candidate, solve_classical, solve_min_k, SolutionSet};
use segrover::register::InputLayout;
use segrover::segcode::PuzzleConfig;
use segrover::synth::component_table;
use segrover::Error;

pyo3::create_exception!(segrover, CapacityError, PyRuntimeError);
pyo3::create_exception!(segrover, NoSolutionError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Capacity(m) => CapacityError::new_err(m),
        Error::NoSolution(m) => NoSolutionError::new_err(m),
        Error::Internal(m) => PyRuntimeError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn cost_dict<'py>(py: Python<'py>, c: &QuantumCost) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("qubits", c.n_total_qubits)?;
    d.set_item("input", c.n_input)?;
    d.set_item("ancilla", c.n_ancilla)?;
    d.set_item("output", c.n_output)?;
    d.set_item("ccx", c.n_toffoli)?;
    d.set_item("cx", c.n_cnot)?;
    d.set_item("x", c.n_not)?;
    d.set_item("gates", c.n_total_gates)?;
    Ok(d)
}

/// A parsed puzzle file.
#[pyclass(name = "Puzzle", frozen)]
struct PyPuzzle {
    file: PuzzleFile,
}

impl PyPuzzle {
    /// The puzzle with K resolved for `k: min` files.
    fn resolved(&self) -> Result<PuzzleConfig, Error> {
        match self.file.k {
            KRequest::Min => match solve_min_k(&self.file.puzzle, &self.file.spec)? {
                Some((k, _)) => Ok(self.file.with_k(k)),
                None => Err(Error::NoSolution("no K below 8 admits a solution".into())),
            },
            _ => Ok(self.file.puzzle.clone()),
        }
    }

    fn rows(&self, puzzle: &PuzzleConfig, set: &SolutionSet) -> Vec<(String, String)> {
        set.candidates
            .iter()
            .map(|&x| (set.layout.bit_string(x), render_candidate(puzzle, &self.file.spec, &set.layout, x)))
            .collect()
    }
}

#[pymethods]
impl PyPuzzle {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPuzzle {
            file: text.parse().map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::new(&text)
    }

    #[getter]
    fn n_inputs(&self) -> PyResult<usize> {
        Ok(InputLayout::of(&self.file.puzzle).map_err(to_py)?.width())
    }

    fn input_names(&self) -> PyResult<Vec<String>> {
        Ok(InputLayout::of(&self.file.puzzle).map_err(to_py)?.names())
    }

    /// Smallest K with a solution, or None.
    fn min_k(&self) -> PyResult<Option<u8>> {
        Ok(solve_min_k(&self.file.puzzle, &self.file.spec).map_err(to_py)?.map(|(k, _)| k))
    }

    /// `(bits, equation)` pairs for every solution.
    fn solve(&self, py: Python<'_>) -> PyResult<Vec<(String, String)>> {
        py.detach(|| {
            let puzzle = self.resolved()?;
            let set = solve_classical(&puzzle, &self.file.spec)?;
            Ok(self.rows(&puzzle, &set))
        })
        .map_err(to_py)
    }

    fn compile(&self, py: Python<'_>) -> PyResult<Oracle> {
        py.detach(|| {
            let puzzle = self.resolved()?;
            let art = compile_oracle(&puzzle, &self.file.spec)?;
            Ok(Oracle { art })
        })
        .map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.file.to_string()
    }
}

/// A compiled oracle circuit.
#[pyclass(frozen)]
struct Oracle {
    art: OracleArtifact,
}

#[pymethods]
impl Oracle {
    fn cost<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        cost_dict(py, &self.art.cost)
    }

    fn netlist(&self) -> String {
        emit_netlist(&self.art.circuit)
    }

    fn sidecar_json(&self) -> String {
        self.art.sidecar_json()
    }

    /// Oracle output for a candidate given as an integer (bit i = input i).
    fn evaluate(&self, candidate: u64) -> PyResult<bool> {
        let bits: Vec<bool> = (0..self.art.n_inputs()).map(|i| candidate >> i & 1 == 1).collect();
        evaluate_oracle(&self.art, &bits).map_err(to_py)
    }

    /// Grover search; returns `(bits, equation, probability)` above the
    /// uniform level, most likely first.
    #[pyo3(signature = (fix_displays = Vec::new(), fix_operators = false, capacity = grover::DEFAULT_CAPACITY))]
    fn grover(
        &self,
        py: Python<'_>,
        fix_displays: Vec<usize>,
        fix_operators: bool,
        capacity: usize,
    ) -> PyResult<Vec<(String, String, f64)>> {
        py.detach(|| {
            let a = &self.art;
            let register = a.layout.register_fixing(&a.puzzle, &fix_displays, fix_operators)?;
            let solve = grover::solve_quantum(a, &register, capacity)?;
            let mut rows: Vec<(String, String, f64)> = solve
                .candidates
                .iter()
                .map(|&x| {
                    let p = register.index_of(x).map_or(0.0, |i| solve.run.probability(i));
                    (a.layout.bit_string(x), render_candidate(&a.puzzle, &a.spec, &a.layout, x), p)
                })
                .collect();
            rows.sort_by(|x, y| y.2.total_cmp(&x.2).then_with(|| x.0.cmp(&y.0)));
            Ok(rows)
        })
        .map_err(to_py)
    }
}

#[pyfunction]
fn optimal_iterations(n: usize, solutions: u64) -> PyResult<u64> {
    grover::optimal_iterations(n, solutions).map_err(to_py)
}

#[pyfunction]
fn success_probability(n: usize, solutions: u64, r: u64) -> f64 {
    grover::success_probability(n, solutions, r)
}

/// Measured and reference costs of each component builder.
#[pyfunction]
fn components<'py>(py: Python<'py>) -> PyResult<Vec<(String, Bound<'py, PyDict>, Bound<'py, PyDict>)>> {
    component_table()
        .iter()
        .map(|r| Ok((r.name.to_string(), cost_dict(py, &r.measured)?, cost_dict(py, &r.reference)?)))
        .collect()
}

#[pymodule]
fn segrover_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPuzzle>()?;
    m.add_class::<Oracle>()?;
    m.add_function(wrap_pyfunction!(optimal_iterations, m)?)?;
    m.add_function(wrap_pyfunction!(success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add("NoSolutionError", m.py().get_type::<NoSolutionError>())?;
    Ok(())
}
