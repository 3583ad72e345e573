use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use segrover::circuit::emit_netlist;
use segrover::grover::{init_thread_pool, solve_quantum, DEFAULT_CAPACITY};
use segrover::oracle::{compile_oracle, OracleArtifact};
use segrover::puzzle::{parse_puzzle, KRequest, PuzzleFile};
use segrover::refsolver::{cross_check, render_candidate, solve_classical, solve_min_k, SolutionSet};
use segrover::register::{InputLayout, SearchRegister};
use segrover::segcode::{PuzzleConfig, K_BITS};
use segrover::synth::{component_table, render_component_table};
use segrover::Error;

#[derive(Parser)]
#[command(name = "segrover", version, about = "Seven-segment puzzle oracles and Grover search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Classical,
    Grover,
}

#[derive(clap::Args)]
struct Restriction {
    /// Pin these displays (comma separated indices) to their initial codes.
    #[arg(long, value_delimiter = ',')]
    fix_displays: Vec<usize>,
    /// Pin every operator slot to its initial code.
    #[arg(long)]
    fix_operators: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print every solution of a puzzle.
    Solve {
        puzzle: PathBuf,
        #[arg(long, value_enum, default_value = "classical")]
        engine: Engine,
        #[command(flatten)]
        restrict: Restriction,
        /// Largest register the Grover simulator accepts.
        #[arg(long, default_value_t = DEFAULT_CAPACITY)]
        capacity: usize,
        /// Write the measurement histogram of a Grover run here.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Compile a puzzle into an oracle circuit.
    Compile {
        puzzle: PathBuf,
        /// Write the netlist here, with a JSON sidecar next to it.
        #[arg(long)]
        emit_netlist: Option<PathBuf>,
        /// Print the oracle's qubit and gate counts.
        #[arg(long)]
        cost_report: bool,
    },
    /// Compare the compiled oracle with the reference predicate.
    Verify {
        puzzle: PathBuf,
        #[command(flatten)]
        restrict: Restriction,
        /// Random candidates to test when the register is too large to sweep.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print costs of the component builders.
    Components {
        /// Tab-separated table with reference counts.
        #[arg(long)]
        table: bool,
    },
}

fn read_puzzle(path: &PathBuf) -> Result<PuzzleFile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_puzzle(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}:{line}:{column}: {message}", path.display()),
        },
        other => other,
    })
}

fn register_for(puzzle: &PuzzleConfig, r: &Restriction) -> Result<SearchRegister, Error> {
    InputLayout::of(puzzle)?.register_fixing(puzzle, &r.fix_displays, r.fix_operators)
}

fn restricted(set: SolutionSet, register: &SearchRegister) -> SolutionSet {
    SolutionSet {
        candidates: set.candidates.into_iter().filter(|&x| register.admits(x)).collect(),
        layout: set.layout,
    }
}

/// Classical solutions inside the register, choosing K when the file asks for the minimum.
fn classical(file: &PuzzleFile, r: &Restriction) -> Result<(PuzzleConfig, SolutionSet), Error> {
    let ks: Vec<u8> = match file.k {
        KRequest::Min => (0..1 << K_BITS).collect(),
        _ => vec![0],
    };
    let mut last = None;
    for k in ks {
        let puzzle = match file.k {
            KRequest::Min => file.with_k(k),
            _ => file.puzzle.clone(),
        };
        let register = register_for(&puzzle, r)?;
        let set = restricted(solve_classical(&puzzle, &file.spec)?, &register);
        if !set.is_empty() {
            return Ok((puzzle, set));
        }
        last = Some((puzzle, set));
    }
    Ok(last.expect("at least one K tried"))
}

/// Oracle for the file, choosing the smallest K whose oracle marks something
/// in the register when the file asks for the minimum.
fn oracle(file: &PuzzleFile, r: &Restriction, capacity: usize) -> Result<(OracleArtifact, SearchRegister), Error> {
    let n = register_for(&file.puzzle, r)?.n_free();
    if n > capacity {
        return Err(Error::Capacity(format!(
            "{n}-qubit register exceeds the simulator capacity of {capacity}"
        )));
    }
    match file.k {
        KRequest::Min => {
            for k in 0..1 << K_BITS {
                let puzzle = file.with_k(k);
                let art = compile_oracle(&puzzle, &file.spec)?;
                let register = register_for(&puzzle, r)?;
                if !art.marked(&register)?.is_empty() {
                    return Ok((art, register));
                }
            }
            Err(Error::NoSolution("no K below 8 admits a solution".into()))
        }
        _ => {
            let art = compile_oracle(&file.puzzle, &file.spec)?;
            let register = register_for(&file.puzzle, r)?;
            Ok((art, register))
        }
    }
}

/// The puzzle with the smallest solvable K for `k: min` files.
fn resolve_k(file: &PuzzleFile) -> Result<PuzzleConfig, Error> {
    match file.k {
        KRequest::Min => Ok(solve_min_k(&file.puzzle, &file.spec)?
            .map_or_else(|| file.with_k(0), |(k, _)| file.with_k(k))),
        _ => Ok(file.puzzle.clone()),
    }
}

fn k_comment(puzzle: &PuzzleConfig, file: &PuzzleFile) -> String {
    match (file.k, puzzle.k_budget) {
        (KRequest::Min, segrover::segcode::KBudget::Fixed(k)) => format!("# minimal k: {k}\n"),
        _ => String::new(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve {
            puzzle,
            engine,
            restrict,
            capacity,
            histogram,
        } => {
            let file = read_puzzle(&puzzle)?;
            let (config, set) = match engine {
                Engine::Classical => classical(&file, &restrict)?,
                Engine::Grover => {
                    let (art, register) = oracle(&file, &restrict, capacity)?;
                    let solve = solve_quantum(&art, &register, capacity)?;
                    if let Some(path) = &histogram {
                        write(path, &solve.histogram_tsv(&art))?;
                    }
                    eprintln!(
                        "grover: {} qubits, {} marked, {} iterations, success probability {:.6}",
                        solve.run.n,
                        solve.run.marked.len(),
                        solve.run.iterations,
                        solve.run.success_probability()
                    );
                    let set = SolutionSet {
                        layout: art.layout.clone(),
                        candidates: solve.candidates,
                    };
                    (art.puzzle, set)
                }
            };
            if set.is_empty() {
                eprintln!("no solution");
                return Ok(ExitCode::from(1));
            }
            print!("{}{}", k_comment(&config, &file), set.to_tsv(&config, &file.spec));
            Ok(ExitCode::SUCCESS)
        }
        Command::Compile {
            puzzle,
            emit_netlist: netlist,
            cost_report,
        } => {
            let file = read_puzzle(&puzzle)?;
            let config = resolve_k(&file)?;
            let art = compile_oracle(&config, &file.spec)?;
            if let Some(path) = &netlist {
                write(path, &emit_netlist(&art.circuit))?;
                write(&path.with_extension("json"), &art.sidecar_json())?;
            }
            if cost_report || netlist.is_none() {
                let c = art.cost;
                println!("qubits\tinput\tancilla\toutput\tccx\tcx\tx\tgates");
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    c.n_total_qubits, c.n_input, c.n_ancilla, c.n_output, c.n_toffoli, c.n_cnot, c.n_not, c.n_total_gates
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            puzzle,
            restrict,
            samples,
            seed,
        } => {
            let file = read_puzzle(&puzzle)?;
            let config = resolve_k(&file)?;
            let art = compile_oracle(&config, &file.spec)?;
            let register = register_for(&config, &restrict)?;
            let report = cross_check(&art, &register, samples, seed)?;
            println!(
                "{} candidates ({}), {} marked, {} mismatches",
                report.checked,
                if report.exhaustive { "exhaustive" } else { "sampled" },
                report.marked,
                report.mismatch_count
            );
            for &x in &report.mismatches {
                println!(
                    "mismatch\t{}\t{}",
                    art.layout.bit_string(x),
                    render_candidate(&art.puzzle, &art.spec, &art.layout, x)
                );
            }
            if report.mismatch_count > 0 {
                return Err(Error::Internal("oracle disagrees with the reference predicate".into()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Components { table } => {
            let rows = component_table();
            if table {
                print!("{}", render_component_table(&rows));
            } else {
                for r in &rows {
                    println!("{}\t{} qubits\t{} gates", r.name, r.measured.n_total_qubits, r.measured.n_total_gates);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                Error::Parse { message, .. } => eprintln!("segrover: {message}"),
                _ => eprintln!("segrover: {e}"),
            }
            ExitCode::from(match e {
                Error::NoSolution(_) => 1,
                Error::Capacity(_) => 3,
                Error::Internal(_) => 4,
                _ => 2,
            })
        }
    }
}
