"""Smoke test for the segrover Python module.

Build and run:
    cargo build --release -p segrover-py
    cp target/release/libsegrover_py.so python/segrover_py.so
    python3 python/smoke_test.py
"""

import json
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import segrover_py as sg  # noqa: E402

PUZZLES = HERE.parent / "puzzles"


def main():
    p = sg.Puzzle.load(str(PUZZLES / "case_study.puzzle"))
    assert p.min_k() == 2
    sols = p.solve()
    assert sorted(eq for _, eq in sols) == ["3+6=09", "6+3=09"], sols

    oracle = p.compile()
    cost = oracle.cost()
    assert cost["input"] == p.n_inputs == len(p.input_names())
    assert json.loads(oracle.sidecar_json())["schema"] == "segrover-oracle/1"
    for bits, _ in sols:
        x = int(bits[::-1], 2)
        assert oracle.evaluate(x)
    assert not oracle.evaluate(0)

    found = oracle.grover(fix_displays=[2, 3], fix_operators=True)
    assert sorted(eq for _, eq, _ in found) == ["3+6=09", "6+3=09"], found
    assert sum(pr for _, _, pr in found) > 0.8

    assert sg.optimal_iterations(7, 10) == 2
    assert abs(sg.success_probability(7, 10, 2) - 0.976) < 1e-3
    assert len(sg.components()) >= 5

    try:
        sg.Puzzle("equation: 1+1=2\nbogus: 1\n")
    except ValueError:
        pass
    else:
        raise AssertionError("bad puzzle accepted")

    print("ok:", ", ".join(eq for _, eq, _ in found), f"cost {cost['qubits']} qubits / {cost['gates']} gates")


if __name__ == "__main__":
    main()
