import json
import subprocess
import sys

import pytest

from shankel import __version__, groebner, switchable
from shankel.cli import main, render_text


def run(capsys, *argv):
    old = groebner.DEFAULT_GB_BUDGET, switchable.DEFAULT_ENUM_BOUND
    try:
        code = main(list(argv))
    finally:
        groebner.DEFAULT_GB_BUDGET, switchable.DEFAULT_ENUM_BOUND = old
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_gens_hankel(capsys):
    code, rep = run_json(capsys, "--r", "2,2", "--s", "2", "--t", "2", "gens")
    assert code == 0 and rep["result"]["count"] == 1
    assert rep["version"] == __version__ and rep["command"] == "gens"
    assert rep["shape"] == {"r": [2, 2], "s": 2, "t": 2}


def test_hilbert_slice_minors(capsys):
    code, rep = run_json(capsys, "--r", "3,3,3", "--s", "3", "--t", "3",
                         "hilbert", "--ideal", "I", "--max-degree", "8")
    assert code == 0 and rep["result"]["polynomial"] == "9d - 2"
    assert len(rep["result"]["values"]) == 9


def test_hilbert_closed_form_rejects_I(capsys):
    code, rep = run_json(capsys, "hilbert", "--ideal", "I", "--method", "closed")
    assert code == 2 and rep["result"]["error"] == "PreconditionError"


def test_minprimes(capsys):
    code, rep = run_json(capsys, "--r", "2,2,2", "--s", "2", "--t", "2", "minprimes")
    assert code == 0 and rep["result"]["count"] == 3
    assert rep["result"]["verification"]["passed"]


def test_gb_and_switchable(capsys):
    code, rep = run_json(capsys, "gb")
    assert code == 0 and rep["result"]["ideal"] == "Itilde"
    code, rep = run_json(capsys, "switchable")
    assert code == 0 and rep["result"]["count"] == 5
    code, rep = run_json(capsys, "switchable", "--maximal")
    assert code == 0 and rep["result"]["count"] == 2


def test_iso(capsys):
    code, rep = run_json(capsys, "--r", "2,4", "--s", "2", "iso", "--other-r", "3,3", "--gb-images")
    assert code == 0 and rep["result"]["verified"]
    code, rep = run_json(capsys, "--r", "3,3,3", "iso", "--other-r", "2,2")
    assert code == 1 and not rep["result"]["verified"]


@pytest.mark.parametrize("what", ["groebner", "criterion", "hilbert", "colon", "radcolon",
                                  "primes", "iso"])
def test_verify_single(capsys, what):
    code, rep = run_json(capsys, "verify", what, "--samples", "50")
    assert code == 0 and rep["result"]["passed"] is not False


def test_verify_all_and_determinism(capsys):
    _, first = run(capsys, "--r", "2,2,2", "--s", "2", "verify", "all", "--samples", "60")
    code, second = run(capsys, "--r", "2,2,2", "--s", "2", "verify", "all", "--samples", "60")
    assert code == 0 and first == second
    assert json.loads(first)["result"]["passed"]


def test_budget_exit_code(capsys):
    # a shape no other test computes, since bases are cached per shape
    code, rep = run_json(capsys, "--r", "3,2,3", "--t", "2", "--gb-budget", "3", "gb", "--ideal", "I")
    assert code == 2 and rep["result"]["error"] == "BudgetExceeded"
    assert rep["config"]["gb_budget"] == 3
    code, rep = run_json(capsys, "--r", "2,2,3", "--s", "2", "--enum-bound", "2", "switchable")
    assert code == 2 and rep["result"]["error"] == "EnumerationBoundExceeded"


def test_usage_errors(capsys):
    code, rep = run_json(capsys, "--r", "2,2", "--s", "5", "gens")
    assert code == 2 and rep["result"]["error"] == "ShapeError"
    code, _ = run(capsys, "nonsense")
    assert code == 2
    code, _ = run(capsys, "--r", "2,x", "gens")
    assert code == 2


def test_text_format(capsys):
    code, out = run(capsys, "--format", "text", "--r", "2,2", "gens")
    assert code == 0 and "command: gens" in out and "count: 1" in out
    assert render_text({"a": [1, {"b": 2}]}) == "a:\n  - 1\n  -\n    b: 2"


def test_timings_flag(capsys):
    _, rep = run_json(capsys, "gb")
    assert "elapsed_s" not in rep["result"]["stats"]
    _, rep = run_json(capsys, "--timings", "gb")
    assert "elapsed_s" in rep["result"]["stats"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "shankel", "--r", "2,2", "gens"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["result"]["count"] == 1
