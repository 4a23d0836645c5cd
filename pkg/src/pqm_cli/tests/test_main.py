"""
Test suite for the `pqm` command line driver.
"""
import json
from pathlib import Path

import pytest

from ..main import (
    EXIT_EVAL_ERROR,
    EXIT_FUEL_EXHAUSTED,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_TYPE_ERROR,
    SIGNATURE_ENV,
    Driver,
    RunConfig,
    run,
)

PROGRAMS = Path(__file__).parents[3] / "programs"


def _program(tmp_path: Path, text: str, name: str = "main.pqm") -> str:
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture(autouse=True)
def no_signature_env(monkeypatch):
    """
    Run every test with the built-in signature unless it sets its own.
    """
    monkeypatch.delenv(SIGNATURE_ENV, raising=False)


def test_check_ok(capsys):
    """
    A well-typed program prints the declared types.
    """
    status = run(["check", str(PROGRAMS / "circuits" / "bell.pqm")])
    assert status == EXIT_OK
    assert capsys.readouterr().out == (
        "main : Circ(Qubit * Qubit, Qubit * Qubit)\n"
    )


def test_check_type_error(capsys):
    """
    Type errors exit with status 1 and a positioned diagnostic.
    """
    path = PROGRAMS / "ill_typed" / "duplicate_variable.pqm"
    assert run(["check", str(path)]) == EXIT_TYPE_ERROR
    err = capsys.readouterr().err
    assert "error[LinearityViolation]" in err
    assert err.startswith(f"{path}:1:")


def test_check_json_diagnostic(capsys):
    """
    With `--format json` diagnostics are JSON objects.
    """
    path = PROGRAMS / "ill_typed" / "unbound_variable.pqm"
    assert run(["check", str(path), "--format", "json"]) == EXIT_TYPE_ERROR
    diagnostic = json.loads(capsys.readouterr().err)
    assert diagnostic["code"] == "UnboundVariable"
    assert diagnostic["severity"] == "error"


@pytest.mark.parametrize(
    "text",
    [
        "def main : I = () );",
        "def main : I = ()",
        "def main : Qutrit = ();",
        "def main : I = () $;",
    ],
)
def test_parse_errors(tmp_path, capsys, text):
    """
    Lexical, syntactic and well-formedness errors exit with status 2.
    """
    assert run(["check", _program(tmp_path, text)]) == EXIT_PARSE_ERROR
    assert capsys.readouterr().err.startswith("parse error:")


def test_missing_file(tmp_path, capsys):
    """
    An unreadable input exits with status 3.
    """
    missing = str(tmp_path / "missing.pqm")
    assert run(["check", missing]) == EXIT_IO_ERROR
    assert "I/O error" in capsys.readouterr().err


def test_undecodable_input(tmp_path, capsys):
    """
    A program that is not UTF-8 text exits with status 3.
    """
    path = tmp_path / "main.pqm"
    path.write_bytes(b"def main : I = \xff\xfe ();")
    assert run(["check", str(path)]) == EXIT_IO_ERROR
    assert "is not UTF-8 text" in capsys.readouterr().err


def test_undecodable_signature(tmp_path, capsys):
    """
    A signature file that is not UTF-8 text is a parse error.
    """
    signature = tmp_path / "gates.json"
    signature.write_bytes(b"\xff\xfe{}")
    path = str(PROGRAMS / "basics" / "unit.pqm")
    status = run(["check", path, "--signature", str(signature)])
    assert status == EXIT_PARSE_ERROR
    assert "is not UTF-8 text" in capsys.readouterr().err


def test_run_unit(capsys):
    """
    Running `()` prints `()` and nothing else.
    """
    assert run(["run", str(PROGRAMS / "basics" / "unit.pqm")]) == EXIT_OK
    assert capsys.readouterr().out == "()\n"


def test_run_lift(capsys):
    """
    A lifted function is printed as is, with no circuit.
    """
    assert run(["run", str(PROGRAMS / "basics" / "lift.pqm")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("lift")
    assert "circuit:" not in out


def test_run_builds_circuit(tmp_path, capsys):
    """
    Top-level gates are printed after the value.
    """
    path = _program(tmp_path, "def main : Qubit = H (init0 ());")
    assert run(["run", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "#L1"
    assert "circuit:" in out
    assert "init0  () -> L0" in out
    assert "H  L0 -> L1" in out
    assert run(["run", path, "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert [g["g"] for g in document["circuit"]["gates"]] == ["init0", "H"]


def test_run_unknown_entry(capsys):
    """
    A missing entry definition exits with status 1.
    """
    path = str(PROGRAMS / "basics" / "unit.pqm")
    assert run(["run", path, "--entry", "nope"]) == EXIT_TYPE_ERROR


def test_run_unchecked(capsys):
    """
    Skipping the checker lets run-time errors through, with status 4.
    """
    path = str(PROGRAMS / "unchecked" / "cnot_same_wire.pqm")
    assert run(["run", path]) == EXIT_TYPE_ERROR
    capsys.readouterr()
    assert run(["run", path, "--unchecked"]) == EXIT_EVAL_ERROR
    assert "CloningError" in capsys.readouterr().err


def test_run_fuel(tmp_path, capsys):
    """
    Running out of fuel exits with status 5.
    """
    path = _program(
        tmp_path,
        "def main : Nat = foldNat (lift (fun k : Nat . succ k)) 0 1000;",
    )
    assert run(["run", path, "--fuel", "50"]) == EXIT_FUEL_EXHAUSTED
    assert "fuel exhausted" in capsys.readouterr().err
    assert run(["run", path, "--fuel", "0"]) == EXIT_PARSE_ERROR


def test_run_long_list(tmp_path, capsys):
    """
    A fold building a five thousand element list runs within the default
    fuel and prints the whole list.
    """
    path = _program(
        tmp_path,
        "def main : List Nat = "
        "foldNat (lift (fun l : List Nat . cons(0, l))) nil[Nat] 5000;",
    )
    assert run(["run", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("cons(") == 5000
    assert out.rstrip().endswith("nil[Nat]" + ")" * 5000)


def test_deep_nesting_exit_status(monkeypatch, capsys):
    """
    Exhausting the interpreter stack exits with the fuel status and a
    message instead of a traceback.
    """

    def too_deep(self):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr(Driver, "cmd_run", too_deep)
    path = str(PROGRAMS / "basics" / "unit.pqm")
    assert run(["run", path]) == EXIT_FUEL_EXHAUSTED
    assert capsys.readouterr().err.startswith("nesting too deep:")


def test_run_traces(tmp_path, capsys):
    """
    `--traces` writes JSON lines to standard error.
    """
    path = _program(tmp_path, "def main : Qubit = H (init0 ());")
    assert run(["run", path, "--traces"]) == EXIT_OK
    records = [
        json.loads(line) for line in capsys.readouterr().err.splitlines()
    ]
    assert records
    assert all("rule" in record for record in records)


def test_run_text_traces(tmp_path, capsys):
    """
    `--trace-format text` prints one readable block per step.
    """
    path = _program(tmp_path, "def main : Qubit = H (init0 ());")
    args = ["run", path, "--traces", "--trace-format", "text"]
    assert run(args) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.err.startswith("Step 1 (App):\n")
    assert "'rule': 'delta'" in captured.err
    assert captured.out.splitlines()[0] == "#L1"


def test_box_identity(capsys):
    """
    The identity box is an empty circuit from `I` to `I`.
    """
    path = str(PROGRAMS / "basics" / "identity_box.pqm")
    assert run(["box", path, "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["type"] == {"in": "I", "out": "I"}
    assert document["size"] == 0
    assert document["circuit"]["gates"] == []
    assert run(["box", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("circuit : Circ(I, I)\n")
    assert "size = 0" in out


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_box_ghz(capsys, n):
    """
    The GHZ circuit on `n` qubits has `2n` gates.
    """
    path = str(PROGRAMS / "circuits" / "ghz.pqm")
    assert run(["box", path, "--arg", str(n), "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["size"] == 2 * n
    gates = [g["g"] for g in document["circuit"]["gates"]]
    assert gates.count("init0") == n
    assert gates.count("H") == 1
    assert gates.count("CNOT") == n - 1


def test_box_ghz_family(capsys):
    """
    Repeated `--arg` values emit one circuit per value.
    """
    path = str(PROGRAMS / "circuits" / "ghz.pqm")
    args = ["--arg", "1", "--arg", "2", "--arg", "3"]
    assert run(["box", path, *args, "--format", "json"]) == EXIT_OK
    documents = json.loads(capsys.readouterr().out)
    assert [d["size"] for d in documents] == [2, 4, 6]
    assert run(["box", path, *args]) == EXIT_OK
    out = capsys.readouterr().out
    assert "# arg 1\n" in out
    assert "# arg 3\n" in out


def test_box_argument_errors(capsys):
    """
    Families need arguments; plain circuits take none.
    """
    ghz = str(PROGRAMS / "circuits" / "ghz.pqm")
    bell = str(PROGRAMS / "circuits" / "bell.pqm")
    assert run(["box", ghz]) == EXIT_TYPE_ERROR
    assert run(["box", bell, "--arg", "1"]) == EXIT_TYPE_ERROR
    assert run(["box", ghz, "--arg", "()"]) == EXIT_TYPE_ERROR
    lift = str(PROGRAMS / "basics" / "lift.pqm")
    assert run(["box", lift]) == EXIT_TYPE_ERROR


def test_box_is_deterministic(tmp_path, capsys):
    """
    Emitting the same circuit twice gives identical bytes.
    """
    path = str(PROGRAMS / "circuits" / "ghz.pqm")
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    for out in (first, second):
        status = run(
            ["box", path, "--arg", "4", "--format", "json", "--out", str(out)]
        )
        assert status == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert capsys.readouterr().out == ""


def test_signature_from_environment(tmp_path, monkeypatch, capsys):
    """
    `PQM_SIGNATURE` names the signature when `--signature` is absent.
    """
    signature = tmp_path / "qutrit.json"
    signature.write_text(
        json.dumps(
            {
                "wire_types": ["Qutrit"],
                "gates": [
                    {"name": "shift", "in": "Qutrit", "out": "Qutrit"},
                    {"name": "make", "in": "I", "out": "Qutrit"},
                ],
            }
        )
    )
    path = _program(tmp_path, "def main : Qutrit = shift (make ());")
    assert run(["check", path]) == EXIT_PARSE_ERROR
    monkeypatch.setenv(SIGNATURE_ENV, str(signature))
    capsys.readouterr()
    assert run(["check", path]) == EXIT_OK
    assert capsys.readouterr().out == "main : Qutrit\n"
    assert run(["check", path, "--signature", str(tmp_path / "no")]) == 3


def test_meta(capsys):
    """
    A small property run passes and reports every property.
    """
    args = ["meta", "--trials", "20", "--depth", "3", "--format", "json"]
    assert run(args) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert {r["name"] for r in reports} >= {
        "error-freeness",
        "termination",
        "subject-reduction",
    }
    assert all(not r["failures"] for r in reports)


def test_run_config():
    """
    Invalid budgets and formats are rejected.
    """
    with pytest.raises(ValueError):
        RunConfig(command="run", fuel=0)
    with pytest.raises(ValueError):
        RunConfig(command="run", emit_format="xml")
    with pytest.raises(ValueError):
        RunConfig(command="run", trace_format="yaml")
    assert RunConfig(command="check").entry == "main"
