import json
import subprocess
import sys
from pathlib import Path

import pytest

from monoreal.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from monoreal.verify import golden_document

FIXTURE = Path(__file__).parent / "fixtures" / "golden_example.json"
GOLDEN = "ring { even: x:4; odd: y:1 } ideal { x^2*y }"


def run(argv, stdin, monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example_matches_fixture(capsys):
    assert main(["example"]) == EXIT_OK
    assert capsys.readouterr().out == FIXTURE.read_text()
    assert golden_document() == FIXTURE.read_text()


def test_example_out_file(tmp_path):
    target = tmp_path / "golden.json"
    assert main(["example", "--out", str(target)]) == EXIT_OK
    assert target.read_bytes() == FIXTURE.read_bytes()


def test_parse_round_trip(monkeypatch, capsys):
    code, out, _ = run(["parse"], "ring{even:x:4;odd:y:1}ideal{x^2*y;x^3*y}", monkeypatch, capsys)
    assert code == EXIT_OK and out == GOLDEN + "\n"
    code, out2, _ = run(["parse"], out, monkeypatch, capsys)
    assert out2 == out
    code, out, _ = run(["parse", "--format", "json"], GOLDEN, monkeypatch, capsys)
    assert json.loads(out)["even"] == [{"name": "x", "degree": 4}]


def test_hilbert(monkeypatch, capsys):
    code, out, _ = run(["hilbert", "--dmax", "9", "--format", "json"], GOLDEN, monkeypatch, capsys)
    assert json.loads(out)["ranks"] == [1, 1, 0, 0, 1, 1, 0, 0, 1, 0]
    code, out, _ = run(["hilbert", "--dmax", "2"], GOLDEN, monkeypatch, capsys)
    assert out.splitlines()[1:] == ["   0  1", "   1  1", "   2  0"]


def test_polarize(monkeypatch, capsys):
    code, out, _ = run(["polarize", "--format", "json"], GOLDEN, monkeypatch, capsys)
    doc = json.loads(out)
    assert doc["a"] == [2] and doc["omega_bar"] == [[1, 2]]
    assert doc["polarized"].endswith("ideal { x'_1_1*x'_1_2*y }")


def test_plan_text_and_json(monkeypatch, capsys):
    code, out, _ = run(["plan"], GOLDEN, monkeypatch, capsys)
    assert code == EXIT_OK and "(1, 2): u_2*u_1^-1" in out
    code, out, _ = run(["plan", "--format", "json"], GOLDEN, monkeypatch, capsys)
    assert json.loads(out) == json.loads(FIXTURE.read_text())["plan"]


def test_verify_exit_codes(monkeypatch, capsys):
    code, out, _ = run(["verify", "--dmax", "12"], GOLDEN, monkeypatch, capsys)
    assert code == EXIT_OK and out.strip().endswith("overall: PASS")


def test_verify_failure_exits_one(monkeypatch, capsys):
    import monoreal.cli as cli
    from monoreal.verify import CheckRecord, VerificationReport

    def failing(plan, d_max):
        return VerificationReport(d_max, [CheckRecord("z_model", d_max, "FAIL", ["w"])])

    monkeypatch.setattr(cli, "verify_plan", failing)
    code, out, _ = run(["verify"], GOLDEN, monkeypatch, capsys)
    assert code == EXIT_FAIL and "overall: FAIL" in out


@pytest.mark.parametrize("argv, stdin", [
    (["parse"], "ideal { y^2 }"),
    (["plan"], "ring { even: x:3 } ideal { }"),
    (["verify", "--dmax", "-1"], GOLDEN),
    (["hilbert", "--input", "/nonexistent/ring.txt"], ""),
])
def test_input_errors_exit_two(argv, stdin, monkeypatch, capsys):
    code, out, err = run(argv, stdin, monkeypatch, capsys)
    assert code == EXIT_INPUT and out == "" and err.startswith("error: ")


def test_parse_error_names_position(monkeypatch, capsys):
    _, _, err = run(["parse"], "ring { even: x:2 }\nideal { q }", monkeypatch, capsys)
    assert "<stdin>: line 2, column 9: unknown variable 'q'" in err


def test_input_file(tmp_path, capsys):
    path = tmp_path / "ring.txt"
    path.write_text(GOLDEN)
    assert main(["parse", "-i", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == GOLDEN + "\n"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "monoreal", "parse"], input=GOLDEN,
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == GOLDEN + "\n"


def test_output_is_deterministic(capsys):
    main(["example", "--dmax", "10"])
    first = capsys.readouterr().out
    main(["example", "--dmax", "10"])
    assert capsys.readouterr().out == first
