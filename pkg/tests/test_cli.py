import subprocess
import sys

import pytest

from chevjordan.catalogue import load_expected, parse_expected_table
from chevjordan.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jordan_g2(capsys):
    code, out, _ = run(capsys, "jordan", "--group", "G2", "--module", "minimal")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert lines[-1] == "A1: all: 2^2,1^3"


def test_jordan_e6_a2_adjoint(capsys):
    code, out, _ = run(capsys, "jordan", "-g", "E6", "-m", "adjoint", "--orbit", "A2")
    assert out.strip() == "A2: 2: 4^2,3^18,1^16; 3: 3^21,1^15; others: 5,3^19,1^16"


def test_unknown_orbit(capsys):
    code, _, err = run(capsys, "jordan", "-g", "G2", "--orbit", "Z9")
    assert code == 2
    assert "G2(a1)" in err


def test_usage_errors(capsys):
    assert run(capsys, "jordan", "-g", "E8", "-m", "minimal")[0] == 2
    assert run(capsys, "info", "-g", "Q7")[0] == 2
    assert run(capsys)[0] == 2


def test_info(capsys):
    code, out, _ = run(capsys, "info", "-g", "E7")
    assert "rank: 7" in out and "positive roots: 63" in out and "dim g: 133" in out
    assert "dim V_min: 56" in out and "p>3" in out
    out = run(capsys, "info", "-g", "G2")[1]
    assert "dim g: 14" in out and "dim V_min: 7" in out


def test_verify_ok_and_corrupted(capsys, tmp_path):
    assert run(capsys, "verify", "-g", "G2", "-m", "minimal")[0] == 0
    assert run(capsys, "verify", "-g", "F4", "-m", "adjoint")[0] == 0
    text = (load_expected.__globals__["expected_path"]("G2", "minimal")).read_text()
    bad = tmp_path / "bad.csv"
    bad.write_text(text.replace("G2,minimal,A1,all,2^2,1^3", "G2,minimal,A1,all,3,1^4"))
    code, out, _ = run(capsys, "verify", "-g", "G2", "-m", "minimal", "--expected-file", str(bad))
    assert code == 1
    assert "A1 [generic]" in out


def test_tables_csv_round_trip(capsys):
    from chevjordan.catalogue import load_reps
    from chevjordan.cli import compute_reports
    from chevjordan.jordan import compare_reports

    code, out, _ = run(capsys, "tables", "-g", "F4", "-m", "minimal", "--format", "csv")
    assert code == 0
    parsed = parse_expected_table(out).reports()
    computed = compute_reports("F4", "minimal", load_reps("F4"))
    assert len(parsed) == len(computed) == 21
    for rep in computed:
        back = parsed[("F4", "minimal", rep.orbit_label)]
        assert back.generic == rep.generic and back.exceptional == rep.exceptional
    ref = load_expected("F4", "minimal").reports()
    for key, rep in parsed.items():
        assert compare_reports(rep, ref[key]) == []


def test_tex_and_determinism(capsys):
    a = run(capsys, "jordan", "-g", "G2", "--format", "tex")[1]
    b = run(capsys, "jordan", "-g", "G2", "--format", "tex")[1]
    assert a == b and r"\begin{tabular}" in a and "4,3" in a


def test_jobs_same_output(capsys):
    a = run(capsys, "jordan", "-g", "F4", "-m", "adjoint")[1]
    b = run(capsys, "jordan", "-g", "F4", "-m", "adjoint", "--jobs", "2")[1]
    assert a == b


def test_stabilisers_output(capsys):
    out = run(capsys, "stabilisers", "-g", "G2")[1]
    assert out.strip().splitlines()[-1] == "exceptions: (A1-parabolic, p=2, both)"
    out = run(capsys, "stabilisers", "-g", "E6")[1]
    assert out.strip().splitlines()[-1] == "exceptions: (F4, p=3, line)"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "chevjordan", "info", "-g", "F4"], capture_output=True, text=True)
    assert r.returncode == 0 and "dim g: 52" in r.stdout
