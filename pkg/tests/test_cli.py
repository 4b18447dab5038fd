import json
import subprocess
import sys
from pathlib import Path

import pytest

from toricmor.cli import execute

INPUTS = Path(__file__).resolve().parent.parent / "inputs"

P1 = {"rays": [[-1], [1]], "max_cones": [[1], [2]], "distinguished": 2}
F1 = {"rays": [[-1, 1], [0, -1], [1, 0], [0, 1]],
      "max_cones": [[3, 4], [4, 1], [1, 2], [2, 3]], "distinguished": 1}


def test_integrate_p1():
    report, status = execute("integrate", dict(P1, genus=1, degrees=[2], exponents=[2, 2]))
    assert status == 0 and report["value"] == "2"


def test_chi_f1():
    report, _ = execute("chi-y", dict(F1, genus=0, degrees=[1, 3]))
    assert report == {"chi_Y": 28}


def test_check_vanishing_f1():
    doc = dict(F1, genus=1, degrees=[4, 8], exponents=[5, 7, 5, 3], J=[1, 3])
    report, status = execute("check-vanishing", doc)
    assert status == 0
    assert report["predicate"] is True and report["integral"] == "0"


def test_validate_and_collections():
    report, _ = execute("validate", dict(F1, distinguished=3))
    assert report["permutation"] == [3, 4, 1, 2]
    assert report["l"] == 2
    report, _ = execute("primitive-collections", F1)
    assert report["primitive_collections"] == [[1, 3], [2, 4]]


def test_degree_data():
    report, _ = execute("degree-data", dict(F1, genus=1, degrees=[4, 8]))
    assert report["d"] == [4, 8, 4, 4] and report["dim_V"] == 20


def test_nested_fan_block():
    report, _ = execute("chi-y", {"fan": P1, "genus": 0, "degrees": [1]})
    assert report == {"chi_Y": 4}


def test_pushforward_verbose_and_direction():
    doc = dict(F1, genus=1, degrees=[4, 8], exponents=[2, 15, 1, 1])
    a, _ = execute("pushforward", doc, direction="1,2", verbose=True)
    b, _ = execute("pushforward", doc, direction="5,-3")
    assert a["pushforward"] == b["pushforward"]
    assert len(a["fixed_point_terms"]) == 4


def run_cli(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "toricmor", *args], input=stdin,
                          capture_output=True, text=True)


def test_cli_file_and_stdin():
    out = run_cli("integrate", str(INPUTS / "p1_g1.json"))
    assert out.returncode == 0 and json.loads(out.stdout)["value"] == "2"
    text = (INPUTS / "f1_g0.json").read_text()
    out = run_cli("chi-y", stdin=text)
    assert json.loads(out.stdout) == {"chi_Y": 28}


def test_cli_deterministic():
    runs = [run_cli("integrate", str(INPUTS / "f1_vanishing.json"), "--verbose").stdout
            for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]


@pytest.mark.parametrize("doc, fragment", [
    ({"rays": [[-2], [1]], "max_cones": [[1], [2]], "distinguished": 2}, "fan-core: ray 1 not primitive"),
    (dict(F1, genus=1, degrees=[4, 4]), "moduli-numerics: d_rho <= 2g-1 at rho=4"),
    (dict(P1, genus=1, degrees=[2], exponents=[2, 1]), "degree mismatch"),
    (dict(P1, genus=1, degrees=[2]), "missing key 'exponents'"),
])
def test_cli_errors(doc, fragment):
    verb = "integrate" if "genus" in doc else "validate"
    out = run_cli(verb, stdin=json.dumps(doc))
    assert out.returncode != 0
    assert fragment in out.stderr


def test_cli_bad_direction():
    out = run_cli("pushforward", str(INPUTS / "p1_g1.json"), "--direction", "0")
    assert out.returncode != 0 and "orthogonal" in out.stderr


def test_selftest_verb():
    out = run_cli("selftest")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["failed"] == 0 and report["passed"] == len(report["checks"])
