import io
import json
import subprocess
import sys

import pytest

from wiremono.cli import parse_witness, run
from wiremono.diagrams import Matching
from wiremono.monoid import parse_element

HOOK = "bt:3 [1 2][3 3'][1' 2'] ; s=0"


def cli(*argv):
    buf = io.StringIO()
    return run(list(argv), out=buf), buf.getvalue()


def test_multiply_hook_square():
    code, out = cli("multiply", HOOK, HOOK)
    assert code == 0 and out.strip() == "bt:3 [1 2][3 3'][1' 2'] ; s=1"


def test_multiply_output_reparses():
    _, once = cli("multiply", HOOK, HOOK)
    code, twice = cli("multiply", once.strip(), HOOK)
    assert code == 0 and parse_element(twice.strip()).s == 2


def test_multiply_rejects_garbage():
    assert cli("multiply", "bt:3 nonsense")[0] == 1
    assert cli("multiply", HOOK, "pbt:3 [1 1'][2 2'][3 3'] ; s=0")[0] == 1


def test_check_exit_codes():
    code, out = cli("check", "--monoid", "bt:2", "xy = yx", "--budget", "5000")
    assert code == 0 and out.startswith("exhausted")
    code, out = cli("check", "--monoid", "bt:3", "xy = yx")
    assert code == 2 and out.startswith("counterexample")
    sub = json.loads(out.strip().splitlines()[-1])
    assert set(sub) == {"x", "y"}
    code, out = cli("check", "--monoid", "S3", "x^2 y^2 = y^2 x^2")
    assert code == 0 and out.strip() == "holds"
    assert cli("check", "--monoid", "bt:3", "xy")[0] == 1
    assert cli("check", "--monoid", "bt:3", "x = y", "--budget", "0")[0] == 1


def test_check_is_deterministic():
    args = ("check", "--monoid", "pbt:3", "xyy = yxy", "--seed", "7")
    assert cli(*args) == cli(*args)


def test_reduce(tmp_path):
    code, out = cli("reduce", "--n", "3", "xy = yx")
    lhs, rhs = out.strip().split(" = ")
    assert code == 0 and len(lhs) == len(rhs) == 362
    target = tmp_path / "u.txt"
    code, out = cli("reduce", "--n", "3", "xy = yx", "--out", str(target))
    assert code == 0 and "lhs length: 362" in out
    assert target.read_text().strip().split(" = ")[0] == lhs


def test_reduce_large_prints_lengths():
    code, out = cli("reduce", "--n", "5", "xyzw = wzyx")
    assert code == 0 and out.startswith("lhs length:")


def test_lift():
    code, out = cli("lift", "--n", "3", "xy = yx", "--witness", "x=(1 2), y=(2 3)")
    assert code == 0
    lines = dict(line.split(" = ", 1) for line in out.strip().splitlines())
    assert set(lines) == {"x", "y"}
    assert all(parse_element(v).kind.n == 3 for v in lines.values())
    assert cli("lift", "--n", "3", "xy = yx", "--witness", "x=(1 2 3), y=(1 3 2)")[0] == 1


def test_parse_witness():
    w = parse_witness("x=(1 2), y=(2 3)(1 2)", 3)
    assert str(w["x"]) == "(1 2)" and w["y"].degree == 3


def test_green():
    code, out = cli("green", "--monoid", "pbt:3", "pbt:3 [1 2][3 3'][1' 2'] ; s=0", "pbt:3 [1 2][3 3'][1' 2'] ; s=9")
    assert code == 0
    assert "H: yes" in out and "group H-class: S_1 x Z" in out
    code, out = cli("green", "--monoid", "pbt:5")
    assert code == 0 and out.startswith("J-classes: 3")
    assert cli("green", "--monoid", "bt:3", HOOK, HOOK)[0] == 1


def test_relations():
    code, out = cli("relations", "--monoid", "bt:3")
    assert code == 0 and out.startswith("20 relations")


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 15), (4, 105)])
def test_enumerate(n, count):
    code, out = cli("enumerate", "--brauer", str(n))
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == len(set(lines)) == count
    assert all(Matching.parse(line).n == n for line in lines)


def test_enumerate_limit():
    assert cli("enumerate", "--brauer", "5")[0] == 1


def test_render():
    code, out = cli("render", "bt:4 [1 3][2 4'][4 1'][2' 3'] ; s=2")
    lines = out.rstrip("\n").splitlines()
    assert code == 0 and lines[0] == "bt:4" and lines[-1] == "o x2"
    assert len(lines) == 6
    assert "--> 4'" in lines[2] and "2 <-- 4'" in lines[4]
    code, out = cli("render", "pt:2 [1 2 1'][2'] ; s=0")
    assert code == 0 and "[1 2 1'][2']" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wiremono", "multiply", HOOK, HOOK], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip().endswith("s=1")


def test_unknown_subcommand():
    assert cli("bogus")[0] == 1
