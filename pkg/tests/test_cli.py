import contextlib
import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden_cases import cases
from rta import specfile as F
from rta.cli import EXIT_INVALID, EXIT_OK, EXIT_UNCERTIFIED, main
from rta.errors import ERROR_CODES, ParseError

ROOT = Path(__file__).resolve().parents[1]
SPECS = ROOT / "specs"
GOLDEN = Path(__file__).parent / "golden"


def invoke(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def report(*argv: str) -> dict:
    code, out, _ = invoke(*argv, "--json")
    assert code == EXIT_OK, out
    return json.loads(out)


@pytest.mark.parametrize("name,argv", cases(), ids=[c[0] for c in cases()])
def test_golden_report(name, argv):
    _, out, _ = invoke(*argv, "--json")
    assert out == (GOLDEN / f"{name}.json").read_text()


@pytest.mark.parametrize("name,argv", [c for c in cases() if c[1][0] == "verma"], ids=lambda v: v if isinstance(v, str) else "")
def test_golden_independent_of_jobs(name, argv):
    _, out, _ = invoke(*argv, "--json", "--jobs", "2")
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_console_script_matches_in_process():
    exe = shutil.which("rta")
    cmd = [exe] if exe else [sys.executable, "-m", "rta"]
    proc = subprocess.run([*cmd, "block", "dispin", "--weight", "h=1", "--json"], capture_output=True, text=True, check=True)
    assert proc.stdout == (GOLDEN / "dispin.block.json").read_text()


def test_block_uq_sl2():
    rep = report("block", "uq-sl2", "--weight", "K=q^3", "--bound", "20")
    assert rep["status"] == "Certified"
    assert [m["K"] for m in rep["payload"]["members"]] == ["q^3", "1/q^5"]


def test_check_pbw_matrix_units():
    rep = report("check-pbw", str(SPECS / "matrix-units.toml"))
    assert rep["payload"]["verdict"] == "NotConfluent"
    assert rep["payload"]["ambiguity"] == "u.e12.d"


def test_rtm_classify_not_based():
    rep = report("rtm-classify", "--zeta", "2", "--primes", "2")
    assert rep["payload"]["based"] is False


def test_scalars_are_strings():
    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert x is None or isinstance(x, (str, bool)), x

    for path in GOLDEN.glob("*.json"):
        walk(json.loads(path.read_text()).get("payload"))


def test_human_table_output():
    code, out, _ = invoke("block", "dispin", "--weight", "h=1")
    assert code == EXIT_OK
    rows = {line.split(None, 1)[0]: line.split(None, 1)[1] for line in out.splitlines() if line.strip()}
    assert rows["payload.decomposition"] == "[1 1; 0 1]"
    assert rows["status"] == "Certified"


def test_parse_error_has_caret():
    code, out, err = invoke("nf", str(SPECS / "bad-exponent.toml"), "--expr", "u", "--json")
    assert code == EXIT_INVALID
    assert json.loads(out)["error"]["code"] == "E_PARSE"
    assert "line 6, column 8" in err
    lines = err.splitlines()
    assert lines[-1].index("^") == lines[-2].index("^")
    with pytest.raises(ParseError):
        F.parse_spec((SPECS / "bad-exponent.toml").read_text())


def test_exit_codes():
    assert invoke("block", "down-up(1,1,1,0)", "--weight", "h=1", "--require-certified")[0] == EXIT_UNCERTIFIED
    assert invoke("block", "dispin", "--weight", "h=1", "--require-certified")[0] == EXIT_OK
    assert invoke("rtm-classify", "--zeta", "2")[0] == EXIT_INVALID
    assert invoke("verma", "dispin", "--weight", "K=1")[0] == EXIT_INVALID
    assert invoke("polyexp", "1@2", "1@-2")[0] == EXIT_INVALID


def test_error_codes_are_distinct():
    assert len(ERROR_CODES) == len(set(ERROR_CODES.values()))
    assert all(code.startswith("E_") for code in ERROR_CODES)


def test_digest_tracks_input():
    a = report("block", "dispin", "--weight", "h=1")
    b = report("block", "dispin", "--weight", "h=2")
    assert a["input_digest"] != b["input_digest"]
    assert a["input_digest"] == report("block", "dispin", "--weight", "h=1")["input_digest"]


@pytest.mark.parametrize("path", sorted(p.name for p in SPECS.glob("*.toml") if p.name != "bad-exponent.toml"))
def test_spec_file_round_trip(path):
    spec = F.parse_spec((SPECS / path).read_text())
    assert F.parse_spec(F.serialize(spec)) == spec


@pytest.mark.parametrize("name", ["dispin", "uq-sl2", "wq(2,0,0,1,-1,h)", "quantum-gwa(Z^2xZ/2, q^2;q^3;-1, K[0]+K[1]+K[2], 1)"])
def test_preset_round_trip(name):
    spec = F.preset_spec(name)
    assert F.parse_spec(F.serialize(spec)) == spec


def test_dispin_spec_builds_dispin():
    from rta import gwa as G

    A = F.build(F.parse_spec((SPECS / "dispin-downup.toml").read_text()))
    D = G.dispin()
    assert (A.theta, A.z0, A.z1) == (D.theta, D.z0, D.z1)


coeff = st.integers(-5, 5)


@given(st.lists(coeff, min_size=1, max_size=4), coeff.filter(bool), coeff, st.lists(coeff, min_size=1, max_size=3))
def test_generated_spec_round_trip(z0, a, b, z1_extra):
    z0_text = " + ".join(f"({c})*h^{i}" for i, c in enumerate(z0))
    text = f'[cartan]\nfamily = "poly"\n\n[gwa]\ntheta = "({a})*h + ({b})"\nz0 = "{z0_text}"\nz1 = "{abs(z1_extra[0]) + 1}"\n'
    spec = F.parse_spec(text)
    again = F.parse_spec(F.serialize(spec))
    assert again == spec
    assert F.serialize(again) == F.serialize(spec)
