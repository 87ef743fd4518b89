import json
import os
import random
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from meroconn import jsonio
from meroconn.cli import main
from meroconn.connection import IrregularType, MeroConnection
from meroconn.field import gr
from meroconn.lmatrix import CMat, LaurentMatrix as LM
from meroconn.randomgen import rand_connection, rand_relation_rep
from meroconn.series import INF, LaurentSeries as LS

DATA = Path(__file__).parent / "data"


def run_cli(*argv, capsys=None):
    """Drive the CLI in-process; returns (exit_code, parsed_json)."""
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


# ---------------------------------------------------------------------
# encoding round trips
# ---------------------------------------------------------------------

def test_fraction_and_gauss_roundtrip():
    assert jsonio.enc_fraction(F(3, 1)) == "3"
    assert jsonio.enc_fraction(F(-5, 7)) == "-5/7"
    g = gr(F(1, 2), F(-3, 4))
    assert jsonio.dec_gauss(jsonio.enc_gauss(g)) == g
    assert jsonio.dec_gauss("7/3") == gr(F(7, 3))


def test_series_matrix_roundtrip():
    rng = random.Random(91)
    s = LS.from_dict({-2: gr(1, 2), 3: gr(F(1, 7))}, trunc=9)
    assert jsonio.dec_series(jsonio.enc_series(s)) == s
    exact = LS.from_dict({0: 1})
    assert jsonio.dec_series(jsonio.enc_series(exact)).trunc == INF
    conn = rand_connection(rng, 3, 2, 6)
    doc = jsonio.enc_connection(conn)
    back = jsonio.dec_connection(doc)
    assert back.B == conn.B


def test_irregular_and_rep_roundtrip():
    q = IrregularType(2, {2: (gr(1), gr(-1)), 1: (gr(F(1, 2)), gr(0))})
    assert jsonio.dec_irregular(jsonio.enc_irregular(q)) == q
    rep = rand_relation_rep(random.Random(92), 1, 1)
    back = jsonio.dec_rep(jsonio.enc_rep(rep))
    assert back.genus == rep.genus
    assert back.handles == rep.handles
    assert back.punctures[0].h == rep.punctures[0].h
    assert back.punctures[0].S == rep.punctures[0].S


def test_format_errors():
    with pytest.raises(jsonio.FormatError):
        jsonio.dec_gauss(3.5)
    with pytest.raises(jsonio.FormatError):
        jsonio.dec_series({"coeffs": []})
    with pytest.raises(jsonio.FormatError):
        jsonio.dec_irregular({"n": 2, "coeffs": {"0": [{"re": "1", "im": "0"}]}})


# ---------------------------------------------------------------------
# CLI subcommands against committed fixtures
# ---------------------------------------------------------------------

def test_cli_canonical_form(capsys):
    code, doc = run_cli(
        "canonical-form", "--input", str(DATA / "conn_gl2.json"),
        "--trunc", "12", capsys=capsys,
    )
    assert code == 0
    assert doc["canonical"]["residue"] == jsonio.enc_cmat(CMat.zero(2))
    assert doc["canonical"]["polar"]["1"] == jsonio.enc_cmat(CMat.diag([1, -1]))
    assert doc["irregular_type"]["coeffs"]["1"] == [
        {"im": "0", "re": "-1"}, {"im": "0", "re": "1"}]


def test_cli_antistokes_and_plot(tmp_path, capsys):
    csv = tmp_path / "plot.csv"
    code, doc = run_cli(
        "antistokes", "--irregular-type", str(DATA / "q_gl2.json"),
        "--emit-plot-data", str(csv), capsys=capsys,
    )
    assert code == 0
    assert doc["num_directions"] == 4 and doc["k"] == 2 and doc["l"] == 1
    assert [d["angle"]["pi_multiple"] for d in doc["directions"]] == \
        ["0", "1/2", "1", "3/2"]
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "angle,roots"
    assert len(lines) == 5


def test_cli_stokes_dim(capsys):
    code, doc = run_cli("stokes-dim", "--irregular-type",
                        str(DATA / "q_gl3.json"), capsys=capsys)
    assert code == 0
    assert doc["lhs"] == doc["rhs"] == 6


def test_cli_translate_both_sides(capsys):
    code, doc = run_cli("translate", "--to", "dol", "--input",
                        str(DATA / "local_nilpotent.json"), capsys=capsys)
    assert code == 0
    assert doc["residue"] == jsonio.enc_cmat(
        CMat.unit(2, 1, 0) - CMat.diag([1, -1]) + CMat.unit(2, 0, 1))
    code, doc = run_cli("translate", "--to", "betti", "--input",
                        str(DATA / "local_semisimple.json"), capsys=capsys)
    assert code == 0
    assert doc["gamma"] == ["-1/4", "1/4"]
    assert doc["semisimple_factor"][0] == {"root_of_unity": "1/2"}


def test_cli_check_relation_and_stability(capsys):
    code, doc = run_cli("check-relation", "--rep", str(DATA / "rep_gl2.json"),
                        capsys=capsys)
    assert code == 0 and doc["holds"] is True
    code, doc = run_cli("stability", "--rep", str(DATA / "rep_gl2.json"),
                        "--weights", str(DATA / "weights_zero.json"),
                        capsys=capsys)
    assert code == 0 and doc["status"] == "stable"


def test_cli_verify_metric(capsys):
    code, doc = run_cli("verify-metric", "--input",
                        str(DATA / "local_nilpotent.json"), "--numeric",
                        capsys=capsys)
    assert code == 0
    assert all(doc["checks"].values())


def test_cli_oracle(capsys):
    code, doc = run_cli("oracle-monodromy", "--b", "1/2", "--steps", "1024",
                        "--precision", "64", capsys=capsys)
    assert code == 0 and doc["matches"] is True


def test_cli_input_errors(tmp_path, capsys):
    code, doc = run_cli("canonical-form", "--input",
                        str(tmp_path / "missing.json"), capsys=capsys)
    assert code == 2 and "not found" in doc["error"]
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, doc = run_cli("canonical-form", "--input", str(bad), capsys=capsys)
    assert code == 2 and "line 1" in doc["error"]


def test_cli_violation_exit_code(tmp_path, capsys):
    # a representation violating the relation exits with code 1
    rep = rand_relation_rep(random.Random(93), 0, 1)
    doc = jsonio.enc_rep(rep)
    doc["punctures"][0]["h"] = jsonio.enc_cmat(CMat.diag([1, 1]))
    path = tmp_path / "broken_rep.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli("check-relation", "--rep", str(path), capsys=capsys)
    assert code == 1 and out["holds"] is False


# ---------------------------------------------------------------------
# determinism through the installed console script
# ---------------------------------------------------------------------

def test_console_script_deterministic_output():
    cmd = [sys.executable, "-m", "meroconn.cli", "antistokes",
           "--irregular-type", str(DATA / "q_gl2.json")]
    env = dict(os.environ)
    first = subprocess.run(cmd, capture_output=True, env=env, check=True)
    second = subprocess.run(cmd, capture_output=True, env=env, check=True)
    assert first.stdout == second.stdout
    assert first.stdout.strip()
