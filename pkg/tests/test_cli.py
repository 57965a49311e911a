import json
import subprocess
import sys
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from rootsuper import cli
from rootsuper.chevalley import constants_from_seeds
from rootsuper.realize import build_model, to_abstract
from rootsuper.rootsys import TypeDescriptor, build


@pytest.fixture(autouse=True)
def no_out_dir(monkeypatch):
    monkeypatch.delenv(cli.OUT_ENV, raising=False)


def run(*argv):
    return cli.main([str(a) for a in argv])


def write(path, doc):
    path.write_text(cli.dumps(doc))
    return path


def built(tmp_path, family, ranks, name="r.json"):
    out = tmp_path / name
    assert run("build", "--family", family, "--ranks", ranks, "--out", out, "--quiet") == 0
    return out


def test_build_roundtrip(tmp_path):
    out = built(tmp_path, "B", "1,2")
    doc = json.loads(out.read_text())
    assert doc["schema"] == "rootsys.v1"
    R = cli.rootsys_parse(doc)
    assert R.roots == build(TypeDescriptor("B(1,T)", (1, 2))).roots
    assert str(R.descriptor) == "B(1,2)"


def test_build_to_stdout(capsys):
    assert run("build", "--family", "D", "--ranks", "2,1", "--lambda=-1/2") == 0
    out, err = capsys.readouterr()
    assert json.loads(out)["schema"] == "rootsys.v1"
    assert "nonzero roots" in err


def test_out_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path))
    assert run("build", "--family", "A", "--ranks", "0,2", "--quiet") == 0
    assert json.loads((tmp_path / "rootsys.json").read_text())["schema"] == "rootsys.v1"
    assert run("build", "--family", "A", "--ranks", "0,2", "--out", "sub/x.json", "--quiet") == 0
    assert (tmp_path / "sub" / "x.json").exists()


def test_config_and_flag_precedence(tmp_path):
    conf = write(tmp_path / "c.json", {"family": "B", "ranks": [1, 1], "quiet": True})
    out = tmp_path / "o.json"
    assert run("build", "--config", conf, "--out", out) == 0
    assert json.loads(out.read_text())["descriptor"] == cli.rootsys_json(
        build(TypeDescriptor("B(1,T)", (1, 1))))["descriptor"]
    assert run("build", "--config", conf, "--ranks", "1,2", "--out", out) == 0
    assert cli.rootsys_parse(json.loads(out.read_text())).descriptor.ranks == (1, 2)


def test_check_and_tampering(tmp_path):
    r = built(tmp_path, "C", "0,2")
    assert run("check", r, "--quiet") == 0
    doc = json.loads(r.read_text())
    doc["roots"] = doc["roots"][1:]
    bad = write(tmp_path / "bad.json", doc)
    assert run("check", bad, "--quiet") == 1


def test_chevalley_outputs(tmp_path):
    r = built(tmp_path, "B", "0,1")
    out = tmp_path / "n.json"
    assert run("chevalley", r, "--seeds", "3", "--scale", "1", "--out", out, "--quiet") == 0
    T = cli.constants_parse(json.loads(out.read_text()))
    ref = constants_from_seeds(T.R, T.order, {p: Q(3) for p in T.seeds})
    assert T.N == ref.N
    assert run("audit", out, "--quiet") == 0
    doc = json.loads(out.read_text())
    doc["N"][0]["val"] = cli.rat(Q(7))
    assert run("audit", write(tmp_path / "bad.json", doc), "--quiet") == 1


def test_chevalley_random_seeds_deterministic(tmp_path):
    r = built(tmp_path, "B", "1,1")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run("chevalley", r, "--seeds", "random:11", "--out", out, "--quiet") == 0
    assert a.read_bytes() == b.read_bytes()


def test_exit_codes_for_library_failures(tmp_path):
    c12 = built(tmp_path, "C", "1,2", "c.json")
    assert run("chevalley", c12, "--quiet") == 1
    a11 = built(tmp_path, "A", "1,1", "a.json")
    assert run("chevalley", a11, "--quiet") == 2


def test_usage_errors(tmp_path):
    assert run("build", "--quiet") == 2
    assert run("frobnicate") == 2
    r = built(tmp_path, "B", "0,1")
    assert run("chevalley", r, "--seeds", "0", "--quiet") == 2
    assert run("chevalley", r, "--scale", "x", "--quiet") == 2
    assert run("check", tmp_path / "missing.json") == 2
    assert run("build", "--family", "B", "--ranks", "1", "--quiet") == 2


def test_compare(tmp_path, capsys):
    b = built(tmp_path, "B", "2,2", "b.json")
    d = built(tmp_path, "D", "2,2", "d.json")
    assert run("compare", b, d) == 1
    assert "NotConjugate" in capsys.readouterr().out
    assert run("compare", b, b) == 0
    assert "Conjugate" in capsys.readouterr().out


def test_realize_extract_matches_chevalley(tmp_path):
    m = tmp_path / "m.json"
    assert run("realize", "--kind", "osp-odd", "--I", "1", "--J", "1", "--out", m, "--quiet") == 0
    assert json.loads(m.read_text())["schema"] == "model.v1"
    assert run("audit", m, "--quiet") == 0
    x, n = tmp_path / "x.json", tmp_path / "n.json"
    assert run("extract", m, "--out", x, "--quiet") == 0
    r = built(tmp_path, "B", "1,1")
    assert run("chevalley", r, "--out", n, "--quiet") == 0
    assert x.read_bytes() == n.read_bytes()
    assert run("compare", x, n, "--quiet") == 0


def test_superalg_roundtrip():
    L = to_abstract(build_model("sl", 2, 1))
    L2 = cli.superalg_parse(cli.superalg_json(L))
    assert L2.table == L.table and L2.form == L.form and L2.parities == L.parities


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "rootsuper.cli", "build", "--family", "A",
                        "--ranks", "3", "--quiet"], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["schema"] == "rootsys.v1"


@given(st.fractions(max_denominator=10 ** 6))
def test_rational_encoding(x):
    s = cli.rat(x)
    assert "/" in s and cli.unrat(s) == x
