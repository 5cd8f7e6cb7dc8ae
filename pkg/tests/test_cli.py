import json
import os

import pytest
from click.testing import CliRunner

from graded_prime_lab.cli import main

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def run(*args):
    r = CliRunner().invoke(main, list(args))
    return r.exit_code, r.stdout


def data(name):
    return os.path.join(DATA, name)


def test_prime_matrix_example():
    code, out = run("prime", "--in", data("m2f2_zgraded.json"))
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "prime" and rep["method"] == "ordered_shortcut"
    code, out = run("prime", "--in", data("m2z4_zgraded.json"))
    assert json.loads(out)["verdict"] == "not_prime" and json.loads(out)["witness"] is not None


def test_mt3_on_two_vertices():
    code, out = run("lpa-mt3", "--in", data("e2.json"))
    assert code == 0 and json.loads(out) == {"mt3": False, "witness": ["v1", "v2"]}


def test_group_ring_verdicts():
    code, out = run("groupring-prime", "--ring", data("f2.json"), "--group", "C2")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "not_prime" and rep["reason"] == "finite_normal_subgroup"
    code, out = run("groupring-prime", "--ring-prime", "--group", "Z x F2")
    assert json.loads(out)["verdict"] == "prime"


def test_np_search_and_classify():
    code, out = run("np-search", "--in", data("f2c2.json"))
    rep = json.loads(out)
    assert code == 0 and rep["found"] and rep["verified"]
    assert rep["np_datum"]["H"] == [0, 1] and rep["np_datum"]["A_gens"] == [[1, 1]]
    code, out = run("classify", "--in", data("partial_z.json"))
    rep = json.loads(out)
    assert rep["flags"]["epsilon_strong"] and rep["routes"] == [True, True]


def test_harness_and_lpa_prime():
    code, out = run("harness", "--in", data("f2c2.json"))
    assert code == 0 and json.loads(out)["equivalent"]
    code, out = run("lpa-prime", "--in", data("e3.json"), "--ring", data("f2.json"))
    assert json.loads(out)["verdict"] == "prime"


def test_text_format():
    code, out = run("--format", "text", "lpa-mt3", "--in", data("e3.json"))
    assert code == 0 and "mt3: true" in out


def test_exit_codes(tmp_path):
    assert run("prime", "--in", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"ring": {"preset": "Zmod", "m": 2.5}}')
    assert run("prime", "--in", str(bad))[0] == 2
    assert run("prime", "--bogus")[0] == 2
    assert run("lpa-prime", "--in", data("e2.json"))[0] == 2
    code, out = run("--max-elements", "2", "np-search", "--in", data("f2c2.json"))
    assert code == 3 and json.loads(out)["error"] == "cap_exceeded"


def test_theorem_violation_exit_code(monkeypatch):
    from graded_prime_lab import constructions
    from graded_prime_lab.errors import TheoremViolation

    def boom(*a, **k):
        raise TheoremViolation("forced", witness=[1])
    monkeypatch.setattr(constructions, "connell_decision", boom)
    code, out = run("groupring-prime", "--ring-prime", "--group", "Z")
    assert code == 4 and json.loads(out)["witness"] == [1]


def test_corpus_command(tmp_path):
    code, out = run("corpus", "--seed", "3", "--count", "2", "--out", str(tmp_path))
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 2 and os.path.exists(tmp_path / "summary.json")
    assert run("corpus", "--seed", "-1", "--out", str(tmp_path))[0] == 2
