import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from incmon.cli import Config, render, run

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def _registry():
    res = []
    for p in SCHEMAS.glob("*.json"):
        body = json.loads(p.read_text())
        res.append((body["$id"], Resource.from_contents(body)))
    return Registry().with_resources(res)


REGISTRY = _registry()


def validate(obj, name):
    schema = json.loads((SCHEMAS / name).read_text())
    Draft202012Validator(schema, registry=REGISTRY).validate(obj)


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def cli_json(*argv):
    code, text = cli(*argv)
    assert code == 0, text
    return json.loads(text)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def unipotent_pair(tmp_path):
    obj = {"k": 1, "m": 1, "X": [[1, 1], [0, 1]], "Y": [[1, 0], [0, 1]]}
    validate(obj, "pair.json")
    return write(tmp_path, "pair.json", obj)


@pytest.fixture
def mixed_pair(tmp_path):
    obj = {"field": "QQ", "k": 1, "m": 1, "X": [[1, 1], [0, 2]], "Y": [[1, 3], [0, 2]]}
    validate(obj, "pair.json")
    return write(tmp_path, "mixed.json", obj)


@pytest.fixture
def idem_pair(tmp_path):
    obj = {"field": "GF(3)", "k": 1, "m": 2, "X": [[1, 2, 0], [0, 0, 0], [0, 0, 1]], "Y": [[1, 0, 1], [0, 1, 0], [0, 0, 0]]}
    validate(obj, "pair.json")
    return write(tmp_path, "idem.json", obj)


def test_idem_dim():
    assert cli("idem", "dim", "-k", "3", "-m", "5", "-J", "2,4,6,7") == (0, "8\n")


def test_lattice_dot():
    code, text = cli("green", "lattice", "-k", "3", "-m", "2", "--dot")
    assert code == 0
    nodes = [ln for ln in text.splitlines() if ln.strip().startswith('"') and "->" not in ln]
    assert text.count("->") == 4 and len(nodes) == 4
    assert '"11100" -> "11110"' in text and '"11101" -> "11111"' in text


def test_lattice_json():
    out = cli_json("green", "lattice", "-k", "1", "-m", "2")
    validate(out, "lattice.json")
    assert len(out["elements"]) == 4


def test_conj_p_unipotent_pair(unipotent_pair):
    out = cli_json("conj", "p", "--file", unipotent_pair)
    validate(out, "verdict.json")
    assert out["related"] is False


def test_conj_p_and_group_mixed(mixed_pair):
    for action in ("p", "group"):
        out = cli_json("conj", action, "--file", mixed_pair)
        validate(out, "verdict.json")
        assert out["related"] is True and out["case"] == "mixed"


def test_o_witness(idem_pair):
    out = cli_json("conj", "o-witness", "--file", idem_pair)
    validate(out, "o_witness.json")
    assert out["Z"]["rows"][0] == [1, 0, 1]


def test_o_witness_rejects_units(mixed_pair):
    code, text = cli("conj", "o-witness", "--file", mixed_pair)
    assert code == 1
    validate(json.loads(text), "error.json")


def test_green_rel_and_oracle_agree(idem_pair):
    closed = cli_json("green", "rel", "--file", idem_pair)
    brute = cli_json("oracle", "green", "--file", idem_pair)
    validate(closed, "green_rel.json")
    validate(brute, "green_rel.json")
    assert closed == brute
    assert cli_json("green", "rel", "--file", idem_pair, "--rel", "J") == {"J": False}


def test_green_inverse(tmp_path):
    f = write(tmp_path, "x.json", {"rows": [[1, 3], [0, 2]]})
    out = cli_json("green", "inverse", "--file", f, "-k", "1")
    validate(out, "green_inverse.json")
    assert out["inverse"]["rows"] == [["1", "-3/2"], ["0", "1/2"]]
    assert out["support"] == "11"


def test_oracle_pconj(tmp_path):
    f = write(tmp_path, "p.json", {"field": "GF(3)", "k": 1, "m": 1, "X": [[1, 1], [0, 2]], "Y": [[1, 2], [0, 2]]})
    out = cli_json("oracle", "pconj", "--file", f)
    validate(out, "oracle_pconj.json")
    assert out["related"] is True
    assert cli_json("conj", "p", "--file", f)["related"] is True


def test_oracle_needs_gf(mixed_pair):
    code, text = cli("oracle", "green", "--file", mixed_pair)
    assert code == 1 and json.loads(text)["error"]


def test_oracle_materialize_and_report():
    out = cli_json("oracle", "materialize", "--complete-bipartite", "1", "1", "--antichain", "x2", "--gf", "2", "--list")
    validate(out, "oracle_materialize.json")
    assert out["elements"] == 4 and out["matrices"][0] == [[1, 0], [0, 0]]
    assert cli_json("oracle", "materialize", "--chain", "2", "--gf", "2")["elements"] == 8
    rep = cli_json("oracle", "report", "--complete-bipartite", "1", "2", "--antichain", "x2,x3", "--gf", "3")
    validate(rep, "oracle_report.json")
    assert rep["classes"]["J"] == 4 and rep["completely_regular"] is True


def test_idem_enumerate_and_components():
    out = cli_json("idem", "enumerate", "--chain", "2", "--gf", "3")
    validate(out, "idem_enumerate.json")
    assert [(c["J"], c["count"]) for c in out["components"]] == [("00", 1), ("10", 3), ("01", 3), ("11", 1)]
    listed = cli_json("idem", "enumerate", "--chain", "2", "--gf", "2", "--list")
    validate(listed, "idem_enumerate.json")
    assert listed["components"][1]["idempotents"] == [[[1, 0], [0, 0]], [[1, 1], [0, 0]]]
    comps = cli_json("idem", "components", "-k", "3", "-m", "5")
    validate(comps, "idem_components.json")
    row = next(r for r in comps if r["J"] == "01010110")
    assert row["dimension"] == 8 and row["pattern"][0] == "0 0 0 * 0 * * 0"
    maximal = cli_json("idem", "components", "-k", "1", "-m", "2", "--maximal")
    assert [r["J"] for r in maximal] == ["100", "110", "101", "111"]
    code, dot = cli("idem", "components", "-k", "1", "-m", "1", "--dot")
    assert code == 0 and dot.startswith("digraph")


def test_idem_orthodox():
    out = cli_json("idem", "orthodox", "--complete-bipartite", "2", "2", "--antichain", "x3,x4", "--gf", "2")
    validate(out, "orthodox.json")
    assert out["violations"] == 0
    rnd = cli_json("idem", "orthodox", "--complete-bipartite", "3", "2", "--antichain", "x4,x5", "--mode", "random", "--trials", "50")
    validate(rnd, "orthodox.json")
    assert rnd["products"] == 50


def test_poset_commands(tmp_path):
    p = cli_json("poset", "build", "--edges", "x1<x4,x2<x4,x2<x5,x3<x5")
    validate(p, "poset.json")
    f = write(tmp_path, "p.json", p)
    c = cli_json("poset", "classify", "--poset", f)
    validate(c, "classify.json")
    assert c["label"] == "bipartite(3,2)"
    code, dot = cli("poset", "dot", "--chain", "3")
    assert code == 0 and "rankdir=BT" in dot
    comps = cli_json("poset", "components", "--edges", "a<b,c<d")
    for comp in comps:
        validate(comp, "poset.json")
    assert len(comps) == 2


def test_ctx_commands(tmp_path):
    ctx = cli_json("ctx", "build", "--complete-bipartite", "3", "2", "--antichain", "x4,x5")
    validate(ctx, "context.json")
    f = write(tmp_path, "m.json", {"rows": [[1, 0, 5], [0, 1, 0], [0, 0, 0]]})
    assert cli_json("ctx", "contains", "--complete-bipartite", "2", "1", "--antichain", "x3", "--matrix", f) == {"contains": True}
    assert cli_json("ctx", "contains", "--chain", "3", "--matrix", f) == {"contains": True}
    parts = cli_json("ctx", "decompose", "--edges", "a<b,c<d", "--antichain", "b,d")
    for part in parts:
        validate(part, "context.json")
    assert len(parts) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["ctx", "build", "--chain", "2", "--antichain", "x1,x2"],
        ["poset", "build", "--edges", "a<b,b<a"],
        ["--max-search", "10", "idem", "enumerate", "--complete-bipartite", "2", "2", "--gf", "3"],
        ["--field", "GF(9)", "idem", "dim", "-k", "1", "-m", "1", "-J", "1"],
    ],
)
def test_domain_errors_exit_1(argv):
    code, text = cli(*argv)
    assert code == 1
    validate(json.loads(text), "error.json")


def test_missing_file_exit_1(tmp_path):
    code, text = cli("conj", "p", "--file", str(tmp_path / "nope.json"))
    assert code == 1 and json.loads(text)["error"] == "bad_input"


def test_usage_errors_exit_2():
    assert cli("frobnicate")[0] == 2
    assert cli("idem", "dim", "-k", "1")[0] == 2
    assert cli("--max-search", "0", "idem", "dim", "-k", "1", "-m", "1", "-J", "1")[0] == 2


def test_max_search_env_restored(monkeypatch):
    monkeypatch.setenv("INCMON_MAX_SEARCH", "12345")
    cli("--max-search", "99", "idem", "dim", "-k", "1", "-m", "1", "-J", "1")
    assert os.environ["INCMON_MAX_SEARCH"] == "12345"


def test_table_format():
    code, text = cli("--format", "table", "oracle", "materialize", "--chain", "2", "--gf", "2")
    assert code == 0 and text.splitlines() == ["elements\t8", 'field\t"GF(2)"']
    assert render([{"a": 1}, {"a": 2, "b": 3}], "table").splitlines()[0] == "a\tb"


def test_config_validation():
    with pytest.raises(ValueError):
        Config(max_search=0)
    with pytest.raises(ValueError):
        Config(format="xml")


def test_byte_identical_reruns():
    argv = ["--seed", "7", "idem", "orthodox", "--complete-bipartite", "2", "2", "--antichain", "x3,x4", "--mode", "random", "--trials", "30"]
    assert cli(*argv) == cli(*argv)
    argv = ["oracle", "report", "--complete-bipartite", "1", "1", "--antichain", "x2", "--gf", "3"]
    assert cli(*argv) == cli(*argv)


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "incmon.cli", "idem", "dim", "-k", "3", "-m", "5", "-J", "2,4,6,7"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0 and out.stdout == "8\n"
