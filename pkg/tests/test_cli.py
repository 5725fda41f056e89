import json

import pytest

from relbrace import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_compare_table(capsys):
    code, out, _ = run(capsys, "compare", "--sig", "cc;c", "--table")
    assert code == 0
    assert "equal summaries: true" in out


def test_report_schema(capsys):
    code, rep = report(capsys, "compare", "--sig", "cc;c")
    assert code == 0
    assert rep["schema"] == "relbrace-report/1" and rep["command"] == "compare" and rep["ok"] is True
    assert rep["result"]["phi_quasi_isomorphism"] is True


def test_d2check(capsys):
    code, rep = report(capsys, "d2check", "--operad", "rbr", "--max-inputs", "3")
    assert code == 0 and rep["result"]["failures"] == []
    code, rep = report(capsys, "d2check", "--operad", "rs", "--max-inputs", "2")
    assert code == 0


def test_env_bound(capsys, monkeypatch):
    monkeypatch.setenv("RBR_MAX_INPUTS", "2")
    code, rep = report(capsys, "d2check")
    assert rep["result"]["max_inputs"] == 2
    monkeypatch.setenv("RBR_MAX_INPUTS", "two")
    with pytest.raises(SystemExit) as err:
        cli.run(["d2check"])
    assert err.value.code == 2


def test_basis(capsys):
    code, rep = report(capsys, "basis", "--operad", "rbr", "--sig", "c;o")
    assert [e["element"] for e in rep["result"]["elements"]] == ["(s c1)"]
    code, rep = report(capsys, "basis", "--operad", "rs", "--sig", "oo;o")
    assert rep["result"]["count"] == 2


def test_diff_compose_phi(capsys):
    code, rep = report(capsys, "diff", "--sig", "cc;o", "--tree", "(s c1 c2)")
    assert rep["result"]["differential"] == [
        {"coeff": -1, "element": "(s (n c1 c2))"},
        {"coeff": -1, "element": "(s c1) (s c2)"},
    ]
    code, rep = report(
        capsys, "compose", "--a-sig", "oc;o", "--a-tree", "(o1 c2)", "--b-sig", "occ;o", "--b-tree", "(o1 c2 c3)", "--slot", "1"
    )
    assert code == 0 and len(rep["result"]["result"]) == 5
    code, rep = report(capsys, "phi", "--sig", "ccc;c", "--tree", "(n c1 c2 c3)")
    assert rep["result"]["image"] == []


def test_homology_report(capsys):
    code, rep = report(capsys, "homology", "--sig", "cc;c")
    got = [{k: g[k] for k in ("degree", "betti")} for g in rep["result"]["homology"]]
    assert got == [{"degree": 0, "betti": 1}, {"degree": 1, "betti": 1}]


def test_poset_and_cells(capsys):
    code, rep = report(capsys, "poset", "--sig", "ccc;c", "--tree", "(c1 c2 c3)")
    assert rep["result"]["fvector"] == [6, 6, 1]
    for kind in ("downset", "theta", "theta-inf"):
        code, rep = report(capsys, "cells", "--sig", "ccc;c", "--tree", "(c1 c2 c3)", "--kind", kind)
        assert code == 0 and rep["result"]["contractible"] is True


def test_algebra_commands(capsys):
    code, rep = report(capsys, "hochschild", "--example", "dual_numbers")
    assert rep["result"]["dims"] == {"0": 2, "1": 1, "2": 1, "3": 1, "4": 1}
    code, rep = report(capsys, "mc-check", "--example", "upper_triangular", "--p", "101", "--N", "4")
    assert code == 0 and rep["result"]["maurer_cartan"]["ok"]
    code, rep = report(capsys, "braces-check", "--p", "101", "--samples", "3", "--max-inputs", "2")
    assert code == 0 and rep["result"]["field"] == "F_101"
    code, rep = report(capsys, "koszul-check")
    assert code == 0


def test_determinism(capsys, tmp_path):
    argv = ["braces-check", "--p", "101", "--samples", "3", "--seed", "5", "--max-inputs", "2"]
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        cli.run(argv + ["--output", str(path)])
        outs.append(path.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["basis"],
        ["frobnicate"],
        ["compose", "--a-sig", "c;c", "--a-tree", "c1", "--b-sig", "o;o", "--b-tree", "o1", "--slot", "1"],
        ["hochschild", "--input", "x.json", "--example", "dual_numbers"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as err:
        cli.run(argv)
    assert err.value.code == 2


def test_bad_tree_exits_2(capsys):
    code, _, err = run(capsys, "diff", "--sig", "c;c", "--tree", "(n c1)")
    assert code == 2 and "error" in err


def test_bad_files(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "mc-check", "--input", str(p))
    assert code == 2
    data = {
        "field": "Q",
        "dim": 2,
        "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        "module": {"dim": 2, "rho": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]], "f": [[0, 0], [0, 1]]},
    }
    p.write_text(json.dumps(data))
    code, _, err = run(capsys, "mc-check", "--input", str(p))
    assert code == 1 and "f(ab) != rho(a) f(b)" in err
