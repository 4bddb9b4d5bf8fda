import json

import pytest

from mrdcodes import cli
from mrdcodes.constructions import delsarte_gabidulin, field_spread_set


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_verify_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--family", "dg",
                       "--q", "2", "--n", "4", "--k", "2")
    assert code == 0
    path = tmp_path / "c.txt"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path), "--format", "json",
                       "--expect-d", "3", "--expect-mrd")
    assert code == 0
    obj = json.loads(out)
    assert obj["minimum_distance"] == 3 and obj["is_mrd"]


def test_verify_failure_reports_codeword(capsys, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(delsarte_gabidulin(2, 4, 2).to_text())
    code, _, err = run(capsys, "verify", str(path), "--expect-d", "4")
    assert code == 1
    assert "offending codeword" in err


def test_invariants(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(field_spread_set(2, 4).code.to_text())
    code, out, _ = run(capsys, "invariants", str(path), "--format", "json",
                       "--aut")
    assert code == 0
    obj = json.loads(out)
    assert obj["left_idealiser"] == obj["right_idealiser"] == 16
    assert obj["rank_distribution"] == {"0": 1, "4": 15}
    assert obj["automorphisms"] > 0


def test_equiv_exit_codes(capsys, tmp_path):
    f = tmp_path / "f.txt"
    f.write_text(field_spread_set(2, 4).code.to_text())
    t = tmp_path / "t.txt"
    t.write_text(field_spread_set(2, 4).code.transpose().to_text())
    code, out, _ = run(capsys, "equiv", str(f), str(t), "--format", "json")
    assert code == 0
    assert json.loads(out)["equivalent"]
    g = tmp_path / "g.txt"
    g.write_text(delsarte_gabidulin(2, 4, 2).to_text())
    code, out, _ = run(capsys, "equiv", str(f), str(g), "--format", "json")
    assert code == 1
    assert not json.loads(out)["equivalent"]


def test_extract_semifields(capsys, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(delsarte_gabidulin(2, 4, 2).to_text())
    code, out, err = run(capsys, "extract-semifields", str(path))
    assert code == 0
    assert "2 spread-set subcodes" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["construct", "--family", "nope", "--q", "2", "--n", "4"])
    assert exc.value.code == 64
    capsys.readouterr()
    code, _, err = run(capsys, "classify", "--q", "2", "--n", "5", "--d", "2")
    assert code == 64
    code, _, err = run(capsys, "verify", "-", "--threads", "0")
    assert code == 64


def test_budget_exhausted(capsys, tmp_path, monkeypatch):
    # an empty cache dir forces a real search, so the budget check fires
    monkeypatch.setenv("MRDCODES_CACHE", str(tmp_path))
    code, _, err = run(capsys, "classify", "--q", "2", "--n", "4",
                       "--d", "3", "--time-limit", "0.000001")
    assert code == 2
    assert "budget" in err


def test_schema(capsys):
    for command in ("verify", "census", "classify"):
        code, out, _ = run(capsys, command, "--schema", "--q", "2", "--n", "2",
                           "--d", "2") if command == "census" else \
            run(capsys, command, "--schema", "--q", "2", "--n", "2") if \
            command == "classify" else run(capsys, command, "--schema", "x")
        assert code == 0
        json.loads(out)


def test_classify_semifields_cached(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "classify", "--q", "2", "--n", "4",
                       "--format", "json", "--out", str(out_path))
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 3
    from mrdcodes.catalog import load_report
    assert load_report(out_path).count == 3


def test_classify_determinism(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "classify", "--q", "2", "--n", "3",
                           "--format", "json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


@pytest.mark.slow
def test_census_tsv(capsys):
    code, out, _ = run(capsys, "census", "--q", "2", "--n", "4", "--d", "3",
                       "--format", "tsv")
    assert code == 0
    lines = [l.split("\t") for l in out.strip().splitlines()]
    assert lines[0][:2] == ["Dim", "#"]
    assert [l[1] for l in lines[1:]] == ["3", "3", "4", "2", "1"]
    cols = list(zip(*lines))
    for col in cols[2:]:
        seen_dash = False
        for cell in col[1:]:
            if cell == "-":
                seen_dash = True
            else:
                assert not seen_dash  # "-" only after a column dies


def test_catalog_check(capsys):
    code, out, _ = run(capsys, "catalog-check", "--order", "32",
                       "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 6
    assert all("mismatch" not in r["status"] for r in rows)
