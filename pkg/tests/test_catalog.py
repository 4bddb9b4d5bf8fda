import json

import pytest

from mrdcodes.catalog import (CatalogEntry, bundled_catalog_path, load_catalog,
                              load_report, save_catalog, save_report,
                              verify_catalog_against_families)
from mrdcodes.classify import ClassificationReport
from mrdcodes.constructions import delsarte_gabidulin, field_spread_set


def test_bundled_catalogs_load():
    for order, count in ((16, 3), (32, 6)):
        entries = load_catalog(bundled_catalog_path(order))
        assert len(entries) == count
        for en in entries:
            ok, d = en.code.is_mrd()
            assert ok and d == en.n


def test_catalog_roundtrip(tmp_path):
    entries = load_catalog(bundled_catalog_path(16))
    path = tmp_path / "copy.txt"
    save_catalog(entries, path)
    again = load_catalog(path)
    assert [en.name for en in again] == [en.name for en in entries]
    assert [en.code for en in again] == [en.code for en in entries]
    assert [en.metadata for en in again] == [en.metadata for en in entries]


def test_catalog_parse_errors(tmp_path):
    field = field_spread_set(2, 2).code
    body = field.to_text()  # "2 2 2\n..." header plus matrices

    def attempt(text):
        path = tmp_path / "bad.txt"
        path.write_text(text)
        with pytest.raises(ValueError):
            load_catalog(path)

    attempt("no header\n")
    attempt(">\n2 2\n")
    attempt("> a oops\n2 2\n")
    attempt("> a\n2 2\n10\n01\n")  # too few matrices
    # duplicate names
    mats = "\n\n".join(B.to_text() for B in field.basis)
    attempt(f"> a\n2 2\n{mats}\n\n> a\n2 2\n{mats}\n")


def test_catalog_rejects_zero_divisors(tmp_path):
    C = delsarte_gabidulin(2, 4, 2)
    sub_basis = list(C.basis)[:4]
    mats = "\n\n".join(B.to_text() for B in sub_basis)
    path = tmp_path / "bad.txt"
    path.write_text(f"> notsemifield\n2 4\n{mats}\n")
    with pytest.raises(ValueError, match="singular"):
        load_catalog(path)


def test_report_roundtrip(tmp_path):
    C = field_spread_set(2, 3).code
    rep = ClassificationReport(params={"q": 2, "n": 3},
                               classes=[(C, [C])],
                               stats={"seconds": 0.1})
    path = tmp_path / "rep.json"
    save_report(rep, path)
    back = load_report(path)
    assert back.params == rep.params
    assert back.count == 1
    assert back.classes[0][0] == C


def test_report_checksum_and_version(tmp_path):
    C = field_spread_set(2, 3).code
    rep = ClassificationReport(params={}, classes=[(C, [C])])
    path = tmp_path / "rep.json"
    save_report(rep, path)
    doc = json.loads(path.read_text())
    doc["payload"]["params"]["tampered"] = True
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="checksum"):
        load_report(path)
    doc = json.loads(path.read_text())
    doc["version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="version"):
        load_report(path)


def test_verify_catalog_against_families():
    entries = load_catalog(bundled_catalog_path(16))
    rows = verify_catalog_against_families(entries)
    assert len(rows) == 3
    for r in rows:
        assert "mismatch" not in r["status"]
    # a wrong claim is reported, not raised
    en = entries[0]
    bad = CatalogEntry(en.name, en.q, en.n, en.code, {"nuclei": "7,7"})
    row = verify_catalog_against_families([bad])[0]
    assert "mismatch" in row["status"]
