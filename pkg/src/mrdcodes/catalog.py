"""Semifield catalog files and persisted classification reports.

Catalog format (line-oriented, diff-able):

    # comment
    > name key=value key=value ...
    q n
    <n*e matrices in the shared matrix text format, blank-line separated>

Reports are JSON with a version field and a payload checksum.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

from .matrix import MatrixGF
from .codes import AdditiveCode

CATALOG_ENV = "MRDCODES_CATALOG_DIR"
REPORT_VERSION = 1


@dataclass(frozen=True)
class CatalogEntry:
    """One semifield spread set with a name and free-form metadata."""

    name: str
    q: int
    n: int
    code: AdditiveCode
    metadata: dict = field(default_factory=dict)


def catalog_dir() -> str:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data")


def bundled_catalog_path(order: int) -> str:
    return os.path.join(catalog_dir(), f"semifields_order{order}.txt")


def load_catalog(path) -> list[CatalogEntry]:
    """Parse and validate a semifield catalog file."""
    with open(path) as f:
        lines = f.read().splitlines()
    entries: list[CatalogEntry] = []
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if not line or line.startswith("#"):
            i += 1
            continue
        if not line.startswith(">"):
            raise ValueError(f"{path}:{i + 1}: expected an entry header '> name'")
        parts = line[1:].split()
        if not parts:
            raise ValueError(f"{path}:{i + 1}: entry header has no name")
        name = parts[0]
        metadata = {}
        for tok in parts[1:]:
            if "=" not in tok:
                raise ValueError(f"{path}:{i + 1}: bad metadata token {tok!r}")
            k, v = tok.split("=", 1)
            metadata[k] = v
        i += 1
        if i >= len(lines) or len(lines[i].split()) != 2:
            raise ValueError(f"{path}:{i + 1}: expected 'q n' after entry {name}")
        q, n = map(int, lines[i].split())
        i += 1
        start = i
        p = 2 if q % 2 == 0 else 3
        e = 0
        t = q
        while t > 1:
            t //= p
            e += 1
        blocks_needed = n * e
        mats = []
        row_buf: list[str] = []
        while i < len(lines) and len(mats) < blocks_needed:
            s = lines[i].strip()
            if s.startswith(">"):
                break
            if s and not s.startswith("#"):
                row_buf.append(s)
            elif row_buf:
                mats.append(row_buf)
                row_buf = []
            i += 1
        if row_buf:
            mats.append(row_buf)
        if len(mats) != blocks_needed:
            raise ValueError(
                f"{path}:{start + 1}: entry {name} has {len(mats)} matrices, "
                f"expected {blocks_needed}")
        try:
            basis = [MatrixGF.from_text(q, "\n".join(b)) for b in mats]
            code = AdditiveCode.from_basis(basis)
        except ValueError as exc:
            raise ValueError(f"{path}:{start + 1}: entry {name}: {exc}") from exc
        _validate_entry(path, name, code, q, n)
        entries.append(CatalogEntry(name, q, n, code, metadata))
    names = [en.name for en in entries]
    if len(set(names)) != len(names):
        dup = sorted(x for x in set(names) if names.count(x) > 1)
        raise ValueError(f"{path}: duplicate entry names {dup}")
    keys = {}
    for en in entries:
        key = en.code.canonical_key()
        if key in keys:
            raise ValueError(
                f"{path}: entries {keys[key]} and {en.name} have equal canonical bases")
        keys[key] = en.name
    return entries


def _validate_entry(path, name, code: AdditiveCode, q: int, n: int):
    if code.q != q or code.m != n or code.n != n:
        raise ValueError(f"{path}: entry {name}: shape/field mismatch with header")
    if code.dim != n * code.e:
        raise ValueError(f"{path}: entry {name}: dimension {code.dim} != n*e")
    for X in code.codewords():
        if not X.is_zero() and X.rank() < n:
            raise ValueError(
                f"{path}: entry {name} is not a semifield spread set; "
                f"singular nonzero element:\n{X.to_text()}")


def save_catalog(entries, path):
    """Write entries in the catalog text format."""
    out = []
    for en in entries:
        meta = "".join(f" {k}={v}" for k, v in sorted(en.metadata.items()))
        out.append(f"> {en.name}{meta}")
        out.append(f"{en.q} {en.n}")
        out.append("")
        for B in en.code.basis:
            out.append(B.to_text())
            out.append("")
    with open(path, "w") as f:
        f.write("\n".join(out))


def _report_payload(report) -> dict:
    return {
        "params": report.params,
        "stats": report.stats,
        "classes": [{
            "representative": rep.to_text(),
            "members": [m.to_text() for m in members],
        } for rep, members in report.classes],
    }


def save_report(report, path):
    """Persist a ClassificationReport as versioned, checksummed JSON."""
    payload = _report_payload(report)
    blob = json.dumps(payload, sort_keys=True)
    doc = {
        "version": REPORT_VERSION,
        "checksum": hashlib.sha256(blob.encode()).hexdigest(),
        "payload": payload,
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1, sort_keys=True)


def load_report(path):
    """Load a report saved by save_report, verifying version and checksum."""
    from .classify import ClassificationReport
    with open(path) as f:
        doc = json.load(f)
    if doc.get("version") != REPORT_VERSION:
        raise ValueError(f"{path}: unsupported report version {doc.get('version')!r}")
    payload = doc["payload"]
    blob = json.dumps(payload, sort_keys=True)
    if hashlib.sha256(blob.encode()).hexdigest() != doc.get("checksum"):
        raise ValueError(f"{path}: checksum mismatch (corrupt or edited file)")
    classes = [(AdditiveCode.from_text(c["representative"]),
                [AdditiveCode.from_text(m) for m in c["members"]])
               for c in payload["classes"]]
    return ClassificationReport(params=payload["params"], classes=classes,
                                stats=payload["stats"])


def verify_catalog_against_families(entries) -> list[dict]:
    """Re-check the verifiable metadata claims of catalog entries.

    Checks idealiser orders against `nuclei=l,r` metadata and equivalence to
    the field spread set for `family=field` entries.  Mismatches are
    reported in the table, not raised.
    """
    from .constructions import field_spread_set
    from .equivalence import left_idealiser, right_idealiser, are_equivalent
    rows = []
    for en in entries:
        lo, _ = left_idealiser(en.code)
        ro, _ = right_idealiser(en.code)
        status = []
        claim = en.metadata.get("nuclei")
        if claim:
            want = sorted(int(x) for x in claim.split(","))
            got = sorted((lo, ro))
            status.append("nuclei ok" if want == got else
                          f"nuclei mismatch: claimed {want}, computed {got}")
        if en.metadata.get("family") == "field":
            F = field_spread_set(en.q, en.n).code
            ok = are_equivalent(en.code, F) is not None
            status.append("field ok" if ok else "field mismatch")
        rows.append({
            "name": en.name,
            "q": en.q,
            "n": en.n,
            "left_idealiser": lo,
            "right_idealiser": ro,
            "family": en.metadata.get("family", ""),
            "status": "; ".join(status) or "unchecked",
        })
    return rows
