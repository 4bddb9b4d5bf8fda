"""Regenerate the bundled semifield catalogs from the from-scratch search.

Usage: python3 scripts/build_catalogs.py [16] [32] [81]

Each catalog lists one representative per isotopy class, named S1, S2, ...
in canonical-key order, with computed idealiser orders as metadata and the
field entry attributed.  Writes into src/mrdcodes/data/.
"""

import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from mrdcodes.catalog import CatalogEntry, save_catalog, bundled_catalog_path
from mrdcodes.classify import classify_semifields
from mrdcodes.constructions import field_spread_set
from mrdcodes.equivalence import are_equivalent, left_idealiser, right_idealiser

PARAMS = {16: (2, 4), 32: (2, 5), 81: (3, 4)}


def build(order):
    q, n = PARAMS[order]
    print(f"order {order}: classifying semifields in M_{n}(F_{q})", flush=True)
    reps = classify_semifields(q, n, isotopy_only=True).representatives()
    reps.sort(key=lambda c: c.canonical_key())
    F = field_spread_set(q, n).code
    entries = []
    for i, code in enumerate(reps):
        lo, _ = left_idealiser(code)
        ro, _ = right_idealiser(code)
        meta = {"nuclei": f"{lo},{ro}", "source": "mrdcodes-search"}
        if are_equivalent(code, F) is not None:
            meta["family"] = "field"
        entries.append(CatalogEntry(f"S{i + 1}", q, n, code, meta))
        print(f"  S{i + 1}: nuclei {lo},{ro}"
              + (" (field)" if "family" in meta else ""), flush=True)
    path = bundled_catalog_path(order)
    save_catalog(entries, path)
    print(f"wrote {path} ({len(entries)} entries)", flush=True)


if __name__ == "__main__":
    orders = [int(a) for a in sys.argv[1:]] or [16, 32, 81]
    for order in orders:
        build(order)
