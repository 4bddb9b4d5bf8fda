"""Command-line interface: construct, verify, classify and tabulate codes.

Exit codes: 0 success, 1 verification failure, 2 budget exhausted,
64 usage error.  Results go to stdout, progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .codes import AdditiveCode

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class BudgetExhausted(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


class _Budget:
    """Wall-clock budget checked from progress callbacks."""

    def __init__(self, seconds):
        self.t0 = time.time()
        self.seconds = seconds

    def __call__(self, msg=None):
        if msg:
            print(msg, file=sys.stderr, flush=True)
        if self.seconds and time.time() - self.t0 > self.seconds:
            raise BudgetExhausted(f"time budget of {self.seconds}s exhausted")


SCHEMAS = {
    "construct": {"output": "code text: header 'q m n k', then k matrices"},
    "verify": {"output": {"q": "int", "m": "int", "n": "int", "dim": "int",
                          "minimum_distance": "int", "is_mrd": "bool",
                          "is_quasi_mrd": "bool"}},
    "invariants": {"output": {"rank_distribution": "{rank: count}",
                              "left_idealiser": "int", "right_idealiser": "int",
                              "automorphisms": "int (with --aut)"}},
    "equiv": {"output": {"equivalent": "bool", "witness": "text or null"}},
    "extract-semifields": {"output": "list of spread-set subcodes in code text"},
    "classify": {"output": {"params": "dict", "count": "int",
                            "class_sizes": "[int]"}},
    "census": {"output": "rows: dim, classes, one column per seed"},
    "catalog-check": {"output": "rows: name, q, n, idealisers, family, status"},
}


def _read_code(path) -> AdditiveCode:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return AdditiveCode.from_text(text)


def _emit(args, obj, table_lines):
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    elif args.format == "tsv":
        for line in table_lines:
            print("\t".join(str(c) for c in line))
    else:
        widths = [max(len(str(r[i])) for r in table_lines)
                  for i in range(len(table_lines[0]))]
        for r in table_lines:
            print("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())


def _cmd_construct(args):
    from . import constructions
    fam = args.family
    if fam == "field":
        code = constructions.field_spread_set(args.q, args.n).code
    elif fam == "dg":
        code = constructions.delsarte_gabidulin(args.q, args.n, args.k, args.s)
    elif fam == "tg":
        code = constructions.twisted_gabidulin(args.q, args.n, args.k, args.s,
                                               args.eta, args.h)
    else:
        code = constructions.trombetti_zhou(args.q, args.n, args.k, args.s,
                                            args.eta if args.eta else None)
    sys.stdout.write(code.to_text())
    return EXIT_OK


def _cmd_verify(args):
    C = _read_code(args.code)
    d = C.minimum_distance()
    ok, dd = C.is_mrd()
    obj = {"q": C.q, "m": C.m, "n": C.n, "dim": C.dim, "minimum_distance": d,
           "is_mrd": ok, "is_quasi_mrd": C.is_quasi_mrd()}
    _emit(args, obj, [["q", "m", "n", "dim", "d", "mrd", "quasi-mrd"],
                      [C.q, C.m, C.n, C.dim, d, ok, obj["is_quasi_mrd"]]])
    if args.expect_d is not None and d != args.expect_d:
        word = next(X for X in C.codewords() if not X.is_zero() and X.rank() == d)
        print(f"verification failed: minimum distance {d}, expected "
              f"{args.expect_d}; offending codeword:\n{word.to_text()}",
              file=sys.stderr)
        return EXIT_VERIFY
    if args.expect_mrd and not ok:
        word = next(X for X in C.codewords() if not X.is_zero() and X.rank() == d)
        print(f"verification failed: not MRD (dim {C.dim}, d {d}); "
              f"minimum-rank codeword:\n{word.to_text()}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_invariants(args):
    from .equivalence import left_idealiser, right_idealiser, automorphism_group
    C = _read_code(args.code)
    rd = C.rank_distribution().as_dict()
    lo, _ = left_idealiser(C)
    ro, _ = right_idealiser(C)
    obj = {"rank_distribution": {str(r): c for r, c in sorted(rd.items())},
           "left_idealiser": lo, "right_idealiser": ro}
    rows = [["invariant", "value"],
            ["rank distribution", " ".join(f"{r}:{c}" for r, c in sorted(rd.items()))],
            ["left idealiser", lo], ["right idealiser", ro]]
    if args.aut:
        order, _ = automorphism_group(C)
        obj["automorphisms"] = order
        rows.append(["automorphisms", order])
    _emit(args, obj, rows)
    return EXIT_OK


def _cmd_equiv(args):
    from .equivalence import are_equivalent
    C1 = _read_code(args.code1)
    C2 = _read_code(args.code2)
    w = are_equivalent(C1, C2, isotopy_only=args.isotopy_only)
    obj = {"equivalent": w is not None, "witness": None}
    rows = [["equivalent"], [w is not None]]
    if w is not None:
        obj["witness"] = {"A": w.A.to_text(), "B": w.B.to_text(),
                          "rho": w.rho, "transposed": w.transposed}
    _emit(args, obj, rows)
    return EXIT_OK if w is not None else EXIT_VERIFY


def _cmd_extract(args):
    from .spreads import extract_semifield_subcodes
    C = _read_code(args.code)
    subs = extract_semifield_subcodes(C)
    print(f"{len(subs)} spread-set subcodes", file=sys.stderr)
    for S in subs:
        sys.stdout.write(S.code.to_text())
        sys.stdout.write("\n")
    return EXIT_OK


def _load_seeds(args):
    if args.catalog:
        from .catalog import load_catalog
        return [(en.name, en.code) for en in load_catalog(args.catalog)]
    return None


def _cmd_classify(args):
    from .classify import classify_semifields, classify_dminus1, classify_rectangular
    budget = _Budget(args.time_limit)
    if args.m is not None and args.m != args.n:
        report = classify_rectangular(args.q, args.m, args.n, args.d)
    elif args.d is None or args.d == args.n:
        report = classify_semifields(args.q, args.n,
                                     isotopy_only=args.isotopy_only,
                                     progress=budget)
    elif args.d == args.n - 1:
        seeds = _load_seeds(args)
        report = classify_dminus1(args.q, args.n, progress=budget,
                                  seeds=[c for _, c in seeds] if seeds else None)
    else:
        print(f"classification for d={args.d} with n={args.n} is not supported; "
              "use d=n (semifields) or d=n-1", file=sys.stderr)
        return EXIT_USAGE
    obj = {"params": report.params, "count": report.count,
           "class_sizes": [len(m) for _, m in report.classes]}
    rows = [["class", "dim", "members"]]
    for i, (rep, members) in enumerate(report.classes):
        rows.append([i + 1, rep.dim, len(members)])
    _emit(args, obj, rows)
    if args.out:
        from .catalog import save_report
        save_report(report, args.out)
        print(f"report written to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_census(args):
    from .classify import quasi_mrd_census
    budget = _Budget(args.time_limit)
    seeds = _load_seeds(args)
    rows = quasi_mrd_census(args.q, args.n, args.d, seeds=seeds, progress=budget)
    names = sorted(rows[args.n].containing)
    header = ["Dim", "#"] + names
    table = [header]
    obj = []
    dead: set = set()
    for dim in sorted(rows):
        r = rows[dim]
        line = [dim, r.classes]
        for name in names:
            c = r.containing.get(name, 0)
            line.append("-" if c == 0 and name in dead else c)
            if c == 0:
                dead.add(name)
        table.append(line)
        obj.append({"dim": dim, "classes": r.classes, "containing": r.containing})
    _emit(args, obj, table)
    return EXIT_OK


def _cmd_catalog_check(args):
    from .catalog import load_catalog, verify_catalog_against_families, \
        bundled_catalog_path
    path = args.catalog or bundled_catalog_path(args.order)
    entries = load_catalog(path)
    rows = verify_catalog_against_families(entries)
    table = [["name", "q", "n", "I_l", "I_r", "family", "status"]]
    for r in rows:
        table.append([r["name"], r["q"], r["n"], r["left_idealiser"],
                      r["right_idealiser"], r["family"], r["status"]])
    _emit(args, rows, table)
    bad = [r for r in rows if "mismatch" in r["status"]]
    if bad:
        print(f"{len(bad)} entries failed family verification", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> _Parser:
    top = _Parser(prog="mrdcodes",
                  description="Additive rank-metric (MRD) code toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["table", "json", "tsv"],
                       default="table")
        p.add_argument("--catalog", help="semifield catalog file")
        p.add_argument("--threads", type=int, default=1,
                       help="worker thread cap (current searches are "
                            "single-threaded; results do not depend on it)")
        p.add_argument("--time-limit", type=float, default=None,
                       help="wall-clock budget in seconds (exit 2 if exceeded)")
        p.add_argument("--schema", action="store_true",
                       help="print the machine-readable output schema and exit")

    p = sub.add_parser("construct", help="emit a code from a known family")
    p.add_argument("--family", required=True,
                   choices=["field", "dg", "tg", "tz"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--eta", type=int, default=0)
    p.add_argument("--h", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="check distance/MRD of a code file")
    p.add_argument("code", help="code file, or - for stdin")
    p.add_argument("--expect-d", type=int, default=None)
    p.add_argument("--expect-mrd", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("invariants", help="rank distribution and idealisers")
    p.add_argument("code")
    p.add_argument("--aut", action="store_true",
                   help="also compute the automorphism group order")
    common(p)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("equiv", help="test equivalence of two code files")
    p.add_argument("code1")
    p.add_argument("code2")
    p.add_argument("--isotopy-only", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("extract-semifields",
                       help="spread-set subcodes of a d = n-1 MRD code")
    p.add_argument("code")
    common(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("classify", help="exhaustive classification")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None,
                   help="row count for rectangular codes (default square)")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--isotopy-only", action="store_true")
    p.add_argument("--out", help="write a checksummed JSON report here")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("census", help="class counts per dimension with "
                                      "semifield-seed containment")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("catalog-check", help="validate a semifield catalog")
    p.add_argument("--order", type=int, default=16,
                   help="bundled catalog order (16, 32, 81)")
    common(p)
    p.set_defaults(func=_cmd_catalog_check)
    return top


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "schema", False):
        print(json.dumps(SCHEMAS[args.command], sort_keys=True))
        return EXIT_OK
    if args.threads is not None and args.threads < 1:
        print("--threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VERIFY


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
