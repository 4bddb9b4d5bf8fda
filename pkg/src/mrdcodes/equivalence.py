"""Code equivalence, idealisers, automorphism groups, fingerprints.

Equivalence of C1, C2 in M_n(F_q) means C1 = {A X^rho B} or
C1 = {A (X^T)^rho B} for A, B in GL(n, q) and rho in Aut(F_q).

The engine for codes whose nonzero elements are all invertible (spread
sets and tensorized rectangular codes) reduces equivalence to a set
conjugacy problem: right-normalizing C by one of its elements turns
C1 = A C2 B into C1 Y0^{-1} = A (C2 X0^{-1}) A^{-1}, and conjugators are
found by enumerating transporter spaces of anchor elements.  Codes with
d < n are handled by anchoring on their maximum-distance subcodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import itertools

import numpy as np

from . import gfpoly
from .gf import get_field
from .matrix import MatrixGF, rref_rows, kernel_of_rows
from .codes import AdditiveCode, batched_ranks, subspace_search


# -- characteristic polynomials and similarity invariants -------------------


@lru_cache(maxsize=1 << 18)
def charpoly(M: MatrixGF) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - M) over F_q (monic, as tuple)."""
    if M.q not in (2, 3):
        raise NotImplementedError("charpoly implemented for prime q")
    p = M.q
    n = M.n
    # subset DP over column sets: det of the polynomial matrix xI - M
    entries = [[((-M.rows[i][j]) % p,) if i != j else ((-M.rows[i][j]) % p, 1)
                for j in range(n)] for i in range(n)]
    entries = [[gfpoly.trim(list(e)) for e in row] for row in entries]
    dp = {0: (1,)}
    for i in range(n):
        ndp: dict[int, tuple[int, ...]] = {}
        for cols, val in dp.items():
            if bin(cols).count("1") != i:
                continue
            sign_base = 0
            for j in range(n):
                bit = 1 << j
                if cols & bit:
                    continue
                below = bin(cols >> (j + 1)).count("1")
                term = gfpoly.mul(val, entries[i][j], p)
                # sign: parity of transpositions to place column j
                used_before = bin(cols & (bit - 1)).count("1")
                if (i - used_before) % 2:
                    term = gfpoly.neg(term, p)
                key = cols | bit
                ndp[key] = gfpoly.add(ndp.get(key, ()), term, p)
        dp = ndp
    return dp[(1 << n) - 1]


def _poly_eval_matrix(f, M: MatrixGF) -> MatrixGF:
    out = MatrixGF.zero(M.q, M.m, M.n)
    acc = MatrixGF.identity(M.q, M.n)
    for c in f:
        if c:
            out = out + acc.scale(c)
        acc = acc @ M
    return out


@lru_cache(maxsize=1 << 18)
def similarity_invariant(M: MatrixGF) -> tuple:
    """Charpoly plus rank sequences of f(M)^j per irreducible factor."""
    cp = charpoly(M)
    sig = [cp]
    for f, mult in gfpoly.factor(cp, M.q):
        if mult == 1:
            continue
        fM = _poly_eval_matrix(f, M)
        acc = fM
        ranks = []
        for _ in range(mult):
            ranks.append(acc.rank())
            acc = acc @ fM
        sig.append((f, tuple(ranks)))
    return tuple(sig)


# -- linear subproblems ------------------------------------------------------


def transporter_space(Z: MatrixGF, Zp: MatrixGF) -> list[MatrixGF]:
    """Basis of {A : A Z = Zp A} as matrices."""
    q, n = Z.q, Z.n
    F = get_field(2 if q % 2 == 0 else 3, 1) if q in (2, 3) else None
    if F is None:
        raise NotImplementedError
    rows = []
    # unknowns A[i][k], n^2 of them; equations indexed by (i, j)
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[i * n + k] = (row[i * n + k] + Z.rows[k][j]) % q
                row[k * n + j] = (row[k * n + j] - Zp.rows[i][k]) % q
            rows.append(tuple(row))
    ker = kernel_of_rows(rows, F)
    return [MatrixGF.from_flat(q, n, n, v) for v in ker.basis]


def _span_elements(q: int, basis: list[MatrixGF]):
    """All nonzero F_p-combinations of the basis matrices."""
    p = 2 if q % 2 == 0 else 3
    t = len(basis)
    for idx in range(1, p ** t):
        M = None
        rem = idx
        for B in basis:
            c = rem % p
            rem //= p
            if c:
                T = B if c == 1 else B.scale(c)
                M = T if M is None else M + T
        yield M


def right_solve_space(mats_in: list[MatrixGF], target: AdditiveCode) -> list[MatrixGF]:
    """Basis of {B in M_n : M B in target for all given M} (target a code)."""
    q = target.q
    p, n = target.p, target.n
    if target.e != 1:
        raise NotImplementedError("implemented for prime q")
    F = get_field(p, 1)
    # vectors h with h . flat(X) = 0 for every X in the target code
    tgt_rows = [target._flatten(X) for X in target.basis]
    H = kernel_of_rows(tgt_rows, F).basis
    rows = []
    for M in mats_in:
        for h in H:
            # condition: sum_{i,j} h[i*n+j] * (M B)[i][j] = 0, linear in B
            row = [0] * (n * n)
            for i in range(target.m):
                for j in range(n):
                    c = h[i * n + j]
                    if not c:
                        continue
                    for k in range(n):
                        row[k * n + j] = (row[k * n + j] + c * M.rows[i][k]) % p
            rows.append(tuple(row))
    if not rows:
        rows = [tuple([0] * (n * n))]
    ker = kernel_of_rows(rows, F)
    return [MatrixGF.from_flat(q, n, n, v) for v in ker.basis]


# -- cached per-code data ----------------------------------------------------


def index_set(C: AdditiveCode) -> frozenset:
    if "idxset" not in C._cache:
        cw = C.codeword_array().astype(np.int64)
        radix = C.p
        pows = radix ** np.arange(cw.shape[1] - 1, -1, -1, dtype=np.int64)
        C._cache["idxset"] = frozenset((cw @ pows).tolist())
    return C._cache["idxset"]


def contains_fast(C: AdditiveCode, M: MatrixGF) -> bool:
    flat = C._flatten(M)
    p = C.p
    idx = 0
    for d in flat:
        idx = idx * p + d
    return idx in index_set(C)


def right_normalize(C: AdditiveCode, Y0: MatrixGF) -> AdditiveCode:
    """The code C Y0^{-1} (contains the identity)."""
    Yinv = Y0.inverse()
    return AdditiveCode.from_basis([B @ Yinv for B in C.basis])


def set_conj_invariant(D: AdditiveCode) -> tuple:
    """Conjugation-invariant signature of a matrix space: the multiset of
    similarity invariants of its nonzero elements."""
    key = "conjinv"
    if key not in D._cache:
        sigs = sorted(similarity_invariant(M) for M in D.codewords() if not M.is_zero())
        D._cache[key] = tuple(sigs)
    return D._cache[key]


# -- conjugacy of matrix spaces ----------------------------------------------


def _anchor_choice(D: AdditiveCode):
    """Pick an element of D minimizing the centralizer (transporter) size."""
    if "anchor" in D._cache:
        return D._cache["anchor"]
    best = None
    for M in D.codewords():
        if M.is_zero():
            continue
        cdim = len(transporter_space(M, M))
        if best is None or cdim < best[0]:
            best = (cdim, M)
    res = (best[1], similarity_invariant(best[1]))
    D._cache["anchor"] = res
    return res


def conjugators(D2: AdditiveCode, D1: AdditiveCode, first_only: bool = True):
    """Yield invertible A with A D2 A^{-1} = D1."""
    if D2.dim != D1.dim or D2.n != D1.n or D2.q != D1.q:
        return
    if set_conj_invariant(D2) != set_conj_invariant(D1):
        return
    Z, sig = _anchor_choice(D2)
    basis2 = D2.basis
    targets = [M for M in D1.codewords()
               if not M.is_zero() and similarity_invariant(M) == sig]
    for Zp in targets:
        tbasis = transporter_space(Z, Zp)
        for A in _span_elements(D2.q, tbasis):
            if not A.is_invertible():
                continue
            Ainv = A.inverse()
            if all(contains_fast(D1, (A @ B) @ Ainv) for B in basis2):
                yield A
                if first_only:
                    return


# -- spread-type equivalence (all nonzero elements invertible) ---------------


def _spread_witnesses(C1: AdditiveCode, C2: AdditiveCode, first_only: bool = True):
    """Yield (A, B) with {A X B : X in C2} = C1; both codes must have all
    nonzero elements invertible."""
    if C1.dim != C2.dim or C1.n != C2.n or C1.q != C2.q:
        return
    X0 = C2.basis[0]
    D2 = right_normalize(C2, X0)
    inv2 = set_conj_invariant(D2)
    X0inv = X0.inverse()
    for Y0 in C1.codewords():
        if Y0.is_zero():
            continue
        D1 = right_normalize(C1, Y0)
        if set_conj_invariant(D1) != inv2:
            continue
        for A in conjugators(D2, D1, first_only=first_only):
            B = (X0inv @ A.inverse()) @ Y0
            yield A, B
            if first_only:
                return


# -- public API ---------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceWitness:
    """C1 = {A (X^rho)(^T if transposed) B : X in C2}."""

    A: MatrixGF
    B: MatrixGF
    rho: int = 0
    transposed: bool = False

    def apply(self, C2: AdditiveCode) -> AdditiveCode:
        def f(X: MatrixGF) -> MatrixGF:
            Y = _apply_rho(X, self.rho)
            if self.transposed:
                Y = Y.transpose()
            return (self.A @ Y) @ self.B
        return C2.map(f)


def _apply_rho(X: MatrixGF, rho: int) -> MatrixGF:
    if rho == 0:
        return X
    F = X.field
    return MatrixGF(X.q, tuple(tuple(F.pow(a, F.p ** rho) if a else 0 for a in r)
                               for r in X.rows))


def _rho_range(q: int) -> range:
    p = 2 if q % 2 == 0 else 3
    e = 0
    t = q
    while t > 1:
        t //= p
        e += 1
    return range(e)


def min_distance_subcodes(C: AdditiveCode, d: int) -> list[AdditiveCode]:
    """All n*e-dimensional subcodes of C with minimum distance d = n,
    i.e. the maximal-distance (spread-set) subcodes.

    Found by DFS over the rank-n codewords: an n*e-dim F_p-subspace all of
    whose nonzero members have rank n.
    """
    # work in coefficient space: codeword i of codeword_array corresponds
    # to the base-p digits of i over the basis, so codeword addition is
    # digitwise mod-p addition of row indices.
    if "subcodes" not in C._cache:
        sols = subspace_search(C.p, C.dim, C._ranks() == d, C.n * C.e)
        cw = C.codeword_array()
        C._cache["subcodes"] = [
            AdditiveCode.from_basis([C._unflatten([int(x) for x in cw[v]])
                                     for v in gens]) for gens in sols]
    return list(C._cache["subcodes"])


def are_equivalent(C1: AdditiveCode, C2: AdditiveCode,
                   isotopy_only: bool = False,
                   sub2_hint: AdditiveCode | None = None) -> EquivalenceWitness | None:
    """Witness with C1 = {A X^rho B} (or the transpose branch), else None.

    sub2_hint, when given, must be a maximal-distance subcode of C2; it is
    used as the anchor so the (expensive) subcode extraction only runs on C1.
    """
    if (C2.m, C2.n) not in {(C1.m, C1.n), (C1.n, C1.m)}:
        return None
    if C1.q != C2.q or C1.dim != C2.dim:
        return None
    if C1.rank_distribution() != C2.rank_distribution():
        return None
    branches = [(False, C2, sub2_hint)]
    if not isotopy_only:
        branches.append((True, C2.transpose(),
                         sub2_hint.transpose() if sub2_hint else None))
    elif C1.m != C2.m:
        return None
    for transposed, C2b, hint in branches:
        if (C2b.m, C2b.n) != (C1.m, C1.n):
            continue
        for rho in _rho_range(C1.q):
            if rho == 0:
                C2r, hr = C2b, hint
            else:
                C2r = C2b.map(lambda X: _apply_rho(X, rho))
                hr = hint.map(lambda X: _apply_rho(X, rho)) if hint else None
            w = _equiv_same_frame(C1, C2r, hr)
            if w is not None:
                A, B = w
                return EquivalenceWitness(A, B, rho, transposed)
    return None


def _equiv_same_frame(C1: AdditiveCode, C2: AdditiveCode,
                      sub2_hint: AdditiveCode | None = None):
    """Find (A, B) with C1 = {A X B}, no rho or transpose."""
    d = C1.minimum_distance()
    if d == C1.n and C1.m == C1.n:
        for A, B in _spread_witnesses(C1, C2, first_only=True):
            return A, B
        return None
    if C1.m == C1.n:
        # anchor on maximal-distance subcodes
        subs1 = min_distance_subcodes(C1, C1.n)
        if sub2_hint is not None:
            S2 = sub2_hint
        else:
            subs2 = min_distance_subcodes(C2, C2.n)
            if len(subs1) != len(subs2):
                return None
            S2 = subs2[0] if subs2 else None
        if bool(subs1) != (S2 is not None):
            return None
        if subs1:
            for T1 in subs1:
                for A, B in _spread_witnesses(T1, S2, first_only=False):
                    if all(contains_fast(C1, (A @ X) @ B) for X in C2.basis):
                        return A, B
            return None
    # small fallback: loop over GL(m) with B solved linearly
    return _gl_loop_equiv(C1, C2)


def _all_invertible(q: int, m: int):
    """All invertible m x m matrices over F_q (small m only)."""
    count = 1
    for i in range(m):
        count *= q ** m - q ** i
    if count > 2 * 10 ** 5:
        raise ValueError("GL too large for exhaustive fallback")
    out = []
    for idx in range(q ** (m * m)):
        M = MatrixGF.from_index(q, m, m, idx)
        if M.is_invertible():
            out.append(M)
    return out


def _gl_loop_equiv(C1: AdditiveCode, C2: AdditiveCode):
    for A in _all_invertible(C1.q, C1.m):
        mats = [A @ X for X in C2.basis]
        sol = right_solve_space(mats, C1)
        for B in _span_elements(C1.q, sol):
            if B.m == B.n and B.is_invertible():
                img = AdditiveCode.from_basis([(M @ B) for M in mats])
                if img.canonical_key() == C1.canonical_key():
                    return A, B
    return None


# -- idealisers and automorphisms ---------------------------------------------


def left_idealiser(C: AdditiveCode) -> tuple[int, list[MatrixGF]]:
    """(order, basis) of {A : A C subset C}."""
    if C.m != C.n:
        raise ValueError("idealisers need square codes")
    basis = _idealiser_basis(C, left=True)
    return C.p ** len(basis), basis


def right_idealiser(C: AdditiveCode) -> tuple[int, list[MatrixGF]]:
    """(order, basis) of {A : C A subset C}."""
    if C.m != C.n:
        raise ValueError("idealisers need square codes")
    basis = _idealiser_basis(C, left=False)
    return C.p ** len(basis), basis


def _idealiser_basis(C: AdditiveCode, left: bool) -> list[MatrixGF]:
    p, n = C.p, C.n
    F = get_field(p, 1)
    tgt_rows = [C._flatten(X) for X in C.basis]
    H = kernel_of_rows(tgt_rows, F).basis
    rows = []
    for X in C.basis:
        for h in H:
            row = [0] * (n * n)
            for i in range(n):
                for j in range(n):
                    c = h[i * n + j]
                    if not c:
                        continue
                    for k in range(n):
                        if left:
                            # (A X)[i][j] = sum_k A[i][k] X[k][j]
                            row[i * n + k] = (row[i * n + k] + c * X.rows[k][j]) % p
                        else:
                            # (X A)[i][j] = sum_k X[i][k] A[k][j]
                            row[k * n + j] = (row[k * n + j] + c * X.rows[i][k]) % p
            rows.append(tuple(row))
    ker = kernel_of_rows(rows, F)
    return [MatrixGF.from_flat(C.q, n, n, v) for v in ker.basis]


def _invertible_count_in_span(basis: list[MatrixGF], q: int) -> int:
    cnt = 0
    for M in _span_elements(q, basis):
        if M.is_invertible():
            cnt += 1
    return cnt


def automorphism_group(C: AdditiveCode) -> tuple[int, list[EquivalenceWitness]]:
    """Order and sample witnesses of Aut(C) = {(A, B) : A C B^T = C}.

    Witnesses are returned in the internal right-action convention; the
    paper's B^T convention differs only by transposing the second factor.
    """
    if C.m != C.n:
        raise ValueError("Aut implemented for square codes")
    d = C.minimum_distance()
    gens: list[EquivalenceWitness] = []
    if d == C.n:
        total = 0
        for A, B in _spread_witnesses(C, C, first_only=False):
            total += 1
            if len(gens) < 8:
                gens.append(EquivalenceWitness(A, B.transpose()))
        return total, gens
    subs = min_distance_subcodes(C, C.n)
    if subs:
        S1 = subs[0]
        total = 0
        for Sj in subs:
            for A, B in _spread_witnesses(Sj, S1, first_only=False):
                if all(contains_fast(C, (A @ X) @ B) for X in C.basis):
                    total += 1
                    if len(gens) < 8:
                        gens.append(EquivalenceWitness(A, B.transpose()))
        return total, gens
    # tiny fallback
    total = 0
    for A in _all_invertible(C.q, C.m):
        mats = [A @ X for X in C.basis]
        sol = right_solve_space(mats, C)
        for B in _span_elements(C.q, sol):
            if B.is_invertible():
                img = AdditiveCode.from_basis([M @ B for M in mats])
                if img.canonical_key() == C.canonical_key():
                    total += 1
                    if len(gens) < 8:
                        gens.append(EquivalenceWitness(A, B.transpose()))
    return total, gens


# -- fingerprints and classification --------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Cheap equivalence-invariant data for pre-filtering."""

    params: tuple
    rank_dist: tuple
    idealiser_orders: tuple | None
    extra: tuple = ()

    def as_json(self):
        return {
            "params": list(self.params),
            "rank_distribution": [list(x) for x in self.rank_dist],
            "idealiser_orders": list(self.idealiser_orders) if self.idealiser_orders else None,
            "extra": [list(x) if isinstance(x, tuple) else x for x in self.extra],
        }


def fingerprint(C: AdditiveCode, deep: bool = False) -> Fingerprint:
    """Equivalence-invariant fingerprint (idealiser pair sorted, since
    transposition swaps left and right)."""
    if "fp" + ("d" if deep else "") in C._cache:
        return C._cache["fp" + ("d" if deep else "")]
    params = (C.q, *sorted((C.m, C.n)), C.dim)
    rd = C.rank_distribution().counts
    ideal = None
    extra = ()
    if C.m == C.n:
        lo, _ = left_idealiser(C)
        ro, _ = right_idealiser(C)
        ideal = tuple(sorted((lo, ro)))
        if deep:
            subs = min_distance_subcodes(C, C.n)
            sigs = sorted(set_conj_invariant(right_normalize(S, S.basis[0]))
                          for S in subs)
            extra = (len(subs), tuple(hash(s) for s in sigs))
    fp = Fingerprint(params, rd, ideal, extra)
    C._cache["fp" + ("d" if deep else "")] = fp
    return fp


def classify_up_to_equivalence(codes, isotopy_only: bool = False,
                               deep_fingerprint: bool = True):
    """Partition codes into equivalence classes.

    Returns a list of (representative, members) with the representative
    chosen as the member with minimal canonical basis bytes.
    """
    buckets: dict = {}
    for C in codes:
        fp = fingerprint(C, deep=deep_fingerprint and C.m == C.n
                         and C.minimum_distance() < C.n)
        buckets.setdefault(fp, []).append(C)
    classes = []  # list of lists
    for fp, group in sorted(buckets.items(), key=lambda kv: repr(kv[0])):
        reps: list[list[AdditiveCode]] = []
        for C in group:
            placed = False
            for cl in reps:
                if are_equivalent(cl[0], C, isotopy_only=isotopy_only) is not None:
                    cl.append(C)
                    placed = True
                    break
            if not placed:
                reps.append([C])
        classes.extend(reps)
    out = []
    for members in classes:
        rep = min(members, key=lambda C: C.canonical_key())
        out.append((rep, members))
    out.sort(key=lambda t: t[0].canonical_key())
    return out
