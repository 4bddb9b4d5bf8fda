"""Exhaustive, isomorph-rejecting classification of MRD and quasi-MRD codes.

The search spaces are the full matrix spaces M_n(F_p) encoded as integers
(key = sum of entries times p^cell, row-major).  Rank lookup tables over
the whole space are precomputed once and cached on disk, so "all elements
of the span are invertible / have rank >= d" tests reduce to permuted
boolean-mask lookups.

Spread sets (additive MRD codes with d = n) are classified from scratch:
every class has a representative containing the identity, the second
generator can be conjugated to a rational canonical form whose
characteristic polynomial has no roots in F_p, and the remaining
generators are enumerated by the min-of-new-coset ordering that yields
each subspace exactly once.  Larger codes are classified by seeded
extension from spread-set subcodes.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gfpoly
from .matrix import MatrixGF
from .codes import AdditiveCode, batched_ranks
from .equivalence import transporter_space, classify_up_to_equivalence, fingerprint


def _cache_dir() -> str:
    base = os.environ.get("MRDCODES_CACHE",
                          os.path.join(os.path.expanduser("~"), ".cache", "mrdcodes"))
    os.makedirs(base, exist_ok=True)
    return base


@lru_cache(maxsize=None)
def _trit_add_table(cells: int) -> np.ndarray:
    """Digitwise mod-3 addition of two cells-trit keys, as a lookup table."""
    size = 3 ** cells
    pows = (3 ** np.arange(cells)).astype(np.int32)
    digs = ((np.arange(size)[:, None] // pows[None, :]) % 3).astype(np.int8)
    out = np.empty((size, size), dtype=np.int32)
    step = max(1, 2 ** 22 // size)
    for lo in range(0, size, step):
        chunk = (digs[lo:lo + step, None, :] + digs[None, :, :]) % 3
        out[lo:lo + step] = chunk.astype(np.int32) @ pows
    return out


class KeySpace:
    """F_p^cells with vectors packed as base-p integer keys."""

    def __init__(self, p: int, cells: int):
        self.p = p
        self.cells = cells
        self.size = p ** cells
        self.pows = (p ** np.arange(cells)).astype(np.int64)
        if p == 3:
            self.lo_cells = min(8, cells)
            self.hi_cells = cells - self.lo_cells
            self.lo_mod = 3 ** self.lo_cells
            self.add_lo = _trit_add_table(self.lo_cells)
            self.add_hi = _trit_add_table(self.hi_cells) if self.hi_cells else None
        elif p != 2:
            raise ValueError("only p = 2, 3 supported")

    def add(self, keys: np.ndarray, s: int) -> np.ndarray:
        """keys of x + s for every key in keys."""
        if self.p == 2:
            return keys ^ s
        lo = self.add_lo[keys % self.lo_mod, s % self.lo_mod].astype(np.int64)
        if self.hi_cells:
            hi = self.add_hi[keys // self.lo_mod, s // self.lo_mod].astype(np.int64)
            return hi * self.lo_mod + lo
        return lo

    def shifted_mask(self, mask: np.ndarray, s: int) -> np.ndarray:
        """Boolean array out[x] = mask[x + s] over the whole space."""
        if self.p == 2:
            return mask[np.arange(self.size) ^ s]
        if not self.hi_cells:
            return mask[self.add_lo[:, s]]
        r = mask.reshape(3 ** self.hi_cells, self.lo_mod)
        return r[self.add_hi[:, s // self.lo_mod]][:, self.add_lo[:, s % self.lo_mod]].ravel()

    def span_keys(self, gen_keys) -> np.ndarray:
        """All p^k keys of the span of the given generators, zero first."""
        keys = np.array([0], dtype=np.int64)
        for g in gen_keys:
            parts = [keys]
            shift = int(g)
            for _ in range(self.p - 1):
                parts.append(self.add(parts[-1], shift))
            keys = np.concatenate(parts)
        return keys


class MatrixSpace(KeySpace):
    """Integer-keyed M_n(F_p) with vectorized add/rank over the whole space."""

    def __init__(self, p: int, n: int):
        super().__init__(p, n * n)
        self.n = n

    def identity_key(self) -> int:
        key = 0
        for i in range(self.n):
            key += self.p ** (i * self.n + i)
        return key

    def keys_to_mats(self, keys: np.ndarray) -> np.ndarray:
        digs = ((np.asarray(keys).reshape(-1, 1) // self.pows[None, :]) % self.p)
        return digs.astype(np.int8).reshape(-1, self.n, self.n)

    def mats_to_keys(self, mats: np.ndarray) -> np.ndarray:
        flat = (np.asarray(mats, dtype=np.int64) % self.p).reshape(-1, self.cells)
        return flat @ self.pows

    def key_to_matrix(self, key: int) -> MatrixGF:
        digits = [(key // self.p ** i) % self.p for i in range(self.cells)]
        return MatrixGF.from_flat(self.p, self.n, self.n, digits)

    def matrix_key(self, M: MatrixGF) -> int:
        key = 0
        for i, a in enumerate(M.flat()):
            key += a * self.p ** i
        return key

    def rank_table(self) -> np.ndarray:
        path = os.path.join(_cache_dir(), f"ranks_p{self.p}_n{self.n}.npy")
        if not hasattr(self, "_ranks"):
            if os.path.exists(path):
                self._ranks = np.load(path)
            else:
                out = np.empty(self.size, dtype=np.uint8)
                step = 1 << 19
                for lo in range(0, self.size, step):
                    keys = np.arange(lo, min(lo + step, self.size))
                    out[lo:lo + step] = batched_ranks(self.keys_to_mats(keys), self.p)
                np.save(path, out)
                self._ranks = out
        return self._ranks


@lru_cache(maxsize=None)
def get_space(p: int, n: int) -> MatrixSpace:
    return MatrixSpace(p, n)


def _companion(p: int, poly) -> np.ndarray:
    d = len(poly) - 1
    M = np.zeros((d, d), dtype=np.int8)
    for i in range(d - 1):
        M[i + 1, i] = 1
    for i in range(d):
        M[i, d - 1] = (-poly[i]) % p
    return M


def rootless_conjugacy_reps(p: int, n: int) -> list[np.ndarray]:
    """One representative per similarity class of n x n matrices over F_p
    whose characteristic polynomial has no roots in F_p."""
    irreds = {d: [f for f in gfpoly.irreducibles(p, d)]
              for d in range(2, n + 1)}

    def poly_pow(f, k):
        out = (1,)
        for _ in range(k):
            out = gfpoly.mul(out, f, p)
        return out

    reps = []

    def build(remaining, avail, blocks):
        if remaining == 0:
            size = 0
            M = np.zeros((n, n), dtype=np.int8)
            for b in blocks:
                d = b.shape[0]
                M[size:size + d, size:size + d] = b
                size += d
            reps.append(M)
            return
        for fi in range(len(avail)):
            f = avail[fi]
            d = len(f) - 1
            maxm = remaining // d
            for mult in range(1, maxm + 1):
                for part in _partitions(mult):
                    bl = [_companion(p, poly_pow(f, k)) for k in part]
                    build(remaining - mult * d, avail[fi + 1:], blocks + bl)
    flat = [f for d in sorted(irreds) for f in irreds[d]]
    build(n, flat, [])
    return reps


def _partitions(k: int):
    """Partitions of k as non-increasing tuples."""
    if k == 0:
        yield ()
        return
    for first in range(k, 0, -1):
        for rest in _partitions(k - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _centralizer_units_mod_scalars(p: int, G: np.ndarray) -> list[np.ndarray]:
    """Invertible elements commuting with G, one per scalar-multiple class."""
    n = G.shape[0]
    Gm = MatrixGF.from_rows(p, G.tolist())
    basis = transporter_space(Gm, Gm)
    t = len(basis)
    arrs = [np.array(B.rows, dtype=np.int64) for B in basis]
    out = []
    for idx in range(p ** t):
        M = np.zeros((n, n), dtype=np.int64)
        v = idx
        for B in arrs:
            c = v % p
            v //= p
            if c:
                M += c * B
        M %= p
        flat = M.ravel()
        nz = flat[np.flatnonzero(flat)]
        if nz.size == 0 or nz[0] != 1:
            continue
        if MatrixGF.from_rows(p, M.tolist()).is_invertible():
            out.append(M.astype(np.int8))
    return out


def invertible_subspace_leaves(p: int, n: int, dim: int, min_rank: int | None = None,
                               progress=None) -> list[tuple[int, ...]]:
    """Generator-key tuples of dim-dimensional subspaces of M_n(F_p), one
    DFS leaf per subspace containing I up to conjugating the second
    generator to canonical form, with all nonzero elements of rank
    >= min_rank (default n, i.e. invertible)."""
    space = get_space(p, n)
    ranks = space.rank_table()
    good = ranks >= (n if min_rank is None else min_rank)
    good = good.copy()
    good[0] = False
    ikey = space.identity_key()
    leaves: list[tuple[int, ...]] = []
    if dim == 1:
        return [(ikey,)]
    ckpath = _checkpoint_path(
        f"leaves_p{p}_n{n}_dim{dim}_r{min_rank if min_rank is not None else n}.json")
    ck = {"done": 0, "leaves": []}
    if os.path.exists(ckpath):
        with open(ckpath) as f:
            ck = json.load(f)
    if ck.get("complete"):
        return [tuple(l) for l in ck["leaves"]]
    leaves = [tuple(l) for l in ck["leaves"]]
    reps = rootless_conjugacy_reps(p, n)
    for rep_i, G in enumerate(reps):
        if rep_i < ck["done"]:
            continue
        gkey = int(space.mats_to_keys(G[None])[0])
        span = space.span_keys([ikey, gkey])
        if not all(good[k] for k in span[1:]):
            continue
        mask = good.copy()
        for s in span:
            mask &= space.shifted_mask(good, int(s))
        cand = np.flatnonzero(mask).astype(np.int64)
        if dim == 2:
            leaves.append((ikey, gkey))
            continue
        if cand.size:
            # prune the third generator to minima of centralizer orbits:
            # conjugation by units commuting with G fixes I and G
            units = _centralizer_units_mod_scalars(p, G)
            if len(units) > 1:
                eye = np.eye(n, dtype=np.int8)
                mats = space.keys_to_mats(cand)
                omin = cand.copy()
                for A in units:
                    if np.array_equal(A, eye):
                        continue
                    Ainv = np.array(MatrixGF.from_rows(p, A.tolist()).inverse().rows,
                                    dtype=np.int64)
                    conj = (A.astype(np.int64) @ mats.astype(np.int64) @ Ainv) % p
                    omin = np.minimum(omin, space.mats_to_keys(conj))
                keep = omin >= cand
                cand = cand[keep]
        _extension_dfs(space, good, span, [ikey, gkey], cand, dim, leaves)
        with open(ckpath, "w") as f:
            json.dump({"done": rep_i + 1, "leaves": [list(l) for l in leaves]}, f)
        if progress:
            progress(f"g2 rep done, leaves so far {len(leaves)}")
    with open(ckpath, "w") as f:
        json.dump({"done": len(reps), "complete": True,
                   "leaves": [list(l) for l in leaves]}, f)
    return leaves


def _extension_dfs(space: MatrixSpace, good: np.ndarray, span: np.ndarray,
                   gens: list[int], cand: np.ndarray, dim: int,
                   leaves: list[tuple[int, ...]], first_allowed=None):
    """Enumerate supersets of span(gens) inside the good set, each exactly
    once, by increasing generators that are minimal in their new cosets.

    first_allowed optionally restricts the generator chosen at this level
    only (used for orbit pruning, which is sound for the first generator
    because the canonical chain starts at the minimum of the new leaf)."""
    if len(gens) == dim:
        leaves.append(tuple(gens))
        return
    p = space.p
    for pos in range(cand.size):
        y = int(cand[pos])
        if first_allowed is not None and y not in first_allowed:
            continue
        new_parts = []
        acc = span
        for _ in range(p - 1):
            acc = space.add(acc, y)
            new_parts.append(acc)
        new_keys = np.concatenate(new_parts)
        if new_keys.min() < y:
            continue
        sub = cand[pos + 1:]
        for s in new_keys:
            if sub.size == 0:
                break
            sub = sub[good[space.add(sub, int(s))]]
        _extension_dfs(space, good, np.concatenate([span, new_keys]),
                       gens + [y], sub, dim, leaves)


@dataclass
class ClassificationReport:
    """Equivalence classes found by an exhaustive search."""

    params: dict
    classes: list  # list of (representative AdditiveCode, members list)
    stats: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.classes)

    def representatives(self) -> list[AdditiveCode]:
        return [rep for rep, _ in self.classes]


def _leaves_to_codes(p: int, n: int, leaves) -> list[AdditiveCode]:
    space = get_space(p, n)
    return [AdditiveCode.from_basis([space.key_to_matrix(k) for k in gens])
            for gens in leaves]


@dataclass(frozen=True)
class TrilinearForm:
    """T(w, u, v) = w (sum_i v_i E_i) u^T as a coefficient array."""

    q: int
    m: int
    n: int
    coeffs: tuple  # shape (m, n, n): coeffs[a][j][i] = (e_a E_i)_j

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)


def tensorize(C: AdditiveCode) -> AdditiveCode:
    """The m-dim invertible subspace of M_n corresponding to an F_q-linear
    MRD code in M_{m x n} with d = m (Theorem: slices of the trilinear
    form w (sum v_i E_i) u^T by the first slot)."""
    m, n, q = C.m, C.n, C.q
    if m > n:
        raise ValueError("tensorize expects m <= n")
    ok, d = C.is_mrd()
    if not ok or d != m:
        raise ValueError("tensorize expects an MRD code with d = m")
    if C.dim != n * C.e:
        raise ValueError("dimension mismatch: code is not F_q-linear of dim n")
    if C.e > 1:
        # additive codes over non-prime fields need genuine F_q-linearity
        from .gf import get_field
        F = get_field(C.p, C.e)
        gen = F.generator
        for B in C.basis:
            scaled = MatrixGF(q, tuple(tuple(F.mul(gen, a) for a in r) for r in B.rows))
            if not C.contains(scaled):
                raise ValueError("code is not F_q-linear")
        raise NotImplementedError("tensorize implemented for prime q")
    # E_1..E_n = the F_q-basis; N_a has i-th row equal to row a of E_i
    E = [np.array(B.rows, dtype=np.int64) for B in C.basis]
    out = []
    for a in range(m):
        rows = [tuple(int(x) for x in E[i][a]) for i in range(n)]
        out.append(MatrixGF.from_rows(q, rows))
    return AdditiveCode.from_basis(out)


def trilinear_form(C: AdditiveCode) -> TrilinearForm:
    """The trilinear form of an F_q-linear MRD code with d = m."""
    V = tensorize(C)
    arr = tuple(tuple(tuple(int(x) for x in r) for r in B.rows) for B in V.basis)
    return TrilinearForm(C.q, C.m, C.n, arr)


def detensorize(V: AdditiveCode, m: int | None = None) -> AdditiveCode:
    """Inverse of tensorize: rebuild the M_{m x n} code from an m-dim
    subspace of M_n with every nonzero element invertible."""
    if V.m != V.n:
        raise ValueError("detensorize expects a subspace of square matrices")
    if V.minimum_distance() != V.n:
        raise ValueError("subspace contains a singular nonzero element")
    n, q = V.n, V.q
    m = V.dim // V.e if m is None else m
    N = [np.array(B.rows, dtype=np.int64) for B in V.basis]
    out = []
    for i in range(n):
        rows = [tuple(int(x) for x in N[a][i]) for a in range(m)]
        out.append(MatrixGF.from_rows(q, rows))
    return AdditiveCode.from_basis(out)


def classify_rectangular(q: int, m: int, n: int, d: int | None = None,
                         progress=None) -> ClassificationReport:
    """F_q-linear MRD codes in M_{m x n} with d = m, classified via the
    tensor correspondence (searching m-dim invertible subspaces of M_n
    up to equivalence excluding transposition)."""
    if d is not None and d != m:
        raise ValueError("rectangular classification requires d = m")
    if m > n:
        raise ValueError("requires m <= n")
    t0 = time.time()
    leaves = invertible_subspace_leaves(q, n, m, progress=progress)
    subspaces = _leaves_to_codes(q, n, leaves)
    classes = classify_up_to_equivalence(subspaces, isotopy_only=True)
    out = [(detensorize(rep, m), [detensorize(M, m) for M in members])
           for rep, members in classes]
    return ClassificationReport(
        params={"q": q, "m": m, "n": n, "d": m},
        classes=out,
        stats={"leaves": len(leaves), "seconds": round(time.time() - t0, 2)})


# -- seeded extension and census -----------------------------------------------


@lru_cache(maxsize=None)
def get_keyspace(p: int, cells: int) -> KeySpace:
    return KeySpace(p, cells)


def _code_keys(space: MatrixSpace, C: AdditiveCode) -> np.ndarray:
    """Full-space keys of all codewords of C (prime field only)."""
    if C.e != 1:
        raise ValueError("key search spaces are implemented for prime q")
    return C.codeword_array().astype(np.int64) @ space.pows


def candidate_extension_keys(C: AdditiveCode, d: int) -> np.ndarray:
    """Keys x with rank(X + c) >= d for every codeword c of C (so C + <X>
    still has minimum distance >= d); elements of C are excluded."""
    space = get_space(C.p, C.n)
    good = space.rank_table() >= d
    keys = _code_keys(space, C)
    mask = good.copy()
    mask[0] = False
    arr = None
    for s in np.sort(keys)[1:]:
        if arr is None:
            mask &= space.shifted_mask(good, int(s))
            if int(mask.sum()) < 200000:
                arr = np.flatnonzero(mask).astype(np.int64)
        else:
            if arr.size == 0:
                break
            arr = arr[good[space.add(arr, int(s))]]
    return arr if arr is not None else np.flatnonzero(mask).astype(np.int64)


def _witness_perm(space: MatrixSpace, keys: np.ndarray, A: MatrixGF,
                  Bt: MatrixGF) -> np.ndarray:
    """Indices into keys of the images A X Bt^T (keys must be sorted and
    closed under the map)."""
    mats = space.keys_to_mats(keys).astype(np.int64)
    Aa = np.array(A.rows, dtype=np.int64)
    Ba = np.array(Bt.rows, dtype=np.int64).T
    img = (Aa @ mats @ Ba) % space.p
    ik = space.mats_to_keys(img)
    pos = np.searchsorted(keys, ik)
    if not np.array_equal(keys[pos], ik):
        raise ValueError("candidate set is not closed under the witness")
    return pos


def _orbit_min_keys(space: MatrixSpace, keys: np.ndarray, witnesses) -> np.ndarray:
    """Subset of keys minimal in their orbit under the witness subgroup."""
    if keys.size == 0 or not witnesses:
        return keys
    keys = np.sort(keys)
    perms = []
    for w in witnesses:
        try:
            perms.append(_witness_perm(space, keys, w.A, w.B))
        except ValueError:
            continue
    label = keys.copy()
    changed = True
    while changed:
        changed = False
        for perm in perms:
            nl = np.minimum(label, label[perm])
            # propagate both ways so labels flow around the orbit
            np.minimum.at(nl, perm, label)
            if not np.array_equal(nl, label):
                label = nl
                changed = True
    return keys[label == keys]


def extend_code(C: AdditiveCode, d: int, target_dim: int,
                progress=None) -> list[AdditiveCode]:
    """Codes containing (a transform of) C with the target dimension and
    minimum distance >= d, one representative per equivalence class."""
    from .equivalence import automorphism_group
    if C.minimum_distance() < d:
        raise ValueError("seed already violates the distance bound")
    space = get_space(C.p, C.n)
    reps = [C]
    for dim in range(C.dim + 1, target_dim + 1):
        found = []
        for R in reps:
            cand = candidate_extension_keys(R, d)
            if cand.size:
                _, wits = automorphism_group(R)
                cand = _orbit_min_keys(space, cand, wits)
            for y in cand:
                found.append(AdditiveCode.from_basis(
                    list(R.basis) + [space.key_to_matrix(int(y))]))
        classes = classify_up_to_equivalence(found)
        reps = [rep for rep, _ in classes]
        if progress:
            progress(f"dim {dim}: {len(reps)} classes from {len(found)} codes")
        if not reps:
            return []
    return reps


def _checkpoint_path(name: str) -> str:
    d = os.path.join(_cache_dir(), "checkpoints")
    os.makedirs(d, exist_ok=True)
    return os.path.join(d, name)


def _cached_report(name: str, compute) -> ClassificationReport:
    """Load a previously saved report for this search, or run and save it."""
    from .catalog import save_report, load_report
    path = _checkpoint_path(name + ".report.json")
    if os.path.exists(path):
        try:
            return load_report(path)
        except ValueError:
            pass
    report = compute()
    save_report(report, path)
    return report


def _seeds_tag(seeds) -> str:
    import hashlib
    h = hashlib.sha256()
    for key in sorted(s.canonical_key() for s in seeds):
        h.update(key)
    return h.hexdigest()[:10]


@dataclass
class CensusRow:
    dim: int
    classes: int
    containing: dict  # seed name -> number of classes containing its spread set


def quasi_mrd_census(q: int, n: int, d: int, seeds=None,
                     progress=None) -> dict:
    """Class counts of additive codes with min distance >= d per dimension,
    from n (the semifield seeds) up to the MRD dimension n(n-d+1), with
    per-seed containment counts (seed matching up to isotopy).

    Complete for codes containing a semifield spread set; by the structure
    theory this covers all of them at the parameters in scope.  Progress is
    checkpointed per dimension, so interrupted runs resume.
    """
    from .equivalence import are_equivalent, automorphism_group, min_distance_subcodes
    if seeds is None:
        rep_iso = classify_semifields(q, n, isotopy_only=True).representatives()
        seeds = [(f"S{i + 1}", c) for i, c in enumerate(rep_iso)]
    space = get_space(q, n)
    target = n * (n - d + 1)
    ckpath = _checkpoint_path(
        f"census_q{q}_n{n}_d{d}_{_seeds_tag([c for _, c in seeds])}.json")
    rows = {n: CensusRow(n, len(seeds), {name: 1 for name, _ in seeds})}
    # the census counts classes up to isotopy: transposition can merge
    # seeds, which would make the containment columns ambiguous
    reps = [rep for rep, _ in classify_up_to_equivalence(
        [c for _, c in seeds], isotopy_only=True)]
    start = n + 1
    if os.path.exists(ckpath):
        with open(ckpath) as f:
            ck = json.load(f)
        rows = {r["dim"]: CensusRow(r["dim"], r["classes"], r["containing"])
                for r in ck["rows"]}
        reps = [AdditiveCode.from_text(t) for t in ck["reps"]]
        start = ck["done_dim"] + 1
    for dim in range(start, target + 1):
        found = []
        for R in reps:
            cand = candidate_extension_keys(R, d)
            if cand.size:
                _, wits = automorphism_group(R)
                cand = _orbit_min_keys(space, cand, wits)
            for y in cand:
                found.append(AdditiveCode.from_basis(
                    list(R.basis) + [space.key_to_matrix(int(y))]))
        classes = classify_up_to_equivalence(found, isotopy_only=True)
        reps = [rep for rep, _ in classes]
        containing = {name: 0 for name, _ in seeds}
        for rep in reps:
            subs = min_distance_subcodes(rep, n)
            for name, seed in seeds:
                if any(are_equivalent(sub, seed, isotopy_only=True) is not None
                       for sub in subs):
                    containing[name] += 1
        rows[dim] = CensusRow(dim, len(reps), containing)
        with open(ckpath, "w") as f:
            json.dump({"done_dim": dim,
                       "reps": [r.to_text() for r in reps],
                       "rows": [{"dim": r.dim, "classes": r.classes,
                                 "containing": r.containing}
                                for r in rows.values()]}, f)
        if progress:
            progress(f"dim {dim}: {len(reps)} classes")
        if not reps:
            break
    return rows


# -- d = n-1 classification via spread-set + kernel-space decomposition ----------


def _dminus1_leaves_from_seed(S: AdditiveCode, progress=None):
    """All MRD codes C = S + D with d = n-1, where D is an n-dim space of
    rank-(n-1) matrices whose left kernels contain e_1; yields (code, seed)
    pairs.

    Such a code splits as S + C_U for every kernel direction U, so the
    single direction e_1 already reaches every class containing S.
    """
    from .equivalence import automorphism_group
    n = S.n
    p = S.p
    space = get_space(p, n)
    ranks = space.rank_table()
    # W = matrices with zero first row, i.e. e_1 in the left kernel; its
    # coefficient keys are full-space keys divided by p^n
    shift = p ** n
    wspace = get_keyspace(p, n * n - n)
    full_keys = np.arange(wspace.size, dtype=np.int64) * shift
    goodc = ranks[full_keys] == n - 1
    goodc[0] = False
    goodd = ranks >= n - 1
    Skeys = np.sort(_code_keys(space, S))
    for s in Skeys[1:]:
        goodc &= goodd[space.add(full_keys, int(s))]
    cand = np.flatnonzero(goodc).astype(np.int64)
    _, wits = automorphism_group(S)
    # stabilizer of (S, direction e_1): e_1 A^{-1} proportional to e_1
    stab = [w for w in wits
            if not w.transposed and w.rho == 0
            and not any(w.A.inverse().rows[0][1:])]
    first_allowed = None
    if cand.size and len(stab) > 1:
        first_allowed = set(
            int(x) for x in _coeff_orbit_min(p, space, wspace, shift, cand, stab))
    leaves: list[tuple[int, ...]] = []
    _extension_dfs(wspace, goodc, np.array([0], dtype=np.int64), [], cand,
                   n * S.e, leaves, first_allowed=first_allowed)
    if progress:
        progress(f"seed done: {len(leaves)} leaves from {cand.size} candidates")
    return [(AdditiveCode.from_basis(
                list(S.basis)
                + [space.key_to_matrix(int(k) * shift) for k in gens]), S)
            for gens in leaves]


def _coeff_orbit_min(p, space, wspace, shift, cand, witnesses):
    """cand entries minimal in their orbit under stabilizer witnesses acting
    on the zero-first-row coefficient space."""
    mats = space.keys_to_mats(cand * shift).astype(np.int64)
    label = cand.copy()
    for w in witnesses:
        Aa = np.array(w.A.rows, dtype=np.int64)
        Ba = np.array(w.B.rows, dtype=np.int64).T
        img = (Aa @ mats @ Ba) % p
        ck = space.mats_to_keys(img)
        if (ck % shift).any():
            continue
        ck //= shift
        pos = np.searchsorted(cand, ck)
        inside = pos < cand.size
        ok = inside.copy()
        ok[inside] = cand[pos[inside]] == ck[inside]
        if not ok.all():
            continue
        label = np.minimum(label, ck)
        np.minimum.at(label, pos, cand)
    return cand[label == cand]


def classify_dminus1(q: int, n: int, seeds=None, progress=None) -> ClassificationReport:
    """Additive MRD codes in M_n(F_q) with d = n-1 containing a semifield
    spread set, one representative per equivalence class.

    For q = 2 the structure theorem makes this a complete classification;
    for q = 3, n = 4 completeness is a computational theorem.  Leaves are
    checkpointed per seed and the final report is cached.
    """
    from .equivalence import are_equivalent, fingerprint
    if seeds is None:
        seeds = classify_semifields(q, n).representatives()
    name = f"dminus1_q{q}_n{n}_{_seeds_tag(seeds)}"

    def compute():
        t0 = time.time()
        ckpath = _checkpoint_path(name + ".partial.json")
        done = {}
        if os.path.exists(ckpath):
            with open(ckpath) as f:
                done = json.load(f)
        leaves = []
        for i, S in enumerate(seeds):
            key = str(i)
            if key not in done:
                found = _dminus1_leaves_from_seed(S, progress=progress)
                done[key] = [C.to_text() for C, _ in found]
                with open(ckpath, "w") as f:
                    json.dump(done, f)
            leaves.extend((AdditiveCode.from_text(t), S) for t in done[key])
        classes: list[tuple[AdditiveCode, list]] = []
        for C, hint in leaves:
            fp = fingerprint(C)
            placed = False
            for i, (rep, members) in enumerate(classes):
                if fingerprint(rep) != fp:
                    continue
                if are_equivalent(rep, C, sub2_hint=hint) is not None:
                    members.append(C)
                    if C.canonical_key() < rep.canonical_key():
                        classes[i] = (C, members)
                    placed = True
                    break
            if not placed:
                classes.append((C, [C]))
            if progress:
                progress(f"dedup: {len(classes)} classes of {len(leaves)} leaves")
        classes.sort(key=lambda t: t[0].canonical_key())
        os.remove(ckpath)
        return ClassificationReport(
            params={"q": q, "m": n, "n": n, "d": n - 1},
            classes=classes,
            stats={"leaves": len(leaves), "seconds": round(time.time() - t0, 2)})

    return _cached_report(name, compute)


def classify_semifields(q: int, n: int, isotopy_only: bool = False,
                        progress=None) -> ClassificationReport:
    """All semifield spread sets in M_n(F_q), i.e. additive MRD codes with
    d = n, classified up to equivalence (or isotopy when isotopy_only);
    the report is cached on disk."""
    if q not in (2, 3):
        raise ValueError("from-scratch semifield classification needs q in {2, 3}")

    def compute():
        t0 = time.time()
        leaves = invertible_subspace_leaves(q, n, n, progress=progress)
        codes = _leaves_to_codes(q, n, leaves)
        classes = classify_up_to_equivalence(codes, isotopy_only=isotopy_only)
        return ClassificationReport(
            params={"q": q, "m": n, "n": n, "d": n, "isotopy_only": isotopy_only},
            classes=classes,
            stats={"leaves": len(leaves), "seconds": round(time.time() - t0, 2)})

    suffix = "_iso" if isotopy_only else ""
    return _cached_report(f"semifields_q{q}_n{n}{suffix}", compute)
