"""Additive rank-metric codes: membership, distance, MRD predicates, duality.

An AdditiveCode is an F_p-subspace of M_{m x n}(F_q) held as a canonical
RREF basis of the flattened matrices, so equal codes have identical byte
representations.  Rank statistics are computed by enumerating all p^k
codewords with a batched Gaussian elimination (p^k <= 3^8 in paper scope).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .gf import get_field
from .matrix import MatrixGF, Subspace, rref_rows, gaussian_binomial


def batched_ranks(a: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of matrices over F_p; a has shape (B, m, n)."""
    a = a.astype(np.int16) % p
    B, m, n = a.shape
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(m)
    batch = np.arange(B)
    for col in range(n):
        r = rank
        valid = (a[:, :, col] != 0) & (rows[None, :] >= r[:, None])
        piv = np.argmax(valid, axis=1)
        has = valid[batch, piv]
        sel = np.where(has)[0]
        if sel.size == 0:
            continue
        rb, pb = rank[sel], piv[sel]
        tmp = a[sel, rb].copy()
        a[sel, rb] = a[sel, pb]
        a[sel, pb] = tmp
        if p > 2:
            inv = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)], dtype=np.int16)
            a[sel, rb] = (a[sel, rb] * inv[a[sel, rb, col]][:, None]) % p
        factor = np.where(rows[None, :] > rb[:, None], a[sel, :, col], 0)
        a[sel] = (a[sel] - factor[:, :, None] * a[sel, rb][:, None, :]) % p
        rank[sel] += 1
    return rank


@dataclass(frozen=True)
class RankDistribution:
    """Codeword counts by exact rank, including the count 1 at rank 0."""

    counts: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def min_nonzero_rank(self) -> int:
        return min(r for r, c in self.counts if r > 0 and c > 0)


@dataclass(frozen=True)
class AdditiveCode:
    """An F_p-subspace of M_{m x n}(F_q) with a canonical RREF basis."""

    q: int
    m: int
    n: int
    basis: tuple[MatrixGF, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def p(self) -> int:
        return 2 if self.q % 2 == 0 else 3

    @property
    def e(self) -> int:
        p, e, t = self.p, 0, self.q
        while t > 1:
            t //= p
            e += 1
        return e

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.p ** self.dim

    def __hash__(self):
        return hash((self.q, self.m, self.n, tuple(M.rows for M in self.basis)))

    # -- flattening over F_p ------------------------------------------------

    def _flatten(self, M: MatrixGF) -> tuple[int, ...]:
        p, e = self.p, self.e
        if e == 1:
            return M.flat()
        out = []
        for a in M.flat():
            for _ in range(e):
                out.append(a % p)
                a //= p
        return tuple(out)

    def _unflatten(self, v) -> MatrixGF:
        p, e = self.p, self.e
        if e == 1:
            return MatrixGF.from_flat(self.q, self.m, self.n, v)
        ent = []
        for i in range(self.m * self.n):
            a = 0
            for j in reversed(range(e)):
                a = a * p + v[i * e + j]
            ent.append(a)
        return MatrixGF.from_flat(self.q, self.m, self.n, ent)

    @staticmethod
    def from_basis(matrices) -> "AdditiveCode":
        """Canonical code spanned (over F_p) by the given matrices."""
        matrices = list(matrices)
        if not matrices:
            raise ValueError("empty basis")
        q, m, n = matrices[0].q, matrices[0].m, matrices[0].n
        if any(M.q != q or M.m != m or M.n != n for M in matrices):
            raise ValueError("mixed shapes or fields")
        proto = AdditiveCode(q, m, n, ())
        F = get_field(proto.p, 1)
        vecs = [proto._flatten(M) for M in matrices]
        red, _ = rref_rows(vecs, F)
        if not red:
            raise ValueError("zero code")
        return AdditiveCode(q, m, n, tuple(proto._unflatten(v) for v in red))

    def contains(self, M: MatrixGF) -> bool:
        F = get_field(self.p, 1)
        vecs = [self._flatten(B) for B in self.basis]
        red, _ = rref_rows(vecs + [self._flatten(M)], F)
        return len(red) == self.dim

    def contains_code(self, other: "AdditiveCode") -> bool:
        return all(self.contains(B) for B in other.basis)

    # -- enumeration ----------------------------------------------------------

    def _basis_array(self) -> np.ndarray:
        return np.array([self._flatten(B) for B in self.basis], dtype=np.int16)

    def codeword_array(self) -> np.ndarray:
        """All p^k codewords as a (p^k, k_flat) digit array, zero first."""
        if "cw" not in self._cache:
            p, k = self.p, self.dim
            coeffs = np.zeros((p ** k, k), dtype=np.int16)
            idx = np.arange(p ** k)
            for i in range(k):
                coeffs[:, k - 1 - i] = (idx // p ** i) % p
            self._cache["cw"] = (coeffs @ self._basis_array()) % p
        return self._cache["cw"]

    def codewords(self):
        """Yield all p^k codewords exactly once, zero first."""
        for row in self.codeword_array():
            yield self._unflatten([int(x) for x in row])

    def _ranks(self) -> np.ndarray:
        if "ranks" not in self._cache:
            cw = self.codeword_array()
            if self.e == 1:
                mats = cw.reshape(-1, self.m, self.n)
                self._cache["ranks"] = batched_ranks(mats, self.p)
            else:
                self._cache["ranks"] = np.array(
                    [self._unflatten([int(x) for x in row]).rank() for row in cw])
        return self._cache["ranks"]

    def minimum_distance(self) -> int:
        """Minimum rank over nonzero codewords."""
        r = self._ranks()
        return int(r[1:].min())

    def rank_distribution(self) -> RankDistribution:
        r = self._ranks()
        vals, counts = np.unique(r, return_counts=True)
        return RankDistribution(tuple((int(v), int(c)) for v, c in zip(vals, counts)))

    # -- MRD predicates ---------------------------------------------------------

    def is_mrd(self) -> tuple[bool, int]:
        """(True, d) iff |C| = q^(n(m-d+1)) with all nonzero ranks >= d."""
        if self.m > self.n:
            ok, d = self.transpose().is_mrd()
            return ok, d
        d = self.minimum_distance()
        return self.size == self.q ** (self.n * (self.m - d + 1)), d

    def is_quasi_mrd(self) -> bool:
        """Strictly between the d and d+1 Singleton-like sizes."""
        if self.m > self.n:
            return self.transpose().is_quasi_mrd()
        d = self.minimum_distance()
        return self.q ** (self.n * (self.m - d)) < self.size < self.q ** (self.n * (self.m - d + 1))

    def transpose(self) -> "AdditiveCode":
        return AdditiveCode.from_basis([B.transpose() for B in self.basis])

    def map(self, f) -> "AdditiveCode":
        """Code spanned by f(B) over the basis matrices B."""
        return AdditiveCode.from_basis([f(B) for B in self.basis])

    # -- duality and lifting -------------------------------------------------------

    def delsarte_dual(self) -> "AdditiveCode":
        """Orthogonal complement under <X,Y> = Tr(sum X_ij Y_ij)."""
        p, e = self.p, self.e
        F = get_field(p, 1)
        N = self.m * self.n * e
        if e == 1:
            gram = np.eye(1, dtype=np.int64)
        else:
            # Gram matrix of the absolute trace form on the p-power basis.
            Fq = get_field(p, e)
            gram = np.zeros((e, e), dtype=np.int64)
            for i in range(e):
                for j in range(e):
                    x = Fq.mul(p ** i, p ** j)
                    s = 0
                    for _ in range(e):
                        s = Fq.add(s, x)
                        x = Fq.pow(x, p) if x else 0
                    gram[i, j] = s % p
        rows = []
        for B in self.basis:
            v = self._flatten(B)
            w = [0] * N
            for cell in range(self.m * self.n):
                for i in range(e):
                    acc = 0
                    for j in range(e):
                        acc = (acc + int(gram[j, i]) * v[cell * e + j]) % p
                    w[cell * e + i] = acc
            rows.append(tuple(w))
        from .matrix import kernel_of_rows
        ker = kernel_of_rows(rows, F)
        return AdditiveCode(self.q, self.m, self.n,
                            tuple(self._unflatten(v) for v in ker.basis))

    def lift(self) -> list[Subspace]:
        """Subspaces U_A = {(x, xA)} of F_q^(m+n), one per codeword."""
        F = get_field(self.p, self.e)
        out = []
        for A in self.codewords():
            rows = []
            for i in range(self.m):
                e_i = tuple(1 if j == i else 0 for j in range(self.m))
                rows.append(e_i + tuple(A.rows[i]))
            out.append(Subspace.from_vectors(F, self.m + self.n, rows))
        return out

    # -- canonical bytes ---------------------------------------------------------

    def canonical_key(self) -> bytes:
        """Unique byte string per code (RREF basis, row-major digits)."""
        return bytes([self.q, self.m, self.n, self.dim]) + b"".join(
            bytes(self._flatten(B)) for B in self.basis)

    def to_text(self) -> str:
        head = f"{self.q} {self.m} {self.n} {self.dim}\n"
        return head + "\n\n".join(B.to_text() for B in self.basis) + "\n"

    @staticmethod
    def from_text(text: str) -> "AdditiveCode":
        lines = text.strip().splitlines()
        if not lines:
            raise ValueError("empty code file")
        parts = lines[0].split()
        if len(parts) != 4:
            raise ValueError(f"bad header: {lines[0]!r}")
        q, m, n, k = map(int, parts)
        from .matrix import parse_matrices
        mats = parse_matrices(q, "\n".join(lines[1:]))
        if len(mats) != k:
            raise ValueError(f"expected {k} matrices, found {len(mats)}")
        if any(M.m != m or M.n != n for M in mats):
            raise ValueError("matrix shape does not match header")
        C = AdditiveCode.from_basis(mats)
        if C.dim != k:
            raise ValueError("basis matrices are not independent")
        return C


def subspace_search(p: int, k: int, good_mask: np.ndarray, target_dim: int,
                    first_only: bool = False) -> list[list[int]]:
    """Find target_dim-dimensional subspaces of F_p^k (vectors encoded as
    base-p integer keys) whose nonzero vectors all satisfy good_mask.

    Returns one generator-key list per subspace, each found exactly once.
    Strategy: precompute pairwise compatibility between admissible vectors,
    then DFS with candidate bitmask intersection and batched closure checks.
    """
    good_mask = np.asarray(good_mask, dtype=bool).copy()
    good_mask[0] = False
    digs = np.zeros((p ** k, k), dtype=np.int16)
    idx = np.arange(p ** k)
    for i in range(k):
        digs[:, i] = (idx // p ** i) % p
    pows = (p ** np.arange(k)).astype(np.int64)
    pool = np.where(good_mask)[0].astype(np.int64)
    P = pool.size
    if P == 0:
        return []
    pos_of = {int(v): i for i, v in enumerate(pool)}
    # pairwise compatibility: comp[i, j] iff span{pool[i], pool[j]} is good
    comp = np.zeros((P, P), dtype=bool)
    for i in range(P):
        m = np.ones(P, dtype=bool)
        for c in range(1, p):
            keys = ((digs[pool] + c * digs[pool[i]]) % p).astype(np.int64) @ pows
            m &= good_mask[keys]
        comp[i] = m
    out: list[list[int]] = []

    def rec(span_keys: np.ndarray, gens: list[int], mask: np.ndarray, start: int):
        if len(gens) == target_dim:
            out.append(gens)
            return
        if first_only and out:
            return
        cand_pos = np.where(mask[start:])[0] + start
        if cand_pos.size == 0:
            return
        sd = digs[span_keys]
        if len(gens) >= 2:
            # batched closure check beyond pairwise compatibility
            ok = np.ones(cand_pos.size, dtype=bool)
            for c in range(1, p):
                keys = ((sd[:, None, :] + c * digs[pool[cand_pos]][None, :, :]) % p
                        ).astype(np.int64) @ pows
                ok &= good_mask[keys].all(axis=0)
            cand_pos = cand_pos[ok]
        for j in cand_pos:
            v = int(pool[j])
            new_list = [(((sd + c * digs[v]) % p).astype(np.int64) @ pows)
                        for c in range(1, p)]
            new_keys = np.concatenate(new_list)
            if new_keys.min() < v:
                continue
            nmask = mask.copy()
            for s in new_keys:
                nmask &= comp[pos_of[int(s)]]
            rec(np.concatenate([span_keys, new_keys]), gens + [v], nmask, int(j) + 1)
            if first_only and out:
                return

    rec(np.array([0], dtype=np.int64), [], np.ones(P, dtype=bool), 0)
    return out


def expected_min_rank_count(m: int, d: int, q: int, n: int) -> int:
    """Rank-d codeword count of an (m, n, d) MRD code: [m d]_q (q^n - 1)."""
    return gaussian_binomial(m, d, q) * (q ** n - 1)
