"""Kernel-subspace structure of minimum-rank codewords and partial spreads.

For an MRD code C with minimum distance d, the rank-d codewords are
partitioned by their kernels: C_U = {X in C : U <= ker(X)} is additive of
F_q-dimension n for each (m-d)-dim subspace U, and the family D_C of all
C_U forms a partial spread of the coefficient space of C.  A spread-set
subcode is a common complement to that partial spread, which is how
semifield spread sets are recovered from d = n-1 codes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import get_field
from .matrix import MatrixGF, Subspace, gaussian_binomial
from .codes import AdditiveCode, subspace_search
from .constructions import Presemifield
from .equivalence import min_distance_subcodes


@dataclass(frozen=True)
class KernelSpaceFamily:
    """Pairs (U, C_U) grouping the minimum-rank codewords of a code."""

    code: AdditiveCode
    pairs: tuple[tuple[Subspace, AdditiveCode], ...]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class PartialSpread:
    """Pairwise trivially-intersecting t-dim subspaces of F_p^N."""

    p: int
    ambient: int
    t: int
    members: tuple[Subspace, ...]

    def __len__(self) -> int:
        return len(self.members)

    def covered_keys(self) -> set[int]:
        """Base-p integer keys of all nonzero covered vectors."""
        out = set()
        for S in self.members:
            for v in S.vectors():
                key = 0
                for x in reversed(v):
                    key = key * self.p + x
                if key:
                    out.add(key)
        return out


def kernel_space_family(C: AdditiveCode) -> KernelSpaceFamily:
    """Group the rank-d codewords of C by their left kernel in F_q^m."""
    d = C.minimum_distance()
    groups: dict = {}
    for X in C.codewords():
        if X.rank() != d:
            continue
        U = X.left_kernel()
        groups.setdefault(U.basis, (U, []))[1].append(X)
    expect = gaussian_binomial(C.m, d, C.q)
    if len(groups) != expect:
        raise ValueError(
            f"kernel family has {len(groups)} spaces, expected {expect}: "
            "code is not MRD with the assumed parameters")
    pairs = []
    total = 0
    for key in sorted(groups):
        U, words = groups[key]
        CU = AdditiveCode.from_basis(words)
        if CU.dim != C.n * C.e or CU.size - 1 != len(words):
            raise ValueError("C_U is not additive of dimension n "
                             "(premise violation: code is not MRD)")
        total += len(words)
        pairs.append((U, CU))
    ranks = C._ranks()
    if total != int((ranks == d).sum()):
        raise ValueError("kernel family does not cover all rank-d words")
    return KernelSpaceFamily(C, tuple(pairs))


def _coefficients(C: AdditiveCode, X: MatrixGF) -> tuple[int, ...]:
    """F_p coordinates of codeword X with respect to C's RREF basis."""
    pivots = [next(i for i, x in enumerate(C._flatten(B)) if x) for B in C.basis]
    flat = C._flatten(X)
    return tuple(flat[i] for i in pivots)


def partial_spread_of(C: AdditiveCode) -> PartialSpread:
    """The family D_C = {C_U} inside the k-dim coefficient space of C."""
    fam = kernel_space_family(C)
    F = get_field(C.p, 1)
    members = []
    for _, CU in fam.pairs:
        vecs = [_coefficients(C, B) for B in CU.basis]
        members.append(Subspace.from_vectors(F, C.dim, vecs))
    return PartialSpread(C.p, C.dim, C.n * C.e, tuple(members))


def is_maximal_partial_spread(D: PartialSpread):
    """(True, None) if no t-dim subspace misses every member, else
    (False, witness_subspace)."""
    p, N, t = D.p, D.ambient, D.t
    good = np.ones(p ** N, dtype=bool)
    good[0] = False
    for key in D.covered_keys():
        good[key] = False
    if not good.any():
        return True, None
    sols = subspace_search(p, N, good, t, first_only=True)
    if not sols:
        return True, None
    F = get_field(p, 1)
    vecs = [tuple((v // p ** i) % p for i in range(N)) for v in sols[0]]
    return False, Subspace.from_vectors(F, N, vecs)


def extract_semifield_subcodes(C: AdditiveCode) -> list[Presemifield]:
    """All spread-set subcodes of a d = n-1 square MRD code, as presemifields."""
    if C.m != C.n:
        raise ValueError("semifield extraction needs square codes")
    ok, d = C.is_mrd()
    if not ok or d != C.n - 1:
        raise ValueError("expected an MRD code with d = n-1")
    out = []
    for i, S in enumerate(min_distance_subcodes(C, C.n)):
        out.append(Presemifield(f"subcode-{i}", C.q, C.n, S,
                                provenance="extracted spread-set subcode"))
    return out


def decompose_as_two_presemifields(C: AdditiveCode) -> tuple[Presemifield, Presemifield]:
    """The two presemifields whose spread sets span a binary d = n-1 MRD code."""
    if C.q % 2:
        raise ValueError("decomposition requires q = 2")
    subs = extract_semifield_subcodes(C)
    if len(subs) == 2:
        S1, S2 = subs[0].code, subs[1].code
        span = AdditiveCode.from_basis(list(S1.basis) + list(S2.basis))
        if span.dim == 2 * C.n * C.e and span == C:
            return subs[0], subs[1]
    raise AssertionError(
        "structure theorem violated: expected exactly two spanning "
        "spread-set subcodes, found %d; offending code:\n%s"
        % (len(subs), C.to_text()))
