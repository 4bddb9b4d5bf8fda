import random

import pytest

from mrdcodes.codes import AdditiveCode
from mrdcodes.constructions import (delsarte_gabidulin, field_spread_set,
                                    trombetti_zhou)
from mrdcodes.equivalence import (EquivalenceWitness, are_equivalent,
                                  automorphism_group,
                                  classify_up_to_equivalence, fingerprint,
                                  left_idealiser, min_distance_subcodes,
                                  right_idealiser)
from conftest import random_invertible


def random_transform(rng, C, isotopy_only=False):
    A = random_invertible(rng, C.q, C.m)
    B = random_invertible(rng, C.q, C.n)
    w = EquivalenceWitness(A, B, rho=0,
                           transposed=(not isotopy_only and C.m == C.n
                                       and rng.random() < 0.5))
    return w.apply(C)


def test_are_equivalent_reflexive():
    C = delsarte_gabidulin(2, 4, 2)
    w = are_equivalent(C, C)
    assert w is not None
    assert w.apply(C) == C


def test_are_equivalent_random_transform(rng):
    C = field_spread_set(2, 4).code
    for _ in range(3):
        D = random_transform(rng, C)
        assert are_equivalent(C, D) is not None


def test_are_equivalent_negative():
    C = field_spread_set(2, 4).code
    D = delsarte_gabidulin(2, 4, 2)
    assert are_equivalent(C, D) is None  # different dimensions even
    E = AdditiveCode.from_basis(list(D.basis)[:4])
    assert are_equivalent(C, E) is None


def test_transpose_is_equivalent():
    C = delsarte_gabidulin(2, 4, 2)
    assert are_equivalent(C, C.transpose()) is not None


def test_fingerprint_invariance(rng):
    C = delsarte_gabidulin(2, 4, 2)
    fp = fingerprint(C)
    for _ in range(5):
        D = random_transform(rng, C)
        assert fingerprint(D) == fp


def test_field_idealisers():
    C = field_spread_set(2, 4).code
    lo, lbasis = left_idealiser(C)
    ro, _ = right_idealiser(C)
    assert lo == ro == 16
    assert len(lbasis) == 4


def test_tz_idealisers():
    C = trombetti_zhou(3, 4, 2)
    lo, _ = left_idealiser(C)
    ro, _ = right_idealiser(C)
    assert (lo, ro) == (9, 9)


def test_min_distance_subcodes_q2n4():
    C = delsarte_gabidulin(2, 4, 2)
    subs = min_distance_subcodes(C, 4)
    assert len(subs) == 2
    F = field_spread_set(2, 4).code
    for S in subs:
        assert S.minimum_distance() == 4
        assert C.contains_code(S)
        assert are_equivalent(S, F) is not None


def test_automorphism_group_witnesses():
    C = field_spread_set(2, 3).code
    order, wits = automorphism_group(C)
    assert order > 0
    assert wits
    for w in wits:
        img = C.map(lambda X: (w.A @ X) @ w.B.transpose())
        assert img == C  # A C B^T = C


def test_automorphism_group_invariant_under_equivalence(rng):
    C = delsarte_gabidulin(2, 4, 2)
    D = random_transform(rng, C)
    assert automorphism_group(C)[0] == automorphism_group(D)[0]


def test_classify_up_to_equivalence(rng):
    C = field_spread_set(2, 4).code
    D = delsarte_gabidulin(2, 4, 2)
    codes = [C, random_transform(rng, C), D, random_transform(rng, D)]
    classes = classify_up_to_equivalence(codes)
    assert len(classes) == 2
    assert sorted(len(m) for _, m in classes) == [2, 2]


def test_isotopy_only_flag(rng):
    C = delsarte_gabidulin(2, 4, 2)
    D = random_transform(rng, C, isotopy_only=True)
    assert are_equivalent(C, D, isotopy_only=True) is not None
