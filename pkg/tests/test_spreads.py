import pytest

from mrdcodes.codes import AdditiveCode
from mrdcodes.constructions import delsarte_gabidulin, field_spread_set
from mrdcodes.equivalence import are_equivalent
from mrdcodes.matrix import gaussian_binomial
from mrdcodes.spreads import (decompose_as_two_presemifields,
                              extract_semifield_subcodes,
                              is_maximal_partial_spread, kernel_space_family,
                              partial_spread_of)


def the_mrd_code():
    return delsarte_gabidulin(2, 4, 2)  # MRD d = 3 in M_4(F_2)


def test_kernel_space_family_structure():
    C = the_mrd_code()
    fam = kernel_space_family(C)
    assert len(fam) == gaussian_binomial(4, 3, 2) == 15
    total = 0
    for U, CU in fam.pairs:
        assert U.dim == 1
        assert CU.dim == 4
        assert C.contains_code(CU)
        for X in CU.codewords():
            if not X.is_zero():
                assert X.rank() == 3
                assert X.left_kernel().contains_space(U)
        total += CU.size - 1
    assert total == 225


def test_kernel_space_family_rejects_non_mrd():
    C = field_spread_set(2, 4).code  # d = n, kernels trivial
    sub = AdditiveCode.from_basis(list(the_mrd_code().basis)[:5])
    with pytest.raises(ValueError):
        kernel_space_family(sub)


def test_partial_spread_properties():
    C = the_mrd_code()
    D = partial_spread_of(C)
    assert len(D) == 15
    assert D.t == 4 and D.ambient == 8
    covered = D.covered_keys()
    assert len(covered) == 15 * 15  # pairwise trivial intersections
    assert len(covered) == 225


def test_bruen_non_maximality():
    # q=2, partial 4-spread of V(8,2) with 15 < 2^4 - sqrt(2) members can
    # never be maximal, so a witness complement must exist
    C = the_mrd_code()
    D = partial_spread_of(C)
    maximal, witness = is_maximal_partial_spread(D)
    assert not maximal
    assert witness.dim == 4
    for key in D.covered_keys():
        vec = tuple((key >> i) & 1 for i in range(8))
        assert not witness.contains(vec)


def test_extract_semifield_subcodes():
    C = the_mrd_code()
    subs = extract_semifield_subcodes(C)
    assert len(subs) == 2
    F = field_spread_set(2, 4).code
    for S in subs:
        ok, d = S.code.is_mrd()
        assert ok and d == 4
        assert are_equivalent(S.code, F) is not None


def test_extract_requires_dminus1_mrd():
    with pytest.raises(ValueError):
        extract_semifield_subcodes(field_spread_set(2, 4).code)
    with pytest.raises(ValueError):
        extract_semifield_subcodes(delsarte_gabidulin(2, 5, 3))  # d = 3


def test_decompose_as_two_presemifields():
    C = the_mrd_code()
    S1, S2 = decompose_as_two_presemifields(C)
    span = AdditiveCode.from_basis(list(S1.code.basis) + list(S2.code.basis))
    assert span == C
    inter = [X for X in S1.code.codewords()
             if not X.is_zero() and S2.code.contains(X)]
    assert not inter


def test_decompose_requires_q2():
    from mrdcodes.constructions import trombetti_zhou
    with pytest.raises(ValueError):
        decompose_as_two_presemifields(trombetti_zhou(3, 4, 2))
