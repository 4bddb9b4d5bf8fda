import pytest

from mrdcodes.classify import (classify_rectangular, classify_semifields,
                               detensorize, extend_code,
                               invertible_subspace_leaves, quasi_mrd_census,
                               tensorize, trilinear_form)
from mrdcodes.codes import AdditiveCode
from mrdcodes.constructions import delsarte_gabidulin, field_spread_set
from mrdcodes.equivalence import are_equivalent


def test_classify_semifields_small():
    assert classify_semifields(2, 2).count == 1
    assert classify_semifields(2, 3).count == 1


def test_classify_semifields_q2n4():
    rep = classify_semifields(2, 4)
    assert rep.count == 3
    for C, _ in rep.classes:
        ok, d = C.is_mrd()
        assert ok and d == 4
    # exactly one class is the field
    F = field_spread_set(2, 4).code
    hits = [C for C, _ in rep.classes if are_equivalent(C, F) is not None]
    assert len(hits) == 1


def test_classify_semifields_isotopy_refines():
    equiv = classify_semifields(2, 4)
    iso = classify_semifields(2, 4, isotopy_only=True)
    assert iso.count >= equiv.count


def test_invertible_subspace_leaves_counts():
    # 1-dim invertible subspaces of M_2(F_2) up to conjugacy: x^2+x+1 only
    assert len(invertible_subspace_leaves(2, 2, 1)) == 1


def test_tensorize_roundtrip():
    C = field_spread_set(2, 4).code
    V = tensorize(C)
    assert V.dim == 4 and V.minimum_distance() == 4
    assert detensorize(V) == C
    T = trilinear_form(C)
    assert T.as_array().shape == (4, 4, 4)


def test_tensorize_rejects_wrong_distance():
    with pytest.raises(ValueError):
        tensorize(delsarte_gabidulin(2, 4, 2))


def test_classify_rectangular_2x3():
    for q in (2, 3):
        rep = classify_rectangular(q, 2, 3)
        assert rep.count == 1
        C = rep.classes[0][0]
        assert (C.m, C.n) == (2, 3)
        ok, d = C.is_mrd()
        assert ok and d == 2


@pytest.mark.slow
def test_classify_rectangular_3x4_q2():
    rep = classify_rectangular(2, 3, 4)
    assert rep.count == 7
    for C, _ in rep.classes:
        ok, d = C.is_mrd()
        assert ok and d == 3


def test_extend_code_to_own_dim():
    C = delsarte_gabidulin(2, 4, 2)
    out = extend_code(C, 3, C.dim)
    assert len(out) == 1 and out[0] == C


def test_extend_field_to_d3():
    F = field_spread_set(2, 4).code
    out = extend_code(F, 3, 8)
    assert len(out) == 1
    ok, d = out[0].is_mrd()
    assert ok and d == 3
    assert out[0].contains_code(F)


def test_extend_no_overshoot():
    F = field_spread_set(2, 4).code
    assert extend_code(F, 3, 9) == []


@pytest.mark.slow
def test_quasi_mrd_census_q2_n4():
    rows = quasi_mrd_census(2, 4, 3)
    assert sorted(rows) == [4, 5, 6, 7, 8]
    assert [rows[dim].classes for dim in (4, 5, 6, 7, 8)] == [3, 3, 4, 2, 1]
    for dim in (4, 5, 6, 7, 8):
        # containment counts never exceed the number of classes
        for seed, cnt in rows[dim].containing.items():
            assert 0 <= cnt <= rows[dim].classes
