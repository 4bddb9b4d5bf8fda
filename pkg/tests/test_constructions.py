import math

import pytest

from mrdcodes.gf import FieldCtx
from mrdcodes.constructions import (Presemifield, delsarte_gabidulin,
                                    field_spread_set, h_k_code, identity_map,
                                    presemifield_from_multiplication,
                                    semifield_dual, semifield_transpose,
                                    trombetti_zhou, twisted_gabidulin,
                                    zero_map)
from mrdcodes.equivalence import are_equivalent


def test_field_spread_set_is_semifield():
    for q, n in ((2, 2), (2, 4), (3, 3)):
        S = field_spread_set(q, n)
        ok, d = S.code.is_mrd()
        assert ok and d == n
        assert S.code.dim == n


def test_dg_distance():
    for q, n, k in ((2, 4, 2), (2, 5, 3), (3, 4, 2)):
        C = delsarte_gabidulin(q, n, k)
        ok, d = C.is_mrd()
        assert ok and d == n - k + 1
        assert C.dim == n * k


def test_dg_stride_needs_coprime():
    C1 = delsarte_gabidulin(2, 5, 2, s=2)
    ok, d = C1.is_mrd()
    assert ok and d == 4
    with pytest.raises(ValueError):
        delsarte_gabidulin(2, 4, 2, s=2)


def test_tg_eta_zero_is_dg():
    assert twisted_gabidulin(2, 4, 2, eta=0) == delsarte_gabidulin(2, 4, 2)


def test_tg_norm_condition():
    # q=2: N(1) = 1 = (-1)^{nk}, so eta=1 violates the condition for n=4, k=2
    with pytest.raises(ValueError):
        twisted_gabidulin(2, 4, 2, eta=1, h=0)
    ctx = FieldCtx(3, 1, 4)
    eta = next(a for a in range(1, ctx.Fqn.order) if ctx.field_norm(a) != 1)
    C = twisted_gabidulin(3, 4, 2, eta=eta, h=0)
    ok, d = C.is_mrd()
    assert ok and d == 3


def test_tz_requirements():
    with pytest.raises(ValueError):
        trombetti_zhou(2, 4, 2)
    with pytest.raises(ValueError):
        trombetti_zhou(3, 3, 2)
    C = trombetti_zhou(3, 4, 2)
    ok, d = C.is_mrd()
    assert ok and d == 3


def test_tz_bad_eta_rejected():
    ctx = FieldCtx(3, 1, 4)
    square_norm = next(a for a in range(1, ctx.Fqn.order)
                       if ctx.field_norm(a) == 1)
    with pytest.raises(ValueError):
        trombetti_zhou(3, 4, 2, eta=square_norm)


def test_h_k_dimension():
    ctx = FieldCtx(2, 1, 4)
    C = h_k_code(ctx, 2, identity_map(ctx), zero_map(ctx), 1)
    assert C.dim == 8


def test_presemifield_validation():
    S = field_spread_set(2, 3)
    assert isinstance(S, Presemifield)
    bad = [M for M in S.code.basis]
    with pytest.raises(ValueError):
        Presemifield("broken", 2, 3,
                     S.code.delsarte_dual(), provenance="test")


def test_presemifield_from_multiplication():
    ctx = FieldCtx(2, 1, 3)
    F = ctx.Fqn

    def mult(x, y):
        return ctx.coords(F.mul(ctx.from_coords(x), ctx.from_coords(y)))

    S = presemifield_from_multiplication(2, 3, mult, name="f8")
    assert are_equivalent(S.code, field_spread_set(2, 3).code) is not None

    def bad_mult(x, y):
        # componentwise product: plenty of zero divisors
        return tuple(a * b for a, b in zip(x, y))

    with pytest.raises(ValueError):
        presemifield_from_multiplication(2, 3, bad_mult, name="bad")


def test_semifield_dual_transpose():
    S = field_spread_set(2, 4)
    D = semifield_dual(S)
    T = semifield_transpose(S)
    for P in (D, T):
        ok, d = P.code.is_mrd()
        assert ok and d == 4
    assert semifield_dual(D).code == S.code
    assert semifield_transpose(T).code == S.code
    # the field is commutative: dual coincides with the original
    assert are_equivalent(D.code, S.code) is not None
