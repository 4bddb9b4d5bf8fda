import random

from mrdcodes.gf import FieldCtx, get_field


def test_field_axioms_spotcheck():
    for (p, m) in ((2, 4), (3, 2), (2, 1)):
        F = get_field(p, m)
        rng = random.Random(7)
        for _ in range(50):
            a = rng.randrange(F.order)
            b = rng.randrange(F.order)
            c = rng.randrange(F.order)
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            if a:
                assert F.mul(a, F.inv(a)) == 1


def test_generator_order():
    F = get_field(2, 4)
    g = F.generator
    seen = set()
    x = 1
    for _ in range(F.order - 1):
        seen.add(x)
        x = F.mul(x, g)
    assert len(seen) == F.order - 1


def test_norm_multiplicative():
    ctx = FieldCtx(3, 1, 4)
    F = ctx.Fqn
    rng = random.Random(11)
    for _ in range(40):
        a = rng.randrange(1, F.order)
        b = rng.randrange(1, F.order)
        assert ctx.field_norm(F.mul(a, b)) == \
            ctx.Fq.mul(ctx.field_norm(a), ctx.field_norm(b))


def test_frobenius_additive():
    ctx = FieldCtx(2, 1, 5)
    F = ctx.Fqn
    rng = random.Random(13)
    for _ in range(40):
        a = rng.randrange(F.order)
        b = rng.randrange(F.order)
        assert ctx.frobenius(F.add(a, b), 1) == \
            F.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1))
        assert ctx.frobenius(a, ctx.n * ctx.e) == a


def test_coords_roundtrip():
    ctx = FieldCtx(2, 2, 2)
    for a in range(ctx.Fqn.order):
        assert ctx.from_coords(ctx.coords(a)) == a
