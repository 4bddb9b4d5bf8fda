import json
import random

from hypothesis import given, settings, strategies as st

from mrdcodes import cli
from mrdcodes.classify import classify_dminus1, detensorize, tensorize
from mrdcodes.codes import AdditiveCode, expected_min_rank_count
from mrdcodes.constructions import (delsarte_gabidulin, field_spread_set,
                                    trombetti_zhou, twisted_gabidulin)
from mrdcodes.equivalence import classify_up_to_equivalence, fingerprint
from mrdcodes.gf import FieldCtx
from mrdcodes.spreads import decompose_as_two_presemifields
from conftest import random_code, random_matrix
from test_equivalence import random_transform


def test_rank_nullity_random():
    rng = random.Random(1)
    for _ in range(10000):
        q = rng.choice((2, 3))
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        M = random_matrix(rng, q, m, n)
        r = M.rank()
        assert r + M.kernel().dim == n
        assert r + M.left_kernel().dim == m
        assert r == M.transpose().rank()


def mrd_examples():
    ctx = FieldCtx(3, 1, 4)
    eta = next(a for a in range(1, ctx.Fqn.order) if ctx.field_norm(a) != 1)
    return [delsarte_gabidulin(2, 4, 2), delsarte_gabidulin(2, 5, 3),
            delsarte_gabidulin(3, 4, 2), delsarte_gabidulin(2, 5, 2, s=2),
            twisted_gabidulin(3, 4, 2, eta=eta, h=0), trombetti_zhou(3, 4, 2)]


def test_min_rank_word_counts():
    for C in mrd_examples():
        ok, d = C.is_mrd()
        assert ok
        dist = C.rank_distribution().as_dict()
        assert dist[d] == expected_min_rank_count(C.m, d, C.q, C.n)


def test_binary_dminus1_codes_decompose():
    # every representative splits as a direct sum of two presemifield codes
    for q, n in ((2, 4), (2, 5)):
        for C in classify_dminus1(q, n).representatives():
            S1, S2 = decompose_as_two_presemifields(C)
            span = AdditiveCode.from_basis(list(S1.code.basis) +
                                           list(S2.code.basis))
            assert span == C


def test_fingerprint_invariance_100_transforms():
    rng = random.Random(7)
    codes = [delsarte_gabidulin(2, 4, 2), trombetti_zhou(3, 4, 2)]
    for C in codes:
        fp = fingerprint(C)
        for _ in range(50):
            assert fingerprint(random_transform(rng, C)) == fp


def test_tensorize_roundtrip_all_semifields():
    from mrdcodes.catalog import bundled_catalog_path, load_catalog
    for order in (16, 32):
        for en in load_catalog(bundled_catalog_path(order)):
            assert detensorize(tensorize(en.code)) == en.code


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**30), st.sampled_from([2, 3]))
def test_dual_involution_random(seed, q):
    rng = random.Random(seed)
    C = random_code(rng, q, 3, 4, rng.randrange(1, 6))
    assert C.delsarte_dual().delsarte_dual() == C


def test_shuffled_classification_determinism():
    rng = random.Random(3)
    base = [delsarte_gabidulin(2, 4, 2), field_spread_set(2, 4).code]
    pool = base + [random_transform(rng, C) for C in base for _ in range(2)]
    keys = None
    for _ in range(3):
        rng.shuffle(pool)
        classes = classify_up_to_equivalence(pool)
        got = sorted(rep.canonical_key() for rep, _ in classes)
        assert keys is None or got == keys
        keys = got


def test_threads_do_not_change_output(capsys):
    outs = []
    for t in ("1", "2"):
        code = cli.run(["classify", "--q", "2", "--n", "4", "--format", "json",
                        "--threads", t])
        assert code == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    json.loads(outs[0])
