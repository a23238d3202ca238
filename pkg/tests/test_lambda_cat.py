import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cychom.linalg import QQ, GF
from cychom.lambda_cat import (
    CycMor, ConstantFunctor, category_homology, compose, decompose,
    fiber, hom_set, hom_size, identity_mor, lambda_leq, rotation,
)


def test_hom_from_point_counts():
    for n in range(1, 6):
        assert len(hom_set(1, n)) == n


def test_hom_counts_match_closed_formula():
    for a in range(1, 5):
        for b in range(1, 5):
            assert len(hom_set(a, b)) == hom_size(a, b)
            assert hom_size(a, b) == b * math.comb(a + b - 1, a - 1)


def test_hom_sets_have_no_duplicates():
    for a in range(1, 5):
        for b in range(1, 5):
            hs = hom_set(a, b)
            assert len(set(hs)) == len(hs)


def test_identity_and_rotation():
    assert identity_mor(3).is_identity
    t = rotation(3)
    assert t(0) == 1 and t(2) == 0
    # t has order n
    p = t
    for _ in range(2):
        p = compose(t, p)
    assert p.is_identity
    # on the point, rotation is the identity
    assert rotation(1).is_identity


def test_compose_matches_pointwise_maps():
    rng = random.Random(0)
    for _ in range(200):
        a, b, c = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
        g = rng.choice(hom_set(a, b))
        f = rng.choice(hom_set(b, c))
        h = compose(f, g)
        for x in range(a):
            assert h(x) == f(g(x))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4),
       st.integers(1, 4), st.integers(0, 10**9))
def test_compose_associative(a, b, c, d, seed):
    rng = random.Random(seed)
    h = rng.choice(hom_set(a, b))
    g = rng.choice(hom_set(b, c))
    f = rng.choice(hom_set(c, d))
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


def test_decompose_roundtrip():
    rng = random.Random(1)
    for _ in range(100):
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        f = rng.choice(hom_set(a, b))
        k, f0 = decompose(f)
        assert f0.is_based
        assert compose(rotation(b, k), f0) == f


def test_fibers_partition_source():
    rng = random.Random(2)
    for _ in range(100):
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        f = rng.choice(hom_set(a, b))
        seen = []
        for v in range(b):
            fib = fiber(f, v)
            assert all(f(x) == v for x in fib)
            seen.extend(fib)
        assert sorted(seen) == list(range(a))


def test_wraparound_fiber_order():
    # the face merging the last and first points: fiber over 0 is (last, 0)
    for q in range(1, 4):
        f = CycMor(q + 1, q, tuple(range(q + 1)))
        assert fiber(f, 0) == (q, 0)
        for v in range(1, q):
            assert fiber(f, v) == (v,)


def test_full_collapse_fiber_order():
    f = CycMor(4, 1, (0, 0, 1, 1))
    # cut determined by the lift: points with lift value 1 wrap around
    assert fiber(f, 0) == (2, 3, 0, 1)


def test_category_audit():
    lambda_leq(2).audit()


def test_lambda3_size():
    cat = lambda_leq(3)
    assert len(cat.mors) == sum(hom_size(a, b)
                                for a in (1, 2, 3) for b in (1, 2, 3))
    assert len(cat.mors) == 71


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_constant_homology_point(field):
    cat = lambda_leq(1)
    dims = category_homology(cat, ConstantFunctor(field), 4, field)
    assert dims == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_constant_homology_truncation_two(field):
    cat = lambda_leq(2)
    dims = category_homology(cat, ConstantFunctor(field), 4, field)
    assert dims == [1, 0, 1, 0, 0]


def test_bar_method_agrees_on_small_truncations():
    for n, deg in [(1, 3), (2, 3)]:
        cat = lambda_leq(n)
        E = ConstantFunctor(QQ)
        assert (category_homology(cat, E, deg, QQ)
                == category_homology(cat, E, deg, QQ, method="bar"))
