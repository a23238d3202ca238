import random

import pytest

from cychom.linalg import QQ, GF, Matrix
from cychom.algebra import (diagonal_bimodule, dual_numbers, group_algebra_c2,
                            hh, matrix_algebra_2)
from cychom.lambda_cat import hom_set, identity_mor, rotation
from cychom.cyclic_bimod import (
    CyclicBimodule, build_M_sharp, check_cyclic_structure, hc_with_coefficients,
    is_cyclic, j_shriek, restrict_to_based, simplicial_M, tau_sharp,
    tautological_tau, tensor_permutation,
)
from cychom.cyclic_space import build_A_sharp, hc, hp

CORPUS = [dual_numbers, group_algebra_c2, matrix_algebra_2]


def test_tensor_permutation():
    P = tensor_permutation(QQ, (2, 3), (1, 0))
    # e_i ⊗ e_j  ->  e_j ⊗ e_i
    for i in range(2):
        for j in range(3):
            assert P.apply({i * 3 + j: QQ(1)}) == {j * 2 + i: QQ(1)}


@pytest.mark.parametrize("make", CORPUS)
@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_tautological_axioms(make, field):
    assert is_cyclic(tautological_tau(make(field)))


def test_flip_tau_fails_for_noncommutative():
    # the flip a ⊗ m -> m ⊗ a intertwines the actions only when A is
    # commutative; for 2x2 matrices the checker must name a failing axiom
    A = matrix_algebra_2(QQ)
    flip = tensor_permutation(QQ, (A.dim, A.dim), (1, 0))
    cb = CyclicBimodule(A, diagonal_bimodule(A), flip)
    bad = [label for label, ok in check_cyclic_structure(cb) if not ok]
    assert bad and any("factor 1" in label for label in bad)
    with pytest.raises(ValueError):
        build_M_sharp(cb)


def test_scaled_tau_triple_failure_detected():
    # scaling the exchange map by c multiplies the triple composite by c^3,
    # so over Q any c != 1 must be rejected with the triple identity named
    A = dual_numbers(QQ)
    cb = CyclicBimodule(A, diagonal_bimodule(A),
                        Matrix.identity(QQ, 4).scale(QQ(2)))
    bad = [label for label, ok in check_cyclic_structure(cb) if not ok]
    assert bad == ["triple identity"]


def test_scaled_tau_cube_root_of_unity():
    # over F_7 the scalar 2 has 2^3 = 1, so all the axioms pass and the
    # rotation on three slots has order three; but t_n^n picks up the
    # factor 2^n, so the cyclic relations still fail in other degrees
    F7 = GF(7)
    A = dual_numbers(F7)
    cb = CyclicBimodule(A, diagonal_bimodule(A),
                        Matrix.identity(F7, 4).scale(F7(2)))
    assert is_cyclic(cb)
    E = build_M_sharp(cb)
    t3 = E.t_matrix(3)
    assert t3 * t3 * t3 == Matrix.identity(F7, E.dim(3))
    t2 = E.t_matrix(2)
    assert t2 * t2 != Matrix.identity(F7, E.dim(2))


@pytest.mark.parametrize("make", CORPUS)
@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_tautological_M_sharp_equals_A_sharp(make, field):
    # the cyclic extension of the diagonal bimodule with the identity
    # exchange map must reproduce the tensor cyclic space of A on the nose
    A = make(field)
    E = build_M_sharp(tautological_tau(A), n_max=4)
    G = build_A_sharp(A, n_max=4)
    for a in range(1, 5):
        for b in range(1, 5):
            for f in hom_set(a, b):
                assert E.matrix(f) == G.matrix(f)


def test_M_sharp_functorial():
    E = build_M_sharp(tautological_tau(group_algebra_c2(QQ)), n_max=4)
    rng = random.Random(5)
    pairs = []
    for _ in range(30):
        a, b, c = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        g = rng.choice(hom_set(a, b))
        f = rng.choice(hom_set(b, c))
        pairs.append((f, g))
    E.audit_functoriality(pairs)


def test_j_shriek_functorial():
    A = dual_numbers(QQ)
    J = j_shriek(simplicial_M(A, diagonal_bimodule(A), n_max=6))
    rng = random.Random(6)
    pairs = []
    for _ in range(25):
        a, b, c = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        g = rng.choice(hom_set(a, b))
        f = rng.choice(hom_set(b, c))
        pairs.append((f, g))
    J.audit_functoriality(pairs)


@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_induced_cyclic_homology_is_hochschild(field):
    # for an induced cyclic object the cyclic homology collapses to the
    # homology of the underlying simplicial object and S acts by zero
    for make in (dual_numbers, group_algebra_c2):
        A = make(field)
        J = j_shriek(simplicial_M(A, diagonal_bimodule(A), n_max=14))
        assert hc(J, 3) == hh(A, diagonal_bimodule(A), 3)
        assert hp(J, 1, window=2) == [(0, True), (0, True)]


def test_counit_blocks():
    A = dual_numbers(QQ)
    E = build_A_sharp(A, n_max=6)
    eps = tau_sharp(E, 3)
    d = E.dim(3)
    assert eps.nrows == d and eps.ncols == 3 * d
    # block v = 0 is the identity
    for i in range(d):
        assert eps.apply({i: QQ(1)}) == {i: QQ(1)}


def test_counit_natural():
    A = group_algebra_c2(QQ)
    E = build_A_sharp(A, n_max=6)
    JE = j_shriek(restrict_to_based(E))
    rng = random.Random(7)
    for _ in range(20):
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        f = rng.choice(hom_set(a, b))
        lhs = E.matrix(f) * tau_sharp(E, a)
        rhs = tau_sharp(E, b) * JE.matrix(f)
        assert lhs == rhs


@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_hc_with_tautological_coefficients(field):
    for make in CORPUS:
        A = make(field)
        cb = tautological_tau(A)
        assert hc_with_coefficients(cb, 3) == hc(build_A_sharp(A), 3)
