"""Smith normal form over Z/p^N and the cyclic-action cohomology presets."""

import random

import pytest

from padictheta.cohomology import (CyclicAction, cohomology, diagonal_exponents, h0_h1,
                                   ko_preset, mat_mul, smith_normal_form)
from padictheta.errors import OutsideDomain


def test_smith_scalar_examples():
    d, u, v = smith_normal_form([[2]], 2, 8)
    assert d == [[2]]
    d, _, _ = smith_normal_form([[1, 0], [0, 1]], 3, 6)
    assert d == [[1, 0], [0, 1]]
    d, _, _ = smith_normal_form([[0]], 5, 4)
    assert d == [[0]]


def det_mod_p(matrix, p):
    """Determinant mod p by elimination over the field."""
    m = [[x % p for x in row] for row in matrix]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            m[r] = [(m[r][j] - f * m[col][j]) % p for j in range(n)]
    return det % p


def test_smith_identity_on_random_matrices():
    rng = random.Random(20)
    mod = 2 ** 10
    for _ in range(100):
        a = [[rng.randrange(mod) for _ in range(4)] for _ in range(4)]
        d, u, v = smith_normal_form(a, 2, 10)
        assert mat_mul(mat_mul(u, a, mod), v, mod) == d
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert d[i][j] == 0
        assert det_mod_p(u, 2) != 0 and det_mod_p(v, 2) != 0
        exps = diagonal_exponents(d, 2, 10)
        assert exps == sorted(exps)  # divisibility chain


def test_h0_h1_trivial_action_gives_full_cyclic():
    for p in (2, 3):
        h0, h1 = h0_h1(CyclicAction(p, 6, 1))
        assert h0 == [6] and h1 == [6]


def test_h0_h1_ko4_preset_order_eight():
    h0, h1 = h0_h1(ko_preset(2, 4, 10))
    assert h1 == [3]  # Z/8


def test_h0_h1_unit_action_vanishes():
    act = CyclicAction(3, 6, 2, [[2, 1], [0, 5]])
    assert h0_h1(act) == ([], [])


def test_higher_cohomology_vanishes():
    act = CyclicAction(2, 8, 2, [[1, 2], [0, 3]])
    assert cohomology(act, 2) == []
    assert cohomology(act, 5) == []


def test_action_must_be_invertible():
    with pytest.raises(OutsideDomain):
        CyclicAction(2, 6, 1, [[2]])


def test_isomorphism_invariance_under_conjugation():
    rng = random.Random(21)
    p, n_exp, size = 2, 8, 3
    mod = p ** n_exp
    act = CyclicAction(p, n_exp, size, [[9, 4, 0], [0, 1, 8], [0, 0, 17]])
    base = h0_h1(act)

    def random_invertible():
        while True:
            m = [[rng.randrange(mod) for _ in range(size)] for _ in range(size)]
            if det_mod_p(m, p) != 0:
                return m

    for _ in range(10):
        g = random_invertible()
        d, u, v = smith_normal_form(g, p, n_exp)
        d_inv = [[pow(d[i][i], -1, mod) if i == j else 0 for j in range(size)]
                 for i in range(size)]
        g_inv = mat_mul(mat_mul(v, d_inv, mod), u, mod)
        conj = mat_mul(mat_mul(g, act.operator, mod), g_inv, mod)
        assert h0_h1(CyclicAction(p, n_exp, size, conj)) == base


def test_ko_presets():
    assert ko_preset(3, 0, 8).operator == [[1]]
    assert ko_preset(3, 4, 8).operator == [[4]]        # g^(t/2) with g = 2
    eta = ko_preset(2, 1, 8)
    assert eta.modulus_exp == 1 and eta.operator == [[1]]
    assert h0_h1(eta) == ([1], [1])
    assert ko_preset(2, 8, 6).operator == [[3 ** 4 % 2 ** 6]]
    with pytest.raises(OutsideDomain):
        ko_preset(2, 3, 8)
    with pytest.raises(OutsideDomain):
        ko_preset(3, 2, 8)
    with pytest.raises(OutsideDomain):
        ko_preset(5, 0, 8)


def test_zeta_degree_story():
    # the trivial action in degree zero produces the full cyclic H^1, the
    # class whose connecting map identifies pi_0 with pi_(-1) of the sphere
    for p, n_exp in ((2, 9), (3, 7)):
        h0, h1 = h0_h1(ko_preset(p, 0, n_exp))
        assert h0 == [n_exp] and h1 == [n_exp]
