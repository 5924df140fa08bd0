"""Free theta-algebra: psi, theta, levels, Adams maps, comultiplication."""

import random

import pytest

from padictheta.errors import LevelCapExceeded
from padictheta.padic import from_int, vp_factorial
from padictheta.poly import SparsePoly
from padictheta.qseries import express_in_base, f_series, theta_on_series
from padictheta.theta import (AdamsMap, CoproductMap, ThetaElement, ThetaPresentation,
                              adams_action, comultiply, counit, ell_relation_check,
                              f_congruence_check, invariance_comparison_digits, psi_p,
                              theta_level, theta_op, unit_power_series,
                              working_precision, x_congruence_check)


def pres_b(p, cap=4, prec=None, degree_cap=None):
    return ThetaPresentation(p, ("b",), cap, prec or working_precision(10, cap, degree_cap, p),
                             degree_cap)


def test_psi_on_generator_p2():
    pres = pres_b(2)
    b = pres.gen("b")
    expected = b ** 2 + pres.gen("b", 1).int_scale(2)
    assert psi_p(b).equals(expected)


def test_psi_fixes_one():
    for p in (2, 3, 5):
        pres = pres_b(p)
        assert psi_p(pres.one()).equals(pres.one())


def test_psi_iterate_matches_ghost():
    for p in (2, 3):
        pres = pres_b(p)
        b = pres.gen("b")
        assert psi_p(psi_p(b)).equals(ThetaElement(pres, pres.ghost("b", 2)))
        assert psi_p(psi_p(psi_p(b))).equals(ThetaElement(pres, pres.ghost("b", 3)))


def test_theta_of_generator_is_level_one():
    for p in (2, 3, 5):
        pres = pres_b(p)
        assert theta_op(pres.gen("b")).equals(pres.gen("b", 1))
        assert theta_op(pres.one()).is_zero()


def test_theta_addition_defect_p2():
    pres = ThetaPresentation(2, ("x", "y"), 3, 16)
    x, y = pres.gen("x"), pres.gen("y")
    lhs = theta_op(x + y) - theta_op(x) - theta_op(y)
    assert lhs.equals(-(x * y))


def test_theta_multiplication_axiom():
    rng = random.Random(0)
    for p in (2, 3, 5):
        pres = ThetaPresentation(p, ("x", "y"), 3, 20, degree_cap=18)
        x, y = pres.gen("x"), pres.gen("y")
        for c in range(3):
            a = x.int_scale(rng.randrange(1, 9)) + pres.constant(rng.randrange(9))
            b = y.int_scale(rng.randrange(1, 9)) - pres.constant(rng.randrange(9))
            lhs = theta_op(a * b)
            rhs = (a ** p * theta_op(b) + b ** p * theta_op(a)
                   + (theta_op(a) * theta_op(b)).int_scale(p))
            assert lhs.equals(rhs, 10)


def test_frobenius_congruence_random():
    rng = random.Random(1)
    for p in (2, 3, 5):
        pres = pres_b(p, degree_cap=20)
        for _ in range(10):
            a = pres.gen("b", rng.randrange(3)).int_scale(rng.randrange(1, 30)) \
                + pres.constant(rng.randrange(30))
            assert (psi_p(a) - a ** p).poly.reduce_mod(1).is_zero()


def test_level_cap_exceeded():
    pres = pres_b(3, cap=2)
    top = pres.gen("b", 2)
    with pytest.raises(LevelCapExceeded):
        psi_p(top)


def test_theta_level_reproduces_generators():
    for p in (2, 3):
        pres = pres_b(p)
        b = pres.gen("b")
        for n in range(4):
            assert theta_level(b, n).equals(pres.gen("b", n))


def test_adams_fixes_f():
    for p in (2, 3, 5):
        pres = pres_b(p)
        b = pres.gen("b")
        f = psi_p(b) - b
        image = adams_action(f, {"b": b + pres.one()})
        assert image.equals(f)


def test_adams_identity_images():
    pres = pres_b(3)
    a = pres.gen("b", 1) * pres.gen("b") + pres.constant(5)
    assert adams_action(a, {"b": pres.gen("b")}).equals(a)


def test_adams_fixes_ell():
    for p in (2, 3, 5):
        prec = working_precision(8, 3, None, p)
        pres = ThetaPresentation(p, ("b", "bbar"), 3, prec)
        ell = pres.gen("b") - pres.gen("bbar")
        shift = AdamsMap(pres, {"b": pres.gen("b") + pres.one(),
                                "bbar": pres.gen("bbar") + pres.one()})
        assert shift(ell).equals(ell)


def test_adams_theta_commutation_random():
    rng = random.Random(2)
    for p in (2, 3):
        prec = working_precision(8, 4, None, p)
        pres = ThetaPresentation(p, ("b",), 4, prec)
        shift = AdamsMap(pres, {"b": pres.gen("b") + pres.one()})
        for _ in range(10):
            a = pres.gen("b", rng.randrange(2)).int_scale(rng.randrange(1, 9)) \
                * pres.gen("b") + pres.constant(rng.randrange(9))
            assert shift(theta_op(a)).equals(theta_op(shift(a)), 8)


def test_comultiply_primitive_generator():
    for p in (2, 3, 5):
        pres = pres_b(p)
        square = pres.tensor_power(2)
        assert comultiply(pres.gen("b")).equals(square.gen("b") + square.gen("b'"))


def test_comultiply_level_one_p2():
    pres = pres_b(2)
    square = pres.tensor_power(2)
    expected = (square.gen("b", 1) + square.gen("b'", 1)
                - square.gen("b") * square.gen("b'"))
    assert comultiply(pres.gen("b", 1)).equals(expected)


def test_ghost_elements_primitive():
    for p in (2, 3):
        pres = pres_b(p, degree_cap=30)
        square = pres.tensor_power(2)
        d_map = CoproductMap(pres, square, {"b": ("b", "b'")})
        for n in (1, 2, 3):
            ghost = ThetaElement(pres, pres.ghost("b", n))
            target = ThetaElement(square, square.ghost("b", n) + square.ghost("b'", n))
            assert d_map(ghost).equals(target, 8)


def test_counit():
    pres = pres_b(3)
    b = pres.gen("b")
    assert counit(b).is_zero()
    assert counit(pres.constant(7)).residue == 7
    square = pres.tensor_power(2)
    strip = CoproductMap(square, pres, {"b": None, "b'": "b"})
    a = b * b + pres.gen("b", 1).int_scale(3)
    assert strip(comultiply(a)).equals(a)


def test_unit_power_series_inverse_pair():
    p = 3
    prec = 30
    pres = ThetaPresentation(p, ("b",), 2, prec)
    h = from_int(p, 6, prec)
    terms = 12
    fwd = unit_power_series(pres, "b", h, terms)
    bwd = ThetaElement(pres, fwd.poly.substitute(
        {pres.registry.get("b", 0): (-pres.gen("b")).poly}))
    digits = invariance_comparison_digits(1, terms, p) - vp_factorial(terms, p)
    assert (fwd * bwd).equals(pres.one(), max(4, digits))


def test_unit_power_series_at_zero_exponent():
    p = 5
    pres = ThetaPresentation(p, ("b",), 2, 24)
    h = from_int(p, 10, 24)
    series = unit_power_series(pres, "b", h, 10)
    at_zero = series.poly.substitute({pres.registry.get("b", 0):
                                      SparsePoly.zero(pres.registry, p)})
    assert ThetaElement(pres, at_zero).equals(pres.one(), 10)


def test_unit_power_series_invariance():
    for p, g in ((2, 3), (3, 2), (5, 2)):
        h_int = g ** (2 if p == 2 else p - 1) - 1
        v_h = 0
        x = h_int
        while x % p == 0:
            x //= p
            v_h += 1
        terms = 10
        prec = 10 + vp_factorial(terms, p) + 4
        pres = ThetaPresentation(p, ("b",), 2, prec)
        h = from_int(p, h_int, prec)
        series = unit_power_series(pres, "b", h, terms)
        shifted = ThetaElement(pres, series.poly.substitute(
            {pres.registry.get("b", 0): (pres.gen("b") + pres.one()).poly}))
        rhs = shifted.scale(from_int(p, 1 + h_int, prec))
        digits = min(8, invariance_comparison_digits(v_h, terms, p))
        assert series.equals(rhs, digits)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_f_congruence(p, i):
    ok, witness = f_congruence_check(p, i, 8)
    assert ok, witness.render()


def test_f_congruence_detects_wrong_target():
    # negative control: the checker must be able to fail
    p = 3
    prec = working_precision(8, 4, 24, p)
    pres = ThetaPresentation(p, ("b",), 4, prec, 24)
    b = pres.gen("b")
    f1 = theta_level(psi_p(b) - b, 1)
    b1 = pres.gen("b", 1)
    wrong = b1 ** p + b1  # sign flipped relative to the true congruence
    kill = frozenset([pres.registry.get("b", 0)])
    witness = (f1 - wrong).poly.reduce_mod(1, kill)
    assert not witness.is_zero()


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("i", [0, 1])
def test_x_congruence(p, i):
    f = f_series(p, 64, 12)
    h = express_in_base(theta_on_series(f), f)
    ok, witness = x_congruence_check(p, i, h, 8)
    assert ok, witness.render()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ell_relation(p):
    ok, witness = ell_relation_check(p)
    assert ok, witness.render()


def test_exact_division_audit_fires_on_non_divisible():
    from padictheta.errors import NotDivisible
    pres = ThetaPresentation(2, ("b",), 2, 8)
    odd = pres.gen("b").int_scale(3)
    with pytest.raises(NotDivisible):
        odd.poly.exact_div_p(1)


def test_relation_presentation_theta_rewrite():
    # theta(f) declared equal to a level-0 polynomial h(f)
    p = 2
    pres = ThetaPresentation(p, (), 0, 12, relation_names=("f",))
    f = pres.gen("f")
    pres.set_relation("f", f * f + f.int_scale(3))
    assert theta_op(f).equals(f * f + f.int_scale(3))
    expected = f ** p + (f * f + f.int_scale(3)).int_scale(p)
    assert psi_p(f).equals(expected)
