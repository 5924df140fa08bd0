"""Acceptance criteria, one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines as they complete.  Every comparison is exact arithmetic at the
stated modulus; there are no floating tolerances anywhere.
"""

import time

import pytest

from padictheta import lam, mahler
from padictheta.checks import (CheckParams, GoldenStore, check_cartan,
                               check_cohomology_presets, check_lambda_binomial,
                               check_mahler_roundtrip, check_section_comultiplicative,
                               check_theta_axioms, check_witt_comultiplication)
from padictheta.errors import NotDivisible, NotIntegral
from padictheta.mahler import MahlerFn1, pi_bn, pi_map, section_s, to_digit_poly
from padictheta.padic import from_int, one, vp_factorial
from padictheta.poly import SparsePoly
from padictheta.qseries import express_in_base, f_series, j_inverse, theta_on_series
from padictheta.theta import (ThetaPresentation, ell_relation_check, f_congruence_check,
                              working_precision, x_congruence_check)

_SUITE_T0 = time.perf_counter()


def report(number: int, description: str, ok: bool):
    marker = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} {marker}: {description}")
    assert ok, f"criterion {number} failed: {description}"


def test_criterion_01_f_congruence():
    t0 = time.perf_counter()
    ok = True
    for p in (2, 3, 5):
        for i in (0, 1, 2):
            passed, witness = f_congruence_check(p, i, 12, 24, 4)
            ok = ok and passed
    elapsed = time.perf_counter() - t0
    report(1, f"f-congruence exact for p in 2,3,5 and i in 0,1,2 ({elapsed:.1f}s < 10s)",
           ok and elapsed < 10.0)


def test_criterion_02_qexp_congruence():
    ok = True
    for p in (2, 3):
        f = f_series(p, 64, 12)
        ok = ok and f.coeffs[0].is_zero()
        ji = j_inverse(p, 64, 12)
        for k in range(64):
            ok = ok and f.coeffs[k].congruent(ji.coeffs[k], 1)
    report(2, "f has constant term 0 and f = 1/j mod p for all 64 q-coefficients",
           ok)


def test_criterion_03_h_integrality_and_x_congruence():
    ok = True
    for p in (2, 3):
        try:
            f = f_series(p, 64, 12)
            h = express_in_base(theta_on_series(f), f)
        except (NotDivisible, NotIntegral):
            ok = False
            continue
        for i in (0, 1):
            passed, _ = x_congruence_check(p, i, h, 12, 24, 4)
            ok = ok and passed
    report(3, "theta(f) = h(f) with integral h; the induced congruence holds for i = 0, 1",
           ok)


def test_criterion_04_failed_inverse_reproduction():
    ok = True
    for p in (2, 3):
        for n in range(1, 7):
            image_zero, input_nonzero = mahler.hopkins_mistake_check(n, p, 6)
            ok = ok and image_zero and input_nonzero
    report(4, "((1 - s pi) x pi) Delta kills s(beta_n) for 1 <= n <= 6 while s(beta_n) != 0",
           ok)


def test_criterion_05_pi_digit_theorem():
    ok = True
    for p in (2, 3):
        for n in range(4):
            fn = pi_bn(p, n, 6).reduce_modulus(1)
            poly = to_digit_poly(fn, n)
            reg = poly.registry
            expected = SparsePoly.generator(reg, reg.get("alpha", n), one(p, 1))
            ok = ok and poly.equals(expected)
    report(5, "pi(b_n) = alpha_n mod p in the digit basis for n <= 3, p in 2,3", ok)


def test_criterion_06_section_and_hopf_suite():
    golden = GoldenStore(None, False)
    ok = True
    for p in (2, 3):
        r = check_section_comultiplicative(CheckParams(prime=p), golden)
        ok = ok and r.status == "pass"
        r = check_witt_comultiplication(CheckParams(prime=p), golden)
        ok = ok and r.status == "pass"
    report(6, "pi s = id on a basis of 8; Delta(lambda^n(b)) Cartan shape to p^2; "
              "comultiplication coassociative and counital with primitive ghosts", ok)


def test_criterion_07_cooperations_relation_and_antidiagonal():
    ok = True
    for p in (2, 3, 5):
        passed, _ = ell_relation_check(p, 12)
        ok = ok and passed
    for p in (2, 3):
        for n in range(5):
            ok = ok and mahler.antidiagonal_check(n, p, 8, grid=8)
    report(7, "psi(l) - l = f - fbar exactly; (pi x pi)(lambda^n(b - bbar)) matches "
              "binomial(x - y, n) on the 8x8 grid for n <= 4", ok)


def test_criterion_08_randomized_property_suites():
    golden = GoldenStore(None, False)
    ok = True
    for p in (2, 3, 5):
        params = CheckParams(prime=p, trials=200)
        for fn in (check_theta_axioms, check_cartan, check_lambda_binomial):
            r = fn(params, golden)
            ok = ok and r.status == "pass"
    report(8, "200 randomized instances each: theta axioms, Frobenius congruence, "
              "Adams-theta commutation, Cartan identity, lambda = binomial", ok)


def test_criterion_09_cohomology_presets():
    golden = GoldenStore(None, False)
    ok = True
    for p in (2, 3):
        r = check_cohomology_presets(CheckParams(prime=p), golden)
        ok = ok and r.status == "pass"
    report(9, "trivial action gives Z/p^N twice; KO_4 preset has H^1 of order 8; "
              "unit-minus-one actions vanish; H^2 = 0; Smith identity on 100 matrices", ok)


def test_criterion_10_mahler_integrity():
    golden = GoldenStore(None, False)
    ok = True
    for p in (2, 3, 5):
        r = check_mahler_roundtrip(CheckParams(prime=p, trials=200), golden)
        ok = ok and r.status == "pass"
    report(10, "Mahler round-trip, pointwise products at 20 points, Pascal translate: "
               "200 randomized instances", ok)
    print(f"ACCEPTANCE total wall time {time.perf_counter() - _SUITE_T0:.0f}s")
