"""Sparse polynomial ring, substitution, reduction, and rewrite tests."""

import random

import pytest

from padictheta.errors import NonTerminating, PrimeMismatch
from padictheta.padic import from_int, one
from padictheta.poly import Generator, GeneratorRegistry, SparsePoly, rewrite_closure

PREC = 10


def setup_bs(prime=2, cap=None):
    reg = GeneratorRegistry()
    b0 = reg.add("b", 0)
    b1 = reg.add("b", 1)
    gen0 = SparsePoly.generator(reg, b0, one(prime, PREC), cap)
    gen1 = SparsePoly.generator(reg, b1, one(prime, PREC), cap)
    return reg, b0, b1, gen0, gen1


def test_product_difference_of_squares():
    _, _, _, b0, b1 = setup_bs(3)
    lhs = (b0 + b1) * (b0 - b1)
    rhs = b0 * b0 - b1 * b1
    assert lhs.equals(rhs)


def test_multiplicative_identity():
    reg, _, _, b0, b1 = setup_bs(5)
    a = b0 * b0 + b1.int_scale(7)
    unit = SparsePoly.constant(reg, one(5, PREC))
    assert (a * unit).equals(a)


def test_degree_cap_truncates():
    _, _, _, b0, _ = setup_bs(cap=2)
    assert (b0 * b0 * b0).is_zero()
    assert not (b0 * b0).is_zero()


def test_registry_mismatch_rejected():
    _, _, _, a, _ = setup_bs()
    _, _, _, b, _ = setup_bs()
    with pytest.raises(PrimeMismatch):
        a + b


def test_substitute_examples():
    reg, g0, g1, b0, b1 = setup_bs(3)
    unit = SparsePoly.constant(reg, one(3, PREC))
    image = (b0 * b0).substitute({g0: b0 + unit})
    expected = b0 * b0 + b0.int_scale(2) + unit
    assert image.equals(expected)
    a = b0 * b1 + b1.int_scale(4)
    assert a.substitute({}, fixed=None).equals(a)
    assert (b0 * b1).substitute({g0: SparsePoly.zero(reg, 3)}).is_zero()


def test_substitute_unassigned_generator_raises():
    reg, g0, _, b0, b1 = setup_bs()
    with pytest.raises(KeyError):
        (b0 * b1).substitute({g0: b0}, fixed=frozenset())


def test_substitute_is_ring_hom():
    rng = random.Random(11)
    reg, g0, g1, b0, b1 = setup_bs(3)
    unit = SparsePoly.constant(reg, one(3, PREC))
    assignment = {g0: b1 + unit.int_scale(2), g1: b0 * b1}

    def rand_poly():
        out = SparsePoly.zero(reg, 3)
        for _ in range(rng.randrange(1, 4)):
            term = SparsePoly.constant(reg, from_int(3, rng.randrange(-20, 20), PREC))
            for _ in range(rng.randrange(0, 3)):
                term = term * (b0 if rng.random() < 0.5 else b1)
            out = out + term
        return out

    for _ in range(40):
        a, b = rand_poly(), rand_poly()
        assert (a * b).substitute(assignment).equals(
            a.substitute(assignment) * b.substitute(assignment))
        assert (a + b).substitute(assignment).equals(
            a.substitute(assignment) + b.substitute(assignment))


def test_reduce_mod_examples():
    reg, g0, g1, b0, b1 = setup_bs(2)
    a = b1 * b1 + b1.int_scale(2) + b0 * b1
    reduced = a.reduce_mod(1, frozenset([g0]))
    assert reduced.equals(b1 * b1)
    full = a.reduce_mod(PREC, frozenset())
    assert full.equals(a)


def test_reduce_mod_is_idempotent_ring_map():
    rng = random.Random(12)
    reg, g0, g1, b0, b1 = setup_bs(3)
    kill = frozenset([g0])
    for _ in range(30):
        terms = {}
        a = SparsePoly.zero(reg, 3)
        b = SparsePoly.zero(reg, 3)
        for _ in range(3):
            a = a + (b0 if rng.random() < 0.5 else b1).int_scale(rng.randrange(-9, 9))
            b = b + (b0 * b1 if rng.random() < 0.5 else b1).int_scale(rng.randrange(-9, 9))
        once = a.reduce_mod(1, kill)
        assert once.equals(once.reduce_mod(1, kill))
        prod = (a * b).reduce_mod(1, kill)
        assert prod.equals((a.reduce_mod(1, kill) * b.reduce_mod(1, kill)).reduce_mod(1, kill))


def alpha_setup(prime):
    reg = GeneratorRegistry()
    a0 = reg.add("alpha", 0)
    poly = SparsePoly.generator(reg, a0, one(prime, PREC))
    return reg, a0, poly


@pytest.mark.parametrize("prime", [2, 3, 5])
def test_rewrite_power_rule(prime):
    reg, a0, alpha = alpha_setup(prime)
    rules = {a0: alpha}
    # exhaustive application normalizes exponents into 1..p-1; at p = 2
    # everything collapses onto the generator itself
    expected = alpha if prime == 2 else alpha ** 2
    assert rewrite_closure(alpha ** (prime + 1), rules).equals(expected)
    assert rewrite_closure(alpha ** (2 * prime), rules).equals(expected)
    if prime > 2:
        untouched = alpha ** (prime - 1)
        assert rewrite_closure(untouched, rules).equals(untouched)
    assert rewrite_closure(alpha, rules).equals(alpha)


def test_rewrite_requires_decreasing_measure():
    reg, a0, alpha = alpha_setup(3)
    with pytest.raises(NonTerminating):
        rewrite_closure(alpha ** 4, {a0: alpha ** 3})


def test_rewrite_confluence_under_term_order():
    # the same polynomial assembled in shuffled term orders (hence different
    # dict iteration, hence different rewrite application order) must reach
    # one normal form
    rng = random.Random(13)
    reg = GeneratorRegistry()
    a0, a1 = reg.add("alpha", 0), reg.add("alpha", 1)
    p0 = SparsePoly.generator(reg, a0, one(3, PREC))
    p1 = SparsePoly.generator(reg, a1, one(3, PREC))
    rules = {a0: p0, a1: p1}
    scaled = [(i + 1, m) for i, m in enumerate(
        [p0 ** 4, p1 ** 7, p0 ** 3 * p1 ** 3, p0 * p1 ** 5, p0 ** 9])]
    reference = None
    for _ in range(20):
        rng.shuffle(scaled)
        total = SparsePoly.zero(reg, 3)
        for k, m in scaled:
            total = total + m.int_scale(k)
        nf = rewrite_closure(total, rules).render()
        if reference is None:
            reference = nf
        assert nf == reference


def test_normalization_idempotent():
    reg, _, _, b0, b1 = setup_bs(3)
    a = b0 * b1 + b1.int_scale(3)
    renorm = SparsePoly(reg, 3, dict(a.terms), a.degree_cap)
    assert renorm.render() == a.render()


def test_render_is_byte_stable_under_construction_order():
    reg, g0, g1, b0, b1 = setup_bs(5)
    one_way = b0 + b1.int_scale(3) + b0 * b1
    other = b0 * b1 + b1.int_scale(3) + b0
    assert one_way.render() == other.render()
    assert one_way.render().endswith("\n")
