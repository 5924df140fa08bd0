"""Free and relation-presented theta-algebras over Z_p.

A theta-algebra carries an operation theta with psi(x) = x^p + p*theta(x)
a ring endomorphism lifting Frobenius.  The free algebra on a generator b
is polynomial on level generators b0, b1, b2, ... characterized by the
ghost identities

    psi^(p^n)(b) = b0^(p^n) + p*b1^(p^(n-1)) + ... + p^n*bn.

Everything here is derived from those identities by exact division:

* psi on a level generator is the Frobenius polynomial solved from the
  ghost triangle,
* theta(a) = (psi(a) - a^p)/p,
* the level operators theta_n(a) invert the ghost triangle for a,
* the comultiplication sends each ghost element to a primitive and its
  level components are the classical Witt addition polynomials, again
  obtained by exact division.

Each division by p^n is audited; a NotDivisible escaping from this module
falsifies an integrality theorem and is treated as a test failure, not an
expected error path.
"""

from __future__ import annotations

from .errors import LevelCapExceeded, OutsideDomain, PrimeMismatch
from .padic import PadicInt, one, vp_factorial, vp_int, zero
from .poly import Generator, GeneratorRegistry, ONE_MONO, SparsePoly


def triangle_guard(levels: int) -> int:
    """Digits consumed by ghost divisions down to the given level."""
    return levels * (levels + 1) // 2


def working_precision(target: int, level_cap: int, degree_cap: int | None, p: int) -> int:
    """Guard-digit budget: target + level and binomial losses, whichever is worse."""
    binom_loss = vp_factorial(degree_cap, p) if degree_cap else 0
    return target + max(level_cap + binom_loss, triangle_guard(level_cap) + 2)


class ThetaPresentation:
    """A free theta-algebra on named generators, materialized up to a level cap.

    Free generators get level generators 0..level_cap.  A generator may
    instead carry a relation assigning theta(g) a polynomial value (the
    rewrite form theta(g) -> rhs); such generators live at level 0 only
    and their rhs may involve only level-0 generators, which makes the
    level a strictly decreasing rewrite measure.
    """

    def __init__(self, prime: int, names: tuple[str, ...], level_cap: int,
                 precision: int, degree_cap: int | None = None,
                 relation_names: tuple[str, ...] = ()):
        if len(set(names) | set(relation_names)) != len(names) + len(relation_names):
            raise ValueError("generator names must be distinct")
        self.prime = prime
        self.names = tuple(names)
        self.relation_names = tuple(relation_names)
        self.level_cap = level_cap
        self.precision = precision
        self.degree_cap = degree_cap
        self.registry = GeneratorRegistry()
        for name in names:
            for lev in range(level_cap + 1):
                self.registry.add(name, lev)
        for name in relation_names:
            self.registry.add(name, 0)
        self.relations: dict[str, SparsePoly] = {}
        self._psi_cache: dict[Generator, SparsePoly] = {}
        self._delta_cache: dict[tuple[str, str, int], SparsePoly] = {}
        self._tensor: dict[int, ThetaPresentation] = {}

    # -- element constructors -----------------------------------------------

    def gen(self, name: str, level: int = 0) -> "ThetaElement":
        g = self.registry.get(name, level)
        return ThetaElement(self, SparsePoly.generator(
            self.registry, g, one(self.prime, self.precision), self.degree_cap))

    def constant(self, value) -> "ThetaElement":
        c = value if isinstance(value, PadicInt) else PadicInt(self.prime, value, self.precision)
        return ThetaElement(self, SparsePoly.constant(self.registry, c, self.degree_cap))

    def zero(self) -> "ThetaElement":
        return ThetaElement(self, SparsePoly.zero(self.registry, self.prime, self.degree_cap))

    def one(self) -> "ThetaElement":
        return self.constant(1)

    def set_relation(self, name: str, rhs: "ThetaElement"):
        """Declare theta(name) = rhs; rhs must involve only level-0 generators."""
        if name not in self.relation_names:
            raise ValueError(f"{name} is not a relation generator")
        for m in rhs.poly.terms:
            for g, _ in m:
                if g.level != 0:
                    raise OutsideDomain("relation right-hand side must be level 0")
        self.relations[name] = rhs.poly

    # -- ghost machinery ------------------------------------------------------

    def ghost(self, name: str, n: int) -> SparsePoly:
        """The ghost polynomial sum p^i * g_i^(p^(n-i)) for i = 0..n."""
        p = self.prime
        acc = SparsePoly.zero(self.registry, p, self.degree_cap)
        for i in range(n + 1):
            gi = SparsePoly.generator(self.registry, self.registry.get(name, i),
                                      one(p, self.precision), self.degree_cap)
            acc = acc + (gi ** (p ** (n - i))).int_scale(p ** i)
        return acc

    def psi_image(self, g: Generator) -> SparsePoly:
        """psi applied to a single level generator (Frobenius polynomial)."""
        if g in self._psi_cache:
            return self._psi_cache[g]
        p = self.prime
        if g.name in self.relation_names:
            if g.name not in self.relations:
                raise OutsideDomain(f"relation for {g.name} not set")
            base = SparsePoly.generator(self.registry, g, one(p, self.precision), self.degree_cap)
            image = base ** p + self.relations[g.name].int_scale(p)
        else:
            if g.level + 1 > self.level_cap:
                raise LevelCapExceeded(
                    f"psi({g}) needs level {g.level + 1} > cap {self.level_cap}")
            n = g.level
            acc = self.ghost(g.name, n + 1)
            for i in range(n):
                acc = acc - (self.psi_image(self.registry.get(g.name, i)) ** (p ** (n - i))).int_scale(p ** i)
            image = acc.exact_div_p(n)
        self._psi_cache[g] = image
        return image

    def delta_image(self, left_name: str, right_name: str, n: int) -> SparsePoly:
        """Witt addition polynomial: the level-n component of g |-> left + right.

        Solved from primitivity of the ghost elements; lives in whatever
        presentation owns left_name and right_name (usually a tensor
        square, where the two names are the two copies of one generator).
        """
        key = (left_name, right_name, n)
        if key in self._delta_cache:
            return self._delta_cache[key]
        p = self.prime
        acc = self.ghost(left_name, n) + self.ghost(right_name, n)
        for i in range(n):
            acc = acc - (self.delta_image(left_name, right_name, i) ** (p ** (n - i))).int_scale(p ** i)
        image = acc.exact_div_p(n)
        self._delta_cache[key] = image
        return image

    def tensor_power(self, copies: int = 2, sep: str = "'") -> "ThetaPresentation":
        """The free algebra on `copies` disjoint copies of each generator."""
        if copies in self._tensor:
            return self._tensor[copies]
        names = tuple(n + sep * i for i in range(copies) for n in self.names)
        out = ThetaPresentation(self.prime, names, self.level_cap,
                                self.precision, self.degree_cap)
        self._tensor[copies] = out
        return out


class ThetaElement:
    """An element of a presented theta-algebra (a SparsePoly plus context)."""

    __slots__ = ("pres", "poly")

    def __init__(self, pres: ThetaPresentation, poly: SparsePoly):
        self.pres = pres
        self.poly = poly

    def _wrap(self, poly: SparsePoly) -> "ThetaElement":
        return ThetaElement(self.pres, poly)

    def _check(self, other: "ThetaElement"):
        if self.pres is not other.pres:
            raise PrimeMismatch("elements of different presentations")

    def __add__(self, other):
        self._check(other)
        return self._wrap(self.poly + other.poly)

    def __sub__(self, other):
        self._check(other)
        return self._wrap(self.poly - other.poly)

    def __mul__(self, other):
        self._check(other)
        return self._wrap(self.poly * other.poly)

    def __neg__(self):
        return self._wrap(-self.poly)

    def __pow__(self, n: int):
        return self._wrap(self.poly ** n)

    def int_scale(self, k: int):
        return self._wrap(self.poly.int_scale(k))

    def scale(self, c: PadicInt):
        return self._wrap(self.poly.scale(c))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def equals(self, other: "ThetaElement", digits: int | None = None) -> bool:
        self._check(other)
        return self.poly.equals(other.poly, digits)

    def reduce_precision(self, digits: int):
        return self._wrap(self.poly.reduce_precision(digits))

    def render(self) -> str:
        return self.poly.render()

    def __str__(self):
        return str(self.poly)


# -- the operations ------------------------------------------------------------


def psi_p(a: ThetaElement) -> ThetaElement:
    """The Frobenius lift psi, extended as a ring homomorphism."""
    pres = a.pres
    appearing = {g for m in a.poly.terms for g, _ in m}
    assignment = {g: pres.psi_image(g) for g in appearing}
    return ThetaElement(pres, a.poly.substitute(assignment, fixed=frozenset()))


def theta_op(a: ThetaElement) -> ThetaElement:
    """theta(a) = (psi(a) - a^p)/p, with the division audited."""
    return ThetaElement(a.pres, (psi_p(a).poly - a.poly ** a.pres.prime).exact_div_p(1))


def theta_level(a: ThetaElement, n: int) -> ThetaElement:
    """The level-n component theta_n(a), from the ghost triangle of a.

    theta_0 = id and psi^(p^n)(a) = sum p^i theta_i(a)^(p^(n-i)); on a base
    generator this returns the level generators themselves.
    """
    p = a.pres.prime
    levels = [a]
    ghost = a
    for k in range(1, n + 1):
        ghost = psi_p(ghost)
        acc = ghost.poly
        for i in range(k):
            acc = acc - (levels[i].poly ** (p ** (k - i))).int_scale(p ** i)
        levels.append(ThetaElement(a.pres, acc.exact_div_p(k)))
    return levels[n]


class AdamsMap:
    """The theta-commuting ring endomorphism extending images of base generators.

    The image of a level generator is the corresponding level component of
    the base image, so the map commutes with every theta_n by construction;
    commutation with theta itself is a verified property, not an input.
    """

    def __init__(self, pres: ThetaPresentation, images: dict[str, ThetaElement]):
        missing = (set(pres.names) | set(pres.relation_names)) - set(images)
        if missing:
            raise OutsideDomain(f"images missing for generators {sorted(missing)}")
        self.pres = pres
        self.images = images
        self._level_cache: dict[Generator, SparsePoly] = {}

    def _image(self, g: Generator) -> SparsePoly:
        if g not in self._level_cache:
            self._level_cache[g] = theta_level(self.images[g.name], g.level).poly
        return self._level_cache[g]

    def __call__(self, a: ThetaElement) -> ThetaElement:
        appearing = {g for m in a.poly.terms for g, _ in m}
        assignment = {g: self._image(g) for g in appearing}
        return ThetaElement(self.pres, a.poly.substitute(assignment, fixed=frozenset()))


def adams_action(a: ThetaElement, images: dict[str, ThetaElement]) -> ThetaElement:
    return AdamsMap(a.pres, images)(a)


class CoproductMap:
    """A map T(src names) -> target built from Witt comultiplication.

    routing maps each source base name to a pair (left, right) of target
    names (that generator is comultiplied), to a single target name (that
    generator is relabelled), or to None (every level of it is sent to
    zero, the counit).  Composites of these express coassociativity and
    counit checks.
    """

    def __init__(self, src: ThetaPresentation, tgt: ThetaPresentation,
                 routing: dict[str, tuple[str, str] | str | None]):
        self.src = src
        self.tgt = tgt
        self.routing = routing
        self._cache: dict[Generator, SparsePoly] = {}

    def _image(self, g: Generator) -> SparsePoly:
        if g not in self._cache:
            route = self.routing[g.name]
            if route is None:
                img = SparsePoly.zero(self.tgt.registry, self.tgt.prime,
                                      self.tgt.degree_cap)
            elif isinstance(route, tuple):
                left, right = route
                img = self.tgt.delta_image(left, right, g.level)
            else:
                img = SparsePoly.generator(
                    self.tgt.registry, self.tgt.registry.get(route, g.level),
                    one(self.tgt.prime, self.tgt.precision), self.tgt.degree_cap)
            self._cache[g] = img
        return self._cache[g]

    def __call__(self, a: ThetaElement) -> ThetaElement:
        # split each monomial into the comultiplied part (expensive, its
        # product image memoized across terms) and the relabelled part,
        # which stays a single monomial in the target
        out = SparsePoly.zero(self.tgt.registry, self.tgt.prime, self.tgt.degree_cap)
        hard_cache: dict[tuple, SparsePoly] = {}
        power_cache: dict[tuple[Generator, int], SparsePoly] = {}
        for m, c in a.poly.terms.items():
            hard = []
            easy = []
            for g, e in m:
                route = self.routing[g.name]
                if isinstance(route, tuple):
                    hard.append((g, e))
                elif route is None:
                    hard = None
                    break
                else:
                    easy.append((self.tgt.registry.get(route, g.level), e))
            if hard is None:
                continue
            hard_key = tuple(hard)
            if hard_key not in hard_cache:
                prod = SparsePoly.constant(self.tgt.registry,
                                           one(self.tgt.prime, self.tgt.precision),
                                           self.tgt.degree_cap)
                for g, e in hard:
                    if (g, e) not in power_cache:
                        power_cache[(g, e)] = self._image(g) ** e
                    prod = prod * power_cache[(g, e)]
                hard_cache[hard_key] = prod
            term = SparsePoly(self.tgt.registry, self.tgt.prime,
                              {tuple(sorted(easy)): c}, self.tgt.degree_cap)
            out = out + hard_cache[hard_key] * term
        return ThetaElement(self.tgt, out)


def comultiply(a: ThetaElement, sep: str = "'") -> ThetaElement:
    """Witt-style comultiplication into the tensor square T(gens + gens')."""
    pres = a.pres
    tgt = pres.tensor_power(2, sep)
    routing = {name: (name, name + sep) for name in pres.names}
    return CoproductMap(pres, tgt, routing)(a)


def counit(a: ThetaElement) -> PadicInt:
    """Evaluation sending every generator to zero (the constant term)."""
    c = a.poly.coefficient(ONE_MONO)
    return c if c is not None else zero(a.pres.prime, a.pres.precision)


def unit_power_series(pres: ThetaPresentation, name: str, h: PadicInt,
                      terms: int) -> ThetaElement:
    """The convergent series (1+h)^(-b) = sum binom(-b, n) h^n, truncated.

    Requires v_p(h) >= 1 (>= 2 at p = 2) so the terms' valuations outrun
    the n! denominators.  Coefficient precision after the truncation is
    governed by v_p(terms!); the tail beyond `terms` has valuation at
    least (terms+1)*v_p(h) - v_p(terms!).
    """
    p = pres.prime
    v = h.valuation()
    need = 2 if p == 2 else 1
    if v is None:
        return pres.one()
    if v < need:
        raise OutsideDomain(f"need v_p(h) >= {need}, got {v}")
    b = pres.gen(name)
    total = pres.one()
    rising = pres.one()          # b (b+1) ... (b+n-1)
    h_pow = one(p, h.precision)
    fact = 1
    for n in range(1, terms + 1):
        rising = rising * (b + pres.constant(n - 1))
        h_pow = h_pow * h
        fact *= n
        term = rising.scale(h_pow)
        term = ThetaElement(pres, term.poly.exact_div_p(vp_int(fact, p) or 0))
        unit = fact // p ** (vp_int(fact, p) or 0)
        if unit != 1:
            prec = term.poly.min_precision() or pres.precision
            term = term.scale(PadicInt(p, pow(unit, -1, p ** prec), prec))
        if n % 2 == 1:
            term = -term
        total = total + term
    return total


def invariance_comparison_digits(v_h: int, terms: int, p: int) -> int:
    """Valuation bound on the truncation tail of unit_power_series."""
    return (terms + 1) * v_h - vp_factorial(terms, p)


# -- named identity checks -------------------------------------------------------


def f_congruence_check(p: int, i: int, target_digits: int,
                       degree_cap: int | None = 24,
                       level_cap: int = 4) -> tuple[bool, SparsePoly]:
    """Verify theta_i(psi(b) - b) = b_i^p - b_i mod (p, b0..b_{i-1}).

    Returns (passed, witness) where the witness is the reduced difference
    (zero exactly when the congruence holds).
    """
    if i + 1 > level_cap:
        raise LevelCapExceeded(f"need level {i + 1} <= cap {level_cap}")
    prec = working_precision(target_digits, level_cap, degree_cap, p)
    pres = ThetaPresentation(p, ("b",), level_cap, prec, degree_cap)
    b = pres.gen("b")
    f = psi_p(b) - b
    f_i = theta_level(f, i)
    b_i = pres.gen("b", i)
    expected = b_i ** p - b_i
    kill = frozenset(pres.registry.get("b", j) for j in range(i))
    witness = (f_i - expected).poly.reduce_mod(1, kill)
    return witness.is_zero(), witness


def x_congruence_check(p: int, i: int, h_coeffs: list[PadicInt], target_digits: int,
                       degree_cap: int | None = 24,
                       level_cap: int = 4) -> tuple[bool, SparsePoly]:
    """Verify theta_i(theta(f) - h(f)) = b_{i+1}^p - b_{i+1} mod (p, b0..b_i),
    where f = psi(b) - b and h is the series re-expressing theta(f) in f.

    Only the h coefficients whose terms survive the degree cap matter:
    f^k has minimal degree k, so indices beyond the cap are irrelevant.
    """
    if i + 2 > level_cap:
        raise LevelCapExceeded(f"need level {i + 2} <= cap {level_cap}")
    prec = working_precision(target_digits, level_cap, degree_cap, p)
    pres = ThetaPresentation(p, ("b",), level_cap, prec, degree_cap)
    b = pres.gen("b")
    f = psi_p(b) - b
    theta_f = theta_op(f)
    h_of_f = pres.zero()
    f_pow = pres.one()
    top = len(h_coeffs) if degree_cap is None else min(len(h_coeffs), degree_cap + 1)
    for k in range(top):
        h_of_f = h_of_f + f_pow.scale(h_coeffs[k])
        if k + 1 < top:
            f_pow = f_pow * f
    big_f = theta_f - h_of_f
    lhs = theta_level(big_f, i)
    b_next = pres.gen("b", i + 1)
    expected = b_next ** p - b_next
    kill = frozenset(pres.registry.get("b", j) for j in range(i + 1))
    witness = (lhs - expected).poly.reduce_mod(1, kill)
    return witness.is_zero(), witness


def ell_relation_check(p: int, target_digits: int = 8) -> tuple[bool, SparsePoly]:
    """Verify psi(l) - l = f - fbar exactly in T(b, bbar), where l = b - bbar."""
    prec = working_precision(target_digits, 2, None, p)
    pres = ThetaPresentation(p, ("b", "bbar"), 2, prec)
    b, bb = pres.gen("b"), pres.gen("bbar")
    ell = b - bb
    lhs = psi_p(ell) - ell
    rhs = (psi_p(b) - b) - (psi_p(bb) - bb)
    witness = (lhs - rhs).poly
    return witness.is_zero(), witness
