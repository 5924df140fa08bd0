"""Sparse multivariate polynomials over PadicInt coefficients.

Monomials are finitely supported exponent vectors over a registry of
named, levelled generators (b0, b1, ..., alpha0, ...).  The generator
order is total and stable: name-major, level-minor.  Coefficient
precision is tracked per term; a polynomial's reported precision is the
minimum over its terms.

An optional degree_cap truncates by total degree.  Truncation is silent
by design: the capped ring is an honest quotient (the span of monomials
above the cap is an ideal), so ring identities verified under a cap are
identities of the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NonTerminating, PrimeMismatch
from .padic import PadicInt

Monomial = tuple  # tuple[tuple[Generator, int], ...], sorted, all exponents > 0

ONE_MONO: Monomial = ()


@dataclass(frozen=True, order=True)
class Generator:
    """A named generator at a level (theta-level index or digit index)."""

    name: str
    level: int

    def __post_init__(self):
        # generators sit in every monomial key; hashing must be O(1)
        object.__setattr__(self, "_hash", hash((self.name, self.level)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.name}{self.level}"


class GeneratorRegistry:
    """Append-only pool of generators; (name, level) pairs are unique.

    The registry also interns monomials behind small integer ids so the
    multiplication kernel can run on int-keyed dictionaries; this is a
    private speedup, polynomials still expose tuple monomials.
    """

    def __init__(self):
        self._gens: dict[tuple[str, int], Generator] = {}
        self._mono_index: dict[Monomial, int] = {ONE_MONO: 0}
        self._mono_by_id: list[Monomial] = [ONE_MONO]
        self._deg_by_id: list[int] = [0]
        self._pair_cache: dict[int, int] = {}

    def add(self, name: str, level: int) -> Generator:
        key = (name, level)
        if key not in self._gens:
            self._gens[key] = Generator(name, level)
        return self._gens[key]

    def get(self, name: str, level: int) -> Generator:
        return self._gens[(name, level)]

    def __contains__(self, gen: Generator) -> bool:
        return self._gens.get((gen.name, gen.level)) is gen

    def sorted_generators(self) -> list[Generator]:
        return sorted(self._gens.values())

    def mono_id(self, m: Monomial) -> int:
        idx = self._mono_index.get(m)
        if idx is None:
            idx = len(self._mono_by_id)
            self._mono_index[m] = idx
            self._mono_by_id.append(m)
            self._deg_by_id.append(sum(e for _, e in m))
        return idx

    def mul_ids(self, i: int, j: int) -> int:
        key = (i << 32) | j if i >= j else (j << 32) | i
        out = self._pair_cache.get(key)
        if out is None:
            out = self.mono_id(mono_mul(self._mono_by_id[i], self._mono_by_id[j]))
            self._pair_cache[key] = out
        return out


@lru_cache(maxsize=1 << 20)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[Generator, int] = dict(a)
    for g, e in b:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items()))


@lru_cache(maxsize=1 << 20)
def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_render(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(f"{g}^{e}" if e > 1 else str(g) for g, e in m)


def _mono_sort_key(m: Monomial):
    return tuple((g.name, g.level, e) for g, e in m)


class SparsePoly:
    """Polynomial with PadicInt coefficients, normalized on construction."""

    __slots__ = ("registry", "prime", "terms", "degree_cap")

    def __init__(self, registry: GeneratorRegistry, prime: int,
                 terms: dict[Monomial, PadicInt], degree_cap: int | None = None):
        self.registry = registry
        self.prime = prime
        self.degree_cap = degree_cap
        clean: dict[Monomial, PadicInt] = {}
        for m, c in terms.items():
            if c.is_zero():
                continue
            if degree_cap is not None and mono_degree(m) > degree_cap:
                continue
            clean[m] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, registry, prime, degree_cap=None):
        return cls(registry, prime, {}, degree_cap)

    @classmethod
    def constant(cls, registry, coeff: PadicInt, degree_cap=None):
        return cls(registry, coeff.prime, {ONE_MONO: coeff}, degree_cap)

    @classmethod
    def generator(cls, registry, gen: Generator, coeff: PadicInt, degree_cap=None):
        return cls(registry, coeff.prime, {((gen, 1),): coeff}, degree_cap)

    # -- bookkeeping ---------------------------------------------------------

    def _compat(self, other: "SparsePoly") -> int | None:
        if self.registry is not other.registry:
            raise PrimeMismatch("polynomials built over different registries")
        if self.prime != other.prime:
            raise PrimeMismatch(f"prime {self.prime} vs {other.prime}")
        caps = [c for c in (self.degree_cap, other.degree_cap) if c is not None]
        return min(caps) if caps else None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self.terms), default=0)

    def min_precision(self) -> int | None:
        """Worst coefficient precision, or None for the zero polynomial."""
        return min((c.precision for c in self.terms.values()), default=None)

    def coefficient(self, m: Monomial) -> PadicInt | None:
        return self.terms.get(m)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        cap = self._compat(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return SparsePoly(self.registry, self.prime, out, cap)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.registry, self.prime,
                          {m: -c for m, c in self.terms.items()}, self.degree_cap)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        cap = self._compat(other)
        if not self.terms or not other.terms or (
                cap is not None and self.min_degree() + other.min_degree() > cap):
            # every product term would land above the cap
            return SparsePoly.zero(self.registry, self.prime, cap)
        # int-keyed accumulation over interned monomial ids; (residue,
        # precision) cells merge with the min-precision rule and become
        # PadicInt once at the end
        reg = self.registry
        mono_id = reg.mono_id
        mul_ids = reg.mul_ids
        degs = reg._deg_by_id
        left = [(mono_id(m), c.residue, c.precision) for m, c in self.terms.items()]
        right = [(mono_id(m), c.residue, c.precision) for m, c in other.terms.items()]
        if cap is not None:
            right.sort(key=lambda t: degs[t[0]])
        acc: dict[int, list] = {}
        for i1, r1, p1 in left:
            d1 = degs[i1]
            for i2, r2, p2 in right:
                if cap is not None and d1 + degs[i2] > cap:
                    break
                m = mul_ids(i1, i2)
                prec = p1 if p1 < p2 else p2
                cell = acc.get(m)
                if cell is None:
                    acc[m] = [r1 * r2, prec]
                else:
                    cell[0] += r1 * r2
                    if prec < cell[1]:
                        cell[1] = prec
        p = self.prime
        by_id = reg._mono_by_id
        out = {by_id[mid]: PadicInt(p, res, prec) for mid, (res, prec) in acc.items()}
        return SparsePoly(self.registry, self.prime, out, cap)

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        if n and self.degree_cap is not None and self.min_degree() * n > self.degree_cap:
            return SparsePoly.zero(self.registry, self.prime, self.degree_cap)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            one = PadicInt(self.prime, 1, self.min_precision() or 1)
            return SparsePoly.constant(self.registry, one, self.degree_cap)
        return result

    def scale(self, c: PadicInt) -> "SparsePoly":
        return SparsePoly(self.registry, self.prime,
                          {m: coeff * c for m, coeff in self.terms.items()}, self.degree_cap)

    def int_scale(self, k: int) -> "SparsePoly":
        """Multiply by a plain integer (no precision change)."""
        return SparsePoly(self.registry, self.prime,
                          {m: PadicInt(self.prime, c.residue * k, c.precision)
                           for m, c in self.terms.items()},
                          self.degree_cap)

    def exact_div_p(self, k: int) -> "SparsePoly":
        """Divide every coefficient by p^k exactly (NotDivisible if any fails)."""
        if k == 0:
            return self
        return SparsePoly(self.registry, self.prime,
                          {m: c.exact_div_p(k) for m, c in self.terms.items()},
                          self.degree_cap)

    def exact_div_int(self, n: int) -> "SparsePoly":
        """Divide every coefficient by a nonzero integer exactly."""
        return SparsePoly(self.registry, self.prime,
                          {m: c.exact_div(n) for m, c in self.terms.items()},
                          self.degree_cap)

    # -- structural operations -------------------------------------------------

    def substitute(self, assignment: dict[Generator, "SparsePoly"],
                   fixed: frozenset[Generator] | None = None) -> "SparsePoly":
        """Image under the ring map sending each generator to its assignment.

        Generators not assigned must appear in `fixed` (they map to
        themselves); anything else raises.  Pass fixed=None to fix all
        unassigned generators implicitly.
        """
        cap = self.degree_cap
        for p in assignment.values():
            if p.degree_cap is not None:
                cap = p.degree_cap if cap is None else min(cap, p.degree_cap)
        out = SparsePoly.zero(self.registry, self.prime, cap)
        power_cache: dict[tuple[Generator, int], SparsePoly] = {}
        for m, c in self.terms.items():
            factor = SparsePoly.constant(self.registry, c, cap)
            for g, e in m:
                if g in assignment:
                    key = (g, e)
                    if key not in power_cache:
                        power_cache[key] = assignment[g] ** e
                    factor = factor * power_cache[key]
                elif fixed is None or g in fixed:
                    factor = factor * SparsePoly(
                        self.registry, self.prime,
                        {((g, e),): PadicInt(self.prime, 1, c.precision)}, cap)
                else:
                    raise KeyError(f"generator {g} neither assigned nor declared fixed")
            out = out + factor
        return out

    def eval_scalars(self, values: dict[Generator, PadicInt], precision: int) -> PadicInt:
        """Evaluate at scalar values for every generator appearing."""
        total = PadicInt(self.prime, 0, precision)
        for m, c in self.terms.items():
            v = c.reduce_precision(min(c.precision, precision))
            for g, e in m:
                v = v * values[g] ** e
            total = total + v
        return total

    def reduce_mod(self, p_exponent: int, kill: frozenset[Generator] = frozenset()) -> "SparsePoly":
        """Reduce mod the ideal (p^e, kill): drop killed monomials, floor precision."""
        out = {}
        for m, c in self.terms.items():
            if any(g in kill for g, _ in m):
                continue
            out[m] = c.reduce_precision(min(c.precision, p_exponent))
        return SparsePoly(self.registry, self.prime, out, self.degree_cap)

    def reduce_precision(self, digits: int) -> "SparsePoly":
        return SparsePoly(self.registry, self.prime,
                          {m: c.reduce_precision(min(c.precision, digits))
                           for m, c in self.terms.items()},
                          self.degree_cap)

    def equals(self, other: "SparsePoly", digits: int | None = None) -> bool:
        diff = self - other
        if digits is not None:
            diff = diff.reduce_precision(digits)
        return diff.is_zero()

    # -- rendering -------------------------------------------------------------

    def render(self) -> str:
        """Canonical text: one `monomial: coefficient` line per term, sorted."""
        lines = []
        for m in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[m]
            lines.append(f"{mono_render(m)}: {c.residue} mod {c.prime}^{c.precision}")
        if not lines:
            lines = ["0"]
        return "\n".join(lines) + "\n"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[m]
            lift = c.lift_signed()
            if m == ONE_MONO:
                parts.append(str(lift))
            elif lift == 1:
                parts.append(mono_render(m))
            elif lift == -1:
                parts.append(f"-{mono_render(m)}")
            else:
                parts.append(f"{lift}*{mono_render(m)}")
        return " + ".join(parts).replace("+ -", "- ")


def rewrite_closure(poly: SparsePoly, rules: dict[Generator, SparsePoly]) -> SparsePoly:
    """Normal form under power rules g^p -> rhs (p = the coefficient prime).

    Registration check: each rhs must have degree < p in its own generator
    and must not involve any other rule generator, which makes the
    exponent of the rewritten generator a strictly decreasing measure.
    """
    p = poly.prime
    for g, rhs in rules.items():
        for m, _ in rhs.terms.items():
            for h, e in m:
                if h is g and e >= p:
                    raise NonTerminating(f"rule for {g} does not lower its exponent")
                if h is not g and h in rules:
                    raise NonTerminating(f"rule for {g} feeds rule generator {h}")
    current = poly
    while True:
        target = None
        for m in current.terms:
            for g, e in m:
                if g in rules and e >= p:
                    target = (m, g, e)
                    break
            if target:
                break
        if target is None:
            return current
        m, g, e = target
        c = current.terms[m]
        rest = tuple((h, k) for h, k in m if h is not g)
        stripped = mono_mul(rest, ((g, e - p),) if e > p else ONE_MONO)
        replacement = SparsePoly(current.registry, p, {stripped: c}, current.degree_cap) * rules[g]
        remaining = dict(current.terms)
        del remaining[m]
        current = SparsePoly(current.registry, p, remaining, current.degree_cap) + replacement
