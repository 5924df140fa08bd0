"""Continuous functions Z_p -> Z/p^N through their Mahler coefficients.

A function is stored as the finite list of its nonzero Mahler coefficients
c_k mod p^N (so f(x) = sum c_k binomial(x, k)); the list is complete, not
truncated, which a constructor certifies by checking that trailing forward
differences vanish.  Products and translates are computed by sampling and
re-differencing: one code path, exact at this modulus.

On top of that sit the maps connecting the function ring to the free
theta-algebra T(b):

* pi sends b to the identity function and each level generator b_n to the
  function solved from the ghost identity (the target has psi = id), so
  id = pi(b_0)^(p^n) + p pi(b_1)^(p^(n-1)) + ... + p^n pi(b_n);
* the coalgebra section s sends the binomial basis function beta_k to
  lambda^k(b);
* the digit basis writes a function as a polynomial in the Teichmuller
  digit functions alpha_i subject to alpha_i^p = alpha_i.

The group structure of the source is written additively throughout (the
topological generator g of the acting group corresponds to 1), so the
translation action f(x) -> f(x+1) is the Adams action and the Hopf
operations are those of functions on an additive group: coproduct
f -> ((x, y) -> f(x+y)), counit f -> f(0), antipode f -> (x -> f(-x)).
"""

from __future__ import annotations

from .errors import (IncompleteSampleWindow, NotDivisible, OutsideDomain,
                     PrecisionExhausted, WindowTooSmall)
from .padic import PadicInt, teichmuller_lift, vp_factorial
from .poly import Generator, GeneratorRegistry, ONE_MONO, SparsePoly
from .theta import ThetaElement, ThetaPresentation
from . import lam

DEFAULT_TAIL = 2


def binom_int(x: int, k: int) -> int:
    """Exact integer binomial for any integer x and k >= 0."""
    if k == 0:
        return 1
    num = 1
    for i in range(k):
        num *= x - i
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return num // fact


def _as_int(x, modulus_exp: int, prime: int, need_digits: int) -> int:
    """Integer representative of an evaluation point."""
    if isinstance(x, PadicInt):
        if x.prime != prime:
            raise OutsideDomain("prime mismatch in evaluation point")
        if x.precision < need_digits:
            raise PrecisionExhausted(
                f"evaluation point needs {need_digits} digits, has {x.precision}")
        return x.residue
    return int(x)


class MahlerFn1:
    """A continuous function Z_p -> Z/p^N via its complete Mahler list."""

    __slots__ = ("prime", "modulus_exp", "coeffs")

    def __init__(self, prime: int, modulus_exp: int, coeffs: list[int]):
        self.prime = prime
        self.modulus_exp = modulus_exp
        mod = prime ** modulus_exp
        cleaned = [c % mod for c in coeffs]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        self.coeffs = cleaned

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, prime: int, modulus_exp: int, value: int) -> "MahlerFn1":
        return cls(prime, modulus_exp, [value])

    @classmethod
    def beta(cls, prime: int, modulus_exp: int, k: int) -> "MahlerFn1":
        """The basis function x -> binomial(x, k)."""
        return cls(prime, modulus_exp, [0] * k + [1])

    @classmethod
    def identity(cls, prime: int, modulus_exp: int) -> "MahlerFn1":
        return cls.beta(prime, modulus_exp, 1)

    # -- basic structure ------------------------------------------------------

    def length(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _align(self, other: "MahlerFn1") -> int:
        if self.prime != other.prime:
            raise OutsideDomain("prime mismatch")
        return min(self.modulus_exp, other.modulus_exp)

    def reduce_modulus(self, modulus_exp: int) -> "MahlerFn1":
        if modulus_exp > self.modulus_exp:
            raise PrecisionExhausted("cannot raise a function's modulus")
        return MahlerFn1(self.prime, modulus_exp, self.coeffs)

    def evaluate(self, x) -> PadicInt:
        """f(x) mod p^N; x may be an int or a PadicInt with enough digits."""
        need = self.modulus_exp + vp_factorial(max(self.length() - 1, 0), self.prime)
        xv = _as_int(x, self.modulus_exp, self.prime, need)
        mod = self.prime ** self.modulus_exp
        total = 0
        binom = 1  # binomial(xv, k), updated incrementally
        for k, c in enumerate(self.coeffs):
            if k > 0:
                binom = binom * (xv - (k - 1)) // k
            total += c * (binom % mod)
        return PadicInt(self.prime, total, self.modulus_exp)

    def __add__(self, other: "MahlerFn1") -> "MahlerFn1":
        n = self._align(other)
        la, lb = self.coeffs, other.coeffs
        out = [(la[k] if k < len(la) else 0) + (lb[k] if k < len(lb) else 0)
               for k in range(max(len(la), len(lb)))]
        return MahlerFn1(self.prime, n, out)

    def __sub__(self, other: "MahlerFn1") -> "MahlerFn1":
        return self + other.int_scale(-1)

    def int_scale(self, k: int) -> "MahlerFn1":
        return MahlerFn1(self.prime, self.modulus_exp, [c * k for c in self.coeffs])

    def __mul__(self, other: "MahlerFn1") -> "MahlerFn1":
        """Pointwise product by sampling and re-differencing.

        The product of functions with Mahler lengths A and B has length at
        most A + B - 1 (they are polynomials of those degrees mod p^N), so
        the sample window is exact, not heuristic.
        """
        n = self._align(other)
        width = max(self.length() + other.length() - 1, 1)
        samples = [self.evaluate(x).residue * other.evaluate(x).residue
                   for x in range(width + DEFAULT_TAIL)]
        return from_samples(samples, self.prime, n)

    def translate(self, c) -> "MahlerFn1":
        """The function x -> f(x + c); translate by 1 is the Adams action."""
        need = self.modulus_exp + vp_factorial(max(self.length() - 1, 0), self.prime)
        cv = _as_int(c, self.modulus_exp, self.prime, need)
        width = max(self.length(), 1)
        samples = [self.evaluate(x + cv).residue for x in range(width + DEFAULT_TAIL)]
        return from_samples(samples, self.prime, self.modulus_exp)

    def exact_div_p(self, k: int) -> "MahlerFn1":
        """Divide the function (all Mahler coefficients) by p^k exactly.

        The result is only determined mod p^(N-k): dividing a function
        with values in p^k Z/p^N yields one with values in Z/p^(N-k).
        """
        if self.modulus_exp <= k:
            raise PrecisionExhausted("modulus too small for exact division")
        pk = self.prime ** k
        out = []
        for c in self.coeffs:
            if c % pk:
                raise NotDivisible(f"Mahler coefficient {c} not divisible by {pk}")
            out.append(c // pk)
        return MahlerFn1(self.prime, self.modulus_exp - k, out)

    def equals(self, other: "MahlerFn1") -> bool:
        n = self._align(other)
        return self.reduce_modulus(n).coeffs == other.reduce_modulus(n).coeffs

    def render(self) -> str:
        lines = [f"c{k}: {c} mod {self.prime}^{self.modulus_exp}"
                 for k, c in enumerate(self.coeffs)]
        if not lines:
            lines = ["0"]
        return "\n".join(lines) + "\n"

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*beta_{k}" for k, c in enumerate(self.coeffs) if c)


def from_samples(values: list, prime: int, modulus_exp: int,
                 tail: int = DEFAULT_TAIL) -> MahlerFn1:
    """Mahler coefficients from values at 0..len-1 by forward differences.

    The caller asserts the window is long enough; the constructor verifies
    that the last `tail` differences vanish mod p^N, and fails with
    IncompleteSampleWindow otherwise.
    """
    mod = prime ** modulus_exp
    row = [_as_int(v, modulus_exp, prime, modulus_exp) % mod for v in values]
    coeffs = []
    while row:
        coeffs.append(row[0])
        row = [(row[i + 1] - row[i]) % mod for i in range(len(row) - 1)]
    if len(coeffs) > tail and any(c % mod for c in coeffs[-tail:]):
        raise IncompleteSampleWindow(
            f"trailing differences nonzero mod {prime}^{modulus_exp}; widen the window")
    return MahlerFn1(prime, modulus_exp, coeffs)


# -- two-variable functions -------------------------------------------------------


class MahlerFn2:
    """A continuous function Z_p x Z_p -> Z/p^N in the basis beta_j(x) beta_k(y)."""

    __slots__ = ("prime", "modulus_exp", "coeffs")

    def __init__(self, prime: int, modulus_exp: int, coeffs: dict):
        mod = prime ** modulus_exp
        self.prime = prime
        self.modulus_exp = modulus_exp
        self.coeffs = {jk: c % mod for jk, c in coeffs.items() if c % mod}

    def evaluate(self, x, y) -> PadicInt:
        max_j = max((j for j, _ in self.coeffs), default=0)
        max_k = max((k for _, k in self.coeffs), default=0)
        need = self.modulus_exp + vp_factorial(max(max_j, max_k), self.prime)
        xv = _as_int(x, self.modulus_exp, self.prime, need)
        yv = _as_int(y, self.modulus_exp, self.prime, need)
        mod = self.prime ** self.modulus_exp
        bx = {j: binom_int(xv, j) % mod for j in {j for j, _ in self.coeffs}}
        by = {k: binom_int(yv, k) % mod for k in {k for _, k in self.coeffs}}
        total = 0
        for (j, k), c in self.coeffs.items():
            total += c * bx[j] * by[k]
        return PadicInt(self.prime, total, self.modulus_exp)

    def equals(self, other: "MahlerFn2") -> bool:
        if self.prime != other.prime:
            raise OutsideDomain("prime mismatch")
        n = min(self.modulus_exp, other.modulus_exp)
        mod = self.prime ** n
        keys = set(self.coeffs) | set(other.coeffs)
        return all((self.coeffs.get(k, 0) - other.coeffs.get(k, 0)) % mod == 0
                   for k in keys)

    def render(self) -> str:
        lines = [f"c{j},{k}: {self.coeffs[(j, k)]} mod {self.prime}^{self.modulus_exp}"
                 for j, k in sorted(self.coeffs)]
        if not lines:
            lines = ["0"]
        return "\n".join(lines) + "\n"


def from_samples_2d(values: list[list[int]], prime: int, modulus_exp: int,
                    tail: int = DEFAULT_TAIL) -> MahlerFn2:
    """Two-variable Mahler coefficients by differencing rows then columns."""
    mod = prime ** modulus_exp
    grid = [[v % mod for v in row] for row in values]
    rows, cols = len(grid), len(grid[0])

    def diff_seq(seq):
        out = []
        while seq:
            out.append(seq[0])
            seq = [(seq[i + 1] - seq[i]) % mod for i in range(len(seq) - 1)]
        return out

    half = [diff_seq([grid[i][j] for j in range(cols)]) for i in range(rows)]
    coeffs = {}
    bad_tail = False
    for k in range(cols):
        col = [half[i][k] if k < len(half[i]) else 0 for i in range(rows)]
        dk = diff_seq(col)
        for j, c in enumerate(dk):
            if c:
                if j >= rows - tail or k >= cols - tail:
                    bad_tail = True
                coeffs[(j, k)] = c
    if bad_tail:
        raise IncompleteSampleWindow("2-d sample window too small")
    return MahlerFn2(prime, modulus_exp, coeffs)


# -- the map pi: T(b) -> Maps(Z_p, Z_p) ---------------------------------------------


_PI_CACHE: dict[tuple[int, int, int], MahlerFn1] = {}


def pi_bn(prime: int, n: int, modulus_exp: int) -> MahlerFn1:
    """The image of the level generator b_n under pi.

    Solved from id = sum p^i pi(b_i)^(p^(n-i)); the exact division by p^n
    is an integrality statement and NotDivisible here is a test failure.
    Satisfies pi(b_n) = alpha_n mod p (verified elsewhere, not assumed).
    """
    key = (prime, n, modulus_exp)
    if key in _PI_CACHE:
        return _PI_CACHE[key]
    if n == 0:
        out = MahlerFn1.identity(prime, modulus_exp)
    else:
        # the bracket is computed at modulus N + n so the division lands at N
        work = modulus_exp + n
        acc = MahlerFn1.identity(prime, work)
        for i in range(n):
            pi_i = pi_bn(prime, i, work - i)
            power = _fn_power(pi_i, prime ** (n - i))
            lifted = MahlerFn1(prime, work, [c * prime ** i for c in power.coeffs])
            acc = acc - lifted
        out = acc.exact_div_p(n)
    _PI_CACHE[key] = out
    return out


def _fn_power(f: MahlerFn1, e: int) -> MahlerFn1:
    result = MahlerFn1.constant(f.prime, f.modulus_exp, 1)
    base = f
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def pi_map(a: ThetaElement, modulus_exp: int) -> MahlerFn1:
    """pi extended multiplicatively over a polynomial in the level generators.

    Only single-name presentations make sense here; the coefficient
    precisions must cover the modulus.
    """
    pres = a.pres
    if len(pres.names) != 1 or pres.relation_names:
        raise OutsideDomain("pi is defined on the free algebra on one generator")
    out = MahlerFn1.constant(pres.prime, modulus_exp, 0)
    for m, c in a.poly.terms.items():
        if c.precision < modulus_exp:
            raise PrecisionExhausted(
                f"coefficient precision {c.precision} below modulus {modulus_exp}")
        factor = MahlerFn1.constant(pres.prime, modulus_exp, c.residue)
        for g, e in m:
            factor = factor * _fn_power(pi_bn(pres.prime, g.level, modulus_exp), e)
        out = out + factor
    return out


def section_s(f: MahlerFn1, pres: ThetaPresentation) -> ThetaElement:
    """The coalgebra section: beta_k -> lambda^k(b), extended linearly."""
    name = pres.names[0]
    b = pres.gen(name)
    lams = lam.lambda_list(b, max(f.length() - 1, 0))
    out = pres.zero()
    for k, c in enumerate(f.coeffs):
        if c:
            out = out + lams[k].scale(PadicInt(pres.prime, c, f.modulus_exp))
    return out


def hopkins_mistake_check(n: int, prime: int, modulus_exp: int = 6,
                          level_cap: int = 4) -> tuple[bool, bool]:
    """Exercise the failed inverse: apply ((1 - s pi) (x) pi) Delta to s(beta_n).

    The composite annihilates the entire image of s even though s(beta_n)
    is nonzero, which is exactly the defect this check documents.  Returns
    (image_is_zero, input_is_nonzero); the check passes when both hold.
    """
    guard = vp_factorial(4 * n + 4, prime) + n + 4
    pres = ThetaPresentation(prime, ("b",), level_cap, modulus_exp + guard)
    from .theta import comultiply  # local import to keep module load acyclic
    s_beta = lam.lambda_n(pres.gen("b"), n)
    if s_beta.is_zero():
        return False, False
    delta = comultiply(s_beta)
    tensor = delta.pres
    # group Delta(s beta_n) = sum_R A_R (x) m_R by the primed monomial m_R
    grouped: dict[tuple, SparsePoly] = {}
    for m, c in delta.poly.terms.items():
        left = tuple((g, e) for g, e in m if not g.name.endswith("'"))
        right = tuple((g, e) for g, e in m if g.name.endswith("'"))
        part = SparsePoly(pres.registry, prime,
                          {tuple((pres.registry.get(g.name, g.level), e)
                                 for g, e in left): c})
        grouped[right] = grouped.get(right, SparsePoly.zero(pres.registry, prime)) + part
    # express pi(m_R) in the beta basis and collect L_j = sum_R d_{R,j} A_R
    l_parts: dict[int, SparsePoly] = {}
    for right, a_part in grouped.items():
        fn = MahlerFn1.constant(prime, modulus_exp, 1)
        for g, e in right:
            fn = fn * _fn_power(pi_bn(prime, g.level, modulus_exp), e)
        for j, d in enumerate(fn.coeffs):
            if d:
                scaled = a_part.scale(PadicInt(prime, d, modulus_exp))
                l_parts[j] = l_parts.get(j, SparsePoly.zero(pres.registry, prime)) + scaled
    # the image vanishes iff L_j = s(pi(L_j)) for every beta index j
    for j, l_poly in sorted(l_parts.items()):
        l_el = ThetaElement(pres, l_poly)
        recovered = section_s(pi_map(l_el, modulus_exp), pres)
        if not l_el.equals(recovered, digits=modulus_exp):
            return False, True
    return True, True


# -- Teichmuller digit basis ---------------------------------------------------------


def digit_registry(prime: int, top: int) -> GeneratorRegistry:
    reg = GeneratorRegistry()
    for i in range(top + 1):
        reg.add("alpha", i)
    return reg


def digit_window(prime: int, top: int, modulus_exp: int) -> int:
    """Sample count certifying completeness for functions factoring
    through Z/p^(top+1): Mahler coefficients of such a function vanish
    mod p^N from index (N + top + 1) p^top (p-1) on."""
    return (modulus_exp + top + 1) * prime ** top * (prime - 1) + DEFAULT_TAIL + 2


def _digit_vector(prime: int, x: int, top: int, modulus_exp: int) -> list[int]:
    """Teichmuller digit values of x, each reported mod p^N.

    Peeling must happen at the full working modulus: the digit subtracted
    from x is the Teichmuller representative there, not its mod-p^N
    reduction (at p = 3, 5 those differ and would corrupt later digits).
    """
    out = []
    big = modulus_exp + top + 1
    mod_big = prime ** big
    mod_out = prime ** modulus_exp
    work = x % mod_big
    for _ in range(top + 1):
        d = teichmuller_lift(prime, work, big).residue
        out.append(d % mod_out)
        work = ((work - d) % mod_big) // prime
    return out


def from_digit_poly(poly: SparsePoly, prime: int, top: int, modulus_exp: int) -> MahlerFn1:
    """Mahler form of a polynomial in the digit functions alpha_0..alpha_top."""
    mod = prime ** modulus_exp
    width = digit_window(prime, top, modulus_exp)
    period = prime ** (top + 1)
    cache = {}
    samples = []
    for x in range(width):
        r = x % period
        if r not in cache:
            digits = _digit_vector(prime, r, top, modulus_exp)
            values = {poly.registry.get("alpha", i): PadicInt(prime, digits[i], modulus_exp)
                      for i in range(top + 1)}
            cache[r] = poly.eval_scalars(values, modulus_exp).residue % mod
        samples.append(cache[r])
    return from_samples(samples, prime, modulus_exp)


def to_digit_poly(f: MahlerFn1, top: int) -> SparsePoly:
    """Digit-basis form of f, which must factor through Z/p^(top+1).

    Values on one period are interpolated against the reduced monomial
    basis by inverting the digit Vandermonde along each axis; the result
    is verified by converting back, and WindowTooSmall is raised if f
    does not actually factor through the window.
    """
    prime, nexp = f.prime, f.modulus_exp
    mod = prime ** nexp
    period = prime ** (top + 1)
    # index the value table by Teichmuller digit classes, not standard base-p
    # digits: the two expansions differ by carries once p > 2
    values = [0] * period
    for x in range(period):
        dv = _digit_vector(prime, x, top, nexp)
        idx = sum((dv[i] % prime) * prime ** i for i in range(top + 1))
        values[idx] = f.evaluate(x).residue
    # inverse of the p x p matrix V[d][e] = teich(d)^e over Z/p^N
    teich = [teichmuller_lift(prime, d, nexp).residue for d in range(prime)]
    vand = [[pow(t, e, mod) for e in range(prime)] for t in teich]
    inv = _invert_mod(vand, prime, nexp)
    # tensor solve: apply inv along each digit axis
    coeffs = values[:]
    stride = 1
    for _ in range(top + 1):
        coeffs = _apply_axis(coeffs, inv, prime, stride, mod)
        stride *= prime
    reg = digit_registry(prime, top)
    terms = {}
    for idx, c in enumerate(coeffs):
        if c % mod == 0:
            continue
        mono = []
        rest = idx
        for i in range(top + 1):
            e = rest % prime
            rest //= prime
            if e:
                mono.append((reg.get("alpha", i), e))
        terms[tuple(sorted(mono))] = PadicInt(prime, c, nexp)
    poly = SparsePoly(reg, prime, terms)
    if not from_digit_poly(poly, prime, top, nexp).equals(f):
        raise WindowTooSmall(
            f"function does not factor through Z/{prime}^{top + 1} at this modulus")
    return poly


def _apply_axis(values: list[int], inv: list[list[int]], prime: int,
                stride: int, mod: int) -> list[int]:
    out = values[:]
    block = stride * prime
    for base in range(0, len(values), block):
        for off in range(stride):
            idx = [base + off + t * stride for t in range(prime)]
            col = [values[i] for i in idx]
            for r in range(prime):
                out[idx[r]] = sum(inv[r][t] * col[t] for t in range(prime)) % mod
    return out


def _invert_mod(matrix: list[list[int]], prime: int, modulus_exp: int) -> list[list[int]]:
    """Inverse of a matrix that is invertible mod p, over Z/p^N."""
    mod = prime ** modulus_exp
    n = len(matrix)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] % prime)
        a[col], a[pivot] = a[pivot], a[col]
        inv_p = pow(a[col][col], -1, mod)
        a[col] = [v * inv_p % mod for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [(a[r][j] - fac * a[col][j]) % mod for j in range(2 * n)]
    return [row[n:] for row in a]


# -- Hopf operations on the function ring ----------------------------------------------


def hopf_coproduct(f: MahlerFn1) -> MahlerFn2:
    """(x, y) -> f(x + y), by two-variable sampling."""
    width = f.length() + DEFAULT_TAIL
    grid = [[f.evaluate(x + y).residue for y in range(width)] for x in range(width)]
    return from_samples_2d(grid, f.prime, f.modulus_exp)


def hopf_counit(f: MahlerFn1) -> PadicInt:
    return f.evaluate(0)


def hopf_antipode(f: MahlerFn1) -> MahlerFn1:
    """x -> f(-x)."""
    width = f.length() + DEFAULT_TAIL
    samples = [f.evaluate(-x).residue for x in range(width)]
    return from_samples(samples, f.prime, f.modulus_exp)


# -- the antidiagonal invariants ---------------------------------------------------


def antidiagonal_check(n: int, prime: int, modulus_exp: int, grid: int = 8,
                       level_cap: int = 4) -> bool:
    """Check (pi (x) pi)(lambda^n(b - bbar)) = ((x, y) -> binomial(x - y, n)).

    Also verifies the invariance shape f(x, y) = f(0, y - x) for the
    resulting two-variable function; the sign convention is fixed so that
    lambda^n(b - bbar) pairs with binomial(x - y, n).
    """
    guard = vp_factorial(n, prime) + level_cap * (level_cap + 1) // 2 + 2
    pres = ThetaPresentation(prime, ("b", "bbar"), level_cap, modulus_exp + guard)
    lam_el = lam.lambda_n(pres.gen("b") - pres.gen("bbar"), n)
    mod = prime ** modulus_exp
    needed_levels = {g.level for m in lam_el.poly.terms for g, _ in m}
    pi_vals = {lev: [pi_bn(prime, lev, modulus_exp).evaluate(x).residue
                     for x in range(grid)] for lev in needed_levels}
    samples = []
    for x in range(grid):
        row = []
        for y in range(grid):
            values = {}
            for m in lam_el.poly.terms:
                for g, _ in m:
                    if g not in values:
                        col = pi_vals[g.level][x if g.name == "b" else y]
                        values[g] = PadicInt(prime, col, modulus_exp)
            row.append(lam_el.poly.eval_scalars(values, modulus_exp).residue)
        samples.append(row)
    for x in range(grid):
        for y in range(grid):
            if (samples[x][y] - binom_int(x - y, n)) % mod:
                return False
    fn2 = from_samples_2d(samples, prime, modulus_exp)
    for x in range(grid):
        for y in range(grid):
            lhs = fn2.evaluate(x, y)
            rhs = fn2.evaluate(0, y - x)
            if not lhs.congruent(rhs):
                return False
    return True
