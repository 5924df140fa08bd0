"""Exact truncated p-adic integers with explicit precision tracking.

A PadicInt stores a residue mod p^precision together with the precision
(number of guaranteed base-p digits).  Precision is never optimistic:
ring operations report min(input precisions), and exact division by p^k
costs k digits.  This pessimism is what makes NotDivisible a trustworthy
assertion; see errors.py.

Only p = 2, 3, 5 are accepted.  Residues are stored as canonical
nonnegative representatives so equality and hashing are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAUnit, NotDivisible, OutsideDomain, PrecisionExhausted, PrimeMismatch

SUPPORTED_PRIMES = (2, 3, 5)


def vp_int(n: int, p: int) -> int | None:
    """Valuation of a plain integer; None for n = 0 (infinite)."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^precision regarded as a truncated p-adic integer."""

    prime: int
    residue: int
    precision: int

    def __post_init__(self):
        if self.prime not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime {self.prime}; expected one of {SUPPORTED_PRIMES}")
        if self.precision < 1:
            raise ValueError("precision must be a positive digit count")
        object.__setattr__(self, "residue", self.residue % self.prime**self.precision)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "PadicInt"):
        if self.prime != other.prime:
            raise PrimeMismatch(f"prime {self.prime} vs {other.prime}")

    def __add__(self, other: "PadicInt") -> "PadicInt":
        self._check(other)
        prec = min(self.precision, other.precision)
        return PadicInt(self.prime, self.residue + other.residue, prec)

    def __sub__(self, other: "PadicInt") -> "PadicInt":
        self._check(other)
        prec = min(self.precision, other.precision)
        return PadicInt(self.prime, self.residue - other.residue, prec)

    def __mul__(self, other: "PadicInt") -> "PadicInt":
        self._check(other)
        prec = min(self.precision, other.precision)
        return PadicInt(self.prime, self.residue * other.residue, prec)

    def __neg__(self) -> "PadicInt":
        return PadicInt(self.prime, -self.residue, self.precision)

    def __pow__(self, n: int) -> "PadicInt":
        if n < 0:
            return self.unit_inverse() ** (-n)
        return PadicInt(self.prime, pow(self.residue, n, self.prime**self.precision), self.precision)

    def is_zero(self) -> bool:
        """Zero at this value's own precision."""
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.prime != 0

    # -- valuation and division --------------------------------------------

    def valuation(self) -> int | None:
        """Largest k <= precision with p^k | residue; None means >= precision."""
        if self.residue == 0:
            return None
        return vp_int(self.residue, self.prime)

    def exact_div_p(self, k: int) -> "PadicInt":
        """Divide by p^k exactly, losing k digits of precision."""
        if k <= 0:
            if k == 0:
                return self
            raise ValueError("k must be nonnegative")
        if self.precision <= k:
            raise PrecisionExhausted(f"need more than {k} digits, have {self.precision}")
        v = self.valuation()
        if v is not None and v < k:
            raise NotDivisible(f"valuation {v} < {k} for residue {self.residue} (p={self.prime})")
        return PadicInt(self.prime, self.residue // self.prime**k, self.precision - k)

    def unit_inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NotAUnit(f"residue {self.residue} is divisible by {self.prime}")
        inv = pow(self.residue, -1, self.prime**self.precision)
        return PadicInt(self.prime, inv, self.precision)

    def exact_div(self, n: int) -> "PadicInt":
        """Divide by a nonzero integer: p-part exactly, unit part by inversion."""
        if n == 0:
            raise ZeroDivisionError("division by zero")
        sign = -1 if n < 0 else 1
        n = abs(n)
        e = vp_int(n, self.prime)
        out = self.exact_div_p(e) if e else self
        unit = n // self.prime**e
        if unit != 1:
            out = out * PadicInt(self.prime, pow(unit, -1, self.prime**out.precision), out.precision)
        return -out if sign < 0 else out

    # -- precision management ----------------------------------------------

    def reduce_precision(self, digits: int) -> "PadicInt":
        """Forget digits beyond the given count (no-op if already coarser)."""
        if digits >= self.precision:
            return self
        if digits < 1:
            raise ValueError("cannot reduce below one digit")
        return PadicInt(self.prime, self.residue, digits)

    def congruent(self, other: "PadicInt", digits: int | None = None) -> bool:
        """Equality mod p^digits (default: the coarser of the two precisions)."""
        self._check(other)
        d = min(self.precision, other.precision)
        if digits is not None:
            d = min(d, digits)
        return (self.residue - other.residue) % self.prime**d == 0

    def lift_signed(self) -> int:
        """Representative in (-p^prec/2, p^prec/2], convenient for printing."""
        m = self.prime**self.precision
        return self.residue - m if self.residue > m // 2 else self.residue

    def __str__(self):
        return f"{self.residue} (mod {self.prime}^{self.precision})"


def from_int(prime: int, value: int, precision: int) -> PadicInt:
    return PadicInt(prime, value, precision)


def zero(prime: int, precision: int) -> PadicInt:
    return PadicInt(prime, 0, precision)


def one(prime: int, precision: int) -> PadicInt:
    return PadicInt(prime, 1, precision)


def teichmuller_lift(prime: int, residue: int, precision: int) -> PadicInt:
    """The multiplicative representative congruent to residue mod p.

    Computed as the stationary limit of residue^(p^m) mod p^precision;
    the sequence is stationary once m >= precision.  The result d
    satisfies d^p = d, so it is zero or a (p-1)th root of unity.  At
    p = 2 the available digits are just {0, 1}.
    """
    mod = prime**precision
    r = residue % mod
    for _ in range(precision):
        r = pow(r, prime, mod)
    return PadicInt(prime, r, precision)


def teichmuller_digits(x: PadicInt, count: int) -> list[PadicInt]:
    """First `count` digits of the expansion x = sum a_i p^i with a_i^p = a_i.

    Each digit is returned at the full precision of x (a root of unity is
    pinned down by its residue mod p).  Reassembly holds mod p^count.
    """
    if count > x.precision:
        raise PrecisionExhausted(f"asked for {count} digits of a {x.precision}-digit value")
    digits = []
    work = x
    for i in range(count):
        d = teichmuller_lift(x.prime, work.residue, x.precision)
        digits.append(d)
        if i + 1 < count:
            # peel one digit; precision drops by one per level, as it must
            work = (work - d.reduce_precision(work.precision)).exact_div_p(1)
    return digits


def padic_binomial(x: PadicInt, n: int) -> PadicInt:
    """Binomial coefficient x-choose-n as a p-adic integer.

    x(x-1)...(x-n+1)/n! with the p-part of n! divided out exactly;
    output precision is x.precision - v_p(n!).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return one(x.prime, x.precision)
    v = vp_factorial(n, x.prime)
    if x.precision <= v:
        raise PrecisionExhausted(f"binomial index {n} needs more than {v} digits")
    num = x
    for i in range(1, n):
        num = num * PadicInt(x.prime, x.residue - i, x.precision)
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return num.exact_div(fact)


def _log_term_bound(v: int, n: int, p: int) -> int:
    """Lower bound n*v - floor(log_p n) for v_p((x-1)^n / n)."""
    f = 0
    q = p
    while q <= n:
        f += 1
        q *= p
    return n * v - f


def padic_log(x: PadicInt) -> PadicInt:
    """p-adic logarithm on 1-units (x = 1 mod p, or mod 4 when p = 2).

    Sums (-1)^(n-1) (x-1)^n / n until every remaining term has valuation
    at least x.precision.  The reported precision is x.precision minus
    the worst division loss among the summed terms.
    """
    p = x.prime
    u = x - one(p, x.precision)
    base = 4 if p == 2 else p
    if u.residue % base != 0:
        raise OutsideDomain(f"log needs x = 1 mod {base} at p={p}")
    if u.is_zero():
        return zero(p, x.precision)
    v = u.valuation()
    acc = zero(p, x.precision)
    term = one(p, x.precision)
    n = 1
    worst_loss = 0
    while _log_term_bound(v, n, p) < x.precision:
        term = term * u
        e = vp_int(n, p) or 0
        worst_loss = max(worst_loss, e)
        t = term.exact_div(n)
        acc = acc - t if n % 2 == 0 else acc + t
        n += 1
    return acc.reduce_precision(x.precision - worst_loss)
