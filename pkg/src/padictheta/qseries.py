"""Truncated q-expansions over PadicInt coefficients.

Carries the level-1 Eisenstein series, the discriminant and 1/j, the
Frobenius q -> q^p, logarithms of 1-unit series, and the construction of
the weight-trivialized series b and f = psi(b) - b:

    p = 2:  g = 3,  b = -log(E4) / log(3^4)
    p = 3:  g = 2,  b = -log(E6) / log(2^6)

The Frobenius on q-expansions is q -> q^p; this is the unique lift
compatible with the theta-structure carried by these rings, and the two
verified properties of f (zero constant term, f = 1/j mod p) pin the
normalization down.  express_in_base re-expresses one series in powers of
another with unit-leading-coefficient base; it is how the series h with
theta(f) = h(f) and the unit series alpha with f = alpha(1/j) are found.
"""

from __future__ import annotations

from .errors import BaseNotInvertible, NotIntegral, OutsideDomain
from .padic import PadicInt, one, padic_log, vp_int, zero

# (g, Eisenstein weight) for the weight-trivialized generator at each prime
TRIVIALIZATION = {2: (3, 4), 3: (2, 6)}


class QSeries:
    """Power series in q truncated at q-precision M, coefficients PadicInt."""

    __slots__ = ("prime", "coeffs")

    def __init__(self, prime: int, coeffs: list[PadicInt]):
        if not coeffs:
            raise ValueError("need at least one coefficient")
        self.prime = prime
        self.coeffs = list(coeffs)

    @property
    def qprec(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_ints(cls, prime: int, values: list[int], precision: int) -> "QSeries":
        return cls(prime, [PadicInt(prime, v, precision) for v in values])

    @classmethod
    def constant(cls, prime: int, value: PadicInt, qprec: int) -> "QSeries":
        return cls(prime, [value] + [zero(prime, value.precision)] * (qprec - 1))

    def min_precision(self) -> int:
        return min(c.precision for c in self.coeffs)

    def _align(self, other: "QSeries") -> int:
        if self.prime != other.prime:
            raise OutsideDomain(f"prime {self.prime} vs {other.prime}")
        return min(self.qprec, other.qprec)

    def __add__(self, other: "QSeries") -> "QSeries":
        m = self._align(other)
        return QSeries(self.prime, [self.coeffs[k] + other.coeffs[k] for k in range(m)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        m = self._align(other)
        return QSeries(self.prime, [self.coeffs[k] - other.coeffs[k] for k in range(m)])

    def __neg__(self) -> "QSeries":
        return QSeries(self.prime, [-c for c in self.coeffs])

    def __mul__(self, other: "QSeries") -> "QSeries":
        m = self._align(other)
        prec = min(self.min_precision(), other.min_precision())
        out = [PadicInt(self.prime, 0, prec) for _ in range(m)]
        for i, a in enumerate(self.coeffs[:m]):
            if a.is_zero():
                continue
            for j in range(m - i):
                b = other.coeffs[j]
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return QSeries(self.prime, out)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError("negative series power")
        result = QSeries.constant(self.prime, one(self.prime, self.min_precision()), self.qprec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: PadicInt) -> "QSeries":
        return QSeries(self.prime, [a * c for a in self.coeffs])

    def int_scale(self, k: int) -> "QSeries":
        return QSeries(self.prime, [PadicInt(self.prime, a.residue * k, a.precision)
                                    for a in self.coeffs])

    def exact_div_p(self, k: int) -> "QSeries":
        return QSeries(self.prime, [c.exact_div_p(k) for c in self.coeffs])

    def exact_div_int(self, n: int) -> "QSeries":
        return QSeries(self.prime, [c.exact_div(n) for c in self.coeffs])

    def truncate(self, qprec: int) -> "QSeries":
        return QSeries(self.prime, self.coeffs[:qprec])

    def inverse(self) -> "QSeries":
        """Series inverse; constant term must be a unit."""
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise BaseNotInvertible("constant term is not a unit")
        inv0 = c0.unit_inverse()
        out = [inv0]
        for k in range(1, self.qprec):
            acc = zero(self.prime, inv0.precision)
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return QSeries(self.prime, out)

    def reduce_precision(self, digits: int) -> "QSeries":
        return QSeries(self.prime,
                       [c.reduce_precision(min(c.precision, digits)) for c in self.coeffs])

    def equals(self, other: "QSeries", digits: int | None = None) -> bool:
        m = self._align(other)
        for k in range(m):
            if not self.coeffs[k].congruent(other.coeffs[k], digits):
                return False
        return True

    def render(self) -> str:
        lines = [f"q^{k}: {c.residue} mod {c.prime}^{c.precision}"
                 for k, c in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"

    def __str__(self):
        parts = [f"{c.lift_signed()}*q^{k}" for k, c in enumerate(self.coeffs[:8])
                 if not c.is_zero()]
        return " + ".join(parts) + " + O(q^%d)" % self.qprec if parts else "O(q^%d)" % self.qprec


# -- modular forms ----------------------------------------------------------------


def sigma(n: int, k: int) -> int:
    """Divisor power sum."""
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein_e4(prime: int, qprec: int, precision: int) -> QSeries:
    """E4 = 1 + 240 sum sigma_3(n) q^n."""
    vals = [1] + [240 * sigma(n, 3) for n in range(1, qprec)]
    return QSeries.from_ints(prime, vals, precision)


def eisenstein_e6(prime: int, qprec: int, precision: int) -> QSeries:
    """E6 = 1 - 504 sum sigma_5(n) q^n."""
    vals = [1] + [-504 * sigma(n, 5) for n in range(1, qprec)]
    return QSeries.from_ints(prime, vals, precision)


def discriminant(prime: int, qprec: int, precision: int) -> QSeries:
    """Delta = (E4^3 - E6^2)/1728, exact division audited."""
    v1728 = vp_int(1728, prime) or 0
    guard = precision + v1728
    e4 = eisenstein_e4(prime, qprec, guard)
    e6 = eisenstein_e6(prime, qprec, guard)
    return (e4 ** 3 - e6 ** 2).exact_div_int(1728)


def j_inverse(prime: int, qprec: int, precision: int) -> QSeries:
    """1/j = Delta / E4^3 via unit series inversion."""
    delta = discriminant(prime, qprec, precision)
    e4 = eisenstein_e4(prime, qprec, precision)
    return delta * (e4 ** 3).inverse()


# -- theta structure on q-expansions ------------------------------------------------


def frobenius(f: QSeries) -> QSeries:
    """psi^p on q-expansions: q -> q^p.

    The output keeps the input's q-precision M; every kept entry is exact
    (index pk draws on input index k < M/p, other indices are exactly 0),
    so nothing inside the window is unknown.  Information in input indices
    above M/p does not reach the window, by design.
    """
    p = f.prime
    prec = f.min_precision()
    out = []
    for k in range(f.qprec):
        if k % p == 0:
            out.append(f.coeffs[k // p])
        else:
            out.append(zero(p, prec))
    return QSeries(p, out)


def log_one_unit(f: QSeries) -> QSeries:
    """Termwise p-adic log of a 1-unit series.

    The constant term must satisfy the scalar log domain (1 mod p, or
    1 mod 4 at p = 2); the series part contributes finitely many terms to
    each q-coefficient, with the division by n audited rather than assumed
    (this is where integrality of the input's valuations is verified).
    """
    p = f.prime
    c0 = f.coeffs[0]
    base = 4 if p == 2 else p
    if (c0.residue - 1) % base != 0:
        raise OutsideDomain(f"constant term must be 1 mod {base}")
    if c0.residue != 1:
        norm = f.scale(c0.unit_inverse())
        scalar = padic_log(c0)
    else:
        norm = f
        scalar = None
    u = norm - QSeries.constant(p, one(p, norm.min_precision()), norm.qprec)
    acc = QSeries.constant(p, zero(p, norm.min_precision()), norm.qprec)
    upow = u
    for n in range(1, norm.qprec):
        term = upow.exact_div_int(n)
        acc = acc + term if n % 2 == 1 else acc - term
        if n + 1 < norm.qprec:
            upow = upow * u
    if scalar is not None:
        acc.coeffs[0] = acc.coeffs[0] + scalar.reduce_precision(
            min(scalar.precision, acc.coeffs[0].precision))
    return acc


def weight_log(prime: int, precision: int) -> PadicInt:
    """The scalar log of the trivializing weight factor (log 3^4 or log 2^6)."""
    if prime not in TRIVIALIZATION:
        raise OutsideDomain(f"q-expansion trivialization defined for p=2,3 only")
    g, wt = TRIVIALIZATION[prime]
    return padic_log(PadicInt(prime, g ** wt, precision))


def b_series(prime: int, qprec: int, precision: int) -> QSeries:
    """The weight-trivialized generator: -log(E)/log(g^wt) on q-expansions."""
    if prime not in TRIVIALIZATION:
        raise OutsideDomain("b series defined for p=2,3 only")
    guard = 8 + qprec.bit_length()
    work = precision + guard
    if prime == 2:
        series = eisenstein_e4(prime, qprec, work)
    else:
        series = eisenstein_e6(prime, qprec, work)
    lg = weight_log(prime, work)
    v = lg.valuation()
    unit = lg.exact_div_p(v)
    log_e = log_one_unit(series)
    out = (-log_e).exact_div_p(v).scale(unit.unit_inverse())
    return out.reduce_precision(precision)


def f_series(prime: int, qprec: int, precision: int) -> QSeries:
    """f = psi(b) - b on q-expansions; constant term zero (verified property)."""
    b = b_series(prime, qprec, precision)
    return frobenius(b) - b


def theta_on_series(f: QSeries) -> QSeries:
    """theta(f) = (psi(f) - f^p)/p, the division audited (integrality claim)."""
    p = f.prime
    try:
        return (frobenius(f) - f ** p).exact_div_p(1)
    except Exception as exc:
        raise NotIntegral(f"theta is not integral on this series: {exc}") from exc


def express_in_base(target: QSeries, base: QSeries) -> list[PadicInt]:
    """Coefficients d_k with target = sum d_k base^k to the common q-precision.

    The base must be unit*q + O(q^2); the solve is triangular and each d_k
    is a p-adic integer by construction (exact arithmetic throughout).
    """
    m = target._align(base)
    if not base.coeffs[0].is_zero():
        raise BaseNotInvertible("base must have zero constant term")
    if not base.coeffs[1].is_unit():
        raise BaseNotInvertible("base leading coefficient must be a unit")
    out = [target.coeffs[0]]
    residual = target - QSeries.constant(target.prime, target.coeffs[0], m)
    base_pow = base.truncate(m)
    for k in range(1, m):
        lead = base_pow.coeffs[k]
        d = residual.coeffs[k] * lead.unit_inverse()
        out.append(d)
        residual = residual - base_pow.scale(d)
        if k + 1 < m:
            base_pow = base_pow * base
    return out


def compose(coeffs: list[PadicInt], base: QSeries) -> QSeries:
    """sum coeffs[k] * base^k, truncated to the base's q-precision."""
    prime = base.prime
    prec = min(min(c.precision for c in coeffs), base.min_precision())
    acc = QSeries.constant(prime, zero(prime, prec), base.qprec)
    pow_k = QSeries.constant(prime, one(prime, prec), base.qprec)
    for k, c in enumerate(coeffs):
        acc = acc + pow_k.scale(c)
        if k + 1 < len(coeffs):
            pow_k = pow_k * base
    return acc


def render_coefficients(coeffs: list[PadicInt]) -> str:
    """Canonical text for a coefficient list (golden file format)."""
    lines = [f"c{k}: {c.residue} mod {c.prime}^{c.precision}" for k, c in enumerate(coeffs)]
    return "\n".join(lines) + "\n"
