"""Lambda-operations for torsion-free p-complete rings with leaky Adams structure.

The leaky structure declares psi^k = id for k prime to p and lets
psi^(p^j) come from the theta-algebra (so psi^m for m = u * p^j acts as
psi^(p^j)).  On a torsion-free ring this pins down a unique lambda-ring
structure; we compute it through Newton's identity

    n * lambda^n(x) = sum_{i=1..n} (-1)^(i-1) lambda^(n-i)(x) psi^i(x),

auditing the division by n.  On Z_p, where every Adams operation is the
identity, this reproduces lambda^n(x) = binomial(x, n).
"""

from __future__ import annotations

from .errors import PrecisionExhausted
from .padic import PadicInt, one, padic_binomial, vp_int
from .theta import ThetaElement, ThetaPresentation, psi_p


def leaky_psi(a: ThetaElement, k: int) -> ThetaElement:
    """psi^k under the leaky rule: only the p-part of k acts."""
    if k < 1:
        raise ValueError("Adams index must be positive")
    out = a
    for _ in range(vp_int(k, a.pres.prime) or 0):
        out = psi_p(out)
    return out


def lambda_list(a: ThetaElement, n: int) -> list[ThetaElement]:
    """[lambda^0(a), ..., lambda^n(a)] by the Newton recursion."""
    pres = a.pres
    lams = [pres.one()]
    psis = [None, a]  # psi^i(a), index 1..n; psi^1 = a under the leaky rule
    for i in range(2, n + 1):
        psis.append(leaky_psi(a, i))
    for k in range(1, n + 1):
        acc = pres.zero()
        for i in range(1, k + 1):
            term = lams[k - i] * psis[i]
            acc = acc + term if i % 2 == 1 else acc - term
        lams.append(ThetaElement(pres, acc.poly.exact_div_int(k)))
    return lams


def lambda_n(a: ThetaElement, n: int) -> ThetaElement:
    return lambda_list(a, n)[n]


def lambda_scalar(x: PadicInt, n: int) -> PadicInt:
    """lambda^n on Z_p with the leaky structure: the binomial coefficient.

    Also computable through the same Newton recursion with all psi = id;
    the closed form is binomial(x, n) and the two agree (tested).
    """
    return padic_binomial(x, n)


def lambda_scalar_newton(x: PadicInt, n: int) -> PadicInt:
    """Newton-recursion route on Z_p, kept as the independent second path."""
    lams = [one(x.prime, x.precision)]
    for k in range(1, n + 1):
        acc = PadicInt(x.prime, 0, x.precision)
        for i in range(1, k + 1):
            term = lams[k - i] * x
            acc = acc + term if i % 2 == 1 else acc - term
        lams.append(acc.exact_div(k))
    return lams[n]


def cartan_product(lams_x: list, lams_y: list, n: int):
    """lambda^n(x + y) assembled from lambda lists of x and y.

    Works for both ThetaElement and PadicInt lists; needs entries 0..n.
    """
    if len(lams_x) <= n or len(lams_y) <= n:
        raise PrecisionExhausted(f"need lambda^0..lambda^{n} of both arguments")
    total = None
    for i in range(n + 1):
        term = lams_x[i] * lams_y[n - i]
        total = term if total is None else total + term
    return total


class LambdaContext:
    """Leaky lambda-structure over either Z_p scalars or a theta-presentation."""

    def __init__(self, algebra: ThetaPresentation | None = None,
                 prime: int | None = None, precision: int | None = None):
        if algebra is None and (prime is None or precision is None):
            raise ValueError("scalar context needs a prime and precision")
        self.algebra = algebra
        self.prime = algebra.prime if algebra else prime
        self.precision = algebra.precision if algebra else precision

    def lambda_n(self, a, n: int):
        if self.algebra is not None:
            return lambda_n(a, n)
        return lambda_scalar(a, n)

    def lambda_list(self, a, n: int) -> list:
        if self.algebra is not None:
            return lambda_list(a, n)
        return [lambda_scalar(a, k) for k in range(n + 1)]
