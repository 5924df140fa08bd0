"""Continuous cohomology of a topologically cyclic group acting on Z/p^N modules.

For a procyclic group with chosen topological generator acting by an
automorphism psi on a finitely generated Z/p^N-module, the cohomology is
concentrated in degrees 0 and 1:

    H^0 = ker(psi - 1),    H^1 = coker(psi - 1),    H^s = 0 for s >= 2,

and both are read off the Smith normal form of psi - 1.  Over the local
ring Z/p^N every entry is unit * p^v, so valuation-pivot elimination
produces U * A * V = D with U, V invertible and D diagonal with p-power
(or zero) entries.

Presets package the Adams operator psi^g acting on the real K-theory
coefficient ring in a given degree: on the 2n-th power of the Bott class
the operator is multiplication by g^n, and at p = 2 the degrees carrying
eta-torsion contribute Z/2 with trivial action.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OutsideDomain
from .padic import vp_int

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix, mod: int) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % mod for j in range(m)]
            for i in range(n)]


def smith_normal_form(matrix: Matrix, prime: int, modulus_exp: int
                      ) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U*A*V = D diagonal over Z/p^N.

    D's diagonal entries are powers of p times a unit normalized to the
    pure power (or 0); U and V are invertible mod p^N.
    """
    mod = prime ** modulus_exp
    a = [[x % mod for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def val(x: int) -> int:
        return modulus_exp if x % mod == 0 else vp_int(x % mod, prime)

    for corner in range(min(rows, cols)):
        # pick the entry of smallest valuation in the remaining block
        best, bi, bj = modulus_exp + 1, -1, -1
        for i in range(corner, rows):
            for j in range(corner, cols):
                w = val(a[i][j])
                if w < best:
                    best, bi, bj = w, i, j
        if bi < 0 or best >= modulus_exp:
            break
        if bi != corner:
            a[corner], a[bi] = a[bi], a[corner]
            u[corner], u[bi] = u[bi], u[corner]
        if bj != corner:
            for row in a:
                row[corner], row[bj] = row[bj], row[corner]
            for row in v:
                row[corner], row[bj] = row[bj], row[corner]
        pivot = a[corner][corner]
        unit = pivot // prime ** best
        unit_inv = pow(unit, -1, mod)
        # scale the pivot row to make the pivot a pure power of p
        a[corner] = [x * unit_inv % mod for x in a[corner]]
        u[corner] = [x * unit_inv % mod for x in u[corner]]
        pw = prime ** best
        for i in range(rows):
            if i != corner and a[i][corner]:
                q = (a[i][corner] // pw) % mod
                a[i] = [(a[i][j] - q * a[corner][j]) % mod for j in range(cols)]
                u[i] = [(u[i][j] - q * u[corner][j]) % mod for j in range(rows)]
        for j in range(cols):
            if j != corner and a[corner][j]:
                q = (a[corner][j] // pw) % mod
                for row in a:
                    row[j] = (row[j] - q * row[corner]) % mod
                for row in v:
                    row[j] = (row[j] - q * row[corner]) % mod
    return a, u, v


def diagonal_exponents(d: Matrix, prime: int, modulus_exp: int) -> list[int]:
    """p-exponents of the diagonal entries (modulus_exp for a zero entry)."""
    mod = prime ** modulus_exp
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        x = d[i][i] % mod
        out.append(modulus_exp if x == 0 else vp_int(x, prime))
    return out


@dataclass
class CyclicAction:
    """A topological-generator action on (Z/p^modulus)^rank."""

    prime: int
    modulus_exp: int
    rank: int
    operator: Matrix = field(default=None)

    def __post_init__(self):
        if self.operator is None:
            self.operator = _identity(self.rank)
        mod = self.prime ** self.modulus_exp
        self.operator = [[x % mod for x in row] for row in self.operator]
        # the generator must act invertibly
        d, _, _ = smith_normal_form(self.operator, self.prime, 1)
        if any(e != 0 for e in diagonal_exponents(d, self.prime, 1)):
            raise OutsideDomain("operator is not invertible mod p")


def h0_h1(action: CyclicAction) -> tuple[list[int], list[int]]:
    """Cyclic-order exponents of H^0 and H^1 of the action.

    Both are computed from the Smith form of psi - 1: a diagonal entry
    p^e contributes Z/p^e to the kernel (as the p^(N-e)-torsion of one
    cyclic summand) and Z/p^e to the cokernel.  Zero exponents are
    dropped.
    """
    mod = action.prime ** action.modulus_exp
    a = [[(action.operator[i][j] - (1 if i == j else 0)) % mod
          for j in range(action.rank)] for i in range(action.rank)]
    d, _, _ = smith_normal_form(a, action.prime, action.modulus_exp)
    exps = [e for e in diagonal_exponents(d, action.prime, action.modulus_exp) if e > 0]
    exps.sort()
    return list(exps), list(exps)


def cohomology(action: CyclicAction, degree: int) -> list[int]:
    """H^degree; zero in degrees >= 2 because the group has dimension one."""
    if degree < 0:
        raise ValueError("negative cohomological degree")
    if degree >= 2:
        return []
    h0, h1 = h0_h1(action)
    return h0 if degree == 0 else h1


def ko_preset(prime: int, degree: int, modulus_exp: int, g: int | None = None
              ) -> CyclicAction:
    """The standard psi^g action on the degree-t coefficients of KO.

    p = 2: degrees 0 mod 4 carry Z/2^N with psi^g = g^(t/2); degrees 1, 2
    mod 8 carry the eta-torsion Z/2 with trivial action.  p odd: the
    Adams summand has Z/p^N in degrees divisible by 2(p-1), with
    psi^g = g^(t/2).  Anything else is zero and rejected.
    """
    if g is None:
        g = 3 if prime == 2 else 2
    if prime == 2:
        r = degree % 8
        if r in (1, 2):
            return CyclicAction(2, 1, 1, [[1]])
        if r in (0, 4):
            op = pow(g, degree // 2, 2 ** modulus_exp)
            return CyclicAction(2, modulus_exp, 1, [[op]])
        raise OutsideDomain(f"KO_{degree} is zero at p=2")
    if prime == 3:
        if degree % (2 * (prime - 1)) == 0:
            op = pow(g, degree // 2, prime ** modulus_exp)
            return CyclicAction(prime, modulus_exp, 1, [[op]])
        raise OutsideDomain(f"the Adams summand is zero in degree {degree} at p={prime}")
    raise OutsideDomain("presets cover p = 2 and 3")
