"""Exception types shared across the library.

Every failure mode that a verification routine can report is a named
exception.  NotDivisible deserves special mention: it fires when an exact
division by a power of p is requested and the operand is not divisible.
Several algorithms in this library perform divisions that are guaranteed
to succeed by an integrality theorem, so a NotDivisible escaping from one
of them is itself evidence against the theorem (or a bug), and the test
suite treats it that way.
"""


class PadicError(Exception):
    """Base class for all library errors."""


class PrimeMismatch(PadicError):
    """Operands live over different primes or registries."""


class NotDivisible(PadicError):
    """Exact division by p^k requested but valuation is too small."""


class PrecisionExhausted(PadicError):
    """Too few guard digits remain to perform the operation."""


class NotAUnit(PadicError):
    """Multiplicative inverse requested for a non-unit."""


class OutsideDomain(PadicError):
    """Argument outside the convergence domain of a p-adic series."""


class LevelCapExceeded(PadicError):
    """An operation needs a level generator above the presentation cap."""


class NonTerminating(PadicError):
    """A rewrite rule fails the well-founded measure check."""


class IncompleteSampleWindow(PadicError):
    """Sample window too short to certify a complete coefficient list."""


class WindowTooSmall(PadicError):
    """Digit-basis conversion window cannot represent the function."""


class BaseNotInvertible(PadicError):
    """Series re-expansion base is not of the form unit*q + O(q^2)."""


class NotIntegral(PadicError):
    """A coefficient that must lie in Z_p does not."""


class UnknownCheck(PadicError):
    """CLI asked to run a check name that is not registered."""


class MissingGolden(PadicError):
    """A golden file is absent and regeneration was not requested."""
