"""Exception types shared across the package."""


class DomainError(ValueError):
    """A documented precondition of an operation does not hold."""


class SingularQuadric(DomainError):
    """Quadric of non-maximal rank where a full-rank one is required."""


class UnsupportedQuadric(DomainError):
    """Operation only implemented for the expected normal form."""


class BadReduction(ArithmeticError):
    """A denominator shares a factor with the modulus."""


class Unstable(RuntimeError):
    """Truncated computation failed to stabilize below the degree cap."""


class Infeasible(RuntimeError):
    """A linear system that was expected to be consistent is not."""


class DegenerateParameters(DomainError):
    """Family parameters collided (e.g. a point landing on the line)."""


class NotLinearlyNormal(DomainError):
    """Scheme does not span the ambient space, so the quadric count
    would be ambiguous."""


class NotPolynomialMap(RuntimeError):
    """Samples do not interpolate to a polynomial map of bounded degree."""
