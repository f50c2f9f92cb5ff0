"""Exception hierarchy shared by every module of the package."""


class LatticeAmpError(Exception):
    """Base class for all errors raised by latticeamp."""


# setups
class OrderViolation(LatticeAmpError):
    pass


class OutOfBounds(LatticeAmpError):
    pass


class TickCollision(LatticeAmpError):
    pass


class EndpointMismatch(LatticeAmpError):
    pass


class NotOrComposable(LatticeAmpError):
    pass


class SetupSyntaxError(LatticeAmpError):
    """Malformed setup description; carries 1-based ``line`` and ``column``."""

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SetupSemanticError(LatticeAmpError):
    """Well-formed text describing an invalid setup."""

    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


# linear algebra and states
class DimensionMismatch(LatticeAmpError, ValueError):
    pass


class TickMismatch(LatticeAmpError):
    pass


class ZeroState(LatticeAmpError, ValueError):
    pass


class NotNormalized(LatticeAmpError, ValueError):
    pass


class NotOrthonormal(LatticeAmpError, ValueError):
    pass


class Incomplete(LatticeAmpError, ValueError):
    pass


class NotSquare(LatticeAmpError, ValueError):
    pass


class SiteCollision(LatticeAmpError, ValueError):
    pass


class RankError(LatticeAmpError, ValueError):
    pass


class DegenerateCurve(LatticeAmpError, ValueError):
    pass


class DomainError(LatticeAmpError, ValueError):
    pass


# brute-force guards
class PathExplosion(LatticeAmpError):
    pass


class TensorExplosion(LatticeAmpError):
    pass
