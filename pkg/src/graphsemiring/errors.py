"""Exception types shared across the package."""


class GraphAlgebraError(Exception):
    """Base class for all library-specific errors."""


class SizeLimitExceeded(GraphAlgebraError):
    """An operation exceeded a configured brute-force or resource bound."""


class TruncationExceeded(GraphAlgebraError):
    """A term fell outside the declared degree bound of a series."""


class EmptyRootSet(GraphAlgebraError):
    """A hierarchical-product operand has a component without roots."""


class NotSinglyRooted(GraphAlgebraError):
    """A rooted-product operand has a component whose root set is not one vertex."""


class LoopsNotAllowed(GraphAlgebraError):
    """A loopless-only product received a graph with loops."""


class UnsupportedDomain(GraphAlgebraError):
    """The input lies outside the domain on which the operation is defined."""


class FactorizationNotUnique(GraphAlgebraError):
    """Distinct prime factorizations with different normal forms were found."""


class RegistryMismatch(GraphAlgebraError):
    """Operands belong to different letter registries."""


class IncomparableVariant(GraphAlgebraError):
    """Comparison requested for a coefficient variant without a strict order."""


class NotDivisible(GraphAlgebraError):
    """Exact quotient does not exist."""


class ZeroDivisor(GraphAlgebraError):
    """Division by the zero series or the empty family."""


class NoRoot(GraphAlgebraError):
    """The requested n-th root does not exist."""


class GrfParseError(GraphAlgebraError):
    """Malformed GRF, monomial, or series text."""
