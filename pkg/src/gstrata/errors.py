"""Exception hierarchy shared across the package."""


class GstrataError(Exception):
    """Base class for all library-specific errors."""


class MixedField(GstrataError):
    """Operands carry different base fields."""


class MixedAmbient(GstrataError):
    """Operands live in ambient spaces of different dimension."""


class ShapeMismatch(GstrataError):
    """Matrix shapes are incompatible for the requested operation."""


class RankDeficient(GstrataError):
    """A matrix required to have full column rank does not."""


class NoCommonComplement(GstrataError):
    """No subspace complements every member of the configuration.

    Possible over small finite fields; the caller should retry with a
    larger prime.
    """


class NotInChart(GstrataError):
    """The subspace meets the chart's distinguished complement nontrivially."""


class EmptyStratum(GstrataError):
    """The requested stratum contains no configuration."""


class RankTooLarge(GstrataError):
    """Requested rank exceeds min(rows, cols)."""


class BudgetExceeded(GstrataError):
    """An enumeration would visit more states than the configured budget."""


class InsufficientPoints(GstrataError):
    """Too few sample primes to pin down the interpolating polynomial."""


class NonPolynomialFit(GstrataError):
    """A held-out evaluation disagrees with the interpolated polynomial."""


class NotEnoughSubspaces(GstrataError):
    """The Grassmannian over the given field has fewer points than requested."""


class MaxAttemptsExceeded(GstrataError):
    """Randomized search gave up after the configured number of attempts."""
