"""Exception hierarchy.

Genericity failures (anything a sampler should reject and redraw) derive from
:class:`GenericityError`; everything else signals misuse or a numerical fault.
"""


class CocycleError(Exception):
    """Base class for all errors raised by this package."""


class DetDrift(CocycleError):
    """A matrix left SL(2) beyond the determinant tolerance."""


class FieldMismatch(CocycleError):
    """An operation that only exists over the reals received complex data."""


class NotInvariant(CocycleError):
    """A function handed to an induction map failed its invariance pre-check."""


class UnknownSuite(CocycleError):
    pass


class SamplingExhausted(CocycleError):
    pass


class GenericityError(CocycleError, ValueError):
    """Input lies (numerically) on a degeneracy set of an a.e.-defined formula.

    ``margin`` names the violated margin so callers can report it.
    """

    margin = "nonzero_margin"

    def __init__(self, message: str = "", margin: str | None = None):
        super().__init__(message)
        if margin is not None:
            self.margin = margin


class Degenerate(GenericityError):
    pass


class NearZeroParameter(GenericityError):
    pass


class ZeroVector(GenericityError):
    pass


class DependentPair(GenericityError):
    margin = "indep_margin"


class CoincidentPoints(GenericityError):
    margin = "distinct_margin"


class DegenerateTriple(GenericityError):
    margin = "orientation_margin"


class DegenerateConfiguration(GenericityError):
    margin = "distinct_margin"


class InfiniteCoordinate(GenericityError):
    margin = "chart_margin"
