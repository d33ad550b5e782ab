"""Exception hierarchy shared by every module of the package."""


class CharlierError(Exception):
    """Base class for all errors raised by ``charlier_zeros``."""


class DomainError(CharlierError, ValueError):
    """An argument lies outside the documented domain (n = 0, a <= 0, ...)."""


class EvaluationAtRootError(CharlierError, ZeroDivisionError):
    """A log-derivative was requested at (numerically) a zero of p_n."""


class BranchCutError(CharlierError, ValueError):
    """A principal logarithm was evaluated on its cut or at a singular point."""


class DegenerateSaddleError(CharlierError, ValueError):
    """The two saddle points coincide and a ratio formula is 0/0."""


class AttractorError(CharlierError, ValueError):
    """The limiting Cauchy transform was requested on its support."""


class BracketError(CharlierError, RuntimeError):
    """A sign-change bracket required by a root solve was not found."""


class NonConvergenceError(CharlierError, RuntimeError):
    """An iteration exhausted its budget without meeting its tolerance."""


class InvariantViolation(CharlierError, AssertionError):
    """A post-hoc structural check on computed data failed."""


class BoundaryHitError(CharlierError, RuntimeError):
    """A zero sits on (or too close to) an argument-principle contour."""


class NonIntegralWindingError(CharlierError, RuntimeError):
    """The accumulated boundary phase is not close to an integer multiple of 2*pi."""


class InconsistencyError(CharlierError, RuntimeError):
    """Two independent routes to the same quantity disagree."""
