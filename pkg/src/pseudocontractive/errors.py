"""Exception hierarchy shared by every module of the package."""


class PseudocontractiveError(Exception):
    """Base class for all errors raised by this package."""


class RejectedInputError(PseudocontractiveError, ValueError):
    """Input violates an operation's precondition (shape, range, bounds)."""


class InfeasibleSetError(PseudocontractiveError, ValueError):
    """A convex set descriptor has no feasible point."""


class NonConvergenceError(PseudocontractiveError, RuntimeError):
    """An iterative routine hit its iteration cap before meeting its tolerance.

    The best estimate reached so far is kept on ``estimate``.
    """

    def __init__(self, message, estimate=None, iterations=None):
        super().__init__(message)
        self.estimate = estimate
        self.iterations = iterations


class InconsistentDistancesError(PseudocontractiveError, ValueError):
    """Distances violate the metric envelope and cannot come from a norm."""


class DivisionRegimeError(PseudocontractiveError, ZeroDivisionError):
    """A contraction constant is requested where its denominator is not positive."""


class BranchMismatchError(PseudocontractiveError, ValueError):
    """Distances do not fall in the requested nonexpansive/expansive branch."""


class UndefinedMapError(PseudocontractiveError, ValueError):
    """A point lies outside every region of a piecewise map."""


class CyclicityError(PseudocontractiveError, ValueError):
    """A cyclic map sent a point of one set outside the other set."""

    def __init__(self, message, index=None, point=None):
        super().__init__(message)
        self.index = index
        self.point = point


class ScenarioError(PseudocontractiveError, ValueError):
    """A scenario file failed to parse or validate.

    ``field`` is a dotted path into the document, ``invariant`` names the
    violated rule and ``line`` is set for syntax errors.
    """

    def __init__(self, message, field=None, invariant=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if invariant is not None:
            where.append(f"invariant {invariant!r}")
        full = f"{message} ({', '.join(where)})" if where else message
        super().__init__(full)
        self.field = field
        self.invariant = invariant
        self.line = line
