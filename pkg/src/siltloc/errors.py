"""Exception types shared across the package."""


class SiltlocError(Exception):
    """Base class for all errors raised by this package."""


class Inconsistent(SiltlocError):
    """A linear system has no solution."""


class NotFiniteDimensional(SiltlocError):
    """Path reduction did not terminate below the configured length cap."""


class NotAdmissible(SiltlocError):
    """A relation involves paths of length less than two."""


class NotInjective(SiltlocError):
    """A map claimed to be an inclusion has a nonzero kernel."""


class Undecided(SiltlocError):
    """A witness search exhausted its attempt budget without a verdict."""


class NotInBL(SiltlocError):
    """An object of the morphism category does not have projective ends."""


class PresentationMismatch(SiltlocError):
    """The cokernel of a presentation is not isomorphic to the given module."""


class OracleDisagreement(SiltlocError):
    """Two independent computations of the same quantity disagree."""


class MissingIndecomposableList(SiltlocError):
    """A check needs the complete list of indecomposables, which was not supplied."""


class Diverged(SiltlocError):
    """An approximation sequence did not stabilise within its caps."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class Divergent(Diverged):
    """A reflection did not stabilise within its caps."""


class NotIdempotentIdeal(SiltlocError):
    """The two-sided ideal generated by an idempotent is not idempotent."""


class NotTwoSidedIdeal(SiltlocError):
    """A subspace expected to be a two-sided ideal is not one."""


class PdTooLarge(SiltlocError):
    """A module has projective dimension greater than one."""


class NotStabilised(SiltlocError):
    """A bounded rewriting computation did not stabilise."""


class ParseError(SiltlocError):
    """Malformed input text, with 1-based line and column."""

    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
