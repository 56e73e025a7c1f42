"""Exception types raised by the library.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch that.
"""


class CreutzError(ValueError):
    """Base class for library errors."""


class InvalidSizeError(CreutzError):
    pass


class NoGaplessModeError(CreutzError):
    """Raised when M >= 2K, where the band gap never closes."""


class IncommensurateError(CreutzError):
    """arccos(M/2K)/pi is not a recognizable rational number."""


class ExcludedModeError(CreutzError):
    """The zero-echo constraint is undefined at k = 0 and k = pi."""


class NoSolutionError(CreutzError):
    """No wave number on the grid admits an exact echo zero."""


class NoCriticalTimeError(CreutzError):
    pass


class NoAsymptoteError(CreutzError):
    pass


class InvalidVarianceError(CreutzError):
    pass


class InvalidEnsembleError(CreutzError):
    pass
