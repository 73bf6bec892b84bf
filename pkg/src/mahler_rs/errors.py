"""Exception types shared across the package."""


class MahlerError(Exception):
    """Base class for input and precision problems."""


class InvalidEquation(MahlerError, ValueError):
    """The equation is not well formed (e.g. a_0 = 0 or a_m = 0)."""


class PrecisionError(MahlerError):
    """A truncated coefficient is not known far enough.

    ``coefficient`` is the index i of a_i (when known) and ``required`` the
    exponent below which all terms of that coefficient must be known.
    """

    def __init__(self, message: str, coefficient: int | None = None, required=None):
        super().__init__(message)
        self.coefficient = coefficient
        self.required = required
