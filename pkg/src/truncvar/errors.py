"""Exception hierarchy.

Every error raised for bad user input derives from :class:`TruncVarError`,
which the CLI maps to exit status 2.
"""


class TruncVarError(ValueError):
    """Base class for invalid-input errors."""


class OutOfDomain(TruncVarError):
    pass


class NonIncreasingTimes(TruncVarError):
    pass


class LengthMismatch(TruncVarError):
    pass


class NonFiniteValue(TruncVarError):
    pass


class HorizonMismatch(TruncVarError):
    pass


class BoundaryOrderViolation(TruncVarError):
    def __init__(self, index, alpha=None, beta=None):
        self.index = int(index)
        msg = f"BoundaryOrderViolation: alpha > beta at interleaved index {self.index}"
        if alpha is not None:
            msg += f" (alpha={alpha!r}, beta={beta!r})"
        super().__init__(msg)


class StartOutOfBand(TruncVarError):
    def __init__(self, xi0, lo, hi):
        self.xi0, self.lo, self.hi = float(xi0), float(lo), float(hi)
        super().__init__(
            f"StartOutOfBand: xi0={self.xi0!r} not in admissible interval "
            f"[{self.lo!r}; {self.hi!r}]"
        )


class InvalidExponent(TruncVarError):
    pass


class OracleTooLarge(TruncVarError):
    pass


class KnotRequired(TruncVarError):
    pass


class InvalidSpec(TruncVarError):
    pass


class InvalidGrid(TruncVarError):
    pass


class InsufficientData(TruncVarError):
    pass


class InvalidThreshold(TruncVarError):
    """Truncation level or band width out of range."""
