"""Exception types shared across the package."""


class EpsimError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(EpsimError, ValueError):
    """A physical parameter is non-finite or violates its constraint."""


class ExceptionalPointError(EpsimError):
    """Operation requires a non-degenerate spectrum but the generator is at
    (or numerically indistinguishable from) the exceptional point."""


class NotDefectiveError(EpsimError):
    """A Jordan-chain construction was requested away from the exceptional
    point, where the generator is diagonalizable."""


class NumericalDegeneracyError(EpsimError):
    """A linear system that should be consistent failed its residual check."""


class UndefinedPhaseError(EpsimError):
    """The interference phase is undefined (one eigenmode amplitude is zero)."""


class DegenerateInputError(EpsimError):
    """An observable is undefined for the given input (e.g. zero input energy)."""


class DomainError(EpsimError, ValueError):
    """A coordinate lies outside the domain of a schedule or trajectory."""


class DivergenceError(EpsimError):
    """The nonlinear integrator produced a non-finite state."""

    def __init__(self, z: float, message: str | None = None):
        self.z = z
        super().__init__(message or f"integration diverged at z = {z!r}")


class ConfigError(EpsimError, ValueError):
    """A config file failed to parse or validate."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        ctx = ", ".join(
            s for s in (f"key {key!r}" if key else "", f"line {line}" if line else "") if s
        )
        super().__init__(f"{message} ({ctx})" if ctx else message)
