"""Exception hierarchy shared by all modules."""


class DisperseError(Exception):
    """Base class for every error raised by this package."""


class InvalidModel(DisperseError, ValueError):
    pass


class UnsupportedModel(DisperseError, TypeError):
    pass


class PoleEvaluation(DisperseError, ZeroDivisionError):
    """Evaluation point lies within the guard radius of a pole."""


class SingularAtZero(DisperseError):
    """The model has a pole at omega = 0; the naive dispersion relation does not apply."""


class QuadratureFailure(DisperseError, ArithmeticError):
    pass


class ExtrapolationDiverged(DisperseError, ArithmeticError):
    pass


class NotDecayed(DisperseError, ValueError):
    """Sampled data does not vanish at the ends of its grid."""


class UnboundedSpectrum(DisperseError, ValueError):
    pass


class Overflow(DisperseError, OverflowError):
    """Result exceeds the floating point range."""
