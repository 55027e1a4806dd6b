"""Exception hierarchy shared by every module of the package."""


class FourqError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(FourqError, ValueError):
    """A user-supplied parameter (q, lambda, vector, file) is unusable."""


class MismatchedGroupError(FourqError, ValueError):
    """Operands live in dihedral groups with different q."""


class InvalidConstructionError(FourqError, ValueError):
    """An object was built from data violating its invariants (e.g. a zero denominator)."""


class InvariantViolation(FourqError, ArithmeticError):
    """A quantity that must be a (nonnegative) integer came out otherwise.

    This always indicates an internal arithmetic bug, never bad user input.
    """


class PrecisionError(FourqError, ValueError):
    """Requested numeric precision exceeds what the evaluator supports."""


class PoleError(FourqError, ZeroDivisionError):
    """Evaluation of a rational function at a pole."""


class NonlinearFixedPointUnsupported(FourqError, NotImplementedError):
    """Fixed-point problem with a nonzero C-block generator."""


class SingularActionError(FourqError, ArithmeticError):
    """A + ZC is singular at the requested Siegel point."""
