"""Exception hierarchy.  ``exit_code`` is what the command line reports."""
from __future__ import annotations


class PolyIHError(Exception):
    exit_code = 2


class InputError(PolyIHError):
    exit_code = 2


class GuardExceeded(PolyIHError):
    exit_code = 3


class ComputationError(PolyIHError):
    exit_code = 2


class _Named:
    def __init__(self, names, message=None):
        self.names = list(names)
        super().__init__(message or f"{type(self).__name__}: {', '.join(self.names)}")


class Redundant(_Named, InputError):
    pass


class Unbounded(InputError):
    pass


class LowerDimensional(InputError):
    pass


class DuplicateName(_Named, InputError):
    pass


class ParseError(InputError):
    pass


class UnknownBuiltin(InputError):
    pass


class UnknownSubcommand(InputError):
    pass


class DimensionTooLarge(GuardExceeded):
    pass


class OrderingGuard(GuardExceeded):
    pass


class Empty(ComputationError):
    pass


class FacetLost(_Named, ComputationError):
    pass


class NotSimple(InputError):
    pass


class NotStabilized(ComputationError):
    pass


class BaseMismatch(ComputationError):
    pass


class DegreeMismatch(ComputationError):
    pass


class DegreeOverflow(ComputationError):
    pass


class ZeroTopForm(ComputationError):
    pass


class NotInterior(InputError):
    pass


class NotEulerian(ComputationError):
    pass


class ClosureViolation(ComputationError):
    pass
