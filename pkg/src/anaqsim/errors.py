"""Exception hierarchy shared by all modules."""


class AnaqsimError(Exception):
    pass


class InvalidArgumentError(AnaqsimError, ValueError):
    pass


class CapacityError(AnaqsimError):
    """Requested system exceeds the dense-matrix qubit limit."""


class SingularCouplingError(AnaqsimError, ValueError):
    pass


class FitDegenerateError(AnaqsimError, ValueError):
    pass


class NotAvailableError(AnaqsimError):
    """No closed form exists for the requested (method, term) pair."""


class UnsupportedError(AnaqsimError):
    pass


class NumericalFailureError(AnaqsimError, ArithmeticError):
    pass
