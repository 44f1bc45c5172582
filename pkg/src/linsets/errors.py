"""Exception hierarchy shared by every module of the package."""


class LinsetError(ValueError):
    """Base class for all errors raised by :mod:`linsets`."""


class NotPrime(LinsetError):
    pass


class SizeCapExceeded(LinsetError):
    """Raised before an enumeration whose cost exceeds the configured cap.

    ``cost`` and ``cap`` carry the computed numbers so callers can report them.
    """

    def __init__(self, what: str, cost: int, cap: int):
        super().__init__(f"{what}: cost {cost} exceeds cap {cap}")
        self.cost = cost
        self.cap = cap


class NotADivisor(LinsetError):
    pass


class ContextMismatch(LinsetError):
    pass


class ZeroPolynomial(LinsetError):
    pass


class PreconditionViolated(LinsetError):
    pass


class IrreducibilityUnverified(LinsetError):
    pass


class ProfileInvalid(LinsetError):
    pass
