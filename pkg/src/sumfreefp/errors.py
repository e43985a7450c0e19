"""Domain errors raised by the library.

Every error is a subclass of :class:`SumfreeError`, so callers (and the CLI,
which maps them to exit code 2) can catch one type.
"""


class SumfreeError(Exception):
    """Base class for all domain errors."""


class NotPrime(SumfreeError):
    pass


class PrimeTooSmall(SumfreeError):
    pass


class PrimeTooLarge(SumfreeError):
    """Desk-scale cap p <= 2**20 exceeded."""


class IndexDoesNotDivide(SumfreeError):
    pass


class OutOfRange(SumfreeError):
    pass


class PrincipalCharacter(SumfreeError):
    pass


class ModulusTooLarge(SumfreeError):
    pass


class UnsupportedParity(SumfreeError):
    pass


class EmptySet(SumfreeError):
    pass


class DimensionMismatch(SumfreeError):
    pass


class UnsupportedArity(SumfreeError):
    pass


class CapExceeded(SumfreeError):
    pass


class ZeroInSet(SumfreeError):
    pass


class OddCharacter(SumfreeError):
    pass


class NotInDualSet(SumfreeError):
    pass


class UnknownSuite(SumfreeError):
    pass


class InvalidConfig(SumfreeError):
    pass
