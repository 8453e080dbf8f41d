"""Exception hierarchy shared by all modules."""


class PrimeProdError(Exception):
    pass


class DomainError(PrimeProdError, ValueError):
    """An argument is outside the domain of an operation."""


class ValuationError(DomainError):
    """Series division where the numerator vanishes to lower order than the denominator."""


class ZeroDivisor(DomainError, ZeroDivisionError):
    """Division by a series (or value) that is identically zero."""


class RangeError(PrimeProdError, IndexError):
    pass


class PlanError(PrimeProdError):
    """The truncation bound cannot be met, e.g. R * p_m <= 1."""


class ValidationError(PrimeProdError, ValueError):
    pass


class UnknownConstant(PrimeProdError, KeyError):
    pass


class ParseError(PrimeProdError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position
