"""Exception types shared across the package."""


class SupercohomError(Exception):
    pass


class FieldMismatch(SupercohomError):
    pass


class DivisionByZero(SupercohomError, ZeroDivisionError):
    pass


class NotCyclotomic(SupercohomError):
    pass


class LengthMismatch(SupercohomError):
    pass


class DegreeMismatch(SupercohomError):
    pass


class BasisMismatch(SupercohomError):
    pass


class OracleDisagreement(SupercohomError):
    """Two independent computations of the same quantity disagreed.

    This always indicates a bug (usually a sign error), never bad input.
    """


class WrongBidegree(SupercohomError):
    pass


class DegreeOutOfRange(SupercohomError):
    pass


class AllZero(SupercohomError):
    pass


class NotValidated(SupercohomError):
    pass


class NotCocycle(SupercohomError):
    pass


class ParseError(SupercohomError):
    pass


class ValidationError(SupercohomError):
    pass
