"""Exception hierarchy.

Every error carries a stable ``code`` string; the command line front end
prints it and maps the whole family to exit status 2.
"""

from __future__ import annotations


class RtaError(Exception):
    code = "E_GENERIC"


class ValidationError(RtaError, ValueError):
    code = "E_VALIDATION"


class DivisionByZero(RtaError, ZeroDivisionError):
    code = "E_DIVISION_BY_ZERO"


class MixedField(RtaError, TypeError):
    code = "E_MIXED_FIELD"


class ZeroInput(ValidationError):
    code = "E_ZERO_INPUT"


class PoleAtPoint(RtaError, ArithmeticError):
    code = "E_POLE"


class ParseError(ValidationError):
    code = "E_PARSE"

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None and text is not None:
            message = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        elif position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class NotAnAutomorphism(ValidationError):
    code = "E_NOT_AUTOMORPHISM"


class NotHopfFamily(ValidationError):
    code = "E_NOT_HOPF"


class UnitMissing(ValidationError):
    code = "E_UNIT_MISSING"


class NotFree(ValidationError):
    code = "E_NOT_FREE"


class NotDecreasing(ValidationError):
    code = "E_NOT_DECREASING"


class StepLimit(RtaError):
    code = "E_STEP_LIMIT"


class NotStable(ValidationError):
    code = "E_NOT_STABLE"


class NotAdmissible(ValidationError):
    code = "E_NOT_ADMISSIBLE"


ERROR_CODES = {
    cls.code: cls.__name__
    for cls in (
        RtaError,
        ValidationError,
        DivisionByZero,
        MixedField,
        ZeroInput,
        PoleAtPoint,
        ParseError,
        NotAnAutomorphism,
        NotHopfFamily,
        UnitMissing,
        NotFree,
        NotDecreasing,
        StepLimit,
        NotStable,
        NotAdmissible,
    )
}
