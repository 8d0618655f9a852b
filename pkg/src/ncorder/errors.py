"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class NCOrderError(Exception):
    """Base class for all errors raised by ncorder."""


class DivisionByZero(NCOrderError, ZeroDivisionError):
    pass


class MissingBinding(NCOrderError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"parameter {self.name!r} is not bound"


class PoleAtEnv(NCOrderError, ZeroDivisionError):
    pass


class UnknownParameter(NCOrderError, ValueError):
    pass


class IrrationalRoots(NCOrderError, ValueError):
    pass


class DegreeError(NCOrderError, ValueError):
    pass


class ExponentKindError(NCOrderError, ValueError):
    pass


class ContextMismatch(NCOrderError, ValueError):
    pass


class ConstantTermError(NCOrderError, ValueError):
    pass


class TruncationError(NCOrderError, ArithmeticError):
    pass


class NoNormalForm(NCOrderError, ArithmeticError):
    """The grade solver met a singular linear system.

    ``grade`` is the total degree at which it happened and ``witness`` a
    word whose normal form could not be determined.
    """

    def __init__(self, grade: int, witness: str, detail: str = ""):
        self.grade = grade
        self.witness = witness
        self.detail = detail
        msg = f"no normal form at grade {grade} (witness {witness})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ExpressionSyntaxError(NCOrderError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class UnknownCheck(NCOrderError, KeyError):
    pass


class NotTransformable(NCOrderError, ValueError):
    pass
