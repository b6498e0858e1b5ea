"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class KGraphError(Exception):
    """Base class for all errors raised by kgideals."""


# -- validation of k-graph presentations ---------------------------------


class ValidationError(KGraphError):
    """The presentation does not describe a k-graph."""


class DuplicateId(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class SquareEndpointMismatch(ValidationError):
    pass


class SquareNotBijective(ValidationError):
    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class AssociativityViolation(ValidationError):
    def __init__(self, message: str, triple: tuple[str, str, str] | None = None):
        super().__init__(message)
        self.triple = triple


# -- path calculus --------------------------------------------------------


class NotComposable(KGraphError):
    pass


class DegreeOutOfRange(KGraphError):
    pass


# -- families and lattices ------------------------------------------------


class NotATFamily(KGraphError):
    pass


class NotAnInvariantFamily(KGraphError):
    pass


class KindMismatch(KGraphError):
    pass


class NotInLattice(KGraphError):
    pass


class BudgetExceeded(KGraphError):
    def __init__(self, message: str, component: str | None = None):
        super().__init__(message)
        self.component = component


class InternalValidationFailure(KGraphError):
    """A construction that must yield a k-graph did not. Always a bug."""


# -- file formats ---------------------------------------------------------


class FormatError(KGraphError):
    pass


class GraphSyntaxError(FormatError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class SchemaError(FormatError):
    def __init__(self, message: str, field: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class VersionUnsupported(FormatError):
    pass
