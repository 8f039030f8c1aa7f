"""Exception hierarchy shared by the library and the CLI.

Every domain error carries a stable ``code`` (the class name) so the CLI can
emit machine-readable reports, plus an optional ``index`` pointing at the
degree or position where the failure was detected.
"""

from __future__ import annotations


class LowerOpError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    def __init__(self, message: str = "", index: int | None = None):
        super().__init__(message)
        self.message = message
        self.index = index

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.index is not None:
            out["index"] = self.index
        return out


class FieldMismatch(LowerOpError):
    pass


class DegenerateAffine(LowerOpError):
    pass


class DegreeViolation(LowerOpError):
    pass


class HorizonExceeded(LowerOpError):
    pass


class NotDegreeNonincreasing(LowerOpError):
    pass


class BadParameter(LowerOpError):
    pass


class NotIsomorphism(LowerOpError):
    pass


class NotLowering(LowerOpError):
    """No lowering order fits the operator on its horizon.

    ``condition`` is one of ``"a"``, ``"b"``, ``"c"``, ``"relaxed"``,
    ``"zero"`` or ``"profile"``.
    """

    def __init__(self, message: str = "", index: int | None = None, condition: str | None = None):
        super().__init__(message, index)
        self.condition = condition

    def to_dict(self) -> dict:
        out = super().to_dict()
        if self.condition is not None:
            out["condition"] = self.condition
        return out


class EmptyResult(LowerOpError):
    pass


class NeedMoreCoeffs(LowerOpError):
    pass


class NotMonic(LowerOpError):
    pass


class NoClassicalSolution(LowerOpError):
    pass


class NoSolution(LowerOpError):
    pass


class InadmissiblePair(LowerOpError):
    pass


class NotRegular(LowerOpError):
    pass


class NotAFixedPoint(LowerOpError):
    pass


class NoFixedPointSequence(LowerOpError):
    pass
