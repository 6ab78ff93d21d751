"""Exception types.  Every domain error carries a short machine-readable code."""
from __future__ import annotations


class CMotiveError(Exception):
    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class InvalidInput(CMotiveError, ValueError):
    code = "InvalidInput"


class ParseError(InvalidInput):
    code = "ParseError"


class NonInvertibleTau(CMotiveError):
    code = "NonInvertibleTau"


class ForbiddenZeroLocus(CMotiveError):
    code = "ForbiddenZeroLocus"


class ChardataMismatch(CMotiveError):
    code = "ChardataMismatch"


class TowerMismatch(ChardataMismatch):
    code = "TowerMismatch"


class DescentFailure(CMotiveError):
    code = "DescentFailure"


class BoundExhausted(CMotiveError):
    code = "BoundExhausted"


class SeparabilityViolation(CMotiveError):
    code = "SeparabilityViolation"


class BadAuxiliaryPlace(CMotiveError):
    code = "BadAuxiliaryPlace"


class NotTauStable(CMotiveError):
    code = "NotTauStable"


class PrecisionTooLow(CMotiveError):
    code = "PrecisionTooLow"


class ExtensionCapExceeded(CMotiveError):
    code = "ExtensionCapExceeded"


class ReducibleInput(CMotiveError):
    code = "ReducibleInput"


class WeilViolation(CMotiveError):
    code = "WeilViolation"


class NotSemisimple(CMotiveError):
    code = "NotSemisimple"
