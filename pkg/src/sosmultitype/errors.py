"""Exception hierarchy.  Each error carries the CLI exit code it maps to."""
from __future__ import annotations


class MultitypeError(Exception):
    exit_code = 1


class ParseError(MultitypeError):
    exit_code = 1

    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class RequiresPreNormalization(MultitypeError):
    """The Levi block cannot be split off by a linear change plus pivot shears."""
    exit_code = 2


class CandidateBoundExceeded(MultitypeError):
    exit_code = 2


class NotAdmissible(MultitypeError):
    exit_code = 2


class NormalizationFailure(MultitypeError):
    """The final distinguished-weight check failed: never report such a result."""
    exit_code = 3


class HolomorphyViolation(MultitypeError):
    exit_code = 3


class TorsionDetected(MultitypeError):
    exit_code = 3


class ZeroPivot(MultitypeError):
    exit_code = 3
