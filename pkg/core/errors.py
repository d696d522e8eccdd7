"""Error hierarchy shared by the library, the pipeline nodes and the CLI"""

from typing import Any, Optional


class TrigraphError(Exception):
    """Base class. `code` and `exit_code` feed the CLI error line."""

    code = "error"
    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.code, "exit_code": self.exit_code, "message": self.message}


class VerificationFailure(TrigraphError):
    """A produced certificate did not pass its checker."""

    code = "verification_failed"
    exit_code = 1

    def __init__(self, message: str, counterexample: Any = None):
        super().__init__(message, counterexample=counterexample)
        self.counterexample = counterexample


class InvariantBroken(TrigraphError):
    """A proof obligation failed at runtime (never patched over)."""

    code = "invariant_broken"
    exit_code = 1


class OracleContractViolation(TrigraphError):
    """A pluggable class oracle returned an invalid or underweight answer."""

    code = "oracle_contract"
    exit_code = 1


class PreconditionViolation(TrigraphError):
    code = "precondition"
    exit_code = 2


class FormatError(PreconditionViolation):
    code = "format"


class ClassViolation(PreconditionViolation):
    """Input is outside the class an operation requires."""

    code = "class_violation"


class BergeViolation(ClassViolation):
    code = "not_berge"

    def __init__(self, message: str, witness: Optional[tuple] = None):
        super().__init__(message, witness=witness)
        self.witness = witness


class InvalidSplit(PreconditionViolation):
    code = "invalid_split"


class UnrealizableRecipe(PreconditionViolation):
    code = "unrealizable_recipe"


class CapExceeded(TrigraphError):
    code = "cap_exceeded"
    exit_code = 3

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}", size=size, cap=cap)
        self.size = size
        self.cap = cap


class ContradictionWitness(TrigraphError):
    """The input is neither basic nor decomposable although it should be."""

    code = "contradiction"
    exit_code = 4

    def __init__(self, message: str, transcript: Optional[list[str]] = None):
        super().__init__(message)
        self.transcript = list(transcript or [])


def check_cap(what: str, size: int, cap: Optional[int]) -> None:
    """Raise CapExceeded when `size` is over `cap` (None disables the cap)."""
    if cap is not None and size > cap:
        raise CapExceeded(what, size, cap)
