"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ConstructibleError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ConstructibleError):
    """Something about the caller's input is wrong (CLI exit code 2)."""


class DuplicateVertexInSimplex(InputError, ValueError):
    pass


class SimplexNotInComplex(InputError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class AmbientMismatch(InputError, ValueError):
    pass


class IntegerOverflow(ConstructibleError, OverflowError):
    pass


class SetNotClosed(InputError, ValueError):
    pass


class SetNotClosable(InputError, ValueError):
    pass


class DimensionTooHigh(InputError, ValueError):
    pass


class StratificationError(InputError, ValueError):
    """A stratification violates the partition or frontier condition."""


class UnknownFixture(InputError, LookupError):
    pass


class NotEuler(ConstructibleError, ValueError):
    """Halving failed: the link (or omega) value at ``witness`` is odd."""

    def __init__(self, witness: tuple[str, ...], value: int, what: str = "") -> None:
        self.witness = witness
        self.value = value
        self.what = what
        label = f"{what}: " if what else ""
        super().__init__(f"{label}odd value {value} at simplex {list(witness)}")


class SkeletonNotEuler(NotEuler):
    pass


class HalfNotIntegral(ConstructibleError, ValueError):
    """A quantity expected to be divisible by 2 (or 4) is not."""

    def __init__(self, witness: tuple[str, ...], value: int, divisor: int, what: str = "") -> None:
        self.witness = witness
        self.value = value
        self.divisor = divisor
        self.what = what
        super().__init__(f"{what}: value {value} at {list(witness)} not divisible by {divisor}")


class FormulaDisagreement(ConstructibleError, AssertionError):
    """Two independent routes to the same quantity disagree (CLI exit code 3)."""


class ParseError(InputError):
    def __init__(self, line: int | None, reason: str) -> None:
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class ValidationError(InputError):
    pass
