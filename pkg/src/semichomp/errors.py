"""Exception types shared across the package."""


class SemichompError(Exception):
    """Base class for all package errors."""


class InvalidInputError(SemichompError):
    """Malformed user input (generators, group specs, parse errors)."""


class InvalidArgumentError(SemichompError):
    """Structurally valid input that violates an operation's precondition."""


class IllegalMoveError(SemichompError):
    """A move that is not available in the current position."""


class InvalidPositionError(SemichompError):
    """A set that is not a down-set of the ambient poset."""


class OutOfWindowError(SemichompError):
    """State translation outside the x > g(S) window."""


class GapLimitError(SemichompError):
    """Gap count exceeds the single-word bitset limit (62)."""


class TableTooLargeError(SemichompError):
    """Full W-table mode requested with too many gaps; use bounded search."""


class MemoLimitError(SemichompError):
    """Solver memo table grew past its configured cap."""


class PairingValidationError(SemichompError):
    """An involution violates one of the pairing-strategy conditions."""

    def __init__(self, condition: str, witness):
        self.condition = condition
        self.witness = witness
        super().__init__(f"pairing condition ({condition}) violated at {witness!r}")


class NoStrategyError(SemichompError):
    """Requested a strategy for the side that provably has none."""


class StrategyError(SemichompError):
    """A strategy oracle reached a state its rules do not cover."""


class UndefinedBoundError(SemichompError):
    """Theoretical bound is undefined (S = N has no Frobenius number)."""


class BudgetExhaustedError(SemichompError):
    """Work limit hit in a context that cannot return an Unknown verdict."""
