"""The (x, C) encoding of mid-game positions.

Every proper down-set P of the semigroup poset is determined by the smallest
removed element x and the subset C of gaps c with x + c still on the board:
P = ([0, x-1](cap)S) u (x + C).  C is stored as a bitmask over the sorted gap
list, which keeps states in a single machine word at desk scale (n(S) <= 62
is enforced).

apply_move computes the successor by direct set arithmetic; the known
structural facts about moves are asserted in debug mode rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GapLimitError, IllegalMoveError, InvalidArgumentError, OutOfWindowError
from .semigroup import NumericalSemigroup

GAP_LIMIT = 62


@dataclass(frozen=True)
class GameState:
    """Value type: base x (smallest removed element of S) plus gap bitmask."""

    x: int
    c_mask: int

    def gap_values(self, S: NumericalSemigroup) -> tuple[int, ...]:
        return tuple(S.gaps[i] for i in _bit_indices(self.c_mask))

    def render(self, S: NumericalSemigroup) -> str:
        inside = ",".join(str(c) for c in self.gap_values(S))
        return f"({self.x}; {inside})"


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_gap_limit(S: NumericalSemigroup) -> None:
    if S.gap_count > GAP_LIMIT:
        raise GapLimitError(
            f"semigroup has {S.gap_count} gaps; bitset codec supports <= {GAP_LIMIT}"
        )


def full_mask(S: NumericalSemigroup) -> int:
    return (1 << S.gap_count) - 1


def initial_state(S: NumericalSemigroup, a: int) -> GameState:
    """State after the opening move a: base a, gaps c with a + c in S."""
    _check_gap_limit(S)
    if a <= 0 or not S.contains(a):
        raise InvalidArgumentError(f"{a} is not a nonzero element of S")
    mask = 0
    for i, c in enumerate(S.gaps):
        if S.contains(a + c):
            mask |= 1 << i
    return GameState(a, mask)


def elements(state: GameState, S: NumericalSemigroup) -> list[int]:
    """Explicit element set ([0, x-1] cap S) u (x + C), ascending."""
    below = [s for s in range(state.x) if S.contains(s)]
    above = [state.x + c for c in state.gap_values(S)]
    return sorted(below + above)


def apply_move(state: GameState, y: int, S: NumericalSemigroup) -> GameState:
    """Remove the up-set of y and re-encode.

    Debug assertions: the new base is min(x, y); moves above x strictly
    shrink C; moves y with g < y < x - g reset C to the full gap set.
    """
    elems = elements(state, S)
    if y == 0 or y not in elems:
        raise IllegalMoveError(f"{y} is not a playable element of {state!r}")
    remaining = [z for z in elems if not S.contains(z - y)]
    new_x = min(state.x, y)
    remaining_set = set(remaining)
    mask = 0
    for i, c in enumerate(S.gaps):
        if new_x + c in remaining_set:
            mask |= 1 << i
    result = GameState(new_x, mask)
    if __debug__:
        g = S.frobenius
        below = [s for s in range(new_x) if S.contains(s)]
        assert sorted(below + [new_x + c for c in result.gap_values(S)]) == remaining
        if y > state.x:
            assert result.x == state.x
            assert result.c_mask & ~state.c_mask == 0 and result.c_mask != state.c_mask
        if g < y < state.x - g:
            assert result == GameState(y, full_mask(S))
    return result


def translate(state: GameState, delta: int, S: NumericalSemigroup) -> GameState:
    """Shift the base by delta keeping C; only valid deep above the gaps."""
    g = S.frobenius
    if state.x <= g or state.x + delta <= g:
        raise OutOfWindowError(
            f"translation needs x and x+delta above {g}, got {state.x}+{delta}"
        )
    return GameState(state.x + delta, state.c_mask)
