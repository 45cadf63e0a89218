"""Exact chomp solving on finite posets with a minimum.

Positions are down-sets encoded as integer bitmasks over a fixed element
indexing, which makes memo lookups O(1) and deduplication exact.  The solver
is a plain win/loss retrograde search with memoization; winning moves are
reported in ascending element-index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    InvalidInputError,
    InvalidPositionError,
    MemoLimitError,
    PairingValidationError,
)

DEFAULT_MEMO_CAP = 1 << 26


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Finite poset with a global minimum.

    `up[i]` is the bitmask of indices j with element i <= element j (including
    i itself); `down[i]` the dual.  The relation is validated on construction.
    """

    __slots__ = ("labels", "up", "down", "min_index", "_index")

    def __init__(self, labels: Sequence, up: Sequence[int]):
        self.labels = tuple(labels)
        self.up = tuple(up)
        n = len(self.labels)
        if len(self.up) != n:
            raise InvalidInputError("relation size does not match element count")
        down = [0] * n
        for i in range(n):
            if not (self.up[i] >> i) & 1:
                raise InvalidInputError(f"relation not reflexive at {self.labels[i]!r}")
            for j in _bits(self.up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        for i in range(n):
            for j in _bits(self.up[i]):
                if i != j and (self.up[j] >> i) & 1:
                    raise InvalidInputError(
                        f"antisymmetry fails at {self.labels[i]!r},{self.labels[j]!r}"
                    )
                if self.up[j] & ~self.up[i]:
                    raise InvalidInputError(
                        f"transitivity fails at {self.labels[i]!r},{self.labels[j]!r}"
                    )
        full = (1 << n) - 1
        minima = [i for i in range(n) if self.up[i] == full]
        if not minima:
            raise InvalidInputError("poset has no global minimum")
        self.min_index = minima[0]
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_leq(cls, labels: Sequence, leq: Callable) -> "FinitePoset":
        labels = list(labels)
        up = []
        for x in labels:
            mask = 0
            for j, y in enumerate(labels):
                if leq(x, y):
                    mask |= 1 << j
            up.append(mask)
        return cls(labels, up)

    @classmethod
    def from_covers(cls, labels: Sequence, covers: Iterable[tuple]) -> "FinitePoset":
        """Build from cover pairs (x, y) meaning x < y, then close transitively."""
        labels = list(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        up = [1 << i for i in range(n)]
        for x, y in covers:
            up[index[x]] |= 1 << index[y]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in _bits(up[i]):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        return cls(labels, up)

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def leq(self, i: int, j: int) -> bool:
        return (self.up[i] >> j) & 1 == 1

    def is_down_set(self, mask: int) -> bool:
        for i in _bits(mask):
            if self.down[i] & ~mask:
                return False
        return True

    def cover_pairs(self) -> list[tuple]:
        """Transitive reduction as (lower label, upper label) pairs."""
        pairs = []
        for i in range(len(self.labels)):
            strict = self.up[i] & ~(1 << i)
            for j in _bits(strict):
                between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
                if not between:
                    pairs.append((self.labels[i], self.labels[j]))
        return pairs

    def restricted_to(self, mask: int) -> "FinitePoset":
        keep = list(_bits(mask))
        remap = {old: new for new, old in enumerate(keep)}
        up = []
        for old in keep:
            m = 0
            for j in _bits(self.up[old] & mask):
                m |= 1 << remap[j]
            up.append(m)
        return FinitePoset([self.labels[i] for i in keep], up)

    # -- serialization --------------------------------------------------------

    def to_adjacency_text(self) -> str:
        """One line per element: "label: covered-by..." using cover pairs."""
        covers_of = {lab: [] for lab in self.labels}
        for lo, hi in self.cover_pairs():
            covers_of[hi].append(lo)
        lines = []
        for lab in self.labels:
            lows = " ".join(str(x) for x in covers_of[lab])
            lines.append(f"{lab}: {lows}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_adjacency_text(cls, text: str) -> "FinitePoset":
        labels, covers = [], []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise InvalidInputError(f"bad poset line {line!r}")
            head, _, rest = line.partition(":")
            lab = head.strip()
            labels.append(lab)
            for low in rest.split():
                covers.append((low, lab))
        return cls.from_covers(labels, covers)


@dataclass
class GameOutcome:
    mover_wins: bool
    winning_moves: list[int]
    explored_states: int

    def winning_labels(self, poset: FinitePoset) -> list:
        return [poset.labels[i] for i in self.winning_moves]


class Solver:
    """Memoized win/loss evaluator for one poset.

    A single Solver may be reused across many positions of the same poset;
    its memo table only grows (idempotent inserts).
    """

    def __init__(self, poset: FinitePoset, memo_cap: int = DEFAULT_MEMO_CAP):
        self.poset = poset
        self.memo: dict[int, bool] = {}
        self.memo_cap = memo_cap
        self._terminal = 1 << poset.min_index

    def mover_wins(self, mask: int) -> bool:
        memo = self.memo
        cached = memo.get(mask)
        if cached is not None:
            return cached
        up = self.poset.up
        terminal = self._terminal
        cap = self.memo_cap
        stack = [(mask, 0)]
        # iterative DFS: (position, next-move cursor mask of untried elements)
        work = {mask: mask & ~terminal}
        order = [mask]
        while order:
            pos = order[-1]
            if pos in memo:
                order.pop()
                continue
            moves = work[pos]
            decided = False
            while moves:
                low = moves & -moves
                moves ^= low
                child = pos & ~up[low.bit_length() - 1]
                known = memo.get(child)
                if known is None:
                    if child == terminal:
                        memo[child] = False
                        known = False
                    else:
                        # re-examine this child on resume
                        work[pos] = moves | low
                        if child not in work:
                            if len(work) + len(memo) > cap:
                                raise MemoLimitError(
                                    f"memo table exceeded {cap} entries"
                                )
                            work[child] = child & ~terminal
                            order.append(child)
                        break
                if known is False:
                    memo[pos] = True
                    order.pop()
                    decided = True
                    break
            else:
                memo[pos] = False
                order.pop()
                decided = True
            if decided:
                work.pop(pos, None)
        return memo[mask]

    def solve(self, start: Optional[int] = None) -> GameOutcome:
        poset = self.poset
        mask = poset.full if start is None else start
        if not mask or not (mask >> poset.min_index) & 1:
            raise InvalidPositionError("position must contain the minimum")
        if not poset.is_down_set(mask):
            raise InvalidPositionError("position is not a down-set")
        before = len(self.memo)
        winning = []
        if mask != self._terminal:
            for i in _bits(mask & ~self._terminal):
                if not self.mover_wins(mask & ~poset.up[i]):
                    winning.append(i)
        return GameOutcome(
            mover_wins=bool(winning),
            winning_moves=winning,
            explored_states=len(self.memo) - before,
        )


def solve(
    poset: FinitePoset, start: Optional[int] = None, memo_cap: int = DEFAULT_MEMO_CAP
) -> GameOutcome:
    """Solve chomp on `poset` from `start` (default: the full poset)."""
    return Solver(poset, memo_cap=memo_cap).solve(start)


def position_labels(poset: FinitePoset, mask: int) -> list:
    """Serialize a position as its sorted label list."""
    return sorted((poset.labels[i] for i in _bits(mask)), key=str)


def grid_poset(rows: int, cols: int) -> FinitePoset:
    """Product of two chains: (r, c) <= (r', c') componentwise."""
    if rows < 1 or cols < 1:
        raise InvalidInputError("grid dimensions must be positive")
    labels = [(r, c) for r in range(rows) for c in range(cols)]
    return FinitePoset.from_leq(
        labels, lambda p, q: p[0] <= q[0] and p[1] <= q[1]
    )


def ten_element_poset() -> FinitePoset:
    """The 10-element poset underlying the interval-family pairing strategy.

    Elements 0 and x[i][j] for 1 <= i, j <= 3 with covers: 0 below the first
    row, columns are chains, x[i][3] below x[i+1][2], and x[3][1] below
    x[3][3].
    """
    labels = ["0"] + [f"x{i}{j}" for i in range(1, 4) for j in range(1, 4)]
    covers = []
    for j in (1, 2, 3):
        covers.append(("0", f"x1{j}"))
        for i in (1, 2):
            covers.append((f"x{i}{j}", f"x{i+1}{j}"))
    for i in (1, 2):
        covers.append((f"x{i}3", f"x{i+1}2"))
    covers.append(("x31", "x33"))
    return FinitePoset.from_covers(labels, covers)


# -- pairing strategies -------------------------------------------------------


@dataclass
class PairingStrategy:
    """Play a game on P by mirroring through an involution.

    Non-fixed opponent moves are answered with their involution partner;
    fixed-point moves are answered by exactly solving the fixed-point
    sub-game.  `first_move` is the winning first move of the fixed-point game
    when it is a first-player win, else None.
    """

    poset: FinitePoset
    phi: tuple[int, ...]
    fixed_mask: int

    def __post_init__(self):
        self._sub = self.poset.restricted_to(self.fixed_mask)
        self._old_of_new = list(_bits(self.fixed_mask))
        self._new_of_old = {old: new for new, old in enumerate(self._old_of_new)}
        self._sub_solver = Solver(self._sub)

    def first_move(self) -> Optional[int]:
        outcome = self._solve_fixed(self.fixed_mask)
        return outcome.winning_moves[0] if outcome.mover_wins else None

    def _solve_fixed(self, fixed_pos: int) -> GameOutcome:
        inner = 0
        for old in _bits(fixed_pos & self.fixed_mask):
            inner |= 1 << self._new_of_old[old]
        outcome = self._sub_solver.solve(inner)
        outcome.winning_moves = [self._old_of_new[i] for i in outcome.winning_moves]
        return outcome

    def reply(self, position: int, opp_move: int) -> int:
        """Reply to `opp_move`; `position` is the board after the opponent."""
        if (self.fixed_mask >> opp_move) & 1 == 0:
            partner = self.phi[opp_move]
            if (position >> partner) & 1 == 0:
                raise InvalidPositionError(
                    f"involution partner of {self.poset.labels[opp_move]!r} "
                    "is no longer on the board"
                )
            return partner
        outcome = self._solve_fixed(position & self.fixed_mask)
        if not outcome.mover_wins:
            raise InvalidPositionError("fixed-point sub-game is lost")
        return outcome.winning_moves[0]


def pairing_strategy(poset: FinitePoset, phi) -> PairingStrategy:
    """Validate an involution and return the combined mirroring strategy.

    Conditions checked, with a witness reported on failure:
      (a) phi is an involution;
      (b) x <= phi(x) implies x = phi(x);
      (c) x <= y implies phi(x) <= phi(y) or x <= phi(y);
      (d) the fixed points form a down-set.
    """
    n = len(poset)
    if callable(phi):
        table = [poset.index(phi(lab)) for lab in poset.labels]
    elif isinstance(phi, dict):
        table = [poset.index(phi[lab]) for lab in poset.labels]
    else:
        table = list(phi)
    for i in range(n):
        if table[table[i]] != i:
            raise PairingValidationError("a", poset.labels[i])
    for i in range(n):
        if poset.leq(i, table[i]) and table[i] != i:
            raise PairingValidationError("b", poset.labels[i])
    for i in range(n):
        for j in _bits(poset.up[i]):
            if not poset.leq(table[i], table[j]) and not poset.leq(i, table[j]):
                raise PairingValidationError("c", (poset.labels[i], poset.labels[j]))
    fixed = 0
    for i in range(n):
        if table[i] == i:
            fixed |= 1 << i
    if not poset.is_down_set(fixed):
        bad = next(
            i for i in _bits(fixed) if poset.down[i] & ~fixed
        )
        raise PairingValidationError("d", poset.labels[bad])
    return PairingStrategy(poset=poset, phi=tuple(table), fixed_mask=fixed)


def find_isomorphism(p: FinitePoset, q: FinitePoset) -> Optional[dict]:
    """Order isomorphism p -> q as a label map, or None.

    Backtracking with (up-set size, down-set size) signatures; intended for
    small posets.
    """
    n = len(p)
    if len(q) != n:
        return None

    def sig(poset, i):
        return (poset.up[i].bit_count(), poset.down[i].bit_count())

    p_sig = [sig(p, i) for i in range(n)]
    q_by_sig: dict = {}
    for j in range(n):
        q_by_sig.setdefault(sig(q, j), []).append(j)
    order = sorted(range(n), key=lambda i: len(q_by_sig.get(p_sig[i], [])))
    mapping: dict[int, int] = {}
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in q_by_sig.get(p_sig[i], []):
            if used[j]:
                continue
            ok = True
            for i2, j2 in mapping.items():
                if p.leq(i, i2) != q.leq(j, j2) or p.leq(i2, i) != q.leq(j2, j):
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                if extend(pos + 1):
                    return True
                del mapping[i]
                used[j] = False
        return False

    if not extend(0):
        return None
    return {p.labels[i]: q.labels[j] for i, j in mapping.items()}


def verify_strategy_never_loses(
    poset: FinitePoset,
    strategy,
    as_first_player: bool,
    start: Optional[int] = None,
) -> int:
    """Exhaustive adversary check on a finite poset game.

    The strategy side must never be forced to take the minimum: every
    adversary line must end with the adversary picking it.  Returns the
    number of distinct adversary-to-move positions checked.
    """
    mask = poset.full if start is None else start
    terminal = 1 << poset.min_index
    if as_first_player:
        mv = strategy.first_move()
        assert mv is not None, "strategy has no first move"
        mask = mask & ~poset.up[mv]
    checked = set()

    def adversary_turn(pos: int):
        if pos in checked:
            return
        checked.add(pos)
        assert pos != 0, "board exhausted out of turn"
        if pos == terminal:
            return  # adversary forced to take the minimum: we win this line
        for y in _bits(pos & ~terminal):
            after = pos & ~poset.up[y]
            assert after != terminal, (
                f"strategy loses: adversary move {poset.labels[y]!r} "
                "leaves only the minimum"
            )
            r = strategy.reply(after, y)
            assert (after >> r) & 1, "strategy replied with an absent element"
            assert r != poset.min_index, "strategy picked the minimum"
            adversary_turn(after & ~poset.up[r])

    adversary_turn(mask)
    return len(checked)
