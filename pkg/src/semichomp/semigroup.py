"""Numerical semigroups and their classical invariants.

A numerical semigroup S = <a_1,...,a_n> is the set of non-negative integer
combinations of the generators.  Generators are divided by their gcd on
construction, so the complement of S in N is always finite.  Everything the
rest of the package needs (membership, gaps, Frobenius number, Apery sets,
pseudo-Frobenius numbers, the divisibility order x <= y iff y - x in S) is
computed here, eagerly where cheap and on demand otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import InvalidArgumentError, InvalidInputError


def parse_generators(text: str) -> list[int]:
    """Parse a comma-separated generator list like "6,7,11".

    Raises InvalidInputError with the offending token position.
    """
    items = text.split(",")
    gens = []
    for pos, tok in enumerate(items):
        tok = tok.strip()
        if not tok.isdigit() or int(tok) < 1:
            raise InvalidInputError(
                f"generator #{pos + 1} ({tok!r}) is not a positive integer"
            )
        gens.append(int(tok))
    if not gens:
        raise InvalidInputError("empty generator list")
    return gens


@dataclass(frozen=True)
class NumericalSemigroup:
    """Immutable numerical semigroup with precomputed invariants.

    `membership` covers [0, frobenius + max(minimal_generators)]; queries above
    that range are True by definition of the Frobenius number.
    """

    generators: tuple[int, ...]
    minimal_generators: tuple[int, ...]
    multiplicity: int
    embedding_dimension: int
    frobenius: int
    gaps: tuple[int, ...]
    membership: tuple[bool, ...] = field(repr=False)

    # -- membership and order ------------------------------------------------

    def contains(self, x: int) -> bool:
        if x < 0:
            return False
        if x > self.frobenius:
            return True
        return self.membership[x]

    def __contains__(self, x: int) -> bool:
        return self.contains(x)

    def leq(self, x: int, y: int) -> bool:
        """Divisibility order of the semigroup poset: x <= y iff y - x in S."""
        return self.contains(y - x)

    @property
    def gap_count(self) -> int:
        return len(self.gaps)

    def gap_index(self, c: int) -> int:
        """Index of gap c in the sorted gap list."""
        lo, hi = 0, len(self.gaps)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.gaps[mid] < c:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.gaps) or self.gaps[lo] != c:
            raise InvalidArgumentError(f"{c} is not a gap")
        return lo

    def elements_upto(self, bound: int) -> list[int]:
        """Sorted members of S in [0, bound]."""
        return [x for x in range(bound + 1) if self.contains(x)]

    # -- Apery machinery -----------------------------------------------------

    def apery(self, a: int) -> "AperySet":
        """Apery set of S with respect to a: {s in S : s - a not in S}."""
        if a <= 0 or not self.contains(a):
            raise InvalidArgumentError(f"{a} is not a nonzero element of S")
        elems = [
            s
            for s in range(0, self.frobenius + a + 1)
            if self.contains(s) and not self.contains(s - a)
        ]
        assert len(elems) == a, "Apery set must be a complete residue system"
        return AperySet(semigroup=self, base=a, elements=tuple(elems))

    def pseudo_frobenius(self) -> tuple[int, ...]:
        """Pseudo-Frobenius numbers {x not in S : x + s in S for all s in S\\{0}},
        computed as base-shifted maximal Apery elements."""
        ap = self.apery(self.multiplicity)
        return tuple(sorted(x - self.multiplicity for x in ap.maximal_elements))

    def type(self) -> int:
        return len(self.pseudo_frobenius())

    def is_symmetric(self) -> bool:
        """type(S) == 1, cross-checked against the definitional test."""
        by_type = self.type() == 1
        g = self.frobenius
        by_def = all(self.contains(x) != self.contains(g - x) for x in range(g + 1))
        assert by_type == by_def, "symmetry criteria disagree"
        return by_type

    def is_max_embedding_dimension(self) -> bool:
        """e(S) == m(S), cross-checked against the Apery characterization."""
        m = self.multiplicity
        by_count = self.embedding_dimension == m
        expected = {0} | {a for a in self.minimal_generators if a != m}
        by_apery = set(self.apery(m).elements) == expected
        assert by_count == by_apery, "max-embedding-dimension criteria disagree"
        return by_count

    # -- serialization -------------------------------------------------------

    def record(self) -> dict:
        """Self-describing record used by the CLI machine output mode."""
        return {
            "generators": list(self.generators),
            "minimalGenerators": list(self.minimal_generators),
            "multiplicity": self.multiplicity,
            "embeddingDimension": self.embedding_dimension,
            "frobenius": self.frobenius,
            "gaps": list(self.gaps),
            "type": self.type(),
            "symmetric": self.is_symmetric(),
            "maxEmbeddingDimension": self.is_max_embedding_dimension(),
        }

    def to_json(self) -> str:
        return json.dumps(self.record(), sort_keys=True)

    def __str__(self) -> str:
        return "<" + ",".join(str(a) for a in self.minimal_generators) + ">"

    def __hash__(self) -> int:
        return hash(self.minimal_generators)


@dataclass(frozen=True)
class AperySet:
    """Apery set with the induced divisibility order."""

    semigroup: NumericalSemigroup
    base: int
    elements: tuple[int, ...]

    @property
    def order(self) -> list[list[bool]]:
        """Relation matrix: order[i][j] iff elements[i] <= elements[j]."""
        S = self.semigroup
        return [[S.leq(x, y) for y in self.elements] for x in self.elements]

    @property
    def maximal_elements(self) -> tuple[int, ...]:
        S = self.semigroup
        return tuple(
            x
            for x in self.elements
            if not any(y != x and S.leq(x, y) for y in self.elements)
        )

    def __len__(self) -> int:
        return len(self.elements)


def _sieve(gens: list[int], bound: int) -> list[bool]:
    member = [False] * (bound + 1)
    member[0] = True
    for x in range(1, bound + 1):
        for a in gens:
            if a <= x and member[x - a]:
                member[x] = True
                break
    return member


@lru_cache(maxsize=512)
def _build(reduced: tuple[int, ...]) -> NumericalSemigroup:
    gens = sorted(set(reduced))
    m = gens[0]
    # Sieve until a run of m consecutive members appears; everything at or
    # above the run start is then in S.
    bound = max(64, gens[0] * gens[-1] + gens[-1])
    while True:
        member = _sieve(gens, bound)
        run, run_start = 0, None
        for x in range(bound + 1):
            run = run + 1 if member[x] else 0
            if run >= m:
                run_start = x - m + 1
                break
        if run_start is not None:
            break
        bound *= 2
    frob = -1
    for x in range(run_start - 1, -1, -1):
        if not member[x]:
            frob = x
            break
    table_bound = frob + gens[-1]
    if len(member) <= table_bound:
        member = _sieve(gens, table_bound)
    gaps = tuple(x for x in range(frob + 1) if not member[x])

    # A generator is minimal iff it is not a sum of two nonzero elements of S.
    def splits(a: int) -> bool:
        return any(member[s] and member[a - s] for s in range(m, a - m + 1))

    minimal = tuple(a for a in gens if not splits(a))
    return NumericalSemigroup(
        generators=tuple(reduced),
        minimal_generators=minimal,
        multiplicity=m,
        embedding_dimension=len(minimal),
        frobenius=frob,
        gaps=gaps,
        membership=tuple(member[: table_bound + 1]),
    )


def new_semigroup(generators) -> NumericalSemigroup:
    """Build the numerical semigroup generated by `generators`.

    The generators are divided by their gcd first, so the result is always a
    genuine numerical semigroup (finite complement); <2,4> collapses to N.
    """
    gens = list(generators)
    if not gens:
        raise InvalidInputError("generator list is empty")
    for a in gens:
        if not isinstance(a, int) or a < 1:
            raise InvalidInputError(f"generator {a!r} is not a positive integer")
    d = 0
    for a in gens:
        d = gcd(d, a)
    return _build(tuple(a // d for a in gens))


# Functional aliases matching the operation names used throughout the package.

def contains(S: NumericalSemigroup, x: int) -> bool:
    return S.contains(x)


def leq(S: NumericalSemigroup, x: int, y: int) -> bool:
    return S.leq(x, y)


def apery(S: NumericalSemigroup, a: int) -> AperySet:
    return S.apery(a)


def pseudo_frobenius(S: NumericalSemigroup) -> tuple[int, ...]:
    return S.pseudo_frobenius()


def semigroup_type(S: NumericalSemigroup) -> int:
    return S.type()


def is_symmetric(S: NumericalSemigroup) -> bool:
    return S.is_symmetric()


def is_max_embedding_dimension(S: NumericalSemigroup) -> bool:
    return S.is_max_embedding_dimension()
