"""Shared brute-force oracles, kept deliberately independent of the package
internals: plain sets and recursion, no bitmasks, no memo sharing."""

import sys
from math import gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest  # noqa: E402


def brute_members(gens, bound):
    """Members of <gens> in [0, bound] by plain dynamic programming."""
    mem = {0}
    for x in range(1, bound + 1):
        if any(a <= x and (x - a) in mem for a in gens):
            mem.add(x)
    return mem


def brute_apery(gens, a, frob):
    """Definitional Apery set of <gens> with respect to a."""
    bound = frob + a + 1
    mem = brute_members(gens, bound)
    return sorted(s for s in mem if s - a < 0 or s - a not in mem)


def naive_solve(elements, leq):
    """Exhaustive chomp solver over explicit element sets.

    `elements` is an iterable of hashable labels containing the minimum,
    `leq(x, y)` the order. Returns True iff the player to move wins.
    """
    elements = frozenset(elements)
    minimum = min(elements, key=lambda e: sum(leq(x, e) for x in elements))
    # the minimum is below everything; recompute properly:
    for e in elements:
        if all(leq(e, x) for x in elements):
            minimum = e
            break
    memo = {}

    def win(pos):
        if pos == frozenset({minimum}):
            return False
        if pos in memo:
            return memo[pos]
        result = False
        for y in pos:
            if y == minimum:
                continue
            child = frozenset(x for x in pos if not leq(y, x))
            if not win(child):
                result = True
                break
        memo[pos] = result
        return result

    return win(elements)


def naive_semigroup_remove(S, pos, y):
    """pos \\ (y + S) over explicit integer sets."""
    return frozenset(z for z in pos if not S.contains(z - y))


def reduced(gens):
    d = 0
    for a in gens:
        d = gcd(d, a)
    return sorted({a // d for a in gens})


@pytest.fixture(scope="session")
def corpus():
    """Small mixed corpus reused by several invariant tests."""
    from semichomp.semigroup import new_semigroup

    gen_lists = [
        [2, 3], [3, 5], [4, 5], [3, 4, 5], [4, 5, 6, 7], [5, 7, 9],
        [6, 7, 11], [6, 7, 8, 9], [9, 10, 11, 12], [4, 9, 10, 11],
        [5, 6], [7, 8, 9, 10], [10, 11, 12, 13], [3, 7], [4, 6, 9],
    ]
    return [new_semigroup(g) for g in gen_lists]
