"""Predicate-switching patterns.

A pattern names a subset of a branch predicate's execution instances to
negate within a single test run.  Instances are numbered from 1 in
execution order; n is the total number of times the predicate executed
in the unmodified run.  Rules that fall outside 1..n contribute nothing.
"""

from __future__ import annotations

from typing import Callable, FrozenSet

PATTERN_NAMES: tuple[str, ...] = (
    "all",
    "first",
    "last",
    "all-first",
    "all-last",
    "all-(first+last)",
    "first+1",
    "last-1",
    "first+last",
    "odd",
    "even",
)

_RULES: dict[str, Callable[[int], range | tuple[int, ...]]] = {
    "all": lambda n: range(1, n + 1),
    "first": lambda n: (1,),
    "last": lambda n: (n,),
    "all-first": lambda n: range(2, n + 1),
    "all-last": lambda n: range(1, n),
    "all-(first+last)": lambda n: range(2, n),
    "first+1": lambda n: (2,),
    "last-1": lambda n: (n - 1,),
    "first+last": lambda n: (1, n),
    "odd": lambda n: range(1, n + 1, 2),
    "even": lambda n: range(2, n + 1, 2),
}


def instances_to_negate(pattern: str, n: int) -> FrozenSet[int]:
    """The 1-based instance numbers a pattern negates for n executions."""
    if pattern not in _RULES:
        raise ValueError(f"unknown pattern: {pattern!r}")
    if n <= 0:
        return frozenset()
    return frozenset(i for i in _RULES[pattern](n) if 1 <= i <= n)


def pattern_index(pattern: str) -> int:
    """Position of a pattern in the canonical ordering."""
    return PATTERN_NAMES.index(pattern)
