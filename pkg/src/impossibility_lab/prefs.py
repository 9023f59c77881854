"""Strict rankings over a finite set of alternatives, and profiles of them.

A ranking is a tuple of alternative indices, best first.  A profile is a
tuple of rankings, position ``i`` holding voter ``i``'s ranking.  Plain
tuples keep everything hashable and cheap to enumerate exhaustively.
"""

from __future__ import annotations

import itertools
import math
import string
from typing import Iterable, Iterator, Sequence

from .errors import InputError

Ranking = tuple[int, ...]
Profile = tuple[Ranking, ...]

MAX_RANKING_ALTS = 6
MAX_PROFILE_VOTERS = 4
MAX_PROFILE_ALTS = 4


def default_names(m: int) -> list[str]:
    if m <= 26:
        return list(string.ascii_lowercase[:m])
    return [f"x{i}" for i in range(m)]


def check_ranking(r: Sequence[int], m: int | None = None) -> Ranking:
    """Return ``r`` as a tuple, raising InputError unless it is a permutation of range(m)."""
    r = tuple(r)
    if m is None:
        m = len(r)
    if len(r) != m or sorted(r) != list(range(m)):
        raise InputError(f"{r!r} is not a strict ranking of {m} alternatives")
    return r


def check_profile(p: Sequence[Sequence[int]], n: int | None = None, m: int | None = None) -> Profile:
    p = tuple(tuple(r) for r in p)
    if not p:
        raise InputError("a profile needs at least one voter")
    if n is not None and len(p) != n:
        raise InputError(f"profile has {len(p)} voters, expected {n}")
    if m is None:
        m = len(p[0])
    return tuple(check_ranking(r, m) for r in p)


def enumerate_rankings(m: int) -> list[Ranking]:
    """All m! strict rankings in lexicographic order."""
    if not 1 <= m <= MAX_RANKING_ALTS:
        raise InputError(f"m={m} outside [1, {MAX_RANKING_ALTS}]")
    # permutations of a sorted input are emitted in lexicographic order
    return list(itertools.permutations(range(m)))


def enumerate_profiles(n: int, m: int) -> Iterator[Profile]:
    """Yield all (m!)^n profiles, lexicographic over voter positions."""
    if not 1 <= n <= MAX_PROFILE_VOTERS:
        raise InputError(f"n={n} outside [1, {MAX_PROFILE_VOTERS}]")
    if not 1 <= m <= MAX_PROFILE_ALTS:
        raise InputError(f"m={m} outside [1, {MAX_PROFILE_ALTS}]")
    return itertools.product(enumerate_rankings(m), repeat=n)


def profile_count(n: int, m: int) -> int:
    return math.factorial(m) ** n


def prefers(r: Ranking, a: int, b: int) -> bool:
    """True iff ``a`` is ranked above ``b`` in ``r``."""
    m = len(r)
    if a == b:
        raise InputError("prefers() needs two distinct alternatives")
    if not (0 <= a < m and 0 <= b < m):
        raise InputError(f"alternatives ({a}, {b}) out of range for m={m}")
    return r.index(a) < r.index(b)


def restrict_ranking(r: Ranking, removed: Iterable[int]) -> tuple[Ranking, tuple[int, ...]]:
    """Delete ``removed`` from ``r`` and renumber the survivors densely.

    Returns ``(ranking, survivors)`` where ``survivors[j]`` is the original
    index of new alternative ``j``.
    """
    m = len(r)
    removed = set(removed)
    if any(not 0 <= x < m for x in removed):
        raise InputError(f"removed set {sorted(removed)} out of range for m={m}")
    survivors = tuple(x for x in range(m) if x not in removed)
    if len(survivors) < 2:
        raise InputError("restriction must leave at least 2 alternatives")
    new_index = {old: new for new, old in enumerate(survivors)}
    return tuple(new_index[x] for x in r if x in new_index), survivors


def restrict_profile(p: Profile, removed: Iterable[int]) -> tuple[Profile, tuple[int, ...]]:
    removed = frozenset(removed)
    out = [restrict_ranking(r, removed) for r in p]
    return tuple(r for r, _ in out), out[0][1]


# JSON helpers: rankings travel as lists of alternative names, best first.

def ranking_to_names(r: Ranking, names: Sequence[str]) -> list[str]:
    return [names[x] for x in r]


def ranking_from_names(items: Sequence[str], names: Sequence[str]) -> Ranking:
    lookup = {name: i for i, name in enumerate(names)}
    try:
        r = tuple(lookup[x] for x in items)
    except (KeyError, TypeError) as exc:
        raise InputError(f"unknown alternative in {items!r}") from exc
    return check_ranking(r, len(names))


def profile_to_names(p: Profile, names: Sequence[str]) -> list[list[str]]:
    return [ranking_to_names(r, names) for r in p]


def profile_from_names(items: Sequence[Sequence[str]], names: Sequence[str]) -> Profile:
    if not isinstance(items, (list, tuple)) or not items:
        raise InputError("a profile is a non-empty array of rankings")
    return tuple(ranking_from_names(r, names) for r in items)


def check_names(names: Sequence[str]) -> list[str]:
    names = list(names)
    if len(set(names)) != len(names) or not all(isinstance(x, str) and x for x in names):
        raise InputError(f"alternative names must be distinct non-empty strings: {names!r}")
    return names
