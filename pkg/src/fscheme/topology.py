"""Finite topological spaces given by a basis of opens on points 0..n-1."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import limits
from .errors import BoundExceededError


def opens_from_basis(n: int, basis: Iterable[frozenset[int]],
                     bound: int | None = None) -> list[frozenset[int]]:
    """All unions of basis sets (including the empty union), sorted by (size, elements)."""
    bound = limits.MAX_OPEN_POINTS if bound is None else bound
    if n > bound:
        raise BoundExceededError(f"open-set enumeration is limited to {bound} points, space has {n}")
    basis = list(dict.fromkeys(frozenset(b) for b in basis))
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for u in frontier:
            for b in basis:
                if b <= u:
                    continue
                v = u | b
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return sorted(seen, key=lambda u: (len(u), sorted(u)))


def specialization(n: int, basis: Sequence[frozenset[int]]) -> list[list[bool]]:
    """leq[x][y] is True iff x lies in the closure of {y}, i.e. every basic open at x holds y."""
    around = [[b for b in basis if x in b] for x in range(n)]
    return [[all(y in b for b in around[x]) for y in range(n)] for x in range(n)]


def closure(n: int, basis: Sequence[frozenset[int]], subset: Iterable[int]) -> frozenset[int]:
    """Points all of whose basic neighbourhoods meet the subset."""
    subset = set(subset)
    return frozenset(x for x in range(n) if all(b & subset for b in basis if x in b))


def center_of(points: Iterable[int], leq: Sequence[Sequence[bool]]) -> int | None:
    """The center of the subspace on ``points``: a closed point lying in every nonempty closed set.

    In a subspace, the closure of {y} is its down-set, so a center is a point c with
    c <= y for all y and nothing else below c.
    """
    pts = list(points)
    for c in pts:
        if all(leq[c][y] for y in pts) and not any(leq[z][c] for z in pts if z != c):
            return c
    return None


def is_t0(n: int, leq: Sequence[Sequence[bool]]) -> bool:
    return all(not (leq[x][y] and leq[y][x]) for x in range(n) for y in range(n) if x != y)


def minimal_open(n: int, basis: Sequence[frozenset[int]], x: int) -> frozenset[int]:
    out = frozenset(range(n))
    for b in basis:
        if x in b:
            out &= b
    return out
