"""Finite ringed spaces given on a basis, and the n-affine classification."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .ring import FiniteRing, RingHom
from . import topology


class FSpace:
    """Points, a basis of opens, a ring per basis open and restriction homs.

    ``restrictions[(i, j)]`` is defined whenever basis[j] ⊆ basis[i].
    """

    def __init__(self, labels: Sequence[str], basis: Sequence[frozenset[int]],
                 rings: Sequence[FiniteRing], restrictions: dict[tuple[int, int], RingHom],
                 name: str = ""):
        self.labels = list(labels)
        self.basis = [frozenset(b) for b in basis]
        self.rings = list(rings)
        self.restrictions = dict(restrictions)
        self.name = name
        self.n = len(self.labels)

    def __repr__(self) -> str:
        return f"FSpace({self.name or '?'}, {self.n} points)"

    @cached_property
    def leq(self) -> list[list[bool]]:
        return topology.specialization(self.n, self.basis)

    def opens(self, bound: int | None = None) -> list[frozenset[int]]:
        return topology.opens_from_basis(self.n, self.basis, bound)

    def is_open(self, subset: Iterable[int]) -> bool:
        u = frozenset(subset)
        return all(topology.minimal_open(self.n, self.basis, x) <= u for x in u)

    def center_of(self, subset: Iterable[int]) -> int | None:
        return topology.center_of(subset, self.leq)

    def center(self) -> int | None:
        return self.center_of(range(self.n))

    def minimal_open(self, x: int) -> frozenset[int]:
        return topology.minimal_open(self.n, self.basis, x)

    def is_affine_open(self, subset: Iterable[int]) -> bool:
        """Open subsets are affine iff empty or centered."""
        u = frozenset(subset)
        return not u or self.center_of(u) is not None


def affinity_level(space: FSpace, bound: int | None = None) -> int:
    """Least n such that the space is n-affine (0 means affine).

    The empty space counts as affine. Levels are cumulative: an n-affine cover may
    have pairwise intersections of any level below n.
    """
    opens = space.opens(bound)
    affine = [u for u in opens if u and space.center_of(u) is not None]
    memo: dict[frozenset[int], int] = {}

    def level(u: frozenset[int]) -> int:
        if u in memo:
            return memo[u]
        if not u or space.center_of(u) is not None:
            memo[u] = 0
            return 0
        inside = [v for v in affine if v <= u]
        k = 1
        while True:
            if _has_cover(u, inside, lambda a, b: level(a & b) <= k - 1):
                memo[u] = k
                return k
            k += 1

    return level(frozenset(range(space.n)))


def _has_cover(u: frozenset[int], cands: list[frozenset[int]], compatible) -> bool:
    """Is there a family from cands, pairwise compatible, whose union is u?"""

    def search(chosen: list[frozenset[int]], covered: frozenset[int]) -> bool:
        if covered == u:
            return True
        p = min(u - covered)
        for v in cands:
            if p in v and all(compatible(v, w) for w in chosen):
                if search(chosen + [v], covered | v):
                    return True
        return False

    return search([], frozenset())


def classify_affinity(space: FSpace, bound: int | None = None) -> str:
    k = affinity_level(space, bound)
    return "affine" if k == 0 else f"{k}-affine"
