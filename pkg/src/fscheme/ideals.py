"""Ideals, the Jacobson radical, quotients, simple modules and ring classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import ImproperIdealError
from .ring import FiniteRing, RingHom, additive_closure


def bitmask(members: Iterable[int]) -> int:
    return sum(1 << x for x in members)


@dataclass(frozen=True, eq=False)
class TwoSidedIdeal:
    ring: FiniteRing
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TwoSidedIdeal) and other.ring is self.ring
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))

    def __repr__(self) -> str:
        return f"TwoSidedIdeal({self.ring.fmt_set(self.members)})"

    @property
    def key(self) -> int:
        return bitmask(self.members)

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self.members

    def is_valid(self) -> bool:
        A = self.ring
        m = self.members
        if A.zero not in m:
            return False
        for x in m:
            if any(A.addl[x][y] not in m for y in m):
                return False
            if any(A.mull[a][x] not in m or A.mull[x][a] not in m for a in A.elements):
                return False
        return True


def ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> TwoSidedIdeal:
    """The two-sided ideal generated by gens: additive span of all a·g·b."""
    M = ring.mul
    products: set[int] = set()
    for g in set(gens):
        products.update(int(v) for v in np.unique(M[M[:, g], :]))
    return TwoSidedIdeal(ring, additive_closure(ring, products))


def left_ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    products: set[int] = set()
    for g in set(gens):
        products.update(int(v) for v in np.unique(ring.mul[:, g]))
    return additive_closure(ring, products)


def _sum(ring: FiniteRing, a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    addl = ring.addl
    return frozenset(addl[x][y] for x in a for y in b)


def _sum_closure(ring: FiniteRing, principals: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """All sums of the given additive subgroups, including the zero subgroup."""
    principals = list(dict.fromkeys(principals))
    zero = frozenset({ring.zero})
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for cur in frontier:
            for p in principals:
                if p <= cur:
                    continue
                s = _sum(ring, cur, p)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen, key=bitmask)


@lru_cache(maxsize=None)
def enumerate_two_sided_ideals(ring: FiniteRing) -> tuple[TwoSidedIdeal, ...]:
    """Every two-sided ideal, as sums of principal ideals, sorted by member bitmask."""
    principals = [ideal_generated(ring, [x]).members for x in ring.elements]
    return tuple(TwoSidedIdeal(ring, s) for s in _sum_closure(ring, principals))


@lru_cache(maxsize=None)
def enumerate_left_ideals(ring: FiniteRing) -> tuple[frozenset[int], ...]:
    principals = [left_ideal_generated(ring, [x]) for x in ring.elements]
    return tuple(_sum_closure(ring, principals))


def _maximal_proper(sets: Iterable[frozenset[int]], one: int) -> list[frozenset[int]]:
    proper = [s for s in sets if one not in s]
    return [s for s in proper if not any(s < t for t in proper)]


@lru_cache(maxsize=None)
def maximal_left_ideals(ring: FiniteRing) -> tuple[frozenset[int], ...]:
    return tuple(_maximal_proper(enumerate_left_ideals(ring), ring.one))


@lru_cache(maxsize=None)
def maximal_two_sided_ideals(ring: FiniteRing) -> tuple[TwoSidedIdeal, ...]:
    ms = _maximal_proper((i.members for i in enumerate_two_sided_ideals(ring)), ring.one)
    return tuple(TwoSidedIdeal(ring, m) for m in sorted(ms, key=bitmask))


@lru_cache(maxsize=None)
def jacobson_radical(ring: FiniteRing) -> TwoSidedIdeal:
    """Intersection of the maximal left ideals."""
    members = frozenset(ring.elements)
    for m in maximal_left_ideals(ring):
        members &= m
    return TwoSidedIdeal(ring, members)


def jacobson_radical_via_units(ring: FiniteRing) -> TwoSidedIdeal:
    """{x : 1 + AxA consists of units}, an independent characterization."""
    units = ring.units
    one_row = ring.addl[ring.one]
    members = [x for x in ring.elements
               if all(one_row[y] in units for y in ideal_generated(ring, [x]).members)]
    return TwoSidedIdeal(ring, frozenset(members))


def quotient(ring: FiniteRing, ideal: TwoSidedIdeal) -> tuple[FiniteRing, RingHom]:
    """The coset ring A/I (representatives are coset minima) and the projection."""
    I = ideal.members
    if ring.one in I:
        raise ImproperIdealError("quotient by the whole ring is the zero ring, which is excluded")
    if len(I) == 1:
        return ring, RingHom.identity(ring)
    rep = [min(ring.addl[a][i] for i in I) for a in ring.elements]
    reps = sorted(set(rep))
    pos = {r: k for k, r in enumerate(reps)}
    add = [[pos[rep[ring.addl[r][s]]] for s in reps] for r in reps]
    mul = [[pos[rep[ring.mull[r][s]]] for s in reps] for r in reps]
    names = ["[" + ring.fmt(r) + "]" for r in reps]
    q = FiniteRing(add, mul, pos[rep[ring.zero]], pos[rep[ring.one]],
                   label=f"{ring.label}/I", names=names)
    return q, RingHom(ring, q, [pos[rep[a]] for a in ring.elements], check=False)


@dataclass(frozen=True, eq=False)
class LeftModuleRep:
    """A finite left module: carrier 0..size-1, addition table and action table."""

    ring: FiniteRing
    size: int
    add: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...]
    zero: int
    labels: tuple[str, ...] = field(default=())

    def acts_bijectively(self, x: int) -> bool:
        return len(set(self.action[x])) == self.size

    def is_valid(self) -> bool:
        A, n = self.ring, self.size
        for a in A.elements:
            for b in A.elements:
                ab, apb = A.mull[a][b], A.addl[a][b]
                for m in range(n):
                    if self.action[ab][m] != self.action[a][self.action[b][m]]:
                        return False
                    if self.action[apb][m] != self.add[self.action[a][m]][self.action[b][m]]:
                        return False
        for a in A.elements:
            for m in range(n):
                for k in range(n):
                    if self.action[a][self.add[m][k]] != self.add[self.action[a][m]][self.action[a][k]]:
                        return False
        return all(self.action[A.one][m] == m for m in range(n))


def cyclic_module(ring: FiniteRing, left_ideal: frozenset[int]) -> LeftModuleRep:
    """The left module A/m for a left ideal m."""
    rep = [min(ring.addl[a][i] for i in left_ideal) for a in ring.elements]
    reps = sorted(set(rep))
    pos = {r: k for k, r in enumerate(reps)}
    add = tuple(tuple(pos[rep[ring.addl[r][s]]] for s in reps) for r in reps)
    action = tuple(tuple(pos[rep[ring.mull[a][r]]] for r in reps) for a in ring.elements)
    return LeftModuleRep(ring, len(reps), add, action, pos[rep[ring.zero]],
                         tuple(ring.fmt(r) for r in reps))


@lru_cache(maxsize=None)
def simple_left_modules(ring: FiniteRing) -> tuple[LeftModuleRep, ...]:
    return tuple(cyclic_module(ring, m) for m in sorted(maximal_left_ideals(ring), key=bitmask))


def is_quasi_nilpotent(ring: FiniteRing, x: int) -> bool:
    """x acts non-bijectively on every simple left module."""
    return not any(m.acts_bijectively(x) for m in simple_left_modules(ring))


def quasi_nilpotents(ring: FiniteRing) -> frozenset[int]:
    return frozenset(x for x in ring.elements if is_quasi_nilpotent(ring, x))


def is_nilpotent(ring: FiniteRing, x: int) -> bool:
    y = x
    for _ in range(ring.order + 1):
        if y == ring.zero:
            return True
        y = ring.mull[y][x]
    return False


def is_self_localized(ring: FiniteRing) -> bool:
    return all(x in ring.units or is_quasi_nilpotent(ring, x) for x in ring.elements)


def is_von_neumann_regular(ring: FiniteRing) -> bool:
    M = ring.mul
    for a in ring.elements:
        if not (M[M[a, :], a] == a).any():
            return False
    return True


def is_ring_of_quotients(ring: FiniteRing) -> bool:
    M = ring.mul
    z = ring.zero
    for a in ring.elements:
        left_regular = (M[a, :] == z).sum() == 1
        right_regular = (M[:, a] == z).sum() == 1
        if left_regular and right_regular and a not in ring.units:
            return False
    return True


def is_simple(ring: FiniteRing) -> bool:
    return len(enumerate_two_sided_ideals(ring)) == 2
