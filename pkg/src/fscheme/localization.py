"""Localization S⁻¹A of finite commutative rings, saturation and the prime spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import HomomorphismError, NonCommutativeError, ZeroLocalizationError
from .ideals import TwoSidedIdeal, enumerate_two_sided_ideals
from .ring import FiniteRing, RingHom


def require_commutative(ring: FiniteRing, what: str = "this operation") -> None:
    if not ring.is_commutative:
        raise NonCommutativeError(f"{what} needs a commutative ring, {ring.label} is not")


def multiplicative_closure(ring: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    seen = {ring.one}
    frontier = [ring.one]
    gens = list(set(gens))
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = ring.mull[s][g]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True, eq=False)
class MultiplicativeSet:
    ring: FiniteRing
    members: frozenset[int]

    def __post_init__(self):
        require_commutative(self.ring, "a multiplicative set")
        m = frozenset(self.members)
        object.__setattr__(self, "members", m)
        if self.ring.one not in m:
            raise ValueError("a multiplicative set must contain 1")
        if any(self.ring.mull[a][b] not in m for a in m for b in m):
            raise ValueError("set is not closed under products")

    @classmethod
    def generated_by(cls, ring: FiniteRing, gens: Iterable[int]) -> "MultiplicativeSet":
        require_commutative(ring, "a multiplicative set")
        return cls(ring, multiplicative_closure(ring, gens))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))


def _as_mult_set(ring: FiniteRing, s) -> MultiplicativeSet:
    if isinstance(s, MultiplicativeSet):
        return s
    return MultiplicativeSet.generated_by(ring, s)


def annihilated_by(ring: FiniteRing, s: Iterable[int]) -> frozenset[int]:
    """{c : u·c = 0 for some u in s}."""
    M = ring.mul
    hit = np.zeros(ring.order, dtype=bool)
    for u in s:
        hit |= M[u] == ring.zero
    return frozenset(int(c) for c in np.nonzero(hit)[0])


class FractionRing:
    """S⁻¹A built from pair classes; representatives are the lexicographically least pairs."""

    def __init__(self, base: FiniteRing, mult_set: MultiplicativeSet):
        A = base
        S = sorted(mult_set.members)
        K = annihilated_by(A, S)
        if A.one in K:
            raise ZeroLocalizationError(
                f"localizing {A.label} at {A.fmt_set(S)} gives the zero ring")
        in_k = np.zeros(A.order, dtype=bool)
        in_k[list(K)] = True
        M, Ad, neg = A.mul, A.add, np.array(A.neg)
        reps_a: list[int] = []
        reps_s: list[int] = []
        class_of: dict[tuple[int, int], int] = {}
        for a in A.elements:
            for s in S:
                if reps_a:
                    ra = np.array(reps_a)
                    rs = np.array(reps_s)
                    diff = Ad[M[a, rs], neg[M[ra, s]]]
                    hits = np.nonzero(in_k[diff])[0]
                    if hits.size:
                        class_of[(a, s)] = int(hits[0])
                        continue
                class_of[(a, s)] = len(reps_a)
                reps_a.append(a)
                reps_s.append(s)
        self.base = base
        self.mult_set = mult_set
        self.classes = list(zip(reps_a, reps_s))
        self._class_of = class_of
        self.kernel = K
        n = len(self.classes)
        add = [[0] * n for _ in range(n)]
        mul = [[0] * n for _ in range(n)]
        for i, (a, s) in enumerate(self.classes):
            for j, (b, t) in enumerate(self.classes):
                st = A.mull[s][t]
                add[i][j] = class_of[(A.addl[A.mull[a][t]][A.mull[b][s]], st)]
                mul[i][j] = class_of[(A.mull[a][b], st)]
        names = [A.fmt(a) if s == A.one else f"{A.fmt(a)}/{A.fmt(s)}" for a, s in self.classes]
        self.ring = FiniteRing(add, mul, class_of[(A.zero, A.one)], class_of[(A.one, A.one)],
                               label=f"{A.label}[S^-1]", names=names, check=False)
        self.canonical_map = RingHom(A, self.ring, [class_of[(a, A.one)] for a in A.elements],
                                     check=False)

    def __repr__(self) -> str:
        return f"FractionRing({self.base.label}, S={self.base.fmt_set(self.mult_set.members)})"

    def fraction(self, a: int, s: int) -> int:
        """Index of the class of a/s."""
        return self._class_of[(a, s)]

    def lift(self, phi: RingHom) -> RingHom:
        """The unique h: S⁻¹A -> B with h∘canonical_map = phi (needs phi(S) ⊆ U(B))."""
        B = phi.target
        if phi.source is not self.base:
            raise HomomorphismError("lift: hom must start at the base ring")
        inv = {}
        for s in self.mult_set.members:
            v = B.inverse(phi(s))
            if v is None:
                raise HomomorphismError(f"{self.base.fmt(s)} is not sent to a unit")
            inv[s] = v
        values = [B.mull[phi(a)][inv[s]] for a, s in self.classes]
        for (a, s), c in self._class_of.items():
            if B.mull[phi(a)][inv[s]] != values[c]:
                raise HomomorphismError("lift is not well defined")
        return RingHom(self.ring, B, values, check=False)


@lru_cache(maxsize=None)
def _localize_cached(ring: FiniteRing, members: frozenset[int]) -> FractionRing:
    return FractionRing(ring, MultiplicativeSet(ring, members))


def localize(ring: FiniteRing, s) -> FractionRing:
    """S⁻¹A; ``s`` is a MultiplicativeSet or any generating subset."""
    require_commutative(ring, "localize")
    return _localize_cached(ring, _as_mult_set(ring, s).members)


def is_invertible_in_localization(ring: FiniteRing, s, x: int) -> bool:
    """Ax meets S."""
    S = _as_mult_set(ring, s).members
    return any(ring.mull[a][x] in S for a in ring.elements)


def saturation(ring: FiniteRing, s) -> frozenset[int]:
    """{x : Ax ∩ S ≠ ∅} for the multiplicative closure S of s."""
    require_commutative(ring, "saturation")
    S = _as_mult_set(ring, s).members
    if ring.zero in S:
        raise ZeroLocalizationError("0 lies in the multiplicative set")
    sat = frozenset(x for x in ring.elements if any(ring.mull[a][x] in S for a in ring.elements))
    if ring.zero in sat:
        raise ZeroLocalizationError("the saturation contains 0")
    return sat


def is_prime(ideal: TwoSidedIdeal) -> bool:
    A = ideal.ring
    if not ideal.is_proper:
        return False
    inside = np.zeros(A.order, dtype=bool)
    inside[list(ideal.members)] = True
    bad = inside[A.mul] & ~inside[:, None] & ~inside[None, :]
    return not bad.any()


@lru_cache(maxsize=None)
def prime_ideals(ring: FiniteRing) -> tuple[TwoSidedIdeal, ...]:
    require_commutative(ring, "prime_ideals")
    return tuple(i for i in enumerate_two_sided_ideals(ring) if is_prime(i))


def spec_of_localization(ring: FiniteRing, s) -> list[TwoSidedIdeal]:
    """Primes of A disjoint from S."""
    S = _as_mult_set(ring, s).members
    localize(ring, S)
    return [p for p in prime_ideals(ring) if not (p.members & S)]


def contract(phi: RingHom, ideal: TwoSidedIdeal) -> TwoSidedIdeal:
    return TwoSidedIdeal(phi.source, phi.preimage(ideal.members))
