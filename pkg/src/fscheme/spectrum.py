"""The full spectrum F(A): fully invertible subsets, fundamental opens, centers and closed loci."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (BoundExceededError, ImproperIdealError, InvalidFractionError,
                     NonCommutativeError, ZeroLocalizationError)
from .ideals import (TwoSidedIdeal, bitmask, enumerate_two_sided_ideals, ideal_generated,
                     jacobson_radical, quotient)
from .localization import FractionRing, localize, prime_ideals, require_commutative
from .ring import FiniteRing, RingHom, compose
from . import topology


@dataclass(frozen=True, eq=False)
class FullyInvertibleSubset:
    """A point: S = φ⁻¹(U(B)) for the witness hom φ, whose kernel is witness_ideal."""

    ring: FiniteRing
    members: frozenset[int]
    witness: RingHom | None = None
    witness_ideal: TwoSidedIdeal | None = None

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FullyInvertibleSubset) and other.ring is self.ring
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))

    def __repr__(self) -> str:
        return f"Point({self.ring.fmt_set(self.members)})"

    @property
    def key(self) -> int:
        return bitmask(self.members)

    def witness_holds(self) -> bool:
        if self.witness is None:
            return False
        return self.witness.preimage(self.witness.target.units) == self.members


def satisfies_three_conditions(ring: FiniteRing, s: Iterable[int]) -> bool:
    """0 ∉ S, S multiplicatively closed, and ab ∈ S ⟹ a, b ∈ S (1 ∈ S follows)."""
    s = frozenset(s)
    if not s or ring.zero in s:
        return False
    M = ring.mull
    for a in ring.elements:
        row = M[a]
        for b in ring.elements:
            ab = row[b]
            if a in s and b in s and ab not in s:
                return False
            if ab in s and (a not in s or b not in s):
                return False
    return True


def three_condition_points(ring: FiniteRing) -> list[frozenset[int]]:
    """All subsets meeting the three conditions, by propagate-and-branch search."""
    require_commutative(ring, "the three-condition enumeration")
    A = ring
    divisors: list[set[int]] = [set() for _ in A.elements]
    for a in A.elements:
        for b in A.elements:
            divisors[A.mull[a][b]].add(a)
    multiples = [set(A.mull[x]) for x in A.elements]

    def propagate(inc, exc, add_inc, add_exc):
        inc, exc = set(inc), set(exc)
        qi, qe = list(add_inc), list(add_exc)
        while qi or qe:
            while qi:
                x = qi.pop()
                if x in inc:
                    continue
                if x in exc:
                    return None
                inc.add(x)
                qi.extend(divisors[x] - inc)
                qi.extend(A.mull[x][y] for y in inc)
            while qe:
                x = qe.pop()
                if x in exc:
                    continue
                if x in inc:
                    return None
                exc.add(x)
                qe.extend(multiples[x] - exc)
        return inc, exc

    found = []
    start = propagate((), (), [A.one], [A.zero])
    stack = [start] if start else []
    while stack:
        inc, exc = stack.pop()
        x = next((y for y in A.elements if y not in inc and y not in exc), None)
        if x is None:
            found.append(frozenset(inc))
            continue
        for branch in (propagate(inc, exc, [x], ()), propagate(inc, exc, (), [x])):
            if branch is not None:
                stack.append(branch)
    return sorted(found, key=bitmask)


def prime_complement_points(ring: FiniteRing) -> list[frozenset[int]]:
    """Intersections of complements A∖P over nonempty families of primes."""
    primes = prime_ideals(ring)
    everything = frozenset(ring.elements)
    out = set()
    for k in range(1, len(primes) + 1):
        for fam in combinations(primes, k):
            s = everything
            for p in fam:
                s -= p.members
            out.add(s)
    return sorted(out, key=bitmask)


def quotient_witness_points(ring: FiniteRing) -> list[FullyInvertibleSubset]:
    """Preimages of U(A/I) over the proper two-sided ideals I."""
    seen: dict[frozenset[int], FullyInvertibleSubset] = {}
    for ideal in enumerate_two_sided_ideals(ring):
        if not ideal.is_proper:
            continue
        q, pi = quotient(ring, ideal)
        s = pi.preimage(q.units)
        if s not in seen:
            seen[s] = FullyInvertibleSubset(ring, s, pi, ideal)
    return sorted(seen.values(), key=lambda p: p.key)


@dataclass(frozen=True)
class OpenSet:
    points: frozenset[int]
    center: int | None

    @property
    def has_center(self) -> bool:
        return self.center is not None


class FullSpectrum:
    """Points sorted by member bitmask; the center U(A) is index 0."""

    def __init__(self, ring: FiniteRing, points: Sequence[FullyInvertibleSubset]):
        self.ring = ring
        self.points = tuple(sorted(points, key=lambda p: p.key))
        self.commutative = ring.is_commutative
        self.kind = "full spectrum" if self.commutative else "subset spectrum"
        self._index = {p.members: i for i, p in enumerate(self.points)}
        if self.points[0].members != ring.units:
            raise AssertionError("the unit group must be the first point")

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"FullSpectrum({self.ring.label}, {len(self)} points)"

    def index_of(self, members: Iterable[int]) -> int:
        return self._index[frozenset(members)]

    def leq(self, i: int, j: int) -> bool:
        return self.points[i].members <= self.points[j].members

    def _require_topology(self) -> None:
        if not self.commutative:
            raise NonCommutativeError(
                "topology is disabled on the subset spectrum of a noncommutative ring")

    @cached_property
    def basis(self) -> dict[int, frozenset[int]]:
        """Element a -> D(a)."""
        return {a: frozenset(i for i, p in enumerate(self.points) if a in p.members)
                for a in self.ring.elements}

    @cached_property
    def basis_opens(self) -> list[tuple[frozenset[int], int]]:
        """Distinct nonempty D(a) with their least generating element."""
        out: dict[frozenset[int], int] = {}
        for a, d in self.basis.items():
            if d and d not in out:
                out[d] = a
        return sorted(out.items(), key=lambda kv: (-len(kv[0]), sorted(kv[0])))

    @cached_property
    def basis_sets(self) -> list[frozenset[int]]:
        return [d for d, _ in self.basis_opens]

    @property
    def center(self) -> int:
        return 0

    def localization(self, i: int) -> FractionRing:
        require_commutative(self.ring, "localizing at a point")
        return localize(self.ring, self.points[i].members)

    @cached_property
    def specialization(self) -> list[list[bool]]:
        self._require_topology()
        return topology.specialization(len(self), self.basis_sets)


@lru_cache(maxsize=None)
def fully_invertible_subsets(ring: FiniteRing) -> FullSpectrum:
    if ring.is_commutative:
        pts = []
        for s in three_condition_points(ring):
            frac = localize(ring, s)
            ker = TwoSidedIdeal(ring, frac.canonical_map.kernel())
            pts.append(FullyInvertibleSubset(ring, s, frac.canonical_map, ker))
        return FullSpectrum(ring, pts)
    return FullSpectrum(ring, quotient_witness_points(ring))


def is_fully_invertible(ring: FiniteRing, s: Iterable[int]) -> bool:
    s = frozenset(s)
    if ring.is_commutative:
        return satisfies_three_conditions(ring, s)
    return any(p.members == s for p in fully_invertible_subsets(ring).points)


# fractions and fundamental opens

@dataclass(frozen=True, eq=False)
class Fraction:
    """A chain (a1, ..., an); rings[k] is the ring holding chain[k]."""

    base: FiniteRing
    chain: tuple[int, ...]
    rings: tuple[FiniteRing, ...]
    steps: tuple[FractionRing, ...]


def make_fraction(ring: FiniteRing, chain: Sequence[int] | int) -> Fraction:
    chain = (chain,) if isinstance(chain, int) else tuple(chain)
    if not chain:
        raise InvalidFractionError("a fraction needs at least one element")
    if len(chain) > 1:
        require_commutative(ring, "fraction chains of length > 1")
    rings = [ring]
    steps = []
    for k, a in enumerate(chain):
        if not 0 <= a < rings[-1].order:
            raise InvalidFractionError(f"entry {k} is not an element of {rings[-1].label}")
        if k < len(chain) - 1:
            try:
                frac = localize(rings[-1], [a])
            except ZeroLocalizationError as exc:
                raise InvalidFractionError(f"prefix {chain[:k + 1]} localizes to zero") from exc
            steps.append(frac)
            rings.append(frac.ring)
    return Fraction(ring, chain, tuple(rings), tuple(steps))


def fundamental_open(spec: FullSpectrum, frac) -> frozenset[int]:
    """D(a1, ..., an): points at which every ai becomes invertible in turn."""
    if not isinstance(frac, Fraction):
        frac = make_fraction(spec.ring, frac)
    if frac.base is not spec.ring:
        raise InvalidFractionError("fraction belongs to a different ring")
    if len(frac.chain) == 1:
        return spec.basis[frac.chain[0]]
    out = []
    for i in range(len(spec)):
        h = spec.localization(i).canonical_map
        ok = True
        for k, a in enumerate(frac.chain):
            if h(a) not in h.target.units:
                ok = False
                break
            if k < len(frac.steps):
                h = frac.steps[k].lift(h)
        if ok:
            out.append(i)
    return frozenset(out)


def closure_of_point(spec: FullSpectrum, t: int) -> frozenset[int]:
    """Down-set of t; equal to the topological closure (checked in tests)."""
    return frozenset(i for i in range(len(spec)) if spec.leq(i, t))


def topological_closure(spec: FullSpectrum, subset: Iterable[int]) -> frozenset[int]:
    spec._require_topology()
    return topology.closure(len(spec), spec.basis_sets, subset)


def center(spec: FullSpectrum) -> FullyInvertibleSubset:
    """U(A), after checking it is the unique closed point and lies in every nonempty closed set."""
    c = spec.center
    n = len(spec)
    if spec.commutative:
        closed_points = [i for i in range(n) if topological_closure(spec, [i]) == {i}]
        if closed_points != [c]:
            raise AssertionError("the center is not the unique closed point")
        if topology.center_of(range(n), spec.specialization) != c:
            raise AssertionError("the center is not below every point")
    elif not all(spec.leq(c, i) for i in range(n)):
        raise AssertionError("U(A) is not contained in every point")
    return spec.points[c]


def open_sets(spec: FullSpectrum, bound: int | None = None) -> list[OpenSet]:
    spec._require_topology()
    opens = topology.opens_from_basis(len(spec), spec.basis_sets, bound)
    leq = spec.specialization
    return [OpenSet(u, topology.center_of(u, leq)) for u in opens]


# closed loci

@dataclass(frozen=True)
class ClosedLocus:
    ideal: TwoSidedIdeal
    points: frozenset[int]
    closure: frozenset[int]


def z_locus(spec: FullSpectrum, ideal: TwoSidedIdeal) -> ClosedLocus:
    """Z(I) = {S : I maps into J(A_S)}, and {S : I generates a proper ideal of A_S}."""
    spec._require_topology()
    inside, near = [], []
    for i in range(len(spec)):
        frac = spec.localization(i)
        image = {frac.canonical_map(x) for x in ideal.members}
        if image <= jacobson_radical(frac.ring).members:
            inside.append(i)
        if ideal_generated(frac.ring, image).is_proper:
            near.append(i)
    return ClosedLocus(ideal, frozenset(inside), frozenset(near))


@dataclass
class SubschemeComparison:
    quotient_ring: FiniteRing
    projection: RingHom
    quotient_spectrum: FullSpectrum
    point_map: list[int]
    locus: ClosedLocus
    bijective: bool
    homeomorphic: bool
    stalk_isomorphisms: list[bool] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijective and self.homeomorphic and all(self.stalk_isomorphisms)


def closed_subscheme_compare(ring: FiniteRing, ideal: TwoSidedIdeal,
                             bound: int | None = None) -> SubschemeComparison:
    require_commutative(ring, "closed_subscheme_compare")
    if not ideal.is_proper:
        raise ImproperIdealError("the ideal must be proper")
    spec = fully_invertible_subsets(ring)
    q, pi = quotient(ring, ideal)
    qspec = fully_invertible_subsets(q)
    point_map = [spec.index_of(pi.preimage(t.members)) for t in qspec.points]
    locus = z_locus(spec, ideal)
    bijective = (len(set(point_map)) == len(point_map)
                 and frozenset(point_map) == locus.points)
    try:
        q_opens = {frozenset(point_map[j] for j in o.points) for o in open_sets(qspec, bound)}
        a_opens = {o.points & locus.points for o in open_sets(spec, bound)}
        homeomorphic = bijective and q_opens == a_opens
    except BoundExceededError:
        # fall back to basis comparison: D(pi(b)) ↔ D(b) ∩ Z
        homeomorphic = bijective and all(
            frozenset(point_map[j] for j in qspec.basis[pi(b)]) == spec.basis[b] & locus.points
            for b in ring.elements)
    stalks = []
    for j, t in enumerate(qspec.points):
        local_a = spec.localization(point_map[j])
        local_q = qspec.localization(j)
        psi = local_a.lift(compose(pi, local_q.canonical_map))
        generated = ideal_generated(local_a.ring,
                                    {local_a.canonical_map(x) for x in ideal.members})
        stalks.append(psi.is_surjective() and psi.kernel() == generated.members)
    return SubschemeComparison(q, pi, qspec, point_map, locus, bijective, homeomorphic, stalks)
