"""Sheaves on finite spaces as inverse limits over basis opens.

Sections over an open U are the compatible tuples indexed by the basis opens inside U.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import limits
from .errors import (BoundExceededError, HomomorphismError, NoCenterError,
                     NonCommutativeError, PreconditionError)
from .ideals import TwoSidedIdeal
from .localization import localize, prime_ideals, require_commutative
from .modules import FiniteModule, LocalizedModule, ModuleHom
from .ring import FiniteRing, RingHom, is_local_ring
from .space import FSpace
from .spectrum import FullSpectrum, fully_invertible_subsets, open_sets
from . import topology


@dataclass
class Sections:
    open: frozenset[int]
    index: tuple[int, ...]
    elements: list[tuple[int, ...]]
    position: dict[tuple[int, ...], int]
    addl: list[list[int]]
    zero: int
    ring: FiniteRing | None = None

    @property
    def order(self) -> int:
        return len(self.elements)


class SheafAssignment:
    """values[i] sits over space.basis[i]; maps[(i, j)] is the restriction as an index map."""

    def __init__(self, space: FSpace, values: Sequence, maps: dict[tuple[int, int], tuple],
                 kind: str = "ring"):
        self.space = space
        self.values = list(values)
        self.maps = dict(maps)
        self.kind = kind
        self._memo: dict[frozenset[int], Sections] = {}

    def basis_inside(self, u: Iterable[int]) -> tuple[int, ...]:
        u = frozenset(u)
        inside = [i for i, b in enumerate(self.space.basis) if b and b <= u]
        return tuple(sorted(inside, key=lambda i: (-len(self.space.basis[i]), i)))

    def sections(self, u: Iterable[int]) -> Sections:
        u = frozenset(u)
        if u not in self._memo:
            self._memo[u] = self._build(u)
        return self._memo[u]

    def _build(self, u: frozenset[int]) -> Sections:
        idx = self.basis_inside(u)
        basis = self.space.basis
        parents = [[(p, self.maps[(idx[p], idx[k])]) for p in range(k)
                    if basis[idx[k]] <= basis[idx[p]]] for k in range(len(idx))]
        found: list[tuple[int, ...]] = []
        cur: list[int] = []

        def extend(k: int) -> None:
            if k == len(idx):
                found.append(tuple(cur))
                return
            if parents[k]:
                p0, m0 = parents[k][0]
                v = m0[cur[p0]]
                if all(m[cur[p]] == v for p, m in parents[k][1:]):
                    cur.append(v)
                    extend(k + 1)
                    cur.pop()
                return
            for v in range(self.values[idx[k]].order):
                cur.append(v)
                extend(k + 1)
                cur.pop()

        extend(0)
        found.sort()
        pos = {t: n for n, t in enumerate(found)}
        vals = [self.values[i] for i in idx]
        addl = [[pos[tuple(v.addl[x][y] for v, x, y in zip(vals, s, t))] for t in found]
                for s in found]
        zero = pos[tuple(v.zero for v in vals)]
        ring = None
        if self.kind == "ring" and len(found) >= 2:
            mul = [[pos[tuple(v.mull[x][y] for v, x, y in zip(vals, s, t))] for t in found]
                   for s in found]
            one = pos[tuple(v.one for v in vals)]
            names = ["(" + ",".join(v.fmt(x) for v, x in zip(vals, s)) + ")" for s in found]
            ring = FiniteRing(addl, mul, zero, one, label="sections", names=names, check=False)
        return Sections(u, idx, found, pos, addl, zero, ring)

    def restrict(self, u: Iterable[int], v: Iterable[int], element: tuple[int, ...]) -> tuple[int, ...]:
        """Restriction U -> V of a section, as a tuple over the basis opens inside V."""
        su, sv = self.sections(u), self.sections(v)
        where = {i: k for k, i in enumerate(su.index)}
        return tuple(element[where[i]] for i in sv.index)

    def stalk(self, x: int) -> Sections:
        return self.sections(self.space.minimal_open(x))


# the structure sheaf of F(A)

@lru_cache(maxsize=None)
def spectrum_space(spec: FullSpectrum) -> FSpace:
    """The ringed space F(A): basis opens D(a) carrying A localized at the center of D(a)."""
    if not spec.commutative:
        raise NonCommutativeError("sheaves are only built over commutative rings")
    A = spec.ring
    leq = spec.specialization
    basis = spec.basis_sets
    centers = []
    fracs = []
    for d in basis:
        c = topology.center_of(d, leq)
        centers.append(c)
        fracs.append(spec.localization(c))
    restrictions = {}
    for i, di in enumerate(basis):
        for j, dj in enumerate(basis):
            if dj <= di:
                fi, fj = fracs[i], fracs[j]
                restrictions[(i, j)] = RingHom(fi.ring, fj.ring,
                                               [fj.fraction(a, s) for a, s in fi.classes],
                                               check=False)
    labels = [A.fmt_set(p.members) for p in spec.points]
    space = FSpace(labels, basis, [f.ring for f in fracs], restrictions, name=f"F({A.label})")
    space.spectrum = spec
    space.centers = centers
    space.fractions = fracs
    return space


def _ring_sheaf(space: FSpace) -> SheafAssignment:
    return SheafAssignment(space, space.rings,
                           {k: h.map for k, h in space.restrictions.items()}, kind="ring")


@lru_cache(maxsize=None)
def structure_sheaf(spec: FullSpectrum) -> SheafAssignment:
    sheaf = _ring_sheaf(spectrum_space(spec))
    sheaf.spectrum = spec
    return sheaf


def space_sheaf(space: FSpace) -> SheafAssignment:
    """The ring sheaf of an arbitrary FSpace."""
    return _ring_sheaf(space)


def stalk(sheaf: SheafAssignment, x: int) -> FiniteRing | Sections:
    s = sheaf.stalk(x)
    return s.ring if sheaf.kind == "ring" and s.ring is not None else s


def _top_projection(sheaf: SheafAssignment, u: frozenset[int]) -> tuple[Sections, int]:
    secs = sheaf.sections(u)
    top = [k for k, i in enumerate(secs.index) if sheaf.space.basis[i] == u]
    if not top:
        raise PreconditionError("the open is not a basis open")
    return secs, top[0]


def _projection_is_iso(sheaf: SheafAssignment, u: frozenset[int]) -> bool:
    """Sections over a basis open map bijectively and homomorphically onto its value."""
    secs, k = _top_projection(sheaf, u)
    value = sheaf.values[secs.index[k]]
    proj = [t[k] for t in secs.elements]
    if len(set(proj)) != len(proj) or len(proj) != value.order:
        return False
    if sheaf.kind == "ring":
        if secs.ring is None:
            return False
        try:
            RingHom(secs.ring, value, proj)
        except HomomorphismError:
            return False
    else:
        n = secs.order
        if any(proj[secs.addl[a][b]] != value.addl[proj[a]][proj[b]]
               for a in range(n) for b in range(n)):
            return False
    return True


def stalk_matches_localization(sheaf: SheafAssignment, x: int) -> bool:
    """stalk at S ≅ S⁻¹A (or S⁻¹M), by projecting onto the basis open centered at S."""
    space = sheaf.space
    u = space.minimal_open(x)
    i = space.basis.index(u)
    if space.centers[i] != x:
        return False
    return _projection_is_iso(sheaf, u)


def global_sections_match(sheaf: SheafAssignment) -> bool:
    """Γ ≅ A: sections over everything project isomorphically onto A_{U(A)}, and A ≅ A_{U(A)}."""
    space = sheaf.space
    whole = frozenset(range(space.n))
    if not _projection_is_iso(sheaf, whole):
        return False
    i = space.basis.index(whole)
    if sheaf.kind == "ring":
        return space.fractions[i].canonical_map.is_bijective()
    can = sheaf.values[i].canonical_map
    return len(set(can)) == len(can) == sheaf.values[i].order


@dataclass
class SheafCheck:
    ok: bool
    witness: str | None = None
    covers_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _antichain_covers(u: frozenset[int], cands: list[frozenset[int]], cap: int):
    """Every antichain of cands (under inclusion) whose union is u."""
    cands = sorted(cands, key=lambda v: (-len(v), sorted(v)))
    out = []
    suffix_union = [frozenset()] * (len(cands) + 1)
    for k in range(len(cands) - 1, -1, -1):
        suffix_union[k] = suffix_union[k + 1] | cands[k]

    def walk(k: int, chosen: list[frozenset[int]], covered: frozenset[int]) -> None:
        if covered == u:
            out.append(list(chosen))
            if len(out) > cap:
                raise BoundExceededError(f"more than {cap} covers to check")
        if k == len(cands) or not (u - covered) <= suffix_union[k]:
            return
        v = cands[k]
        if not any(v <= w or w <= v for w in chosen):
            walk(k + 1, chosen + [v], covered | v)
        walk(k + 1, chosen, covered)

    walk(0, [], frozenset())
    # the walk can record a cover and then keep adding sets; keep each antichain once
    seen, unique = set(), []
    for c in out:
        key = frozenset(c)
        if key not in seen:
            seen.add(key)
            unique.append(c)
    return unique


def _check_maps(sheaf: SheafAssignment) -> str | None:
    space = sheaf.space
    for (i, j), m in sheaf.maps.items():
        src, dst = sheaf.values[i], sheaf.values[j]
        if sheaf.kind == "ring":
            try:
                RingHom(src, dst, m)
            except HomomorphismError as exc:
                return f"restriction {i}->{j} is not a ring hom: {exc}"
        elif any(m[src.addl[a][b]] != dst.addl[m[a]][m[b]]
                 for a in range(src.order) for b in range(src.order)):
            return f"restriction {i}->{j} is not additive"
        if i == j and any(m[x] != x for x in range(src.order)):
            return f"restriction {i}->{i} is not the identity"
    n = len(space.basis)
    for i in range(n):
        for j in range(n):
            if (i, j) not in sheaf.maps:
                continue
            for k in range(n):
                if (j, k) in sheaf.maps and (i, k) in sheaf.maps:
                    mij, mjk, mik = sheaf.maps[(i, j)], sheaf.maps[(j, k)], sheaf.maps[(i, k)]
                    if any(mjk[mij[x]] != mik[x] for x in range(len(mij))):
                        return f"restrictions {i}->{j}->{k} do not compose"
    return None


def verify_sheaf_condition(sheaf: SheafAssignment, bound: int | None = None,
                           max_covers: int | None = None) -> SheafCheck:
    """Presheaf axioms, then locality and gluing for every antichain cover of every open."""
    bad = _check_maps(sheaf)
    if bad:
        return SheafCheck(False, bad)
    cap = limits.MAX_COVERS if max_covers is None else max_covers
    opens = sheaf.space.opens(bound)
    checked = 0
    for u in opens:
        if not u:
            continue
        secs = sheaf.sections(u)
        cands = [v for v in opens if v and v <= u]
        for cover in _antichain_covers(u, cands, cap):
            checked += 1
            images = {tuple(sheaf.restrict(u, v, s) for v in cover) for s in secs.elements}
            if len(images) != secs.order:
                return SheafCheck(False, f"locality fails on {sorted(u)} for cover "
                                         f"{[sorted(v) for v in cover]}", checked)
            if _count_families(sheaf, cover) != len(images):
                return SheafCheck(False, f"gluing fails on {sorted(u)} for cover "
                                         f"{[sorted(v) for v in cover]}", checked)
    return SheafCheck(True, None, checked)


def _count_families(sheaf: SheafAssignment, cover: list[frozenset[int]]) -> int:
    secs = [sheaf.sections(v) for v in cover]
    k = len(cover)
    meets = {(a, b): cover[a] & cover[b] for a in range(k) for b in range(a)}
    count = 0
    chosen: list[tuple[int, ...]] = []

    def walk(a: int) -> None:
        nonlocal count
        if a == k:
            count += 1
            return
        for t in secs[a].elements:
            if all(sheaf.restrict(cover[a], meets[(a, b)], t)
                   == sheaf.restrict(cover[b], meets[(a, b)], chosen[b]) for b in range(a)):
                chosen.append(t)
                walk(a + 1)
                chosen.pop()

    walk(0)
    return count


def local_points(sheaf: SheafAssignment) -> frozenset[int]:
    out = []
    for x in range(sheaf.space.n):
        r = sheaf.stalk(x).ring
        if r is not None and is_local_ring(r):
            out.append(x)
    return frozenset(out)


@dataclass
class LComparison:
    ring: FiniteRing
    primes: list[TwoSidedIdeal]
    local_points: frozenset[int]
    bijection: dict[int, int]
    bijective: bool
    topology_agrees: bool
    stalks_agree: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.topology_agrees and self.stalks_agree


def compare_L_with_spec(ring: FiniteRing, bound: int | None = None) -> LComparison:
    require_commutative(ring, "compare_L_with_spec")
    spec = fully_invertible_subsets(ring)
    sheaf = structure_sheaf(spec)
    primes = list(prime_ideals(ring))
    local = local_points(sheaf)
    everything = frozenset(ring.elements)
    bijection = {}
    for k, p in enumerate(primes):
        comp = everything - p.members
        if comp in spec._index:
            bijection[k] = spec.index_of(comp)
    bijective = (len(bijection) == len(primes)
                 and frozenset(bijection.values()) == local
                 and len(set(bijection.values())) == len(primes))
    zariski_basis = [frozenset(k for k, p in enumerate(primes) if a not in p.members)
                     for a in ring.elements]
    zariski = set(topology.opens_from_basis(len(primes), zariski_basis, bound))
    induced = set()
    back = {v: k for k, v in bijection.items()}
    for o in open_sets(spec, bound):
        induced.add(frozenset(back[x] for x in o.points & local if x in back))
    topology_agrees = bijective and induced == zariski
    stalks_agree = True
    for k, x in bijection.items():
        frac = localize(ring, everything - primes[k].members)
        st = sheaf.stalk(x)
        if not (stalk_matches_localization(sheaf, x) and is_local_ring(frac.ring)
                and st.order == frac.ring.order):
            stalks_agree = False
    return LComparison(ring, primes, local, bijection, bijective, topology_agrees, stalks_agree)


# module sheaves

@lru_cache(maxsize=None)
def module_sheaf(spec: FullSpectrum, module: FiniteModule) -> SheafAssignment:
    if module.ring is not spec.ring:
        raise PreconditionError("module is over a different ring")
    space = spectrum_space(spec)
    values = [LocalizedModule(module, f) for f in space.fractions]
    maps = {}
    for (i, j) in space.restrictions:
        vi, vj = values[i], values[j]
        maps[(i, j)] = tuple(vj.class_of(m, s) for m, s in vi.classes)
    sheaf = SheafAssignment(space, values, maps, kind="module")
    sheaf.spectrum = spec
    sheaf.module = module
    return sheaf


@dataclass
class ModuleSheafSequence:
    """F1 -f-> F2 -g-> F3 over one space, given on basis opens."""

    sheaves: tuple[SheafAssignment, SheafAssignment, SheafAssignment]
    f_maps: list[tuple[int, ...]]
    g_maps: list[tuple[int, ...]]

    @property
    def space(self) -> FSpace:
        return self.sheaves[0].space


def module_sheaf_sequence(spec: FullSpectrum, f: ModuleHom, g: ModuleHom) -> ModuleSheafSequence:
    sheaves = (module_sheaf(spec, f.source), module_sheaf(spec, f.target),
               module_sheaf(spec, g.target))
    if g.source is not f.target:
        raise PreconditionError("f and g are not composable")

    def induced(h: ModuleHom, src: SheafAssignment, dst: SheafAssignment):
        return [tuple(dv.class_of(h(m), s) for m, s in sv.classes)
                for sv, dv in zip(src.values, dst.values)]

    return ModuleSheafSequence(sheaves, induced(f, sheaves[0], sheaves[1]),
                               induced(g, sheaves[1], sheaves[2]))


def _exact(a: Sections, b: Sections, c: Sections, f, g) -> bool:
    fi = [f(t) for t in a.elements]
    gi = [g(t) for t in b.elements]
    if len(set(fi)) != len(fi):
        return False
    if set(gi) != set(c.elements):
        return False
    kernel = {t for t, v in zip(b.elements, gi) if v == c.elements[c.zero]}
    return kernel == set(fi)


def _apply(maps, secs_src: Sections):
    return lambda t: tuple(maps[i][x] for i, x in zip(secs_src.index, t))


def gamma_exactness_check(space: FSpace, seq: ModuleSheafSequence) -> bool:
    """Exactness of global sections for a stalkwise exact sequence on a centered space."""
    if space.center() is None:
        raise NoCenterError(f"{space.name or 'space'} has no center")
    if seq.space is not space:
        raise PreconditionError("the sequence lives on a different space")
    F1, F2, F3 = seq.sheaves
    for x in range(space.n):
        u = space.minimal_open(x)
        a, b, c = F1.sections(u), F2.sections(u), F3.sections(u)
        if not _exact(a, b, c, _apply(seq.f_maps, a), _apply(seq.g_maps, b)):
            raise PreconditionError(f"sequence is not exact on the stalk at {space.labels[x]}")
    whole = frozenset(range(space.n))
    a, b, c = F1.sections(whole), F2.sections(whole), F3.sections(whole)
    return _exact(a, b, c, _apply(seq.f_maps, a), _apply(seq.g_maps, b))
