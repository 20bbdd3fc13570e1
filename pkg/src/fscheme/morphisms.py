"""Ring homomorphisms as morphisms of full spectra."""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import TwoSidedIdeal
from .localization import contract, localize, prime_ideals, require_commutative
from .ring import RingHom, compose, is_local_hom
from .spectrum import FullSpectrum, FullyInvertibleSubset, fully_invertible_subsets


def pullback_point(phi: RingHom, s: FullyInvertibleSubset) -> FullyInvertibleSubset:
    """φ⁻¹(S), witnessed by the composite of φ with the witness of S."""
    if s.ring is not phi.target:
        raise ValueError("the point must live on the target ring")
    members = phi.preimage(s.members)
    if s.witness is None:
        return FullyInvertibleSubset(phi.source, members)
    w = compose(phi, s.witness)
    return FullyInvertibleSubset(phi.source, members, w, TwoSidedIdeal(phi.source, w.kernel()))


@dataclass
class SpectralMap:
    phi: RingHom
    source_spec: FullSpectrum   # F(target of φ)
    target_spec: FullSpectrum   # F(source of φ)
    point_map: tuple[int, ...]
    continuity: dict[int, bool] | None

    @property
    def continuous(self) -> bool | None:
        return None if self.continuity is None else all(self.continuity.values())

    def __call__(self, i: int) -> int:
        return self.point_map[i]


def spectral_map(phi: RingHom) -> SpectralMap:
    """F(B) -> F(A), S ↦ φ⁻¹(S), with f⁻¹(D(a)) = D(φ(a)) checked for every a."""
    fa = fully_invertible_subsets(phi.source)
    fb = fully_invertible_subsets(phi.target)
    pm = tuple(fa.index_of(phi.preimage(p.members)) for p in fb.points)
    continuity = None
    if fa.commutative and fb.commutative:
        continuity = {}
        for a in phi.source.elements:
            pre = frozenset(i for i, j in enumerate(pm) if j in fa.basis[a])
            continuity[a] = pre == fb.basis[phi(a)]
    return SpectralMap(phi, fb, fa, pm, continuity)


def stalk_map(phi: RingHom, s: int | FullyInvertibleSubset) -> RingHom:
    """A_{φ⁻¹(S)} -> B_S, from the universal property."""
    require_commutative(phi.source, "stalk maps")
    require_commutative(phi.target, "stalk maps")
    fb = fully_invertible_subsets(phi.target)
    point = fb.points[s] if isinstance(s, int) else s
    local_b = localize(phi.target, point.members)
    local_a = localize(phi.source, phi.preimage(point.members))
    return local_a.lift(compose(phi, local_b.canonical_map))


def stalk_map_localness(phi: RingHom, s: int | FullyInvertibleSubset) -> bool:
    return is_local_hom(stalk_map(phi, s))


def global_sections_map(phi: RingHom) -> RingHom:
    """Γ(F(A)) -> Γ(F(B)), with both sides taken as the localization at the unit group."""
    require_commutative(phi.source, "global sections")
    require_commutative(phi.target, "global sections")
    ga = localize(phi.source, phi.source.units)
    gb = localize(phi.target, phi.target.units)
    return ga.lift(compose(phi, gb.canonical_map))


def hom_roundtrip(phi: RingHom) -> bool:
    """Build the morphism from φ and read φ back through Γ ≅ A on both sides."""
    A, B = phi.source, phi.target
    ga = localize(A, A.units).canonical_map
    gb = localize(B, B.units).canonical_map
    if not (ga.is_bijective() and gb.is_bijective()):
        return False
    gb_inv = {v: k for k, v in enumerate(gb.map)}
    sharp = global_sections_map(phi)
    readback = tuple(gb_inv[sharp(ga(a))] for a in A.elements)
    sm = spectral_map(phi)
    points_ok = all(sm.target_spec.points[sm(i)].members == phi.preimage(p.members)
                    for i, p in enumerate(sm.source_spec.points))
    return readback == phi.map and points_ok


def morphism_data(phi: RingHom) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(point map, global-sections map): the data of the induced morphism."""
    return spectral_map(phi).point_map, global_sections_map(phi).map


@dataclass
class LMap:
    mapping: dict[int, int]     # prime index in B -> prime index in A
    agrees: bool


def L_on_morphisms(phi: RingHom) -> LMap:
    """Spec(B) -> Spec(A) by contraction, compared with the spectral map on local points."""
    A, B = phi.source, phi.target
    require_commutative(A, "L_on_morphisms")
    require_commutative(B, "L_on_morphisms")
    pa, pb = list(prime_ideals(A)), list(prime_ideals(B))
    index_a = {p.members: k for k, p in enumerate(pa)}
    mapping = {k: index_a[contract(phi, q).members] for k, q in enumerate(pb)}
    sm = spectral_map(phi)
    fa, fb = sm.target_spec, sm.source_spec
    ea, eb = frozenset(A.elements), frozenset(B.elements)
    agrees = True
    for k, q in enumerate(pb):
        x = fb.index_of(eb - q.members)
        if fa.points[sm(x)].members != ea - pa[mapping[k]].members:
            agrees = False
    return LMap(mapping, agrees)
