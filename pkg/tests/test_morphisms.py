import itertools

import pytest

from fscheme.corpus import by_label, commutative_corpus, corpus
from fscheme.errors import NonCommutativeError
from fscheme.ideals import enumerate_two_sided_ideals, quotient
from fscheme.morphisms import (L_on_morphisms, global_sections_map, hom_roundtrip, morphism_data,
                               pullback_point, spectral_map, stalk_map, stalk_map_localness)
from fscheme.ring import RingHom, compose, enumerate_homs, is_local_hom, make_zmod
from fscheme.spectrum import fully_invertible_subsets, is_fully_invertible, z_locus

SMALL = [r for r in commutative_corpus() if r.order <= 12]
PAIRS = [(a, b) for a in SMALL for b in SMALL]


def homs_from(a):
    for b in SMALL:
        yield from enumerate_homs(a, b)


def homs_between(rings):
    for a, b in itertools.product(rings, repeat=2):
        yield from enumerate_homs(a, b)


def test_pullback_examples():
    z12, z6 = make_zmod(12), make_zmod(6)
    phi = RingHom(z12, z6, [k % 6 for k in range(12)])
    pts = fully_invertible_subsets(z6).points
    assert [sorted(pullback_point(phi, p).members) for p in pts] == [
        [1, 5, 7, 11], [1, 3, 5, 7, 9, 11], [1, 2, 4, 5, 7, 8, 10, 11]]
    with pytest.raises(ValueError):
        pullback_point(phi, fully_invertible_subsets(z12).points[0])


@pytest.mark.parametrize("a", SMALL, ids=lambda r: r.label)
def test_pullbacks_are_points(a):
    for phi in homs_from(a):
        for p in fully_invertible_subsets(phi.target).points:
            q = pullback_point(phi, p)
            assert is_fully_invertible(a, q.members) and q.witness_holds()


def test_pullbacks_noncommutative():
    for a in corpus():
        for b in [r for r in corpus() if r.order <= 16]:
            for phi in enumerate_homs(a, b) if a.order * b.order <= 300 else []:
                for p in fully_invertible_subsets(b).points:
                    assert pullback_point(phi, p).witness_holds()


@pytest.mark.parametrize("a", SMALL, ids=lambda r: r.label)
def test_spectral_maps_continuous(a):
    for phi in homs_from(a):
        assert spectral_map(phi).continuous


def test_functoriality():
    for a, b, c in itertools.product([r for r in SMALL if r.order <= 6], repeat=3):
        for phi in enumerate_homs(a, b):
            for psi in enumerate_homs(b, c):
                f, g = spectral_map(phi), spectral_map(psi)
                h = spectral_map(compose(phi, psi))
                assert all(h(i) == f(g(i)) for i in range(len(h.point_map)))
    ident = spectral_map(RingHom.identity(make_zmod(30)))
    assert ident.point_map == tuple(range(7))


@pytest.mark.parametrize("a", SMALL, ids=lambda r: r.label)
def test_stalk_maps_are_local(a):
    for phi in homs_from(a):
        for s in range(len(fully_invertible_subsets(phi.target))):
            assert stalk_map_localness(phi, s)


def test_stalk_map_example():
    z6, z3 = make_zmod(6), make_zmod(3)
    phi = RingHom(z6, z3, [k % 3 for k in range(6)])
    h = stalk_map(phi, 0)
    # A at {1,2,4,5} is Z/3, and the map to Z/3 is an isomorphism
    assert h.source.order == 3 and h.is_bijective() and is_local_hom(h)


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_quotient_image_is_z_locus(ring):
    spec = fully_invertible_subsets(ring)
    for ideal in enumerate_two_sided_ideals(ring):
        if ideal.is_proper:
            _, pi = quotient(ring, ideal)
            assert set(spectral_map(pi).point_map) == z_locus(spec, ideal).points


def test_roundtrip_all_small_homs():
    count = 0
    for phi in homs_between(SMALL):
        assert hom_roundtrip(phi)
        count += 1
    assert count > 30


def test_distinct_homs_give_distinct_morphisms():
    v = by_label("Z/2xZ/2")
    ident = RingHom.identity(v)
    swap = RingHom(v, v, [v.element((y, x)) for x, y in v.coords])
    assert ident.map != swap.map
    assert morphism_data(ident) != morphism_data(swap)
    assert spectral_map(ident).point_map != spectral_map(swap).point_map


def test_morphism_data_injective_on_small_homs():
    for a, b in PAIRS:
        data = [morphism_data(phi) for phi in enumerate_homs(a, b)]
        assert len(set(data)) == len(data)


def test_global_sections_map_is_phi():
    phi = RingHom(make_zmod(12), make_zmod(4), [k % 4 for k in range(12)])
    assert global_sections_map(phi).source.order == 12
    assert hom_roundtrip(phi)


@pytest.mark.parametrize("a", SMALL, ids=lambda r: r.label)
def test_L_on_morphisms_agrees(a):
    for phi in homs_from(a):
        assert L_on_morphisms(phi).agrees


def test_L_example():
    z30, z6 = make_zmod(30), make_zmod(6)
    phi = RingHom(z30, z6, [k % 6 for k in range(30)])
    lm = L_on_morphisms(phi)
    assert len(lm.mapping) == 2 and lm.agrees


def test_noncommutative_stalks_rejected():
    m2 = by_label("M2(Z/2)")
    with pytest.raises(NonCommutativeError):
        stalk_map(RingHom.identity(m2), 0)
    assert spectral_map(RingHom.identity(m2)).continuous is None
