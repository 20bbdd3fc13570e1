import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fscheme.corpus import by_label, commutative_corpus
from fscheme.errors import NonCommutativeError, ZeroLocalizationError
from fscheme.localization import (MultiplicativeSet, contract, is_invertible_in_localization,
                                  localize, multiplicative_closure, prime_ideals, saturation,
                                  spec_of_localization)
from fscheme.ring import compose, enumerate_homs, is_local_ring, make_zmod
from fscheme.spectrum import fully_invertible_subsets

import oracles

SMALL = [r for r in commutative_corpus() if r.order <= 12]


def test_localize_examples():
    z6 = make_zmod(6)
    f = localize(z6, {1, 2, 4})
    assert f.ring.order == 3 and f.canonical_map(2) in f.ring.units
    assert localize(z6, {1}).canonical_map.is_bijective()
    assert localize(z6, {1, 3}).ring.order == 2
    with pytest.raises(ZeroLocalizationError):
        localize(z6, {1, 2, 3})
    with pytest.raises(NonCommutativeError):
        localize(by_label("M2(Z/2)"), {1})


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_fraction_sizes_match_pair_oracle(ring):
    for p in fully_invertible_subsets(ring).points:
        s = p.members
        assert localize(ring, s).ring.order == oracles.fraction_classes(ring, s)


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_fraction_ring_axioms(ring):
    for p in fully_invertible_subsets(ring).points:
        f = localize(ring, p.members)
        f.ring.validate()
        f.canonical_map.validate()
        assert all(f.canonical_map(s) in f.ring.units for s in p.members)


def test_invertibility_examples():
    z6, s = make_zmod(6), {1, 2, 4}
    assert is_invertible_in_localization(z6, s, 2)
    assert is_invertible_in_localization(z6, s, 5)
    assert not is_invertible_in_localization(z6, s, 3)


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_invertibility_agrees_with_fraction_ring(ring):
    for p in fully_invertible_subsets(ring).points:
        f = localize(ring, p.members)
        for x in ring.elements:
            direct = f.canonical_map(x) in f.ring.units
            assert is_invertible_in_localization(ring, p.members, x) == direct
            hits = any(ring.mull[a][x] in p.members for a in ring.elements)
            assert hits == direct


def test_saturation_examples():
    assert saturation(make_zmod(6), {1, 2}) == {1, 2, 4, 5}
    z4 = make_zmod(4)
    assert saturation(z4, z4.units) == z4.units
    assert saturation(z4, {1, 3}) == {1, 3}


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_saturation_is_smallest_point(ring):
    points = [p.members for p in fully_invertible_subsets(ring).points]
    for x in ring.elements:
        gens = multiplicative_closure(ring, [x])
        if ring.zero in gens:
            continue
        sat = saturation(ring, gens)
        assert gens <= sat and saturation(ring, sat) == sat
        assert sat in points
        assert sat == min((p for p in points if gens <= p), key=len)


def test_prime_examples():
    assert {p.members for p in prime_ideals(make_zmod(6))} == {
        frozenset({0, 2, 4}), frozenset({0, 3})}
    assert [p.members for p in prime_ideals(make_zmod(4))] == [frozenset({0, 2})]
    assert [p.members for p in prime_ideals(by_label("F4"))] == [frozenset({0})]


@pytest.mark.parametrize("ring", [r for r in commutative_corpus() if r.order <= 9],
                         ids=lambda r: r.label)
def test_primes_match_sweep(ring):
    assert {p.members for p in prime_ideals(ring)} == oracles.primes_by_sweep(ring)


def test_spec_of_localization_examples():
    z6 = make_zmod(6)
    assert [p.members for p in spec_of_localization(z6, {1, 2, 4})] == [frozenset({0, 3})]
    assert len(spec_of_localization(z6, {1})) == 2
    assert len(spec_of_localization(z6, {1, 5})) == 2


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_spec_of_localization_bijects_by_contraction(ring):
    for p in fully_invertible_subsets(ring).points:
        f = localize(ring, p.members)
        avoiding = {q.members for q in spec_of_localization(ring, p.members)}
        contracted = {contract(f.canonical_map, q).members for q in prime_ideals(f.ring)}
        assert avoiding == contracted
        assert len(avoiding) == len(prime_ideals(f.ring))


@pytest.mark.parametrize("ring", SMALL, ids=lambda r: r.label)
def test_localization_at_prime_is_local(ring):
    everything = frozenset(ring.elements)
    for q in prime_ideals(ring):
        assert is_local_ring(localize(ring, everything - q.members).ring)


def test_universal_property_by_search():
    for a in [r for r in SMALL if r.order <= 8]:
        for p in fully_invertible_subsets(a).points:
            f = localize(a, p.members)
            for b in [r for r in SMALL if r.order <= 6]:
                for phi in enumerate_homs(a, b):
                    if not all(phi(s) in b.units for s in p.members):
                        continue
                    found = [h for h in itertools.product(b.elements, repeat=f.ring.order)
                             if all(h[f.canonical_map(x)] == phi(x) for x in a.elements)
                             and all(h[f.ring.mull[i][j]] == b.mull[h[i]][h[j]]
                                     and h[f.ring.addl[i][j]] == b.addl[h[i]][h[j]]
                                     for i in f.ring.elements for j in f.ring.elements)]
                    assert found == [f.lift(phi).map]


def test_lift_composes():
    z12 = make_zmod(12)
    f = localize(z12, {1, 3, 9})
    z4 = make_zmod(4)
    phi = next(h for h in enumerate_homs(z12, z4))
    assert compose(f.canonical_map, f.lift(phi)) == phi


def test_multiplicative_set_type():
    z6 = make_zmod(6)
    m = MultiplicativeSet.generated_by(z6, [5])
    assert set(m) == {1, 5} and 5 in m
    with pytest.raises(Exception):
        MultiplicativeSet(z6, frozenset({2}))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_fraction_equivalence_random(ring, data):
    p = data.draw(st.sampled_from(fully_invertible_subsets(ring).points))
    f = localize(ring, p.members)
    s = sorted(p.members)
    a, b = data.draw(st.sampled_from(list(ring.elements))), data.draw(st.sampled_from(list(ring.elements)))
    t, r = data.draw(st.sampled_from(s)), data.draw(st.sampled_from(s))
    d = ring.addl[ring.mull[a][r]][ring.neg[ring.mull[b][t]]]
    equal = any(ring.mull[u][d] == ring.zero for u in s)
    assert (f.fraction(a, t) == f.fraction(b, r)) == equal
