import pytest
from hypothesis import given, settings, strategies as st

from fscheme.corpus import by_label, commutative_corpus, corpus
from fscheme.errors import InvalidFractionError, NonCommutativeError
from fscheme.ideals import enumerate_two_sided_ideals, ideal_generated, jacobson_radical, quotient
from fscheme.localization import localize
from fscheme.ring import make_zmod
from fscheme.spectrum import (center, closed_subscheme_compare, closure_of_point,
                              fully_invertible_subsets, fundamental_open, is_fully_invertible,
                              make_fraction, open_sets, prime_complement_points,
                              quotient_witness_points, three_condition_points,
                              topological_closure, z_locus)

import oracles

COMM = commutative_corpus()


def sets(spec):
    return [p.members for p in spec.points]


def test_z6_points():
    spec = fully_invertible_subsets(make_zmod(6))
    assert [sorted(s) for s in sets(spec)] == [[1, 5], [1, 3, 5], [1, 2, 4, 5]]
    assert spec.center == 0 and center(spec).members == {1, 5}


@pytest.mark.parametrize("label,count", [("Z/2", 1), ("Z/4", 1), ("Z/6", 3), ("Z/12", 3),
                                         ("Z/30", 7), ("Z/2xZ/2", 3), ("F4", 1), ("M2(Z/2)", 1),
                                         ("UT2(Z/2)", 3)])
def test_point_counts(label, count):
    assert len(fully_invertible_subsets(by_label(label))) == count


@pytest.mark.parametrize("ring", [r for r in COMM if r.order <= 12], ids=lambda r: r.label)
def test_points_match_subset_sweep(ring):
    assert set(sets(fully_invertible_subsets(ring))) == oracles.points_by_sweep(ring)


@pytest.mark.parametrize("ring", COMM, ids=lambda r: r.label)
def test_three_descriptions_agree(ring):
    by_conditions = set(three_condition_points(ring))
    assert by_conditions == set(prime_complement_points(ring))
    assert by_conditions == {p.members for p in quotient_witness_points(ring)}


@pytest.mark.parametrize("ring", corpus(), ids=lambda r: r.label)
def test_witnesses_hold(ring):
    for p in fully_invertible_subsets(ring).points:
        assert p.witness_holds()
        assert is_fully_invertible(ring, p.members)


def test_noncommutative_points():
    ut = by_label("UT2(Z/2)")
    spec = fully_invertible_subsets(ut)
    assert sets(spec)[0] == ut.units
    # the unit group is a point but fails the commutative three conditions
    assert len(spec) == 3 and spec.kind == "subset spectrum"
    with pytest.raises(NonCommutativeError):
        open_sets(spec)
    assert center(spec).members == ut.units


def test_basis_and_opens_z6():
    spec = fully_invertible_subsets(make_zmod(6))
    assert spec.basis_sets == [frozenset({0, 1, 2}), frozenset({1}), frozenset({2})]
    opens = {o.points: o.center for o in open_sets(spec)}
    assert opens == {frozenset(): None, frozenset({1}): 1, frozenset({2}): 2,
                     frozenset({1, 2}): None, frozenset({0, 1, 2}): 0}


def test_fundamental_open_examples():
    spec = fully_invertible_subsets(make_zmod(6))
    assert fundamental_open(spec, 2) == {2}
    assert fundamental_open(spec, 3) == {1}
    assert fundamental_open(spec, 0) == frozenset()
    # the second entry lives in the localization at 5, which is Z/6 again
    step = localize(make_zmod(6), [5])
    assert fundamental_open(spec, [5, step.canonical_map(2)]) == {2}
    with pytest.raises(InvalidFractionError):
        make_fraction(make_zmod(6), [2, 3])
    with pytest.raises(InvalidFractionError):
        make_fraction(make_zmod(6), [])


@pytest.mark.parametrize("ring", COMM, ids=lambda r: r.label)
def test_chains_of_two_are_products(ring):
    spec = fully_invertible_subsets(ring)
    for a in ring.elements:
        if a not in set().union(*sets(spec)):
            continue
        step = localize(ring, [a])
        for b in step.ring.elements:
            # b is a fraction x/a^k; D(a, x/a^k) = D(a·x)
            x = next(x for x in ring.elements if step.canonical_map(x) == b)
            assert fundamental_open(spec, [a, b]) == spec.basis[ring.mull[a][x]]


@pytest.mark.parametrize("ring", COMM, ids=lambda r: r.label)
def test_closure_is_down_set(ring):
    spec = fully_invertible_subsets(ring)
    for t in range(len(spec)):
        assert topological_closure(spec, [t]) == closure_of_point(spec, t)
        assert spec.center in closure_of_point(spec, t)


@pytest.mark.parametrize("ring", COMM, ids=lambda r: r.label)
def test_center_is_unique_closed_point(ring):
    spec = fully_invertible_subsets(ring)
    closed = [t for t in range(len(spec)) if topological_closure(spec, [t]) == {t}]
    assert closed == [0]
    assert center(spec).members == ring.units


@pytest.mark.parametrize("ring", COMM, ids=lambda r: r.label)
def test_open_sets_form_topology(ring):
    opens = {o.points for o in open_sets(fully_invertible_subsets(ring))}
    assert all(u | v in opens and u & v in opens for u in opens for v in opens)


def test_z_locus_z6():
    z6 = make_zmod(6)
    spec = fully_invertible_subsets(z6)
    loc = z_locus(spec, ideal_generated(z6, [2]))
    assert loc.points == {1} and loc.closure == {0, 1}
    assert z_locus(spec, ideal_generated(z6, [0])).points == {0, 1, 2}


@pytest.mark.parametrize("ring", COMM, ids=lambda r: r.label)
def test_z_locus_is_quotient_image(ring):
    spec = fully_invertible_subsets(ring)
    for ideal in enumerate_two_sided_ideals(ring):
        if not ideal.is_proper:
            continue
        q, pi = quotient(ring, ideal)
        image = {spec.index_of(pi.preimage(t.members)) for t in fully_invertible_subsets(q).points}
        assert z_locus(spec, ideal).points == image


def test_z_locus_radical_is_everything():
    for ring in COMM:
        spec = fully_invertible_subsets(ring)
        assert z_locus(spec, jacobson_radical(ring)).points == frozenset(range(len(spec)))


def test_closed_subscheme_z36():
    z36 = make_zmod(36)
    cmp = closed_subscheme_compare(z36, ideal_generated(z36, [6]))
    assert cmp.ok and cmp.quotient_ring.order == 6 and len(cmp.point_map) == 3


@pytest.mark.parametrize("ring", [r for r in COMM if r.order <= 30], ids=lambda r: r.label)
def test_closed_subschemes_all_ideals(ring):
    for ideal in enumerate_two_sided_ideals(ring):
        if ideal.is_proper:
            assert closed_subscheme_compare(ring, ideal).ok


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(COMM), st.data())
def test_fundamental_opens_multiply(ring, data):
    spec = fully_invertible_subsets(ring)
    a = data.draw(st.integers(0, ring.order - 1))
    b = data.draw(st.integers(0, ring.order - 1))
    assert spec.basis[ring.mull[a][b]] == spec.basis[a] & spec.basis[b]
