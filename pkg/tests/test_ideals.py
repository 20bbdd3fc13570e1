import pytest

from fscheme.corpus import by_label, corpus
from fscheme.errors import ImproperIdealError
from fscheme.ideals import (TwoSidedIdeal, enumerate_left_ideals, enumerate_two_sided_ideals,
                            ideal_generated, is_nilpotent, is_quasi_nilpotent, is_ring_of_quotients,
                            is_self_localized, is_simple, is_von_neumann_regular,
                            jacobson_radical, jacobson_radical_via_units, maximal_left_ideals,
                            quasi_nilpotents, quotient, simple_left_modules)
from fscheme.ring import enumerate_homs, is_local_hom, make_zmod

import oracles

TINY = [r for r in corpus() if r.order <= 9]


def members(ideals):
    return {i.members for i in ideals}


@pytest.mark.parametrize("ring", TINY, ids=lambda r: r.label)
def test_ideal_enumeration_matches_sweep(ring):
    assert members(enumerate_two_sided_ideals(ring)) == oracles.ideals_by_sweep(ring)


def test_ideal_examples():
    z6 = make_zmod(6)
    assert members(enumerate_two_sided_ideals(z6)) == {
        frozenset({0}), frozenset({0, 2, 4}), frozenset({0, 3}), frozenset(range(6))}
    assert len(enumerate_two_sided_ideals(make_zmod(2))) == 2
    assert len(enumerate_two_sided_ideals(by_label("M2(Z/2)"))) == 2


@pytest.mark.parametrize("ring", corpus(), ids=lambda r: r.label)
def test_ideals_are_ideals(ring):
    for i in enumerate_two_sided_ideals(ring):
        assert oracles.is_two_sided_ideal(ring, i.members)
    for left in enumerate_left_ideals(ring):
        assert all(ring.mull[r][a] in left for r in ring.elements for a in left)


@pytest.mark.parametrize("ring", corpus(), ids=lambda r: r.label)
def test_radical_characterizations_agree(ring):
    j = jacobson_radical(ring).members
    assert j == jacobson_radical_via_units(ring).members
    assert j == oracles.radical_by_units(ring)


def test_radical_examples():
    assert jacobson_radical(make_zmod(4)).members == {0, 2}
    assert jacobson_radical(by_label("M2(Z/2)")).members == {0}
    ut = by_label("UT2(Z/2)")
    strict = {x for x in ut.elements if ut.coords[x][0][0] == 0 and ut.coords[x][1][1] == 0}
    assert jacobson_radical(ut).members == strict
    assert len(jacobson_radical(by_label("UT2(Z/3)"))) == 3


def test_quotients():
    z6 = make_zmod(6)
    q, pi = quotient(z6, ideal_generated(z6, [3]))
    assert q.order == 3 and q.units == {pi(1), pi(2)}
    same, ident = quotient(z6, ideal_generated(z6, [0]))
    assert same is z6 and ident.map == tuple(range(6))
    z4 = make_zmod(4)
    q4, pi4 = quotient(z4, ideal_generated(z4, [2]))
    assert q4.order == 2 and is_local_hom(pi4)
    with pytest.raises(ImproperIdealError):
        quotient(z6, ideal_generated(z6, [1]))


def test_simple_modules():
    assert sorted(m.size for m in simple_left_modules(make_zmod(6))) == [2, 3]
    assert [m.size for m in simple_left_modules(make_zmod(2))] == [2]
    assert {m.size for m in simple_left_modules(by_label("M2(Z/2)"))} == {4}
    for m in simple_left_modules(by_label("UT2(Z/2)")):
        assert m.is_valid()


def test_maximal_left_ideals_m2():
    # the three lines of F2^2, each as a left annihilator
    assert len(maximal_left_ideals(by_label("M2(Z/2)"))) == 3


def test_quasi_nilpotent_examples():
    m2 = by_label("M2(Z/2)")
    e11 = m2.element(((1, 0), (0, 0)))
    assert is_quasi_nilpotent(m2, e11) and not is_nilpotent(m2, e11)
    assert not is_quasi_nilpotent(make_zmod(6), 2)
    for r in corpus():
        assert is_quasi_nilpotent(r, r.zero)


@pytest.mark.parametrize("ring", [r for r in corpus() if r.is_commutative], ids=lambda r: r.label)
def test_commutative_quasi_nilpotent_is_nilpotent(ring):
    assert quasi_nilpotents(ring) == {x for x in ring.elements if oracles.is_nilpotent(ring, x)}


def test_quasi_nilpotent_via_maximal_quotients():
    # x is quasi-nilpotent iff it is a unit in no simple quotient A/M
    from fscheme.ideals import maximal_two_sided_ideals
    for ring in corpus():
        maxes = [quotient(ring, m) for m in maximal_two_sided_ideals(ring)]
        for x in ring.elements:
            unit_somewhere = any(pi(x) in q.units for q, pi in maxes)
            assert is_quasi_nilpotent(ring, x) == (not unit_somewhere)


def test_quasi_nilpotent_images():
    small = [r for r in corpus() if r.order <= 8]
    for a in small:
        qn = quasi_nilpotents(a)
        for b in small:
            for phi in enumerate_homs(a, b):
                if phi.is_surjective():
                    assert all(is_quasi_nilpotent(b, phi(x)) for x in qn)


def test_predicates_examples():
    m2 = by_label("M2(Z/2)")
    assert is_self_localized(m2) and not is_self_localized(make_zmod(6))
    assert is_self_localized(make_zmod(4))
    assert is_von_neumann_regular(m2) and not is_von_neumann_regular(make_zmod(4))
    assert is_von_neumann_regular(by_label("F4"))
    assert is_simple(m2) and is_simple(make_zmod(3)) and not is_simple(make_zmod(6))
    assert not is_self_localized(by_label("UT2(Z/2)"))


@pytest.mark.parametrize("ring", corpus(), ids=lambda r: r.label)
def test_every_finite_ring_is_a_ring_of_quotients(ring):
    assert is_ring_of_quotients(ring)


@pytest.mark.parametrize("ring", corpus(), ids=lambda r: r.label)
def test_self_localized_means_unit_or_quasi_nilpotent(ring):
    split = all(x in ring.units or is_quasi_nilpotent(ring, x) for x in ring.elements)
    assert is_self_localized(ring) == split


def test_ideal_type():
    z6 = make_zmod(6)
    i = TwoSidedIdeal(z6, frozenset({0, 3}))
    assert i.is_valid() and i.is_proper and 3 in i and len(i) == 2
    assert not TwoSidedIdeal(z6, frozenset({0, 1})).is_valid()
    assert ideal_generated(z6, [2, 3]).members == frozenset(range(6))
