"""The canonical test corpus and the automorphisms used by the graded checks."""

from __future__ import annotations

from functools import lru_cache

from .ring import (FiniteRing, RingAutomorphism, make_galois_field, make_matrix_ring,
                   make_product, make_upper_triangular, make_zmod)

ZMOD_ORDERS = tuple(range(2, 13)) + (30, 36)


@lru_cache(maxsize=None)
def corpus() -> tuple[FiniteRing, ...]:
    z2, z3 = make_zmod(2), make_zmod(3)
    rings = [make_zmod(n) for n in ZMOD_ORDERS]
    rings += [
        make_galois_field(2, 2),
        make_product(z2, z2),
        make_product(z2, z3),
        make_matrix_ring(z2, 2),
        make_upper_triangular(z2, 2),
        make_upper_triangular(z3, 2),
    ]
    return tuple(rings)


def by_label(label: str) -> FiniteRing:
    for r in corpus():
        if r.label == label:
            return r
    raise KeyError(label)


def commutative_corpus() -> list[FiniteRing]:
    return [r for r in corpus() if r.is_commutative]


def swap(ring: FiniteRing) -> RingAutomorphism:
    """(a, b) ↦ (b, a) on a square product."""
    coords = ring.coords
    index = {c: i for i, c in enumerate(coords)}
    return RingAutomorphism(ring, [index[(b, a)] for (a, b) in coords])


def frobenius(ring: FiniteRing) -> RingAutomorphism:
    p = ring.characteristic
    return RingAutomorphism(ring, [ring.power(a, p) for a in ring.elements])


def graded_examples() -> list[tuple[str, FiniteRing, RingAutomorphism]]:
    """(name, R₀, σ) for the three twisted Laurent examples."""
    z6, v, f4 = by_label("Z/6"), by_label("Z/2xZ/2"), by_label("F4")
    return [
        ("Z/6, identity", z6, RingAutomorphism(z6, list(z6.elements))),
        ("Z/2xZ/2, swap", v, swap(v)),
        ("F4, Frobenius", f4, frobenius(f4)),
    ]
