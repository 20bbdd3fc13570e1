"""Finite unital rings as Cayley tables, homomorphisms and unit groups.

Elements are plain integer indices ``0 .. order-1``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import limits
from .errors import HomomorphismError, RingAxiomError, SizeCapError


def _check_cap(order: int) -> None:
    if order > limits.MAX_ORDER:
        raise SizeCapError(f"ring of order {order} exceeds the size cap {limits.MAX_ORDER}")


class FiniteRing:
    """A finite ring with identity, given by addition and multiplication tables."""

    def __init__(self, add, mul, zero: int, one: int, label: str = "",
                 names: Sequence[str] | None = None, coords: Sequence | None = None,
                 check: bool = True):
        add = np.array(add, dtype=np.int64)
        mul = np.array(mul, dtype=np.int64)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise RingAxiomError("tables must be square and of equal shape")
        n = add.shape[0]
        _check_cap(n)
        add.setflags(write=False)
        mul.setflags(write=False)
        self.order = n
        self.add = add
        self.mul = mul
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self.names = list(names) if names is not None else None
        self.coords = list(coords) if coords is not None else None
        # python-level rows are much faster than numpy scalars in tight loops
        self.addl = add.tolist()
        self.mull = mul.tolist()
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"FiniteRing({self.label or '?'}, order={self.order})"

    @property
    def elements(self) -> range:
        return range(self.order)

    def fmt(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def fmt_set(self, xs: Iterable[int]) -> str:
        return "{" + ", ".join(self.fmt(x) for x in sorted(xs)) + "}"

    def element(self, coord) -> int:
        """Index of the element with the given structured coordinate."""
        if self.coords is None:
            raise KeyError("ring has no structured coordinates")
        return self._coord_index[coord]

    @cached_property
    def _coord_index(self) -> dict:
        return {c: i for i, c in enumerate(self.coords)}

    # arithmetic helpers

    def plus(self, a: int, b: int) -> int:
        return self.addl[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mull[a][b]

    @cached_property
    def neg(self) -> list[int]:
        return [row.index(self.zero) for row in self.addl]

    def sub(self, a: int, b: int) -> int:
        return self.addl[a][self.neg[b]]

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self.mull[r][a]
        return r

    def multiple(self, c: int, a: int) -> int:
        """The integer multiple c·a."""
        if c < 0:
            c, a = -c, self.neg[a]
        r = self.zero
        for _ in range(c % self.additive_order(a)):
            r = self.addl[r][a]
        return r

    def additive_order(self, a: int) -> int:
        k, r = 1, a
        while r != self.zero:
            r = self.addl[r][a]
            k += 1
        return k

    @cached_property
    def characteristic(self) -> int:
        return self.additive_order(self.one)

    def product_of(self, xs: Iterable[int]) -> int:
        r = self.one
        for x in xs:
            r = self.mull[r][x]
        return r

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def units(self) -> frozenset[int]:
        hit = self.mul == self.one
        both = hit & hit.T
        return frozenset(int(u) for u in np.nonzero(both.any(axis=1))[0])

    @cached_property
    def _inverses(self) -> dict[int, int]:
        inv = {}
        for u in self.units:
            row = self.mull[u]
            for v in self.elements:
                if row[v] == self.one and self.mull[v][u] == self.one:
                    inv[u] = v
                    break
        return inv

    def inverse(self, u: int) -> int | None:
        return self._inverses.get(u)

    def is_unit(self, u: int) -> bool:
        return u in self.units

    def validate(self) -> None:
        """Check every ring axiom exhaustively; raise RingAxiomError on failure."""
        n, A, M = self.order, self.add, self.mul
        if n < 2:
            raise RingAxiomError("the zero ring is excluded (order must be at least 2)")
        if A.min() < 0 or A.max() >= n or M.min() < 0 or M.max() >= n:
            raise RingAxiomError("table entry out of range")
        if not (0 <= self.zero < n and 0 <= self.one < n) or self.zero == self.one:
            raise RingAxiomError("zero and one must be distinct valid elements")
        ar = np.arange(n)
        if not ((A[self.zero] == ar).all() and (A[:, self.zero] == ar).all()):
            raise RingAxiomError("zero is not an additive identity")
        if not (A == A.T).all():
            raise RingAxiomError("addition is not commutative")
        if not (A == self.zero).any(axis=1).all():
            raise RingAxiomError("missing additive inverse")
        if not ((M[self.one] == ar).all() and (M[:, self.one] == ar).all()):
            raise RingAxiomError("one is not a two-sided identity")
        for a in range(n):
            if not (A[A[a]] == A[a][A]).all():
                raise RingAxiomError(f"addition not associative at a={a}")
            if not (M[M[a]] == M[a][M]).all():
                raise RingAxiomError(f"multiplication not associative at a={a}")
            left = M[a][A]
            if not (left == A[M[a][:, None], M[a][None, :]]).all():
                raise RingAxiomError(f"left distributivity fails at a={a}")
            right = M[A[a], :]
            if not (right == A[np.broadcast_to(M[a], (n, n)), M]).all():
                raise RingAxiomError(f"right distributivity fails at a={a}")


# constructors

def from_tables(add, mul, zero: int, one: int, label: str = "tables") -> FiniteRing:
    return FiniteRing(add, mul, zero, one, label=label)


def make_zmod(n: int) -> FiniteRing:
    if n < 2:
        raise ValueError("make_zmod needs n >= 2")
    _check_cap(n)
    r = np.arange(n)
    return FiniteRing((r[:, None] + r[None, :]) % n, (r[:, None] * r[None, :]) % n,
                      0, 1, label=f"Z/{n}", names=[str(i) for i in range(n)],
                      coords=list(range(n)))


def _encode(coords: np.ndarray, q: int) -> np.ndarray:
    """Row-major digits (first coordinate most significant) to indices."""
    weights = q ** np.arange(coords.shape[-1] - 1, -1, -1)
    return (coords * weights).sum(axis=-1)


def _digit_table(q: int, m: int) -> np.ndarray:
    return np.array(list(product(range(q), repeat=m)), dtype=np.int64).reshape(-1, m)


def _entrywise_add(base: FiniteRing, E: np.ndarray) -> np.ndarray:
    return _encode(base.add[E[:, None, :], E[None, :, :]], base.order)


def _poly_name(cs: Sequence[int]) -> str:
    terms = []
    for i in range(len(cs) - 1, -1, -1):
        c = cs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """poly: monic coefficient list, low degree first. Trial division by monic polys."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(poly)
            for shift in range(k - d, -1, -1):
                c = rem[shift + d] % p
                if c:
                    for i in range(d + 1):
                        rem[shift + i] = (rem[shift + i] - c * div[i]) % p
            if not any(x % p for x in rem[:d]):
                return False
    return True


def make_galois_field(p: int, k: int) -> FiniteRing:
    """GF(p^k) with element index sum(c_i p^i) for the polynomial sum(c_i t^i)."""
    q = p ** k
    _check_cap(q)
    if k == 1:
        f = make_zmod(p)
        f.label = f"F{p}"
        return f
    modulus = next(list(t) + [1] for t in product(range(p), repeat=k)
                   if _is_irreducible(list(t) + [1], p))
    elems = [tuple((i // p ** j) % p for j in range(k)) for i in range(q)]
    index = {e: i for i, e in enumerate(elems)}

    def mulpoly(a, b):
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod_[i + j] = (prod_[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod_[d]
            if c:
                for i in range(k + 1):
                    prod_[d - k + i] = (prod_[d - k + i] - c * modulus[i]) % p
        return tuple(prod_[:k])

    add = [[index[tuple((x + y) % p for x, y in zip(a, b))] for b in elems] for a in elems]
    mul = [[index[mulpoly(a, b)] for b in elems] for a in elems]
    return FiniteRing(add, mul, 0, 1, label=f"F{q}", names=[_poly_name(e) for e in elems],
                      coords=elems)


def make_matrix_ring(base: FiniteRing, n: int) -> FiniteRing:
    """Full n×n matrices over a commutative base, row-major encoding."""
    if not base.is_commutative:
        raise ValueError("matrix rings are built over commutative bases")
    if n < 1:
        raise ValueError("n must be positive")
    q, m = base.order, n * n
    if q ** m > limits.MAX_ORDER:
        raise SizeCapError(f"M_{n} over a ring of order {q} has {q ** m} elements, "
                           f"over the cap {limits.MAX_ORDER}")
    E = _digit_table(q, m)
    N = E.shape[0]
    add = _entrywise_add(base, E)
    out = np.empty((N, N, m), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = np.full((N, N), base.zero, dtype=np.int64)
            for k in range(n):
                term = base.mul[E[:, None, i * n + k], E[None, :, k * n + j]]
                acc = base.add[acc, term]
            out[:, :, i * n + j] = acc
    mul = _encode(out, q)
    zero = int(_encode(np.full(m, base.zero), q))
    ident = np.full(m, base.zero)
    ident[[i * n + i for i in range(n)]] = base.one
    one = int(_encode(ident, q))
    coords = [tuple(tuple(int(row[i * n + j]) for j in range(n)) for i in range(n)) for row in E]
    names = ["[" + ",".join("[" + ",".join(base.fmt(v) for v in r) + "]" for r in c) + "]"
             for c in coords]
    return FiniteRing(add, mul, zero, one, label=f"M{n}({base.label})", names=names,
                      coords=coords)


def make_upper_triangular(base: FiniteRing, n: int) -> FiniteRing:
    """Upper triangular n×n matrices; coordinates list the entries (i,j), i<=j, row-major."""
    if not base.is_commutative:
        raise ValueError("triangular rings are built over commutative bases")
    if n < 1:
        raise ValueError("n must be positive")
    pos = [(i, j) for i in range(n) for j in range(i, n)]
    where = {p: k for k, p in enumerate(pos)}
    q, m = base.order, len(pos)
    if q ** m > limits.MAX_ORDER:
        raise SizeCapError(f"triangular ring of order {q ** m} exceeds the cap")
    E = _digit_table(q, m)
    N = E.shape[0]
    add = _entrywise_add(base, E)
    out = np.empty((N, N, m), dtype=np.int64)
    for (i, j), slot in where.items():
        acc = np.full((N, N), base.zero, dtype=np.int64)
        for k in range(i, j + 1):
            term = base.mul[E[:, None, where[(i, k)]], E[None, :, where[(k, j)]]]
            acc = base.add[acc, term]
        out[:, :, slot] = acc
    mul = _encode(out, q)
    zero = int(_encode(np.full(m, base.zero), q))
    ident = np.full(m, base.zero)
    ident[[where[(i, i)] for i in range(n)]] = base.one
    one = int(_encode(ident, q))

    def full(row):
        return tuple(tuple(int(row[where[(i, j)]]) if j >= i else base.zero for j in range(n))
                     for i in range(n))

    coords = [full(row) for row in E]
    names = ["[" + ",".join("[" + ",".join(base.fmt(v) for v in r) + "]" for r in c) + "]"
             for c in coords]
    return FiniteRing(add, mul, zero, one, label=f"UT{n}({base.label})", names=names,
                      coords=coords)


def make_product(a: FiniteRing, b: FiniteRing) -> FiniteRing:
    """Direct product with element index i*|b| + j for the pair (i, j)."""
    na, nb = a.order, b.order
    _check_cap(na * nb)
    I = np.repeat(np.arange(na), nb)
    J = np.tile(np.arange(nb), na)
    add = a.add[I[:, None], I[None, :]] * nb + b.add[J[:, None], J[None, :]]
    mul = a.mul[I[:, None], I[None, :]] * nb + b.mul[J[:, None], J[None, :]]
    coords = [(int(i), int(j)) for i, j in zip(I, J)]
    names = [f"({a.fmt(i)},{b.fmt(j)})" for i, j in coords]
    return FiniteRing(add, mul, a.zero * nb + b.zero, a.one * nb + b.one,
                      label=f"{a.label}x{b.label}", names=names, coords=coords)


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(g + h) % n for h in range(n)] for g in range(n)]


def make_group_algebra(base: FiniteRing, group: Sequence[Sequence[int]],
                       identity: int = 0, label: str | None = None) -> FiniteRing:
    """base[G] for a finite group given by its multiplication table."""
    m = len(group)
    q = base.order
    if q ** m > limits.MAX_ORDER:
        raise SizeCapError(f"group algebra of order {q ** m} exceeds the cap")
    E = _digit_table(q, m)
    N = E.shape[0]
    add = _entrywise_add(base, E)
    out = np.full((N, N, m), base.zero, dtype=np.int64)
    for g in range(m):
        for h in range(m):
            k = group[g][h]
            term = base.mul[E[:, None, g], E[None, :, h]]
            out[:, :, k] = base.add[out[:, :, k], term]
    mul = _encode(out, q)
    zero = int(_encode(np.full(m, base.zero), q))
    ident = np.full(m, base.zero)
    ident[identity] = base.one
    one = int(_encode(ident, q))
    coords = [tuple(int(v) for v in row) for row in E]
    names = ["(" + ",".join(base.fmt(v) for v in c) + ")" for c in coords]
    return FiniteRing(add, mul, zero, one, label=label or f"{base.label}[G{m}]", names=names,
                      coords=coords)


# homomorphisms

class RingHom:
    """A unital ring homomorphism, stored as the image of every element."""

    def __init__(self, source: FiniteRing, target: FiniteRing, mapping: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in mapping)
        if check:
            self.validate()

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        return f"RingHom({self.source.label} -> {self.target.label})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingHom) and self.source is other.source
                and self.target is other.target and self.map == other.map)

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.map))

    def validate(self) -> None:
        A, B = self.source, self.target
        if len(self.map) != A.order or not all(0 <= v < B.order for v in self.map):
            raise HomomorphismError("map has the wrong length or an out-of-range image")
        m = np.array(self.map)
        if m[A.zero] != B.zero:
            raise HomomorphismError("0 is not sent to 0")
        if m[A.one] != B.one:
            raise HomomorphismError("1 is not sent to 1")
        if not (m[A.add] == B.add[m[:, None], m[None, :]]).all():
            raise HomomorphismError("addition is not preserved")
        if not (m[A.mul] == B.mul[m[:, None], m[None, :]]).all():
            raise HomomorphismError("multiplication is not preserved")

    @classmethod
    def identity(cls, ring: FiniteRing) -> "RingHom":
        return cls(ring, ring, range(ring.order), check=False)

    def kernel(self) -> frozenset[int]:
        z = self.target.zero
        return frozenset(x for x, y in enumerate(self.map) if y == z)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def preimage(self, subset: Iterable[int]) -> frozenset[int]:
        s = set(subset)
        return frozenset(x for x, y in enumerate(self.map) if y in s)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


def is_local_ring(ring: FiniteRing) -> bool:
    """The non-units form a two-sided ideal."""
    nonunits = [x for x in ring.elements if x not in ring.units]
    bad = set(ring.units)
    for x in nonunits:
        if any(ring.addl[x][y] in bad for y in nonunits):
            return False
        if any(ring.mull[a][x] in bad or ring.mull[x][a] in bad for a in ring.elements):
            return False
    return True


def compose(phi: RingHom, psi: RingHom) -> RingHom:
    """psi after phi."""
    if phi.target is not psi.source:
        raise HomomorphismError("compose: phi.target must be psi.source")
    return RingHom(phi.source, psi.target, [psi.map[y] for y in phi.map], check=False)


def is_local_hom(phi: RingHom) -> bool:
    return phi.preimage(phi.target.units) == phi.source.units


class RingAutomorphism(RingHom):
    def __init__(self, ring: FiniteRing, mapping: Sequence[int], check: bool = True):
        super().__init__(ring, ring, mapping, check=check)
        if check and not self.is_bijective():
            raise HomomorphismError("an automorphism must be a permutation")

    @property
    def ring(self) -> FiniteRing:
        return self.source

    def inverse(self) -> "RingAutomorphism":
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return RingAutomorphism(self.source, inv, check=False)

    def power(self, n: int) -> "RingAutomorphism":
        """sigma^n for any integer n."""
        base = self if n >= 0 else self.inverse()
        cur = list(range(len(self.map)))
        for _ in range(abs(n)):
            cur = [base.map[c] for c in cur]
        return RingAutomorphism(self.source, cur, check=False)

    def __call__(self, x: int) -> int:
        return self.map[x]


def additive_closure(ring: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    """The additive subgroup generated by gens."""
    gens = list(dict.fromkeys(gens))
    seen = {ring.zero}
    frontier = [ring.zero]
    addl = ring.addl
    while frontier:
        nxt = []
        for s in frontier:
            row = addl[s]
            for g in gens:
                t = row[g]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return frozenset(seen)


def additive_generators(ring: FiniteRing) -> list[int]:
    """A small generating set of the additive group (greedy, largest orders first)."""
    order = sorted(ring.elements, key=lambda x: (-ring.additive_order(x), x))
    gens: list[int] = []
    span = frozenset({ring.zero})
    for x in order:
        if len(span) == ring.order:
            break
        if x not in span:
            gens.append(x)
            span = additive_closure(ring, gens)
    return gens


def enumerate_homs(a: FiniteRing, b: FiniteRing) -> list[RingHom]:
    """All unital ring homomorphisms a -> b, by choosing images of additive generators."""
    gens = additive_generators(a)
    found = []
    for imgs in product(b.elements, repeat=len(gens)):
        mapping = {a.zero: b.zero}
        frontier = [a.zero]
        ok = True
        while frontier and ok:
            nxt = []
            for s in frontier:
                for g, gi in zip(gens, imgs):
                    t = a.addl[s][g]
                    v = b.addl[mapping[s]][gi]
                    if t in mapping:
                        if mapping[t] != v:
                            ok = False
                            break
                    else:
                        mapping[t] = v
                        nxt.append(t)
                if not ok:
                    break
            frontier = nxt
        if not ok or mapping[a.one] != b.one:
            continue
        m = [mapping[x] for x in a.elements]
        mm = np.array(m)
        if (mm[a.mul] == b.mul[mm[:, None], mm[None, :]]).all():
            found.append(RingHom(a, b, m, check=False))
    return found
