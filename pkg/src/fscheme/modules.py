"""Finite modules over commutative finite rings and their localizations."""

from __future__ import annotations

from typing import Sequence

from .errors import HomomorphismError, RingAxiomError
from .ideals import TwoSidedIdeal
from .localization import FractionRing, localize, require_commutative
from .ring import FiniteRing


class FiniteModule:
    """Carrier 0..order-1 with an addition table and action[a][m] = a·m."""

    def __init__(self, ring: FiniteRing, add, action, zero: int,
                 names: Sequence[str] | None = None, label: str = "", check: bool = True):
        require_commutative(ring, "FiniteModule")
        self.ring = ring
        self.addl = [list(map(int, row)) for row in add]
        self.actl = [list(map(int, row)) for row in action]
        self.order = len(self.addl)
        self.zero = int(zero)
        self.names = list(names) if names is not None else None
        self.label = label
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"FiniteModule({self.label or '?'}, order={self.order})"

    def fmt(self, m: int) -> str:
        return self.names[m] if self.names is not None else str(m)

    @property
    def neg(self) -> list[int]:
        return [row.index(self.zero) for row in self.addl]

    def validate(self) -> None:
        A, n, ad, act = self.ring, self.order, self.addl, self.actl
        rng = range(n)
        if any(ad[self.zero][m] != m for m in rng):
            raise RingAxiomError("zero is not an additive identity")
        for x in rng:
            if self.zero not in ad[x]:
                raise RingAxiomError("missing additive inverse")
            for y in rng:
                if ad[x][y] != ad[y][x]:
                    raise RingAxiomError("addition is not commutative")
                for z in rng:
                    if ad[ad[x][y]][z] != ad[x][ad[y][z]]:
                        raise RingAxiomError("addition is not associative")
        if any(act[A.one][m] != m for m in rng):
            raise RingAxiomError("1 does not act as the identity")
        for a in A.elements:
            for m in rng:
                for k in rng:
                    if act[a][ad[m][k]] != ad[act[a][m]][act[a][k]]:
                        raise RingAxiomError("action is not additive in the module")
            for b in A.elements:
                for m in rng:
                    if act[A.addl[a][b]][m] != ad[act[a][m]][act[b][m]]:
                        raise RingAxiomError("action is not additive in the ring")
                    if act[A.mull[a][b]][m] != act[a][act[b][m]]:
                        raise RingAxiomError("action is not associative")

    @classmethod
    def regular(cls, ring: FiniteRing) -> "FiniteModule":
        return cls(ring, ring.addl, ring.mull, ring.zero, ring.names, label=ring.label,
                   check=False)

    @classmethod
    def quotient_of_ring(cls, ring: FiniteRing, ideal: TwoSidedIdeal) -> "FiniteModule":
        """A/I as an A-module."""
        rep = [min(ring.addl[a][i] for i in ideal.members) for a in ring.elements]
        reps = sorted(set(rep))
        pos = {r: k for k, r in enumerate(reps)}
        add = [[pos[rep[ring.addl[r][s]]] for s in reps] for r in reps]
        act = [[pos[rep[ring.mull[a][r]]] for r in reps] for a in ring.elements]
        return cls(ring, add, act, pos[rep[ring.zero]],
                   ["[" + ring.fmt(r) + "]" for r in reps], label=f"{ring.label}/I")

    @classmethod
    def ideal_module(cls, ring: FiniteRing, ideal: TwoSidedIdeal) -> "FiniteModule":
        """The ideal I as a submodule of A."""
        elems = sorted(ideal.members)
        pos = {e: k for k, e in enumerate(elems)}
        add = [[pos[ring.addl[x][y]] for y in elems] for x in elems]
        act = [[pos[ring.mull[a][x]] for x in elems] for a in ring.elements]
        return cls(ring, add, act, pos[ring.zero], [ring.fmt(e) for e in elems],
                   label=f"I<{ring.label}")

    @classmethod
    def zero_module(cls, ring: FiniteRing) -> "FiniteModule":
        return cls(ring, [[0]], [[0] for _ in ring.elements], 0, ["0"], label="0")


class ModuleHom:
    def __init__(self, source: FiniteModule, target: FiniteModule, mapping: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in mapping)
        if check:
            self.validate()

    def __call__(self, m: int) -> int:
        return self.map[m]

    def validate(self) -> None:
        S, T, f = self.source, self.target, self.map
        if S.ring is not T.ring:
            raise HomomorphismError("modules over different rings")
        if len(f) != S.order:
            raise HomomorphismError("map has the wrong length")
        for x in range(S.order):
            for y in range(S.order):
                if f[S.addl[x][y]] != T.addl[f[x]][f[y]]:
                    raise HomomorphismError("map is not additive")
            for a in S.ring.elements:
                if f[S.actl[a][x]] != T.actl[a][f[x]]:
                    raise HomomorphismError("map is not linear")

    def kernel(self) -> frozenset[int]:
        return frozenset(m for m, v in enumerate(self.map) if v == self.target.zero)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)


class LocalizedModule:
    """S⁻¹M from classes (m, s); (m,s) ~ (n,t) iff u(tm - sn) = 0 for some u in S."""

    def __init__(self, module: FiniteModule, frac: FractionRing):
        M = module
        A = frac.base
        if M.ring is not A:
            raise ValueError("module and fraction ring have different bases")
        S = sorted(frac.mult_set.members)
        killed = {m for m in range(M.order) if any(M.actl[u][m] == M.zero for u in S)}
        neg = M.neg
        reps: list[tuple[int, int]] = []
        class_of: dict[tuple[int, int], int] = {}
        for m in range(M.order):
            for s in S:
                for k, (n, t) in enumerate(reps):
                    if M.addl[M.actl[t][m]][neg[M.actl[s][n]]] in killed:
                        class_of[(m, s)] = k
                        break
                else:
                    class_of[(m, s)] = len(reps)
                    reps.append((m, s))
        self.module = M
        self.frac = frac
        self.classes = reps
        self._class_of = class_of
        self.order = len(reps)
        self.zero = class_of[(M.zero, A.one)]
        self.addl = [[class_of[(M.addl[M.actl[t][m]][M.actl[s][n]], A.mull[s][t])]
                      for (n, t) in reps] for (m, s) in reps]
        self.names = [M.fmt(m) if s == A.one else f"{M.fmt(m)}/{A.fmt(s)}" for m, s in reps]
        self.canonical_map = tuple(class_of[(m, A.one)] for m in range(M.order))

    def class_of(self, m: int, s: int) -> int:
        return self._class_of[(m, s)]

    def act(self, c: int, v: int) -> int:
        """The fraction-ring element c acting on the class v."""
        a, t = self.frac.classes[c]
        m, s = self.classes[v]
        return self._class_of[(self.module.actl[a][m], self.frac.base.mull[t][s])]


def localize_module(module: FiniteModule, s) -> LocalizedModule:
    return LocalizedModule(module, localize(module.ring, s))


def ideal_sequence(ring: FiniteRing, ideal: TwoSidedIdeal) -> tuple[ModuleHom, ModuleHom]:
    """The inclusion I -> A and the projection A -> A/I."""
    sub = FiniteModule.ideal_module(ring, ideal)
    whole = FiniteModule.regular(ring)
    quo = FiniteModule.quotient_of_ring(ring, ideal)
    inc = ModuleHom(sub, whole, sorted(ideal.members))
    rep = [min(ring.addl[a][i] for i in ideal.members) for a in ring.elements]
    pos = {r: k for k, r in enumerate(sorted(set(rep)))}
    return inc, ModuleHom(whole, quo, [pos[rep[a]] for a in ring.elements])
