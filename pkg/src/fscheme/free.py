"""Free polynomials over a finite ring with adjoined inverses, and bounded rewriting.

A symbol is ``('a', k)`` for the ring constant k or ``('x', s)`` for the formal
inverse of s.  A word is a tuple of symbols; a :class:`FreePoly` maps words to
integer coefficients.  The empty word is 1.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from . import limits
from .errors import PreconditionError, StepBudgetExceeded
from .ideals import ideal_generated
from .localization import localize, multiplicative_closure, require_commutative
from .ring import FiniteRing, RingHom

Symbol = tuple[str, int]
Word = tuple[Symbol, ...]


def _word_key(w: Word):
    return (len(w), w)


class FreePoly:
    """Integer combination of words; only like words are merged here."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        acc: dict[Word, int] = {}
        for w, c in (terms or {}).items():
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: acc[w] for w in sorted(acc, key=_word_key) if acc[w]}

    @classmethod
    def scalar(cls, n: int) -> "FreePoly":
        return cls({(): n})

    @classmethod
    def const(cls, k: int) -> "FreePoly":
        return cls({(("a", k),): 1})

    @classmethod
    def inv(cls, s: int) -> "FreePoly":
        return cls({(("x", s),): 1})

    @classmethod
    def word(cls, *symbols: Symbol, coeff: int = 1) -> "FreePoly":
        return cls({tuple(symbols): coeff})

    def __add__(self, other: "FreePoly") -> "FreePoly":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return FreePoly(t)

    def __neg__(self) -> "FreePoly":
        return FreePoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, int):
            return FreePoly({w: c * other for w, c in self.terms.items()})
        t: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                t[w1 + w2] = t.get(w1 + w2, 0) + c1 * c2
        return FreePoly(t)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FreePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        return f"FreePoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            body = "*".join(f"{kind}{idx}" for kind, idx in w)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def x_degree(self) -> int:
        """Largest number of inverse symbols in one word."""
        return max((sum(1 for s in w if s[0] == "x") for w in self.terms), default=0)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: FreePoly
    rhs: FreePoly


class LocalizationPresentation:
    """A with adjoined x_s (s in ``inverted``) subject to x_s s = s x_s = 1.

    Constants are kept modulo the ideal generated by the left and right
    annihilators of the multiplicative closure of ``inverted``; that ideal dies in
    every ring where the x_s are inverses, so the reduction is sound.
    """

    def __init__(self, base: FiniteRing, inverted: Iterable[int]):
        self.base = base
        self.inverted = frozenset(inverted)
        if not self.inverted <= set(base.elements):
            raise PreconditionError("inverted elements must be ring elements")
        self.closure = multiplicative_closure(base, self.inverted)
        ann = set()
        for s in self.closure:
            for a in base.elements:
                if base.mull[s][a] == base.zero or base.mull[a][s] == base.zero:
                    ann.add(a)
        self.kernel = ideal_generated(base, ann).members
        canon = [0] * base.order
        for a in base.elements:
            canon[a] = min(base.addl[a][k] for k in self.kernel)
        self.canon = canon
        self.zero = canon[base.zero]
        self.one = canon[base.one]
        self.reps = sorted(set(canon))
        # characteristic of A/K0
        n, r = 1, self.one
        while r != self.zero:
            r = canon[base.addl[r][base.one]]
            n += 1
        self.char = n
        prime: dict[int, int] = {}
        r = self.zero
        for m in range(n):
            prime.setdefault(r, m)
            r = canon[base.addl[r][base.one]]
        self.prime_of = prime

    def __repr__(self) -> str:
        return f"LocalizationPresentation({self.base.label}, S={sorted(self.inverted)})"

    def mul(self, a: int, b: int) -> int:
        return self.canon[self.base.mull[a][b]]

    def add(self, a: int, b: int) -> int:
        return self.canon[self.base.addl[a][b]]

    def multiple(self, c: int, a: int) -> int:
        return self.canon[self.base.multiple(c, a)]

    @cached_property
    def right_solve(self) -> dict[int, dict[int, int]]:
        """right_solve[s][k] = k' with s·k' = k, preferring k' = 1, then the least."""
        out = {}
        order = [self.one] + [r for r in self.reps if r != self.one]
        for s in self.inverted:
            table: dict[int, int] = {}
            for kp in order:
                table.setdefault(self.mul(s, kp), kp)
            out[s] = table
        return out

    @cached_property
    def left_solve(self) -> dict[int, dict[int, int]]:
        """left_solve[s][k] = k' with k'·s = k."""
        out = {}
        order = [self.one] + [r for r in self.reps if r != self.one]
        for s in self.inverted:
            table: dict[int, int] = {}
            for kp in order:
                table.setdefault(self.mul(kp, s), kp)
            out[s] = table
        return out

    @cached_property
    def unit_inverse(self) -> dict[int, int]:
        """Inverted elements that are already units modulo the kernel."""
        out = {}
        for s in self.inverted:
            r = self.right_solve[s].get(self.one)
            if r is not None and self.mul(r, s) == self.one:
                out[s] = r
        return out

    def rules(self) -> list[Rule]:
        """The defining relations plus every unit-elimination instance."""
        out = []
        for s in sorted(self.inverted):
            x, a = FreePoly.inv(s), FreePoly.const(s)
            out.append(Rule(f"x{s}*a{s}", x * a, FreePoly.scalar(1)))
            out.append(Rule(f"a{s}*x{s}", a * x, FreePoly.scalar(1)))
            if s in self.unit_inverse:
                out.append(Rule(f"U{s}", x, FreePoly.const(self.unit_inverse[s])))
        return out

    # canonical form

    def canonical(self, p: FreePoly) -> FreePoly:
        terms = dict(p.terms)
        while True:
            nxt = self._canonical_pass(terms)
            if nxt == terms:
                return FreePoly(nxt)
            terms = nxt

    def _fold_word(self, word: Word, c: int) -> tuple[Word, int] | None:
        out: list[Symbol] = []
        for kind, idx in word:
            if kind == "a":
                k = self.canon[idx]
                if out and out[-1][0] == "a":
                    out[-1] = ("a", self.mul(out[-1][1], k))
                else:
                    out.append(("a", k))
            elif kind == "x":
                if idx not in self.inverted:
                    raise PreconditionError(f"x{idx} is not an inverted element")
                out.append(("x", idx))
            else:
                raise PreconditionError(f"unknown symbol {kind}{idx}")
        kept: list[Symbol] = []
        for sym in out:
            if sym[0] == "a" and sym[1] in self.prime_of:
                c *= self.prime_of[sym[1]]
            else:
                kept.append(sym)
        c %= self.char
        if c == 0:
            return None
        return tuple(kept), c

    def _canonical_pass(self, terms: dict[Word, int]) -> dict[Word, int]:
        # merge on the skeleton around the first constant slot
        acc: dict[tuple[Word, Word], int] = {}
        for word, c in terms.items():
            folded = self._fold_word(word, c)
            if folded is None:
                continue
            w, c = folded
            i = next((j for j, sym in enumerate(w) if sym[0] == "a"), None)
            if i is None:
                key, k = (w, ()), self.multiple(c, self.one)
            else:
                key, k = (w[:i], w[i + 1:]), self.multiple(c, w[i][1])
            acc[key] = self.add(acc.get(key, self.zero), k)
        out: dict[Word, int] = {}
        for (prefix, suffix), k in acc.items():
            if k in self.prime_of:
                m = self.prime_of[k]
                if m:
                    w = prefix + suffix
                    out[w] = (out.get(w, 0) + m) % self.char
            else:
                w = prefix + (("a", k),) + suffix
                out[w] = out.get(w, 0) + 1
        return {w: c for w, c in sorted(out.items(), key=lambda t: _word_key(t[0])) if c}

    # rewriting

    def redexes(self, p: FreePoly) -> Iterator[tuple[Word, int, str, Word, int]]:
        """(word, coeff, rule, new word, new coeff) in leftmost-innermost order."""
        for word, c in p.terms.items():
            for i, (kind, idx) in enumerate(word):
                if kind == "x":
                    if idx in self.unit_inverse:
                        yield word, c, "U", word[:i] + (("a", self.unit_inverse[idx]),) + word[i + 1:], c
                    if c != 1:
                        unit_c = self.multiple(c, self.one)
                        kp = self.right_solve[idx].get(unit_c)
                        if kp is not None:
                            yield word, c, "RC", word[:i] + (("a", kp),) + word[i + 1:], 1
                        kp = self.left_solve[idx].get(unit_c)
                        if kp is not None:
                            yield word, c, "LC", word[:i] + (("a", kp),) + word[i + 1:], 1
                    if i + 1 < len(word) and word[i + 1][0] == "a":
                        kp = self.right_solve[idx].get(word[i + 1][1])
                        if kp is not None:
                            yield word, c, "RX", word[:i] + (("a", kp),) + word[i + 2:], c
                elif i + 1 < len(word) and word[i + 1][0] == "x":
                    kp = self.left_solve[word[i + 1][1]].get(idx)
                    if kp is not None:
                        yield word, c, "LX", word[:i] + (("a", kp),) + word[i + 2:], c

    def rewrite_once(self, p: FreePoly, rng: random.Random | None = None) -> FreePoly | None:
        if rng is None:
            red = next(self.redexes(p), None)
        else:
            options = list(self.redexes(p))
            red = rng.choice(options) if options else None
        if red is None:
            return None
        word, c, _, new_word, new_c = red
        terms = dict(p.terms)
        del terms[word]
        terms[new_word] = terms.get(new_word, 0) + new_c
        return self.canonical(FreePoly(terms))


def reduce(p: FreePoly, pres: LocalizationPresentation,
           max_steps: int = limits.REWRITE_MAX_STEPS,
           max_degree: int = limits.REWRITE_MAX_DEGREE,
           rng: random.Random | None = None) -> FreePoly:
    """Rewrite to a normal form; leftmost-innermost unless an rng picks the redexes."""
    cur = pres.canonical(p)
    if cur.degree() > max_degree:
        raise StepBudgetExceeded(f"degree {cur.degree()} exceeds the budget {max_degree}", cur)
    steps = 0
    while True:
        nxt = pres.rewrite_once(cur, rng)
        if nxt is None:
            return cur
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"no normal form within {max_steps} steps", cur)
        cur = nxt


def invertibility_witness(pres: LocalizationPresentation, a: int,
                          max_candidates: int = 5000) -> FreePoly | None:
    """A w with a·w = 1 = w·a after reduction, or None if none is found in the bound."""
    A = pres.base
    target = FreePoly.const(a)

    def works(w: FreePoly) -> bool:
        try:
            return reduce(target * w, pres).is_one() and reduce(w * target, pres).is_one()
        except StepBudgetExceeded:
            return False

    def candidates() -> Iterator[FreePoly]:
        if a in pres.inverted:
            yield FreePoly.inv(a)
        for b in A.elements:
            s = A.mull[A.mull[a][b]][a]
            if s in pres.inverted:
                yield FreePoly.const(b) * FreePoly.const(a) * FreePoly.inv(s)
        for k in pres.reps:
            yield FreePoly.const(k)
        for s in sorted(pres.inverted):
            for k in pres.reps:
                for m in pres.reps:
                    yield FreePoly.const(k) * FreePoly.inv(s) * FreePoly.const(m)

    for n, w in enumerate(candidates()):
        if n >= max_candidates:
            break
        if works(w):
            return w
    return None


def evaluate(p: FreePoly, pres: LocalizationPresentation, phi: RingHom) -> int:
    """Image of p under a ↦ φ(a), x_s ↦ φ(s)⁻¹; φ must invert every s."""
    B = phi.target
    total = B.zero
    for word, c in p.terms.items():
        r = B.one
        for kind, idx in word:
            if kind == "a":
                r = B.mull[r][phi(idx)]
            else:
                inv = B.inverse(phi(idx))
                if inv is None:
                    raise PreconditionError(f"the image of {idx} is not invertible")
                r = B.mull[r][inv]
        total = B.addl[total][B.multiple(c, r)]
    return total


def random_poly(pres: LocalizationPresentation, rng: random.Random,
                terms: int = 3, length: int = 4) -> FreePoly:
    """A random polynomial over the presentation's alphabet."""
    alphabet = [("a", k) for k in pres.base.elements] + [("x", s) for s in sorted(pres.inverted)]
    t = {}
    for _ in range(rng.randint(1, terms)):
        w = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, length)))
        t[w] = t.get(w, 0) + rng.randint(-3, 3)
    return FreePoly(t)


def commutative_consistency(pres: LocalizationPresentation, samples: int = 100,
                            seed: int = 0) -> bool:
    """Evaluation into the fraction ring respects the rules, reduction and is onto."""
    A = pres.base
    require_commutative(A, "commutative_consistency")
    frac = localize(A, pres.closure)
    phi = frac.canonical_map
    if any(phi(k) != phi(pres.canon[k]) for k in A.elements):
        return False
    for rule in pres.rules():
        if evaluate(rule.lhs, pres, phi) != evaluate(rule.rhs, pres, phi):
            return False
    rng = random.Random(seed)
    for _ in range(samples):
        p = random_poly(pres, rng)
        if evaluate(p, pres, phi) != evaluate(reduce(p, pres), pres, phi):
            return False
    image = {evaluate(FreePoly.const(k) * FreePoly.inv(s), pres, phi)
             for k in A.elements for s in pres.inverted}
    image |= {phi(k) for k in A.elements}
    return image == set(frac.ring.elements)


_TOKEN = re.compile(r"\s*(?:(\d+)|([ax])(\d+)|([-+*()]))")


def parse_expr(text: str) -> FreePoly:
    """Parse e.g. ``"a3 * x2 * a5 - 2*(a1 + x4)"``."""
    tokens: list[tuple[str, object]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("sym", (m.group(2), int(m.group(3)))))
        else:
            tokens.append(("op", m.group(4)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr() -> FreePoly:
        p = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            q = term()
            p = p + q if op == "+" else p - q
        return p

    def term() -> FreePoly:
        p = factor()
        while peek() == ("op", "*"):
            take()
            p = p * factor()
        return p

    def factor() -> FreePoly:
        kind, val = take()
        if kind == "int":
            return FreePoly.scalar(val)
        if kind == "sym":
            return FreePoly.word(val)
        if (kind, val) == ("op", "-"):
            return -factor()
        if (kind, val) == ("op", "("):
            p = expr()
            if take() != ("op", ")"):
                raise ValueError("missing closing parenthesis")
            return p
        raise ValueError(f"unexpected token {val!r}")

    p = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input after position {i}")
    return p


def corpus_presentations(rings: Iterable[FiniteRing]) -> list[LocalizationPresentation]:
    """One presentation per ring and per point of its full spectrum."""
    from .spectrum import fully_invertible_subsets
    out = []
    for ring in rings:
        for pt in fully_invertible_subsets(ring).points:
            out.append(LocalizationPresentation(ring, pt.members))
    return out
