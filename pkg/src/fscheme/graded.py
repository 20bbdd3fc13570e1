"""Twisted Laurent rings A[x, x⁻¹; σ] over finite rings and their homogeneous points.

The ring itself is infinite; elements are finitely supported maps degree -> coefficient,
and every "for all degrees" claim is checked on a bounded window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import NotSigmaStableError, PreconditionError
from .localization import localize
from .ring import FiniteRing, RingAutomorphism
from .spectrum import FullyInvertibleSubset, fully_invertible_subsets


class LaurentElement:
    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: "TwistedLaurent", coeffs: Mapping[int, int]):
        self.parent = parent
        z = parent.coeff_ring.zero
        self.coeffs = {n: c for n, c in sorted(coeffs.items()) if c != z}

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        A = self.parent.coeff_ring
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = A.addl[out.get(n, A.zero)][c]
        return LaurentElement(self.parent, out)

    def __neg__(self) -> "LaurentElement":
        A = self.parent.coeff_ring
        return LaurentElement(self.parent, {n: A.neg[c] for n, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentElement") -> "LaurentElement":
        return self + (-other)

    def __mul__(self, other: "LaurentElement") -> "LaurentElement":
        # (a xⁿ)(b xᵐ) = a σⁿ(b) xⁿ⁺ᵐ
        A = self.parent.coeff_ring
        out: dict[int, int] = {}
        for n, a in self.coeffs.items():
            sig = self.parent.sigma_power(n)
            for m, b in other.coeffs.items():
                t = A.mull[a][sig[b]]
                out[n + m] = A.addl[out.get(n + m, A.zero)][t]
        return LaurentElement(self.parent, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentElement) and other.parent is self.parent
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        A = self.parent.coeff_ring
        return " + ".join(f"({A.fmt(c)})*x^{n}" for n, c in self.coeffs.items())

    @property
    def is_homogeneous(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def degree(self) -> int:
        if len(self.coeffs) != 1:
            raise PreconditionError("degree is defined for nonzero homogeneous elements")
        return next(iter(self.coeffs))

    @property
    def leading(self) -> int:
        """The coefficient u of a homogeneous u·xⁿ."""
        if len(self.coeffs) != 1:
            raise PreconditionError("not a nonzero homogeneous element")
        return next(iter(self.coeffs.values()))

    def inverse(self) -> "LaurentElement":
        """Inverse of a homogeneous u·xⁿ with u a unit: σ⁻ⁿ(u⁻¹)·x⁻ⁿ."""
        n, u = self.degree, self.leading
        inv = self.parent.coeff_ring.inverse(u)
        if inv is None:
            raise PreconditionError("the coefficient is not a unit")
        return self.parent.homogeneous(self.parent.sigma_power(-n)[inv], -n)


class TwistedLaurent:
    """A[x, x⁻¹; σ] with x·a = σ(a)·x."""

    def __init__(self, coeff_ring: FiniteRing, sigma: RingAutomorphism):
        if sigma.source is not coeff_ring:
            raise PreconditionError("σ must be an automorphism of the coefficient ring")
        self.coeff_ring = coeff_ring
        self.sigma = sigma
        self._powers: dict[int, tuple[int, ...]] = {0: tuple(coeff_ring.elements)}

    def __repr__(self) -> str:
        return f"{self.coeff_ring.label}[x,x^-1;σ]"

    def sigma_power(self, n: int) -> tuple[int, ...]:
        if n not in self._powers:
            self._powers[n] = tuple(self.sigma.power(n).map)
        return self._powers[n]

    def homogeneous(self, a: int, n: int) -> LaurentElement:
        return LaurentElement(self, {n: a})

    def const(self, a: int) -> LaurentElement:
        return self.homogeneous(a, 0)

    def x(self, n: int = 1) -> LaurentElement:
        return self.homogeneous(self.coeff_ring.one, n)

    def element(self, coeffs: Mapping[int, int]) -> LaurentElement:
        return LaurentElement(self, coeffs)

    def zero(self) -> LaurentElement:
        return LaurentElement(self, {})

    def one(self) -> LaurentElement:
        return self.const(self.coeff_ring.one)

    def is_unit_homogeneous(self, r: LaurentElement) -> bool:
        return r.is_homogeneous and bool(r.coeffs) and self.coeff_ring.is_unit(r.leading)


def make_twisted_laurent(a: FiniteRing, sigma: RingAutomorphism | list[int]) -> TwistedLaurent:
    if not isinstance(sigma, RingAutomorphism):
        sigma = RingAutomorphism(a, sigma)
    else:
        sigma.validate()
    return TwistedLaurent(a, sigma)


def twist_law(r: TwistedLaurent, window: int = 8) -> bool:
    """xⁿ·a·x⁻ⁿ = σⁿ(a) for every a and |n| ≤ window."""
    for n in range(-window, window + 1):
        sig = r.sigma_power(n)
        for a in r.coeff_ring.elements:
            if r.x(n) * r.const(a) * r.x(-n) != r.const(sig[a]):
                return False
    return True


@dataclass
class CrossedProductData:
    sigma: RingAutomorphism
    u: LaurentElement
    model: TwistedLaurent
    window: int
    verified: bool

    def to_ring(self, e: LaurentElement) -> LaurentElement:
        """a·yⁿ in the model ↦ a·uⁿ in the original ring."""
        r = self.u.parent
        out = r.zero()
        for n, a in e.coeffs.items():
            out = out + r.const(a) * _power(self.u, n)
        return out


def _power(u: LaurentElement, n: int) -> LaurentElement:
    base = u if n >= 0 else u.inverse()
    out = u.parent.one()
    for _ in range(abs(n)):
        out = out * base
    return out


def crossed_product_decompose(r: TwistedLaurent, u: LaurentElement,
                              window: int = 4) -> CrossedProductData:
    """σ'(a) = u·a·u⁻¹ on degree 0, with R₀[y,y⁻¹;σ'] -> R, y ↦ u, checked on the window."""
    if not u.is_homogeneous or not u.coeffs or u.degree != 1:
        raise PreconditionError("u must be homogeneous of degree one")
    if not r.is_unit_homogeneous(u):
        raise PreconditionError("u must be invertible")
    A = r.coeff_ring
    u_inv = u.inverse()
    sig = []
    for a in A.elements:
        c = u * r.const(a) * u_inv
        sig.append(c.coeffs.get(0, A.zero))
    sigma2 = RingAutomorphism(A, sig)
    model = TwistedLaurent(A, sigma2)
    data = CrossedProductData(sigma2, u, model, window, False)
    ok = True
    degrees = range(-window, window + 1)
    for n in degrees:
        # degree-n component maps bijectively
        image = {data.to_ring(model.homogeneous(a, n)).coeffs.get(n, A.zero) for a in A.elements}
        if len(image) != A.order:
            ok = False
        for m in degrees:
            if abs(n + m) > window:
                continue
            for a in A.elements:
                for b in A.elements:
                    p, q = model.homogeneous(a, n), model.homogeneous(b, m)
                    if data.to_ring(p * q) != data.to_ring(p) * data.to_ring(q):
                        ok = False
                        break
                if not ok:
                    break
    data.verified = ok
    return data


def is_sigma_stable(r: TwistedLaurent, s0: FullyInvertibleSubset) -> bool:
    return frozenset(r.sigma(a) for a in s0.members) == s0.members


@dataclass
class HomogeneousFullyInvertibleSubset:
    """Homogeneous u·xⁿ is a member iff u lies in the base subset."""

    laurent: TwistedLaurent
    base_subset: FullyInvertibleSubset
    extra: dict = field(default_factory=dict, compare=False)

    def __contains__(self, r: LaurentElement) -> bool:
        if not r.is_homogeneous or not r.coeffs:
            return False
        return r.leading in self.base_subset.members

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomogeneousFullyInvertibleSubset)
                and other.laurent is self.laurent and other.base_subset == self.base_subset)

    def __hash__(self) -> int:
        return hash(self.base_subset)

    def multiplicative_on_window(self, window: int = 3) -> bool:
        r = self.laurent
        members = [r.homogeneous(u, n) for u in sorted(self.base_subset.members)
                   for n in range(-window, window + 1)]
        return all(p * q in self for p in members for q in members)

    def witness_on_window(self, window: int = 3) -> bool | None:
        """Members are exactly the homogeneous elements that become units in R_T.

        R_T is modelled as (R₀)_T[x,x⁻¹;σ_T]; only available for commutative R₀.
        """
        r, A = self.laurent, self.laurent.coeff_ring
        if not A.is_commutative:
            return None
        frac = localize(A, self.base_subset.members)
        can = frac.canonical_map
        for n in range(-window, window + 1):
            for u in A.elements:
                unit = frac.ring.is_unit(can(u))
                if unit != (r.homogeneous(u, n) in self):
                    return False
        return True


def correspond_up(r: TwistedLaurent, s0: FullyInvertibleSubset) -> HomogeneousFullyInvertibleSubset:
    """The homogeneous point of R over s0; s0 must be σ-stable."""
    if s0.ring is not r.coeff_ring:
        raise PreconditionError("s0 must be a point of the coefficient ring")
    if not is_sigma_stable(r, s0):
        raise NotSigmaStableError(
            f"{r.coeff_ring.fmt_set(s0.members)} is not σ-stable: inverting it also inverts "
            f"{r.coeff_ring.fmt_set(set(r.sigma(a) for a in s0.members) - s0.members)}")
    return HomogeneousFullyInvertibleSubset(r, s0)


def correspond_down(s: HomogeneousFullyInvertibleSubset) -> FullyInvertibleSubset:
    """The degree-zero slice, as a point of F(R₀)."""
    spec = fully_invertible_subsets(s.laurent.coeff_ring)
    return spec.points[spec.index_of(s.base_subset.members)]


@dataclass
class ProjReport:
    laurent: TwistedLaurent
    base_points: int
    points: list[HomogeneousFullyInvertibleSubset]
    unstable: list[FullyInvertibleSubset]
    chart_ring: FiniteRing
    round_trip: bool

    @property
    def bijection(self) -> bool:
        return not self.unstable and len(self.points) == self.base_points and self.round_trip

    def table(self) -> list[tuple[str, str]]:
        A = self.laurent.coeff_ring
        rows = []
        for p in fully_invertible_subsets(A).points:
            status = "unstable" if p in self.unstable else "ok"
            rows.append((A.fmt_set(p.members), status))
        return rows


def proj_points_crossed(r: TwistedLaurent) -> ProjReport:
    """Points of P(R) against F(R₀); the chart D₊(x) has ring R_(x) = R₀."""
    spec = fully_invertible_subsets(r.coeff_ring)
    points, unstable = [], []
    for p in spec.points:
        try:
            points.append(correspond_up(r, p))
        except NotSigmaStableError:
            unstable.append(p)
    round_trip = all(correspond_down(h) == h.base_subset for h in points)
    return ProjReport(r, len(spec), points, unstable, r.coeff_ring, round_trip)
