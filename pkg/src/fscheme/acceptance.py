"""The ten acceptance properties, runnable from tests and from ``fscheme corpus run``."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

from .corpus import by_label, commutative_corpus, corpus, graded_examples
from .errors import NotSigmaStableError
from .free import (FreePoly, commutative_consistency,
                   corpus_presentations, reduce)
from .gluing import glue_double
from .graded import correspond_down, correspond_up, make_twisted_laurent, twist_law
from .ideals import (enumerate_two_sided_ideals, is_nilpotent, is_quasi_nilpotent,
                     is_self_localized, is_simple, is_von_neumann_regular, jacobson_radical,
                     quotient)
from .ring import enumerate_homs, is_local_hom
from .sheaf import (compare_L_with_spec, global_sections_match, spectrum_space,
                    stalk_matches_localization, structure_sheaf, verify_sheaf_condition)
from .space import classify_affinity
from .spectrum import (closed_subscheme_compare, closure_of_point, fully_invertible_subsets,
                       prime_complement_points, quotient_witness_points,
                       satisfies_three_conditions, three_condition_points)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title} ({self.seconds:.2f}s, limit {self.limit:g}s): {self.detail}"


def _timed(number: int, title: str, limit: float, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t0
    if ok and dt > limit:
        ok, detail = False, f"{detail}; too slow"
    return CriterionResult(number, title, ok, detail, dt, limit)


def _points_z6() -> tuple[bool, str]:
    ring = by_label("Z/6")
    spec = fully_invertible_subsets(ring)
    # independent sweep over all 64 subsets
    sweep = [frozenset(s) for k in range(7) for s in itertools.combinations(ring.elements, k)
             if satisfies_three_conditions(ring, s)]
    expected = {frozenset({1, 5}), frozenset({1, 3, 5}), frozenset({1, 2, 4, 5})}
    points = {p.members for p in spec.points}
    c = spec.points[spec.center].members
    closures = [closure_of_point(spec, i) for i in range(len(spec))]
    i135, i1245 = spec.index_of({1, 3, 5}), spec.index_of({1, 2, 4, 5})
    v_shape = (closures[spec.center] == {spec.center}
               and closures[i135] == {spec.center, i135}
               and closures[i1245] == {spec.center, i1245})
    ok = set(sweep) == expected == points and c == {1, 5} and v_shape
    return ok, f"{len(points)} points, center {sorted(c)}, V-shaped: {v_shape}"


def _triple_agreement() -> tuple[bool, str]:
    bad = []
    rings = commutative_corpus()
    for r in rings:
        a = set(three_condition_points(r))
        b = set(prime_complement_points(r))
        c = {p.members for p in quotient_witness_points(r)}
        if not a == b == c:
            bad.append(r.label)
    return not bad, f"{len(rings)} rings" + (f", disagree on {bad}" if bad else "")


def _sheaf_axioms() -> tuple[bool, str]:
    bad, checked = [], 0
    for r in commutative_corpus():
        spec = fully_invertible_subsets(r)
        if len(spec) > 20:
            continue
        sheaf = structure_sheaf(spec)
        res = verify_sheaf_condition(sheaf)
        checked += 1
        if not (res.ok and global_sections_match(sheaf)
                and all(stalk_matches_localization(sheaf, x) for x in range(len(spec)))):
            bad.append(f"{r.label}: {res.witness or 'stalk or Γ mismatch'}")
    return not bad, f"{checked} spectra" + (f", failures {bad}" if bad else "")


def _l_comparison() -> tuple[bool, str]:
    bad = []
    for r in commutative_corpus():
        if not compare_L_with_spec(r).ok:
            bad.append(r.label)
    z30 = compare_L_with_spec(by_label("Z/30"))
    n30 = len(fully_invertible_subsets(by_label("Z/30")))
    ok = not bad and len(z30.local_points) == 3 and n30 == 7
    return ok, f"Z/30: {len(z30.local_points)} local of {n30}" + (f"; failures {bad}" if bad else "")


def _noncommutative() -> tuple[bool, str]:
    m2 = by_label("M2(Z/2)")
    ut = by_label("UT2(Z/2)")
    e11 = m2.element(((1, 0), (0, 0)))
    checks = {
        "M2 simple": is_simple(m2),
        "M2 regular": is_von_neumann_regular(m2),
        "M2 self-localized": is_self_localized(m2),
        "M2 one point": len(fully_invertible_subsets(m2)) == 1,
        "diag(1,0) quasi-nilpotent": is_quasi_nilpotent(m2, e11),
        "diag(1,0) not nilpotent": not is_nilpotent(m2, e11),
        "UT not self-localized": not is_self_localized(ut),
        "UT J != 0": len(jacobson_radical(ut)) > 1,
    }
    failed = [k for k, v in checks.items() if not v]
    return not failed, "all hold" if not failed else f"failed: {failed}"


def _radical_laws() -> tuple[bool, str]:
    failed = []
    n_ideals = n_homs = 0
    for r in corpus():
        j = jacobson_radical(r).members
        for ideal in enumerate_two_sided_ideals(r):
            if not ideal.is_proper:
                continue
            n_ideals += 1
            _, pi = quotient(r, ideal)
            if is_local_hom(pi) != (ideal.members <= j):
                failed.append(f"{r.label} {sorted(ideal.members)}")
        if is_self_localized(r):
            _, pi = quotient(r, jacobson_radical(r))
            if not is_simple(pi.target):
                failed.append(f"{r.label} A/J not simple")
        if is_von_neumann_regular(r) and is_self_localized(r) != is_simple(r):
            failed.append(f"{r.label} regular but self-localized != simple")
    small = [r for r in corpus() if r.order <= 8]
    for a, b in itertools.product(small, repeat=2):
        jb, ja = jacobson_radical(b).members, jacobson_radical(a).members
        for phi in enumerate_homs(a, b):
            n_homs += 1
            if is_local_hom(phi) and not phi.preimage(jb) <= ja:
                failed.append(f"{a.label}->{b.label} {phi.map}")
    return not failed, f"{n_ideals} ideals, {n_homs} homs" + (f"; failed {failed[:5]}" if failed else "")


def _closed_loci() -> tuple[bool, str]:
    failed, n = [], 0
    for r in commutative_corpus():
        for ideal in enumerate_two_sided_ideals(r):
            if ideal.is_proper:
                n += 1
                if not closed_subscheme_compare(r, ideal).ok:
                    failed.append(f"{r.label} {sorted(ideal.members)}")
    return not failed, f"{n} ideals" + (f"; failed {failed[:5]}" if failed else "")


def _rewriting() -> tuple[bool, str]:
    failed, n = [], 0
    pres_list = corpus_presentations(corpus())
    for pres in pres_list:
        A = pres.base
        for a, b in itertools.product(A.elements, repeat=2):
            s = A.mull[A.mull[a][b]][a]
            if s not in pres.inverted:
                continue
            n += 1
            ca, cb, x = FreePoly.const(a), FreePoly.const(b), FreePoly.inv(s)
            if not (reduce(ca * (cb * ca * x), pres).is_one()
                    and reduce((x * ca * cb) * ca, pres).is_one()):
                failed.append(f"{pres} a={a} b={b}")
        if A.is_commutative and not commutative_consistency(pres):
            failed.append(f"{pres} inconsistent")
    return not failed, f"{len(pres_list)} presentations, {n} pairs" + (f"; failed {failed[:5]}" if failed else "")


def _graded() -> tuple[bool, str]:
    failed = []
    for name, r0, sigma in graded_examples():
        r = make_twisted_laurent(r0, sigma)
        if not twist_law(r, 8):
            failed.append(f"{name}: twist law")
        for p in fully_invertible_subsets(r0).points:
            try:
                if correspond_down(correspond_up(r, p)) != p:
                    failed.append(f"{name}: {r0.fmt_set(p.members)} round trip")
            except NotSigmaStableError:
                failed.append(f"{name}: {r0.fmt_set(p.members)} is not σ-stable")
    return not failed, "all round trips" if not failed else "; ".join(failed)


def _gluing() -> tuple[bool, str]:
    doubled = glue_double(fully_invertible_subsets(by_label("Z/6")))
    whole = frozenset(range(doubled.n))
    kind = classify_affinity(doubled)
    affine_ok = [classify_affinity(spectrum_space(fully_invertible_subsets(r))) == "affine"
                 for r in commutative_corpus()]
    ok = (doubled.center() is None and not doubled.is_affine_open(whole)
          and kind == "1-affine" and all(affine_ok))
    return ok, (f"doubled F(Z/6): center {doubled.center()}, classified {kind} (expected 1-affine); "
                f"{sum(affine_ok)}/{len(affine_ok)} spectra affine")


CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "F(Z/6) points, center, closure", 1.0, _points_z6),
    (2, "three enumerations agree", 5.0, _triple_agreement),
    (3, "sheaf axioms, global sections, stalks", 10.0, _sheaf_axioms),
    (4, "local points recover Spec", 10.0, _l_comparison),
    (5, "noncommutative classification", 5.0, _noncommutative),
    (6, "radical laws", 10.0, _radical_laws),
    (7, "closed loci", 10.0, _closed_loci),
    (8, "rewriting identities", 10.0, _rewriting),
    (9, "graded correspondence", 5.0, _graded),
    (10, "gluing and affinity", 2.0, _gluing),
]


def run_criterion(number: int) -> CriterionResult:
    num, title, limit, body = CRITERIA[number - 1]
    return _timed(num, title, limit, body)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA]
