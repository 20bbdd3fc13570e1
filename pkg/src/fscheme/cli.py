"""Command-line interface: ``fscheme <command> ...``.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import limits
from .errors import FSchemeError, StepBudgetExceeded
from .ideals import (ideal_generated, is_ring_of_quotients, is_self_localized, is_simple,
                     is_von_neumann_regular, jacobson_radical, quasi_nilpotents)
from .localization import localize, prime_ideals, require_commutative
from .ring import (FiniteRing, RingAutomorphism, RingHom, cyclic_group_table, from_tables,
                   is_local_ring, make_galois_field, make_group_algebra, make_matrix_ring,
                   make_product, make_upper_triangular, make_zmod)
from .sheaf import (compare_L_with_spec, global_sections_match, stalk_matches_localization,
                    structure_sheaf, verify_sheaf_condition)
from .spectrum import (closed_subscheme_compare, fully_invertible_subsets, open_sets,
                       z_locus)

SCHEMA = 1


class UsageError(Exception):
    """Bad input files or arguments (exit code 2)."""


# ring ingestion

def ring_from_spec(doc: Any) -> FiniteRing:
    if isinstance(doc, int):
        return make_zmod(doc)
    if not isinstance(doc, dict) or "kind" not in doc:
        raise UsageError("a ring document needs a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "zmod":
            ring = make_zmod(int(doc["n"]))
        elif kind == "galois":
            ring = make_galois_field(int(doc["p"]), int(doc["k"]))
        elif kind == "matrix":
            ring = make_matrix_ring(ring_from_spec(doc["base"]), int(doc["n"]))
        elif kind == "triangular":
            ring = make_upper_triangular(ring_from_spec(doc["base"]), int(doc["n"]))
        elif kind == "product":
            factors = [ring_from_spec(f) for f in doc["factors"]]
            if len(factors) < 2:
                raise UsageError("a product needs at least two factors")
            ring = factors[0]
            for f in factors[1:]:
                ring = make_product(ring, f)
        elif kind == "group_algebra":
            base = ring_from_spec(doc["base"])
            if "cyclic" in doc:
                group, ident = cyclic_group_table(int(doc["cyclic"])), 0
            else:
                group, ident = doc["group"], int(doc.get("identity", 0))
            ring = make_group_algebra(base, group, ident)
        elif kind == "tables":
            ring = from_tables(doc["add"], doc["mul"], int(doc["zero"]), int(doc["one"]))
        else:
            raise UsageError(f"unknown ring kind {kind!r}")
    except KeyError as e:
        raise UsageError(f"ring kind {kind!r} is missing the field {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        raise UsageError(f"bad {kind!r} ring document: {e}") from None
    if "label" in doc:
        ring.label = str(doc["label"])
    return ring


def load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None


def load_ring(path: str) -> FiniteRing:
    return ring_from_spec(load_json(path))


def parse_set(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated indices, got {text!r}") from None


def check_elements(ring: FiniteRing, xs: Sequence[int]) -> None:
    bad = [x for x in xs if not 0 <= x < ring.order]
    if bad:
        raise UsageError(f"{bad} are not elements of {ring.label} (order {ring.order})")


def parse_map(text: str) -> dict[int, int]:
    out = {}
    for pair in text.split(","):
        if not pair.strip():
            continue
        try:
            a, b = pair.split(":")
            out[int(a)] = int(b)
        except ValueError:
            raise UsageError(f"expected src:dst pairs, got {pair!r}") from None
    return out


def load_sigma(ring: FiniteRing, arg: str) -> RingAutomorphism:
    if Path(arg).exists():
        doc = load_json(arg)
        perm = doc["sigma"] if isinstance(doc, dict) else doc
    else:
        perm = parse_set(arg)
    if len(perm) != ring.order:
        raise UsageError(f"σ must list {ring.order} images")
    return RingAutomorphism(ring, [int(p) for p in perm])


# reports

def _points(spec) -> list[dict]:
    A = spec.ring
    return [{"index": i, "mask": p.key, "members": sorted(p.members),
             "pretty": A.fmt_set(p.members)} for i, p in enumerate(spec.points)]


def cmd_classify(args) -> dict:
    A = load_ring(args.ring)
    spec = fully_invertible_subsets(A)
    return {
        "ring": A.label, "order": A.order, "characteristic": A.characteristic,
        "commutative": A.is_commutative, "units": len(A.units),
        "local": is_local_ring(A), "simple": is_simple(A),
        "von_neumann_regular": is_von_neumann_regular(A),
        "self_localized": is_self_localized(A),
        "ring_of_quotients": is_ring_of_quotients(A),
        "jacobson_radical": sorted(jacobson_radical(A).members),
        "quasi_nilpotents": sorted(quasi_nilpotents(A)),
        "points": len(spec),
    }


def cmd_spec(args) -> dict:
    A = load_ring(args.ring)
    require_commutative(A, "spec")
    return {"ring": A.label,
            "primes": [{"members": sorted(p.members), "pretty": A.fmt_set(p.members)}
                       for p in prime_ideals(A)]}


def cmd_localize(args) -> dict:
    A = load_ring(args.ring)
    s = parse_set(args.set)
    check_elements(A, s)
    frac = localize(A, s)
    R = frac.ring
    return {"ring": A.label, "set": sorted(frac.mult_set.members), "order": R.order,
            "elements": [R.fmt(x) for x in R.elements],
            "canonical_map": list(frac.canonical_map.map),
            "kernel": sorted(frac.kernel), "local": is_local_ring(R)}


def _dot(spec) -> str:
    A = spec.ring
    n = len(spec)
    lines = ["digraph fullspec {", "  rankdir=BT;", "  node [shape=box];"]
    for i, p in enumerate(spec.points):
        style = ', style=filled, fillcolor="gold"' if i == spec.center else ""
        lines.append(f'  p{p.key} [label="{p.key}: {A.fmt_set(p.members)}"{style}];')
    for i in range(n):
        for j in range(n):
            if i != j and spec.leq(i, j) and not any(
                    k not in (i, j) and spec.leq(i, k) and spec.leq(k, j) for k in range(n)):
                lines.append(f"  p{spec.points[i].key} -> p{spec.points[j].key};")
    lines.append("}")
    return "\n".join(lines)


def cmd_fullspec(args) -> dict | str:
    A = load_ring(args.ring)
    spec = fully_invertible_subsets(A)
    if args.dot:
        return _dot(spec)
    out = {"ring": A.label, "kind": spec.kind, "center": spec.center, "points": _points(spec)}
    if spec.commutative:
        opens = open_sets(spec, args.bound)
        out["basis"] = [{"points": sorted(d), "generator": a} for d, a in spec.basis_opens]
        out["opens"] = len(opens)
        out["opens_with_center"] = sum(o.has_center for o in opens)
    return out


def cmd_locus(args) -> dict:
    A = load_ring(args.ring)
    gens = parse_set(args.ideal)
    check_elements(A, gens)
    spec = fully_invertible_subsets(A)
    ideal = ideal_generated(A, gens)
    loc = z_locus(spec, ideal)
    out = {"ring": A.label, "ideal": sorted(ideal.members), "locus": sorted(loc.points),
           "closure": sorted(loc.closure)}
    if ideal.is_proper:
        out["subscheme_ok"] = closed_subscheme_compare(A, ideal, args.bound).ok
    return out


def cmd_sheaf_check(args) -> dict:
    A = load_ring(args.ring)
    spec = fully_invertible_subsets(A)
    sheaf = structure_sheaf(spec)
    res = verify_sheaf_condition(sheaf, args.bound, args.max_covers)
    return {"ring": A.label, "points": len(spec), "sheaf": res.ok, "witness": res.witness,
            "covers_checked": res.covers_checked,
            "global_sections": global_sections_match(sheaf),
            "stalks": all(stalk_matches_localization(sheaf, x) for x in range(len(spec)))}


def cmd_stalk(args) -> dict:
    A = load_ring(args.ring)
    spec = fully_invertible_subsets(A)
    members = parse_set(args.point)
    try:
        x = spec.index_of(members)
    except KeyError:
        raise UsageError(f"{members} is not a point of F({A.label})") from None
    sheaf = structure_sheaf(spec)
    st = sheaf.stalk(x)
    return {"ring": A.label, "point": x, "order": st.order, "local": is_local_ring(st.ring),
            "matches_localization": stalk_matches_localization(sheaf, x)}


def cmd_compare_spec(args) -> dict:
    A = load_ring(args.ring)
    c = compare_L_with_spec(A, args.bound)
    return {"ring": A.label, "primes": len(c.primes), "local_points": sorted(c.local_points),
            "bijection": {str(k): v for k, v in sorted(c.bijection.items())},
            "topology_agrees": c.topology_agrees, "stalks_agree": c.stalks_agree, "ok": c.ok}


def cmd_morphism(args) -> dict:
    from .morphisms import spectral_map, stalk_map_localness
    A, B = load_ring(args.src), load_ring(args.dst)
    m = parse_map(args.map)
    missing = [a for a in A.elements if a not in m]
    if missing:
        raise UsageError(f"--map must give an image for every element; missing {missing}")
    phi = RingHom(A, B, [m[a] for a in A.elements])
    sm = spectral_map(phi)
    out = {"source": A.label, "target": B.label, "point_map": list(sm.point_map),
           "continuity": None if sm.continuity is None
           else {str(a): v for a, v in sorted(sm.continuity.items())},
           "continuous": sm.continuous}
    if A.is_commutative and B.is_commutative:
        out["local_at"] = [stalk_map_localness(phi, i) for i in range(len(sm.source_spec))]
    return out


def cmd_free_reduce(args) -> dict:
    from .free import LocalizationPresentation, parse_expr, reduce
    A = load_ring(args.ring)
    s = parse_set(args.invert)
    check_elements(A, s)
    pres = LocalizationPresentation(A, s)
    try:
        p = parse_expr(args.expr)
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        nf = reduce(p, pres, args.max_steps, args.max_degree)
        return {"ring": A.label, "inverted": sorted(pres.inverted), "input": str(p),
                "normal_form": str(nf), "normal": True}
    except StepBudgetExceeded as e:
        return {"ring": A.label, "inverted": sorted(pres.inverted), "input": str(p),
                "normal_form": str(e.partial), "normal": False, "reason": str(e)}


def cmd_graded_correspond(args) -> dict:
    from .graded import make_twisted_laurent, proj_points_crossed
    A = load_ring(args.ring)
    r = make_twisted_laurent(A, load_sigma(A, args.sigma))
    rep = proj_points_crossed(r)
    return {"ring": A.label, "sigma": list(r.sigma.map),
            "table": [{"point": p, "status": s} for p, s in rep.table()],
            "projective_points": len(rep.points), "base_points": rep.base_points,
            "bijection": rep.bijection}


def cmd_graded_twistlaw(args) -> dict:
    from .graded import make_twisted_laurent, twist_law
    A = load_ring(args.ring)
    r = make_twisted_laurent(A, load_sigma(A, args.sigma))
    return {"ring": A.label, "sigma": list(r.sigma.map), "window": args.window,
            "twist_law": twist_law(r, args.window)}


def cmd_corpus_list(args) -> dict:
    from .corpus import corpus
    return {"rings": [{"label": r.label, "order": r.order, "commutative": r.is_commutative}
                      for r in corpus()]}


def cmd_corpus_run(args) -> dict:
    from .acceptance import run_all
    results = run_all()
    if not args.json:
        for r in results:
            print(r.line())
    return {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                          "detail": r.detail} for r in results],
            "passed": sum(r.passed for r in results), "total": len(results)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fscheme", description="Full spectra of finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def ring_cmd(name, func, help_):
        c = sub.add_parser(name, help=help_)
        c.add_argument("ring", help="ring JSON file")
        c.set_defaults(func=func)
        return c

    ring_cmd("classify", cmd_classify, "ring-theoretic invariants")
    ring_cmd("spec", cmd_spec, "prime ideals of a commutative ring")
    c = ring_cmd("localize", cmd_localize, "fraction ring at a set")
    c.add_argument("--set", required=True, help="comma-separated element indices")
    c = ring_cmd("fullspec", cmd_fullspec, "points and topology of F(A)")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--dot", action="store_true", help="Hasse diagram in DOT")
    c.add_argument("--bound", type=int, default=limits.MAX_OPEN_POINTS)
    c = ring_cmd("locus", cmd_locus, "closed locus Z(I)")
    c.add_argument("--ideal", required=True, help="generators of I")
    c.add_argument("--bound", type=int, default=limits.MAX_OPEN_POINTS)
    c = ring_cmd("sheaf-check", cmd_sheaf_check, "verify the sheaf condition")
    c.add_argument("--bound", type=int, default=limits.MAX_OPEN_POINTS)
    c.add_argument("--max-covers", type=int, default=limits.MAX_COVERS)
    c = ring_cmd("stalk", cmd_stalk, "stalk at a point")
    c.add_argument("--point", required=True, help="members of the point")
    c = ring_cmd("compare-spec", cmd_compare_spec, "local points against Spec")
    c.add_argument("--bound", type=int, default=limits.MAX_OPEN_POINTS)

    c = sub.add_parser("morphism", help="morphism induced by a ring hom")
    c.add_argument("src")
    c.add_argument("dst")
    c.add_argument("--map", required=True, help="src:dst pairs, e.g. 0:0,1:1")
    c.set_defaults(func=cmd_morphism)

    free = sub.add_parser("free-loc", help="symbolic localization")
    fsub = free.add_subparsers(dest="action", required=True)
    c = fsub.add_parser("reduce", help="normal form of an expression")
    c.add_argument("ring")
    c.add_argument("--invert", required=True)
    c.add_argument("--expr", required=True)
    c.add_argument("--max-steps", type=int, default=limits.REWRITE_MAX_STEPS)
    c.add_argument("--max-degree", type=int, default=limits.REWRITE_MAX_DEGREE)
    c.set_defaults(func=cmd_free_reduce)

    graded = sub.add_parser("graded", help="twisted Laurent rings")
    gsub = graded.add_subparsers(dest="action", required=True)
    c = gsub.add_parser("correspond", help="points of P(R) against F(R0)")
    c.add_argument("ring")
    c.add_argument("--sigma", required=True, help="permutation JSON file or comma list")
    c.set_defaults(func=cmd_graded_correspond)
    c = gsub.add_parser("twistlaw", help="check x^n a x^-n = σ^n(a)")
    c.add_argument("ring")
    c.add_argument("--sigma", required=True)
    c.add_argument("--window", type=int, default=8)
    c.set_defaults(func=cmd_graded_twistlaw)

    corp = sub.add_parser("corpus", help="the canonical corpus")
    csub = corp.add_subparsers(dest="action", required=True)
    c = csub.add_parser("list")
    c.set_defaults(func=cmd_corpus_list)
    c = csub.add_parser("run", help="run the acceptance properties")
    c.add_argument("--json", action="store_true", help="JSON only, no summary table")
    c.set_defaults(func=cmd_corpus_run)
    return p


def emit(payload: dict | str, command: str) -> None:
    if isinstance(payload, str):
        print(payload)
    else:
        print(json.dumps({"schema": SCHEMA, "command": command, **payload}, indent=2))


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    try:
        payload = args.func(args)
    except UsageError as e:
        print(json.dumps({"schema": SCHEMA, "command": command, "error": "usage",
                          "message": str(e)}), file=sys.stderr)
        return 2
    except FSchemeError as e:
        emit({"error": type(e).__name__, "message": str(e)}, command)
        return 1
    emit(payload, command)
    if command == "corpus run" and payload["passed"] != payload["total"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
