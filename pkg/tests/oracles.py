"""Brute-force reference computations, written without the library's algorithms."""

from itertools import combinations, product


def units(ring):
    return {a for a in ring.elements for b in ring.elements
            if ring.mull[a][b] == ring.one and ring.mull[b][a] == ring.one}


def all_subsets(elements):
    elements = list(elements)
    for k in range(len(elements) + 1):
        yield from (frozenset(c) for c in combinations(elements, k))


def is_two_sided_ideal(ring, s):
    if ring.zero not in s:
        return False
    return all(ring.addl[a][ring.neg[b]] in s for a in s for b in s) and all(
        ring.mull[r][a] in s and ring.mull[a][r] in s for r in ring.elements for a in s)


def ideals_by_sweep(ring):
    """Every subset that is an ideal; only usable for tiny rings."""
    return {s for s in all_subsets(ring.elements) if is_two_sided_ideal(ring, s)}


def radical_by_units(ring):
    """J(A) = {x : 1 - a·x·b is a unit for all a, b}."""
    u = units(ring)
    one = ring.one
    return {x for x in ring.elements
            if all(ring.addl[one][ring.neg[ring.mull[ring.mull[a][x]][b]]] in u
                   for a in ring.elements for b in ring.elements)}


def three_conditions(ring, s):
    s = set(s)
    if ring.zero in s or ring.one not in s:
        return False
    for a, b in product(ring.elements, repeat=2):
        ab = ring.mull[a][b]
        if a in s and b in s and ab not in s:
            return False
        if ab in s and not (a in s and b in s):
            return False
    return True


def points_by_sweep(ring):
    return {s for s in all_subsets(ring.elements) if three_conditions(ring, s)}


def primes_by_sweep(ring):
    out = set()
    for s in ideals_by_sweep(ring):
        if ring.one in s:
            continue
        if all(a in s or b in s for a in ring.elements for b in ring.elements
               if ring.mull[a][b] in s):
            out.add(s)
    return out


def fraction_classes(ring, s):
    """Number of classes of pairs (a, t) under u(a t' - b t) = 0 for some u in s."""
    s = sorted(s)
    pairs = [(a, t) for a in ring.elements for t in s]

    def same(p, q):
        (a, t), (b, r) = p, q
        d = ring.addl[ring.mull[a][r]][ring.neg[ring.mull[b][t]]]
        return any(ring.mull[u][d] == ring.zero for u in s)

    reps = []
    for p in pairs:
        if not any(same(p, q) for q in reps):
            reps.append(p)
    return len(reps)


def is_nilpotent(ring, x):
    r = x
    for _ in range(ring.order + 1):
        if r == ring.zero:
            return True
        r = ring.mull[r][x]
    return False


def all_maps_homs(a, b):
    """Every unital ring hom a -> b by brute force over all maps (tiny rings only)."""
    out = []
    for m in product(b.elements, repeat=a.order):
        if m[a.one] != b.one:
            continue
        if all(m[a.addl[x][y]] == b.addl[m[x]][m[y]] and m[a.mull[x][y]] == b.mull[m[x]][m[y]]
               for x in a.elements for y in a.elements):
            out.append(tuple(m))
    return out
