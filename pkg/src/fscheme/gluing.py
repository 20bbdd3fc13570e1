"""Gluing F(A) to itself along the complement of its center."""

from __future__ import annotations

from .errors import PreconditionError
from .sheaf import spectrum_space
from .space import FSpace
from .spectrum import FullSpectrum


def glue_double(spec: FullSpectrum) -> FSpace:
    """Two copies of F(A) identified away from the center.

    Point 0 is the first center, point 1 the second, and point i+1 is the shared
    copy of point i of F(A) for i >= 1.
    """
    if len(spec) < 2:
        raise PreconditionError("removing the center of a one-point spectrum leaves nothing to glue")
    base = spectrum_space(spec)
    whole = frozenset(range(len(spec)))

    def move(points, copy):
        return frozenset((copy if p == 0 else p + 1) for p in points)

    basis, rings, origin = [], [], []
    for i, b in enumerate(base.basis):
        if b == whole:
            for copy in (0, 1):
                basis.append(move(b, copy))
                rings.append(base.rings[i])
                origin.append(i)
        else:
            basis.append(move(b, 0))
            rings.append(base.rings[i])
            origin.append(i)
    restrictions = {}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if bj <= bi:
                restrictions[(i, j)] = base.restrictions[(origin[i], origin[j])]
    labels = [base.labels[0] + "'", base.labels[0] + "''"] + base.labels[1:]
    space = FSpace(labels, basis, rings, restrictions, name=f"{base.name} doubled")
    space.copies = (move(whole, 0), move(whole, 1))
    return space
