"""Brute-force reference counts, written straight from the definitions.

Nothing here imports the profile or commuting engines; the only shared code
is the matrix arithmetic in :mod:`commute_lab.exact`.  Inputs are tiny and
every routine is single-threaded.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable

from .config import CapExceeded, get_cap
from .exact import Mat2, ScalarLike, mat_mul, span_dim, to_scalar


def _as_weights(obj) -> dict:
    # measure-like objects expose .atoms; plain iterables get unit weights
    atoms = getattr(obj, "atoms", None)
    if atoms is not None:
        return dict(atoms)
    return {to_scalar(a): 1 for a in obj}


def _check(cap: str, got: int) -> None:
    limit = get_cap(cap)
    if got > limit:
        raise CapExceeded(cap, limit, got)


def brute_T_set(A: Iterable[ScalarLike]) -> int:
    """Number of ordered pairs (X, Y) of matrices over A with XY = YX.

    Entries are scaled to integers first (this preserves commuting) and both
    products are formed in full, exactly as :func:`mat_mul` does.
    """
    elems = sorted({to_scalar(a) for a in A})
    if not elems:
        raise ValueError("A must be non-empty")
    _check("brute_T_set", len(elems))
    scale = lcm(*(a.denominator for a in elems))
    ints = [int(a * scale) for a in elems]
    mats = list(product(ints, repeat=4))
    count = 0
    for x1, x2, x3, x4 in mats:
        for y1, y2, y3, y4 in mats:
            if (x1 * y1 + x2 * y3 == y1 * x1 + y2 * x3
                    and x1 * y2 + x2 * y4 == y1 * x2 + y2 * x4
                    and x3 * y1 + x4 * y3 == y3 * x1 + y4 * x3
                    and x3 * y2 + x4 * y4 == y3 * x2 + y4 * x4):
                count += 1
    return count


def brute_T_breakdown(A: Iterable[ScalarLike]) -> dict[str, int]:
    """Commuting pairs over A split by degeneracy.

    ``h2`` counts pairs with x2, x3, y2, y3, x4 - x1, y4 - y1 all nonzero and
    ``offdiag_nonzero`` those whose four off-diagonal entries are nonzero.
    """
    elems = sorted({to_scalar(a) for a in A})
    if not elems:
        raise ValueError("A must be non-empty")
    _check("brute_T_set", len(elems))
    mats = [Mat2(*m) for m in product(elems, repeat=4)]
    total = h2 = offdiag = 0
    for X in mats:
        for Y in mats:
            if mat_mul(X, Y) != mat_mul(Y, X):
                continue
            total += 1
            off = X.a12 != 0 and X.a21 != 0 and Y.a12 != 0 and Y.a21 != 0
            if off:
                offdiag += 1
                if X.a22 != X.a11 and Y.a22 != Y.a11:
                    h2 += 1
    return {"total": total, "h1": total - h2, "h2": h2, "offdiag_nonzero": offdiag}


def brute_T_measure(mu) -> Fraction:
    """Sum of mu(X) mu(Y) over ordered commuting support pairs."""
    atoms = list(mu.atoms.items())
    _check("brute_T_measure_pairs", len(atoms) ** 2)
    total = Fraction(0)
    for X, wx in atoms:
        for Y, wy in atoms:
            if mat_mul(X, Y) == mat_mul(Y, X):
                total += wx * wy
    return total


def brute_E(nu) -> Fraction | int:
    """Mass of (a1, a2, a3, a4) with a1 + a2 = a3 + a4."""
    w = list(_as_weights(nu).items())
    _check("quadruples", len(w) ** 4)
    total = 0
    for (a1, w1), (a2, w2), (a3, w3), (a4, w4) in product(w, repeat=4):
        if a1 + a2 == a3 + a4:
            total += w1 * w2 * w3 * w4
    return total


def brute_M(nu) -> Fraction | int:
    """Mass of nonzero (a1, a2, a3, a4) with a1 / a2 = a3 / a4."""
    w = [(a, m) for a, m in _as_weights(nu).items() if a != 0]
    _check("quadruples", len(w) ** 4)
    total = 0
    for (a1, w1), (a2, w2), (a3, w3), (a4, w4) in product(w, repeat=4):
        if a1 / a2 == a3 / a4:
            total += w1 * w2 * w3 * w4
    return total


def _affine(a: Fraction, b: Fraction) -> Mat2:
    return Mat2(a, b, Fraction(0), Fraction(1))


def _affine_inverse(g: Mat2) -> Mat2:
    # [[a, b], [0, 1]]^-1 = [[1/a, -b/a], [0, 1]]
    return Mat2(1 / g.a11, -g.a12 / g.a11, Fraction(0), Fraction(1))


def brute_affine_energy(A: Iterable[ScalarLike], variant: str = "quotient") -> int:
    """Quadruples (g, g', h, h') of affine maps x -> ax + b, a in A \\ {0}, b in A.

    ``quotient`` asks for g g'^-1 = h h'^-1, ``inverse`` for g^-1 g' = h^-1 h'.
    """
    if variant not in ("quotient", "inverse"):
        raise ValueError(f"unknown variant {variant!r}")
    elems = sorted({to_scalar(a) for a in A})
    group = [_affine(a, b) for a in elems if a != 0 for b in elems]
    if not group:
        raise ValueError("A must contain a nonzero element")
    _check("quadruples", len(group) ** 4)
    inv = [_affine_inverse(g) for g in group]
    n = len(group)
    if variant == "quotient":
        pair = [[mat_mul(group[i], inv[j]) for j in range(n)] for i in range(n)]
    else:
        pair = [[mat_mul(inv[i], group[j]) for j in range(n)] for i in range(n)]
    count = 0
    for i, j, k, l in product(range(n), repeat=4):
        if pair[i][j] == pair[k][l]:
            count += 1
    return count


def brute_asym(C: Iterable[ScalarLike], D: Iterable[ScalarLike], kind: str = "commute") -> int:
    """Eight-tuples (c1..c4, d1..d4) over C and D.

    ``commute``: c1/c2 = c3/c4 = (d1 - d2)/(d3 - d4) with d1 != d2, d3 != d4.
    ``affine``: c1/c3 = c2/c4 and c4 (d1 - d2) = c2 (d3 - d4).
    """
    cs = sorted({to_scalar(c) for c in C})
    ds = sorted({to_scalar(d) for d in D})
    if Fraction(0) in cs:
        raise ValueError("0 must not lie in C")
    _check("quadruples", len(cs) ** 4 * len(ds) ** 4)
    count = 0
    if kind == "commute":
        for c1, c2, c3, c4 in product(cs, repeat=4):
            if c1 / c2 != c3 / c4:
                continue
            ratio = c1 / c2
            for d1, d2, d3, d4 in product(ds, repeat=4):
                if d1 != d2 and d3 != d4 and (d1 - d2) / (d3 - d4) == ratio:
                    count += 1
    elif kind == "affine":
        for c1, c2, c3, c4 in product(cs, repeat=4):
            if c1 / c3 != c2 / c4:
                continue
            for d1, d2, d3, d4 in product(ds, repeat=4):
                if c4 * (d1 - d2) == c2 * (d3 - d4):
                    count += 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return count


def brute_delta(mu) -> Fraction:
    """Largest mass of a subset of the support whose span has dimension <= 2.

    Depth-first search over subsets in support order.  A branch stops when
    its span exceeds dimension 2.  It is also cut when even adding every
    remaining atom that could still fit cannot beat the best found so far:
    all remaining atoms while the span has dimension <= 1, and only those
    inside the span once it is a plane.
    """
    atoms = list(mu.atoms.items())
    if not atoms:
        raise ValueError("empty support")
    _check("brute_delta", len(atoms))
    m = len(atoms)
    suffix = [Fraction(0)] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + atoms[i][1]
    best = Fraction(0)

    def search(start: int, chosen: list[Mat2], mass: Fraction, dim: int) -> None:
        nonlocal best
        if mass > best:
            best = mass
        if dim < 2:
            bound = mass + suffix[start]
        else:
            bound = mass + sum(
                (w for X, w in atoms[start:] if span_dim(chosen + [X]) == 2), Fraction(0)
            )
        if bound <= best:
            return
        for i in range(start, m):
            X, w = atoms[i]
            d = span_dim(chosen + [X])
            if d <= 2:
                search(i + 1, chosen + [X], mass + w, d)

    search(0, [], Fraction(0), 0)
    return best
