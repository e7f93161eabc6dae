"""Counting commuting pairs of 2x2 matrices.

Three independent routes compute T(A):

``pairwise``
    every ordered pair of matrices with entries in A, tested with the
    scalar commuting equations.

``zero_pattern``
    the solutions of

        x2*y3 = x3*y2,   x2*v = y2*u,   x3*v = y3*u      (u = x4-x1, v = y4-y1)

    are split by which of (x2, x3, y2, y3, u, v) vanish.  A table-driven
    reducer turns each of the 64 patterns into a product of simple masses and
    at most one bucketed sum over the quotient profile q and the
    difference-ratio profile R.  The all-nonzero pattern is sum_z q(z)^2 R(z).

``commutant``
    a nonscalar X commutes exactly with span{I, X}, and Y lies in that span
    iff (y2, y3, v) is parallel to (x2, x3, u).  Matrices are aggregated by
    the projective class of that triple.

The weighted variants take a scalar measure nu in place of A and compute
T(mu_nu) without materializing the product measure.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Iterable, NamedTuple, Union

from ._parallel import map_chunks, merge_counts
from .config import check_cap
from .exact import (
    Mat2,
    ScalarLike,
    commutes,
    format_scalar,
    integer_vector,
    primitive_direction,
    to_scalar,
)
from .measures import MatrixMeasure, ScalarMeasure, mass_at_zero, norm
from .profiles import SetOrMeasure, pair_counts, ratio_counts, weights_of

Number = Union[int, Fraction]

ALGORITHMS = ("pairwise", "zero_pattern", "commutant")

# -- report ------------------------------------------------------------------


@dataclass(frozen=True)
class CommuteReport:
    total: Number
    h1_degenerate: Number
    h2_nondegenerate: Number
    algorithm: str

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.total != self.h1_degenerate + self.h2_nondegenerate:
            raise AssertionError("degenerate and nondegenerate parts do not add up")

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "total": format_scalar(Fraction(self.total)),
            "h1_degenerate": format_scalar(Fraction(self.h1_degenerate)),
            "h2_nondegenerate": format_scalar(Fraction(self.h2_nondegenerate)),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "value", "algorithm"])
        for name in ("total", "h1_degenerate", "h2_nondegenerate"):
            w.writerow([name, format_scalar(Fraction(getattr(self, name))), self.algorithm])
        return buf.getvalue()


# -- shared preprocessing ----------------------------------------------------


def _integerized(w: dict) -> dict[int, Number]:
    # T, delta and every energy here are invariant under dilating all entries
    # by one nonzero factor, so keys are scaled to integers up front.
    if not w:
        return {}
    m = lcm(*(k.denominator for k in w))
    return {int(k * m): v for k, v in sorted(w.items())}


def _weights_nonempty(A: SetOrMeasure) -> dict[int, Number]:
    w = weights_of(A)
    if not w:
        raise ValueError("empty support")
    return _integerized(w)


# -- zero-pattern reducer ----------------------------------------------------

PATTERN_VARS = ("x2", "x3", "y2", "y3", "u", "v")
OFFDIAG_VARS = frozenset({"x2", "x3", "y2", "y3"})
EQUATIONS = (
    (("x2", "y3"), ("x3", "y2")),
    (("x2", "v"), ("y2", "u")),
    (("x3", "v"), ("y3", "u")),
)

# Coupled sums that a set of nontrivial equations reduces to; the variables
# involved are integrated out jointly, all others independently.
COUPLINGS = {
    frozenset(): None,
    frozenset({0}): "M",  # x2/y2 = x3/y3: sum q^2
    frozenset({1}): "qR",  # x2/y2 = u/v: sum q R
    frozenset({2}): "qR",  # x3/y3 = u/v: sum q R
    frozenset({0, 1, 2}): "q2R",  # all three ratios equal: sum q^2 R
}


class PatternRow(NamedTuple):
    nonzero: tuple[bool, ...]  # aligned with PATTERN_VARS
    status: tuple[str, ...]  # per equation: "trivial", "contradiction", "bucketed"
    coupling: str | None
    free_vars: tuple[str, ...]

    @property
    def feasible(self) -> bool:
        return "contradiction" not in self.status

    @property
    def degenerate(self) -> bool:
        return not all(self.nonzero)


@lru_cache(maxsize=None)
def zero_pattern_table() -> tuple[PatternRow, ...]:
    """All 64 zero/nonzero patterns with the reduction of each equation.

    An equation ``a*b = c*d`` whose sides both contain a zero factor is
    trivially true, one with exactly one vanishing side is a contradiction,
    and one with both sides nonzero is kept as a bucketed ratio condition.
    """
    rows = []
    for bits in product((False, True), repeat=6):
        nz = dict(zip(PATTERN_VARS, bits))
        status = []
        bucketed = set()
        for i, (lhs, rhs) in enumerate(EQUATIONS):
            left = all(nz[v] for v in lhs)
            right = all(nz[v] for v in rhs)
            if not left and not right:
                status.append("trivial")
            elif left != right:
                status.append("contradiction")
            else:
                status.append("bucketed")
                bucketed.add(i)
        coupling = None
        coupled_vars: set[str] = set()
        if "contradiction" not in status:
            key = frozenset(bucketed)
            if key not in COUPLINGS:
                raise AssertionError(f"unreduced equation set {sorted(key)} for {bits}")
            coupling = COUPLINGS[key]
            for i in bucketed:
                for side in EQUATIONS[i]:
                    coupled_vars.update(side)
        free = tuple(v for v in PATTERN_VARS if v not in coupled_vars)
        rows.append(PatternRow(bits, tuple(status), coupling, free))
    return tuple(rows)


@dataclass(frozen=True)
class _Masses:
    off_zero: Number  # nu(0)
    off_nonzero: Number  # nu(R \ {0})
    diag_zero: Number  # mass of (x1, x4) with x4 = x1
    diag_nonzero: Number  # mass of (x1, x4) with x4 != x1
    coupled: dict


def _masses(w: dict[int, Number], threads: int) -> _Masses:
    total = sum(w.values(), 0)
    n0 = w.get(0, 0)
    sq = sum((v * v for v in w.values()), 0)
    q = ratio_counts(w, w, threads)
    diffs = pair_counts(w, -1)
    diffs.pop(0, None)
    R = ratio_counts(diffs, diffs, threads)
    M = sum((m * m for m in q.values()), 0)
    qR = sum((m * R.get(z, 0) for z, m in q.items()), 0)
    q2R = sum((m * m * R.get(z, 0) for z, m in q.items()), 0)
    return _Masses(n0, total - n0, sq, total * total - sq, {"M": M, "qR": qR, "q2R": q2R})


def _pattern_value(row: PatternRow, ms: _Masses) -> Number:
    if not row.feasible:
        return 0
    value = ms.coupled[row.coupling] if row.coupling else 1
    nz = dict(zip(PATTERN_VARS, row.nonzero))
    for var in row.free_vars:
        if var in OFFDIAG_VARS:
            value *= ms.off_nonzero if nz[var] else ms.off_zero
        else:
            value *= ms.diag_nonzero if nz[var] else ms.diag_zero
    return value


def pattern_contributions(A: SetOrMeasure, threads: int = 1) -> dict[tuple[bool, ...], Number]:
    """Mass of commuting solutions in each feasible zero pattern."""
    ms = _masses(_weights_nonempty(A), threads)
    return {row.nonzero: _pattern_value(row, ms) for row in zero_pattern_table() if row.feasible}


def _zero_pattern_report(w: dict[int, Number], threads: int) -> CommuteReport:
    ms = _masses(w, threads)
    h1 = 0
    h2 = 0
    for row in zero_pattern_table():
        val = _pattern_value(row, ms)
        if row.degenerate:
            h1 += val
        else:
            h2 += val
    return CommuteReport(h1 + h2, h1, h2, "zero_pattern")


# -- commutant aggregation ---------------------------------------------------


def _direction_chunk(x2s: list, w: dict, diffs: dict) -> dict:
    out: dict = {}
    for x2, w2 in x2s:
        for x3, w3 in w.items():
            for d, wd in diffs.items():
                key = primitive_direction((x2, x3, d))
                if key is None:
                    continue
                out[key] = out.get(key, 0) + w2 * w3 * wd
    return out


def direction_classes(w: dict[int, Number], threads: int = 1) -> dict[tuple[int, int, int], Number]:
    """Mass of nonscalar matrices grouped by the line through (x2, x3, x4 - x1)."""
    diffs = pair_counts(w, -1)
    parts = map_chunks(_direction_chunk, list(w.items()), threads, w, diffs)
    return merge_counts(parts)


def _commutant_report(w: dict[int, Number], threads: int) -> CommuteReport:
    total_mass = sum(w.values(), 0) ** 4
    n0 = w.get(0, 0)
    scalar_mass = n0 * n0 * sum((v * v for v in w.values()), 0)
    W = direction_classes(w, threads)
    nonscalar = sum((m * m for m in W.values()), 0)
    total = scalar_mass * total_mass + (total_mass - scalar_mass) * scalar_mass + nonscalar
    # Parallel triples share their zero pattern, so the fully nonzero
    # commuting pairs are exactly the fully nonzero classes paired with themselves.
    h2 = sum((m * m for k, m in W.items() if all(k)), 0)
    return CommuteReport(total, total - h2, h2, "commutant")


# -- pairwise ---------------------------------------------------------------


def _pairwise_chunk(xs: list, mats: list) -> tuple[int, int]:
    total = 0
    h2 = 0
    for x1, x2, x3, x4 in xs:
        u = x4 - x1
        for y1, y2, y3, y4 in mats:
            v = y4 - y1
            if x2 * y3 == x3 * y2 and x2 * v == y2 * u and x3 * v == y3 * u:
                total += 1
                if x2 and x3 and y2 and y3 and u and v:
                    h2 += 1
    return total, h2


def _pairwise_report(w: dict[int, Number], threads: int) -> CommuteReport:
    if any(v != 1 for v in w.values()):
        raise ValueError("the pairwise algorithm counts sets, not weighted measures")
    mats = list(product(sorted(w), repeat=4))
    parts = map_chunks(_pairwise_chunk, mats, threads, mats)
    total = sum(p[0] for p in parts)
    h2 = sum(p[1] for p in parts)
    return CommuteReport(total, total - h2, h2, "pairwise")


_ENGINES = {
    "pairwise": _pairwise_report,
    "zero_pattern": _zero_pattern_report,
    "commutant": _commutant_report,
}


def commute_count_set(
    A: Iterable[ScalarLike], algorithm: str = "zero_pattern", threads: int = 1
) -> CommuteReport:
    """T(A): ordered pairs of commuting matrices with all entries in ``A``."""
    if algorithm not in _ENGINES:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    w = _weights_nonempty({to_scalar(a): 1 for a in A})
    return _ENGINES[algorithm](w, threads)


def commute_count(A: Iterable[ScalarLike], threads: int = 1) -> int:
    return int(commute_count_set(A, "zero_pattern", threads).total)


def commute_count_product_measure(
    nu: ScalarMeasure, algorithm: str = "zero_pattern", threads: int = 1
) -> CommuteReport:
    """T(mu_nu) computed from nu alone, without the product measure."""
    if algorithm == "pairwise":
        raise ValueError("use commute_count_measure(product_measure(nu)) for a pairwise check")
    if algorithm not in _ENGINES:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return _ENGINES[algorithm](_weights_nonempty(nu), threads)


def offdiag_split(A: Iterable[ScalarLike], threads: int = 1) -> tuple[int, int]:
    """(pairs with x2, x3, y2, y3 all nonzero, pairs with some of them zero).

    Computed from the commutant classes: a class with nonzero x2 and x3 only
    commutes with scalars (excluded) and with its own parallel class.
    """
    w = _weights_nonempty({to_scalar(a): 1 for a in A})
    W = direction_classes(w, threads)
    nonzero = sum((m * m for k, m in W.items() if k[0] and k[1]), 0)
    total = _commutant_report(w, threads).total
    return int(nonzero), int(total - nonzero)


def commute_offdiag_nonzero_count(A: Iterable[ScalarLike], threads: int = 1) -> int:
    """Commuting pairs whose four off-diagonal entries are in A \\ {0}."""
    A = list(A)
    if not A:
        return 0
    return offdiag_split(A, threads)[0]


def commute_offdiag_degenerate_count(A: Iterable[ScalarLike], threads: int = 1) -> int:
    """Commuting pairs with at least one zero off-diagonal entry, by zero patterns."""
    contrib = pattern_contributions({to_scalar(a): 1 for a in A}, threads)
    return int(
        sum(v for bits, v in contrib.items() if not all(bits[:4]))
    )


# -- general matrix measures ------------------------------------------------


def commute_count_measure(mu: MatrixMeasure, algorithm: str = "commutant") -> Fraction:
    """T(mu) = sum of mu(X) mu(Y) over ordered commuting support pairs."""
    atoms = list(mu.atoms.items())
    if algorithm == "pairwise":
        return sum(
            (wx * wy for X, wx in atoms for Y, wy in atoms if commutes(X, Y)), Fraction(0)
        )
    if algorithm != "commutant":
        raise ValueError(f"unknown algorithm {algorithm!r}")
    total = sum((w for _, w in atoms), Fraction(0))
    scalar = Fraction(0)
    W: dict = {}
    for X, wx in atoms:
        x1, x2, x3, x4 = X
        key = primitive_direction(integer_vector((x2, x3, x4 - x1)))
        if key is None:
            scalar += wx
        else:
            W[key] = W.get(key, Fraction(0)) + wx
    return scalar * total + (total - scalar) * scalar + sum((m * m for m in W.values()), Fraction(0))


def _plane_key(p: tuple[int, ...], q: tuple[int, ...]) -> tuple | None:
    """Reduced echelon basis of span{p, q} (integer rows, positive pivots).

    The reduced echelon form of a subspace is unique, so equal planes get
    equal keys whichever pair generated them.  None if p and q are parallel.
    """
    c1 = next(k for k in range(4) if p[k] or q[k])
    if p[c1] == 0:
        p, q = q, p
    r2 = primitive_direction(tuple(p[c1] * b - q[c1] * a for a, b in zip(p, q)))
    if r2 is None:
        return None
    c2 = next(k for k in range(4) if r2[k])
    r1 = primitive_direction(tuple(r2[c2] * a - p[c2] * b for a, b in zip(p, r2)))
    return (r1, r2)


class DeltaResult(NamedTuple):
    value: Fraction
    witness: tuple[Mat2, ...]


def delta_with_witness(mu: MatrixMeasure) -> DeltaResult:
    """delta(mu) with a spanning witness for the maximizing subspace.

    Any subset of dimension at most 2 lies in the span of at most two of its
    own elements, so it suffices to scan {0}, the lines through support
    points and the planes through pairs of them.  Planes through a fixed X are
    found by bucketing the other atoms by the plane they span with X, which
    keeps the scan at O(m^2).  Candidates are visited as: zero subspace, lines
    by least atom, planes by least generating pair; the first maximum wins.
    """
    if not mu.atoms:
        raise ValueError("empty support")
    check_cap("delta", len(mu))
    atoms = sorted(mu.atoms.items())
    weights = [w for _, w in atoms]
    line_of = [primitive_direction(integer_vector(X)) for X, _ in atoms]
    zero_mass = sum((w for key, w in zip(line_of, weights) if key is None), Fraction(0))

    lines: dict = {}
    for key, w in zip(line_of, weights):
        if key is not None:
            lines[key] = lines.get(key, Fraction(0)) + w

    best = DeltaResult(zero_mass, ())
    for (X, _), key in zip(atoms, line_of):
        if key is not None and lines[key] + zero_mass > best.value:
            best = DeltaResult(lines[key] + zero_mass, (X,))

    seen: set = set()
    for i, (X, _) in enumerate(atoms):
        p = line_of[i]
        if p is None:
            continue
        base = lines[p] + zero_mass
        planes: dict = {}
        first: dict = {}
        for j, q in enumerate(line_of):
            if q is None or q == p:
                continue
            key = _plane_key(p, q)
            planes[key] = planes.get(key, Fraction(0)) + weights[j]
            first.setdefault(key, j)
        for key, m in planes.items():
            if key in seen:
                continue
            seen.add(key)
            if base + m > best.value:
                best = DeltaResult(base + m, (X, atoms[first[key]][0]))
    return best


def delta(mu: MatrixMeasure) -> Fraction:
    """Largest mu-mass of a subset of the support spanning at most 2 dimensions."""
    return delta_with_witness(mu).value


class Theorem1Check(NamedTuple):
    T: Fraction
    delta: Fraction
    holds: bool


def theorem1_check(mu: MatrixMeasure) -> Theorem1Check:
    """Compare T(mu) with 8 delta(mu) exactly for a probability measure."""
    if not mu.is_probability:
        raise ValueError("theorem1_check needs a probability measure")
    T = commute_count_measure(mu)
    d = delta(mu)
    return Theorem1Check(T, d, T <= 8 * d)


# -- affine group energies ---------------------------------------------------


def affine_energy(A: SetOrMeasure, variant: str = "quotient") -> Number:
    """Energy of Aff(A) = {x -> a x + b : a in A \\ {0}, b in A}.

    ``variant="quotient"`` counts g g'^-1 = h h'^-1 and ``"inverse"`` counts
    g^-1 g' = h^-1 h'.  With g = m(a1, a2), g' = m(a3, a4), h = m(b1, b2),
    h' = m(b3, b4) the first reads a1/a3 = b1/b3 = z, a2 - b2 = z (a4 - b4)
    and the second a1/b1 = a3/b3 = z, a4 - a2 = z (b4 - b2).  Both become
    sum_z q(z)^2 * #{d1 - d2 = z (d3 - d4)}.  For a measure nu the element
    m(a, b) carries weight nu(a) nu(b).
    """
    if variant not in ("quotient", "inverse"):
        raise ValueError(f"unknown variant {variant!r}")
    w = _integerized(weights_of(A))
    if not any(k != 0 for k in w):
        raise ValueError("A \\ {0} is empty")
    q = ratio_counts(w, w)
    diffs = pair_counts(w, -1)
    total = 0
    for z, m in q.items():
        coupled = sum((c * diffs.get(s / z, 0) for s, c in diffs.items()), 0)
        total += m * m * coupled
    return total


# -- diagnostics -------------------------------------------------------------


def degenerate_ratio(nu: ScalarMeasure) -> Fraction:
    """h1(nu) / (nu(0)^3 + ||nu||_2^6), the constant in the degenerate bound."""
    rep = commute_count_product_measure(nu)
    return Fraction(rep.h1_degenerate) / (mass_at_zero(nu) ** 3 + norm(nu, 2) ** 3)
