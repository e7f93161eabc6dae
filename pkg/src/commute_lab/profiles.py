"""Representation profiles and the additive and multiplicative energies.

Every function here accepts either a :class:`ScalarMeasure` or a plain
finite set of scalars.  A set is treated as the weight map ``a -> 1``, so the
same code yields integer counts for sets and exact rational masses for
measures.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from ._parallel import map_chunks, merge_counts
from .exact import ScalarLike, format_scalar, to_scalar
from .measures import ScalarMeasure

Number = Union[int, Fraction]
Weights = dict  # Fraction -> Number
SetOrMeasure = Union[ScalarMeasure, Mapping, Iterable[ScalarLike]]

ZERO = Fraction(0)

KINDS = ("quotient", "sum", "difference", "diff_ratio", "line")


def weights_of(obj: SetOrMeasure) -> Weights:
    """Weight map of a measure, a mapping, or a set (unit weights)."""
    if isinstance(obj, ScalarMeasure):
        return dict(obj.atoms)
    if isinstance(obj, Mapping):
        return {to_scalar(k): v for k, v in obj.items()}
    return {to_scalar(a): 1 for a in obj}


@dataclass(frozen=True)
class Profile:
    """Exact bucket map ``key -> mass`` with only positive masses stored."""

    buckets: Mapping[Fraction, Number]
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        clean = {k: v for k, v in sorted(self.buckets.items()) if v}
        for k, v in clean.items():
            if v < 0:
                raise ValueError(f"negative mass {v} at {k}")
        object.__setattr__(self, "buckets", MappingProxyType(clean))

    def __getitem__(self, key: ScalarLike) -> Number:
        return self.buckets.get(to_scalar(key), 0)

    def __len__(self) -> int:
        return len(self.buckets)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.buckets)

    def items(self):
        return self.buckets.items()

    def total(self) -> Number:
        return sum(self.buckets.values(), 0)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) or v.denominator == 1 for v in self.buckets.values())

    def as_dict(self) -> dict[Fraction, Number]:
        return dict(self.buckets)


# -- bucket builders -------------------------------------------------------


def _ratio_chunk(left: list, right: list) -> dict:
    out: dict = {}
    for a, wa in left:
        for b, wb in right:
            z = Fraction(a, b)
            out[z] = out.get(z, 0) + wa * wb
    return out


def ratio_counts(num: Weights, den: Weights, threads: int = 1) -> dict:
    """``z -> sum w(a) w'(b) [a / b = z]`` over nonzero keys of both maps."""
    left = [(a, w) for a, w in num.items() if a != 0]
    right = [(b, w) for b, w in den.items() if b != 0]
    if not left or not right:
        return {}
    return merge_counts(map_chunks(_ratio_chunk, left, threads, right))


def pair_counts(w: Weights, sign: int) -> dict:
    """``s -> sum w(a) w(b) [a + sign*b = s]``; sign is +1 or -1."""
    out: dict = {}
    items = list(w.items())
    for a, wa in items:
        for b, wb in items:
            s = a + sign * b
            out[s] = out.get(s, 0) + wa * wb
    return out


def quotient_profile(nu: SetOrMeasure, threads: int = 1) -> Profile:
    """q(z): mass of ordered pairs of nonzero support points with a / b = z."""
    w = weights_of(nu)
    return Profile(ratio_counts(w, w, threads), "quotient")


def sum_profile(nu: SetOrMeasure) -> Profile:
    return Profile(pair_counts(weights_of(nu), 1), "sum")


def difference_profile(nu: SetOrMeasure) -> Profile:
    return Profile(pair_counts(weights_of(nu), -1), "difference")


def diff_ratio_profile(A: SetOrMeasure, threads: int = 1) -> Profile:
    """r1(z): mass of (a, b, c, d) with a != b, c != d and (a - b)/(c - d) = z.

    For a set this counts quadruples.  Sets with fewer than two points give
    the empty profile.
    """
    diffs = pair_counts(weights_of(A), -1)
    diffs.pop(ZERO, None)
    return Profile(ratio_counts(diffs, diffs, threads), "diff_ratio")


def line_profile(nu: SetOrMeasure, z: ScalarLike) -> Profile:
    """r_z(y): mass of pairs (a1, a2) with y = a1 + z*a2.  Nothing is excluded."""
    z = to_scalar(z)
    items = list(weights_of(nu).items())
    out: dict = {}
    for a1, w1 in items:
        for a2, w2 in items:
            y = a1 + z * a2
            out[y] = out.get(y, 0) + w1 * w2
    return Profile(out, "line")


def coupled_difference(nu: SetOrMeasure, z: ScalarLike) -> Number:
    """Mass of (d1, d2, d3, d4) with d1 - d2 = z (d3 - d4), zero differences included."""
    z = to_scalar(z)
    diffs = pair_counts(weights_of(nu), -1)
    if z == 0:
        return diffs.get(ZERO, 0) * sum(diffs.values(), 0)
    return sum((m * diffs.get(s / z, 0) for s, m in diffs.items()), 0)


# -- moments and energies ----------------------------------------------------


def moment(P: Profile, k: int) -> Number:
    if k < 1:
        raise ValueError("moment order must be a positive integer")
    return sum((v**k for v in P.buckets.values()), 0)


def energy_additive(nu: SetOrMeasure) -> Number:
    """E_nu: mass of (a1, a2, a3, a4) with a1 + a2 = a3 + a4."""
    return moment(sum_profile(nu), 2)


def energy_additive_set(A: Iterable[ScalarLike]) -> int:
    return int(energy_additive(set(map(to_scalar, A))))


def energy_mult(nu: SetOrMeasure) -> Number:
    """M(nu): mass of nonzero (a1, a2, a3, a4) with a1 / a2 = a3 / a4."""
    return moment(quotient_profile(nu), 2)


def energy_mult_set(A: Iterable[ScalarLike]) -> int:
    return int(energy_mult(set(map(to_scalar, A))))


def mixed_energy(nu: SetOrMeasure, parts: list[Iterable[ScalarLike]]) -> Number:
    """sum of nu(a1)..nu(a4) [a1 - a2 = a3 - a4] with a_i drawn from ``parts[i]``.

    The four parts are subsets of the support of ``nu``; points outside the
    support carry zero weight.
    """
    if len(parts) != 4:
        raise ValueError("mixed energy takes exactly four sets")
    w = weights_of(nu)
    ws = [{a: w[a] for a in map(to_scalar, p) if a in w} for p in parts]

    def diff_counts(first: dict, second: dict) -> dict:
        out: dict = {}
        for a, wa in first.items():
            for b, wb in second.items():
                out[a - b] = out.get(a - b, 0) + wa * wb
        return out

    r12 = diff_counts(ws[0], ws[1])
    r34 = diff_counts(ws[2], ws[3])
    return sum((m * r34.get(s, 0) for s, m in r12.items()), 0)


def restricted_energy(nu: SetOrMeasure, part: Iterable[ScalarLike]) -> Number:
    """E_nu(A) for a subset A of the support."""
    p = list(part)
    return mixed_energy(nu, [p, p, p, p])


def dyadic_levels(P: Profile) -> list[tuple[int, int]]:
    """Histogram of buckets by level tau = 2^j, where tau <= mass < 2 tau.

    Levels run from tau = 1 to the top occupied level, empty ones included.
    Only integer-valued (set) profiles have meaningful levels.
    """
    if not P.is_integral():
        raise ValueError("dyadic levels require set profiles")
    counts: dict[int, int] = {}
    for v in P.buckets.values():
        j = int(v).bit_length() - 1
        counts[j] = counts.get(j, 0) + 1
    if not counts:
        return []
    return [(1 << j, counts.get(j, 0)) for j in range(max(counts) + 1)]


# -- asymmetric counts -------------------------------------------------------


def _require_nonzero(C: Weights) -> None:
    if ZERO in C:
        raise ValueError("0 must not lie in C")


def asym_commute_count(C: SetOrMeasure, D: SetOrMeasure) -> Number:
    """Count (c1..c4, d1..d4) with c1/c2 = c3/c4 = (d1 - d2)/(d3 - d4)."""
    wc = weights_of(C)
    _require_nonzero(wc)
    q = quotient_profile(wc)
    r = diff_ratio_profile(weights_of(D))
    return sum((m * m * r[z] for z, m in q.items()), 0)


def affine_energy_asym(C: SetOrMeasure, D: SetOrMeasure) -> Number:
    """Count (c1..c4, d1..d4) with c1/c3 = c2/c4 and c4 (d1 - d2) = c2 (d3 - d4).

    Bucketed on w = c2/c4; for each w the d-part is the coupled difference
    count d1 - d2 = w (d3 - d4), in which zero differences are allowed.
    """
    wc = weights_of(C)
    _require_nonzero(wc)
    wd = weights_of(D)
    q = quotient_profile(wc)
    diffs = pair_counts(wd, -1)
    total = 0
    for z, m in q.items():
        coupled = sum((c * diffs.get(s / z, 0) for s, c in diffs.items()), 0)
        total += m * m * coupled
    return total


# -- radical comparisons -----------------------------------------------------


def _iroot4(n: int) -> int:
    return isqrt(isqrt(n))


def _exact_root4(x: Fraction) -> Fraction | None:
    p, q = x.numerator, x.denominator
    rp, rq = _iroot4(p), _iroot4(q)
    if rp**4 == p and rq**4 == q:
        return Fraction(rp, rq)
    return None


def _root4_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    # x^(1/4) = (p q^3)^(1/4) / q, bracketed on a grid of width 2^-bits / q
    p, q = x.numerator, x.denominator
    s = _iroot4(p * q**3 << (4 * bits))
    scale = q << bits
    return Fraction(s, scale), Fraction(s + 1, scale)


def root4_sum_leq(lhs: Number, terms: Iterable[Number], max_bits: int = 4096) -> bool:
    """Decide ``lhs ** (1/4) <= sum(t ** (1/4) for t in terms)`` exactly.

    Terms are first grouped into classes of rational multiples of one fourth
    root.  A single class (which covers every exact tie) is compared exactly
    by raising both sides to the fourth power.  Otherwise interval bounds are
    tightened until they separate; ``max_bits`` only guards against runaway
    precision.
    """
    lhs = Fraction(lhs)
    terms = [Fraction(t) for t in terms]
    if any(t < 0 for t in terms) or lhs < 0:
        raise ValueError("fourth roots of negative numbers")
    terms = [t for t in terms if t]
    if lhs == 0:
        return True
    if not terms:
        return False
    # Group terms whose ratio is a rational fourth power: t^(1/4) = c rep^(1/4).
    classes: list[tuple[Fraction, Fraction]] = []  # (rep, summed coefficient)
    for t in terms:
        for i, (rep, c) in enumerate(classes):
            r = _exact_root4(t / rep)
            if r is not None:
                classes[i] = (rep, c + r)
                break
        else:
            classes.append((t, Fraction(1)))
    if len(classes) == 1:
        rep, c = classes[0]
        return lhs <= c**4 * rep
    # Fourth roots from distinct classes are linearly independent over Q, so
    # with positive coefficients no tie is possible and the bounds separate.
    bits = 32
    while bits <= max_bits:
        lo_l, hi_l = _root4_bounds(lhs, bits)
        lo_r = sum((_root4_bounds(t, bits)[0] for t in terms), Fraction(0))
        hi_r = sum((_root4_bounds(t, bits)[1] for t in terms), Fraction(0))
        if hi_l <= lo_r:
            return True
        if lo_l > hi_r:
            return False
        bits *= 2
    raise ArithmeticError("fourth-root comparison undecided; likely an exact tie")


# -- export -----------------------------------------------------------------


def profile_to_csv(P: Profile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "mass_num", "mass_den"])
    for k, v in P.items():
        v = Fraction(v)
        w.writerow([format_scalar(k), v.numerator, v.denominator])
    return buf.getvalue()


def dyadic_to_csv(levels: list[tuple[int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["tau", "count"])
    w.writerows(levels)
    return buf.getvalue()
