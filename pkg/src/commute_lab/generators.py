"""Example families and seeded random instances.

Random instances come from :class:`random.Random` (MT19937) seeded with the
given integer.  Draws are made only through ``getrandbits``, whose output
stream for a fixed seed is stable across platforms and CPython versions:
``_below(rng, n)`` draws ``n.bit_length()`` bits and rejects values >= n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

from .exact import Mat2, ScalarLike, commutes, mat_add, mat_scale, span_dim, to_scalar, zero_matrix
from .measures import MatrixMeasure, ScalarMeasure

WEIGHT_MAX = 1 << 16


def interval(N: int) -> list[Fraction]:
    """[N] = {1, 2, ..., N}."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return [Fraction(i) for i in range(1, N + 1)]


@dataclass(frozen=True)
class GapSpec:
    """{base + l1*v1 + ... + ld*vd : 0 <= li < Li}."""

    base: Fraction
    steps: tuple[Fraction, ...]
    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", to_scalar(self.base))
        object.__setattr__(self, "steps", tuple(to_scalar(s) for s in self.steps))
        object.__setattr__(self, "lengths", tuple(int(n) for n in self.lengths))
        if not self.steps or len(self.steps) != len(self.lengths):
            raise ValueError("steps and lengths must be non-empty and of equal length")
        if any(n < 1 for n in self.lengths):
            raise ValueError("lengths must be positive")

    @property
    def nominal_size(self) -> int:
        return prod(self.lengths)


def gap(spec: GapSpec) -> list[Fraction]:
    """Elements of the progression; coinciding sums collapse to one element."""
    values = {
        spec.base + sum((l * v for l, v in zip(ls, spec.steps)), Fraction(0))
        for ls in product(*(range(n) for n in spec.lengths))
    }
    return sorted(values)


def gap_report(spec: GapSpec) -> dict:
    elems = gap(spec)
    return {"nominal_size": spec.nominal_size, "size": len(elems), "proper": len(elems) == spec.nominal_size}


def geometric(N: int, r: ScalarLike = 2) -> list[Fraction]:
    """{r, r^2, ..., r^N}."""
    r = to_scalar(r)
    if r in (0, 1, -1):
        raise ValueError(f"invalid ratio {r}: must avoid 0, 1 and -1")
    if N < 1:
        raise ValueError("N must be at least 1")
    return sorted(r**k for k in range(1, N + 1))


def sharp_example(N: int) -> MatrixMeasure:
    """Uniform measure on [[n, 2^j], [2^k, n]] for n, j, k in [N]."""
    if N < 2:
        raise ValueError("sharp_example needs N >= 2")
    mats = [Mat2(Fraction(n), Fraction(2**j), Fraction(2**k), Fraction(n))
            for n in range(1, N + 1) for j in range(1, N + 1) for k in range(1, N + 1)]
    return MatrixMeasure.uniform(mats)


def commuting_plane_example(N: int, A: Mat2, B: Mat2) -> MatrixMeasure:
    """Uniform measure on {iA + jB : i, j in [N]} for commuting independent A, B."""
    problems = []
    if A == zero_matrix():
        problems.append("A is zero")
    if B == zero_matrix():
        problems.append("B is zero")
    if span_dim([A, B]) < 2:
        problems.append("A and B are linearly dependent")
    if not commutes(A, B):
        problems.append("A and B do not commute")
    if problems:
        raise ValueError("; ".join(problems))
    mats = [mat_add(mat_scale(i, A), mat_scale(j, B)) for i in range(1, N + 1) for j in range(1, N + 1)]
    return MatrixMeasure.uniform(mats)


# -- seeded randomness ------------------------------------------------------


def _below(rng: random.Random, n: int) -> int:
    k = n.bit_length()
    while True:
        r = rng.getrandbits(k)
        if r < n:
            return r


def _distinct_ints(rng: random.Random, n: int, lo: int, hi: int) -> list[int]:
    span = hi - lo + 1
    if n > span:
        raise ValueError(f"range [{lo}, {hi}] too small for {n} distinct values")
    chosen: set[int] = set()
    order: list[int] = []
    while len(order) < n:
        v = lo + _below(rng, span)
        if v not in chosen:
            chosen.add(v)
            order.append(v)
    return order


def random_set(n: int, lo: int, hi: int, seed: int) -> list[Fraction]:
    if n < 1 or lo > hi:
        raise ValueError("need n >= 1 and lo <= hi")
    rng = random.Random(seed)
    return sorted(Fraction(v) for v in _distinct_ints(rng, n, lo, hi))


def _weights(rng: random.Random, n: int) -> list[int]:
    return [1 + _below(rng, WEIGHT_MAX) for _ in range(n)]


def random_measure(n: int, lo: int, hi: int, seed: int, mass: ScalarLike = 1) -> ScalarMeasure:
    """n distinct integer atoms in [lo, hi] with weights in [1, 2^16], scaled to ``mass``."""
    mass = to_scalar(mass)
    if not 0 < mass <= 1:
        raise ValueError("mass must lie in (0, 1]")
    if n < 1 or lo > hi:
        raise ValueError("need n >= 1 and lo <= hi")
    rng = random.Random(seed)
    points = _distinct_ints(rng, n, lo, hi)
    ws = _weights(rng, n)
    total = sum(ws)
    return ScalarMeasure({Fraction(p): mass * Fraction(w, total) for p, w in zip(points, ws)}, mass == 1)


def random_matrix_measure(n_atoms: int, seed: int, lo: int = -2, hi: int = 2) -> MatrixMeasure:
    """A probability measure on at most ``n_atoms`` matrices with small entries.

    About a third of the atoms are drawn from span{I, X} for a shared X and a
    few are scalar, so commuting pairs and low-dimensional clusters are
    common rather than accidental.
    """
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    rng = random.Random(seed)
    span = hi - lo + 1

    def entry() -> Fraction:
        return Fraction(lo + _below(rng, span))

    base = Mat2(entry(), entry(), entry(), entry())
    mats = []
    for _ in range(n_atoms):
        kind = _below(rng, 6)
        if kind < 2:
            a, b = entry(), entry()
            mats.append(Mat2(a + b * base.a11, b * base.a12, b * base.a21, a + b * base.a22))
        elif kind == 2:
            a = entry()
            mats.append(Mat2(a, Fraction(0), Fraction(0), a))
        else:
            mats.append(Mat2(entry(), entry(), entry(), entry()))
    ws = _weights(rng, n_atoms)
    atoms: dict[Mat2, int] = {}
    for m, w in zip(mats, ws):
        atoms[m] = atoms.get(m, 0) + w
    total = sum(atoms.values())
    return MatrixMeasure({m: Fraction(w, total) for m, w in atoms.items()}, True)


def random_partition(items: Sequence, parts: int, seed: int) -> list[list]:
    """Split ``items`` into ``parts`` non-empty blocks (needs len(items) >= parts)."""
    if parts < 1 or len(items) < parts:
        raise ValueError("cannot split into that many non-empty parts")
    rng = random.Random(seed)
    order = list(items)
    for i in range(len(order) - 1, 0, -1):
        j = _below(rng, i + 1)
        order[i], order[j] = order[j], order[i]
    blocks = [[x] for x in order[:parts]]
    for x in order[parts:]:
        blocks[_below(rng, parts)].append(x)
    return [sorted(b) for b in blocks]


def random_subset(items: Sequence, seed: int) -> list:
    """A non-empty subset, each element kept with probability 1/2."""
    rng = random.Random(seed)
    out = [x for x in items if rng.getrandbits(1)]
    return sorted(out) if out else [items[_below(rng, len(items))]]
