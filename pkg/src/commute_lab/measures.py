"""Finitely supported measures on scalars and on 2x2 matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Any, Iterable, Mapping

from .config import CapExceeded, get_cap
from .exact import Mat2, ScalarLike, format_scalar, to_scalar

__all__ = [
    "ScalarMeasure",
    "MatrixMeasure",
    "uniform_on",
    "product_measure",
    "norm",
    "mass_at_zero",
    "measure_to_json",
    "measure_from_json",
]


def _check_atoms(atoms: Mapping[Any, Fraction], probability: bool) -> None:
    total = Fraction(0)
    for k, w in atoms.items():
        if not isinstance(w, Fraction):
            raise TypeError(f"weight of {k} is not a Fraction: {w!r}")
        if w <= 0:
            raise ValueError(f"weight of {k} must be positive, got {w}")
        total += w
    if total > 1:
        raise ValueError(f"total mass {total} exceeds 1")
    if probability and total != 1:
        raise ValueError(f"total mass {total} is not 1 for a probability measure")


@dataclass(frozen=True)
class ScalarMeasure:
    """A measure on Q with positive weights and total mass at most 1."""

    atoms: Mapping[Fraction, Fraction]
    is_probability: bool = False

    def __post_init__(self) -> None:
        atoms = {to_scalar(k): Fraction(w) for k, w in dict(self.atoms).items()}
        _check_atoms(atoms, self.is_probability)
        ordered = dict(sorted(atoms.items()))
        object.__setattr__(self, "atoms", MappingProxyType(ordered))

    @classmethod
    def from_weights(cls, weights: Mapping[ScalarLike, Any]) -> "ScalarMeasure":
        """Build a measure, setting ``is_probability`` when the mass is 1."""
        atoms = {to_scalar(k): Fraction(w) for k, w in weights.items()}
        return cls(atoms, sum(atoms.values(), Fraction(0)) == 1)

    @property
    def support(self) -> list[Fraction]:
        return list(self.atoms)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.atoms.values(), Fraction(0))

    def __len__(self) -> int:
        return len(self.atoms)

    def __call__(self, x: ScalarLike) -> Fraction:
        return self.atoms.get(to_scalar(x), Fraction(0))

    def restrict(self, subset: Iterable[ScalarLike]) -> "ScalarMeasure":
        keep = {to_scalar(a) for a in subset}
        return ScalarMeasure({k: w for k, w in self.atoms.items() if k in keep})


@dataclass(frozen=True)
class MatrixMeasure:
    """A measure on 2x2 rational matrices with total mass at most 1."""

    atoms: Mapping[Mat2, Fraction]
    is_probability: bool = False

    def __post_init__(self) -> None:
        atoms: dict[Mat2, Fraction] = {}
        for k, w in dict(self.atoms).items():
            if not isinstance(k, Mat2):
                k = Mat2.from_json(k)
            atoms[k] = Fraction(w)
        _check_atoms(atoms, self.is_probability)
        object.__setattr__(self, "atoms", MappingProxyType(dict(sorted(atoms.items()))))

    @classmethod
    def uniform(cls, matrices: Iterable[Mat2]) -> "MatrixMeasure":
        mats = set(matrices)
        if not mats:
            raise ValueError("empty support")
        w = Fraction(1, len(mats))
        return cls({m: w for m in mats}, True)

    @property
    def support(self) -> list[Mat2]:
        return list(self.atoms)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.atoms.values(), Fraction(0))

    def __len__(self) -> int:
        return len(self.atoms)

    def __call__(self, X: Mat2) -> Fraction:
        return self.atoms.get(X, Fraction(0))


def uniform_on(A: Iterable[ScalarLike]) -> ScalarMeasure:
    """The probability measure 1_A / |A|."""
    elems = {to_scalar(a) for a in A}
    if not elems:
        raise ValueError("empty support")
    w = Fraction(1, len(elems))
    return ScalarMeasure({a: w for a in elems}, True)


def product_measure(nu: ScalarMeasure) -> MatrixMeasure:
    """Materialize mu_nu(X) = nu(x1) nu(x2) nu(x3) nu(x4).

    Only for small supports; the counting engines in :mod:`commute_lab.commute`
    work with ``nu`` directly and never need this.
    """
    limit = get_cap("product_measure")
    if len(nu) > limit:
        raise CapExceeded("product_measure", limit, len(nu))
    items = list(nu.atoms.items())
    atoms = {
        Mat2(a[0], b[0], c[0], d[0]): a[1] * b[1] * c[1] * d[1]
        for a, b, c, d in product(items, repeat=4)
    }
    return MatrixMeasure(atoms, nu.is_probability)


def norm(nu: ScalarMeasure, p: int | float) -> Fraction:
    """``||nu||_p ** p`` for integer ``p >= 1``; the largest weight for p = inf.

    The p-th power is returned instead of the norm so that every comparison
    stays in Q.
    """
    if p == float("inf"):
        return max(nu.atoms.values(), default=Fraction(0))
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"p must be a positive integer or inf, got {p!r}")
    return sum((w**p for w in nu.atoms.values()), Fraction(0))


def mass_at_zero(nu: ScalarMeasure) -> Fraction:
    return nu.atoms.get(Fraction(0), Fraction(0))


def measure_to_json(m: ScalarMeasure | MatrixMeasure) -> dict[str, Any]:
    if isinstance(m, ScalarMeasure):
        atoms = [{"x": format_scalar(k), "w": format_scalar(w)} for k, w in m.atoms.items()]
    else:
        atoms = [{"x": k.to_json(), "w": format_scalar(w)} for k, w in m.atoms.items()]
    return {"atoms": atoms, "probability": m.is_probability}


def measure_from_json(data: Mapping[str, Any] | str) -> ScalarMeasure | MatrixMeasure:
    """Inverse of :func:`measure_to_json`; the atom type picks the measure kind."""
    if isinstance(data, str):
        data = json.loads(data)
    atoms_in = data.get("atoms")
    if not isinstance(atoms_in, list) or not atoms_in:
        raise ValueError("measure JSON needs a non-empty 'atoms' list")
    prob = bool(data.get("probability", False))
    if isinstance(atoms_in[0]["x"], list):
        atoms: dict = {}
        for a in atoms_in:
            k = Mat2.from_json(a["x"])
            atoms[k] = atoms.get(k, Fraction(0)) + to_scalar(a["w"])
        return MatrixMeasure(atoms, prob)
    sat: dict = {}
    for a in atoms_in:
        k = to_scalar(a["x"])
        sat[k] = sat.get(k, Fraction(0)) + to_scalar(a["w"])
    return ScalarMeasure(sat, prob)
