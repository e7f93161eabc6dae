"""Exact rational scalars and 2x2 matrix algebra.

Scalars are :class:`fractions.Fraction` values, which are always stored in
reduced form with a positive denominator, so equality of two scalars is
equality of their (numerator, denominator) pairs and they are safe to use as
dictionary keys.  Floats are rejected everywhere: every quantity in this
package is counted exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]

__all__ = [
    "Scalar",
    "Mat2",
    "to_scalar",
    "format_scalar",
    "parse_scalar",
    "mat",
    "identity",
    "zero_matrix",
    "mat_mul",
    "mat_add",
    "mat_scale",
    "commutes",
    "is_scalar_matrix",
    "span_dim",
    "in_span2",
    "integer_vector",
    "primitive_direction",
]


def to_scalar(x: ScalarLike) -> Fraction:
    """Coerce ``x`` to a canonical rational.

    Accepts ints, Fractions, other exact ``numbers.Rational`` values and
    strings such as ``"-3/4"`` or ``"7"``.  Floats and booleans raise
    ``TypeError`` since they would smuggle rounding into bucket keys.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_scalar(text: str) -> Fraction:
    """Parse ``"num"`` or ``"num/den"``; decimals and exponents are refused."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(n, d)


def format_scalar(x: Fraction) -> str:
    """Serialize as ``"num/den"``, dropping the denominator when it is 1."""
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Mat2(NamedTuple):
    """A 2x2 matrix ``[[a11, a12], [a21, a22]]`` of exact rationals.

    In the commuting equations the entries are called x1..x4 with
    x1=a11, x2=a12, x3=a21, x4=a22.
    """

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def to_json(self) -> list[str]:
        return [format_scalar(v) for v in self]

    @classmethod
    def from_json(cls, data: Sequence[ScalarLike]) -> "Mat2":
        if len(data) != 4:
            raise ValueError(f"a matrix needs 4 entries, got {len(data)}")
        return mat(*data)

    def __str__(self) -> str:
        a, b, c, d = (format_scalar(v) for v in self)
        return f"[[{a}, {b}], [{c}, {d}]]"


def mat(a11: ScalarLike, a12: ScalarLike, a21: ScalarLike, a22: ScalarLike) -> Mat2:
    return Mat2(to_scalar(a11), to_scalar(a12), to_scalar(a21), to_scalar(a22))


def identity() -> Mat2:
    return mat(1, 0, 0, 1)


def zero_matrix() -> Mat2:
    return mat(0, 0, 0, 0)


def mat_mul(X: Mat2, Y: Mat2) -> Mat2:
    x1, x2, x3, x4 = X
    y1, y2, y3, y4 = Y
    return Mat2(
        x1 * y1 + x2 * y3,
        x1 * y2 + x2 * y4,
        x3 * y1 + x4 * y3,
        x3 * y2 + x4 * y4,
    )


def mat_add(X: Mat2, Y: Mat2) -> Mat2:
    return Mat2(*(a + b for a, b in zip(X, Y)))


def mat_scale(c: ScalarLike, X: Mat2) -> Mat2:
    c = to_scalar(c)
    return Mat2(*(c * a for a in X))


def commutes(X: Mat2, Y: Mat2) -> bool:
    """XY = YX, decided through the three scalar equations

    x2*y3 = x3*y2,  x2*(y4 - y1) = y2*(x4 - x1),  x3*(y4 - y1) = y3*(x4 - x1).
    """
    x1, x2, x3, x4 = X
    y1, y2, y3, y4 = Y
    u = x4 - x1
    v = y4 - y1
    return x2 * y3 == x3 * y2 and x2 * v == y2 * u and x3 * v == y3 * u


def is_scalar_matrix(X: Mat2) -> bool:
    return X.a12 == 0 and X.a21 == 0 and X.a11 == X.a22


def integer_vector(X: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators: the result spans the same line as ``X``."""
    m = lcm(*(v.denominator for v in X)) if X else 1
    return tuple(int(v * m) for v in X)


def primitive_direction(v: Sequence[int]) -> tuple[int, ...] | None:
    """Canonical representative of the line through an integer vector.

    Divides by the gcd of the entries and makes the first nonzero entry
    positive.  Returns ``None`` for the zero vector.
    """
    g = 0
    for c in v:
        g = gcd(g, c)
    if g == 0:
        return None
    lead = next(c for c in v if c)
    if lead < 0:
        g = -g
    return tuple(c // g for c in v)


def _rank_int(rows: list[list[int]]) -> int:
    # Fraction-free elimination; rows are reduced by their content after each
    # step so entries stay as small as the input allows.
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            c = r[col]
            if c:
                new = [p[col] * a - c * b for a, b in zip(r, p)]
                g = 0
                for a in new:
                    g = gcd(g, a)
                rows[i] = [a // g for a in new] if g > 1 else new
        rank += 1
        if rank == len(rows):
            break
    return rank


def span_dim(S: Iterable[Mat2]) -> int:
    """Dimension over Q of the span of the matrices in ``S`` (0..4)."""
    rows = [list(integer_vector(X)) for X in S]
    if not rows:
        return 0
    return _rank_int(rows)


def in_span2(X: Mat2, Y: Mat2, Z: Mat2) -> bool:
    """Whether ``Z`` is a rational linear combination of ``X`` and ``Y``."""
    return span_dim([X, Y, Z]) == span_dim([X, Y])
