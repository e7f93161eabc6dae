from fractions import Fraction as F

import pytest

from commute_lab.commute import commute_count_measure, delta
from commute_lab.exact import identity, mat, mat_scale
from commute_lab.generators import (
    GapSpec,
    commuting_plane_example,
    gap,
    gap_report,
    geometric,
    interval,
    random_matrix_measure,
    random_measure,
    random_partition,
    random_set,
    random_subset,
    sharp_example,
)


def test_interval():
    assert interval(1) == [1]
    assert interval(3) == [1, 2, 3]
    assert len(interval(17)) == 17
    with pytest.raises(ValueError):
        interval(0)


def test_gap_examples():
    assert gap(GapSpec(0, [1], [5])) == list(range(5))
    assert gap(GapSpec(0, [1, 10], [3, 3])) == [0, 1, 2, 10, 11, 12, 20, 21, 22]
    spec = GapSpec(0, [1, 2], [3, 2])
    assert gap(spec) == [0, 1, 2, 3, 4]
    assert gap_report(spec) == {"nominal_size": 6, "size": 5, "proper": False}
    with pytest.raises(ValueError):
        GapSpec(0, [1, 2], [3])


def test_geometric():
    assert geometric(3, 2) == [2, 4, 8]
    assert geometric(1, F(1, 3)) == [F(1, 3)]
    assert geometric(2, -2) == [-2, 4]
    for r in (0, 1, -1):
        with pytest.raises(ValueError, match="invalid ratio"):
            geometric(3, r)


def test_sharp_example():
    mu = sharp_example(2)
    assert len(mu) == 8 and set(mu.atoms.values()) == {F(1, 8)}
    assert len(sharp_example(3)) == 27
    with pytest.raises(ValueError):
        sharp_example(1)


def test_commuting_plane_example():
    B = mat(1, 1, 0, 1)
    mu = commuting_plane_example(2, identity(), B)
    assert len(mu) == 4 and commute_count_measure(mu) == 1 and delta(mu) == 1
    assert commute_count_measure(commuting_plane_example(3, identity(), B)) == 1
    with pytest.raises(ValueError, match="dependent"):
        commuting_plane_example(2, identity(), mat_scale(2, identity()))
    with pytest.raises(ValueError, match="do not commute"):
        commuting_plane_example(2, mat(0, 1, 0, 0), mat(0, 0, 1, 0))
    with pytest.raises(ValueError, match="A is zero"):
        commuting_plane_example(2, mat(0, 0, 0, 0), B)


def test_random_set_seeds():
    assert random_set(5, -9, 9, 42) == random_set(5, -9, 9, 42)
    assert random_set(1, 3, 3, 0) == [3]
    distinct = {tuple(random_set(4, -50, 50, s)) for s in range(20)}
    assert len(distinct) >= 19
    with pytest.raises(ValueError, match="too small"):
        random_set(5, 0, 3, 1)
    # regression pin: seeded streams must not drift across versions
    assert random_set(4, -9, 9, 2024) == [-4, 0, 6, 9]


def test_random_measure():
    nu = random_measure(6, -5, 5, 3)
    assert nu.is_probability and len(nu) == 6
    half = random_measure(3, 0, 10, 3, mass=F(1, 2))
    assert half.total_mass == F(1, 2) and not half.is_probability
    assert random_measure(6, -5, 5, 3) == nu


def test_random_matrix_measure_and_helpers():
    mu = random_matrix_measure(10, 5)
    assert mu.is_probability and 1 <= len(mu) <= 10
    parts = random_partition(list(range(7)), 3, 1)
    assert sorted(x for p in parts for x in p) == list(range(7)) and all(parts)
    assert random_subset([1, 2, 3], 9)
