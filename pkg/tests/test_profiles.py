from fractions import Fraction as F

import pytest

from commute_lab import oracle
from commute_lab.generators import geometric, interval
from commute_lab.measures import ScalarMeasure, uniform_on
from commute_lab.profiles import (
    Profile,
    affine_energy_asym,
    asym_commute_count,
    coupled_difference,
    diff_ratio_profile,
    difference_profile,
    dyadic_levels,
    dyadic_to_csv,
    energy_additive,
    energy_additive_set,
    energy_mult,
    energy_mult_set,
    line_profile,
    mixed_energy,
    moment,
    profile_to_csv,
    quotient_profile,
    restricted_energy,
    root4_sum_leq,
    sum_profile,
)


def test_quotient_profile_examples():
    q = quotient_profile(uniform_on([1, 2, 4]))
    assert q.as_dict() == {1: F(3, 9), 2: F(2, 9), F(1, 2): F(2, 9), 4: F(1, 9), F(1, 4): F(1, 9)}
    assert quotient_profile(uniform_on([0, 1])).as_dict() == {1: F(1, 4)}
    assert quotient_profile(uniform_on([7])).as_dict() == {1: 1}


def test_sum_and_difference_profiles():
    assert sum_profile(uniform_on([1, 2, 3])).as_dict() == {
        2: F(1, 9), 3: F(2, 9), 4: F(3, 9), 5: F(2, 9), 6: F(1, 9)}
    N = 6
    d = difference_profile(uniform_on(interval(N)))
    assert d.as_dict() == {k: F(N - abs(k), N * N) for k in range(-N + 1, N)}
    assert sum_profile(uniform_on([5])).as_dict() == {10: 1}


def test_diff_ratio_profile():
    assert diff_ratio_profile([0, 1]).as_dict() == {1: 2, -1: 2}
    assert diff_ratio_profile([0, 1, 3]).total() == 36
    assert diff_ratio_profile([F(-5, 2), 9]).as_dict() == {1: 2, -1: 2}
    assert len(diff_ratio_profile([4])) == 0


def test_energies_frozen():
    assert energy_additive_set([1, 2, 3]) == 19
    assert energy_additive_set(interval(4)) == 44
    assert energy_additive_set([9]) == 1
    assert energy_mult_set([1, 2, 4]) == 19
    assert energy_mult_set(geometric(3, 2)) == 19
    assert energy_mult_set([0]) == 0
    assert energy_additive(uniform_on([1, 2, 3])) == F(19, 81)
    assert energy_mult(uniform_on([1, 2, 4])) == F(19, 81)


def test_moments():
    q = quotient_profile(uniform_on([1, 2, 4]))
    assert moment(q, 1) == q.total() == 1
    assert moment(q, 2) == F(19, 81)
    assert moment(Profile({}, "sum"), 3) == 0
    with pytest.raises(ValueError):
        moment(q, 0)


def test_mass_conservation():
    nu = ScalarMeasure({0: F(1, 5), 2: F(1, 5), F(-3, 2): F(1, 2)})
    assert quotient_profile(nu).total() == F(7, 10) ** 2
    assert sum_profile(nu).total() == F(9, 10) ** 2
    assert moment(sum_profile(nu), 2) == energy_additive(nu) == oracle.brute_E(nu)


def test_dyadic_levels():
    assert dyadic_levels(Profile({1: 2, 2: 2}, "quotient")) == [(1, 0), (2, 2)]
    levels = dyadic_levels(diff_ratio_profile([0, 1]))
    assert dict(levels)[2] == 2
    q = quotient_profile(interval(4))
    covered = sum(t * c for t, c in dyadic_levels(q))
    assert q.total() / 2 <= covered <= q.total()
    with pytest.raises(ValueError, match="dyadic levels require set profiles"):
        dyadic_levels(quotient_profile(uniform_on([1, 2])))
    assert dyadic_to_csv([(1, 3)]) == "tau,count\n1,3\n"


def test_asym_commute_examples():
    assert asym_commute_count([1], [0, 1]) == 2
    assert asym_commute_count([1, 2], [5]) == 0
    assert asym_commute_count([1, 2], [0, 1]) == 8
    with pytest.raises(ValueError):
        asym_commute_count([0, 1], [0, 1])


def test_affine_energy_asym_examples():
    assert affine_energy_asym([1], [3]) == 1
    # brute force gives E({0,1}) = 6 here
    assert affine_energy_asym([1], [0, 1]) == 6 == energy_additive_set([0, 1])
    assert affine_energy_asym([1, 2], [0]) == oracle.brute_asym([1, 2], [0], "affine") == energy_mult_set([1, 2])
    with pytest.raises(ValueError):
        affine_energy_asym([0], [1])


@pytest.mark.parametrize("C,D", [([1, 2], [0, 1, 3]), ([-1, 3], [2, 5]), ([1, 2, 4], [0, 1])])
def test_asym_against_oracle(C, D):
    a = asym_commute_count(C, D)
    b = affine_energy_asym(C, D)
    assert a == oracle.brute_asym(C, D, "commute")
    assert b == oracle.brute_asym(C, D, "affine")
    assert a <= b


def test_line_profile_and_coupled_difference():
    r = line_profile([0, 1], 2)
    assert r.as_dict() == {0: 1, 1: 1, 2: 1, 3: 1}
    assert line_profile([1, 2], 0).total() == 4
    assert coupled_difference([0, 1], 1) == 6
    assert coupled_difference([0, 1], 0) == 2 * 4


def test_mixed_energy():
    nu = uniform_on([0, 1, 2, 5])
    full = nu.support
    assert mixed_energy(nu, [full] * 4) == energy_additive(nu)
    assert restricted_energy(nu, [0, 1]) == F(6, 256)
    assert mixed_energy(nu, [[0], [1], [7], [1]]) == 0
    with pytest.raises(ValueError):
        mixed_energy(nu, [full])


def test_root4_comparisons():
    assert root4_sum_leq(16, [1, 1])
    assert not root4_sum_leq(17, [1, 1])
    assert root4_sum_leq(48, [3, 3])
    assert not root4_sum_leq(F(481, 10), [3, 3])
    assert root4_sum_leq(5, [5])
    assert root4_sum_leq(10, [2, 3])
    assert not root4_sum_leq(100, [2, 3])
    assert root4_sum_leq(0, [])
    assert not root4_sum_leq(1, [0])


def test_profile_csv():
    text = profile_to_csv(quotient_profile(uniform_on([1, 2])))
    assert text.splitlines()[0] == "key,mass_num,mass_den"
    assert "1/2,1,4" in text.splitlines()
