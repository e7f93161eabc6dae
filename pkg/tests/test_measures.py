import json
from fractions import Fraction

import pytest

from commute_lab.config import CapExceeded
from commute_lab.exact import mat
from commute_lab.measures import (
    MatrixMeasure,
    ScalarMeasure,
    mass_at_zero,
    measure_from_json,
    measure_to_json,
    norm,
    product_measure,
    uniform_on,
)


def test_uniform_on():
    assert dict(uniform_on([1, 2]).atoms) == {1: Fraction(1, 2), 2: Fraction(1, 2)}
    assert dict(uniform_on([0]).atoms) == {0: Fraction(1)}
    nu = uniform_on(range(1, 5))
    assert len(nu) == 4 and nu.is_probability and nu(3) == Fraction(1, 4)
    with pytest.raises(ValueError, match="empty support"):
        uniform_on([])


def test_weight_validation():
    with pytest.raises(ValueError):
        ScalarMeasure({1: Fraction(2, 3), 2: Fraction(2, 3)})
    with pytest.raises(ValueError):
        ScalarMeasure({1: Fraction(0)})
    with pytest.raises(ValueError):
        ScalarMeasure({1: Fraction(1, 2)}, is_probability=True)
    sub = ScalarMeasure({1: Fraction(1, 2)})
    assert sub.total_mass == Fraction(1, 2) and not sub.is_probability
    assert ScalarMeasure.from_weights({1: Fraction(1, 3), 2: Fraction(2, 3)}).is_probability


def test_product_measure():
    mu = product_measure(uniform_on([1]))
    assert dict(mu.atoms) == {mat(1, 1, 1, 1): Fraction(1)}
    mu = product_measure(uniform_on([0, 1]))
    assert len(mu) == 16 and set(mu.atoms.values()) == {Fraction(1, 16)}
    mu = product_measure(uniform_on([1, 2, 3]))
    assert len(mu) == 81 and mu.total_mass == 1
    half = ScalarMeasure({1: Fraction(1, 4), 2: Fraction(1, 4)})
    assert product_measure(half).total_mass == Fraction(1, 16)


def test_product_measure_cap(monkeypatch):
    monkeypatch.setenv("COMMUTE_LAB_CAPS", "product_measure=2")
    with pytest.raises(CapExceeded) as info:
        product_measure(uniform_on([1, 2, 3]))
    assert info.value.cap == "product_measure"


def test_norms_and_zero_mass():
    assert norm(uniform_on([1, 2]), 2) == Fraction(1, 2)
    for N in (1, 5, 9):
        assert norm(uniform_on(range(1, N + 1)), 2) == Fraction(1, N)
    nu = ScalarMeasure({0: Fraction(1, 3), 5: Fraction(2, 3)})
    assert norm(nu, float("inf")) == Fraction(2, 3)
    assert norm(nu, 1) == 1
    with pytest.raises(ValueError):
        norm(nu, 0)
    assert mass_at_zero(uniform_on([1, 2])) == 0
    assert mass_at_zero(uniform_on([0, 1])) == Fraction(1, 2)
    assert mass_at_zero(ScalarMeasure({0: Fraction(1, 3), 2: Fraction(2, 3)})) == Fraction(1, 3)


def test_json_round_trip():
    nu = ScalarMeasure({Fraction(-1, 2): Fraction(1, 3), 4: Fraction(1, 2)})
    data = measure_to_json(nu)
    assert data == {"atoms": [{"x": "-1/2", "w": "1/3"}, {"x": "4", "w": "1/2"}], "probability": False}
    assert measure_from_json(json.dumps(data)) == nu
    mu = MatrixMeasure.uniform([mat(1, 0, 0, 1), mat(0, 1, 0, 0)])
    assert measure_from_json(measure_to_json(mu)) == mu
    with pytest.raises(ValueError):
        measure_from_json({"atoms": []})
