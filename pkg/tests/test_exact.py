from fractions import Fraction

import pytest

from commute_lab.exact import (
    Mat2,
    commutes,
    format_scalar,
    identity,
    in_span2,
    integer_vector,
    is_scalar_matrix,
    mat,
    mat_add,
    mat_mul,
    mat_scale,
    parse_scalar,
    primitive_direction,
    span_dim,
    to_scalar,
    zero_matrix,
)

J = mat(1, 2, 3, 4)


def test_to_scalar_rejects_inexact():
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)
    assert to_scalar("6/-4") == Fraction(-3, 2)
    assert to_scalar(7) == Fraction(7)


def test_parse_and_format_round_trip():
    for text in ["0", "-3", "5/7", "-12/5"]:
        assert format_scalar(parse_scalar(text)) == text
    assert format_scalar(parse_scalar("4/2")) == "2"
    for bad in ["1.5", "1e3", "3/0", "", "a"]:
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_mat_mul_examples():
    Y = mat(3, -1, 2, 5)
    assert mat_mul(identity(), Y) == Y
    assert mat_mul(mat(0, 1, 0, 0), mat(0, 0, 1, 0)) == mat(1, 0, 0, 0)
    assert mat_mul(J, J) == mat(7, 10, 15, 22)


def test_commutes_examples():
    assert commutes(J, J)
    assert commutes(J, mat(6, 2, 3, 9))
    assert not commutes(mat(0, 1, 0, 0), mat(0, 0, 1, 0))


def test_span_dim_examples():
    assert span_dim([]) == 0
    assert span_dim([zero_matrix()]) == 0
    assert span_dim([identity(), J]) == 2
    assert span_dim([identity(), mat_scale(2, identity()), mat_scale(3, identity())]) == 1
    basis = [mat(1, 0, 0, 0), mat(0, 1, 0, 0), mat(0, 0, 1, 0), mat(0, 0, 0, 1)]
    assert span_dim(basis + [J]) == 4


def test_in_span2_examples():
    assert in_span2(identity(), J, mat(1, -4, -6, -5))
    assert not in_span2(identity(), identity(), mat(0, 1, 0, 0))
    assert in_span2(J, mat(0, 1, 0, 0), zero_matrix())


def test_directions_and_vectors():
    assert integer_vector((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)
    assert primitive_direction((0, -4, 6)) == (0, 2, -3)
    assert primitive_direction((0, 0)) is None
    assert is_scalar_matrix(mat_scale(5, identity()))
    assert not is_scalar_matrix(J)


def test_mat2_json():
    X = mat("1/2", 0, -3, 4)
    assert Mat2.from_json(X.to_json()) == X
    assert str(X) == "[[1/2, 0], [-3, 4]]"
    with pytest.raises(ValueError):
        Mat2.from_json(["1", "2"])
    assert mat_add(X, zero_matrix()) == X
