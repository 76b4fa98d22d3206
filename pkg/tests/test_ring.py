import pytest

from burchkit import FieldSpec, MonomialQuotientRing, normalize_ideal
from burchkit.errors import InputError


@pytest.fixture
def R83(field):
    return MonomialQuotientRing("xyzw", [(3, 0, 0, 0), (2, 1, 0, 0), (1, 2, 0, 0), (0, 3, 0, 0), (1, 0, 0, 1)],
                                field)


def test_hilbert_function_k_x_y_mod_cube():
    R = MonomialQuotientRing("xy", [(3, 0), (2, 1), (1, 2), (0, 3)])
    assert [R.hilbert_value(d) for d in range(5)] == [1, 2, 3, 0, 0]
    assert R.artinian and R.socle_bound == 3


def test_not_artinian(R83):
    assert not R83.artinian
    assert R83.socle_bound is None
    # x*w = 0 and x^3 = 0 but z, w free
    assert R83.hilbert_value(1) == 4


def test_arithmetic_reduces_mod_ideal(R83):
    x, y, w = R83.var("x"), R83.var("y"), R83.var("w")
    assert (x * w).is_zero()
    assert (x * x * y).is_zero()
    assert str(x * y) == "x*y"
    e = R83.parse("x^2 + 3*x*y - y^2")
    assert e.is_homogeneous() and e.degree == 2
    assert (e - e).is_zero()
    assert (2 * e) == e + e


def test_normalize_ideal_drops_multiples():
    assert sorted(normalize_ideal([(2, 0), (3, 1), (0, 1), (1, 1)])) == [(0, 1), (2, 0)]


def test_parse_error_has_column(R83):
    with pytest.raises(InputError) as exc:
        R83.parse("x^^2")
    assert "column" in str(exc.value)


def test_unknown_variable(R83):
    with pytest.raises(InputError):
        R83.parse("x*q")


def test_rational_coefficients_over_q():
    R = MonomialQuotientRing("uv", [(1, 1)], FieldSpec.rational())
    e = R.parse("1/2*u + v")
    assert str(e.terms[0][1]) in ("1/2", "1")


def test_rational_coefficients_mod_p():
    R = MonomialQuotientRing("uv", [(1, 1)], FieldSpec.prime(7))
    e = R.parse("1/2*u")
    assert (2 * e) == R.var("u")


def test_unit_ideal_rejected():
    with pytest.raises(InputError):
        MonomialQuotientRing("x", [(0,)])


def test_with_field_keeps_ideal(R83):
    S = R83.with_field(FieldSpec.rational())
    assert S.ideal_gens == R83.ideal_gens and S.field.label == "Q"
