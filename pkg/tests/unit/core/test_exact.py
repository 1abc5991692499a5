import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.errors import DrawingFormatError
from core.exact import SQRT3, QSqrt3, format_scalar, parse_rational, parse_scalar, sign, simplify

small = st.fractions(min_value=-50, max_value=50, max_denominator=30)


class TestQSqrt3:
    def test_sqrt3_squares_to_three(self):
        assert SQRT3 * SQRT3 == 3
        assert simplify(SQRT3 * SQRT3) == Fraction(3)
        assert isinstance(simplify(SQRT3 * SQRT3), Fraction)

    def test_division_by_conjugate(self):
        x = QSqrt3(1, 1)
        assert x / x == 1
        assert (1 / x) * x == 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            QSqrt3(1, 1) / QSqrt3(0, 0)

    def test_sign_with_opposite_parts(self):
        # 2 - √3 > 0, 1 - √3 < 0, 3 - √3·√3 = 0
        assert QSqrt3(2, -1).sign() == 1
        assert QSqrt3(1, -1).sign() == -1
        assert QSqrt3(-2, 1).sign() == -1
        assert QSqrt3(-1, 1).sign() == 1

    def test_hash_matches_fraction_when_rational(self):
        assert hash(QSqrt3(Fraction(3, 2), 0)) == hash(Fraction(3, 2))
        assert QSqrt3(Fraction(3, 2), 0) == Fraction(3, 2)
        assert len({QSqrt3(2, 0), Fraction(2)}) == 1

    def test_str_and_float(self):
        assert str(QSqrt3(1, 2)) == "1+2*sqrt3"
        assert float(QSqrt3(0, 1)) == pytest.approx(math.sqrt(3))

    @given(small, small)
    def test_sign_agrees_with_float(self, a, b):
        x = QSqrt3(a, b)
        value = float(a) + float(b) * math.sqrt(3)
        if abs(value) > 1e-9:
            assert x.sign() == (1 if value > 0 else -1)
        if a == 0 and b == 0:
            assert x.sign() == 0

    @given(small, small, small, small)
    def test_field_operations_exact(self, a, b, c, d):
        x, y = QSqrt3(a, b), QSqrt3(c, d)
        assert (x + y) - y == x
        assert x * y == y * x
        if y:
            assert (x / y) * y == x

    @given(small, small, small, small)
    def test_ordering_consistent(self, a, b, c, d):
        x, y = QSqrt3(a, b), QSqrt3(c, d)
        assert (x < y) == ((x - y).sign() < 0)
        assert (x == y) == (not (x < y) and not (y < x))


def test_sign_helper():
    assert sign(Fraction(-1, 3)) == -1
    assert sign(Fraction(0)) == 0
    assert sign(QSqrt3(0, 1)) == 1


class TestParsing:
    @pytest.mark.parametrize("raw,expected", [
        (3, Fraction(3)),
        ("3/4", Fraction(3, 4)),
        ("0.1", Fraction(1, 10)),
        (0.1, Fraction(1, 10)),
        (Fraction(2, 3), Fraction(2, 3)),
    ])
    def test_parse_rational(self, raw, expected):
        assert parse_rational(raw) == expected

    @pytest.mark.parametrize("raw", [True, "abc", "1/0", None, {"x": 1}])
    def test_parse_rational_rejects(self, raw):
        with pytest.raises(DrawingFormatError):
            parse_rational(raw)

    def test_parse_scalar_sqrt3_pair(self):
        value = parse_scalar(["1/2", "-3/2"])
        assert value == QSqrt3(Fraction(1, 2), Fraction(-3, 2))
        assert parse_scalar(["2", 0]) == Fraction(2)
        assert isinstance(parse_scalar(["2", 0]), Fraction)

    def test_parse_scalar_bad_pair(self):
        with pytest.raises(DrawingFormatError):
            parse_scalar([1, 2, 3])

    def test_format_scalar(self):
        assert format_scalar(Fraction(4)) == 4
        assert format_scalar(Fraction(-1, 3)) == "-1/3"
        assert format_scalar(QSqrt3(0, Fraction(1, 2))) == [0, "1/2"]

    @given(small, small)
    def test_format_inverts_parse(self, a, b):
        x = simplify(QSqrt3(a, b))
        assert parse_scalar(format_scalar(x)) == x
