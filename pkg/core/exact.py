#!/usr/bin/env python3
"""
TARKit 精确数值模块
有理数 (fractions.Fraction) 与二次域 Q(√3) 上的精确算术。

所有阈值判定 (60°/90°/120°) 都在这里的标量上完成，浮点值只用于展示。
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Union

from core.errors import DrawingFormatError

_SQRT3_FLOAT = math.sqrt(3.0)


class QSqrt3:
    """a + b·√3，a 与 b 为有理数"""

    __slots__ = ("a", "b")

    def __init__(self, a: Any = 0, b: Any = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other: Any) -> "QSqrt3":
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, Rational):
            return QSqrt3(other, 0)
        return NotImplemented

    # 算术
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        norm = o.a * o.a - 3 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        # 乘以共轭
        return QSqrt3((self.a * o.a - 3 * self.b * o.b) / norm, (self.b * o.a - self.a * o.b) / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def sign(self) -> int:
        """精确符号，不经过浮点"""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # a 与 b 异号: 比较 a² 与 3b²
        lhs = self.a * self.a
        rhs = 3 * self.b * self.b
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    # 比较
    def _cmp(self, other) -> Any:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT3_FLOAT

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt3"


Scalar = Union[Fraction, QSqrt3]

SQRT3 = QSqrt3(0, 1)


def sign(x: Scalar) -> int:
    if isinstance(x, QSqrt3):
        return x.sign()
    return (x > 0) - (x < 0)


def simplify(x: Scalar) -> Scalar:
    """b = 0 时退化为 Fraction"""
    if isinstance(x, QSqrt3) and x.b == 0:
        return x.a
    return x


def parse_rational(value: Any) -> Fraction:
    """解析单个有理数: 整数、"p/q" 字符串、十进制字符串或 Fraction"""
    if isinstance(value, bool):
        raise DrawingFormatError(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # 按书写形式精确转换
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise DrawingFormatError(f"invalid rational {value!r}: {e}")
    raise DrawingFormatError(f"unsupported coordinate value {value!r}")


def parse_scalar(value: Any) -> Scalar:
    if isinstance(value, QSqrt3):
        return simplify(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise DrawingFormatError(f"Q(sqrt3) coordinate must be [a, b], got {value!r}")
        return simplify(QSqrt3(parse_rational(value[0]), parse_rational(value[1])))
    return parse_rational(value)


def format_rational(x: Fraction) -> Union[int, str]:
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x: Scalar) -> Any:
    """JSON 可序列化形式；与 parse_scalar 精确互逆"""
    x = simplify(x)
    if isinstance(x, QSqrt3):
        return [format_rational(x.a), format_rational(x.b)]
    return format_rational(x)
