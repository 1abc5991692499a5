#!/usr/bin/env python3
"""
TARKit 几何原语
点、方向、角度阈值判定与线段求交，全部基于精确标量 (Fraction / QSqrt3)。

角度指两条射线之间的无向角，取值 [0°, 180°]。
阈值判定只使用 d = u·v 与 c = |u×v| 的平方形式，不含任何容差。
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from core.errors import GeometryDomainError
from core.exact import Scalar, parse_scalar, sign

THRESHOLDS = (60, 90, 120)


class AngleClass(Enum):
    """角度相对阈值的三分类"""
    BELOW = "BELOW"
    EQUAL = "EQUAL"
    ABOVE = "ABOVE"


@dataclass(frozen=True)
class Point:
    x: Scalar
    y: Scalar

    @classmethod
    def of(cls, x: Any, y: Any) -> "Point":
        return cls(parse_scalar(x), parse_scalar(y))

    def __sub__(self, other: "Point") -> "Direction":
        return Direction(self.x - other.x, self.y - other.y)

    def translate(self, d: "Direction", t: Scalar = Fraction(1)) -> "Point":
        return Point(self.x + t * d.dx, self.y + t * d.dy)

    def key(self):
        """字典序比较用的键"""
        return (self.x, self.y)

    def as_floats(self):
        return (float(self.x), float(self.y))


@dataclass(frozen=True)
class Direction:
    dx: Scalar
    dy: Scalar

    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0

    def require_nonzero(self) -> "Direction":
        if self.is_zero():
            raise GeometryDomainError("zero direction")
        return self

    def __neg__(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def scaled(self, t: Scalar) -> "Direction":
        return Direction(self.dx * t, self.dy * t)


def dot(u: Direction, v: Direction) -> Scalar:
    return u.dx * v.dx + u.dy * v.dy


def cross(u: Direction, v: Direction) -> Scalar:
    return u.dx * v.dy - u.dy * v.dx


def orientation(a: Point, b: Point, c: Point) -> int:
    """+1 逆时针, -1 顺时针, 0 共线"""
    return sign(cross(b - a, c - a))


@dataclass(frozen=True)
class ExactAngle:
    """
    无向角的精确表示: 向量 (d, c) 位于上半平面，c ≥ 0。
    θ = atan2(c, d)。支持精确比较与阈值分类。
    """
    d: Scalar
    c: Scalar

    @classmethod
    def between(cls, u: Direction, v: Direction) -> "ExactAngle":
        u.require_nonzero()
        v.require_nonzero()
        return cls(dot(u, v), abs(cross(u, v)))

    @classmethod
    def crossing(cls, u: Direction, v: Direction) -> "ExactAngle":
        """两条直线相交形成的锐角或直角"""
        a = cls.between(u, v)
        return cls(abs(a.d), a.c)

    def compare(self, other: "ExactAngle") -> int:
        s = sign(self.d * other.c - self.c * other.d)
        if s != 0:
            return -s
        # (d, c) 共线: 同向则相等，否则 d > 0 的一方更小 (0° 对 180°)
        if sign(self.d * other.d + self.c * other.c) > 0:
            return 0
        return -1 if sign(self.d) > 0 else 1

    def __lt__(self, other: "ExactAngle") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "ExactAngle") -> bool:
        return self.compare(other) <= 0

    def classify(self, threshold: int) -> AngleClass:
        return classify_dc(self.d, self.c, threshold)

    def degrees(self) -> float:
        return math.degrees(math.atan2(float(self.c), float(self.d)))


def classify_dc(d: Scalar, c: Scalar, threshold: int) -> AngleClass:
    """按 d、c 的平方形式精确分类"""
    sd = sign(d)
    if threshold == 90:
        if sd > 0:
            return AngleClass.BELOW
        return AngleClass.EQUAL if sd == 0 else AngleClass.ABOVE
    if threshold == 60:
        if sd <= 0:
            return AngleClass.ABOVE
        s = sign(c * c - 3 * d * d)
        if s < 0:
            return AngleClass.BELOW
        return AngleClass.EQUAL if s == 0 else AngleClass.ABOVE
    if threshold == 120:
        if sd >= 0:
            return AngleClass.BELOW
        s = sign(3 * d * d - c * c)
        if s > 0:
            return AngleClass.ABOVE
        return AngleClass.EQUAL if s == 0 else AngleClass.BELOW
    raise GeometryDomainError(f"unsupported threshold {threshold}", {"supported": list(THRESHOLDS)})


def angle_vs_threshold(u: Direction, v: Direction, threshold: int) -> AngleClass:
    """两射线夹角相对 60°/90°/120° 的精确分类"""
    return ExactAngle.between(u, v).classify(threshold)


def angle_degrees(u: Direction, v: Direction) -> float:
    """浮点角度，仅用于报告"""
    return ExactAngle.between(u, v).degrees()


class IntersectionKind(Enum):
    NONE = "NONE"
    PROPER_CROSSING = "PROPER_CROSSING"
    SHARED_ENDPOINT = "SHARED_ENDPOINT"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectionKind
    point: Optional[Point] = None


NO_INTERSECTION = Intersection(IntersectionKind.NONE)
DEGENERATE = Intersection(IntersectionKind.DEGENERATE)


def _within_box(p: Point, a: Point, b: Point) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Intersection:
    """
    线段 p1p2 与 q1q2 的关系。

    PROPER_CROSSING: 两段内部恰交于一点（精确返回交点）
    SHARED_ENDPOINT: 仅在公共端点相遇
    DEGENERATE: 共线重叠，或一段端点落在另一段内部
    """
    r = p2 - p1
    s = q2 - q1
    if r.is_zero() or s.is_zero():
        raise GeometryDomainError("zero-length segment")

    o1 = orientation(p1, p2, q1)
    o2 = orientation(p1, p2, q2)

    if o1 == 0 and o2 == 0:
        # 共线: 比较参数区间
        rr = dot(r, r)
        t1 = dot(q1 - p1, r) / rr
        t2 = dot(q2 - p1, r) / rr
        lo = max(Fraction(0), min(t1, t2))
        hi = min(Fraction(1), max(t1, t2))
        if lo < hi:
            return DEGENERATE
        if lo == hi:
            return Intersection(IntersectionKind.SHARED_ENDPOINT, p1.translate(r, lo))
        return NO_INTERSECTION

    shared = {p1, p2} & {q1, q2}
    if shared:
        return Intersection(IntersectionKind.SHARED_ENDPOINT, next(iter(shared)))

    o3 = orientation(q1, q2, p1)
    o4 = orientation(q1, q2, p2)

    if (o1 == 0 and _within_box(q1, p1, p2)) or (o2 == 0 and _within_box(q2, p1, p2)):
        return DEGENERATE
    if (o3 == 0 and _within_box(p1, q1, q2)) or (o4 == 0 and _within_box(p2, q1, q2)):
        return DEGENERATE

    if o1 * o2 < 0 and o3 * o4 < 0:
        t = cross(q1 - p1, s) / cross(r, s)
        return Intersection(IntersectionKind.PROPER_CROSSING, p1.translate(r, t))
    return NO_INTERSECTION
