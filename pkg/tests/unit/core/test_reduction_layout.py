import math
from fractions import Fraction

import pytest

from core.cnf import Assignment, Literal
from core.drawing import tar, validate
from core.errors import UnsatisfyingAssignmentError
from core.exact import QSqrt3
from core.geometry import AngleClass, Point
from core.reduction import build_reduction_graph, decode_assignment, literal_choices
from core.reduction_layout import gadget_scales, layout_satisfying, primes_above
from tests.fixtures.sample_data import FORMULAS, UNSATISFIABLE

SQRT3 = math.sqrt(3)


def at(x, eta):
    return Point(Fraction(x), QSqrt3(0, Fraction(eta)))


@pytest.fixture(scope="module")
def single():
    r = build_reduction_graph(FORMULAS["single"])
    return r, layout_satisfying(r, Assignment.parse("TFF"))


def test_primes_above():
    gen = primes_above(4)
    assert [next(gen) for _ in range(4)] == [5, 7, 11, 13]


def test_gadget_scales():
    r = build_reduction_graph(FORMULAS["single"])
    scales = gadget_scales(r, Assignment.parse("TFF"))
    assert [scales[i].hexagon for i in (1, 2, 3)] == [Fraction(1, 5), Fraction(1, 7), Fraction(1, 11)]
    assert scales[1].connector == Fraction(3, 5)
    assert scales[1].right_side_positive and not scales[2].right_side_positive


def test_layout_is_exactly_sixty(single):
    _, d = single
    assert validate(d) == []
    report = tar(d)
    assert report.classes[60] == AngleClass.EQUAL
    assert report.crossing_count > 0


def test_edges_are_horizontal_or_sixty(single):
    _, d = single
    for a, b in d.graph.edges:
        (x1, y1), (x2, y2) = d.positions[a].as_floats(), d.positions[b].as_floats()
        dx, dy = abs(x2 - x1), abs(y2 - y1)
        assert dy < 1e-9 or abs(dy - SQRT3 * dx) < 1e-9


def test_frame_and_gadget_positions(single):
    r, d = single
    assert d.positions[r.clause_vertex(1)] == at(Fraction(9, 2), 1)
    assert d.positions[r.anchors["X_1"]] == at(0, Fraction(1, 2))
    assert d.positions[r.literal_vertex(Literal(1), 1)] == at(Fraction(1, 5), Fraction(7, 10))
    assert d.positions[r.literal_vertex(Literal(1, False), 1)] == at(Fraction(-1, 5), Fraction(7, 10))
    # 假变量的正文字在左侧
    assert d.positions[r.literal_vertex(Literal(2), 1)] == at(Fraction(6, 7), Fraction(9, 14))


def test_true_literal_path_leaves_horizontally(single):
    r, d = single
    first = next(p for p in r.paths_of(1) if p.literal == Literal(1))
    assert d.positions[first.vertices[1]] == at(Fraction(59, 13), 1)
    choices = literal_choices(r, d)
    assert [c.literal for c in choices] == [Literal(1)]
    assert choices[0].faces_clauses


def test_decode_round_trip(single):
    r, d = single
    assert decode_assignment(r, d).bits() == "TFF"
    assert decode_assignment(r, d.reflected()).bits() == "TFF"


def test_rejects_unsatisfying_assignment():
    r = build_reduction_graph(FORMULAS["single"])
    with pytest.raises(UnsatisfyingAssignmentError) as info:
        layout_satisfying(r, Assignment.parse("FFF"))
    assert info.value.details["unsatisfied"] == [1]
    with pytest.raises(UnsatisfyingAssignmentError):
        layout_satisfying(r, Assignment.parse("TF"))


def test_unsatisfiable_instance_has_no_layout():
    r = build_reduction_graph(UNSATISFIABLE)
    for bits in ("FFF", "TTT", "TFT"):
        with pytest.raises(UnsatisfyingAssignmentError):
            layout_satisfying(r, Assignment.parse(bits))
