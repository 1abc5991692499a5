"""随机画法上的上界定理回归：任何检查都不应给出反例"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from core.bounds import Theorem1Outcome, check_all, check_lemma1, check_observation1, check_theorem1
from core.drawing import Graph, cycle_graph, tar, validate
from core.errors import PreconditionError
from core.generators import random_drawing, random_drawing_of
from core.geometry import AngleClass
from tests.fixtures.sample_data import star_polygons

pytestmark = pytest.mark.slow

FUZZ = settings(max_examples=1000, deadline=None,
                suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


@st.composite
def drawings(draw):
    n = draw(st.integers(min_value=3, max_value=8))
    m = draw(st.integers(min_value=0, max_value=min(n * (n - 1) // 2, 2 * n + 2)))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_drawing(n, m, seed, coordinate_range=30)


@st.composite
def dense_drawings(draw):
    n = draw(st.integers(min_value=3, max_value=7))
    m = draw(st.integers(min_value=n - 1, max_value=n * (n - 1) // 2))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_drawing(n, m, seed, coordinate_range=25)


@FUZZ
@given(drawings())
def test_no_refutation(d):
    summary = check_all(d)
    assert not summary.refuted, summary.lines()


@FUZZ
@given(dense_drawings())
def test_lemma1_violation_forces_small_angle(d):
    if not d.graph.is_connected():
        return
    report = check_lemma1(d)
    assert report.holds or report.tar_class_60 != AngleClass.ABOVE, report.to_dict()


@FUZZ
@given(star_polygons(chords=True))
def test_observation1_violation_forces_small_angle(d):
    if validate(d):
        return
    try:
        report = check_observation1(d)
    except PreconditionError:
        return
    assert report.holds or report.tar_class_60 != AngleClass.ABOVE, report.to_dict()


@FUZZ
@given(drawings())
def test_above_sixty_implies_bound_or_exception(d):
    if tar(d).classes[60] != AngleClass.ABOVE:
        return
    result = check_theorem1(d.graph, d)
    assert result.outcome in (Theorem1Outcome.BOUND_HOLDS, Theorem1Outcome.EXCEPTION)


@FUZZ
@given(star_polygons(chords=True))
def test_above_sixty_polygons_meet_theorem1(d):
    if validate(d) or tar(d).classes[60] != AngleClass.ABOVE:
        return
    result = check_theorem1(d.graph, d)
    assert result.outcome in (Theorem1Outcome.BOUND_HOLDS, Theorem1Outcome.EXCEPTION)


SMALL_NO_GRAPHS = {
    "C3": cycle_graph(3),
    "C4": cycle_graph(4),
    "C5": cycle_graph(5),
    "C6": cycle_graph(6),
    "K13": Graph(4, ((0, 1), (0, 2), (0, 3))),
}


@pytest.mark.parametrize("name", sorted(SMALL_NO_GRAPHS))
@settings(max_examples=1000, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_no_graphs_never_exceed_120(name, seed):
    d = random_drawing_of(SMALL_NO_GRAPHS[name], seed=seed, coordinate_range=40)
    assert tar(d).classes[120] != AngleClass.ABOVE
