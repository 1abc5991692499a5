"""例外目录与紧族在整个工具链上的端到端检查"""

import pytest

from core.bounds import Theorem1Outcome, check_all, check_lemma3, check_theorem1, replace_degree4_with_crossing
from core.drawing import tar
from core.drawing_io import dumps, loads
from core.exception_catalog import ExceptionId, entry, recognize_drawing, theorem1_catalog
from core.generators import layered_8gon
from core.geometry import AngleClass
from core.optimizer import OptConfig, grid_oracle, maximize_tar
from tests.fixtures.sample_data import e9_straight


@pytest.mark.parametrize("k", range(1, 6))
def test_layered_family_meets_bound_with_equality(k):
    d = layered_8gon(k)
    assert d.m == 2 * d.n - 6
    assert tar(d).classes[60] == AngleClass.ABOVE
    assert check_theorem1(d.graph, d).outcome == Theorem1Outcome.BOUND_HOLDS
    report = check_lemma3(d)
    assert report.holds and report.bound == d.m


@pytest.mark.parametrize("e", theorem1_catalog(), ids=lambda e: str(e.id))
def test_catalog_witnesses_pass_every_check(e):
    result = check_theorem1(e.graph, e.witness)
    assert result.outcome == Theorem1Outcome.EXCEPTION
    assert result.exception == e.id
    assert not check_all(e.witness).refuted


@pytest.mark.parametrize("e", theorem1_catalog(), ids=lambda e: str(e.id))
def test_catalog_survives_file_round_trip(e):
    restored = loads(dumps(e.witness))
    assert restored == e.witness
    if e.graph.is_connected():
        assert recognize_drawing(restored) == e.id


@pytest.mark.parametrize("variant", [1, 2])
def test_degree4_vertex_cannot_become_a_crossing(variant):
    d = replace_degree4_with_crossing(e9_straight(variant), 0)
    assert recognize_drawing(e9_straight(variant)) == ExceptionId("E9", variant)
    assert tar(d).classes[60] != AngleClass.ABOVE


@pytest.mark.slow
@pytest.mark.parametrize("family,variant", [("E1", 2), ("E1", 3), ("E2", 1), ("E4", 1)])
def test_grid_oracle_finds_exception_above_sixty(family, variant):
    g = entry(ExceptionId(family, variant)).graph
    result = grid_oracle(g, 4, budget=10 ** 6)
    assert result.exact_class_60 == AngleClass.ABOVE


@pytest.mark.slow
def test_optimizer_recovers_most_exceptions_above_sixty():
    cfg = OptConfig(restarts=12, steps=1500, initial_step=2.0, cooling=0.998, seed=0, box=10)
    reached = [str(e.id) for e in theorem1_catalog()
               if maximize_tar(e.graph, cfg).exact_class_60 == AngleClass.ABOVE]
    assert len(reached) >= 8, reached
