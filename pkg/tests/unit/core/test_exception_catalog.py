import pytest

from core.drawing import Graph, cycle_graph, tar
from core.errors import DisconnectedDrawingError
from core.exception_catalog import (
    ExceptionId,
    catalog,
    entry,
    recognize_drawing,
    recognize_graph,
    signature_index,
    theorem1_catalog,
)
from core.geometry import AngleClass
from tests.fixtures.sample_data import k4_plane, two_triangles, unit_square

ENTRIES = catalog()


def test_catalog_covers_every_variant():
    ids = {str(e.id) for e in ENTRIES}
    assert ids == {
        "E0", "E1(1)", "E1(2)", "E1(3)", "E1(4)", "E2", "E3", "E4", "E5", "E6", "E7",
        "E8(1)", "E8(2)", "E9(1)", "E9(2)",
    }
    assert len(theorem1_catalog()) == len(ENTRIES) - 1


@pytest.mark.parametrize("e", ENTRIES, ids=lambda e: str(e.id))
def test_witness_above_sixty(e):
    assert tar(e.witness).classes[60] == AngleClass.ABOVE


@pytest.mark.parametrize("e", ENTRIES, ids=lambda e: str(e.id))
def test_self_recognized(e):
    assert recognize_graph(e.graph) == e.id
    assert recognize_drawing(e.witness) == e.id


@pytest.mark.parametrize("e", theorem1_catalog(), ids=lambda e: str(e.id))
def test_exceeds_theorem_bound(e):
    assert e.m > 2 * e.n - 6


def test_known_sizes():
    assert (entry(ExceptionId("E7")).n, entry(ExceptionId("E7")).m) == (6, 7)
    assert (entry(ExceptionId("E9", 1)).n, entry(ExceptionId("E9", 1)).m) == (9, 13)


def test_recognize_under_relabeling_and_reflection():
    e = entry(ExceptionId("E8", 2))
    perm = list(reversed(range(e.n)))
    moved = e.witness.relabeled(perm).reflected().translated(3, 4)
    assert recognize_drawing(moved) == e.id
    assert recognize_graph(moved.graph) == e.id


def test_non_exceptions():
    assert recognize_graph(k4_plane().graph) is None
    assert recognize_drawing(k4_plane()) is None
    assert recognize_graph(cycle_graph(7)) is None


def test_square_is_e2():
    assert recognize_drawing(unit_square()) == ExceptionId("E2")


def test_disconnected_drawing_needs_e0():
    with pytest.raises(DisconnectedDrawingError):
        recognize_drawing(two_triangles())


@pytest.mark.parametrize("family,variant", [("E10", 1), ("E1", 5), ("E4", 2)])
def test_bad_ids(family, variant):
    with pytest.raises(ValueError):
        ExceptionId(family, variant)


def test_entry_lookup_and_index():
    assert entry(ExceptionId("E4")).description == "empty 5-gon"
    index = signature_index()
    assert len(index) == len(ENTRIES) - 1
    assert ExceptionId("E0") not in index.values()


def test_graph_level_ignores_drawing():
    star = Graph(4, ((0, 1), (0, 2), (0, 3)))
    assert recognize_graph(star) == ExceptionId("E1", 4)
