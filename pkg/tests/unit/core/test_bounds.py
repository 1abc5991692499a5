import pytest

from core.bounds import (
    Lemma3Case,
    Theorem1Outcome,
    BoundReport,
    characterize_gt120,
    check_all,
    check_disconnected,
    check_lemma1,
    check_lemma1_corollary,
    check_lemma2,
    check_lemma3,
    check_observation1,
    check_theorem1,
    classify_lemma3_case,
    inner_degrees,
    replace_degree4_with_crossing,
)
from core.drawing import Graph, crossings, cycle_graph, path_graph, tar
from core.errors import DisconnectedDrawingError, PreconditionError, WitnessMismatchError
from core.exception_catalog import ExceptionId, entry, theorem1_catalog
from core.generators import layered_8gon, regular_polygon
from core.geometry import AngleClass
from core.planarization import comb_signature
from tests.fixtures.sample_data import (
    crossing_x,
    e9_straight,
    edge_plus_isolated,
    k4_plane,
    path3,
    plus_star,
    right_triangle,
    skew_star,
    square_with_diagonals,
    two_triangles,
    unit_square,
)

CONNECTED_EXCEPTIONS = [e for e in theorem1_catalog() if e.graph.is_connected()]


class TestLemma1:
    def test_square_is_tight(self):
        report = check_lemma1(unit_square())
        assert (report.k, report.bound, report.holds) == (4, 4, True)
        assert report.tar_class_60 == AngleClass.ABOVE
        assert not report.refutes

    def test_triangle_violates_but_is_below_sixty(self):
        report = check_lemma1(right_triangle())
        assert report.bound == 2
        assert not report.holds
        assert report.tar_class_60 == AngleClass.BELOW
        assert not report.refutes

    def test_crossings_count_in_planarization(self):
        report = check_lemma1(square_with_diagonals())
        assert not report.holds
        assert not report.refutes

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedDrawingError):
            check_lemma1(crossing_x())

    def test_corollary(self):
        assert check_lemma1_corollary(path3()).bound == 2
        assert check_lemma1_corollary(unit_square()).holds
        with pytest.raises(PreconditionError):
            check_lemma1_corollary(entry(ExceptionId("E1", 1)).witness)

    def test_summary_line(self):
        line = check_lemma1(unit_square()).summary_line()
        assert line == "lemma1: n=4 m=4 k=4 bound=4 holds=yes vs60=ABOVE"


class TestObservation1:
    def test_hexagon_with_diagonal(self):
        d = entry(ExceptionId("E7")).witness
        assert inner_degrees(d) == {0: 1, 1: 0, 2: 0, 3: 1, 4: 0, 5: 0}
        report = check_observation1(d)
        assert (report.p, report.value, report.bound, report.holds) == (6, 2, 5, True)

    def test_square(self):
        report = check_observation1(unit_square())
        assert (report.value, report.bound) == (0, 1)

    def test_triangle_too_small(self):
        with pytest.raises(PreconditionError):
            check_observation1(right_triangle())

    def test_needs_plane(self):
        with pytest.raises(PreconditionError):
            check_observation1(square_with_diagonals())


class TestLemma2:
    @pytest.mark.parametrize("d", [path3(), unit_square()], ids=["path3", "square"])
    def test_excluded_graphs(self, d):
        with pytest.raises(PreconditionError):
            check_lemma2(d)

    def test_k4_violates_below_sixty(self):
        report = check_lemma2(k4_plane())
        assert (report.bound, report.holds, report.tar_class_60) == (3, False, AngleClass.BELOW)

    @pytest.mark.parametrize(
        "e",
        [e for e in CONNECTED_EXCEPTIONS if str(e.id) not in ("E1(2)", "E2")],
        ids=lambda e: str(e.id),
    )
    def test_exceptions_meet_weaker_bound(self, e):
        assert check_lemma2(e.witness).holds


class TestLemma3:
    @pytest.mark.parametrize("e", CONNECTED_EXCEPTIONS, ids=lambda e: str(e.id))
    def test_exceptions_are_named(self, e):
        report = check_lemma3(e.witness)
        assert not report.holds
        assert report.exception == e.id
        assert not report.refutes

    def test_tight_family(self):
        report = check_lemma3(layered_8gon(1))
        assert (report.bound, report.holds, report.exception) == (10, True, None)

    def test_triangle(self):
        report = check_lemma3(right_triangle())
        assert report.exception is None
        assert report.details["case"] == Lemma3Case.TRIANGLE_HULL.value
        assert not report.refutes

    @pytest.mark.parametrize("d,case", [
        (unit_square(), Lemma3Case.SIZE_4),
        (right_triangle(), Lemma3Case.TRIANGLE_HULL),
        (regular_polygon(5), Lemma3Case.SIZE_5),
        (entry(ExceptionId("E7")).witness, Lemma3Case.SIZE_6),
        (regular_polygon(7), Lemma3Case.SIZE_7_PLUS),
    ])
    def test_case_split(self, d, case):
        assert classify_lemma3_case(d) == case


class TestTheorem1:
    def test_bound_holds(self):
        g = layered_8gon(2).graph
        result = check_theorem1(g)
        assert result.outcome == Theorem1Outcome.BOUND_HOLDS
        assert result.bound == 26

    def test_exception(self):
        result = check_theorem1(entry(ExceptionId("E7")).graph)
        assert result.outcome == Theorem1Outcome.EXCEPTION
        assert result.exception == ExceptionId("E7")

    def test_violation_without_witness(self):
        result = check_theorem1(k4_plane().graph)
        assert result.outcome == Theorem1Outcome.TAR_AT_MOST_60
        assert result.witness_class is None

    def test_violation_with_witness(self):
        d = k4_plane()
        result = check_theorem1(d.graph, d)
        assert result.outcome == Theorem1Outcome.TAR_AT_MOST_60
        assert result.witness_class == AngleClass.BELOW
        assert not result.refutes
        assert result.summary_line() == "theorem1: n=4 m=6 bound=2 outcome=TAR_AT_MOST_60 vs60=BELOW"

    def test_witness_mismatch(self):
        with pytest.raises(WitnessMismatchError):
            check_theorem1(k4_plane().graph, unit_square())

    def test_too_small(self):
        with pytest.raises(PreconditionError):
            check_theorem1(Graph(2, ((0, 1),)))


class TestDisconnected:
    def test_edge_plus_isolated_vertex(self):
        assert check_disconnected(edge_plus_isolated()) == ExceptionId("E0")

    def test_two_triangles(self):
        report = check_disconnected(two_triangles())
        assert isinstance(report, BoundReport)
        assert (report.bound, report.holds) == (6, True)
        components = report.details["components"]
        assert [c["lemma1_bound"] for c in components] == [2, 2]

    def test_connected_rejected(self):
        with pytest.raises(PreconditionError):
            check_disconnected(unit_square())


class TestDegree4Replacement:
    def test_plus_sign_becomes_crossing(self):
        replaced = replace_degree4_with_crossing(plus_star(), 0)
        assert (replaced.n, replaced.m) == (4, 2)
        report = tar(replaced)
        assert report.crossing_count == 1
        assert report.classes[90] == AngleClass.EQUAL

    def test_crossing_sits_at_removed_vertex(self):
        replaced = replace_degree4_with_crossing(plus_star(), 0)
        assert [c.point for c in crossings(replaced)] == [plus_star().positions[0]]

    def test_rays_must_be_collinear(self):
        with pytest.raises(PreconditionError) as info:
            replace_degree4_with_crossing(skew_star(), 0)
        assert info.value.details["vertex"] == 0

    @pytest.mark.parametrize("variant", [1, 2])
    def test_e9_witness_rays_are_not_collinear(self, variant):
        # TAR > 60° 的 E9 画法在度 4 顶点处不可能有共线的相对射线
        with pytest.raises(PreconditionError):
            replace_degree4_with_crossing(entry(ExceptionId("E9", variant)).witness, 0)

    @pytest.mark.parametrize("variant", [1, 2])
    def test_e9_straight_drops_to_sixty(self, variant):
        d = e9_straight(variant)
        assert comb_signature(d) == comb_signature(entry(ExceptionId("E9", variant)).witness)
        replaced = replace_degree4_with_crossing(d, 0)
        assert replaced.n == d.n - 1
        assert replaced.m == d.m - 2
        report = tar(replaced)
        assert report.crossing_count == 1
        assert report.classes[60] in (AngleClass.BELOW, AngleClass.EQUAL)

    def test_wrong_degree(self):
        with pytest.raises(PreconditionError):
            replace_degree4_with_crossing(unit_square(), 0)

    def test_out_of_range(self):
        with pytest.raises(PreconditionError):
            replace_degree4_with_crossing(unit_square(), 9)


class TestCharacterizeGt120:
    @pytest.mark.parametrize("k", range(3, 13))
    def test_cycles(self, k):
        result = characterize_gt120(cycle_graph(k))
        assert result.yes == (k >= 7)
        if result.yes:
            assert result.witness.graph == cycle_graph(k)
            assert tar(result.witness).classes[120] == AngleClass.ABOVE
        else:
            assert result.reason == f"cycle of length {k}"

    def test_star_is_no(self):
        result = characterize_gt120(Graph(4, ((0, 1), (0, 2), (0, 3))))
        assert not result.yes
        assert result.summary_line() == "NO(vertex 0 of degree 3)"

    def test_paths_and_mixtures(self):
        assert characterize_gt120(path_graph(5)).yes
        mixed = Graph(10, tuple((i, (i + 1) % 7) for i in range(7)) + ((7, 8), (8, 9)))
        result = characterize_gt120(mixed)
        assert result.yes
        assert result.witness.graph == mixed
        small_cycle = Graph(10, tuple((i, (i + 1) % 7) for i in range(7)) + ((7, 8), (8, 9), (9, 7)))
        assert not characterize_gt120(small_cycle).yes


class TestCheckAll:
    def test_square(self):
        summary = check_all(unit_square())
        names = [r.statement for r in summary.reports]
        assert names == ["lemma1", "lemma1_corollary", "observation1", "lemma3"]
        assert "lemma2" in summary.skipped
        assert summary.theorem1.outcome == Theorem1Outcome.EXCEPTION
        assert summary.lemma3_case == Lemma3Case.SIZE_4
        assert not summary.refuted
        assert summary.lines()[-1] == "refuted: no"

    def test_disconnected(self):
        summary = check_all(edge_plus_isolated())
        assert summary.exception == ExceptionId("E0")
        assert summary.theorem1.outcome == Theorem1Outcome.EXCEPTION
        assert "disconnected: exception=E0" in summary.lines()

        summary = check_all(two_triangles())
        assert summary.reports[-1].statement == "disconnected"
        assert summary.theorem1.outcome == Theorem1Outcome.BOUND_HOLDS

    def test_to_dict(self):
        data = check_all(k4_plane()).to_dict()
        assert data["refuted"] is False
        assert data["theorem1"]["outcome"] == "TAR_AT_MOST_60"
