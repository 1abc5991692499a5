import pytest

from core.cnf import (
    Assignment,
    Literal,
    SatInstance,
    enumerate_satisfying,
    load_cnf,
    parse_cnf,
    random_instance,
)
from core.errors import BudgetExceededError, CnfParseError, PreconditionError
from tests.fixtures.sample_data import (
    FORMULAS,
    FOUR_CLAUSE_DIMACS,
    SINGLE_CLAUSE_DIMACS,
    UNSATISFIABLE,
)


def test_literals():
    lit = Literal.from_int(-2)
    assert lit == Literal(2, False)
    assert str(lit) == "¬x2"
    assert -lit == Literal(2)
    assert lit.to_int() == -2
    with pytest.raises(ValueError):
        Literal.from_int(0)


class TestParse:
    def test_single_clause(self):
        f = parse_cnf(SINGLE_CLAUSE_DIMACS)
        assert f.num_vars == 3
        assert f.clauses == ((Literal(1), Literal(2, False), Literal(3)),)

    def test_four_clauses(self):
        assert parse_cnf(FOUR_CLAUSE_DIMACS) == FORMULAS["four"]

    def test_clause_spanning_lines_and_terminator(self):
        f = parse_cnf("p cnf 3 1\n1 2\n-3 0\n%\n0\ngarbage\n")
        assert f.clauses[0][2] == Literal(3, False)

    def test_opposite_literals_allowed(self):
        f = parse_cnf("p cnf 2 1\n1 -1 2 0\n")
        assert f.m == 1

    @pytest.mark.parametrize("text,line", [
        ("1 2 3 0\n", 1),
        ("p cnf 3 1\n1 2 0\n", 2),
        ("p cnf 3 1\n1 1 2 0\n", 2),
        ("p cnf 3 1\nc fine\n1 2 4 0\n", 3),
        ("p cnf 3 1\n1 x 2 0\n", 2),
        ("p cnf 3 1\np cnf 3 1\n", 2),
        ("p dnf 3 1\n", 1),
        ("p cnf 3 1\n1 2\n3\n", 2),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(CnfParseError) as info:
            parse_cnf(text)
        assert info.value.line == line
        assert info.value.message.startswith(f"line {line}:")

    def test_missing_header(self):
        with pytest.raises(CnfParseError):
            parse_cnf("c nothing here\n")

    def test_clause_count_mismatch(self):
        with pytest.raises(CnfParseError) as info:
            parse_cnf("p cnf 3 2\n1 2 3 0\n")
        assert info.value.details["found"] == 1

    def test_dimacs_round_trip(self):
        f = FORMULAS["three"]
        assert parse_cnf(f.to_dimacs()) == f

    def test_load(self, tmp_path):
        path = tmp_path / "f.cnf"
        path.write_text(SINGLE_CLAUSE_DIMACS, encoding="utf-8")
        assert load_cnf(str(path)).m == 1


class TestAssignment:
    @pytest.mark.parametrize("text", ["TFT", "101", "true, false, true", "t f t"])
    def test_parse_forms(self, text):
        assert Assignment.parse(text) == Assignment((True, False, True))

    def test_parse_rejects_junk(self):
        with pytest.raises(ValueError):
            Assignment.parse("TX")

    def test_bits(self):
        assert str(Assignment((False, True))) == "FT"


class TestInstance:
    def test_satisfaction(self):
        f = FORMULAS["mixed"]
        assert f.satisfied_by(Assignment.parse("TTF"))
        assert f.unsatisfied_clauses(Assignment.parse("FTF")) == [1]
        assert not f.satisfied_by(Assignment.parse("TT"))

    def test_enumeration_order(self):
        found = [a.bits() for a in enumerate_satisfying(FORMULAS["single"])]
        assert len(found) == 7
        assert found[0] == "FFT"
        assert "FFF" not in found

    def test_unsatisfiable(self):
        assert list(enumerate_satisfying(UNSATISFIABLE)) == []

    def test_enumeration_budget(self):
        big = SatInstance.of(21, [[1, 2, 3]])
        with pytest.raises(BudgetExceededError):
            next(enumerate_satisfying(big))

    def test_needs_a_variable(self):
        with pytest.raises(PreconditionError):
            SatInstance(0, ())

    def test_rejects_bad_clause(self):
        with pytest.raises(CnfParseError):
            SatInstance.of(2, [[1, 2, 3]])


class TestRandomInstance:
    def test_deterministic(self):
        assert random_instance(5, 8, seed=4) == random_instance(5, 8, seed=4)

    def test_clauses_are_well_formed(self):
        f = random_instance(3, 20, seed=9)
        assert f.m == 20
        for clause in f.clauses:
            assert len(set(clause)) == 3

    def test_too_few_variables(self):
        with pytest.raises(PreconditionError):
            random_instance(1, 2, seed=0)
