"""CNF export/import checked against an independent DPLL oracle."""

import pytest

from qramsey.cnf import (
    AssignmentError,
    cnf_satisfied,
    export_cnf,
    import_assignment,
    parse_assignment,
    to_dimacs,
)
from qramsey.detector import build_candidates, find_witness
from qramsey.patterns import builtin_family, default_catalog
from qramsey.search import AVOIDING, EXHAUSTED, search_avoiding
from qramsey.windows import FareyWindow, IntegerInterval

from _dpll import model_literals, solve


class TestStructure:
    def test_variable_layout(self):
        cnf = export_cnf(builtin_family("schur"), IntegerInterval(1, 4), 3)
        assert cnf.num_vars == 12
        assert cnf.var(0, 0) == 1
        assert cnf.var(0, 2) == 3
        assert cnf.var(3, 1) == 11

    def test_clause_counts(self):
        family = builtin_family("schur")
        window = IntegerInterval(1, 6)
        r = 2
        table = build_candidates(family, window)
        cnf = export_cnf(family, window, r, table=table)
        groups = table.constraint_groups()
        assert len(cnf.clauses) == window.size() + r * len(groups)
        # Leading clauses are the at-least-one rows.
        for e in range(window.size()):
            assert cnf.clauses[e] == tuple(e * r + c + 1 for c in range(r))
        # The rest are all-negative per group and color.
        for cl in cnf.clauses[window.size() :]:
            assert all(lit < 0 for lit in cl)

    def test_dimacs_shape(self):
        cnf = export_cnf(builtin_family("vdw(2)"), IntegerInterval(1, 5), 2)
        text = to_dimacs(cnf)
        lines = text.strip().split("\n")
        comments = [l for l in lines if l.startswith("c ")]
        assert any("family:" in l for l in comments)
        assert any("window:" in l for l in comments)
        p = next(l for l in lines if l.startswith("p cnf "))
        nv, nc = map(int, p.split()[2:])
        assert nv == cnf.num_vars
        clause_lines = [l for l in lines if not l.startswith(("c", "p"))]
        assert len(clause_lines) == nc == len(cnf.clauses)
        assert all(l.endswith(" 0") for l in clause_lines)


SMALL_WINDOWS = [IntegerInterval(1, 6), IntegerInterval(1, 10), FareyWindow(2)]


class TestOracleEquivalence:
    @pytest.mark.parametrize("key", sorted(default_catalog()))
    def test_sat_iff_native_search_avoiding(self, key):
        family = builtin_family(key)
        for window in SMALL_WINDOWS:
            table = build_candidates(family, window)
            cnf = export_cnf(family, window, 2, table=table)
            model = solve(cnf.num_vars, cnf.clauses)
            res = search_avoiding(family, window, 2, table=table)
            if res.outcome == AVOIDING:
                assert model is not None, (key, window.spec_string())
            else:
                assert res.outcome == EXHAUSTED
                assert model is None, (key, window.spec_string())
            if model is not None:
                assert cnf_satisfied(cnf, model)
                coloring = import_assignment(cnf, model_literals(model))
                assert find_witness(family, coloring, table) is None


class TestAssignmentText:
    def test_parse_forms(self):
        text = "c comment\ns SATISFIABLE\nv 1 -2 3 0\nv -4\n5 -6 0\n"
        assert parse_assignment(text) == [1, -2, 3, -4, 5, -6]

    def test_parse_skips_blank_lines(self):
        assert parse_assignment("\n\nv 2 0\n") == [2]


class TestImport:
    def _cnf(self):
        return export_cnf(builtin_family("schur"), IntegerInterval(1, 2), 2)

    def test_least_true_color_wins(self):
        cnf = self._cnf()
        # Every variable true: each element keeps color 0.
        coloring = import_assignment(cnf, [1, 2, 3, 4])
        assert coloring.colors == (0, 0)

    def test_out_of_range_literal(self):
        cnf = self._cnf()
        with pytest.raises(AssignmentError, match="outside"):
            import_assignment(cnf, [1, 2, 3, 4, 99])

    def test_partial_assignment_rejected(self):
        cnf = self._cnf()
        with pytest.raises(AssignmentError, match="not total"):
            import_assignment(cnf, [1, -2, 3])

    def test_all_false_element_rejected(self):
        cnf = self._cnf()
        with pytest.raises(AssignmentError, match="at-least-one"):
            import_assignment(cnf, [-1, -2, 3, -4])

    def test_round_trip_through_dimacs_text(self):
        cnf = export_cnf(builtin_family("schur"), IntegerInterval(1, 4), 2)
        model = solve(cnf.num_vars, cnf.clauses)
        assert model is not None
        text = "v " + " ".join(str(l) for l in model_literals(model)) + " 0\n"
        coloring = import_assignment(cnf, parse_assignment(text))
        assert find_witness(builtin_family("schur"), coloring) is None
