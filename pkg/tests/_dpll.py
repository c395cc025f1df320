"""A deliberately naive DPLL solver used as an independent SAT oracle.

No shared code with the package's CNF module: clauses come in as literal
tuples, unit propagation plus two-way branching on a shortest clause, and
the result is a total assignment dict or None.  Exponential in the worst
case, fine at the sizes the tests use.
"""

from __future__ import annotations


def _simplify(clauses, lit):
    """Apply a literal; None signals an empty clause (conflict)."""
    out = []
    for cl in clauses:
        if lit in cl:
            continue
        if -lit in cl:
            nc = tuple(l for l in cl if l != -lit)
            if not nc:
                return None
            out.append(nc)
        else:
            out.append(cl)
    return out


def solve(num_vars, clauses):
    """Return {var: bool} satisfying every clause, or None when unsatisfiable."""

    def dpll(clauses, assign):
        while True:
            if any(not cl for cl in clauses):
                return None
            unit = next((cl[0] for cl in clauses if len(cl) == 1), None)
            if unit is None:
                break
            assign = dict(assign)
            assign[abs(unit)] = unit > 0
            clauses = _simplify(clauses, unit)
            if clauses is None:
                return None
        if not clauses:
            total = dict(assign)
            for v in range(1, num_vars + 1):
                total.setdefault(v, False)
            return total
        lit = min(clauses, key=len)[0]
        for choice in (lit, -lit):
            reduced = _simplify(clauses, choice)
            if reduced is None:
                continue
            nxt = dict(assign)
            nxt[abs(choice)] = choice > 0
            got = dpll(reduced, nxt)
            if got is not None:
                return got
        return None

    return dpll([tuple(cl) for cl in clauses], {})


def model_literals(model):
    """Assignment dict to signed literal list, ascending by variable."""
    return [v if val else -v for v, val in sorted(model.items())]
