"""CNF export of the avoiding-coloring decision, DIMACS style.

Variable v(e, c) = e*r + c + 1 asserts "element e has color c".  Clauses:

* one at-least-one clause per element;
* for every candidate constraint and every color, a clause forbidding all
  members simultaneously true in that color.

At-most-one-color clauses are deliberately left out.  Any satisfying
assignment may mark several colors true for an element; reading off the
least true color per element still yields an avoiding coloring, because
dropping the extra trues can only shrink the per-color true sets and every
forbidden clause stays satisfied.  import_assignment applies exactly that
least-index rule, so the instance is equisatisfiable with the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .colorings import Coloring
from .detector import CandidateTable, build_candidates
from .patterns import Family
from .windows import Window


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class CnfInstance:
    family: Family
    window: Window
    r: int
    clauses: tuple[tuple[int, ...], ...]

    @property
    def num_vars(self) -> int:
        return self.window.size() * self.r

    def var(self, element: int, color: int) -> int:
        return element * self.r + color + 1


def export_cnf(
    family: Family, window: Window, r: int, table: CandidateTable | None = None
) -> CnfInstance:
    if table is None:
        table = build_candidates(family, window)
    n = window.size()
    clauses: list[tuple[int, ...]] = []
    for e in range(n):
        clauses.append(tuple(e * r + c + 1 for c in range(r)))
    for group in table.constraint_groups():
        for c in range(r):
            clauses.append(tuple(-(e * r + c + 1) for e in group))
    return CnfInstance(family=family, window=window, r=r, clauses=tuple(clauses))


def to_dimacs(cnf: CnfInstance) -> str:
    lines = [
        f"c family: {cnf.family.serialize()}",
        f"c window: {cnf.window.spec_string()}",
        f"c colors: {cnf.r}; var(e,c) = e*r + c + 1",
        f"p cnf {cnf.num_vars} {len(cnf.clauses)}",
    ]
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_assignment(text: str) -> list[int]:
    """Collect signed literals from solver output.

    Accepts raw literal lines as well as minisat/picosat style 'v ' lines;
    comment lines, status lines and the trailing 0 are ignored.
    """
    lits: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "s")):
            continue
        if line.startswith("v"):
            line = line[1:]
        for tok in line.split():
            val = int(tok)
            if val != 0:
                lits.append(val)
    return lits


def import_assignment(cnf: CnfInstance, literals: Iterable[int]) -> Coloring:
    """Read a total satisfying assignment back into a coloring.

    Each element takes its least true color.  An element with no true color
    violates the at-least-one clause and is rejected.
    """
    truth: dict[int, bool] = {}
    for lit in literals:
        var = abs(lit)
        if not 1 <= var <= cnf.num_vars:
            raise AssignmentError(f"literal {lit} outside 1..{cnf.num_vars}")
        truth[var] = lit > 0
    missing = next((v for v in range(1, cnf.num_vars + 1) if v not in truth), None)
    if missing is not None:
        raise AssignmentError(f"assignment not total: variable {missing} unset")
    colors = []
    r = cnf.r
    for e in range(cnf.window.size()):
        chosen = next((c for c in range(r) if truth[e * r + c + 1]), None)
        if chosen is None:
            raise AssignmentError(
                f"assignment violates at-least-one clause for element {e}"
            )
        colors.append(chosen)
    return Coloring(cnf.window, colors, r)


def cnf_satisfied(cnf: CnfInstance, truth: Mapping[int, bool]) -> bool:
    return all(any(truth.get(abs(l), False) == (l > 0) for l in cl) for cl in cnf.clauses)
