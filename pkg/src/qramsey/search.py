"""Exhaustive search for avoiding colorings.

The solver assigns colors to window elements by backtracking over the
candidate constraints ("these indices may not be monochromatic"):

* assignment order is most-constrained-first (descending candidate degree,
  index as tie-break);
* propagation is forced-color elimination: when all but one member of a
  constraint share a color, that color is struck from the last member;
* symmetry breaking fixes the first assigned element to color 0 and only
  admits a brand-new color directly after the existing ones.

Outcomes: an avoiding coloring (re-checked through the detector before it is
returned), exhaustion of the tree (with node count and a hash of the decision
trace), or budget exceeded.  With more than one worker the tree is split at a
fixed depth into canonical prefix subtrees processed by a thread pool; the
workers share a found flag and a node counter, and the set of subtrees is a
pure function of the worker parameter, so the outcome does not depend on
scheduling as long as budgets are not hit.
"""

from __future__ import annotations

import hashlib
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .colorings import Coloring
from .detector import CandidateTable, build_candidates, find_witness
from .patterns import Family
from .windows import FareyWindow, IntegerInterval, MultiplicativeGrid, Window

AVOIDING = "avoiding"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget-exceeded"

_FLUSH_EVERY = 64


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    max_seconds: float | None = None
    workers: int = 1


@dataclass(frozen=True)
class SearchResult:
    outcome: str
    coloring: Coloring | None
    nodes: int
    proof_log_hash: str | None
    wall_time: float
    family: Family
    family_text: str
    window_spec: str
    r: int
    budget: SearchBudget


class _BudgetHit(Exception):
    pass


class _Aborted(Exception):
    pass


class _Shared:
    """Node counter, deadline and found flag shared by subtree workers."""

    def __init__(self, max_nodes: int | None, deadline: float | None) -> None:
        self.lock = threading.Lock()
        self.nodes = 0
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.found = threading.Event()

    def flush(self, k: int) -> None:
        with self.lock:
            self.nodes += k
            over = self.max_nodes is not None and self.nodes > self.max_nodes
        if over or (self.deadline is not None and time.monotonic() > self.deadline):
            raise _BudgetHit
        if self.found.is_set():
            raise _Aborted


class _Subtree:
    def __init__(
        self,
        members: list[tuple[int, ...]],
        cons_of: list[list[int]],
        order: list[int],
        n: int,
        r: int,
        shared: _Shared,
    ) -> None:
        self.members = members
        self.cons_of = cons_of
        self.order = order
        self.n = n
        self.r = r
        self.shared = shared
        self.colors = [-1] * n
        self.domain = [(1 << r) - 1] * n
        self.ccount = [0] * len(members)
        self.ccolor = [-1] * len(members)  # -1 empty, >=0 uniform, -2 mixed
        self.trail: list[tuple] = []
        self.local_nodes = 0
        self.trace = hashlib.sha256()

    def _node(self, e: int, c: int) -> None:
        self.local_nodes += 1
        self.trace.update(b"%d:%d;" % (e, c))
        if self.local_nodes % _FLUSH_EVERY == 0:
            self.shared.flush(_FLUSH_EVERY)

    def _apply(self, e: int, c: int) -> bool:
        colors, domain = self.colors, self.domain
        colors[e] = c
        self.trail.append(("a", e))
        for ci in self.cons_of[e]:
            oldc, oldu = self.ccount[ci], self.ccolor[ci]
            self.trail.append(("k", ci, oldc, oldu))
            cnt = oldc + 1
            self.ccount[ci] = cnt
            u = c if oldc == 0 else (c if oldu == c else -2)
            self.ccolor[ci] = u
            if u >= 0:
                size = len(self.members[ci])
                if cnt == size:
                    return False
                if cnt == size - 1:
                    free = -1
                    for t in self.members[ci]:
                        if colors[t] < 0:
                            free = t
                            break
                    bit = 1 << u
                    if domain[free] & bit:
                        domain[free] &= ~bit
                        self.trail.append(("d", free, bit))
                        if domain[free] == 0:
                            return False
        return True

    def _undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            step = trail.pop()
            if step[0] == "a":
                self.colors[step[1]] = -1
            elif step[0] == "k":
                self.ccount[step[1]] = step[2]
                self.ccolor[step[1]] = step[3]
            else:
                self.domain[step[1]] |= step[2]

    def _dfs(self, depth: int, used: int) -> bool:
        if depth == len(self.order):
            return True
        e = self.order[depth]
        top = min(used + 1, self.r)
        for c in range(top):
            if not (self.domain[e] >> c) & 1:
                continue
            self._node(e, c)
            mark = len(self.trail)
            if self._apply(e, c) and self._dfs(depth + 1, max(used, c + 1)):
                return True
            self._undo(mark)
        return False

    def run(self, prefix: tuple[int, ...]) -> tuple[str, list[int] | None, bytes]:
        """Solve below a canonical prefix over the leading order positions."""
        outcome = EXHAUSTED
        colors_out: list[int] | None = None
        try:
            ok = True
            used = 0
            for depth, c in enumerate(prefix):
                e = self.order[depth]
                self._node(e, c)
                if not self._apply(e, c):
                    ok = False
                    break
                used = max(used, c + 1)
            if ok and self._dfs(len(prefix), used):
                outcome = AVOIDING
                colors_out = [c if c >= 0 else 0 for c in self.colors]
        except _BudgetHit:
            outcome = BUDGET_EXCEEDED
        except _Aborted:
            outcome = "aborted"
        with self.shared.lock:
            self.shared.nodes += self.local_nodes % _FLUSH_EVERY
        return outcome, colors_out, self.trace.digest()


def _canonical_prefixes(depth: int, r: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], used: int) -> None:
        if len(prefix) == depth:
            out.append(prefix)
            return
        for c in range(min(used + 1, r)):
            rec(prefix + (c,), max(used, c + 1))

    rec((), 0)
    return out


def _split_depth(n_order: int, r: int, workers: int) -> int:
    if workers <= 1:
        return 0
    for d in range(1, min(8, n_order) + 1):
        if len(_canonical_prefixes(d, r)) >= 4 * workers:
            return d
    return min(8, n_order)


def search_avoiding(
    family: Family,
    window: Window,
    r: int,
    budget: SearchBudget | None = None,
    table: CandidateTable | None = None,
) -> SearchResult:
    """Decide whether an r-coloring of the window avoids the family."""
    budget = budget or SearchBudget()
    start = time.perf_counter()
    if table is None:
        table = build_candidates(family, window)
    groups = table.constraint_groups()
    n = window.size()

    def result(outcome: str, coloring: Coloring | None, nodes: int, digest: str | None) -> SearchResult:
        return SearchResult(
            outcome=outcome,
            coloring=coloring,
            nodes=nodes,
            proof_log_hash=digest,
            wall_time=time.perf_counter() - start,
            family=family,
            family_text=family.serialize(),
            window_spec=window.spec_string(),
            r=r,
            budget=budget,
        )

    if not groups:
        coloring = Coloring(window, [0] * n, r)
        assert find_witness(family, coloring, table) is None
        return result(AVOIDING, coloring, 0, None)
    if len(groups[0]) == 1:
        # A single-index constraint is monochromatic under every coloring.
        digest = hashlib.sha256(b"singleton:%d" % groups[0][0]).hexdigest()
        return result(EXHAUSTED, None, 0, digest)

    members = [g for g in groups]
    cons_of: list[list[int]] = [[] for _ in range(n)]
    for ci, g in enumerate(members):
        for e in g:
            cons_of[e].append(ci)
    constrained = [e for e in range(n) if cons_of[e]]
    order = sorted(constrained, key=lambda e: (-len(cons_of[e]), e))

    deadline = (
        time.monotonic() + budget.max_seconds if budget.max_seconds is not None else None
    )
    shared = _Shared(budget.max_nodes, deadline)
    depth = _split_depth(len(order), r, budget.workers)
    prefixes = _canonical_prefixes(depth, r)

    def solve(prefix: tuple[int, ...]) -> tuple[str, list[int] | None, bytes]:
        sub = _Subtree(members, cons_of, order, n, r, shared)
        out = sub.run(prefix)
        if out[0] == AVOIDING:
            shared.found.set()
        return out

    if budget.workers <= 1:
        outcomes = [solve(p) for p in prefixes]
    else:
        with ThreadPoolExecutor(max_workers=budget.workers) as pool:
            outcomes = list(pool.map(solve, prefixes))

    nodes = shared.nodes
    for out, colors, _ in outcomes:
        if out == AVOIDING and colors is not None:
            coloring = Coloring(window, colors, r)
            if find_witness(family, coloring, table) is not None:
                raise RuntimeError("internal error: search returned a colorable witness")
            return result(AVOIDING, coloring, nodes, None)
    if any(out in (BUDGET_EXCEEDED, "aborted") for out, _, _ in outcomes):
        return result(BUDGET_EXCEEDED, None, nodes, None)
    combined = hashlib.sha256()
    for _, _, digest in outcomes:
        combined.update(digest)
    return result(EXHAUSTED, None, nodes, combined.hexdigest())


# ---------------------------------------------------------------------------
# Threshold sweeps


@dataclass(frozen=True)
class SweepRow:
    n: int
    window_spec: str
    window_size: int
    outcome: str
    nodes: int
    seconds: float
    certificate_path: str


@dataclass(frozen=True)
class ThresholdReport:
    family_text: str
    r: int
    template: str
    rows: tuple[SweepRow, ...]
    minimal_exhausted_n: int | None


def window_for_template(template: str, n: int) -> Window:
    """Instantiate the n-th window of a sweep template.

    Templates: 'int' (int:1..n), 'farey' (farey:n), 'mgrid:p1,p2,...'
    (exponent bound n).
    """
    if template == "int":
        return IntegerInterval(1, n)
    if template == "farey":
        return FareyWindow(n)
    if template.startswith("mgrid:"):
        primes = [int(p) for p in template.split(":", 1)[1].split(",")]
        return MultiplicativeGrid(primes, n)
    raise ValueError(f"unknown sweep template {template!r}")


def threshold_sweep(
    family: Family,
    r: int,
    template: str,
    n_lo: int,
    n_hi: int,
    budget: SearchBudget | None = None,
    cert_dir: str | None = None,
    stop_at_exhausted: bool = False,
) -> ThresholdReport:
    """Run search_avoiding over a window ladder, one row per size parameter.

    No monotonicity is assumed: the minimal exhausted n is reported but rows
    after it are still computed unless stop_at_exhausted is set.
    """
    from . import certificates  # local import keeps module dependencies one-way

    rows: list[SweepRow] = []
    minimal: int | None = None
    for n in range(n_lo, n_hi + 1):
        window = window_for_template(template, n)
        res = search_avoiding(family, window, r, budget=budget)
        cert_path = ""
        if cert_dir is not None and res.outcome in (AVOIDING, EXHAUSTED):
            cert = certificates.certificate_for_result(res)
            cert_path = certificates.write_certificate(
                cert, cert_dir, f"{template.replace(':', '_').replace(',', '_')}-{n}"
            )
        rows.append(
            SweepRow(
                n=n,
                window_spec=window.spec_string(),
                window_size=window.size(),
                outcome=res.outcome,
                nodes=res.nodes,
                seconds=res.wall_time,
                certificate_path=cert_path,
            )
        )
        if res.outcome == EXHAUSTED and minimal is None:
            minimal = n
            if stop_at_exhausted:
                break
    return ThresholdReport(
        family_text=family.serialize(),
        r=r,
        template=template,
        rows=tuple(rows),
        minimal_exhausted_n=minimal,
    )
