"""Bipartite matching machinery for valuation-weighted supports.

The weighted instance records, for each cell of an n x n grid, either a
nonnegative integer weight (the known valuation of the entry) or absence
(the entry is zero, possibly only to precision).  The dual ascent follows
the unit-step update: pick a Konig cover (I, J) of the tight subgraph with
|I| + |J| < n, lower the row duals on I by one and raise the column duals
off J by one.  Started from zero this keeps the row duals nonpositive and
strictly increases the dual objective, and it terminates at a minimum-weight
perfect matching, or reports that none exists, or aborts once the objective
passes a caller-supplied threshold.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .errors import ContractViolationError

INF = float("inf")


@dataclass(frozen=True, slots=True)
class WeightedBipartite:
    n: int
    weights: tuple  # n*n row-major, int weight or None for absent

    def weight(self, i: int, j: int) -> Optional[int]:
        return self.weights[i * self.n + j]

    def present(self, i: int, j: int) -> bool:
        return self.weights[i * self.n + j] is not None


def weighted_bipartite(grid: Sequence[Sequence[Optional[int]]]) -> WeightedBipartite:
    n = len(grid)
    flat = []
    for row in grid:
        if len(row) != n:
            raise ContractViolationError("weight grid must be square")
        for w in row:
            if w is not None and w < 0:
                raise ContractViolationError("weights must be nonnegative")
            flat.append(w)
    return WeightedBipartite(n, tuple(flat))


class Infinite(NamedTuple):
    """No perfect matching exists in the support."""


class ExceedsThreshold(NamedTuple):
    threshold: int


@dataclass(frozen=True, slots=True)
class DualSolution:
    dp: tuple  # row duals, all <= 0
    dq: tuple  # column duals
    value: object  # int | Infinite | ExceedsThreshold


def max_matching(g: WeightedBipartite) -> dict:
    """Maximum-cardinality matching over the present edges (Hopcroft-Karp).

    Returns {row: column}.  Deterministic: adjacency is scanned in ascending
    column order and augmentations in ascending row order.
    """
    n = g.n
    adj = [[j for j in range(n) if g.present(i, j)] for i in range(n)]
    match_row = [-1] * n
    match_col = [-1] * n
    dist = [0] * n

    def bfs() -> bool:
        q = deque()
        found = False
        for i in range(n):
            if match_row[i] < 0:
                dist[i] = 0
                q.append(i)
            else:
                dist[i] = -1
        while q:
            i = q.popleft()
            for j in adj[i]:
                k = match_col[j]
                if k < 0:
                    found = True
                elif dist[k] < 0:
                    dist[k] = dist[i] + 1
                    q.append(k)
        return found

    def dfs(i: int) -> bool:
        for j in adj[i]:
            k = match_col[j]
            if k < 0 or (dist[k] == dist[i] + 1 and dfs(k)):
                match_row[i] = j
                match_col[j] = i
                return True
        dist[i] = -1
        return False

    while bfs():
        for i in range(n):
            if match_row[i] < 0:
                dfs(i)
    return {i: j for i, j in enumerate(match_row) if j >= 0}


def vertex_cover(g: WeightedBipartite, matching: dict) -> tuple[frozenset, frozenset]:
    """Konig cover (I rows, J columns) with |I| + |J| = |matching|.

    I is the set of rows not reachable by alternating paths from unmatched
    rows; J is the set of reachable columns.
    """
    n = g.n
    match_col = {j: i for i, j in matching.items()}
    reach_rows = set(i for i in range(n) if i not in matching)
    reach_cols: set = set()
    queue = deque(reach_rows)
    while queue:
        i = queue.popleft()
        for j in range(n):
            if g.present(i, j) and j not in reach_cols:
                reach_cols.add(j)
                k = match_col.get(j)
                if k is not None and k not in reach_rows:
                    reach_rows.add(k)
                    queue.append(k)
    rows = frozenset(i for i in range(n) if i not in reach_rows)
    cols = frozenset(reach_cols)
    return rows, cols


def tight_subgraph(
    g: WeightedBipartite, dp: Sequence[int], dq: Sequence[int]
) -> WeightedBipartite:
    """The subgraph of edges with dp_i + dq_j = w(i, j); duals must be feasible."""
    n = g.n
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            w = g.weight(i, j)
            if w is None:
                row.append(None)
            else:
                if dp[i] + dq[j] > w:
                    raise ContractViolationError(
                        f"infeasible dual at ({i}, {j}): {dp[i]} + {dq[j]} > {w}"
                    )
                row.append(w if dp[i] + dq[j] == w else None)
        grid.append(row)
    return weighted_bipartite(grid)


def min_weight_pm_dual(
    g: WeightedBipartite,
    abort_threshold: Optional[int] = None,
    trace: Optional[list] = None,
) -> DualSolution:
    """Minimum-weight perfect matching value by dual ascent from zero duals.

    Returns the optimal integral duals with nonpositive row part and the
    matching value; Infinite when the support has no perfect matching;
    ExceedsThreshold as soon as the running objective passes the threshold.
    """
    n = g.n
    if len(max_matching(g)) < n:
        return DualSolution((0,) * n, (0,) * n, Infinite())
    dp = [0] * n
    dq = [0] * n
    while True:
        value = sum(dp) + sum(dq)
        if trace is not None:
            trace.append((tuple(dp), tuple(dq), value))
        if abort_threshold is not None and value > abort_threshold:
            return DualSolution(tuple(dp), tuple(dq), ExceedsThreshold(abort_threshold))
        tight = tight_subgraph(g, dp, dq)
        matching = max_matching(tight)
        if len(matching) == n:
            return DualSolution(tuple(dp), tuple(dq), value)
        rows, cols = vertex_cover(tight, matching)
        if len(rows) + len(cols) >= n:
            raise ContractViolationError("cover size must stay below n")
        for i in rows:
            dp[i] -= 1
        for j in range(n):
            if j not in cols:
                dq[j] += 1
