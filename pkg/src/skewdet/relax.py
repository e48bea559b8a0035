"""Combinatorial relaxation engine for the determinant valuation.

State per iteration: the working matrix C and the accumulated valuation
gamma, with the loop invariant that C's horizon is budget - gamma + 1.  Each
round solves the minimum-weight perfect matching dual on C's valuation
pattern (rows kept nonpositive so the rescaling never multiplies by pi^(-1)
from the left), rescales, truncates, and tests the pi^0 coefficient matrix
for full rank; on failure a row transform collapses its rank into zero rows
and the loop continues.  The dual objective strictly increases, so gamma
does too, and the iteration count is bounded by the budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Callable, Optional, Sequence

from .errors import ContractViolationError
from .linalg import (
    ScalarMatrix,
    SeriesMatrix,
    coeff_matrix,
    diag_scale,
    mat_mul_scalar_series,
    rank,
    series_matrix,
    series_matrix_from_coeffs,
    zero_row_transform,
)
from .matching import (
    ExceedsThreshold,
    Infinite,
    WeightedBipartite,
    min_weight_pm_dual,
    weighted_bipartite,
)
from .outcomes import InfiniteBeyond, Zeta
from .series import Known, truncate, valuation


@dataclass(frozen=True)
class RelaxState:
    """Snapshot at the top of a relaxation iteration."""

    c: SeriesMatrix
    gamma: int
    k: int


def support_weights(c: SeriesMatrix) -> WeightedBipartite:
    """Valuation weights of a proper series matrix; zero-to-precision is absent.

    Absence for AtLeast entries is sound here because the relaxation keeps
    the horizon at budget - gamma + 1: anything hiding beyond it cannot
    change the answer within the budget.
    """
    grid = []
    for i in range(c.n):
        row = []
        for j in range(c.n):
            v = valuation(c.get(i, j))
            row.append(v.value if isinstance(v, Known) else None)
        grid.append(row)
    return weighted_bipartite(grid)


def _truncate_matrix(b: SeriesMatrix, m: int) -> SeriesMatrix:
    return series_matrix(
        [[truncate(b.get(i, j), m) for j in range(b.n)] for i in range(b.n)]
    )


def zeta_comb_relax(
    a_coeffs: Sequence[ScalarMatrix],
    budget: int,
    trace_sink: Optional[IO[str]] = None,
    state_hook: Optional[Callable[[RelaxState], None]] = None,
) -> Zeta | InfiniteBeyond:
    """Valuation of the Dieudonne determinant of sum_d a_coeffs[d] pi^d.

    Returns Zeta(z) when z <= budget, InfiniteBeyond(budget) otherwise
    (in particular for singular input).  Input beyond pi^budget is
    pre-truncated; that never changes the answer under this contract.
    """
    if budget < 0:
        raise ContractViolationError("budget must be nonnegative")
    coeffs = list(a_coeffs[: budget + 1])
    n = coeffs[0].n_rows
    c = series_matrix_from_coeffs(coeffs, budget + 1)
    gamma = 0
    iteration = 0
    while True:
        if iteration > budget + 1:
            raise ContractViolationError("relaxation failed to make progress")
        if state_hook is not None:
            state_hook(RelaxState(c, gamma, iteration))
        weights = support_weights(c)
        dual = min_weight_pm_dual(weights, abort_threshold=budget - gamma)
        if isinstance(dual.value, (Infinite, ExceedsThreshold)):
            return InfiniteBeyond(budget)
        gamma += dual.value
        # The from-zero unit-step ascent guarantees max(-dp) + max(dq) <= value
        # (each step lowers at most every row once and raises at least as many
        # columns), so the rescaled horizon never drops below the new target.
        b = diag_scale(c, "left", [-e for e in dual.dp])
        b = diag_scale(b, "right", [-e for e in dual.dq])
        b = _truncate_matrix(b, budget - gamma)
        tight = coeff_matrix(b, 0)
        tight_rank = rank(tight)
        if trace_sink is not None:
            record = {
                "iteration": iteration,
                "gamma": gamma,
                "matching_value": dual.value,
                "dp": list(dual.dp),
                "dq": list(dual.dq),
                "tight_rank": tight_rank,
            }
            trace_sink.write(json.dumps(record) + "\n")
        if tight_rank == n:
            return Zeta(gamma)
        u, _r = zero_row_transform(tight)
        c = mat_mul_scalar_series(u, b)
        iteration += 1
