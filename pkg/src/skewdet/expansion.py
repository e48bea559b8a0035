"""Matrix expansion engine: block coefficient matrices and their ranks.

The mu-th expanded matrix stacks the pi-adic coefficient matrices of
pi^i A for i = 0..mu-1 into a mu*n x mu*n block matrix over K; block (i, d)
is zero for d < i.  Its rank omega_mu determines everything else:

* nonsingularity:   omega_(M+1) - omega_M = n,
* the valuation:    zeta = M n - omega_M,
* minor valuations: zeta_k = max_mu (k mu - omega_mu), the discrete
  Legendre conjugate of the omega sequence,
* diagonal exponents: alpha_i = min {d : omega_(d+1) - omega_d >= i},
  cross-checked against the increments zeta_i - zeta_(i-1).

The search range for the conjugate caps at M + 1: past M the rank increments
saturate at the count of exponents <= M, so later mu never improve the max
for any k up to that count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolationError
from .linalg import ScalarMatrix, rank, scalar_matrix, series_matrix_from_coeffs
from .outcomes import InfiniteBeyond, Zeta
from .series import coeff_at, left_mul_pi
from .field import scalar_zero


@dataclass(frozen=True)
class ExpansionProfile:
    """Ranks of expanded matrices and the Smith-McMillan data they encode."""

    omegas: tuple  # omega_0 .. omega_(M+1)
    rank: int
    exponents: tuple  # alpha_1 <= ... <= alpha_rank
    zetas: tuple  # zeta_0 .. zeta_rank


def _pi_power_rows(a_coeffs: Sequence[ScalarMatrix], mu: int) -> list:
    """Series entries of pi^i A for i = 0..mu-1, each correct below mu."""
    m = series_matrix_from_coeffs(list(a_coeffs[:mu]), mu)
    layers = []
    current = [[m.get(i, j) for j in range(m.n)] for i in range(m.n)]
    for _i in range(mu):
        layers.append(current)
        current = [[left_mul_pi(s) for s in row] for row in current]
    return layers


def expanded_matrix(a_coeffs: Sequence[ScalarMatrix], mu: int) -> ScalarMatrix:
    """The mu-th expanded matrix of a proper matrix given by coefficients."""
    if mu <= 0:
        raise ContractViolationError("expansion order must be positive")
    spec = a_coeffs[0].spec
    n = a_coeffs[0].n_rows
    layers = _pi_power_rows(a_coeffs, mu)
    zero = scalar_zero(spec)
    rows = []
    for i in range(mu):
        layer = layers[i]
        for r in range(n):
            row = []
            for d in range(mu):
                if d < i:
                    row.extend([zero] * n)
                else:
                    row.extend(coeff_at(layer[r][c], d) for c in range(n))
            rows.append(row)
    return scalar_matrix(spec, rows)


def omega(a_coeffs: Sequence[ScalarMatrix], mu: int) -> int:
    """Rank of the mu-th expanded matrix; omega_0 = 0."""
    if mu == 0:
        return 0
    return rank(expanded_matrix(a_coeffs, mu))


def omega_sequence(a_coeffs: Sequence[ScalarMatrix], top: int) -> tuple:
    """omega_0 .. omega_top; each order is a leading submatrix of the largest."""
    if top == 0:
        return (0,)
    big = expanded_matrix(a_coeffs, top)
    n = a_coeffs[0].n_rows
    out = [0]
    for mu in range(1, top + 1):
        sub = big if mu == top else _leading_submatrix(big, mu * n)
        out.append(rank(sub))
    return tuple(out)


def _leading_submatrix(m: ScalarMatrix, k: int) -> ScalarMatrix:
    return scalar_matrix(m.spec, [list(m.row(i)[:k]) for i in range(k)])


def zeta_expand(
    a_coeffs: Sequence[ScalarMatrix], budget: int
) -> Zeta | InfiniteBeyond:
    """Valuation via two expanded ranks, under zeta <= budget or singular.

    The rank test certifies that every diagonal exponent is at most the
    budget; the recovered value is then exact even when it exceeds the
    budget, which can only happen on inputs violating the precondition.
    Such values are folded into InfiniteBeyond so that all engines agree
    on every input.
    """
    n = a_coeffs[0].n_rows
    big_mat = expanded_matrix(a_coeffs, budget + 1)
    big = rank(big_mat)
    small = rank(_leading_submatrix(big_mat, budget * n)) if budget > 0 else 0
    if big - small < n:
        return InfiniteBeyond(budget)
    value = budget * n - small
    if value > budget:
        return InfiniteBeyond(budget)
    return Zeta(value)


def zeta_sequence(a_coeffs: Sequence[ScalarMatrix], budget: int) -> tuple:
    """zeta_0 .. zeta_r with r = omega_(M+1) - omega_M, by Legendre conjugacy."""
    omegas = omega_sequence(a_coeffs, budget + 1)
    r = omegas[budget + 1] - omegas[budget]
    return tuple(
        max(k * mu - omegas[mu] for mu in range(budget + 2)) for k in range(r + 1)
    )


def smith_exponents(a_coeffs: Sequence[ScalarMatrix], budget: int) -> ExpansionProfile:
    """Full expansion profile; the two derivations of alpha must agree."""
    omegas = omega_sequence(a_coeffs, budget + 1)
    r = omegas[budget + 1] - omegas[budget]
    counts = [omegas[d + 1] - omegas[d] for d in range(budget + 1)]
    exponents = []
    for i in range(1, r + 1):
        d = next(d for d, c in enumerate(counts) if c >= i)
        exponents.append(d)
    zetas = tuple(
        max(k * mu - omegas[mu] for mu in range(budget + 2)) for k in range(r + 1)
    )
    for i in range(1, r + 1):
        if exponents[i - 1] != zetas[i] - zetas[i - 1]:
            raise ContractViolationError(
                "exponent derivations disagree: rank counts vs zeta increments"
            )
    return ExpansionProfile(omegas, r, tuple(exponents), zetas)
