"""Exact linear algebra over K and over truncated series.

Ranks over K are exact.  The generic path is fraction-exact Gaussian
elimination on Scalars (``rank_reference``); ``rank`` dispatches to faster
routes with identical results: mod-p elimination and F_p[t] Bareiss kernels
for prime-field bases, integer Bareiss for the rationals, and for Q(t) an
evaluation bound (a nonzero k-minor of degree <= D survives at one of any
D + 1 distinct integer points).

``series_diagonalize`` is the diagonalization oracle: it reproduces the
constructive Smith-McMillan elimination, choosing a minimum-valuation pivot,
clearing its column with right divisions, and recursing, under a valuation
budget M.  Entries start at horizon >= M + 1 and the triangular precision
tracking of the series layer keeps every decision inside known coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _int_gcd
from typing import NamedTuple, Sequence

from . import kernels
from . import polyring as pr
from .errors import ContractViolationError, PrecisionError, SpecMismatchError
from .field import (
    FieldSpec,
    PrimeField,
    RationalFunctions,
    Rationals,
    Scalar,
    constant_ops,
    scalar_is_zero,
    scalar_one,
    scalar_zero,
)
from .series import (
    Known,
    Series,
    coeff_at,
    invert_unit,
    left_mul_pi,
    right_shift,
    scalar_left_mul,
    series_add,
    series_mul,
    series_sub,
    series_zero,
    truncate,
    val_lower_bound,
    valuation,
)

import numpy as np


@dataclass(frozen=True, slots=True)
class ScalarMatrix:
    spec: FieldSpec
    n_rows: int
    n_cols: int
    entries: tuple

    def __post_init__(self):
        if self.n_rows <= 0 or self.n_cols <= 0:
            raise ContractViolationError("matrix dimensions must be positive")
        if len(self.entries) != self.n_rows * self.n_cols:
            raise ContractViolationError("entry count does not match shape")

    def get(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.n_cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.n_cols : (i + 1) * self.n_cols]

    def __repr__(self):
        rows = "; ".join(
            " ".join(repr(c) for c in self.row(i)) for i in range(self.n_rows)
        )
        return f"ScalarMatrix[{rows}]"


def scalar_matrix(spec: FieldSpec, rows: Sequence[Sequence[Scalar]]) -> ScalarMatrix:
    n_rows = len(rows)
    n_cols = len(rows[0])
    flat = []
    for r in rows:
        if len(r) != n_cols:
            raise ContractViolationError("ragged matrix rows")
        flat.extend(r)
    for e in flat:
        if e.spec != spec:
            raise SpecMismatchError("matrix entry under a different spec")
    return ScalarMatrix(spec, n_rows, n_cols, tuple(flat))


def scalar_identity(spec: FieldSpec, n: int) -> ScalarMatrix:
    one, zero = scalar_one(spec), scalar_zero(spec)
    return ScalarMatrix(
        spec, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n))
    )


def scalar_mat_mul(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    if a.n_cols != b.n_rows or a.spec != b.spec:
        raise SpecMismatchError("incompatible scalar matrix product")
    rows = []
    for i in range(a.n_rows):
        arow = a.row(i)
        out = []
        for j in range(b.n_cols):
            acc = scalar_zero(a.spec)
            for k in range(a.n_cols):
                if not scalar_is_zero(arow[k]):
                    acc = acc + arow[k] * b.get(k, j)
            out.append(acc)
        rows.append(out)
    return scalar_matrix(a.spec, rows)


# --- rank ---


def rank_reference(m: ScalarMatrix) -> int:
    """Fraction-exact Gaussian elimination with first-nonzero pivoting."""
    work = [list(m.row(i)) for i in range(m.n_rows)]
    rank = 0
    for c in range(m.n_cols):
        piv = next(
            (r for r in range(rank, m.n_rows) if not scalar_is_zero(work[r][c])), None
        )
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv_head = work[rank][c]
        for r in range(rank + 1, m.n_rows):
            if scalar_is_zero(work[r][c]):
                continue
            f = work[r][c] / inv_head
            work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == m.n_rows:
            break
    return rank


def _rank_bareiss_int(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free Bareiss."""
    n_rows, n_cols = len(rows), len(rows[0])
    a = [row[:] for row in rows]
    prev = 1
    rank = 0
    for _step in range(min(n_rows, n_cols)):
        piv = next(
            (
                (r, c)
                for r in range(rank, n_rows)
                for c in range(rank, n_cols)
                if a[r][c] != 0
            ),
            None,
        )
        if piv is None:
            break
        pr_, pc_ = piv
        if pr_ != rank:
            a[rank], a[pr_] = a[pr_], a[rank]
        if pc_ != rank:
            for row in a:
                row[rank], row[pc_] = row[pc_], row[rank]
        pivot = a[rank][rank]
        for r in range(rank + 1, n_rows):
            for c in range(rank + 1, n_cols):
                a[r][c] = (pivot * a[r][c] - a[r][rank] * a[rank][c]) // prev
            a[r][rank] = 0
        prev = pivot
        rank += 1
    return rank


def _int_rows_rationals(m: ScalarMatrix) -> list[list[int]]:
    out = []
    for i in range(m.n_rows):
        fracs = [e.val for e in m.row(i)]
        den = 1
        for f in fracs:
            den = den * f.denominator // _int_gcd(den, f.denominator)
        out.append([int(f * den) for f in fracs])
    return out


def _rank_fp_ratfunc(m: ScalarMatrix) -> int:
    base = m.spec.base
    F = constant_ops(base)
    p = base.base.p
    rows = []
    for i in range(m.n_rows):
        pairs = [e.val for e in m.row(i)]
        lcm = (F.one,)
        for _num, den in pairs:
            g = pr.pgcd_monic(F, lcm, den)
            q, _ = pr.pdivmod(F, den, g)
            lcm = pr.pmul(F, lcm, q)
        row = []
        for num, den in pairs:
            q, _ = pr.pdivmod(F, lcm, den)
            row.append(pr.pmul(F, num, q))
        rows.append(row)
    return kernels.rank_poly_mod_p(rows, p)


def _rank_qt_by_evaluation(m: ScalarMatrix) -> int:
    """Rank over Q(t): clear denominators to Z[t], then evaluate.

    Any nonzero k-minor is a polynomial of degree at most
    D = sum over rows of the max entry degree, so scanning D + 1 distinct
    integer points and taking the best rank is exact.
    """
    F = constant_ops(m.spec.base)
    int_rows: list[list[tuple[int, ...]]] = []
    for i in range(m.n_rows):
        pairs = [e.val for e in m.row(i)]
        lcm = (F.one,)
        for _num, den in pairs:
            g = pr.pgcd_monic(F, lcm, den)
            q, _ = pr.pdivmod(F, den, g)
            lcm = pr.pmul(F, lcm, q)
        cleared = []
        for num, den in pairs:
            q, _ = pr.pdivmod(F, lcm, den)
            cleared.append(pr.pmul(F, num, q))
        den_lcm = 1
        for poly in cleared:
            for c in poly:
                den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
        int_row = [tuple(int(c * den_lcm) for c in poly) for poly in cleared]
        content = 0
        for poly in int_row:
            for c in poly:
                content = _int_gcd(content, c)
        if content > 1:
            int_row = [tuple(c // content for c in poly) for poly in int_row]
        int_rows.append(int_row)
    bound = sum(
        max((len(q) - 1 for q in row if q), default=0) for row in int_rows
    )
    best = 0
    full = min(m.n_rows, m.n_cols)
    point = 0
    for k in range(bound + 1):
        ev = [
            [_eval_int_poly(q, point) for q in row]
            for row in int_rows
        ]
        best = max(best, _rank_bareiss_int(ev))
        if best == full:
            break
        point = -point + (1 if point <= 0 else 0)
    return best


def _eval_int_poly(q: tuple[int, ...], x: int) -> int:
    acc = 0
    for c in reversed(q):
        acc = acc * x + c
    return acc


def rank(m: ScalarMatrix) -> int:
    """Exact rank of a matrix over K."""
    base = m.spec.base
    if isinstance(base, Rationals):
        return _rank_bareiss_int(_int_rows_rationals(m))
    if isinstance(base, PrimeField):
        arr = np.array(
            [[m.get(i, j).val for j in range(m.n_cols)] for i in range(m.n_rows)],
            dtype=np.int64,
        )
        return kernels.rank_mod_p(arr, base.p)
    if isinstance(base.base, PrimeField):
        return _rank_fp_ratfunc(m)
    return _rank_qt_by_evaluation(m)


def zero_row_transform(m: ScalarMatrix) -> tuple[ScalarMatrix, int]:
    """An invertible U over K such that U m has exactly rank(m) nonzero rows.

    U is assembled from the row swaps and eliminations of a forward Gaussian
    pass, so it is a product of elementary operations.
    """
    if m.n_rows != m.n_cols:
        raise ContractViolationError("zero_row_transform expects a square matrix")
    n = m.n_rows
    work = [list(m.row(i)) for i in range(n)]
    u = [list(scalar_identity(m.spec, n).row(i)) for i in range(n)]
    rank_ = 0
    for c in range(n):
        piv = next((r for r in range(rank_, n) if not scalar_is_zero(work[r][c])), None)
        if piv is None:
            continue
        work[rank_], work[piv] = work[piv], work[rank_]
        u[rank_], u[piv] = u[piv], u[rank_]
        head = work[rank_][c]
        for r in range(rank_ + 1, n):
            if scalar_is_zero(work[r][c]):
                continue
            f = work[r][c] / head
            work[r] = [x - f * y for x, y in zip(work[r], work[rank_])]
            u[r] = [x - f * y for x, y in zip(u[r], u[rank_])]
        rank_ += 1
    return scalar_matrix(m.spec, u), rank_


# --- series matrices ---


@dataclass(frozen=True, slots=True)
class SeriesMatrix:
    spec: FieldSpec
    n: int
    entries: tuple
    horizon: int

    def get(self, i: int, j: int) -> Series:
        return self.entries[i * self.n + j]


def series_matrix(rows: Sequence[Sequence[Series]]) -> SeriesMatrix:
    """Build a square series matrix, truncated to one uniform horizon."""
    n = len(rows)
    flat = [s for row in rows for s in row]
    if len(flat) != n * n:
        raise ContractViolationError("series matrix must be square")
    spec = flat[0].spec
    horizon = min(s.prec for s in flat)
    flat = [truncate(s, horizon - 1) for s in flat]
    for s in flat:
        if s.spec != spec:
            raise SpecMismatchError("series entries under different specs")
    return SeriesMatrix(spec, n, tuple(flat), horizon)


def series_matrix_from_coeffs(
    coeffs: Sequence[ScalarMatrix], horizon: int
) -> SeriesMatrix:
    """Exact polynomial input sum_d coeffs[d] pi^d as a series matrix."""
    from .series import series_from_coeffs

    spec = coeffs[0].spec
    n = coeffs[0].n_rows
    for c in coeffs:
        if c.n_rows != n or c.n_cols != n or c.spec != spec:
            raise ContractViolationError("coefficient matrices must be square and uniform")
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(
                series_from_coeffs(
                    spec, [c.get(i, j) for c in coeffs[:horizon]], horizon
                )
            )
        rows.append(row)
    return series_matrix(rows)


def mat_mul_scalar_series(u: ScalarMatrix, b: SeriesMatrix) -> SeriesMatrix:
    """U B with U over K: K-coefficients act on each pi-coefficient from the left."""
    if u.n_cols != b.n or u.spec != b.spec:
        raise SpecMismatchError("incompatible scalar-series product")
    rows = []
    for i in range(u.n_rows):
        row = []
        for j in range(b.n):
            acc = series_zero(b.spec, b.horizon)
            for k in range(b.n):
                c = u.get(i, k)
                if not scalar_is_zero(c):
                    acc = series_add(acc, scalar_left_mul(c, b.get(k, j)))
            row.append(acc)
        rows.append(row)
    return series_matrix(rows)


def diag_scale(b: SeriesMatrix, side: str, exponents: Sequence[int]) -> SeriesMatrix:
    """D(pi^e) B (side 'left') or B D(pi^e) (side 'right').

    Left scaling must use nonnegative exponents: row i is multiplied by pi^e_i
    through iterated left multiplication, and pi^(-1) cannot act from the left.
    Right scaling only shifts exponents.
    """
    if len(exponents) != b.n:
        raise ContractViolationError("exponent vector length must match the matrix")
    rows = []
    if side == "left":
        if any(e < 0 for e in exponents):
            raise ContractViolationError("left diag scaling requires exponents >= 0")
        for i in range(b.n):
            row = []
            for j in range(b.n):
                s = b.get(i, j)
                for _ in range(exponents[i]):
                    s = left_mul_pi(s)
                row.append(s)
            rows.append(row)
    elif side == "right":
        for i in range(b.n):
            rows.append(
                [right_shift(b.get(i, j), exponents[j]) for j in range(b.n)]
            )
    else:
        raise ContractViolationError("side must be 'left' or 'right'")
    return series_matrix(rows)


def coeff_matrix(b: SeriesMatrix, d: int) -> ScalarMatrix:
    """The matrix of pi^d coefficients; d must be below the horizon."""
    if d >= b.horizon:
        raise PrecisionError(f"pi^{d} coefficients beyond horizon {b.horizon}")
    return scalar_matrix(
        b.spec,
        [[coeff_at(b.get(i, j), d) for j in range(b.n)] for i in range(b.n)],
    )


def series_mat_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    if a.n != b.n or a.spec != b.spec:
        raise SpecMismatchError("incompatible series matrix product")
    rows = []
    for i in range(a.n):
        row = []
        for j in range(b.n):
            acc = None
            for k in range(a.n):
                term = series_mul(a.get(i, k), b.get(k, j))
                acc = term if acc is None else series_add(acc, term)
            row.append(acc)
        rows.append(row)
    return series_matrix(rows)


# --- diagonalization oracle ---


class Finite(NamedTuple):
    exponents: tuple
    zeta: int


class SingularOrBeyond(NamedTuple):
    budget: int


def series_diagonalize(a: SeriesMatrix, budget: int) -> Finite | SingularOrBeyond:
    """Smith-McMillan exponents of a proper matrix, or SingularOrBeyond.

    Requires horizon >= budget + 1.  Finds a minimum-valuation pivot (lowest
    row, then column, among ties), clears its column with right divisions,
    and recurses on the trailing block; the first-row entries vanish exactly
    under the matching column operations, so they are dropped rather than
    recomputed.  Returns SingularOrBeyond when a block is zero to precision
    or the accumulated pivot valuation would exceed the budget.
    """
    if budget < 0:
        raise ContractViolationError("budget must be nonnegative")
    if a.horizon < budget + 1:
        raise PrecisionError(
            f"horizon {a.horizon} too small for budget {budget}"
        )
    for s in a.entries:
        if val_lower_bound(s) < 0:
            raise ContractViolationError("series_diagonalize requires a proper matrix")
    block = [[a.get(i, j) for j in range(a.n)] for i in range(a.n)]
    exponents = []
    total = 0
    while block:
        best = None
        for i, row in enumerate(block):
            for j, s in enumerate(row):
                v = valuation(s)
                if isinstance(v, Known) and (best is None or v.value < best[0]):
                    best = (v.value, i, j)
        if best is None:
            return SingularOrBeyond(budget)
        v, bi, bj = best
        if total + v > budget:
            return SingularOrBeyond(budget)
        total += v
        exponents.append(v)
        if bi != 0:
            block[0], block[bi] = block[bi], block[0]
        if bj != 0:
            for row in block:
                row[0], row[bj] = row[bj], row[0]
        pivot = block[0][0]
        unit_inv = invert_unit(right_shift(pivot, -v))
        new_block = []
        for row in block[1:]:
            head = row[0]
            if head.coeffs:
                mult = series_mul(right_shift(head, -v), unit_inv)
                new_row = [
                    series_sub(x, series_mul(mult, y))
                    for x, y in zip(row[1:], block[0][1:])
                ]
            else:
                new_row = row[1:]
            new_block.append(new_row)
        block = new_block
    return Finite(tuple(exponents), total)
