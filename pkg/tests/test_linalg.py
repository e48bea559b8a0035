from random import Random

import pytest

from skewdet import (
    ContractViolationError,
    Finite,
    Known,
    PrecisionError,
    SingularOrBeyond,
    coeff_matrix,
    diag_scale,
    mat_mul_scalar_series,
    rank,
    scalar_from_int,
    scalar_identity,
    scalar_matrix,
    scalar_one,
    scalar_t,
    scalar_zero,
    series_diagonalize,
    series_from_coeffs,
    series_mat_mul,
    series_matrix,
    series_matrix_from_coeffs,
    zero_row_transform,
)
from skewdet.linalg import rank_reference, scalar_mat_mul
from skewdet.series import series_eq_to, valuation
from skewdet.testing import random_coeff_list, random_scalar_matrix


def ints(spec, rows):
    return scalar_matrix(
        spec, [[scalar_from_int(spec, x) for x in row] for row in rows]
    )


def test_rank_examples(spec_q, spec_qt_diff):
    assert rank(ints(spec_q, [[1, 1], [1, 1]])) == 1
    assert rank(ints(spec_q, [[0, 0, 0], [0, 0, 0], [0, 0, 0]])) == 0
    t = scalar_t(spec_qt_diff)
    one = scalar_one(spec_qt_diff)
    m = scalar_matrix(spec_qt_diff, [[t, one], [one, one / t]])
    assert rank(m) == 1
    assert rank_reference(m) == 1


def test_rank_dispatch_matches_reference(all_twist_specs):
    rng = Random(73)
    for spec in all_twist_specs:
        for _ in range(25):
            m = random_scalar_matrix(spec, rng, rng.randint(1, 4), max_deg=1)
            assert rank(m) == rank_reference(m)


def test_rank_rationals_matches_reference(spec_q, spec_f5):
    rng = Random(79)
    for spec in (spec_q, spec_f5):
        for _ in range(40):
            m = random_scalar_matrix(spec, rng, rng.randint(1, 5))
            assert rank(m) == rank_reference(m)


def test_zero_row_transform_examples(spec_q):
    m = ints(spec_q, [[1, 1], [1, 1]])
    u, r = zero_row_transform(m)
    assert r == 1
    um = scalar_mat_mul(u, m)
    zero = scalar_zero(spec_q)
    assert um.row(1) == (zero, zero)
    assert um.row(0) == tuple(ints(spec_q, [[1, 1]]).row(0))
    ident = scalar_identity(spec_q, 3)
    u2, r2 = zero_row_transform(ident)
    assert r2 == 3 and u2 == ident
    z = ints(spec_q, [[0, 0], [0, 0]])
    u3, r3 = zero_row_transform(z)
    assert r3 == 0 and u3 == scalar_identity(spec_q, 2)


def test_zero_row_transform_contract_randomized(all_twist_specs):
    rng = Random(83)
    for spec in all_twist_specs:
        for _ in range(15):
            n = rng.randint(1, 4)
            m = random_scalar_matrix(spec, rng, n, density=0.7, max_deg=1)
            u, r = zero_row_transform(m)
            assert r == rank(m)
            um = scalar_mat_mul(u, m)
            zero = scalar_zero(spec)
            nonzero_rows = sum(
                1 for i in range(n) if any(e != zero for e in um.row(i))
            )
            assert nonzero_rows == r
            # U reduces to the identity by elementary operations: full rank
            assert rank(u) == n


def test_mat_mul_scalar_series(spec_qt_diff):
    spec = spec_qt_diff
    one = scalar_one(spec)
    t = scalar_t(spec)
    coeffs = [ints(spec, [[1, 1], [1, 1]]), ints(spec, [[0, 0], [0, 1]])]
    b = series_matrix_from_coeffs(coeffs, 3)
    ident = scalar_identity(spec, 2)
    assert mat_mul_scalar_series(ident, b).entries == b.entries
    swap = scalar_matrix(spec, [[scalar_zero(spec), one], [one, scalar_zero(spec)]])
    swapped = mat_mul_scalar_series(swap, b)
    assert swapped.get(0, 1) == b.get(1, 1)
    minus = scalar_matrix(spec, [[one, scalar_zero(spec)], [-one, one]])
    diff = mat_mul_scalar_series(minus, b)
    assert valuation(diff.get(1, 0)) != Known(0)


def test_diag_scale(spec_qt_comm):
    spec = spec_qt_comm
    one = scalar_one(spec)
    b = series_matrix_from_coeffs([ints(spec, [[1, 0], [0, 1]])], 4)
    same = diag_scale(b, "left", [0, 0])
    assert series_eq_to(same.get(0, 0), b.get(0, 0), same.horizon)
    scaled = diag_scale(b, "left", [1, 0])
    assert valuation(scaled.get(0, 0)) == Known(1)
    assert valuation(scaled.get(1, 1)) == Known(0)
    shifted = diag_scale(b, "right", [-1, 0])
    assert valuation(shifted.get(0, 0)) == Known(-1)
    with pytest.raises(ContractViolationError):
        diag_scale(b, "left", [-1, 0])


def test_coeff_matrix(spec_qt_comm):
    spec = spec_qt_comm
    coeffs = [ints(spec, [[1, 0], [0, 0]]), ints(spec, [[1, 1], [0, 0]])]
    b = series_matrix_from_coeffs(coeffs, 3)
    c0 = coeff_matrix(b, 0)
    c1 = coeff_matrix(b, 1)
    assert c0 == coeffs[0]
    assert c1 == coeffs[1]
    with pytest.raises(PrecisionError):
        coeff_matrix(b, 3)


def test_diagonalize_diagonal_case(spec_q):
    spec = spec_q
    coeffs = [
        ints(spec, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        ints(spec, [[0, 0, 0], [0, 1, 0], [0, 0, 0]]),
        ints(spec, [[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
    ]
    m = series_matrix_from_coeffs(coeffs, 4)
    res = series_diagonalize(m, 3)
    assert res == Finite((0, 1, 2), 3)


def test_diagonalize_2x2_perturbation(spec_q):
    coeffs = [ints(spec_q, [[1, 1], [1, 1]]), ints(spec_q, [[0, 0], [0, 1]])]
    m = series_matrix_from_coeffs(coeffs, 3)
    assert series_diagonalize(m, 2) == Finite((0, 1), 1)


def test_diagonalize_differential_witness(spec_qt_diff):
    spec = spec_qt_diff
    t = scalar_t(spec)
    one = scalar_one(spec)
    zero = scalar_zero(spec)
    a0 = scalar_matrix(spec, [[zero, zero], [one, t]])
    a1 = scalar_matrix(spec, [[one, t], [zero, zero]])
    m = series_matrix_from_coeffs([a0, a1], 5)
    res = series_diagonalize(m, 4)
    assert isinstance(res, Finite) and res.zeta == 2


def test_diagonalize_singular_and_budget(spec_q):
    sing = [ints(spec_q, [[1, 1], [1, 1]])]
    m = series_matrix_from_coeffs(sing, 5)
    assert series_diagonalize(m, 4) == SingularOrBeyond(4)
    # nonsingular but beyond budget
    coeffs = [ints(spec_q, [[1, 0], [0, 0]]), ints(spec_q, [[0, 0], [0, 0]]),
              ints(spec_q, [[0, 0], [0, 1]])]
    m2 = series_matrix_from_coeffs(coeffs, 2)
    assert series_diagonalize(m2, 1) == SingularOrBeyond(1)


def test_diagonalize_requires_horizon(spec_q):
    m = series_matrix_from_coeffs([ints(spec_q, [[1]])], 2)
    with pytest.raises(PrecisionError):
        series_diagonalize(m, 5)


def test_exponents_nondecreasing_nonnegative(all_twist_specs):
    rng = Random(89)
    for spec in all_twist_specs:
        for _ in range(20):
            n = rng.randint(1, 3)
            ell = rng.randint(0, 2)
            budget = max(ell * n, 1)
            coeffs = random_coeff_list(spec, rng, n, ell)
            m = series_matrix_from_coeffs(coeffs, budget + 1)
            res = series_diagonalize(m, budget)
            if isinstance(res, Finite):
                assert all(e >= 0 for e in res.exponents)
                assert list(res.exponents) == sorted(res.exponents)
                assert res.zeta == sum(res.exponents)


def test_multiplicativity_vd1(all_twist_specs):
    rng = Random(97)
    for spec in all_twist_specs:
        done = 0
        while done < 6:
            n = rng.randint(1, 2)
            a = random_coeff_list(spec, rng, n, 1)
            b = random_coeff_list(spec, rng, n, 1)
            horizon = 2 * n + 2
            ma = series_matrix_from_coeffs(a, horizon)
            mb = series_matrix_from_coeffs(b, horizon)
            ra = series_diagonalize(ma, n)
            rb = series_diagonalize(mb, n)
            if not (isinstance(ra, Finite) and isinstance(rb, Finite)):
                continue
            prod = series_mat_mul(ma, mb)
            rp = series_diagonalize(prod, ra.zeta + rb.zeta)
            assert isinstance(rp, Finite)
            assert rp.zeta == ra.zeta + rb.zeta
            done += 1
