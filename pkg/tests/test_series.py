from random import Random

import pytest

from skewdet import (
    AtLeast,
    ContractViolationError,
    Known,
    PrecisionError,
    apply_delta,
    apply_sigma,
    invert_unit,
    left_mul_pi,
    left_mul_pi_generic,
    right_div,
    right_shift,
    scalar_from_int,
    scalar_left_mul,
    scalar_one,
    scalar_t,
    scalar_zero,
    series_add,
    series_from_coeffs,
    series_mul,
    series_zero,
    truncate,
    valuation,
)
from skewdet.series import coeff_at, series_eq_to, series_neg, series_sub, val_lower_bound
from skewdet.testing import random_scalar


def random_series(spec, rng, prec=6, offset=0):
    coeffs = [random_scalar(spec, rng, max_deg=1) for _ in range(prec - offset)]
    return series_from_coeffs(spec, coeffs, prec, offset)


def reconstructs_under_s(a, product):
    """Check sigma(b_(d+1)) + delta(b_d) = a_d, i.e. s * (pi * a) = a."""
    top = min(a.prec, product.prec - 1)
    for d in range(min(a.offset, product.offset), top):
        lhs = apply_sigma(coeff_at(product, d + 1)) + apply_delta(coeff_at(product, d))
        if lhs != coeff_at(a, d):
            return False
    return True


def test_left_mul_pi_differential_t(spec_qt_diff):
    t = scalar_t(spec_qt_diff)
    a = series_from_coeffs(spec_qt_diff, [t], 4)
    b = left_mul_pi(a)
    assert coeff_at(b, 1) == t
    assert coeff_at(b, 2) == -scalar_one(spec_qt_diff)
    assert coeff_at(b, 3) == scalar_zero(spec_qt_diff)
    assert b.prec == 5
    assert reconstructs_under_s(a, b)


def test_left_mul_pi_shift_and_constants(spec_qt_shift, spec_q):
    t = scalar_t(spec_qt_shift)
    one = scalar_one(spec_qt_shift)
    b = left_mul_pi(series_from_coeffs(spec_qt_shift, [t], 4))
    assert coeff_at(b, 1) == t - one
    assert all(coeff_at(b, d) == scalar_zero(spec_qt_shift) for d in range(2, 5))
    seven = scalar_from_int(spec_q, 7)
    c = left_mul_pi(series_from_coeffs(spec_q, [seven], 3))
    assert coeff_at(c, 1) == seven
    assert valuation(c) == Known(1)


def test_generic_recursion_examples(spec_qt_diff, spec_qt_shift, spec_q):
    t = scalar_t(spec_qt_diff)
    a = series_from_coeffs(spec_qt_diff, [t], 4)
    assert left_mul_pi_generic(a) == left_mul_pi(a)
    ts = scalar_t(spec_qt_shift)
    b = left_mul_pi_generic(series_from_coeffs(spec_qt_shift, [ts * ts], 4))
    shifted = (ts - scalar_one(spec_qt_shift)) * (ts - scalar_one(spec_qt_shift))
    assert coeff_at(b, 1) == shifted
    c = series_from_coeffs(spec_q, [scalar_from_int(spec_q, 3)], 3)
    assert left_mul_pi_generic(c) == left_mul_pi(c)


def test_two_recursions_agree_randomized(all_twist_specs):
    rng = Random(31)
    for spec in all_twist_specs:
        for _ in range(120):
            a = random_series(spec, rng, prec=rng.randint(1, 6))
            assert left_mul_pi(a) == left_mul_pi_generic(a)


def test_s_reconstruction_randomized(all_twist_specs):
    rng = Random(37)
    for spec in all_twist_specs:
        for _ in range(60):
            a = random_series(spec, rng, prec=5)
            assert reconstructs_under_s(a, left_mul_pi(a))


def test_right_shift(spec_qt_diff):
    t = scalar_t(spec_qt_diff)
    one = scalar_one(spec_qt_diff)
    b = left_mul_pi(series_from_coeffs(spec_qt_diff, [t], 4))  # t pi - pi^2
    c = right_shift(b, -1)
    assert coeff_at(c, 0) == t and coeff_at(c, 1) == -one
    d = right_shift(series_from_coeffs(spec_qt_diff, [one], 4), 3)
    assert valuation(d) == Known(3)
    z = right_shift(series_zero(spec_qt_diff, 4), 2)
    assert valuation(z) == AtLeast(6)


def test_add_and_scalar_left_mul(spec_qt_diff):
    spec = spec_qt_diff
    t = scalar_t(spec)
    one = scalar_one(spec)
    pi = right_shift(series_from_coeffs(spec, [one], 4), 1)
    assert valuation(series_add(pi, series_neg(pi))) == AtLeast(5)
    s = series_from_coeffs(spec, [one, one], 5)
    assert scalar_left_mul(t, s) == series_from_coeffs(spec, [t, t], 5)
    a = random_series(spec, Random(1), prec=5)
    b = random_series(spec, Random(2), prec=3)
    assert series_add(a, b).prec == 3


def test_mul_noncommutativity_witness(spec_qt_diff):
    spec = spec_qt_diff
    t = scalar_t(spec)
    one = scalar_one(spec)
    t_series = series_from_coeffs(spec, [t], 5)
    pi = right_shift(series_from_coeffs(spec, [one], 4), 1)
    left = series_mul(t_series, pi)  # t pi
    right = series_mul(pi, t_series)  # t pi - pi^2
    assert coeff_at(left, 1) == t and coeff_at(left, 2) == scalar_zero(spec)
    assert coeff_at(right, 1) == t and coeff_at(right, 2) == -one
    direct = left_mul_pi(t_series)
    assert series_eq_to(right, direct, min(right.prec, direct.prec))


def test_mul_commutative_binomial(spec_qt_comm):
    spec = spec_qt_comm
    one = scalar_one(spec)
    a = series_from_coeffs(spec, [one, one], 4)  # 1 + pi
    b = series_from_coeffs(spec, [one, -one], 4)  # 1 - pi
    prod = series_mul(a, b)
    assert coeff_at(prod, 0) == one
    assert coeff_at(prod, 1) == scalar_zero(spec)
    assert coeff_at(prod, 2) == -one


def test_mul_ring_laws_randomized(all_twist_specs):
    rng = Random(41)
    for spec in all_twist_specs:
        for _ in range(25):
            a = random_series(spec, rng, prec=4)
            b = random_series(spec, rng, prec=4)
            c = random_series(spec, rng, prec=4)
            lhs = series_mul(series_mul(a, b), c)
            rhs = series_mul(a, series_mul(b, c))
            h = min(lhs.prec, rhs.prec)
            assert series_eq_to(lhs, rhs, h)
            lhs2 = series_mul(a, series_add(b, c))
            rhs2 = series_add(series_mul(a, b), series_mul(a, c))
            h2 = min(lhs2.prec, rhs2.prec)
            assert series_eq_to(lhs2, rhs2, h2)


def test_valuation_axioms_randomized(all_twist_specs):
    rng = Random(43)
    for spec in all_twist_specs:
        for _ in range(60):
            a = random_series(spec, rng, prec=5)
            b = random_series(spec, rng, prec=5)
            va, vb = valuation(a), valuation(b)
            prod = series_mul(a, b)
            if isinstance(va, Known) and isinstance(vb, Known):
                vp = valuation(prod)
                assert isinstance(vp, Known) and vp.value == va.value + vb.value
            s = series_add(a, b)
            lo = min(val_lower_bound(a), val_lower_bound(b))
            assert val_lower_bound(s) >= lo


def test_mul_horizon_formula(spec_qt_diff):
    rng = Random(47)
    for _ in range(40):
        a = random_series(spec_qt_diff, rng, prec=rng.randint(2, 6))
        b = random_series(spec_qt_diff, rng, prec=rng.randint(2, 6))
        prod = series_mul(a, b)
        assert prod.prec == min(
            a.prec + val_lower_bound(b), b.prec + val_lower_bound(a)
        )


def test_invert_unit_geometric(spec_qt_comm):
    spec = spec_qt_comm
    one = scalar_one(spec)
    u = series_from_coeffs(spec, [one, -one], 6)  # 1 - pi
    w = invert_unit(u)
    for d in range(6):
        assert coeff_at(w, d) == one
    assert invert_unit(series_from_coeffs(spec, [one], 6)) == series_from_coeffs(
        spec, [one], 6
    )


def test_invert_unit_differential(spec_qt_diff):
    spec = spec_qt_diff
    one = scalar_one(spec)
    t = scalar_t(spec)
    u = series_from_coeffs(spec, [one, t], 6)  # 1 + t pi
    w = invert_unit(u)
    uw = series_mul(u, w)
    wu = series_mul(w, u)
    ident = series_from_coeffs(spec, [one], 6)
    assert series_eq_to(uw, ident, 6)
    assert series_eq_to(wu, ident, 6)


def test_invert_unit_randomized(all_twist_specs):
    rng = Random(53)
    for spec in all_twist_specs:
        for _ in range(20):
            coeffs = [random_scalar(spec, rng, max_deg=1) for _ in range(4)]
            head = random_scalar(spec, rng, max_deg=1)
            while not head:
                head = random_scalar(spec, rng, max_deg=1)
            u = series_from_coeffs(spec, [head] + coeffs, 5)
            w = invert_unit(u)
            ident = series_from_coeffs(spec, [scalar_one(spec)], 5)
            assert series_eq_to(series_mul(u, w), ident, 5)
            assert series_eq_to(series_mul(w, u), ident, 5)


def test_invert_unit_rejects_nonunits(spec_qt_diff):
    one = scalar_one(spec_qt_diff)
    pi = right_shift(series_from_coeffs(spec_qt_diff, [one], 4), 1)
    with pytest.raises(ContractViolationError):
        invert_unit(pi)
    with pytest.raises(ContractViolationError):
        invert_unit(series_zero(spec_qt_diff, 4))


def test_right_div(spec_qt_diff):
    spec = spec_qt_diff
    one = scalar_one(spec)
    t = scalar_t(spec)
    pi = right_shift(series_from_coeffs(spec, [one], 5), 1)
    pi2 = right_shift(series_from_coeffs(spec, [one], 4), 2)
    q = right_div(pi2, pi)
    assert valuation(q) == Known(1) and coeff_at(q, 1) == one
    a = random_series(spec, Random(3), prec=5)
    same = right_div(a, a) if a.coeffs else None
    if same is not None:
        assert series_eq_to(same, series_from_coeffs(spec, [one], same.prec), same.prec)
    tpi = scalar_left_mul(t, pi)
    res = right_div(tpi, pi)
    assert valuation(res) == Known(0) and coeff_at(res, 0) == t
    back = series_mul(res, pi)
    assert series_eq_to(back, tpi, back.prec)


def test_right_div_requires_known_divisor(spec_qt_diff):
    one = scalar_one(spec_qt_diff)
    a = series_from_coeffs(spec_qt_diff, [one], 4)
    with pytest.raises(PrecisionError):
        right_div(a, series_zero(spec_qt_diff, 4))


def test_truncate(spec_qt_comm):
    spec = spec_qt_comm
    one = scalar_one(spec)
    zero = scalar_zero(spec)
    a = series_from_coeffs(spec, [one, one, zero, one], 4)  # 1 + pi + pi^3
    b = truncate(a, 1)
    assert b.prec == 2 and coeff_at(b, 1) == one
    assert truncate(a, 3) == a
    assert truncate(a, 10) == a
    z = truncate(series_zero(spec, 9), 4)
    assert valuation(z) == AtLeast(5)


def test_truncate_commutes(all_twist_specs):
    rng = Random(59)
    for spec in all_twist_specs:
        for _ in range(30):
            a = random_series(spec, rng, prec=5)
            b = random_series(spec, rng, prec=5)
            m = rng.randint(0, 4)
            assert truncate(series_add(a, b), m) == series_add(
                truncate(a, m), truncate(b, m)
            )
            # coefficients below the horizon depend only on those below it
            assert truncate(left_mul_pi(a), m) == truncate(
                left_mul_pi(truncate(a, m)), m
            )


def test_zero_to_precision_is_first_class(spec_qt_diff):
    z = series_zero(spec_qt_diff, 4)
    v = valuation(z)
    assert isinstance(v, AtLeast) and v.bound == 4
    nz = series_from_coeffs(spec_qt_diff, [scalar_one(spec_qt_diff)], 4)
    assert isinstance(valuation(nz), Known)


def test_coeff_at_beyond_horizon(spec_qt_diff):
    a = series_from_coeffs(spec_qt_diff, [scalar_one(spec_qt_diff)], 3)
    with pytest.raises(PrecisionError):
        coeff_at(a, 3)


def test_mul_rejects_negative_offset_left_factor(spec_qt_diff):
    one = scalar_one(spec_qt_diff)
    neg = right_shift(series_from_coeffs(spec_qt_diff, [one], 4), -1)
    ok = series_from_coeffs(spec_qt_diff, [one], 4)
    with pytest.raises(ContractViolationError):
        series_mul(neg, ok)
    prod = series_mul(ok, neg)  # negative offsets are fine on the right
    assert valuation(prod) == Known(-1)
