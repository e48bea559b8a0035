"""Truncated pi-adic series over K with explicit precision horizons.

A series stores the coefficients of pi^offset .. pi^(prec-1) and guarantees
them correct; nothing is claimed at or beyond ``prec``.  The canonical form
trims leading zeros, so a nonempty coefficient tuple starts with a nonzero
scalar and the valuation is then known exactly; an empty tuple means "zero up
to the horizon" and the valuation is only known to be >= prec.  That
distinction is a first-class outcome (:class:`Known` vs :class:`AtLeast`) and
is never collapsed silently.

Multiplication is performed as a*b = sum_d a_d * (pi^d b), with pi^d b from
the triangular left-multiplication recursion; left factors must therefore
have offset >= 0, since multiplying by pi^(-1) on the left is outside the
computational model.

Guaranteed horizon of a product: with lb(x) the index of the first stored
nonzero coefficient (or prec when none), the result of ``series_mul(a, b)``
is correct below min(a.prec + lb(b), b.prec + lb(a)).  Unknown coefficients
of a start at a.prec and meet terms of b of valuation >= lb(b), and
symmetrically, so no contribution below that bound is missed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ContractViolationError, PrecisionError, SpecMismatchError
from .field import (
    FieldSpec,
    Scalar,
    apply_delta,
    apply_sigma_inv,
    higher_delta,
    scalar_inv,
    scalar_is_zero,
    scalar_one,
    scalar_zero,
)


class Known(NamedTuple):
    value: int


class AtLeast(NamedTuple):
    bound: int


@dataclass(frozen=True, slots=True)
class Series:
    spec: FieldSpec
    offset: int
    coeffs: tuple
    prec: int

    def __repr__(self):
        terms = ", ".join(
            f"pi^{self.offset + i}:{c!r}" for i, c in enumerate(self.coeffs)
        )
        return f"Series([{terms}], prec={self.prec})"


def _series(spec: FieldSpec, offset: int, coeffs: Sequence[Scalar], prec: int) -> Series:
    """Canonicalizing constructor: trim leading zeros, keep offset + len = prec."""
    cs = list(coeffs)
    while cs and scalar_is_zero(cs[0]):
        cs.pop(0)
        offset += 1
    if not cs:
        return Series(spec, prec, (), prec)
    if offset + len(cs) != prec:
        raise ContractViolationError("series length inconsistent with horizon")
    return Series(spec, offset, tuple(cs), prec)


def series_from_coeffs(
    spec: FieldSpec, coeffs: Sequence[Scalar], prec: int, offset: int = 0
) -> Series:
    """Series with the given coefficients at pi^offset.., padded with exact zeros.

    The caller asserts exactness of all coefficients below ``prec``; trailing
    exponents not covered by ``coeffs`` are exact zeros (polynomial input).
    """
    cs = list(coeffs)
    if offset + len(cs) > prec:
        raise ContractViolationError("more coefficients than the horizon admits")
    zero = scalar_zero(spec)
    cs.extend([zero] * (prec - offset - len(cs)))
    return _series(spec, offset, cs, prec)


def series_scalar(c: Scalar, prec: int) -> Series:
    return series_from_coeffs(c.spec, [c], prec)


def series_zero(spec: FieldSpec, prec: int) -> Series:
    return Series(spec, prec, (), prec)


def valuation(a: Series) -> Known | AtLeast:
    if a.coeffs:
        return Known(a.offset)
    return AtLeast(a.prec)


def val_lower_bound(a: Series) -> int:
    """A sound lower bound on the valuation (exact when Known)."""
    return a.offset


def coeff_at(a: Series, d: int) -> Scalar:
    if d >= a.prec:
        raise PrecisionError(f"coefficient of pi^{d} is beyond horizon {a.prec}")
    if d < a.offset:
        return scalar_zero(a.spec)
    return a.coeffs[d - a.offset]


def series_eq_to(a: Series, b: Series, horizon: int) -> bool:
    """Coefficientwise equality below ``horizon`` (must be within both precs)."""
    if a.prec < horizon or b.prec < horizon:
        raise PrecisionError("comparison horizon exceeds a known horizon")
    start = min(a.offset, b.offset)
    return all(coeff_at(a, d) == coeff_at(b, d) for d in range(start, horizon))


def left_mul_pi(a: Series) -> Series:
    """pi * a via the first-order recursion b_d = sigma^(-1)(a_(d-1) - delta(b_(d-1))).

    One sigma^(-1) and one delta per coefficient; the recursion is triangular,
    so the result is correct below a.prec + 1.
    """
    spec = a.spec
    prec = a.prec + 1
    if not a.coeffs:
        return series_zero(spec, prec)
    out = []
    b_prev = scalar_zero(spec)
    for d in range(a.offset + 1, prec):
        a_prev = coeff_at(a, d - 1)
        b_prev = apply_sigma_inv(a_prev - apply_delta(b_prev))
        out.append(b_prev)
    return _series(spec, a.offset + 1, out, prec)


def left_mul_pi_generic(a: Series) -> Series:
    """pi * a via the higher-derivation expansion b_d = sum_k delta_k(a_(d-k-1)).

    Independent of :func:`left_mul_pi`; exists for cross-testing only.
    """
    spec = a.spec
    prec = a.prec + 1
    if not a.coeffs:
        return series_zero(spec, prec)
    out = []
    for d in range(a.offset + 1, prec):
        acc = scalar_zero(spec)
        for k in range(0, d - a.offset):
            src = coeff_at(a, d - k - 1)
            if not scalar_is_zero(src):
                acc = acc + higher_delta(k, src)
        out.append(acc)
    return _series(spec, a.offset + 1, out, prec)


def right_shift(a: Series, e: int) -> Series:
    """a * pi^e: exponents shift, coefficients stay (they sit left of pi powers)."""
    return Series(a.spec, a.offset + e, a.coeffs, a.prec + e)


def series_add(a: Series, b: Series) -> Series:
    if a.spec != b.spec:
        raise SpecMismatchError("series addition across specs")
    prec = min(a.prec, b.prec)
    start = min(a.offset, b.offset, prec)
    out = [coeff_at(a, d) + coeff_at(b, d) for d in range(start, prec)]
    return _series(a.spec, start, out, prec)


def series_neg(a: Series) -> Series:
    return Series(a.spec, a.offset, tuple(-c for c in a.coeffs), a.prec)


def series_sub(a: Series, b: Series) -> Series:
    return series_add(a, series_neg(b))


def scalar_left_mul(c: Scalar, a: Series) -> Series:
    if c.spec != a.spec:
        raise SpecMismatchError("scalar and series under different specs")
    if scalar_is_zero(c):
        return series_zero(a.spec, a.prec)
    return _series(a.spec, a.offset, [c * x for x in a.coeffs], a.prec)


def truncate(a: Series, m: int) -> Series:
    """Drop coefficients at exponents > m; the horizon becomes min(prec, m + 1)."""
    if a.prec <= m + 1:
        return a
    prec = m + 1
    if a.offset >= prec:
        return series_zero(a.spec, prec)
    return _series(a.spec, a.offset, a.coeffs[: prec - a.offset], prec)


def series_mul(a: Series, b: Series) -> Series:
    """a * b = sum_d a_d (pi^d b), correct below min(a.prec + lb(b), b.prec + lb(a))."""
    if a.spec != b.spec:
        raise SpecMismatchError("series product across specs")
    if a.offset < 0:
        raise ContractViolationError(
            "left factor has negative valuation; pi^(-1) cannot be moved left"
        )
    prec = min(a.prec + val_lower_bound(b), b.prec + val_lower_bound(a))
    if not a.coeffs or not b.coeffs:
        return series_zero(a.spec, prec)
    acc = series_zero(a.spec, prec)
    shifted = b
    for d in range(0, a.prec):
        if d > 0:
            shifted = left_mul_pi(shifted)
        if d < a.offset:
            continue
        c = a.coeffs[d - a.offset]
        if not scalar_is_zero(c):
            acc = series_add(acc, truncate(scalar_left_mul(c, shifted), prec - 1))
    return acc


def invert_unit(u: Series) -> Series:
    """Two-sided inverse of a unit (valuation exactly 0), to u's horizon.

    With m := u0^(-1) u - 1 of positive valuation, the inverse is
    (sum_j (-m)^j) * u0^(-1), the trailing constant applied through
    ``series_mul`` because constants do not commute past pi.
    """
    v = valuation(u)
    if not isinstance(v, Known) or v.value != 0:
        raise ContractViolationError(
            "invert_unit requires valuation exactly 0 (known within precision)"
        )
    prec = u.prec
    u0_inv = scalar_inv(u.coeffs[0])
    one = series_scalar(scalar_one(u.spec), prec)
    m = series_sub(scalar_left_mul(u0_inv, u), one)
    neg_m = series_neg(m)
    acc = one
    term = one
    for _ in range(1, prec):
        term = truncate(series_mul(term, neg_m), prec - 1)
        if not term.coeffs:
            break
        acc = series_add(acc, term)
    return truncate(series_mul(acc, series_scalar(u0_inv, prec)), prec - 1)


def right_div(a: Series, d: Series) -> Series:
    """a * d^(-1) for v(d) known and v(d) <= v(a); the result is proper."""
    vd = valuation(d)
    if not isinstance(vd, Known):
        raise PrecisionError("divisor valuation unknown to precision")
    if val_lower_bound(a) < vd.value:
        raise ContractViolationError("right_div requires v(d) <= v(a)")
    unit = right_shift(d, -vd.value)
    return series_mul(right_shift(a, -vd.value), invert_unit(unit))
