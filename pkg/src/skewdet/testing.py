"""Seeded random instance generators for tests and benchmarks.

Entry distributions are deliberately size-aware: over function fields,
denominators deepen under derivation chains and expanded-matrix ranks pay
for it, so large instances draw polynomial entries while genuine rational
functions appear at small sizes.  Everything is driven by a caller-owned
``random.Random`` so runs reproduce exactly.
"""

from __future__ import annotations

from random import Random
from typing import Optional, Sequence

from .field import (
    FieldSpec,
    PrimeField,
    RationalFunctions,
    Rationals,
    Scalar,
    constant_ops,
    make_scalar,
    scalar_from_int,
)
from .linalg import ScalarMatrix, scalar_matrix
from .skewapp import SkewPolyMatrix, skew_poly_matrix


def random_constant(spec: FieldSpec, rng: Random, lo: int = -4, hi: int = 4) -> Scalar:
    return scalar_from_int(spec, rng.randint(lo, hi))


def random_poly(spec: FieldSpec, rng: Random, max_deg: int = 2) -> tuple:
    from .polyring import ptrim

    F = constant_ops(spec.base)
    deg = rng.randint(0, max_deg)
    return ptrim(F.from_int(rng.randint(-4, 4)) for _ in range(deg + 1))


def random_scalar(
    spec: FieldSpec,
    rng: Random,
    max_deg: int = 2,
    allow_denominator: bool = True,
) -> Scalar:
    """A random element of K; denominators only when allowed and drawn."""
    if not isinstance(spec.base, RationalFunctions):
        return random_constant(spec, rng)
    F = constant_ops(spec.base)
    num = random_poly(spec, rng, max_deg)
    if allow_denominator and rng.random() < 0.4:
        den = random_poly(spec, rng, 1)
        if not den:
            den = (F.one,)
        return make_scalar(spec, (num, den))
    return make_scalar(spec, (num, (F.one,)))


def random_nonzero_scalar(spec: FieldSpec, rng: Random, **kw) -> Scalar:
    while True:
        s = random_scalar(spec, rng, **kw)
        if s:
            return s


def random_scalar_matrix(
    spec: FieldSpec,
    rng: Random,
    n: int,
    density: float = 0.85,
    **kw,
) -> ScalarMatrix:
    from .field import scalar_zero

    zero = scalar_zero(spec)
    rows = []
    for _ in range(n):
        rows.append(
            [
                random_scalar(spec, rng, **kw) if rng.random() < density else zero
                for _ in range(n)
            ]
        )
    return scalar_matrix(spec, rows)


def random_coeff_list(
    spec: FieldSpec,
    rng: Random,
    n: int,
    ell: int,
    density: float = 0.8,
    allow_denominator: Optional[bool] = None,
) -> list:
    """Random A_0 .. A_ell; denominators suppressed at larger sizes by default."""
    if allow_denominator is None:
        allow_denominator = (ell * n <= 2) and isinstance(
            spec.base, RationalFunctions
        )
    return [
        random_scalar_matrix(
            spec, rng, n, density=density, allow_denominator=allow_denominator, max_deg=1
        )
        for _ in range(ell + 1)
    ]


def random_skew_poly_matrix(
    spec: FieldSpec, rng: Random, n: int, ell: int, **kw
) -> SkewPolyMatrix:
    return skew_poly_matrix(spec, random_coeff_list(spec, rng, n, ell, **kw))


def twist_corpus_specs() -> dict:
    """The acceptance corpus: every twist over its required bases."""
    from .field import Commutative, Differential, QShift, Shift
    from fractions import Fraction

    f5 = PrimeField(5)
    f5t = RationalFunctions(f5)
    qt = RationalFunctions(Rationals())
    return {
        "commutative_q": FieldSpec(Rationals(), Commutative()),
        "commutative_f5": FieldSpec(f5, Commutative()),
        "differential_f5t": FieldSpec(f5t, Differential()),
        "differential_qt": FieldSpec(qt, Differential()),
        "shift_f5t": FieldSpec(f5t, Shift()),
        "shift_qt": FieldSpec(qt, Shift()),
        "qshift_qt": FieldSpec(qt, QShift(Fraction(2))),
    }
