"""Skew polynomial matrices: deg Det, ord Det, Smith data, solution dimensions.

A matrix A = sum_d A_d s^d over K[s; sigma, delta] is handled through the
proper matrix A s^(-l), whose pi^(l-d) coefficient is A_d with pi = s^(-1).
Its determinant valuation zeta satisfies deg Det A = l n - zeta, and zeta
lies in [0, l n] whenever A is nonsingular, which makes l n the default
engine budget and identifies "beyond budget" with singularity.

ord Det is computed in the same engine after the change of variable
s -> s'^(-1), which lands in the skew polynomial ring twisted by
sigma^(-1); it exists only when delta = 0, since otherwise the order
fails multiplicativity and is not a valuation.

Solution-space dimensions (over an adequate extension): deg Det A for
differential systems, deg Det A - ord Det A for difference systems.  For the
q-shift twist the difference formula is exposed unchanged; the sigma-twisted
theory covers it, but the worked ground truth in the literature is
shift-specific, so the CLI flags the extrapolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from .errors import (
    ContractViolationError,
    EngineDisagreementError,
    UnsupportedTwistError,
)
from .expansion import ExpansionProfile, smith_exponents, zeta_expand
from .field import (
    Commutative,
    Differential,
    FieldSpec,
    QShift,
    Scalar,
    Shift,
    apply_delta,
    apply_sigma,
    retwist_scalar,
    scalar_is_zero,
    scalar_zero,
)
from .linalg import (
    ScalarMatrix,
    scalar_matrix,
    series_diagonalize,
    series_matrix_from_coeffs,
    Finite,
    SingularOrBeyond,
)
from .outcomes import (
    Deg,
    Dim,
    InfiniteBeyond,
    InfiniteDimension,
    MinusInfinity,
    Ord,
    PlusInfinity,
    Zeta,
)
from .relax import zeta_comb_relax

Algorithm = Literal["relax", "expand", "oracle", "all"]


@dataclass(frozen=True)
class SkewPolyMatrix:
    spec: FieldSpec
    n: int
    ell: int
    coeffs: tuple  # ScalarMatrix for s^0 .. s^ell

    def __post_init__(self):
        if len(self.coeffs) != self.ell + 1:
            raise ContractViolationError("coefficient count must be ell + 1")
        for c in self.coeffs:
            if c.n_rows != self.n or c.n_cols != self.n or c.spec != self.spec:
                raise ContractViolationError("coefficient matrices must be square and uniform")
        if self.ell > 0 and _matrix_is_zero(self.coeffs[-1]):
            raise ContractViolationError("trailing coefficient may be zero only when ell = 0")


def _matrix_is_zero(m: ScalarMatrix) -> bool:
    return all(scalar_is_zero(e) for e in m.entries)


def skew_poly_matrix(spec: FieldSpec, coeffs: Sequence[ScalarMatrix]) -> SkewPolyMatrix:
    """Build from s-degree-ascending coefficients, trimming zero leaders."""
    cs = list(coeffs)
    while len(cs) > 1 and _matrix_is_zero(cs[-1]):
        cs.pop()
    return SkewPolyMatrix(spec, cs[0].n_rows, len(cs) - 1, tuple(cs))


def properized_coeffs(a: SkewPolyMatrix) -> list:
    """Coefficient matrices of A s^(-ell): pi-degree e holds A_(ell - e)."""
    return [a.coeffs[a.ell - e] for e in range(a.ell + 1)]


def zeta_oracle(
    a_coeffs: Sequence[ScalarMatrix], budget: int
) -> Zeta | InfiniteBeyond:
    """Diagonalization oracle wrapped in the engines' tagged result type."""
    m = series_matrix_from_coeffs(list(a_coeffs[: budget + 1]), budget + 1)
    res = series_diagonalize(m, budget)
    if isinstance(res, Finite):
        return Zeta(res.zeta)
    return InfiniteBeyond(budget)


_ENGINES = {
    "relax": zeta_comb_relax,
    "expand": zeta_expand,
    "oracle": zeta_oracle,
}


def run_zeta_engines(
    a_coeffs: Sequence[ScalarMatrix],
    budget: int,
    algorithm: Algorithm = "all",
    trace_sink=None,
) -> Zeta | InfiniteBeyond:
    """Run the selected valuation engine(s); 'all' insists on agreement."""
    if algorithm == "all":
        results = {
            name: (
                engine(a_coeffs, budget, trace_sink)
                if name == "relax"
                else engine(a_coeffs, budget)
            )
            for name, engine in _ENGINES.items()
        }
        values = set(results.values())
        if len(values) != 1:
            raise EngineDisagreementError(f"engines disagree: {results!r}")
        return values.pop()
    if algorithm == "relax":
        return zeta_comb_relax(a_coeffs, budget, trace_sink)
    try:
        engine = _ENGINES[algorithm]
    except KeyError:
        raise ContractViolationError(f"unknown algorithm {algorithm!r}") from None
    return engine(a_coeffs, budget)


def deg_det(
    a: SkewPolyMatrix,
    algorithm: Algorithm = "all",
    bound: Optional[int] = None,
    trace_sink=None,
) -> Deg | MinusInfinity:
    """deg Det A, or MinusInfinity for singular A.

    With the default budget ell * n, "beyond budget" is equivalent to
    singularity.  A caller-supplied lower bound keeps the contract one-sided:
    MinusInfinity then means "singular or deg Det < ell n - bound", never a
    wrong finite value.
    """
    budget = a.ell * a.n if bound is None else bound
    res = run_zeta_engines(properized_coeffs(a), budget, algorithm, trace_sink)
    if isinstance(res, Zeta):
        return Deg(a.ell * a.n - res.value)
    return MinusInfinity()


def _reversed_matrix(a: SkewPolyMatrix) -> SkewPolyMatrix:
    """A-hat = sum_d A_d s'^(ell - d) over the sigma-inverted twist."""
    spec2 = a.spec.reversed_twist()
    coeffs = []
    for e in range(a.ell + 1):
        src = a.coeffs[a.ell - e]
        coeffs.append(
            scalar_matrix(
                spec2,
                [
                    [retwist_scalar(src.get(i, j), spec2) for j in range(a.n)]
                    for i in range(a.n)
                ],
            )
        )
    return skew_poly_matrix(spec2, coeffs)


def ord_det(a: SkewPolyMatrix, algorithm: Algorithm = "all") -> Ord | PlusInfinity:
    """ord Det A for twists with delta = 0, or PlusInfinity for singular A."""
    if isinstance(a.spec.twist, Differential):
        raise UnsupportedTwistError(
            "ord Det is undefined for a differential twist: with delta != 0 the "
            "order is not multiplicative, hence not a valuation"
        )
    rev = _reversed_matrix(a)
    res = deg_det(rev, algorithm)
    if isinstance(res, Deg):
        return Ord(a.ell * a.n - res.value)
    return PlusInfinity()


def solution_dimension(
    a: SkewPolyMatrix, algorithm: Algorithm = "all"
) -> Dim | InfiniteDimension:
    """Dimension of the solution space over an adequate extension.

    Differential systems: deg Det A.  Difference systems (shift or q-shift
    acting as the operator): deg Det A - ord Det A.  Infinite for singular A.
    """
    twist = a.spec.twist
    if isinstance(twist, Commutative):
        raise UnsupportedTwistError(
            "the commutative twist carries no operator action on K"
        )
    if isinstance(twist, Differential):
        res = deg_det(a, algorithm)
        if isinstance(res, Deg):
            return Dim(res.value)
        return InfiniteDimension()
    d = deg_det(a, algorithm)
    if not isinstance(d, Deg):
        return InfiniteDimension()
    o = ord_det(a, algorithm)
    if not isinstance(o, Ord):
        return InfiniteDimension()
    return Dim(d.value - o.value)


def smith_data(a: SkewPolyMatrix) -> ExpansionProfile:
    """Expansion profile of A s^(-ell) at budget ell * n.

    The budget covers every minor: a nonsingular k x k submatrix has
    valuation at most ell k <= ell n.
    """
    return smith_exponents(properized_coeffs(a), a.ell * a.n)


# --- skew polynomial arithmetic (multiplicativity checks and fixtures) ---


def skew_poly_mul(spec: FieldSpec, p: Sequence[Scalar], q: Sequence[Scalar]) -> list:
    """Product in K[s; sigma, delta] on ascending coefficient lists."""
    zero = scalar_zero(spec)
    out = [zero for _ in range(len(p) + len(q) - 1)]
    shifted = list(q)  # s^d * q, maintained incrementally
    for d, c in enumerate(p):
        if d > 0:
            nxt = [zero for _ in range(len(shifted) + 1)]
            for e, b in enumerate(shifted):
                nxt[e + 1] = nxt[e + 1] + apply_sigma(b)
                nxt[e] = nxt[e] + apply_delta(b)
            shifted = nxt
        if scalar_is_zero(c):
            continue
        for e, b in enumerate(shifted):
            out[e] = out[e] + c * b
    while len(out) > 1 and scalar_is_zero(out[-1]):
        out.pop()
    return out


def skew_mat_mul(a: SkewPolyMatrix, b: SkewPolyMatrix) -> SkewPolyMatrix:
    """Matrix product over K[s; sigma, delta]."""
    if a.spec != b.spec or a.n != b.n:
        raise ContractViolationError("incompatible skew matrix product")
    n = a.n
    zero = scalar_zero(a.spec)
    ell = a.ell + b.ell
    acc = [
        [[zero for _ in range(ell + 1)] for _ in range(n)] for _ in range(n)
    ]
    for i in range(n):
        for j in range(n):
            entry = [zero] * (ell + 1)
            for k in range(n):
                p = [a.coeffs[d].get(i, k) for d in range(a.ell + 1)]
                q = [b.coeffs[d].get(k, j) for d in range(b.ell + 1)]
                prod = skew_poly_mul(a.spec, p, q)
                for d, c in enumerate(prod):
                    entry[d] = entry[d] + c
            acc[i][j] = entry
    coeff_mats = []
    for d in range(ell + 1):
        coeff_mats.append(
            scalar_matrix(a.spec, [[acc[i][j][d] for j in range(n)] for i in range(n)])
        )
    return skew_poly_matrix(a.spec, coeff_mats)
