"""Exact arithmetic in the coefficient field K and its twist maps.

A :class:`FieldSpec` names the base field (rationals, a prime field, or a
univariate rational function field over one of those) together with a twist:
the automorphism sigma and left sigma-derivation delta that drive the
noncommutative commutation rules downstream.

Scalars are immutable and canonically normalized, so ``==`` is mathematical
equality in K.  For rational functions the canonical form is a reduced
fraction whose denominator is monic over a prime field, or a primitive
integer polynomial with positive leading coefficient over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import ContractViolationError, ParseError, SpecMismatchError
from . import polyring as pr
from .polyring import FpOps, QOps

# --- base field and twist descriptors ---


@dataclass(frozen=True)
class Rationals:
    def __repr__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ContractViolationError(f"{self.p} is not prime")

    def __repr__(self):
        return f"F{self.p}"


@dataclass(frozen=True)
class RationalFunctions:
    base: Union[Rationals, PrimeField]
    var: str = "t"

    def __repr__(self):
        return f"{self.base!r}({self.var})"


@dataclass(frozen=True)
class Commutative:
    """sigma = id, delta = 0."""


@dataclass(frozen=True)
class Differential:
    """sigma = id, delta = d/dt."""


@dataclass(frozen=True)
class Shift:
    """sigma: t -> t + step, delta = 0.

    The public twist is the unit shift; other steps appear only internally
    when the variable reversal of ``ord_det`` replaces sigma by its inverse.
    """

    step: int = 1

    def __post_init__(self):
        if self.step == 0:
            raise ContractViolationError("shift step must be nonzero")


@dataclass(frozen=True)
class QShift:
    """sigma: t -> q*t with q a constant of the base, q != 0, 1; delta = 0."""

    q: Union[Fraction, int]


Base = Union[Rationals, PrimeField, RationalFunctions]
Twist = Union[Commutative, Differential, Shift, QShift]


@dataclass(frozen=True)
class FieldSpec:
    base: Base
    twist: Twist = Commutative()

    def __post_init__(self):
        if not isinstance(self.twist, Commutative) and not isinstance(
            self.base, RationalFunctions
        ):
            raise ContractViolationError(
                "differential/shift/q-shift twists require a rational function base"
            )
        if isinstance(self.twist, QShift):
            ops = constant_ops(self.base)
            q = self.twist.q
            if ops.is_zero(q) or q == ops.one:
                raise ContractViolationError("q-shift requires q != 0 and q != 1")

    @property
    def is_function_field(self) -> bool:
        return isinstance(self.base, RationalFunctions)

    def with_twist(self, twist: Twist) -> "FieldSpec":
        return FieldSpec(self.base, twist)

    def reversed_twist(self) -> "FieldSpec":
        """The same base with sigma replaced by its inverse (delta must be 0)."""
        t = self.twist
        if isinstance(t, Commutative):
            return self
        if isinstance(t, Shift):
            return FieldSpec(self.base, Shift(-t.step))
        if isinstance(t, QShift):
            ops = constant_ops(self.base)
            return FieldSpec(self.base, QShift(ops.div(ops.one, t.q)))
        raise ContractViolationError("cannot reverse a twist with nonzero delta")


@lru_cache(maxsize=None)
def _ops_for(base: Base):
    if isinstance(base, Rationals):
        return QOps()
    if isinstance(base, PrimeField):
        return FpOps(base.p)
    raise TypeError(f"no coefficient ops for {base!r}")


def constant_ops(base: Base):
    """Operations on the constants of a base (inner base for function fields)."""
    if isinstance(base, RationalFunctions):
        return _ops_for(base.base)
    return _ops_for(base)


# --- scalars ---


@dataclass(frozen=True, slots=True)
class Scalar:
    """A canonical exact element of K under a FieldSpec.

    Payload: a Fraction (rationals), an int residue (prime field), or a
    normalized pair (numerator poly, denominator poly) of coefficient tuples.
    """

    spec: FieldSpec
    val: object

    def __add__(self, other):
        return scalar_add(self, other)

    def __sub__(self, other):
        return scalar_sub(self, other)

    def __mul__(self, other):
        return scalar_mul(self, other)

    def __truediv__(self, other):
        return scalar_div(self, other)

    def __neg__(self):
        return scalar_neg(self)

    def __bool__(self):
        return not scalar_is_zero(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _check_specs(a: Scalar, b: Scalar):
    if a.spec != b.spec:
        raise SpecMismatchError(f"mixed field specs: {a.spec!r} vs {b.spec!r}")


def _normalize_ratfunc(base: RationalFunctions, num: tuple, den: tuple):
    """Reduce num/den and put the denominator in canonical form."""
    F = constant_ops(base)
    num, den = pr.ptrim(num), pr.ptrim(den)
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return (), (F.one,)
    if isinstance(base.base, PrimeField):
        g = pr.pgcd_monic(F, num, den)
        if pr.pdeg(g) > 0:
            num, _ = pr.pdivmod(F, num, g)
            den, _ = pr.pdivmod(F, den, g)
        lead_inv = F.div(F.one, den[-1])
        return pr.pscale(F, lead_inv, num), pr.pscale(F, lead_inv, den)
    # rational coefficients: gcd on primitive integer polynomials
    inum, fnum = pr.q_poly_to_int(num)
    iden, fden = pr.q_poly_to_int(den)
    g = pr.zgcd_poly(inum, iden)
    if pr.pdeg(g) > 0:
        inum = pr.zdiv_exact(inum, g)
        iden = pr.zdiv_exact(iden, g)
    factor = fnum / fden
    if iden[-1] < 0:
        iden = tuple(-c for c in iden)
        factor = -factor
    new_num = tuple(factor * c for c in inum)
    new_den = tuple(Fraction(c) for c in iden)
    return new_num, new_den


def make_scalar(spec: FieldSpec, value) -> Scalar:
    """Build a normalized Scalar from a raw payload."""
    base = spec.base
    if isinstance(base, Rationals):
        return Scalar(spec, Fraction(value))
    if isinstance(base, PrimeField):
        return Scalar(spec, int(value) % base.p)
    num, den = value
    return Scalar(spec, _normalize_ratfunc(base, tuple(num), tuple(den)))


def scalar_from_int(spec: FieldSpec, n: int) -> Scalar:
    base = spec.base
    if isinstance(base, Rationals):
        return Scalar(spec, Fraction(n))
    if isinstance(base, PrimeField):
        return Scalar(spec, n % base.p)
    F = constant_ops(base)
    return Scalar(spec, (pr.pconst(F, F.from_int(n)), (F.one,)))


def scalar_zero(spec: FieldSpec) -> Scalar:
    return scalar_from_int(spec, 0)


def scalar_one(spec: FieldSpec) -> Scalar:
    return scalar_from_int(spec, 1)


def scalar_t(spec: FieldSpec) -> Scalar:
    """The generator t of a rational function base."""
    if not spec.is_function_field:
        raise ContractViolationError("t exists only over a function field base")
    F = constant_ops(spec.base)
    return Scalar(spec, (pr.pvar(F), (F.one,)))


def scalar_is_zero(a: Scalar) -> bool:
    if isinstance(a.spec.base, RationalFunctions):
        return not a.val[0]
    return a.val == 0


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    _check_specs(a, b)
    base = a.spec.base
    if not isinstance(base, RationalFunctions):
        ops = _ops_for(base)
        return Scalar(a.spec, ops.add(a.val, b.val))
    F = constant_ops(base)
    (n1, d1), (n2, d2) = a.val, b.val
    num = pr.padd(F, pr.pmul(F, n1, d2), pr.pmul(F, n2, d1))
    return make_scalar(a.spec, (num, pr.pmul(F, d1, d2)))


def scalar_neg(a: Scalar) -> Scalar:
    base = a.spec.base
    if not isinstance(base, RationalFunctions):
        ops = _ops_for(base)
        return Scalar(a.spec, ops.neg(a.val))
    F = constant_ops(base)
    num, den = a.val
    return Scalar(a.spec, (pr.pneg(F, num), den))


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    return scalar_add(a, scalar_neg(b))


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    _check_specs(a, b)
    base = a.spec.base
    if not isinstance(base, RationalFunctions):
        ops = _ops_for(base)
        return Scalar(a.spec, ops.mul(a.val, b.val))
    F = constant_ops(base)
    (n1, d1), (n2, d2) = a.val, b.val
    return make_scalar(a.spec, (pr.pmul(F, n1, n2), pr.pmul(F, d1, d2)))


def scalar_inv(a: Scalar) -> Scalar:
    if scalar_is_zero(a):
        raise ZeroDivisionError("inverse of zero scalar")
    base = a.spec.base
    if not isinstance(base, RationalFunctions):
        ops = _ops_for(base)
        return Scalar(a.spec, ops.div(ops.one, a.val))
    num, den = a.val
    return make_scalar(a.spec, (den, num))


def scalar_div(a: Scalar, b: Scalar) -> Scalar:
    _check_specs(a, b)
    if scalar_is_zero(b):
        raise ZeroDivisionError("scalar division by zero")
    return scalar_mul(a, scalar_inv(b))


def scalar_arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Tagged field operation, the spec-level entry point."""
    table = {"add": scalar_add, "sub": scalar_sub, "mul": scalar_mul, "div": scalar_div}
    try:
        fn = table[op]
    except KeyError:
        raise ContractViolationError(f"unknown scalar operation {op!r}") from None
    return fn(a, b)


# --- twist maps ---


def _substitute(a: Scalar, subst) -> Scalar:
    F = constant_ops(a.spec.base)
    num, den = a.val
    return make_scalar(a.spec, (subst(F, num), subst(F, den)))


@lru_cache(maxsize=1 << 16)
def apply_sigma(a: Scalar) -> Scalar:
    """The twist automorphism sigma."""
    twist = a.spec.twist
    if isinstance(twist, (Commutative, Differential)):
        return a
    if isinstance(twist, Shift):
        c = constant_ops(a.spec.base).from_int(twist.step)
        return _substitute(a, lambda F, p: pr.psub_linear(F, p, c))
    return _substitute(a, lambda F, p: pr.pscale_var(F, p, twist.q))


@lru_cache(maxsize=1 << 16)
def apply_sigma_inv(a: Scalar) -> Scalar:
    """The inverse automorphism sigma^(-1)."""
    twist = a.spec.twist
    if isinstance(twist, (Commutative, Differential)):
        return a
    if isinstance(twist, Shift):
        c = constant_ops(a.spec.base).from_int(-twist.step)
        return _substitute(a, lambda F, p: pr.psub_linear(F, p, c))
    ops = constant_ops(a.spec.base)
    qinv = ops.div(ops.one, twist.q)
    return _substitute(a, lambda F, p: pr.pscale_var(F, p, qinv))


@lru_cache(maxsize=1 << 16)
def apply_delta(a: Scalar) -> Scalar:
    """The left sigma-derivation delta; the formal derivative when differential."""
    if not isinstance(a.spec.twist, Differential):
        return scalar_zero(a.spec)
    F = constant_ops(a.spec.base)
    num, den = a.val
    dnum = pr.pderiv(F, num)
    dden = pr.pderiv(F, den)
    new_num = pr.psub(F, pr.pmul(F, dnum, den), pr.pmul(F, num, dden))
    return make_scalar(a.spec, (new_num, pr.pmul(F, den, den)))


def higher_delta(d: int, a: Scalar) -> Scalar:
    """delta_d = sigma^(-1) (-delta sigma^(-1))^d, so that pi*a = sum delta_d(a) pi^(d+1)."""
    if d < 0:
        raise ContractViolationError("higher derivation index must be nonnegative")
    x = a
    for _ in range(d):
        x = scalar_neg(apply_delta(apply_sigma_inv(x)))
    return apply_sigma_inv(x)


def retwist_scalar(a: Scalar, spec: FieldSpec) -> Scalar:
    """Reinterpret a scalar under another spec sharing the same base."""
    if a.spec.base != spec.base:
        raise SpecMismatchError("retwist requires an identical base field")
    return Scalar(spec, a.val)


# --- text grammar ---
#
# integers with optional sign; a/b fractions; polynomials in the declared
# variable with ^ powers and optional *; rational functions as (poly)/(poly).


def _tokenize(text: str) -> list:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in scalar text")
    return toks


class _PolyParser:
    def __init__(self, toks, F, var):
        self.toks = toks
        self.pos = 0
        self.F = F
        self.var = var

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse_poly(self) -> tuple:
        poly = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            term = self.parse_term()
            poly = pr.padd(self.F, poly, term if op == "+" else pr.pneg(self.F, term))
        return poly

    def parse_term(self) -> tuple:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        coeff = self.F.from_int(sign)
        poly = None
        saw_factor = False
        while True:
            kind = self.peek()
            if kind == "int":
                n = int(self.take()[1])
                c = self.F.from_int(n)
                if self.peek() == "/":
                    save = self.pos
                    self.take()
                    if self.peek() == "int":
                        c = self.F.div(c, self.F.from_int(int(self.take()[1])))
                    else:
                        self.pos = save
                        raise ParseError(
                            "write rational functions as (poly)/(poly)"
                        )
                coeff = self.F.mul(coeff, c)
                saw_factor = True
            elif kind == "name":
                name = self.take()[1]
                if name != self.var:
                    raise ParseError(f"unknown variable {name!r}, expected {self.var!r}")
                power = 1
                if self.peek() == "^":
                    self.take()
                    if self.peek() != "int":
                        raise ParseError("expected integer exponent after ^")
                    power = int(self.take()[1])
                mono = [self.F.zero] * power + [self.F.one]
                factor = tuple(mono)
                poly = factor if poly is None else pr.pmul(self.F, poly, factor)
                saw_factor = True
            elif kind == "*":
                self.take()
                continue
            else:
                break
        if not saw_factor:
            raise ParseError("empty term in scalar text")
        if poly is None:
            poly = (self.F.one,)
        return pr.pscale(self.F, coeff, poly)

    def expect_end(self):
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input near token {self.toks[self.pos]!r}")


def _split_ratfunc(text: str) -> tuple[str, str] | None:
    """Split '(num)/(den)' at the top level, or return None."""
    s = text.strip()
    if not s.startswith("("):
        return None
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                rest = s[i + 1 :].lstrip()
                if not rest.startswith("/"):
                    return None
                den = rest[1:].strip()
                if not (den.startswith("(") and den.endswith(")")):
                    return None
                return s[1:i], den[1:-1]
    return None


def parse_scalar(spec: FieldSpec, text: str) -> Scalar:
    """Parse the scalar text grammar under a spec."""
    base = spec.base
    if not isinstance(base, RationalFunctions):
        F = _ops_for(base)
        parser = _PolyParser(_tokenize(text), F, var="")
        poly = parser.parse_poly()
        parser.expect_end()
        if pr.pdeg(poly) > 0:
            raise ParseError("constant base admits no variable")
        return Scalar(spec, poly[0] if poly else F.zero)
    F = constant_ops(base)
    pair = _split_ratfunc(text)
    if pair is not None:
        np_, dp_ = pair
        pn = _PolyParser(_tokenize(np_), F, base.var)
        num = pn.parse_poly()
        pn.expect_end()
        pd = _PolyParser(_tokenize(dp_), F, base.var)
        den = pd.parse_poly()
        pd.expect_end()
        if not den:
            raise ParseError("zero denominator")
        return make_scalar(spec, (num, den))
    parser = _PolyParser(_tokenize(text), F, base.var)
    poly = parser.parse_poly()
    parser.expect_end()
    return make_scalar(spec, (poly, (F.one,)))


def _format_coeff(base: Base, c) -> str:
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else str(c.numerator)
    return str(c)


def _format_poly(base: RationalFunctions, poly: tuple) -> str:
    if not poly:
        return "0"
    var = base.var
    parts = []
    for d in range(len(poly) - 1, -1, -1):
        c = poly[d]
        if c == 0:
            continue
        text = _format_coeff(base, c)
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        if d > 0:
            mono = var if d == 1 else f"{var}^{d}"
            if text == "1":
                text = mono
            else:
                text = f"{text}{mono}"
        if not parts:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts)


def format_scalar(a: Scalar) -> str:
    """Canonical text form; parse_scalar(spec, format_scalar(a)) == a."""
    base = a.spec.base
    if isinstance(base, Rationals):
        f = a.val
        return str(f) if f.denominator != 1 else str(f.numerator)
    if isinstance(base, PrimeField):
        return str(a.val)
    num, den = a.val
    if den == (constant_ops(base).one,):
        return _format_poly(base, num)
    return f"({_format_poly(base, num)})/({_format_poly(base, den)})"
