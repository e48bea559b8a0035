"""Dense univariate polynomial arithmetic over exact base fields.

Polynomials are tuples of coefficients in ascending degree with no trailing
zero; the zero polynomial is the empty tuple.  Coefficients are plain values
(``fractions.Fraction`` over the rationals, ``int`` residues modulo p) and a
small adapter object supplies the field operations, so no per-element wrapper
is allocated on hot paths.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable


class QOps:
    """Field operations for the rationals, represented as Fractions."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def from_int(n: int):
        return Fraction(n)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0


class FpOps:
    """Field operations for the residues modulo a prime p."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def from_int(self, n: int):
        return n % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0


def ptrim(coeffs: Iterable) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def pdeg(a: tuple) -> int:
    """Degree of a, with deg 0 = -1."""
    return len(a) - 1


def pconst(F, c) -> tuple:
    return () if F.is_zero(c) else (c,)


def pvar(F) -> tuple:
    return (F.zero, F.one)


def padd(F, a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return ptrim(out)


def pneg(F, a: tuple) -> tuple:
    return tuple(F.neg(c) for c in a)


def psub(F, a: tuple, b: tuple) -> tuple:
    return padd(F, a, pneg(F, b))


def pscale(F, c, a: tuple) -> tuple:
    if F.is_zero(c):
        return ()
    return ptrim(F.mul(c, x) for x in a)


def _conv_int(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def pmul(F, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    # integer convolutions avoid a gcd per coefficient product
    if isinstance(F, QOps):
        da = 1
        for c in a:
            da = da * c.denominator // _int_gcd(da, c.denominator)
        db = 1
        for c in b:
            db = db * c.denominator // _int_gcd(db, c.denominator)
        conv = _conv_int([int(c * da) for c in a], [int(c * db) for c in b])
        scale = da * db
        return ptrim(Fraction(v, scale) for v in conv)
    if isinstance(F, FpOps):
        p = F.p
        return ptrim(v % p for v in _conv_int(a, b))
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if F.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ca, cb))
    return ptrim(out)


def pdivmod(F, a: tuple, b: tuple) -> tuple[tuple, tuple]:
    """Quotient and remainder of a by b over the coefficient field."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    lead_inv = F.div(F.one, b[-1])
    q = [F.zero] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = F.mul(rem[k + len(b) - 1], lead_inv)
        if F.is_zero(c):
            continue
        q[k] = c
        for j, cb in enumerate(b):
            rem[k + j] = F.sub(rem[k + j], F.mul(c, cb))
    return ptrim(q), ptrim(rem)


def pgcd_monic(F, a: tuple, b: tuple) -> tuple:
    """Monic gcd via the Euclidean algorithm; gcd of zeros is zero."""
    while b:
        _, r = pdivmod(F, a, b)
        a, b = b, r
    if not a:
        return ()
    lead_inv = F.div(F.one, a[-1])
    return pscale(F, lead_inv, a)


def pderiv(F, a: tuple) -> tuple:
    if len(a) <= 1:
        return ()
    return ptrim(F.mul(F.from_int(i), a[i]) for i in range(1, len(a)))


def psub_linear(F, a: tuple, c) -> tuple:
    """Substitute t -> t + c via Horner on (t + c)."""
    res: tuple = ()
    shift = (c, F.one)
    for coeff in reversed(a):
        res = padd(F, pmul(F, res, shift), pconst(F, coeff))
    return res


def pscale_var(F, a: tuple, q) -> tuple:
    """Substitute t -> q*t; coefficient i picks up a factor q^i."""
    out = []
    qk = F.one
    for c in a:
        out.append(F.mul(c, qk))
        qk = F.mul(qk, q)
    return ptrim(out)


def peval(F, a: tuple, x):
    res = F.zero
    for coeff in reversed(a):
        res = F.add(F.mul(res, x), coeff)
    return res


# --- integer polynomial helpers (coefficient control for gcds over Q) ---


def zcontent(a: tuple[int, ...]) -> int:
    g = 0
    for c in a:
        g = _int_gcd(g, abs(c))
    return g


def zprimitive(a: tuple[int, ...]) -> tuple[int, ...]:
    """Divide out the content; normalize the leading coefficient positive."""
    if not a:
        return ()
    g = zcontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _zpseudo_rem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Pseudo-remainder of a by b over the integers."""
    rem = list(a)
    lb = b[-1]
    while len(rem) >= len(b):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b):
            break
        c = rem[-1]
        k = len(rem) - len(b)
        rem = [lb * x for x in rem]
        for j, cb in enumerate(b):
            rem[k + j] -= c * cb
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(rem)


_GCD_PRIMES = (2147483647, 2147483629, 2147483587, 2147483563)


def _gcd_deg_mod_p(a: tuple[int, ...], b: tuple[int, ...], p: int) -> int:
    fa = [c % p for c in a]
    fb = [c % p for c in b]
    while fb:
        inv = pow(fb[-1], p - 2, p)
        while len(fa) >= len(fb):
            c = (fa[-1] * inv) % p
            k = len(fa) - len(fb)
            if c:
                for j, cb in enumerate(fb):
                    fa[k + j] = (fa[k + j] - c * cb) % p
            fa.pop()
            while fa and fa[-1] == 0:
                fa.pop()
        fa, fb = fb, fa
    return len(fa) - 1


def zgcd_poly(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Primitive gcd of integer polynomials (primitive PRS).

    Fast path: over any prime p not dividing both leading coefficients the
    gcd degree mod p bounds the true gcd degree, so a constant mod-p gcd
    certifies coprimality without running the PRS.  This is where almost all
    calls land (reduced fractions stay reduced under arithmetic).
    """
    a, b = zprimitive(a), zprimitive(b)
    if not a or not b:
        return a or b
    if len(a) == 1 or len(b) == 1:
        return (1,)
    for p in _GCD_PRIMES:
        if a[-1] % p and b[-1] % p:
            if _gcd_deg_mod_p(a, b, p) == 0:
                return (1,)
            break
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zpseudo_rem(a, b)
        a, b = b, zprimitive(r)
    return a


def zdiv_exact(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Exact division of integer polynomials; b must divide a."""
    if not a:
        return ()
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c, leftover = divmod(rem[k + len(b) - 1], b[-1])
        if leftover:
            raise ArithmeticError("inexact integer polynomial division")
        q[k] = c
        for j, cb in enumerate(b):
            rem[k + j] -= c * cb
    if any(rem):
        raise ArithmeticError("inexact integer polynomial division")
    return ptrim(q)


def q_poly_to_int(a: tuple[Fraction, ...]) -> tuple[tuple[int, ...], Fraction]:
    """Write a rational polynomial as factor * (primitive integer polynomial)."""
    if not a:
        return (), Fraction(1)
    den_lcm = 1
    for c in a:
        den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
    ints = tuple(int(c * den_lcm) for c in a)
    prim = zprimitive(ints)
    # factor restores a from prim: a = factor * prim
    lead_ratio = a[-1] / prim[-1]
    return prim, lead_ratio
