"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis 1, z, ..., z^(phi(M)-1) modulo the
M-th cyclotomic polynomial, as an integer numerator vector over a shared
positive denominator.  Mixed-order arithmetic embeds both operands into
Q(zeta_lcm) first.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CycNumber",
    "cyclotomic_polynomial",
    "euler_phi",
    "q_integer",
    "zeta",
]


def _poly_divexact(num, den):
    """Exact division of integer polynomials (low -> high), den monic."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Coefficients (low -> high) of the M-th cyclotomic polynomial."""
    if M < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(M: int) -> int:
    return len(cyclotomic_polynomial(M)) - 1


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


class _FieldData:
    """Per-order tables: powers of zeta and normalized traces."""

    __slots__ = ("order", "phi", "powers", "trace")

    def __init__(self, M):
        poly = cyclotomic_polynomial(M)
        phi = len(poly) - 1
        self.order = M
        self.phi = phi
        powers = []
        cur = [1] + [0] * (phi - 1) if phi else []
        for _ in range(max(M, 2 * phi)):
            powers.append(tuple(cur))
            # multiply by z and reduce with z^phi = -sum(a_i z^i)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * a for c, a in zip(cur, poly)]
        self.powers = powers
        trace = []
        for i in range(phi):
            m = M // math.gcd(i, M)
            trace.append(Fraction(_mobius(m), euler_phi(m)))
        self.trace = trace


@lru_cache(maxsize=None)
def _field(M: int) -> _FieldData:
    return _FieldData(M)


def _normalize(num, den):
    g = math.gcd(den, *num)
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return num, den


def _make(order, num, den=1):
    obj = object.__new__(CycNumber)
    if den != 1:
        if den < 0:
            num = [-c for c in num]
            den = -den
        num, den = _normalize(num, den)
    obj.order = order
    obj._num = tuple(num)
    obj._den = den
    obj._hash = None
    return obj


def _reduce_poly(order, coeffs):
    """Reduce an integer polynomial in z (any length) modulo Phi_order."""
    fd = _field(order)
    phi = fd.phi
    out = list(coeffs[:phi]) + [0] * (phi - len(coeffs[:phi]))
    powers = fd.powers
    M = order
    for j in range(phi, len(coeffs)):
        c = coeffs[j]
        if c:
            row = powers[j % M]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _coerce(x):
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, int):
        return _make(1, (x,))
    if isinstance(x, Fraction):
        return _make(1, (x.numerator,), x.denominator)
    return None


def _lift(a: "CycNumber", M: int) -> "CycNumber":
    if a.order == M:
        return a
    if M % a.order:
        raise ValueError(f"cannot embed order {a.order} into order {M}")
    s = M // a.order
    fd = _field(M)
    out = [0] * fd.phi
    for i, c in enumerate(a._num):
        if c:
            row = fd.powers[(i * s) % M]
            for j in range(fd.phi):
                if row[j]:
                    out[j] += c * row[j]
    return _make(M, out, a._den)


def _common(a, b):
    if a.order == b.order:
        return a, b
    if a.order == 1 and b.order != 1:
        return _make(b.order, a._num + (0,) * (len(b._num) - 1), a._den), b
    if b.order == 1:
        return a, _make(a.order, b._num + (0,) * (len(a._num) - 1), b._den)
    M = a.order * b.order // math.gcd(a.order, b.order)
    return _lift(a, M), _lift(b, M)


def _frac_poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class CycNumber:
    """An element of Q(zeta_order) in canonical power-basis form.

    >>> z = zeta(5)
    >>> z * z**4 == 1
    True
    """

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order=1, coeffs=(0,)):
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        num = [int(f * den) for f in fracs]
        num = _reduce_poly(order, num)
        made = _make(order, num, den)
        self.order = made.order
        self._num = made._num
        self._den = made._den
        self._hash = None

    @classmethod
    def rational(cls, x) -> "CycNumber":
        x = Fraction(x)
        return _make(1, (x.numerator,), x.denominator)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def phi(self) -> int:
        return len(self._num)

    def embed(self, order: int) -> "CycNumber":
        """The same number viewed in Q(zeta_order); order must be a multiple."""
        return _lift(self, order)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self):
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def to_complex(self) -> complex:
        M = self.order
        return sum(c * cmath.exp(2j * math.pi * i / M) for i, c in enumerate(self._num)) / self._den

    # arithmetic

    def __neg__(self):
        return _make(self.order, [-c for c in self._num], self._den)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = _common(self, o)
        if a._den == b._den:
            return _make(a.order, [x + y for x, y in zip(a._num, b._num)], a._den)
        da, db = a._den, b._den
        return _make(a.order, [x * db + y * da for x, y in zip(a._num, b._num)], da * db)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = _common(self, o)
        den = a._den * b._den
        an, bn = a._num, b._num
        if not any(bn[1:]):
            c = bn[0]
            return _make(a.order, [x * c for x in an], den)
        if not any(an[1:]):
            c = an[0]
            return _make(a.order, [x * c for x in bn], den)
        phi = len(an)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        return _make(a.order, _reduce_poly(a.order, conv), den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if not any(self._num):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if not any(self._num[1:]):
            return _make(self.order, (self._den,) + (0,) * (len(self._num) - 1), self._num[0])
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _trim([Fraction(c) for c in self._num])
        r0, r1 = modulus, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        g = r0[0]
        inv = [c * self._den / g for c in s0]
        return CycNumber(self.order, inv)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = _make(self.order, (1,) + (0,) * (len(self._num) - 1))
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.order == o.order:
            return self._num == o._num and self._den == o._den
        a, b = _common(self, o)
        return a._num == b._num and a._den == b._den

    def __hash__(self):
        # normalized trace does not depend on the field the number lives in
        if self._hash is None:
            tr = _field(self.order).trace
            t = sum((c * w for c, w in zip(self._num, tr) if c), Fraction(0)) / self._den
            self._hash = hash(t)
        return self._hash

    # text

    def __str__(self):
        terms = []
        for i, c in enumerate(self._num):
            if not c:
                continue
            f = Fraction(c, self._den)
            if i == 0:
                body = str(abs(f))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                body = mono if abs(f) == 1 else f"{abs(f)}*{mono}"
            terms.append(("-" if f < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"CycNumber({self.order}, '{self}')"

    _TERM = re.compile(r"([+-]?)([^+-]+)")

    @classmethod
    def parse(cls, text: str, order: int) -> "CycNumber":
        """Inverse of ``str``: accepts sums of ``c``, ``c*z^k``, ``z^k``, ``z``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty cyclotomic literal")
        fd = _field(order)
        acc = [Fraction(0)] * fd.phi
        pos = 0
        for m in cls._TERM.finditer(s):
            if m.start() != pos:
                raise ValueError(f"cannot parse {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            body = m.group(2)
            if "z" in body:
                coef, _, mono = body.rpartition("z")
                coef = coef.rstrip("*")
                c = Fraction(coef) if coef else Fraction(1)
                k = int(mono[1:]) if mono.startswith("^") else (1 if mono == "" else None)
                if k is None:
                    raise ValueError(f"bad monomial in {text!r}")
            else:
                c, k = Fraction(body), 0
            row = fd.powers[k % order] if fd.phi else ()
            for i, r in enumerate(row):
                if r:
                    acc[i] += sign * c * r
        if pos != len(s):
            raise ValueError(f"cannot parse {text!r}")
        return cls(order, acc)


ZERO = CycNumber.rational(0)
ONE = CycNumber.rational(1)


@lru_cache(maxsize=None)
def zeta(M: int, k: int = 1) -> CycNumber:
    """zeta_M ** k in canonical form."""
    fd = _field(M)
    return _make(M, fd.powers[k % M])


def q_integer(n: int, q) -> CycNumber:
    """[n]_q = (q^n - q^-n) / (q - q^-1), with the limit values at q = 1 and q = -1."""
    q = _coerce(q)
    if q is None:
        raise TypeError("q must be a cyclotomic or rational number")
    if q.is_zero():
        raise ZeroDivisionError("q-integer undefined at q = 0")
    if q == 1:
        return CycNumber.rational(n)
    if q == -1:
        return CycNumber.rational(n * (-1) ** (n - 1))
    return (q ** n - q ** (-n)) / (q - q.inverse())
