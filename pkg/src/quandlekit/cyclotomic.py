"""Exact arithmetic in the cyclotomic fields Q(zeta_k).

An element is a polynomial in ``zeta_k`` with rational coefficients, reduced
modulo the k-th cyclotomic polynomial, so equal numbers have equal
coefficient tuples.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _int_poly_div(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (low degree first), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    assert not any(num[: len(den) - 1]), "non-exact division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_k, lowest degree first."""
    if k < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (k - 1) + [1]  # x^k - 1
    for d in range(1, k):
        if k % d == 0:
            poly = _int_poly_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(k: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced form of x^j for 0 <= j < max(k, 2 * deg(Phi_k))."""
    phi = cyclotomic_polynomial(k)
    n = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * n
    if n:
        cur[0] = Fraction(1)
    for _ in range(max(k, 2 * n)):
        rows.append(tuple(cur))
        # multiply by x and reduce x^n = -sum phi_i x^i
        top = cur[-1] if n else Fraction(0)
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:n])]
    return tuple(rows)


def totient(k: int) -> int:
    return len(cyclotomic_polynomial(k)) - 1


class CycloScalar:
    """Element of Q(zeta_k) stored as reduced rational coefficients."""

    __slots__ = ("k", "c", "_hash")

    def __init__(self, k: int, coeffs=()):
        self.k = k
        self.c = _trim([Fraction(v) for v in coeffs])
        self._hash = None
        if len(self.c) > totient(k):
            self.c = _reduce(k, list(self.c))

    @classmethod
    def _raw(cls, k: int, c: tuple) -> "CycloScalar":
        obj = object.__new__(cls)
        obj.k = k
        obj.c = c
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, k: int, value) -> "CycloScalar":
        v = Fraction(value)
        return cls._raw(k, (v,) if v else ())

    @classmethod
    def zeta(cls, k: int, j: int = 1) -> "CycloScalar":
        """``zeta_k ** j``."""
        return cls._raw(k, _trim(list(_power_table(k)[j % k])))

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "CycloScalar":
        if isinstance(other, CycloScalar):
            if other.k != self.k:
                raise ValueError(f"conductor mismatch: {self.k} vs {other.k}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloScalar.rational(self.k, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return CycloScalar._raw(self.k, _trim(out))

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar._raw(self.k, tuple(-v for v in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if not a or not b:
            return CycloScalar._raw(self.k, ())
        if len(a) == 1:
            s = a[0]
            return CycloScalar._raw(self.k, tuple(s * v for v in b))
        if len(b) == 1:
            s = b[0]
            return CycloScalar._raw(self.k, tuple(s * v for v in a))
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    prod[i + j] += u * v
        return CycloScalar._raw(self.k, _reduce(self.k, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        if len(self.c) == 1:
            return CycloScalar._raw(self.k, (1 / self.c[0],))
        inv = _poly_inverse_mod(list(self.c), [Fraction(v) for v in cyclotomic_polynomial(self.k)])
        return CycloScalar._raw(self.k, _trim(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycloScalar.rational(self.k, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison -----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            return self.k == other.k and self.c == other.c
        if isinstance(other, (int, Fraction)):
            v = Fraction(other)
            return self.c == ((v,) if v else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c[0]) if len(self.c) == 1 else hash(self.c) if self.c else 0
        return self._hash

    def __bool__(self):
        return bool(self.c)

    @property
    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not rational")
        return self.c[0] if self.c else Fraction(0)

    def conjugate(self) -> "CycloScalar":
        """Image under ``zeta -> zeta^-1`` (complex conjugation)."""
        out = CycloScalar.rational(self.k, 0)
        for j, v in enumerate(self.c):
            if v:
                out = out + CycloScalar.zeta(self.k, -j) * v
        return out

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.k)
        return sum(float(v) * z ** j for j, v in enumerate(self.c))

    def format(self) -> str:
        if not self.c:
            return "0"
        return ",".join(_fmt(v) for v in self.c)

    def __repr__(self) -> str:
        return f"CycloScalar({self.k}, [{self.format()}])"


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_scalar(k: int, token: str) -> CycloScalar:
    """Inverse of :meth:`CycloScalar.format`: comma-separated rationals."""
    return CycloScalar(k, [Fraction(t) for t in token.split(",")])


def _reduce(k: int, coeffs: list) -> tuple:
    n = totient(k)
    if len(coeffs) <= n:
        return _trim(list(coeffs))
    table = _power_table(k)
    out = list(coeffs[:n])
    for j in range(n, len(coeffs)):
        v = coeffs[j]
        if v:
            row = table[j] if j < len(table) else table[j % k]
            for i in range(n):
                if row[i]:
                    out[i] += v * row[i]
    return _trim(out)


def _poly_divmod(a: list, b: list):
    a = list(a)
    b = list(_trim(list(b)))
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(_trim(list(a))) >= len(b):
        a = list(_trim(a))
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, v in enumerate(b):
            a[i + shift] -= f * v
        a.pop()
    return q, list(_trim(a))


def _poly_inverse_mod(a: list, m: list) -> list:
    """Inverse of ``a`` modulo the irreducible ``m`` by extended Euclid."""
    r0, r1 = m, list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while _trim(list(r1)):
        q, r = _poly_divmod(r0, r1)
        s = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1, s0, s1 = r1, r, s1, s
    r0 = list(_trim(list(r0)))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    _, rem = _poly_divmod([v / c for v in s0], m)
    return rem


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [u - v for u, v in zip(a, b)]


def roots_of_unity(k: int) -> list[CycloScalar]:
    return [CycloScalar.zeta(k, j) for j in range(k)]


def compatible_conductor(a: int, b: int) -> int:
    return a * b // gcd(a, b)
