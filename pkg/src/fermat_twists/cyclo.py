"""Exact arithmetic in Z[zeta_m] and in polynomial rings over it.

Elements live in the power basis 1, z, ..., z^(phi(m)-1) modulo the m-th
cyclotomic polynomial, so equality is coefficient equality.
"""
from __future__ import annotations

import functools
from typing import Iterable, Sequence


class NonIntegralCoefficient(ArithmeticError):
    """A polynomial expected to lie in Z[t] has a coefficient outside Z."""


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m with ascending integer coefficients."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(a: list[int], b: Sequence[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for shift in range(len(q) - 1, -1, -1):
        c = a[shift + len(b) - 1] // b[-1]
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
    assert not any(a), "inexact cyclotomic division"
    return q


@functools.lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j: z^j written in the power basis, for j in [0, m)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * f for c, f in zip(cur, phi[:deg])]
    return tuple(rows)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CyclotomicInt:
    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[int] = ()):
        deg = euler_phi(m)
        c = [int(x) for x in coeffs]
        if len(c) > deg:
            c = _reduce(m, c)
        self.m = m
        self.coeffs = tuple(c) + (0,) * (deg - len(c))

    @classmethod
    def from_int(cls, m: int, value: int) -> "CyclotomicInt":
        return cls(m, [value])

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "CyclotomicInt":
        return cls(m, _reduction_table(m)[power % m])

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Sequence[int]) -> "CyclotomicInt":
        """sum_e counts[e] * z^e for e in [0, m)."""
        return cls(m, _reduce(m, [int(c) for c in counts]))

    def _check(self, other: "CyclotomicInt") -> None:
        if other.m != self.m:
            raise ValueError(f"mismatched cyclotomic orders {self.m} and {other.m}")

    def _wrap(self, other) -> "CyclotomicInt":
        if isinstance(other, CyclotomicInt):
            self._check(other)
            return other
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.m, other)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return CyclotomicInt(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return CyclotomicInt(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        m = self.m
        cyc = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        cyc[(i + j) % m] += a * b
        return CyclotomicInt(m, _reduce(m, cyc))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CyclotomicInt":
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        result = CyclotomicInt.from_int(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self) -> "CyclotomicInt":
        """Complex conjugation z -> z^-1."""
        m = self.m
        cyc = [0] * m
        for i, a in enumerate(self.coeffs):
            cyc[(-i) % m] += a
        return CyclotomicInt(m, _reduce(m, cyc))

    def abs_square(self) -> "CyclotomicInt":
        return self * self.conj()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_rational():
            raise NonIntegralCoefficient(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicInt):
            return self.m == other.m and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.m}, {list(self.coeffs)})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicInt":
        return cls(int(data["m"]), data["coeffs"])


def _reduce(m: int, cyc: Sequence[int]) -> list[int]:
    """Reduce a coefficient vector in z^0..z^(len-1) to the power basis mod Phi_m."""
    table = _reduction_table(m)
    deg = euler_phi(m)
    out = [0] * deg
    for j, c in enumerate(cyc):
        if c:
            row = table[j % m]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return out


def cyc_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a * b


def cyc_abs_square(a: CyclotomicInt) -> CyclotomicInt:
    return a.abs_square()


class CycPolynomial:
    """Polynomial in t with coefficients in Z[zeta_m], ascending powers of t."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[CyclotomicInt | int] = ()):
        c = [x if isinstance(x, CyclotomicInt) else CyclotomicInt.from_int(m, x) for x in coeffs]
        for x in c:
            if x.m != m:
                raise ValueError("mismatched cyclotomic orders")
        while c and not c[-1]:
            c.pop()
        self.m = m
        self.coeffs = tuple(c)

    @classmethod
    def one(cls, m: int) -> "CycPolynomial":
        return cls(m, [1])

    @classmethod
    def one_minus(cls, value: CyclotomicInt, degree: int = 1) -> "CycPolynomial":
        """1 - value * t^degree."""
        m = value.m
        coeffs = [CyclotomicInt.from_int(m, 1)] + [CyclotomicInt(m)] * (degree - 1) + [-value]
        return cls(m, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "CycPolynomial") -> "CycPolynomial":
        if other.m != self.m:
            raise ValueError("mismatched cyclotomic orders")
        if not self.coeffs or not other.coeffs:
            return CycPolynomial(self.m)
        zero = CyclotomicInt(self.m)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return CycPolynomial(self.m, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycPolynomial):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        return f"CycPolynomial({self.m}, [{', '.join(str(c) for c in self.coeffs)}])"

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coeffs]


def cycpoly_product(factors: Iterable[CycPolynomial], m: int | None = None) -> CycPolynomial:
    factors = list(factors)
    if not factors:
        if m is None:
            raise ValueError("empty product needs an explicit m")
        return CycPolynomial.one(m)
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def to_integer_poly(poly: CycPolynomial) -> list[int]:
    """Coefficients in Z; raises NonIntegralCoefficient if any lies outside Z."""
    out = []
    for i, c in enumerate(poly.coeffs):
        if not c.is_rational():
            raise NonIntegralCoefficient(f"coefficient of t^{i} is {c}, not an integer")
        out.append(c.coeffs[0])
    return out
