"""Dense univariate polynomials in t with exact rational coefficients."""
from __future__ import annotations

import math
from fractions import Fraction

from ..errors import NotDivisible, ZeroPolynomial


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class RationalPolynomial:
    """``coeffs[i]`` is the coefficient of ``t**i``; no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, degree, c=1):
        return cls([0] * degree + [c])

    @classmethod
    def from_high(cls, coeffs):
        """Build from coefficients listed highest degree first."""
        return cls(list(reversed(list(coeffs))))

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other)
        return isinstance(other, RationalPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .grammar import format_poly

        return f"RationalPolynomial({format_poly(self)!r})"

    # -- ring operations --------------------------------------------------
    @staticmethod
    def _lift(v):
        return v if isinstance(v, RationalPolynomial) else RationalPolynomial.constant(v)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = RationalPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "RationalPolynomial"):
        """Quotient and remainder with ``deg(rem) < deg(other)``."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq] if dq > 0 else [])

    def divide_exact(self, other) -> "RationalPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            first = next(c for c in r.coeffs if c != 0)
            raise NotDivisible(f"nonzero remainder, first coefficient {first}", remainder=r)
        return q

    # -- calculus and evaluation ------------------------------------------
    def derivative(self):
        return RationalPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, t):
        """Horner evaluation; exact for int/Fraction input, float otherwise."""
        if isinstance(t, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * t + float(c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval(self, t):
        return self(t)

    # -- normal forms -----------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` is primitive integral."""
        if self.is_zero():
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self.coeffs:
            num = math.gcd(num, int(c * den))
        return Fraction(num, den)

    def primitive(self) -> "RationalPolynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        p = self * (1 / self.content())
        return -p if p.leading < 0 else p

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def low_order(self) -> int:
        """Multiplicity of the root t = 0."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ZeroPolynomial("zero polynomial has no finite root order at 0")

    def deflate_zero(self, k: int) -> "RationalPolynomial":
        if any(c != 0 for c in self.coeffs[:k]):
            raise NotDivisible(f"not divisible by t^{k}", remainder=RationalPolynomial(self.coeffs[:k]))
        return RationalPolynomial(self.coeffs[k:])


T = RationalPolynomial([0, 1])
ONE = RationalPolynomial.constant(1)
UNIT_ROOT = RationalPolynomial([-1, 1])  # t - 1


def proportional(p: RationalPolynomial, q: RationalPolynomial):
    """Return ``c`` with ``p == c * q`` (``c`` may be any sign), else None."""
    if q.is_zero():
        return Fraction(1) if p.is_zero() else None
    if p.degree != q.degree:
        return None
    c = p.leading / q.leading
    return c if p == q * c else None


def factor_unit_root(p: RationalPolynomial, k: int) -> RationalPolynomial:
    """Exact quotient ``p / (t - 1)**k``; raises NotDivisible otherwise."""
    if k < 1:
        raise ValueError("k must be at least 1")
    out = p
    for i in range(k):
        try:
            out = out.divide_exact(UNIT_ROOT)
        except NotDivisible as exc:
            raise NotDivisible(f"(t-1)^{k} does not divide: failed at power {i + 1}; {exc}",
                               remainder=exc.remainder) from None
    return out


def unit_root_multiplicity(p: RationalPolynomial) -> int:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    k = 0
    while True:
        q, r = p.divmod(UNIT_ROOT)
        if not r.is_zero():
            return k
        p, k = q, k + 1


def nonneg_coeffs(p: RationalPolynomial) -> bool:
    return not p.is_zero() and all(c >= 0 for c in p.coeffs)
