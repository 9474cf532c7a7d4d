"""Expressions sum P_e(t) * R1^e1 * R2^e2 with R1 = sqrt(2t^4+2), R2 = sqrt(2t^2+2)."""
from __future__ import annotations

import math
from fractions import Fraction

from ..errors import NoProgress
from .polynomial import RationalPolynomial

R1_SQUARE = RationalPolynomial([2, 0, 0, 0, 2])
R2_SQUARE = RationalPolynomial([2, 0, 2])
MONOMIALS = ((0, 0), (1, 0), (0, 1), (1, 1))


class RadicalExpression:
    __slots__ = ("parts",)

    def __init__(self, parts=None):
        clean = {}
        for key, p in (parts or {}).items():
            if key not in MONOMIALS:
                raise ValueError(f"radical exponents must be 0/1, got {key}")
            if not isinstance(p, RationalPolynomial):
                p = RationalPolynomial.constant(p)
            if not p.is_zero():
                clean[key] = p
        self.parts = clean

    @classmethod
    def poly(cls, p):
        return cls({(0, 0): p})

    @classmethod
    def r1(cls, p=1):
        return cls({(1, 0): p})

    @classmethod
    def r2(cls, p=1):
        return cls({(0, 1): p})

    def __getitem__(self, key):
        return self.parts.get(key, RationalPolynomial())

    def is_zero(self):
        return not self.parts

    def is_polynomial(self):
        return all(k == (0, 0) for k in self.parts)

    def as_polynomial(self) -> RationalPolynomial:
        if not self.is_polynomial():
            raise ValueError("expression still contains radicals")
        return self[(0, 0)]

    def radical_monomials(self):
        """Non-trivial radical monomials present, e.g. ``{(1, 0), (1, 1)}``."""
        return {k for k in self.parts if k != (0, 0)}

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            other = RadicalExpression.poly(other)
        return isinstance(other, RadicalExpression) and self.parts == other.parts

    def __hash__(self):
        return hash(tuple(sorted(self.parts.items())))

    def __repr__(self):
        from .grammar import format_radical

        return f"RadicalExpression({format_radical(self)!r})"

    @staticmethod
    def _lift(v):
        if isinstance(v, RadicalExpression):
            return v
        return RadicalExpression.poly(v if isinstance(v, RationalPolynomial) else RationalPolynomial.constant(v))

    def __add__(self, other):
        other = self._lift(other)
        return RadicalExpression({k: self[k] + other[k] for k in MONOMIALS})

    __radd__ = __add__

    def __neg__(self):
        return RadicalExpression({k: -p for k, p in self.parts.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RadicalExpression({k: p * other for k, p in self.parts.items()})
        other = self._lift(other)
        out = {k: RationalPolynomial() for k in MONOMIALS}
        for (a1, a2), p in self.parts.items():
            for (b1, b2), q in other.parts.items():
                prod = p * q
                e1, e2 = a1 + b1, a2 + b2
                if e1 == 2:
                    prod, e1 = prod * R1_SQUARE, 0
                if e2 == 2:
                    prod, e2 = prod * R2_SQUARE, 0
                out[(e1, e2)] = out[(e1, e2)] + prod
        return RadicalExpression(out)

    __rmul__ = __mul__

    def divide_exact(self, q: RationalPolynomial) -> "RadicalExpression":
        return RadicalExpression({k: p.divide_exact(q) for k, p in self.parts.items()})

    def __call__(self, t: float) -> float:
        t = float(t)
        r1 = math.sqrt(2 * t**4 + 2)
        r2 = math.sqrt(2 * t * t + 2)
        return math.fsum(p(t) * r1**e1 * r2**e2 for (e1, e2), p in self.parts.items())


def proportional_radical(a: RadicalExpression, b: RadicalExpression):
    """``c`` with ``a == c * b`` for a rational ``c`` (any sign), else None."""
    if b.is_zero():
        return Fraction(1) if a.is_zero() else None
    if set(a.parts) != set(b.parts):
        return None
    key = next(iter(b.parts))
    c = a[key].leading / b[key].leading
    return c if a == b * c else None


def negative_coeff_count(e: RadicalExpression) -> int:
    return sum(1 for p in e.parts.values() for c in p.coeffs if c < 0)


def square_compare(s: RadicalExpression, t: RadicalExpression) -> RadicalExpression:
    """``s**2 - t**2`` after checking that squaring makes progress on ``s - t``.

    Progress means fewer distinct radical monomials; when ``s - t`` is already
    a polynomial (reorganising positive and negative terms) it means fewer
    negative coefficients.  The positivity of ``s`` is the caller's job.
    """
    before = s - t
    after = s * s - t * t
    if before.is_zero():
        return after
    n_before = len(before.radical_monomials())
    if n_before:
        if len(after.radical_monomials()) >= n_before:
            raise NoProgress(
                f"squaring leaves {len(after.radical_monomials())} radical monomial(s), had {n_before}")
    elif not after.is_zero() and negative_coeff_count(after) >= negative_coeff_count(before):
        raise NoProgress("polynomial split does not reduce the number of negative coefficients")
    return after
