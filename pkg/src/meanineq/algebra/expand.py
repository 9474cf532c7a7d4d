"""Exact profiles of mean combinations as (radical numerator) / (polynomial) in t = sqrt(x)."""
from __future__ import annotations

from fractions import Fraction

from ..errors import UnsupportedKernel, UnsupportedParam
from ..kernels import NAMED_GINI_PARAMS, Combination, KernelKind
from .polynomial import ONE, T, RationalPolynomial
from .radical import RadicalExpression

P = RationalPolynomial


def _rad(p):
    return RadicalExpression.poly(p)


# (numerator, denominator) of f(t^2) = K(t^2, 1)
NAMED_PROFILES = {
    "P1": (_rad(P([0, 0, 1, 0, 0, 0, 1])), P([1, 0, 0, 0, 0, 0, 1])),
    "P2": (_rad(P([0, 0, 1, 0, 1])), P([1, 0, 0, 0, 1])),
    "P3": (_rad(P([0, 0, 1, 1])), P([1, 0, 0, 1])),
    "H": (_rad(P([0, 0, 2])), P([1, 0, 1])),
    "P4": (_rad(P([0, 0, 4])), P([1, 2, 1])),
    "G": (_rad(T), ONE),
    "N1": (_rad(P([1, 2, 1])), P([4])),
    "N3": (_rad(P([1, 1, 1])), P([3])),
    "N2": (RadicalExpression.r2(P([1, 1])), P([4])),
    "A": (_rad(P([1, 0, 1])), P([2])),
    "P5": (_rad(P([1, 0, 2, 0, 1])), P([1, 2, 1])),
    "S": (RadicalExpression.r1(), P([2])),
    "P6": (_rad(P([1, 0, 0, 0, 1])), P([1, 0, 1])),
}

_NAMED_BY_PARAMS = {}
for _name, (_r, _s) in NAMED_GINI_PARAMS.items():
    _NAMED_BY_PARAMS[(_r, _s)] = _name
    _NAMED_BY_PARAMS[(_s, _r)] = _name
_NAMED_BY_PARAMS[(Fraction(0), Fraction(0))] = "G"


def _t_plus_one(e: int):
    """``(t^e + 1) = num / t^shift`` for integer ``e``; returns (num, shift)."""
    if e == 0:
        return P([2]), 0
    if e > 0:
        return P.monomial(e) + 1, 0
    return P.monomial(-e) + 1, -e


def _gini_profile(r: Fraction, s: Fraction):
    name = _NAMED_BY_PARAMS.get((r, s))
    if name:
        return NAMED_PROFILES[name]
    if r == s:
        raise UnsupportedParam(f"gini({r},{s}) has an exponential profile")
    a, b = 2 * r, 2 * s
    n = 1 / (r - s)
    if a.denominator != 1 or b.denominator != 1 or n.denominator != 1:
        raise UnsupportedParam(f"gini({r},{s}) is not a rational function of sqrt(x)")
    num, sa = _t_plus_one(int(a))
    den, sb = _t_plus_one(int(b))
    # f = (num / t^sa) / (den / t^sb)
    shift = sb - sa
    if shift >= 0:
        num = num * P.monomial(shift)
    else:
        den = den * P.monomial(-shift)
    n = int(n)
    if n < 0:
        num, den, n = den, num, -n
    return _rad(num**n), den**n


def profile(kind: KernelKind):
    """Exact ``(numerator, denominator)`` of the ratio profile of ``kind``."""
    if not kind.is_mean:
        raise UnsupportedKernel(f"{kind} involves logarithms; no algebraic profile")
    if kind.family == "named":
        return NAMED_PROFILES[kind.name]
    if kind.family == "gini":
        return _gini_profile(*kind.params)
    if kind.family == "power":
        return _gini_profile(kind.params[0], Fraction(0))
    if kind.family == "lehmer":
        r = kind.params[0]
        return _gini_profile(r, r - 1)
    raise UnsupportedKernel(f"unknown kernel family {kind.family!r}")


def poly_gcd(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.primitive() if not p.is_zero() else p


def _common_denominator(dens):
    distinct = []
    for d in dens:
        d = d.primitive()
        if d not in distinct:
            distinct.append(d)
    lcm = ONE
    for d in distinct:
        lcm = (lcm * d).divide_exact(poly_gcd(lcm, d))
    if all(c >= 0 for c in lcm.coeffs):
        return lcm
    # a reduced lcm may pick up sign-changing factors; the plain product cannot
    out = ONE
    for d in distinct:
        out = out * d
    return out


def radical_content(e: RadicalExpression) -> Fraction:
    coeffs = [c for p in e.parts.values() for c in p.coeffs]
    return P(coeffs).content()


def expand_combination(combo: Combination):
    """Return ``(numerator, denominator)`` with ``combo(t^2, 1) == numerator / denominator``.

    The denominator has non-negative coefficients; the numerator is scaled
    by a positive rational to integer coefficients with gcd 1.
    """
    profiles = [(c, profile(k)) for c, k in combo.terms]
    dens = [den for _, (_, den) in profiles]
    common = _common_denominator(dens) if dens else ONE
    numer = RadicalExpression()
    for c, (num, den) in profiles:
        numer = numer + num * common.divide_exact(den) * c
    if numer.is_zero():
        return numer, common
    k = radical_content(numer)
    return numer * (1 / k), common * (1 / k)
