"""Sturm sequences: exact counts of distinct real roots on open intervals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ZeroPolynomial
from .polynomial import RationalPolynomial

INF = math.inf


@dataclass(frozen=True)
class SturmReport:
    polynomial: RationalPolynomial
    interval: tuple  # (lo, hi); Fractions or +-inf
    root_count: int


def _positive_scale(p: RationalPolynomial) -> RationalPolynomial:
    # dividing by the positive content keeps signs and shrinks numbers
    return p * (1 / p.content()) if not p.is_zero() else p


def sturm_chain(p: RationalPolynomial):
    if p.is_zero():
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [_positive_scale(p)]
    d = p.derivative()
    if d.is_zero():
        return chain
    chain.append(_positive_scale(d))
    while True:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero():
            return chain
        chain.append(_positive_scale(-r))


def _sign_at(p: RationalPolynomial, x) -> int:
    if x == INF:
        return (p.leading > 0) - (p.leading < 0)
    if x == -INF:
        s = (p.leading > 0) - (p.leading < 0)
        return s if p.degree % 2 == 0 else -s
    v = p(x)
    return (v > 0) - (v < 0)


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _endpoint(x):
    if isinstance(x, float) and math.isinf(x):
        return x
    return Fraction(x)


def sturm_count(p: RationalPolynomial, interval=(0, INF)) -> SturmReport:
    """Number of distinct real roots of ``p`` strictly inside ``interval``."""
    lo, hi = (_endpoint(x) for x in interval)
    if not lo < hi:
        raise ValueError(f"empty interval {interval}")
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    for x in (lo, hi):
        if not (isinstance(x, float) and math.isinf(x)) and p(x) == 0:
            raise ValueError(f"root at endpoint {x}; deflate it first")
    chain = sturm_chain(p)
    return SturmReport(p, (lo, hi), _variations(chain, lo) - _variations(chain, hi))


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_roots(p: RationalPolynomial, interval=(-INF, INF), width=Fraction(1, 10**8)):
    """Disjoint ``(lo, hi)`` brackets, each holding exactly one root, ``hi - lo <= width``.

    Exact rational roots hit by a bisection point are returned as ``(r, r)``.
    """
    width = Fraction(width)
    chain = sturm_chain(p)
    lo, hi = (_endpoint(x) for x in interval)
    bound = cauchy_bound(p)
    lo = max(lo, -bound) if lo == -INF else lo
    hi = min(hi, bound) if hi == INF else hi
    lo, hi = Fraction(lo), Fraction(hi)

    def count(a, b):
        return _variations(chain, a) - _variations(chain, b)

    out = []
    todo = [(lo, hi)]
    while todo:
        a, b = todo.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            # exact root: record it and keep a small exclusion around it
            out.append((mid, mid))
            eps = (b - a) / 1024
            while count(mid - eps, mid + eps) != 1 or p(mid - eps) == 0 or p(mid + eps) == 0:
                eps /= 2
            todo += [(a, mid - eps), (mid + eps, b)]
            continue
        todo += [(a, mid), (mid, b)]
    return sorted(out)
