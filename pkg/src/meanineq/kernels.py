"""Two-variable means, divergence kernels and rational combinations of them.

Every kernel here is symmetric and positively homogeneous of degree one, so
it is evaluated as ``hi * f(lo / hi)`` with ``hi = max(a, b)``.  The ratio
``lo / hi`` lies in (0, 1], which keeps every power bounded and makes the
symmetry in (a, b) exact in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, KernelParseError

__all__ = [
    "PositivePair",
    "KernelKind",
    "Combination",
    "NAMED_MEANS",
    "DIVERGENCE_KERNELS",
    "NAMED_GINI_PARAMS",
    "named",
    "gini",
    "power",
    "lehmer",
    "divergence",
    "parse_kernel",
    "gini_mean",
    "power_mean",
    "lehmer_mean",
    "eval_kernel",
    "ratio_profile",
    "profile_array",
    "eval_combination",
    "combination_profile",
    "combination_precise",
    "combination_decimal",
    "PRECISE_DIGITS",
    "diff",
]

NAMED_MEANS = ("P1", "P2", "P3", "H", "P4", "G", "N1", "N3", "N2", "A", "P5", "S", "P6")
DIVERGENCE_KERNELS = ("I", "J", "T", "Delta", "Hellinger")

_h = Fraction(1, 2)
NAMED_GINI_PARAMS = {
    "P1": (Fraction(-3), Fraction(-2)),
    "P2": (Fraction(-2), Fraction(-1)),
    "P3": (Fraction(-3, 2), -_h),
    "H": (Fraction(-1), Fraction(0)),
    "P4": (-_h, Fraction(0)),
    "G": (-_h, _h),
    "N1": (Fraction(0), _h),
    "A": (Fraction(0), Fraction(1)),
    "P5": (_h, Fraction(1)),
    "S": (Fraction(0), Fraction(2)),
    "P6": (Fraction(1), Fraction(2)),
}

# beyond this |exponent * ln(ratio)| the direct power form may overflow
_DIRECT_LIMIT = 600.0


class PositivePair(NamedTuple):
    a: float
    b: float

    @classmethod
    def of(cls, a, b):
        a = float(a)
        b = float(b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"arguments must be finite, got ({a}, {b})")
        if a <= 0.0 or b <= 0.0:
            raise DomainError(f"arguments must be positive, got ({a}, {b})")
        return cls(a, b)


def _as_param(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError(f"parameter must be finite, got {v}")
        return Fraction(v)
    return Fraction(v)


@dataclass(frozen=True)
class KernelKind:
    """Identifier of a degree-1 homogeneous symmetric binary function.

    ``family`` is one of ``named``, ``gini``, ``power``, ``lehmer`` or
    ``divergence``; ``name`` is set for the named and divergence families and
    ``params`` holds the exact real parameters of the parametric ones.
    """

    family: str
    name: str = ""
    params: tuple = ()

    @property
    def is_mean(self) -> bool:
        return self.family != "divergence"

    def __str__(self):
        if self.family in ("named", "divergence"):
            return self.name
        return self.family + ":" + ",".join(_fmt_param(p) for p in self.params)

    def __repr__(self):
        return f"KernelKind({str(self)!r})"

    def sort_key(self):
        return (self.family, self.name, self.params)


def _fmt_param(p: Fraction) -> str:
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


def named(name: str) -> KernelKind:
    if name not in NAMED_MEANS:
        raise KernelParseError(f"unknown named mean {name!r}")
    return KernelKind("named", name)


def divergence(name: str) -> KernelKind:
    if name not in DIVERGENCE_KERNELS:
        raise KernelParseError(f"unknown divergence kernel {name!r}")
    return KernelKind("divergence", name)


def gini(r, s) -> KernelKind:
    return KernelKind("gini", params=(_as_param(r), _as_param(s)))


def power(r) -> KernelKind:
    return KernelKind("power", params=(_as_param(r),))


def lehmer(r) -> KernelKind:
    return KernelKind("lehmer", params=(_as_param(r),))


def parse_kernel(text: str) -> KernelKind:
    """Parse ``A``, ``N3``, ``I``, ``gini:r,s``, ``power:r`` or ``lehmer:r``."""
    text = text.strip()
    if text in NAMED_MEANS:
        return named(text)
    if text in DIVERGENCE_KERNELS:
        return divergence(text)
    family, sep, rest = text.partition(":")
    if not sep or family not in ("gini", "power", "lehmer"):
        raise KernelParseError(f"cannot parse kernel {text!r}")
    try:
        params = tuple(Fraction(p.strip()) for p in rest.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise KernelParseError(f"bad parameters in {text!r}: {exc}") from None
    want = 2 if family == "gini" else 1
    if len(params) != want:
        raise KernelParseError(f"{family} takes {want} parameter(s), got {len(params)}")
    return KernelKind(family, params=params)


# ---------------------------------------------------------------------------
# ratio forms f(alpha) = K(alpha, 1) for alpha in (0, 1], vectorised

def _gini_ratio(r: float, s: float, alpha: np.ndarray) -> np.ndarray:
    la = np.log(alpha)
    if r == s:
        if r == 0:
            return np.sqrt(alpha)
        # weight alpha^r / (alpha^r + 1) written as a logistic for stability
        w = 0.5 * (1.0 + np.tanh(0.5 * r * la))
        return np.exp(w * la)
    big = max(abs(r), abs(s)) * np.max(-la, initial=0.0)
    if big < _DIRECT_LIMIT:
        out = ((alpha ** r + 1.0) / (alpha ** s + 1.0)) ** (1.0 / (r - s))
    else:
        num = np.logaddexp(r * la, 0.0)
        den = np.logaddexp(s * la, 0.0)
        out = np.exp((num - den) / (r - s))
    return out


def _power_ratio(r: float, alpha: np.ndarray) -> np.ndarray:
    if r == 0:
        return np.sqrt(alpha)
    la = np.log(alpha)
    if abs(r) * np.max(-la, initial=0.0) < _DIRECT_LIMIT:
        return ((alpha ** r + 1.0) / 2.0) ** (1.0 / r)
    return np.exp((np.logaddexp(r * la, 0.0) - math.log(2.0)) / r)


def _lehmer_ratio(r: float, alpha: np.ndarray) -> np.ndarray:
    la = np.log(alpha)
    if max(abs(r), abs(r - 1)) * np.max(-la, initial=0.0) < _DIRECT_LIMIT:
        return (alpha ** r + 1.0) / (alpha ** (r - 1.0) + 1.0)
    return np.exp(np.logaddexp(r * la, 0.0) - np.logaddexp((r - 1.0) * la, 0.0))


def _div_ratio(name: str, alpha: np.ndarray) -> np.ndarray:
    if name == "I":
        s = 1.0 + alpha
        return 0.5 * (alpha * np.log(2.0 * alpha / s) + np.log(2.0 / s))
    if name == "J":
        return (1.0 - alpha) * -np.log(alpha)
    if name == "T":
        s = 1.0 + alpha
        return 0.5 * s * np.log(s / (2.0 * np.sqrt(alpha)))
    if name == "Delta":
        return (1.0 - alpha) ** 2 / (1.0 + alpha)
    if name == "Hellinger":
        return 0.5 * (1.0 - np.sqrt(alpha)) ** 2
    raise KernelParseError(f"unknown divergence kernel {name!r}")


def _ratio(kind: KernelKind, alpha: np.ndarray) -> np.ndarray:
    fam = kind.family
    if fam == "divergence":
        out = _div_ratio(kind.name, alpha)
        # exact zero on the diagonal, never a tiny negative
        return np.where(alpha == 1.0, 0.0, np.maximum(out, 0.0))
    if fam == "named":
        if kind.name == "N3":
            out = (alpha + np.sqrt(alpha) + 1.0) / 3.0
        elif kind.name == "N2":
            out = 0.5 * (np.sqrt(alpha) + 1.0) * np.sqrt(0.5 * (alpha + 1.0))
        else:
            r, s = NAMED_GINI_PARAMS[kind.name]
            out = _gini_ratio(float(r), float(s), alpha)
    elif fam == "gini":
        r, s = kind.params
        out = _gini_ratio(float(r), float(s), alpha)
    elif fam == "power":
        out = _power_ratio(float(kind.params[0]), alpha)
    elif fam == "lehmer":
        out = _lehmer_ratio(float(kind.params[0]), alpha)
    else:
        raise KernelParseError(f"unknown kernel family {fam!r}")
    # the exact mean lies in [alpha, 1]; clip rounding excursions
    return np.clip(out, alpha, 1.0)


def _eval(kind: KernelKind, a: float, b: float) -> float:
    a, b = PositivePair.of(a, b)
    hi, lo = (a, b) if a >= b else (b, a)
    return hi * float(_ratio(kind, np.array([lo / hi]))[0])


def gini_mean(r, s, a, b) -> float:
    """Gini mean of order (r, s).

    The ``r == s`` branch is taken only on exact equality of the parameters.
    """
    r = float(r)
    s = float(s)
    if not (math.isfinite(r) and math.isfinite(s)):
        raise DomainError("Gini parameters must be finite")
    a, b = PositivePair.of(a, b)
    hi, lo = (a, b) if a >= b else (b, a)
    alpha = np.array([lo / hi])
    return hi * float(np.clip(_gini_ratio(r, s, alpha), alpha, 1.0)[0])


def power_mean(r, a, b) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise DomainError("power mean order must be finite")
    return _eval(KernelKind("power", params=(Fraction(r),)), a, b)


def lehmer_mean(r, a, b) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise DomainError("Lehmer mean order must be finite")
    return _eval(KernelKind("lehmer", params=(Fraction(r),)), a, b)


def eval_kernel(kind: KernelKind, a, b) -> float:
    return _eval(kind, a, b)


def ratio_profile(kind: KernelKind, x) -> float:
    """The profile ``f(x) = K(x, 1)``."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"ratio must be positive and finite, got {x}")
    return _eval(kind, x, 1.0)


def profile_array(kind: KernelKind, x: np.ndarray) -> np.ndarray:
    """Vectorised ``K(x, 1)`` for an array of positive ratios."""
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x <= 0.0):
        raise DomainError("ratios must be positive and finite")
    hi = np.maximum(x, 1.0)
    lo = np.minimum(x, 1.0)
    return hi * _ratio(kind, lo / hi)


# ---------------------------------------------------------------------------
# high-precision profiles, for probes so close to the diagonal that double
# precision cancellation swamps a gap of order (x - 1)^4

PRECISE_DIGITS = 60


def _dpow(x: Decimal, r: Fraction) -> Decimal:
    if r.denominator == 1:
        return x ** int(r)
    return x ** (Decimal(r.numerator) / Decimal(r.denominator))


def _dfrac(r: Fraction) -> Decimal:
    return Decimal(r.numerator) / Decimal(r.denominator)


def _gini_precise(r: Fraction, s: Fraction, x: Decimal) -> Decimal:
    if r == s:
        if r == 0:
            return x.sqrt()
        xr = _dpow(x, r)
        return (xr * x.ln() / (xr + 1)).exp()
    return ((_dpow(x, r) + 1) / (_dpow(x, s) + 1)) ** (1 / _dfrac(r - s))


def _profile_precise(kind: KernelKind, x: Decimal) -> Decimal:
    fam = kind.family
    if fam == "divergence":
        one = Decimal(1)
        if kind.name == "I":
            m = (x + 1) / 2
            return (x * (x / m).ln() + (one / m).ln()) / 2
        if kind.name == "J":
            return (x - 1) * x.ln()
        if kind.name == "T":
            return (x + 1) / 2 * ((x + 1) / (2 * x.sqrt())).ln()
        if kind.name == "Delta":
            return (x - 1) ** 2 / (x + 1)
        return (x.sqrt() - 1) ** 2 / 2
    if fam == "named":
        if kind.name == "N3":
            return (x + x.sqrt() + 1) / 3
        if kind.name == "N2":
            return (x.sqrt() + 1) / 2 * ((x + 1) / 2).sqrt()
        return _gini_precise(*NAMED_GINI_PARAMS[kind.name], x)
    if fam == "gini":
        return _gini_precise(*kind.params, x)
    r = kind.params[0]
    if fam == "power":
        if r == 0:
            return x.sqrt()
        return ((_dpow(x, r) + 1) / 2) ** (1 / _dfrac(r))
    return (_dpow(x, r) + 1) / (_dpow(x, r - 1) + 1)


def combination_decimal(combo: "Combination", x: Decimal) -> Decimal:
    """``combo(x, 1)`` in the caller's decimal context."""
    return sum((_dfrac(c) * _profile_precise(k, x) for c, k in combo.terms), Decimal(0))


def combination_precise(combo: "Combination", x: float) -> float:
    """``combo(x, 1)`` evaluated with PRECISE_DIGITS significant digits."""
    x = PositivePair.of(x, 1.0).a
    with localcontext() as ctx:
        ctx.prec = PRECISE_DIGITS
        return float(combination_decimal(combo, Decimal(x)))


# ---------------------------------------------------------------------------
# combinations

@dataclass(frozen=True)
class Combination:
    """Rational-weighted sum ``sum(c_i * K_i)``; like kernels are merged."""

    terms: tuple = ()

    def __post_init__(self):
        merged = {}
        order = []
        for c, k in self.terms:
            c = Fraction(c)
            if k not in merged:
                merged[k] = Fraction(0)
                order.append(k)
            merged[k] += c
        terms = tuple((merged[k], k) for k in order if merged[k] != 0)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, pairs: Iterable) -> "Combination":
        """Build from ``(coeff, kernel)`` pairs; kernels may be given as strings."""
        out = []
        for c, k in pairs:
            if isinstance(k, str):
                k = parse_kernel(k)
            out.append((Fraction(c), k))
        return cls(tuple(out))

    def __add__(self, other):
        return Combination(self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Combination":
        c = Fraction(c)
        return Combination(tuple((c * ci, k) for ci, k in self.terms))

    @property
    def kernels(self):
        return tuple(k for _, k in self.terms)

    @property
    def mean_only(self) -> bool:
        return all(k.is_mean for k in self.kernels)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, k in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign} {coef}{k}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def diff(t, p) -> Combination:
    """The gap ``D_tp = K_t - K_p``."""
    return Combination.of([(1, t), (-1, p)])


def eval_combination(combo: Combination, a, b) -> float:
    a, b = PositivePair.of(a, b)
    return math.fsum(float(c) * _eval(k, a, b) for c, k in combo.terms)


def combination_profile(combo: Combination, x: np.ndarray) -> np.ndarray:
    """Vectorised ``g(x) = combo(x, 1)``."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for c, k in combo.terms:
        total = total + float(c) * profile_array(k, x)
    return total
