"""Numeric verification of registry statements.

Kernel-level statements are checked by globally minimising the normalised
gap ``q(x) = g(x) / (1 + x)`` on ``x >= 1``.  Symmetry and homogeneity give
``g(1/x) = g(x)/x``, hence ``q(1/x) = q(x)``, so ``[1, x_max]`` covers the
whole half-line, and ``q(x) < -tol`` is exactly the failure condition
``g(x) < -tol (1 + x)``.  Probes with ``|ln x| < NEAR_DIAGONAL`` are evaluated in high
precision: gaps that touch zero to fourth order at x = 1 are otherwise
buried in rounding noise out to ``|x - 1|`` of about 1e-4.
Distribution-level statements are checked on seeded random pairs of
distributions.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import registry
from .distributions import random_pair
from .kernels import (
    PRECISE_DIGITS,
    combination_decimal,
    combination_precise,
    combination_profile,
    profile_array,
)

PASS = "Pass"
FAIL = "Fail"
DEFAULT_SEED = 20100101

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
NEAR_DIAGONAL = 0.05


@dataclass(frozen=True)
class VerifyConfig:
    grid_points: int = 4096
    x_max: float = 1e12
    refine_iters: int = 80
    tol_rel: float = 1e-10
    distribution_samples: int = 1000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.grid_points < 16:
            raise ValueError("grid_points must be at least 16")
        if not self.x_max > 1:
            raise ValueError("x_max must exceed 1")
        if not self.tol_rel > 0:
            raise ValueError("tol_rel must be positive")
        if self.distribution_samples < 1:
            raise ValueError("distribution_samples must be positive")


@dataclass(frozen=True)
class VerifyReport:
    statement_id: str
    verdict: str
    min_value: float
    argmin_x: float
    samples_used: int
    witness: tuple | None = None  # (x, value) when failed
    method: str = "numeric"

    @property
    def passed(self):
        return self.verdict == PASS


def _gap(combo, x):
    g = combination_profile(combo, x)
    for i in np.flatnonzero(np.abs(np.log(x)) < NEAR_DIAGONAL):
        g[i] = combination_precise(combo, float(x[i]))
    return g


def _q(combo, u):
    x = np.exp(np.asarray(u, dtype=float))
    return _gap(combo, x) / (1.0 + x)


def _golden(f, lo, hi, iters):
    """Minimise a scalar function on [lo, hi]; returns (u, f(u))."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a <= 1e-12 * max(1.0, abs(a)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def min_gap(combo, cfg: VerifyConfig = VerifyConfig()):
    """Return ``(min_value, argmin_x)`` of ``g(x) = combo(x, 1)``, located via ``q``."""
    if hasattr(combo, "combination"):
        combo = combo.combination
    u = np.linspace(0.0, math.log(cfg.x_max), cfg.grid_points)
    q = _q(combo, u)
    best = int(np.argmin(q))
    best_u, best_q = float(u[best]), float(q[best])

    def f(v):
        return float(_q(combo, [v])[0])

    for i in np.argsort(q, kind="stable")[:3]:
        lo = u[max(i - 1, 0)]
        hi = u[min(i + 1, len(u) - 1)]
        cu, cq = _golden(f, float(lo), float(hi), cfg.refine_iters)
        if cq < best_q:  # refinement only ever lowers the minimum
            best_u, best_q = cu, cq
    x = math.exp(best_u)
    return float(_gap(combo, np.array([x]))[0]), x


def _kernel_report(stmt, cfg):
    value, x = min_gap(stmt.combination, cfg)
    bad = value < -cfg.tol_rel * (1.0 + x)
    if stmt.kind == registry.IDENTITY:
        # an identity also has to be bounded above
        hi_value, hi_x = min_gap(stmt.combination.scale(-1), cfg)
        if -hi_value > cfg.tol_rel * (1.0 + hi_x) and not bad:
            value, x, bad = -hi_value, hi_x, True
    return VerifyReport(stmt.id, FAIL if bad else PASS, value, x, cfg.grid_points,
                        (x, value) if bad else None)


_SAMPLE_CACHE = {}


def distribution_samples(cfg: VerifyConfig):
    """Concatenated seeded sample pairs: (p, q, offsets) for ``np.add.reduceat``."""
    key = (cfg.seed, cfg.distribution_samples)
    if key not in _SAMPLE_CACHE:
        rng = np.random.default_rng(cfg.seed)
        ps, qs, offsets = [], [], []
        pos = 0
        for _ in range(cfg.distribution_samples):
            n = int(rng.integers(2, 11))
            p, q = random_pair(rng, n)
            ps.append(p)
            qs.append(q)
            offsets.append(pos)
            pos += n
        _SAMPLE_CACHE[key] = (np.concatenate(ps), np.concatenate(qs), np.array(offsets))
    return _SAMPLE_CACHE[key]


def distribution_values(combo, cfg: VerifyConfig):
    """Value of ``combo`` on every sampled pair (length ``distribution_samples``)."""
    p, q, offsets = distribution_samples(cfg)
    x = p / q
    per_coord = np.zeros_like(p)
    for c, k in combo.terms:
        per_coord = per_coord + float(c) * q * profile_array(k, x)
    return np.add.reduceat(per_coord, offsets), p, q, offsets


def _identity_residuals(combo, p, q, offsets):
    """Per-sample residuals in high precision, so rounding cannot pass for a violation."""
    bounds = list(offsets) + [len(p)]
    out = np.empty(len(offsets))
    with localcontext() as ctx:
        ctx.prec = PRECISE_DIGITS
        for n, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
            total = Decimal(0)
            for pi, qi in zip(p[lo:hi].tolist(), q[lo:hi].tolist()):
                dq = Decimal(qi)
                total += dq * combination_decimal(combo, Decimal(pi) / dq)
            out[n] = float(total)
    return out


def _distribution_report(stmt, cfg):
    vals, p, q, offsets = distribution_values(stmt.combination, cfg)
    if stmt.kind == registry.IDENTITY:
        vals = _identity_residuals(stmt.combination, p, q, offsets)
        i = int(np.argmax(np.abs(vals)))
        bad = abs(vals[i]) > cfg.tol_rel
    else:
        i = int(np.argmin(vals))
        bad = vals[i] < -cfg.tol_rel
    # locate the worst sample by its largest coordinate ratio p_i / q_i
    end = offsets[i + 1] if i + 1 < len(offsets) else len(p)
    x = float(np.max(p[offsets[i]:end] / q[offsets[i]:end]))
    value = float(vals[i])
    return VerifyReport(stmt.id, FAIL if bad else PASS, value, x, len(vals),
                        (x, value) if bad else None)


def verify(stmt, cfg: VerifyConfig = VerifyConfig()) -> VerifyReport:
    if stmt.level == registry.KERNEL:
        return _kernel_report(stmt, cfg)
    return _distribution_report(stmt, cfg)


def _verify_one(args):
    stmt, cfg = args
    return verify(stmt, cfg)


def verify_all(cfg: VerifyConfig = VerifyConfig(), statements=None, workers: int = 1):
    """One report per statement, in id order; ``workers > 1`` uses processes."""
    stmts = sorted(registry.all_statements() if statements is None else statements,
                   key=lambda s: s.id)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_verify_one, [(s, cfg) for s in stmts]))
    return [verify(s, cfg) for s in stmts]
