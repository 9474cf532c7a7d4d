"""Discrete distributions on the open simplex and divergences between them.

A distribution-level measure is the sum of a kernel over coordinates,
``D(P||Q) = sum_i K(p_i, q_i)``.  Sums use ``math.fsum``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NonPositiveEntry, SumNotOne, TooShort
from .kernels import Combination, KernelKind, divergence, eval_kernel, profile_array

SUM_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    probs: tuple

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)


def validate(probs) -> Distribution:
    probs = tuple(float(p) for p in probs)
    if len(probs) < 2:
        raise TooShort(f"need at least 2 entries, got {len(probs)}")
    for i, p in enumerate(probs):
        if not math.isfinite(p) or p <= 0.0:
            raise NonPositiveEntry(f"entry {i} is {p}; all entries must be positive")
    dev = math.fsum(probs) - 1.0
    if abs(dev) > SUM_TOL:
        raise SumNotOne(dev)
    return Distribution(probs)


def _check_pair(p: Distribution, q: Distribution):
    if len(p) != len(q):
        raise LengthMismatch(f"lengths differ: {len(p)} vs {len(q)}")


def divergence_value(kind, p: Distribution, q: Distribution) -> float:
    """Sum of a kernel (or a combination of kernels) over coordinates."""
    _check_pair(p, q)
    if isinstance(kind, Combination):
        return math.fsum(
            float(c) * eval_kernel(k, pi, qi)
            for c, k in kind.terms
            for pi, qi in zip(p, q)
        )
    return math.fsum(eval_kernel(kind, pi, qi) for pi, qi in zip(p, q))


def combination_sum(combo: Combination, p: np.ndarray, q: np.ndarray) -> float:
    """Vectorised distribution-level value of ``combo`` for raw arrays."""
    x = p / q
    return math.fsum(
        float(c) * v
        for c, k in combo.terms
        for v in q * profile_array(k, x)
    )


def jensen_shannon(p, q):
    return divergence_value(divergence("I"), p, q)


def j_divergence(p, q):
    return divergence_value(divergence("J"), p, q)


def arithmetic_geometric(p, q):
    return divergence_value(divergence("T"), p, q)


def triangular(p, q):
    return divergence_value(divergence("Delta"), p, q)


def hellinger(p, q):
    return divergence_value(divergence("Hellinger"), p, q)


def check_identity_17(p: Distribution, q: Distribution) -> float:
    """Residual ``J - 4 (I + T)``; zero up to rounding."""
    _check_pair(p, q)
    j = j_divergence(p, q)
    i = jensen_shannon(p, q)
    t = arithmetic_geometric(p, q)
    return j - 4.0 * (i + t)


def random_pair(rng: np.random.Generator, n: int):
    """A pair of strictly positive distributions of length ``n``."""
    p = rng.dirichlet(np.ones(n))
    q = rng.dirichlet(np.ones(n))
    # keep every entry comfortably away from zero
    p = np.maximum(p, 1e-9)
    q = np.maximum(q, 1e-9)
    return p / p.sum(), q / q.sum()


__all__ = [
    "Distribution",
    "validate",
    "divergence_value",
    "combination_sum",
    "check_identity_17",
    "jensen_shannon",
    "j_divergence",
    "arithmetic_geometric",
    "triangular",
    "hellinger",
    "random_pair",
    "KernelKind",
]
