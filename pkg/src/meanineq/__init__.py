"""Exact and numeric verification of inequalities among two-variable means
and the divergence measures built from them."""
from .kernels import (
    Combination,
    KernelKind,
    diff,
    eval_combination,
    eval_kernel,
    gini_mean,
    lehmer_mean,
    parse_kernel,
    power_mean,
)

__version__ = "0.1.0"

__all__ = [
    "Combination", "KernelKind", "diff", "eval_combination", "eval_kernel",
    "gini_mean", "lehmer_mean", "parse_kernel", "power_mean",
]
