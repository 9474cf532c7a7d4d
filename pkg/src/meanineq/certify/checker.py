"""Replays a certificate against a statement using exact arithmetic only.

The checker keeps one expression ``current`` in t with the invariant

    statement >= 0 on t > 0   follows from   current >= 0 on t > 0

and every step must preserve it.  All comparisons with stated artifacts
are up to a positive rational factor, so the certificate's scale never
affects the verdict.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import (
    RadicalExpression,
    RationalPolynomial,
    expand_combination,
    factor_unit_root,
    format_poly,
    nonneg_coeffs,
    proportional_radical,
    square_compare,
    sturm_count,
)
from ..errors import AlgebraError, NoProgress, NotDivisible
from .model import (
    Certificate,
    DeflateZero,
    Expand,
    NonnegCoeffs,
    PositiveAtOne,
    SplitSquare,
    SturmNoPositiveRoots,
    UnitRootFactor,
)

PROVED = "Proved"
FAILED = "Failed"


@dataclass(frozen=True)
class Failure:
    step_index: int
    reason: str  # NotDivisible, NoProgress, WitnessRejected, RootsFound, ...
    detail: str = ""


@dataclass
class CertResult:
    statement_id: str
    verdict: str
    failure: Failure | None = None
    trace: list = field(default_factory=list)

    @property
    def proved(self):
        return self.verdict == PROVED


class _Reject(Exception):
    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}")


def _degree_info(e: RadicalExpression):
    return {("".join(f"R{i+1}" for i, x in enumerate(k) if x) or "1"): p.degree
            for k, p in sorted(e.parts.items())}


def _positive_on_halfline(p: RationalPolynomial) -> bool:
    """Exact test that ``p > 0`` for all t > 0, apart from a root at 0."""
    if p.is_zero():
        return False
    if nonneg_coeffs(p):
        return True
    q = p.deflate_zero(p.low_order())
    return sturm_count(q).root_count == 0 and q(1) > 0


def _check_factor(f):
    if f.kind in ("R1", "R2"):
        return RadicalExpression.r1() if f.kind == "R1" else RadicalExpression.r2()
    if f.kind == "square":
        return RadicalExpression.poly(f.poly * f.poly)
    if f.check == "nonneg":
        if not nonneg_coeffs(f.poly):
            raise _Reject("WitnessRejected", f"factor {format_poly(f.poly)} has a negative coefficient")
    else:
        q = f.poly.deflate_zero(f.poly.low_order()) if not f.poly.is_zero() else f.poly
        if q.is_zero():
            raise _Reject("WitnessRejected", "zero factor")
        n = sturm_count(q).root_count
        if n:
            raise _Reject("WitnessRejected", f"factor {format_poly(f.poly)} has {n} positive root(s)")
        if q(1) <= 0:
            raise _Reject("WitnessRejected", f"factor {format_poly(f.poly)} is not positive at t=1")
    return RadicalExpression.poly(f.poly)


def _witness_value(witness):
    total = RadicalExpression()
    for term in witness:
        if term.coeff <= 0:
            raise _Reject("WitnessRejected", f"witness coefficient {term.coeff} is not positive")
        prod = RadicalExpression.poly(RationalPolynomial.constant(term.coeff))
        for f in term.factors:
            prod = prod * _check_factor(f)
        total = total + prod
    return total


def _positively_proportional(a, b):
    c = proportional_radical(a, b)
    return c is not None and c > 0


class _Run:
    def __init__(self, stmt):
        self.stmt = stmt
        self.current = None
        self.sturm_poly = None
        self.done = False

    def expand(self, step: Expand):
        if self.current is not None:
            raise _Reject("IdentityMismatch", "Expand must be the first step")
        num, den = expand_combination(self.stmt.combination)
        if num.is_zero():
            raise _Reject("IdentityMismatch", "statement is identically zero")
        if not _positive_on_halfline(den):
            raise _Reject("WitnessRejected", "expanded denominator is not positive")
        if not _positive_on_halfline(step.denominator):
            raise _Reject("WitnessRejected", "stated denominator is not positive on t > 0")
        # num/den == cur/D  with D the stated denominator
        try:
            cur = (num * step.denominator).divide_exact(den)
        except NotDivisible as exc:
            raise _Reject("NotDivisible", f"stated denominator does not clear the expansion: {exc}")
        if step.numerator is not None and not _positively_proportional(cur, step.numerator):
            raise _Reject("IdentityMismatch", "stated numerator does not match the expansion")
        self.current = cur
        return {"numerator_degrees": _degree_info(cur), "denominator_degree": step.denominator.degree}

    def split_square(self, step: SplitSquare):
        if not _positively_proportional(self.current, step.s - step.t):
            raise _Reject("IdentityMismatch", "S - T is not a positive multiple of the current expression")
        w = _witness_value(step.witness)
        if not _positively_proportional(w, step.s):
            raise _Reject("WitnessRejected", "witness does not expand to a positive multiple of S")
        try:
            self.current = square_compare(step.s, step.t)
        except NoProgress as exc:
            raise _Reject("NoProgress", str(exc))
        return {"result_degrees": _degree_info(self.current),
                "radicals_left": len(self.current.radical_monomials())}

    def unit_root(self, step: UnitRootFactor):
        if step.k % 2:
            raise _Reject("WitnessRejected", f"(t-1)^{step.k} changes sign; k must be even")
        parts = {}
        try:
            for key, p in self.current.parts.items():
                parts[key] = factor_unit_root(p, step.k)
        except NotDivisible as exc:
            raise _Reject("NotDivisible", str(exc))
        q = RadicalExpression(parts)
        if not _positively_proportional(q, step.quotient):
            raise _Reject("IdentityMismatch", "stated quotient does not match")
        self.current = step.quotient
        return {"k": step.k, "quotient_degrees": _degree_info(q)}

    def deflate(self, step: DeflateZero):
        try:
            self.current = RadicalExpression(
                {key: p.deflate_zero(step.k) for key, p in self.current.parts.items()})
        except NotDivisible as exc:
            raise _Reject("NotDivisible", str(exc))
        return {"k": step.k}

    def _final_poly(self, stated):
        if not self.current.is_polynomial():
            raise _Reject("IdentityMismatch", "radicals remain before the terminal step")
        if not _positively_proportional(RadicalExpression.poly(stated), self.current):
            raise _Reject("IdentityMismatch", "stated final polynomial does not match")

    def nonneg(self, step: NonnegCoeffs):
        self._final_poly(step.poly)
        if not nonneg_coeffs(step.poly):
            raise _Reject("WitnessRejected", "final polynomial has a negative coefficient")
        self.done = True
        return {"degree": step.poly.degree}

    def sturm(self, step: SturmNoPositiveRoots):
        self._final_poly(step.poly)
        if step.poly(0) == 0:
            raise _Reject("RootsFound", "root at t = 0; deflate first")
        n = sturm_count(step.poly).root_count
        if n:
            raise _Reject("RootsFound", f"{n} positive root(s)")
        self.sturm_poly = step.poly
        return {"degree": step.poly.degree, "positive_roots": 0}

    def at_one(self, step: PositiveAtOne):
        if self.sturm_poly is None:
            raise _Reject("IdentityMismatch", "PositiveAtOne must follow SturmNoPositiveRoots")
        v = self.sturm_poly(1)
        if v <= 0:
            raise _Reject("NonPositiveAtOne", f"value at t=1 is {v}")
        if step.value is not None and v != step.value:
            raise _Reject("IdentityMismatch", f"value at t=1 is {v}, certificate states {step.value}")
        self.done = True
        return {"value_at_1": str(v)}


_DISPATCH = {
    Expand: _Run.expand,
    SplitSquare: _Run.split_square,
    UnitRootFactor: _Run.unit_root,
    DeflateZero: _Run.deflate,
    NonnegCoeffs: _Run.nonneg,
    SturmNoPositiveRoots: _Run.sturm,
    PositiveAtOne: _Run.at_one,
}


def check_certificate(cert: Certificate, stmt) -> CertResult:
    """Replay ``cert`` against ``stmt``; ``Proved`` only if every side condition holds."""
    result = CertResult(cert.statement_id, FAILED)
    result.trace.append({"step": "header", "scale": str(cert.scale)})

    def fail(i, reason, detail=""):
        result.failure = Failure(i, reason, detail)
        return result

    if cert.statement_id != stmt.id:
        return fail(-1, "IdentityMismatch", f"certificate is for {cert.statement_id}, not {stmt.id}")
    if cert.scale <= 0:
        return fail(-1, "IdentityMismatch", "scale must be positive")
    if not stmt.combination.mean_only or stmt.kind != "nonneg":
        return fail(-1, "UnsupportedKernel", "only mean-only non-negativity statements have certificates")
    run = _Run(stmt)
    for i, step in enumerate(cert.steps):
        if run.done:
            return fail(i, "IdentityMismatch", "steps after the terminal witness")
        if run.current is None and not isinstance(step, Expand):
            return fail(i, "IdentityMismatch", "Expand must be the first step")
        try:
            info = _DISPATCH[type(step)](run, step)
        except _Reject as exc:
            return fail(i, exc.reason, exc.detail)
        except AlgebraError as exc:
            return fail(i, type(exc).__name__, str(exc))
        result.trace.append({"step": type(step).__name__, **info})
    if not run.done:
        return fail(len(cert.steps), "Incomplete", "no terminal positivity witness")
    result.verdict = PROVED
    return result
