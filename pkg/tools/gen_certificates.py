"""Regenerate the built-in certificate files from a per-part proof plan.

Each plan entry lists the square-compare steps of one proof part in order:
``"sq:KEYS"`` puts the radical monomials KEYS (``P`` = no radical, ``R1``,
``R2``, ``R1R2``; joined with ``+``) on the positive side S; ``"unit"``
factors (t-1)^k; ``"reorg"`` splits a polynomial into its positive and
negative terms.  Witnesses, quotients and terminal polynomials are derived
mechanically and the result is re-checked before it is written.

    python3 tools/gen_certificates.py [--check]
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from meanineq import registry
from meanineq.algebra import (
    RadicalExpression,
    RationalPolynomial,
    expand_combination,
    factor_unit_root,
    nonneg_coeffs,
    square_compare,
    sturm_count,
    unit_root_multiplicity,
)
from meanineq.algebra.expand import radical_content
from meanineq.certify import (
    DATA_DIR,
    Certificate,
    DeflateZero,
    Expand,
    Factor,
    NonnegCoeffs,
    PositiveAtOne,
    SplitSquare,
    SturmNoPositiveRoots,
    UnitRootFactor,
    WitnessTerm,
    check_certificate,
    dumps,
)

KEYS = {"P": (0, 0), "R1": (1, 0), "R2": (0, 1), "R1R2": (1, 1)}

PLAN = {
    1: ["sq:R1"], 2: ["sq:R2", "sq:P"], 3: ["sq:R2"], 4: ["sq:P", "sq:P"], 5: ["sq:P", "sq:P"],
    6: ["sq:P"], 7: ["sq:P"], 8: ["sq:R1"], 9: ["sq:R1"], 10: ["sq:R1"], 11: [], 12: [],
    13: ["sq:R1+R2", "sq:R1R2"], 14: ["sq:R1"], 15: ["sq:R1"], 16: [], 17: [], 18: ["sq:R1"],
    19: ["sq:R2"], 20: ["sq:P"], 21: ["sq:P"], 22: ["sq:P", "unit", "reorg"], 23: ["sq:R1"],
    24: [], 25: ["sq:R1"], 26: ["sq:R1"], 27: [], 28: ["sq:P"], 29: ["sq:P"], 30: [], 31: [],
    32: ["sq:R1"], 33: ["sq:R1"], 34: ["sq:R1"], 35: ["sq:P"], 36: [], 37: [], 38: [],
    39: ["sq:R1"], 40: [], 41: [], 42: [],
    "thm31.4": ["sq:P+R1", "sq:R1"],
}

# the prefactor the proof writes in front of b*g(a/b)
HALF = {1, 3, 4, 5, 6, 7, 8, 9, 10, 13, 14, 15, 18, 19, 20, 21, 23, 25, 26, 27, 28, 29,
        32, 33, 34, 35, 39}

NOTES = {
    5: ["the proof's closing sentence names h17 where h5 is meant"],
    7: ["the proof reuses the name g6 for this part's function",
        "the part header misprints the left side; the proved combination is used"],
    8: ["the printed u8 lists its two sides transposed (it is the negative of the expansion); "
        "S is the radical side here"],
    15: ["the combination line drops the subscript of N3 (reads 27N)"],
    21: ["the part header misprints the right side; the proved combination is used"],
    22: ["second SplitSquare is the reorganisation of positive and negative terms"],
    27: ["the part header reads (2P4 + 5P6)/7; the proved combination has P5"],
    35: ["the printed u35 lists its two sides transposed (it is the negative of the expansion); "
         "S is the polynomial side here"],
    28: ["the part header states the reversed relation; the proved combination is used"],
}


def primitive_radical(e: RadicalExpression) -> RadicalExpression:
    return e * (1 / radical_content(e))


def positive_on_halfline(p: RationalPolynomial) -> bool:
    if nonneg_coeffs(p):
        return True
    q = p.deflate_zero(p.low_order())
    return sturm_count(q).root_count == 0 and q(1) > 0


def witness_term(key, p: RationalPolynomial) -> WitnessTerm:
    """Positivity witness for ``p * R^key``, peeling squares of (t - 1)."""
    coeff = p.content()
    q = p.primitive()
    if q * coeff != p:
        raise ValueError("S part is negative; wrong side chosen")
    factors = [Factor(name) for name, on in (("R1", key[0]), ("R2", key[1])) if on]
    m = unit_root_multiplicity(q)
    if m % 2:
        raise ValueError("odd power of (t - 1) in S")
    if m:
        sq = RationalPolynomial([-1, 1]) ** (m // 2)
        factors.append(Factor("square", sq))
        q = factor_unit_root(q, m)
    if q.degree > 0:
        if nonneg_coeffs(q):
            factors.append(Factor("poly", q, "nonneg"))
        elif positive_on_halfline(q):
            factors.append(Factor("poly", q, "sturm"))
        else:
            raise ValueError("S part is not positive on t > 0")
    return WitnessTerm(coeff, tuple(factors))


def square_step(cur: RadicalExpression, keys):
    s = RadicalExpression({k: p for k, p in cur.parts.items() if k in keys})
    t = s - cur
    witness = tuple(witness_term(k, p) for k, p in sorted(s.parts.items()))
    return SplitSquare(s, t, witness), primitive_radical(square_compare(s, t))


def reorg_step(cur: RadicalExpression):
    p = cur.as_polynomial()
    pos = RationalPolynomial([c if c > 0 else 0 for c in p.coeffs])
    s = RadicalExpression.poly(pos)
    t = s - cur
    return SplitSquare(s, t, (WitnessTerm(Fraction(1), (Factor("poly", pos, "nonneg"),)),)), \
        primitive_radical(square_compare(s, t))


def unit_step(cur: RadicalExpression):
    k = min(unit_root_multiplicity(p) for p in cur.parts.values())
    if k % 2:
        raise ValueError(f"odd multiplicity {k} of t = 1")
    q = RadicalExpression({key: factor_unit_root(p, k) for key, p in cur.parts.items()})
    q = primitive_radical(q)
    return UnitRootFactor(k, q), q


def build(part) -> Certificate:
    sid = part if isinstance(part, str) else f"thm21.p{part:02d}"
    stmt = registry.get(sid)
    num, den = expand_combination(stmt.combination)
    denom = den.primitive()
    cur = primitive_radical((num * denom).divide_exact(den))
    steps = [Expand(denom, cur)]
    for op in PLAN[part]:
        if op == "unit":
            step, cur = unit_step(cur)
        elif op == "reorg":
            step, cur = reorg_step(cur)
        else:
            keys = {KEYS[k] for k in op[3:].split("+")}
            step, cur = square_step(cur, keys)
        steps.append(step)
    if not cur.is_polynomial():
        raise ValueError(f"{sid}: radicals remain after the plan")
    if unit_root_multiplicity(cur.as_polynomial()):
        step, cur = unit_step(cur)
        steps.append(step)
    p = cur.as_polynomial()
    if p.low_order():
        k = p.low_order()
        steps.append(DeflateZero(k))
        p = p.deflate_zero(k)
    if nonneg_coeffs(p):
        steps.append(NonnegCoeffs(p))
    else:
        steps.append(SturmNoPositiveRoots(p))
        steps.append(PositiveAtOne(p(1)))
    scale = Fraction(1, 2) if part in HALF else Fraction(1)
    return Certificate(sid, scale, tuple(steps), tuple(NOTES.get(part, ())))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with files on disk, write nothing")
    ap.add_argument("--out", type=Path, default=DATA_DIR)
    args = ap.parse_args(argv)
    stale = 0
    for part in PLAN:
        cert = build(part)
        res = check_certificate(cert, registry.get(cert.statement_id))
        if not res.proved:
            print(f"{cert.statement_id}: generated certificate fails: {res.failure}", file=sys.stderr)
            return 1
        path = args.out / f"{cert.statement_id}.json"
        text = dumps(cert)
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                print(f"{path.name}: out of date")
                stale += 1
        else:
            path.write_text(text, encoding="utf-8")
    return 1 if stale else 0


if __name__ == "__main__":
    sys.exit(main())
