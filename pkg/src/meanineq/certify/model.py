"""Certificate data model and its canonical JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import (
    RadicalExpression,
    RationalPolynomial,
    format_poly,
    format_radical,
    parse_poly,
    parse_radical,
)
from ..errors import CertificateFormatError, GrammarError

# -- steps ---------------------------------------------------------------


@dataclass(frozen=True)
class Expand:
    """Expand the statement; ``denominator`` is the one the proof divides by."""

    denominator: RationalPolynomial
    numerator: RadicalExpression | None = None


@dataclass(frozen=True)
class Factor:
    kind: str  # "R1", "R2", "poly" or "square"
    poly: RationalPolynomial | None = None
    check: str | None = None  # for "poly": "nonneg" or "sturm"


@dataclass(frozen=True)
class WitnessTerm:
    coeff: Fraction
    factors: tuple


@dataclass(frozen=True)
class SplitSquare:
    """Replace ``S - T >= 0`` by ``S^2 - T^2 >= 0``; ``witness`` shows ``S >= 0``."""

    s: RadicalExpression
    t: RadicalExpression
    witness: tuple


@dataclass(frozen=True)
class UnitRootFactor:
    k: int
    quotient: RadicalExpression


@dataclass(frozen=True)
class DeflateZero:
    k: int


@dataclass(frozen=True)
class NonnegCoeffs:
    poly: RationalPolynomial


@dataclass(frozen=True)
class SturmNoPositiveRoots:
    poly: RationalPolynomial


@dataclass(frozen=True)
class PositiveAtOne:
    value: Fraction | None = None


STEP_TYPES = {
    "Expand": Expand,
    "SplitSquare": SplitSquare,
    "UnitRootFactor": UnitRootFactor,
    "DeflateZero": DeflateZero,
    "NonnegCoeffs": NonnegCoeffs,
    "SturmNoPositiveRoots": SturmNoPositiveRoots,
    "PositiveAtOne": PositiveAtOne,
}


@dataclass(frozen=True)
class Certificate:
    statement_id: str
    scale: Fraction
    steps: tuple
    notes: tuple = field(default=())


# -- serialisation -------------------------------------------------------


def _frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _factor_json(f: Factor):
    d = {"kind": f.kind}
    if f.poly is not None:
        d["poly"] = format_poly(f.poly, strict=True)
    if f.check is not None:
        d["check"] = f.check
    return d


def _step_json(step):
    if isinstance(step, Expand):
        d = {"type": "Expand", "denominator": format_poly(step.denominator, strict=True)}
        if step.numerator is not None:
            d["numerator"] = format_radical(step.numerator, strict=True)
        return d
    if isinstance(step, SplitSquare):
        return {
            "type": "SplitSquare",
            "S": format_radical(step.s, strict=True),
            "T": format_radical(step.t, strict=True),
            "witness": [
                {"coeff": _frac(w.coeff), "factors": [_factor_json(f) for f in w.factors]}
                for w in step.witness
            ],
        }
    if isinstance(step, UnitRootFactor):
        return {"type": "UnitRootFactor", "k": step.k,
                "quotient": format_radical(step.quotient, strict=True)}
    if isinstance(step, DeflateZero):
        return {"type": "DeflateZero", "k": step.k}
    if isinstance(step, NonnegCoeffs):
        return {"type": "NonnegCoeffs", "poly": format_poly(step.poly, strict=True)}
    if isinstance(step, SturmNoPositiveRoots):
        return {"type": "SturmNoPositiveRoots", "poly": format_poly(step.poly, strict=True)}
    if isinstance(step, PositiveAtOne):
        d = {"type": "PositiveAtOne"}
        if step.value is not None:
            d["value"] = _frac(step.value)
        return d
    raise TypeError(f"unknown step {step!r}")


def to_json(cert: Certificate) -> dict:
    d = {
        "statement_id": cert.statement_id,
        "scale": _frac(cert.scale),
        "steps": [_step_json(s) for s in cert.steps],
    }
    if cert.notes:
        d["notes"] = list(cert.notes)
    return d


def dumps(cert: Certificate) -> str:
    return json.dumps(to_json(cert), indent=2, ensure_ascii=False) + "\n"


# -- parsing -------------------------------------------------------------


class _Reader:
    """Parses payloads and maps grammar errors back to file positions."""

    def __init__(self, text):
        self.text = text

    def where(self, payload, offset=0):
        needle = json.dumps(payload)
        idx = self.text.find(needle)
        if idx < 0:
            return None, None
        idx += 1 + offset  # skip the opening quote
        line = self.text.count("\n", 0, idx) + 1
        col = idx - (self.text.rfind("\n", 0, idx) + 1) + 1
        return line, col

    def fail(self, msg, payload=None, offset=0):
        line, col = self.where(payload, offset) if isinstance(payload, str) else (None, None)
        raise CertificateFormatError(msg, line, col)

    def poly(self, s, what):
        if not isinstance(s, str):
            self.fail(f"{what} must be a string literal")
        try:
            return parse_poly(s)
        except GrammarError as exc:
            self.fail(f"{what}: {exc}", s, exc.pos)

    def radical(self, s, what):
        if not isinstance(s, str):
            self.fail(f"{what} must be a string literal")
        try:
            return parse_radical(s)
        except GrammarError as exc:
            self.fail(f"{what}: {exc}", s, exc.pos)

    def frac(self, s, what):
        if not isinstance(s, str):
            self.fail(f"{what} must be a string rational like \"1/2\"")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{what}: bad rational {s!r}", s)

    def integer(self, v, what):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            self.fail(f"{what} must be a positive integer")
        return v


def _get(reader, d, key, what):
    if not isinstance(d, dict) or key not in d:
        reader.fail(f"{what}: missing field {key!r}")
    return d[key]


def _parse_step(r: _Reader, d, i):
    what = f"step {i}"
    kind = _get(r, d, "type", what)
    if kind not in STEP_TYPES:
        r.fail(f"{what}: unknown step type {kind!r}", kind)
    if kind == "Expand":
        num = d.get("numerator")
        return Expand(r.poly(_get(r, d, "denominator", what), what + " denominator"),
                      None if num is None else r.radical(num, what + " numerator"))
    if kind == "SplitSquare":
        terms = []
        for j, w in enumerate(_get(r, d, "witness", what)):
            fs = []
            for f in _get(r, w, "factors", f"{what} witness {j}"):
                fk = _get(r, f, "kind", f"{what} witness {j}")
                if fk not in ("R1", "R2", "poly", "square"):
                    r.fail(f"{what}: unknown witness factor {fk!r}", fk)
                poly = None
                if fk in ("poly", "square"):
                    poly = r.poly(_get(r, f, "poly", f"{what} witness {j}"), f"{what} witness")
                check = f.get("check")
                if fk == "poly" and check not in ("nonneg", "sturm"):
                    r.fail(f"{what}: poly factor needs check 'nonneg' or 'sturm'")
                fs.append(Factor(fk, poly, check))
            terms.append(WitnessTerm(r.frac(w.get("coeff", "1/1"), f"{what} witness coeff"), tuple(fs)))
        return SplitSquare(r.radical(_get(r, d, "S", what), what + " S"),
                           r.radical(_get(r, d, "T", what), what + " T"), tuple(terms))
    if kind == "UnitRootFactor":
        return UnitRootFactor(r.integer(_get(r, d, "k", what), what + " k"),
                              r.radical(_get(r, d, "quotient", what), what + " quotient"))
    if kind == "DeflateZero":
        return DeflateZero(r.integer(_get(r, d, "k", what), what + " k"))
    if kind == "NonnegCoeffs":
        return NonnegCoeffs(r.poly(_get(r, d, "poly", what), what + " poly"))
    if kind == "SturmNoPositiveRoots":
        return SturmNoPositiveRoots(r.poly(_get(r, d, "poly", what), what + " poly"))
    value = d.get("value")
    return PositiveAtOne(None if value is None else r.frac(value, what + " value"))


def loads(text: str) -> Certificate:
    r = _Reader(text)
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(d, dict):
        r.fail("certificate must be a JSON object")
    sid = _get(r, d, "statement_id", "certificate")
    if not isinstance(sid, str):
        r.fail("statement_id must be a string")
    scale = r.frac(_get(r, d, "scale", "certificate"), "scale")
    steps = _get(r, d, "steps", "certificate")
    if not isinstance(steps, list) or not steps:
        r.fail("steps must be a non-empty list")
    notes = d.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        r.fail("notes must be a list of strings")
    return Certificate(sid, scale, tuple(_parse_step(r, s, i) for i, s in enumerate(steps)), tuple(notes))
