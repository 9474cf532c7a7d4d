"""Catalogue of every inequality and identity, in "combination >= 0" form.

Statements are transcribed as readable relations (``"(S + 3*G)/4 <= N1"``,
``"D(P6,S) <= D(S,P4)/2"``) and normalised to ``rhs - lhs``.  Ids are frozen
in ``data/registry.json``; new statements get new ids, never renumbered ones.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .kernels import (
    Combination,
    DIVERGENCE_KERNELS,
    NAMED_MEANS,
    divergence,
    named,
    parse_kernel,
)

KERNEL = "kernel"
DISTRIBUTION = "distribution"
NONNEG = "nonneg"
IDENTITY = "identity"

MANIFEST = Path(__file__).with_name("data") / "registry.json"


@dataclass(frozen=True)
class Statement:
    id: str
    kind: str  # NONNEG or IDENTITY
    combination: Combination
    level: str  # KERNEL or DISTRIBUTION
    source: str

    @property
    def claim(self):
        return (self.kind, self.combination)


# ---------------------------------------------------------------------------
# tiny parser for linear relations over kernels

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(<=|>=|==|[-+*/(),]))")
_ALIASES = {"h": "Hellinger"}


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad relation syntax near {text[pos:]!r}")
        num, name, op = m.groups()
        out.append(("num", int(num)) if num else ("name", name) if name else ("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            raise ValueError(f"expected {value!r} in {self.text!r}")
        self.i += 1
        return tok

    # values are Fraction (constants) or Combination
    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = _add(val, rhs if op == "+" else _mul(Fraction(-1), rhs))
        return val

    def term(self):
        val = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                val = _mul(val, rhs)
            else:
                if not isinstance(rhs, Fraction):
                    raise ValueError("division by a kernel")
                val = _mul(val, 1 / rhs)
        return val

    def factor(self):
        kind, v = self.peek()
        if v == "-":
            self.take()
            return _mul(Fraction(-1), self.factor())
        if v == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if kind == "num":
            self.take()
            return Fraction(v)
        if kind == "name":
            self.take()
            if v == "D":
                self.take("(")
                t = self.take()[1]
                self.take(",")
                p = self.take()[1]
                self.take(")")
                return Combination(((Fraction(1), _kernel(t)), (Fraction(-1), _kernel(p))))
            return Combination(((Fraction(1), _kernel(v)),))
        raise ValueError(f"unexpected token {v!r} in {self.text!r}")


def _kernel(name):
    name = _ALIASES.get(name, name)
    if name in NAMED_MEANS:
        return named(name)
    if name in DIVERGENCE_KERNELS:
        return divergence(name)
    return parse_kernel(name)


def _add(a, b):
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        raise ValueError("constants cannot be added to kernels")
    return a + b


def _mul(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    if isinstance(a, Fraction):
        return b.scale(a)
    if isinstance(b, Fraction):
        return a.scale(b)
    raise ValueError("product of two kernels is not linear")


def parse_linear(text: str) -> Combination:
    p = _Parser(text)
    val = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    if isinstance(val, Fraction):
        raise ValueError(f"{text!r} has no kernels")
    return val


def parse_relation(text: str):
    """Return ``(kind, combination)`` with the combination in ``>= 0`` form."""
    for op in ("<=", ">=", "=="):
        if op in text:
            lhs, rhs = text.split(op)
            lhs, rhs = parse_linear(lhs), parse_linear(rhs)
            if op == "<=":
                return NONNEG, rhs - lhs
            if op == ">=":
                return NONNEG, lhs - rhs
            return IDENTITY, lhs - rhs
    raise ValueError(f"no relation operator in {text!r}")


def flatten_chain(chain):
    """Adjacent relations of a displayed chain with braced branches.

    ``chain`` is a list whose items are either a term (string) or a list of
    branches, each branch itself a chain.  Every last element of one item is
    related to every first element of the next; braced branches are mutually
    unordered.  Repeated pairs are reported once.
    """
    pairs = []

    def ends(item):
        if isinstance(item, str):
            return [item], [item]
        firsts, lasts = [], []
        for branch in item:
            f, l = walk(branch)
            firsts += f
            lasts += l
        return firsts, lasts

    def walk(seq):
        prev_lasts = None
        first = None
        for item in seq:
            f, l = ends(item)
            if first is None:
                first = f
            if prev_lasts is not None:
                for a in prev_lasts:
                    for b in f:
                        pairs.append((a, b))
            prev_lasts = l
        return first, prev_lasts

    walk(chain)
    seen = set()
    out = []
    for p in pairs:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# transcription

EQ8 = [
    "P1 <= P2", "P2 <= P3", "P3 <= H", "H <= P4", "P4 <= G", "G <= N1",
    "N1 <= N3", "N3 <= N2", "N2 <= A", "A <= P5", "A <= S", "P5 <= P6", "S <= P6",
]

GROUP1 = [
    "P2 <= (P6 + 3*P1)/4",
    "(2*S + H)/3 <= A",
    "(P6 + 14*N1)/15 <= N3",
    "(P6 + 2*P4)/3 <= N3",
    "S <= (5*P6 + 2*P4)/7",
    "(P6 + 3*G)/4 <= N2",
    "(P6 + 5*G)/6 <= N1",
    "G <= (P6 + 6*P4)/7",
    "(2*N2 + G)/3 <= N1",
    "N2 <= (3*A + G)/4",
    "N1 <= (P5 + 2*G)/3",
    "N3 <= (P5 + 5*N1)/6",
    "N2 <= (P5 + 9*N3)/10",
    "A <= (P5 + 2*N2)/3",
    "(S + 4*N2)/5 <= A",
    "(S + 3*N3)/4 <= A",
    "(S + 5*N1)/6 <= N2",
    "(S + 8*N1)/9 <= N3",
    "(S + 3*G)/4 <= N1",
    "P2 <= (9*P1 + 4*P5)/13",
    "P3 <= (2*P5 + 7*P2)/9",
    "S <= (5*P6 + 4*N2)/9",
]

# the printed list numbers two consecutive items "6"; ids follow listed order
GROUP2 = [
    "6*A + P6 <= 6*S + P2",
    "9*A + 8*N2 <= 9*H + 8*P6",
    "7*A + 6*N3 <= 7*H + 6*P6",
    "5*A + 4*P4 <= 5*H + 4*S",
    "S + N1 <= P4 + P6",
    "6*H + 5*P6 <= 6*P5 + 5*G",
    "2*P4 + P6 <= 2*A + G",
    "10*N1 + P5 <= 10*N2 + H",
    "A + 6*N1 <= P4 + 6*N2",
    "G + 6*A <= P5 + 6*N2",
    "G + 2*S <= P6 + 2*N1",
    "4*H + 5*S <= 4*P5 + 5*G",
    "16*P2 + 9*P6 <= 16*P5 + 9*P1",
    "13*P2 + 12*P5 <= 13*P6 + 12*P1",
    "12*P3 + 7*P6 <= 12*P5 + 7*P2",
    "14*N2 + 9*P5 <= 14*P6 + 9*P3",
    "P6 + G <= A + S",
]

EQ11 = [
    "D(P6,P1)/8", "D(P6,P2)/6", "D(S,A)", "D(S,H)/3", "D(A,H)/2",
    [
        ["4/9*D(P6,N2)"],
        [[["3/7*D(P6,N3)"], ["2/5*D(S,P4)"]], [["2/5*D(P6,N1)"], ["2/7*D(P6,P4)"]]],
    ],
    "D(P6,G)/3",
    [["2/5*D(P5,H)"], ["2/3*D(A,P4)"]],
    "4*D(N2,N1)", "4/3*D(N2,G)", "D(A,G)", "4*D(A,N2)", "2/3*D(P5,G)",
    "D(P5,N1)", "6/5*D(P5,N3)", "4/3*D(P5,N2)", "2*D(P5,A)",
]

EQ12 = [
    "D(S,A)",
    [["4/5*D(S,N2)"], ["3/4*D(S,N3)"]],
    "2/3*D(S,N1)",
    [["D(P6,G)/3"], ["D(S,G)/2"]],
    "2/5*D(P5,H)",
]

EQ13 = [
    [["D(P6,P1)/8"], ["2/13*D(P5,P1)"]],
    [["D(P6,P2)/6"], ["2/9*D(P5,P2)"]],
    "2/7*D(P5,P3)", "4/9*D(P6,N2)", "D(P6,S)", "D(A,G)",
]

EQ14 = [
    "G", "(P6 + 6*P4)/7",
    [["(P6 + 5*G)/6"], ["(S + 3*G)/4"]],
    "(2*N2 + G)/3", "N1",
    [["(10*N2 + H - P5)/10"], ["(P4 + 6*N2 - A)/6"]],
    [
        [[["(P5 + 2*G)/3"], ["P4 + P6 - S"]], "(P6 + 2*P4)/3"],
        ["P4 + P6 - S", [["(P6 + 14*N1)/15"], ["(S + 8*N1)/9"]]],
    ],
    "N3", "N2",
    [
        [
            "(3*A + G)/4", "(P5 + 9*N3)/10",
            [["(8*P6 + 9*H - 9*A)/8"], ["(S + 4*N2)/5"], ["(S + 3*N3)/4"], ["(2*S + H)/3"]],
            "A",
        ],
        ["(14*P6 + 9*P3 - 9*P5)/14"],
    ],
    [
        ["(5*H + 4*S - 4*P4)/5"],
        ["(P5 + 6*N2 - G)/6", "(P5 + 2*N2)/3", "(7*H + 6*P6 - 6*N3)/7"],
    ],
    [
        ["(4*H + 5*S - 5*G)/4", "P5"],
        ["S", "(P6 + 2*N1 - G)/2", [["(2*P4 + 5*P6)/7"], ["(4*N2 + 5*P6)/9"]]],
        ["(12*P5 + 13*P2 - 12*P1)/13"],
    ],
    "P6",
    [["A + S - G"], ["(6*P5 + 5*G - 6*H)/5"], ["2*A + G - 2*P4"]],
    [["(12*P5 + 7*P2 - 12*P3)/7"], ["6*S + P2 - 6*A"]],
    "(16*P5 + 9*P1 - 16*P2)/9",
]

EQ15 = [
    "P2",
    [
        ["(P6 + 3*P1)/4", "N1", "(P6 + 3*G)/4", "(S + 5*N1)/6", "N2"],
        [
            "(4*P5 + 9*P1)/13", "N3", "(P5 + 5*N1)/6", "A", "(3*I + 2*P4)/2",
            [["P5", "(T + 2*A)/2", "(3*J + 16*G)/16"], ["S"]],
        ],
        ["P3", "(2*P5 + 7*P2)/9", "N1"],
    ],
]

EQ16 = [
    "D(A,H)/2", "I", "4*D(N2,N1)", "4/3*D(N2,G)", "D(A,G)", "4*D(A,N2)", "J/8", "T",
]

EQ18 = [
    "N3", "(I + 4*N1)/4", "N2", "A", "(2*P4 + 3*I)/2",
    [["P5", "(T + 2*A)/2", "(3*J + 16*G)/16"], ["S"]],
]

# (combination proved, prefactor, displayed relation).  Relations 7 and 21
# carry misprinted headers; the corrected form consistent with the proved
# combination is listed and the misprint is noted in the source.
# Printed relations that are false for large ratios; the proof parts that
# cover them establish the corrected forms given here.
EQ14_CORRECTIONS = {
    "(P6 + 2*N1 - G)/2 <= (2*P4 + 5*P6)/7": (
        "(P6 + 2*N1 - G)/2 <= (2*P5 + 5*P6)/7",
        "Theorem 2.1 part 27 proves the P5 form"),
    "(2*P4 + 5*P6)/7 <= P6": (
        "(2*P5 + 5*P6)/7 <= P6", "same P4/P5 misprint as the preceding term"),
    "(P6 + 2*N1 - G)/2 <= (4*N2 + 5*P6)/9": (
        "(4*N2 + 5*P6)/9 <= (P6 + 2*N1 - G)/2",
        "Theorem 2.1 part 28 and Remark 2.1 item 28 prove the reversed direction"),
}

# printed -> corrected, same reasoning as above
REMARK21_CORRECTIONS = {
    24: ("D(P5,P1) >= (91*D(H,P2) + 78*D(P6,N3))/84",
         "printed with <=; Theorem 2.1 part 24 proves >="),
}

THM21_PARTS = [
    ("7*S + 21*G - 4*P6 - 24*P4", "1/28", "(P6 + 6*P4)/7 <= (S + 3*G)/4"),
    ("8*N2 - 5*G - 3*S", "1/12", "(S + 3*G)/4 <= (2*N2 + G)/3"),
    ("4*N2 - 3*G - P6", "1/6", "(P6 + 5*G)/6 <= (2*N2 + G)/3"),
    ("10*P4 + 10*P6 + P5 - 10*N2 - 10*S - H", "1/10", "(10*N2 + H - P5)/10 <= P4 + P6 - S"),
    ("5*P4 + 6*P6 + A - 6*S - 6*N2", "1/6", "(P4 + 6*N2 - A)/6 <= P4 + P6 - S"),
    ("13*P5 + 20*G - 30*N2 - 3*H", "1/30", "(10*N2 + H - P5)/10 <= (P5 + 2*G)/3"),
    ("2*P5 + 4*G + A - P4 - 6*N2", "1/6", "(P4 + 6*N2 - A)/6 <= (P5 + 2*G)/3"),
    ("3*S - 2*P6 - P4", "1/3", "P4 + P6 - S <= (P6 + 2*P4)/3"),
    ("15*S + 14*N1 - 14*P6 - 15*P4", "1/15", "P4 + P6 - S <= (P6 + 14*N1)/15"),
    ("10*S + 8*N1 - 9*P6 - 9*P4", "1/9", "P4 + P6 - S <= (S + 8*N1)/9"),
    ("P6 + 2*P4 - P5 - 2*G", "1/3", "(P5 + 2*G)/3 <= (P6 + 2*P4)/3"),
    ("2*P5 + 18*N3 - 15*A - 5*G", "1/20", "(3*A + G)/4 <= (P5 + 9*N3)/10"),
    ("2*S + 8*N2 - P5 - 9*N3", "1/10", "(P5 + 9*N3)/10 <= (S + 4*N2)/5"),
    ("5*S - 3*N3 - 2*P5", "1/20", "(P5 + 9*N3)/10 <= (S + 3*N3)/4"),
    ("20*S + 10*H - 3*P5 - 27*N3", "1/30", "(P5 + 9*N3)/10 <= (2*S + H)/3"),
    ("40*P6 + 45*H - 45*A - 4*P5 - 36*N3", "1/40", "(P5 + 9*N3)/10 <= (8*P6 + 9*H - 9*A)/8"),
    ("17*A - 8*P6 - 9*H", "1/8", "(8*P6 + 9*H - 9*A)/8 <= A"),
    ("45*P5 + 70*H + 56*S - 56*P4 - 70*P6 - 45*P3", "1/70",
     "(14*P6 + 9*P3 - 9*P5)/14 <= (5*H + 4*S - 4*P4)/5"),
    ("34*P5 + 42*N2 - 42*P6 - 27*P3 - 7*G", "1/42",
     "(14*P6 + 9*P3 - 9*P5)/14 <= (P5 + 6*N2 - G)/6"),
    ("P5 - 2*N2 + G", "1/6", "(P5 + 6*N2 - G)/6 <= (P5 + 2*N2)/3"),
    ("18*P6 + 21*H - 14*N2 - 18*N3 - 7*P5", "1/21", "(P5 + 2*N2)/3 <= (7*H + 6*P6 - 6*N3)/7"),
    ("60*P5 + 65*P2 + 52*P4 - 60*P1 - 65*H - 52*S", "1/65",
     "(5*H + 4*S - 4*P4)/5 <= (12*P5 + 13*P2 - 12*P1)/13"),
    ("16*P4 + 9*S - 25*G", "1/20", "(5*H + 4*S - 4*P4)/5 <= (4*H + 5*S - 5*G)/4"),
    ("84*P5 + 91*P2 + 78*N3 - 84*P1 - 91*H - 78*P6", "1/91",
     "(7*H + 6*P6 - 6*N3)/7 <= (12*P5 + 13*P2 - 12*P1)/13"),
    ("35*S + 24*N3 - 35*G - 24*P6", "1/28", "(7*H + 6*P6 - 6*N3)/7 <= (4*H + 5*S - 5*G)/4"),
    ("7*S + 6*N3 - 7*H - 6*P6", "1/7", "(7*H + 6*P6 - 6*N3)/7 <= S"),
    ("4*P5 + 3*P6 + 7*G - 14*N1", "1/14", "(P6 + 2*N1 - G)/2 <= (2*P5 + 5*P6)/7"),
    ("18*N1 - P6 - 9*G - 8*N2", "1/18", "(4*N2 + 5*P6)/9 <= (P6 + 2*N1 - G)/2"),
    ("12*P5 + 7*P2 + 7*G - 12*P3 - 7*A - 7*S", "1/7", "A + S - G <= (12*P5 + 7*P2 - 12*P3)/7"),
    ("18*P5 + 35*P2 + 42*H - 60*P3 - 35*G", "1/35",
     "(6*P5 + 5*G - 6*H)/5 <= (12*P5 + 7*P2 - 12*P3)/7"),
    ("12*P5 + 7*P2 + 14*P4 - 12*P3 - 14*A - 7*G", "1/7",
     "2*A + G - 2*P4 <= (12*P5 + 7*P2 - 12*P3)/7"),
    ("5*S + P2 + G - 7*A", "1", "A + S - G <= 6*S + P2 - 6*A"),
    ("30*S + 5*P2 + 6*H - 30*A - 6*P5 - 5*G", "1/5", "(6*P5 + 5*G - 6*H)/5 <= 6*S + P2 - 6*A"),
    ("6*S + P2 + 2*P4 - G - 8*A", "1", "2*A + G - 2*P4 <= 6*S + P2 - 6*A"),
    ("16*P5 + 9*P1 + 54*A - 25*P2 - 54*S", "1/9", "6*S + P2 - 6*A <= (16*P5 + 9*P1 - 16*P2)/9"),
    ("4*P5 + 63*P1 + 108*P3 - 175*P2", "1/63",
     "(12*P5 + 7*P2 - 12*P3)/7 <= (16*P5 + 9*P1 - 16*P2)/9"),
    ("4*N1 - P6 - 3*P1", "1/4", "(P6 + 3*P1)/4 <= N1"),
    ("P6 + 3*G - 4*N1", "1/4", "N1 <= (P6 + 3*G)/4"),
    ("2*S + 10*N1 - 3*P6 - 9*G", "1/6", "(P6 + 3*G)/4 <= (S + 5*N1)/6"),
    ("13*N3 - 4*P5 - 9*P1", "1/13", "(4*P5 + 9*P1)/13 <= N3"),
    ("6*A - P5 - 5*N1", "1/6", "(P5 + 5*N1)/6 <= A"),
    ("9*N1 - 2*P5 - 7*P2", "1/9", "(2*P5 + 7*P2)/9 <= N1"),
]

THM21_NOTES = {
    7: "header misprints the left side as (P6 + 6N2 - A)/6",
    15: "combination line misprints 27N3 as 27N",
    21: "header misprints the right side as (6P6 + 7H - 6N2)/7",
    27: "header misprints the right side as (2P4 + 5P6)/7",
    28: "header misprints the relation as (P6 + 2N1 - G)/2 <= (4N2 + 5P6)/9",
}

THM31_PART4 = ("2*S + 12*N1 - 2*P4 - 12*N2", "1/3", "4*D(N2,N1) <= 2/3*D(S,P4)")

REMARK21 = [
    "D(P6,S) <= (3*D(S,P4) + 21*D(G,P4))/4",
    "D(S,N2) <= 5/3*D(N2,G)",
    "D(P6,N2) <= 3*D(N2,G)",
    "D(N2,P4) <= (10*D(P6,S) + D(P5,H))/10",
    "D(N2,P4) <= (6*D(P6,S) + D(A,N2))/5",
    "D(N2,G) <= (10*D(P5,N2) + 3*D(P5,H))/20",
    "D(N2,G) <= (2*D(P5,N2) + D(A,P4))/4",
    "D(P6,S) <= D(S,P4)/2",
    "D(P6,N1) <= 15/14*D(S,P4)",
    "D(P6,S) <= (D(S,P4) + 8*D(N1,P4))/9",
    "D(G,P4) <= D(P6,P5)/2",
    "D(A,N3) <= (2*D(P5,A) + 5*D(N3,G))/13",
    "D(P5,N2) <= 2*D(S,N3) + 7*D(N2,N3)",
    "D(P5,N3) <= 5/2*D(S,N3)",
    "D(S,N3) >= (7*D(N3,H) + 3*D(P5,H))/20",
    "D(A,H) <= (36*D(P6,N3) + 4*D(P6,P5))/45",
    "D(P6,A) <= 9/8*D(A,H)",
    "D(P6,H) <= (56*D(S,P4) + 45*D(P5,P3))/70",
    "D(P6,N2) <= (27*D(P5,P3) + 7*D(P5,G))/42",
    "D(N2,G) <= D(P5,N2)",
    "D(P6,N3) >= (14*D(N2,H) + 7*D(P5,H))/18",
    "D(P5,P1) >= (65*D(H,P2) + 52*D(S,P4))/60",
    "D(S,P4) <= 25/16*D(S,G)",
    "D(P5,P1) <= (91*D(H,P2) + 78*D(P6,N3))/84",
    "D(P6,N3) <= 35/24*D(S,G)",
    "D(P6,N3) <= 7/6*D(S,H)",
    "D(N1,G) <= (4*D(P5,N1) + 3*D(P6,N1))/7",
    "D(N1,G) >= (D(P6,N1) + 8*D(N2,N1))/9",
    "D(P5,P3) >= 7/12*(D(A,P2) + D(S,G))",
    "D(G,P2) <= (18*D(P5,P3) + 42*D(H,P3))/35",
    "D(P5,P3) >= (7*D(G,P2) + 14*D(A,P4))/12",
    "D(A,G) + D(A,P2) <= 5*D(S,A)",
    "D(S,A) >= (5*D(G,P2) + 6*D(P5,H))/30",
    "D(S,A) >= (2*D(A,P4) + D(G,P2))/6",
    "D(P5,P2) >= (9*D(P2,P1) + 54*D(S,A))/16",
    "D(P2,P1) <= (4*D(P5,P2) + 108*D(P3,P2))/63",
    "D(P6,N1) <= 3*D(N1,P1)",
    "D(N1,G) <= D(P6,N1)/3",
    "D(P6,N1) <= (2*D(S,G) + 7*D(N1,G))/3",
    "D(P5,N3) <= 9/4*D(N3,P1)",
    "D(P5,A) <= 5*D(A,N1)",
    "D(P5,N1) <= 7/2*D(N1,P2)",
]

REMARK31 = [
    ("r31.i.a", "4*D(N3,N1) <= I", "Remark 3.1 (i), left"),
    ("r31.i.b", "I <= 2/3*D(P5,P4)", "Remark 3.1 (i), upper branch"),
    ("r31.ii.a", "2/5*D(S,P4) <= I", "Remark 3.1 (ii), left"),
    ("r31.ii.b", "I <= 2/3*D(S,P4)", "Remark 3.1 (ii), right (also (i) lower branch)"),
    ("r31.iii.a", "2/3*h <= I", "Remark 3.1 (iii), left"),
    ("r31.iii.b", "I <= h", "Remark 3.1 (iii), right"),
    ("r31.iv", "T <= J/4", "Remark 3.1 (iv), last relation"),
]


def _has_divergence(combo: Combination) -> bool:
    return not combo.mean_only


def _chain_statements(prefix, chain, level, source, corrections=None):
    corrections = corrections or {}
    out = []
    pairs = flatten_chain(chain)
    width = len(str(len(pairs)))  # pad only as wide as the largest number
    for n, (lo, hi) in enumerate(pairs, start=1):
        rel = f"{lo} <= {hi}"
        src = f"{source}: {rel}"
        if rel in corrections:
            rel, why = corrections[rel]
            src = f"{source}: {rel} [printed as {src.split(': ', 1)[1]}; {why}]"
        kind, combo = parse_relation(rel)
        sid = f"{prefix}.{n:0{width}d}"
        out.append(Statement(sid, kind, combo, level, src))
    return out


def _build():
    stmts = []
    for n, rel in enumerate(EQ8, start=1):
        kind, combo = parse_relation(rel)
        stmts.append(Statement(f"eq8.{n:02d}", kind, combo, KERNEL, f"Eq. (8) adjacency {n}: {rel}"))
    for n, rel in enumerate(GROUP1, start=1):
        kind, combo = parse_relation(rel)
        stmts.append(Statement(f"g1.{n:02d}", kind, combo, KERNEL, f"Group 1 item {n}: {rel}"))
    for n, rel in enumerate(GROUP2, start=1):
        kind, combo = parse_relation(rel)
        label = {5: "item printed as 6 (first)", 6: "item printed as 6 (second)"}.get(n, f"item {n}")
        stmts.append(Statement(f"g2.{n:02d}", kind, combo, KERNEL, f"Group 2 {label}: {rel}"))
    stmts += _chain_statements("eq11", EQ11, KERNEL, "Eq. (11)")
    stmts += _chain_statements("eq12", EQ12, KERNEL, "Eq. (12)")
    stmts += _chain_statements("eq13", EQ13, KERNEL, "Eq. (13)")
    stmts += _chain_statements("eq14", EQ14, KERNEL, "Eq. (14)", EQ14_CORRECTIONS)
    eq15 = _chain_statements("eq15", EQ15, KERNEL, "Eq. (15)")
    for s in eq15:
        if _has_divergence(s.combination):
            s = Statement(s.id, s.kind, s.combination, KERNEL,
                          s.source + " [divergence terms proved in Theorem 3.1 / Eq. (18); forward reference]")
            stmts.append(s)
            stmts.append(Statement(s.id + "d", s.kind, s.combination, DISTRIBUTION,
                                   s.source + " [distribution-level variant]"))
        else:
            stmts.append(s)
    stmts += _chain_statements("eq16", EQ16, DISTRIBUTION, "Eq. (16)")
    kind, combo = parse_relation("J == 4*I + 4*T")
    stmts.append(Statement("eq17.id", kind, combo, DISTRIBUTION, "Eq. (17): J = 4(I + T)"))
    stmts += _chain_statements("eq18", EQ18, DISTRIBUTION, "Eq. (18)")
    for n, (combo_text, pre, rel) in enumerate(THM21_PARTS, start=1):
        combo = parse_linear(combo_text).scale(Fraction(pre))
        note = THM21_NOTES.get(n)
        src = f"Theorem 2.1 proof part {n}: {rel}" + (f" [{note}]" if note else "")
        stmts.append(Statement(f"thm21.p{n:02d}", NONNEG, combo, KERNEL, src))
    combo_text, pre, rel = THM31_PART4
    stmts.append(Statement("thm31.4", NONNEG, parse_linear(combo_text).scale(Fraction(pre)), KERNEL,
                           f"Theorem 3.1 proof part 4 (mean-only sub-claim): {rel}"))
    for n, rel in enumerate(REMARK21, start=1):
        src = f"Remark 2.1 item {n}: {rel}"
        if n in REMARK21_CORRECTIONS:
            rel, why = REMARK21_CORRECTIONS[n]
            src = f"Remark 2.1 item {n}: {rel} [{why}]"
        kind, combo = parse_relation(rel)
        stmts.append(Statement(f"r21.{n:02d}", kind, combo, KERNEL, src))
    for sid, rel, src in REMARK31:
        kind, combo = parse_relation(rel)
        stmts.append(Statement(sid, kind, combo, DISTRIBUTION, f"{src}: {rel}"))
    stmts = _cross_list_groups(stmts)
    ids = [s.id for s in stmts]
    if len(set(ids)) != len(ids):
        raise RuntimeError("duplicate statement ids")
    return tuple(sorted(stmts, key=lambda s: s.id))


def _shape(combo: Combination):
    """Key equal for positive multiples of the same combination."""
    top = max(abs(c) for c, _ in combo.terms)
    return frozenset((str(k), c / top) for c, k in combo.terms)


def _cross_list_groups(stmts):
    """Tag each group item with the lattice relation or proof part repeating it."""
    index = {}
    for s in stmts:
        if s.id.startswith(("eq14.", "eq15.", "thm21.")):
            index.setdefault(_shape(s.combination), s.id)
    out = []
    for s in stmts:
        if s.id.startswith(("g1.", "g2.")):
            hit = index.get(_shape(s.combination))
            tag = f"cross-listed as {hit}" if hit else "known result used as given; obvious per paper"
            s = Statement(s.id, s.kind, s.combination, s.level, f"{s.source} [{tag}]")
        out.append(s)
    return out


@lru_cache(maxsize=None)
def all_statements():
    return _build()


def get(statement_id: str) -> Statement:
    for s in all_statements():
        if s.id == statement_id:
            return s
    raise KeyError(statement_id)


# ---------------------------------------------------------------------------
# JSON

def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def statement_to_json(s: Statement) -> dict:
    return {
        "id": s.id,
        "level": s.level,
        "kind": s.kind,
        "terms": [{"coeff": _frac_str(c), "kernel": str(k)} for c, k in s.combination.terms],
        "source": s.source,
    }


def statement_from_json(d: dict) -> Statement:
    combo = Combination(tuple((Fraction(t["coeff"]), parse_kernel(t["kernel"])) for t in d["terms"]))
    return Statement(d["id"], d["kind"], combo, d["level"], d["source"])


def dumps(statements=None) -> str:
    statements = all_statements() if statements is None else statements
    data = [statement_to_json(s) for s in sorted(statements, key=lambda s: s.id)]
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    return tuple(statement_from_json(d) for d in json.loads(text))


def export_json(path, statements=None) -> Path:
    path = Path(path)
    try:
        path.write_text(dumps(statements), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write registry to {path}: {exc}") from exc
    return path


def import_json(path):
    path = Path(path)
    try:
        return loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise OSError(f"cannot read registry from {path}: {exc}") from exc


def counts():
    """Number of statements per id prefix (``eq8``, ``g1``, ...)."""
    out = {}
    for s in all_statements():
        key = s.id.split(".")[0]
        out[key] = out.get(key, 0) + 1
    return out
