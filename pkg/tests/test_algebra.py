import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanineq import registry
from meanineq.algebra import (
    RadicalExpression,
    RationalPolynomial,
    expand_combination,
    factor_unit_root,
    format_poly,
    format_radical,
    isolate_roots,
    nonneg_coeffs,
    parse_poly,
    parse_radical,
    square_compare,
    sturm_count,
)
from meanineq.errors import (
    GrammarError,
    NoProgress,
    NotDivisible,
    UnsupportedKernel,
    UnsupportedParam,
    ZeroPolynomial,
)
from meanineq.kernels import Combination, combination_profile

P = RationalPolynomial.from_high
R = RadicalExpression

H4 = P([3689, -8024, -25534, -144760, 402389, 1834912, 6593432, 10215648, 17426946,
        18146128, 26278348, 18146128, 17426946, 10215648, 6593432, 1834912, 402389,
        -144760, -25534, -8024, 3689])
H5 = P([1057, -3372, -10082, 1940, 375981, 1462448, 3864616, 6489648, 9785650, 11758264,
        13943412, 11758264, 9785650, 6489648, 3864616, 1462448, 375981, 1940, -10082,
        -3372, 1057])
H18 = P([943, -728, -8370, 8576, 30935, -28454, -12184, 81284, -12184, -28454, 30935,
         8576, -8370, -728, 943])
H19 = P([313, -266, -7390, 20728, -25128, 41882, -36915, 70000, -36915, 41882, -25128,
         20728, -7390, -266, 313])

small_poly = st.lists(st.integers(-9, 9), min_size=1, max_size=9).map(RationalPolynomial)


# -- polynomial ring ----------------------------------------------------

def test_basic_product():
    assert P([1, -1]) * P([1, 1]) == P([1, 0, -1])


def test_landmark_values():
    assert H4(1) == 135168000
    assert H5(1) == 81395712
    assert H18(1) == 62720
    assert H19(1) == 56448
    assert (H4.degree, H5.degree, H18.degree, H19.degree) == (20, 20, 14, 14)


@settings(max_examples=150, deadline=None)
@given(small_poly, small_poly, small_poly)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == RationalPolynomial()


@settings(max_examples=150, deadline=None)
@given(small_poly, small_poly)
def test_divmod_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        P([1, 1]).divmod(RationalPolynomial())


def test_derivative_and_eval():
    p = P([3, 0, -2, 5])
    assert p.derivative() == P([9, 0, -2])
    assert p(Fraction(1, 2)) == Fraction(3, 8) - Fraction(1) + 5
    assert isinstance(p(0.5), float)


def test_factor_unit_root_examples():
    assert factor_unit_root(P([1, -2, 1]), 2) == RationalPolynomial.constant(1)
    assert factor_unit_root(P([1, 0, 0, -1]), 1) == P([1, 1, 1])
    with pytest.raises(NotDivisible) as err:
        factor_unit_root(P([1, 0, 1]), 1)
    assert err.value.remainder == 2


def test_nonneg_coeffs_examples():
    assert nonneg_coeffs(P([1, 3, 1]))
    assert not nonneg_coeffs(P([1, 0, -1]))
    assert not nonneg_coeffs(RationalPolynomial())
    # x^4 + 70 x^(7/2) + 220 x^3 + ... in t = sqrt(x), read off the thm21.p21 certificate
    from meanineq.certify import DATA_DIR, NonnegCoeffs, load_certificate
    cert = load_certificate(DATA_DIR / "thm21.p21.json")
    final = cert.steps[-1]
    assert isinstance(final, NonnegCoeffs)
    assert final.poly == P([1, 70, 220, 210, 510, 210, 220, 70, 1]) and nonneg_coeffs(final.poly)


# -- square-compare -----------------------------------------------------

def test_square_compare_quartic_unit_root():
    s = R.poly(P([2, 2, 8, 2, 2]))
    t = R.r2(P([1, 3, 3, 1]))
    out = square_compare(s, t).as_polynomial()
    assert out == P([1, -1]) ** 4 * P([1, 2, 4, 2, 1]) * 2
    assert factor_unit_root(out, 4) == P([2, 4, 8, 4, 2])


def test_square_compare_equal_sides():
    s = R.r1(P([1, 1]))
    assert square_compare(s, s).is_zero()


def test_square_compare_no_progress():
    # (R1 + R2 + R1*R2)^2 still carries R1, R2 and R1*R2
    s = R.r1() + R.r2() + R({(1, 1): RationalPolynomial.constant(1)})
    with pytest.raises(NoProgress):
        square_compare(s, R.poly(1))


def test_radical_reduction():
    assert (R.r1() * R.r1()).as_polynomial() == P([2, 0, 0, 0, 2])
    assert (R.r2() * R.r2()).as_polynomial() == P([2, 0, 2])


def _positive_s(rng):
    coeffs = [int(c) for c in rng.integers(0, 6, 4)]
    coeffs[0] += 1
    return R.poly(RationalPolynomial(coeffs)) * (R.r1() if rng.random() < 0.5 else R.poly(1))


def test_square_compare_soundness_nonneg_t():
    # with S > 0 and T >= 0 the two differences share their sign
    rng = np.random.default_rng(98)
    for _ in range(30):
        s = _positive_s(rng)
        t = R.r2(RationalPolynomial([int(c) for c in rng.integers(0, 6, 4)]))
        d2 = square_compare(s, t)
        d1 = s - t
        for x in np.exp(rng.uniform(-3, 3, 50)):
            v1, v2 = d1(x), d2(x)
            if abs(v1) > 1e-9 * (1 + s(x)):
                assert math.copysign(1, v1) == math.copysign(1, v2)


def test_square_compare_soundness():
    # arbitrary T: S > 0 and S^2 - T^2 > 0 imply S - T > 0
    rng = np.random.default_rng(99)
    for _ in range(30):
        # manifestly positive S: nonneg-coefficient polynomial times optional radicals
        s = _positive_s(rng)
        t = R.r2(RationalPolynomial([int(c) for c in rng.integers(-5, 6, 4)]))
        try:
            d2 = square_compare(s, t)
        except NoProgress:
            continue
        d1 = s - t
        for x in np.exp(rng.uniform(-3, 3, 50)):
            v1, v2 = d1(x), d2(x)
            if v2 > 1e-9 * (1 + s(x) ** 2):
                assert v1 > 0


# -- expansion ----------------------------------------------------------

def test_expand_a_minus_g():
    num, den = expand_combination(Combination.of([(1, "A"), (-1, "G")]))
    assert num.as_polynomial() == P([1, -2, 1])
    assert den == RationalPolynomial.constant(2)


def test_expand_zero():
    num, _ = expand_combination(Combination.of([(1, "A"), (-1, "A")]))
    assert num.is_zero()


def test_expand_p6_g_n1_has_unit_square_factor():
    num, den = expand_combination(Combination.of([(1, "P6"), (3, "G"), (-4, "N1")]))
    assert num.as_polynomial() == P([1, -2, 1, 0])  # t (t - 1)^2
    assert den == P([1, 0, 1])


def test_expand_unsupported():
    with pytest.raises(UnsupportedKernel):
        expand_combination(Combination.of([(1, "I")]))
    with pytest.raises(UnsupportedParam):
        expand_combination(Combination.of([(1, "power:-2")]))


def _mean_only():
    out = [s for s in registry.all_statements() if s.combination.mean_only]
    out.append(registry.Statement("x", "nonneg", Combination.of(
        [(1, "gini:2,1"), (1, "lehmer:3"), (-2, "power:1/2")]), "kernel", "extra"))
    return out


def test_expand_matches_numeric_everywhere():
    rng = np.random.default_rng(1)
    checked = 0
    for stmt in _mean_only():
        num, den = expand_combination(stmt.combination)
        ts = rng.uniform(1e-3, 10, 200)
        exact = np.array([num(t) / den(t) for t in ts])
        direct = combination_profile(stmt.combination, ts ** 2)
        scale = np.abs(exact).max() + np.array([abs(float(c)) for c, _ in stmt.combination.terms]).sum() * ts ** 2
        assert np.all(np.abs(exact - direct) <= 1e-10 * np.maximum(1, scale)), stmt.id
        assert nonneg_coeffs(den)
        checked += 1
    assert checked > 200


# -- Sturm --------------------------------------------------------------

def test_sturm_examples():
    assert sturm_count(P([1, 0, -2])).root_count == 1
    assert sturm_count(H18).root_count == 0
    assert sturm_count(H18, (-math.inf, 0)).root_count == 2
    assert sturm_count(H19, (-math.inf, 0)).root_count == 2
    assert sturm_count(H4).root_count == 0
    assert sturm_count(H5).root_count == 0


def test_sturm_errors():
    with pytest.raises(ZeroPolynomial):
        sturm_count(RationalPolynomial())
    with pytest.raises(ValueError):
        sturm_count(P([1, 0]), (0, 5))


@pytest.mark.parametrize("h,roots", [(H18, (-1.566438336, -0.6383909134)),
                                     (H19, (-5.779189781, -0.1730346360))])
def test_isolate_negative_roots(h, roots):
    brackets = isolate_roots(h, (-math.inf, 0))
    mids = sorted(float((a + b) / 2) for a, b in brackets)
    assert len(mids) == 2
    for got, want in zip(mids, sorted(roots)):
        assert abs(got - want) <= 1e-6


def _scan_count(p, lo=0.0, hi=100.0, n=200001):
    """Dense sign-change oracle (roots are simple in the generated polynomials)."""
    xs = np.linspace(lo, hi, n)[1:-1] + math.pi * 1e-6  # offset keeps probes off rational roots
    fs = np.array([float(v) for v in np.polyval([float(c) for c in reversed(p.coeffs)], xs)])
    return int(np.sum(np.sign(fs[:-1]) * np.sign(fs[1:]) < 0))


def test_sturm_against_scan_oracle():
    rng = np.random.default_rng(2025)
    done = 0
    while done < 100:
        deg = int(rng.integers(1, 7))
        # product of linear factors with well separated rational roots plus an irreducible quadratic
        roots = rng.choice(np.arange(-40, 200) / 2, size=deg, replace=False)
        p = RationalPolynomial.constant(1)
        for r in roots:
            p = p * RationalPolynomial([-Fraction(r), 1])
        if rng.random() < 0.5 and deg <= 4:
            p = p * P([1, 0, int(rng.integers(1, 5))])
        if any(r in (0, 100) for r in roots):
            continue
        assert sturm_count(p, (0, 100)).root_count == _scan_count(p), format_poly(p)
        done += 1


def test_sturm_random_coefficients_against_numpy():
    rng = np.random.default_rng(7)
    for _ in range(100):
        deg = int(rng.integers(1, 7))
        c = [int(v) for v in rng.integers(-9, 10, deg + 1)]
        if c[-1] == 0 or c[0] == 0:
            continue
        p = RationalPolynomial(c)
        if p(100) == 0:
            continue
        # numpy roots as an independent oracle, keeping only clearly real ones
        r = np.roots(list(reversed(c)))
        real = r[np.abs(r.imag) < 1e-7].real
        distinct = np.unique(np.round(real[(real > 1e-6) & (real < 100)], 5))
        if np.any(np.abs(r.imag[(np.abs(r.imag) >= 1e-7)]) < 1e-3):
            continue  # ambiguous near-real pair
        assert sturm_count(p, (0, 100)).root_count == len(distinct), c


# -- grammar ------------------------------------------------------------

def test_grammar_round_trip():
    e = parse_radical("2*t^4 + 2*t^3 + 8*t^2 + 2*t + 2 + (-t^3 - 3*t^2 - 3*t - 1)*R2")
    assert format_radical(e, strict=True) == "2*t^4 + 2*t^3 + 8*t^2 + 2*t + 2 + (-t^3 - 3*t^2 - 3*t - 1)*R2"
    assert parse_radical(format_radical(e, strict=True)) == e
    assert parse_poly("(t-1)*(t+1)") == P([1, 0, -1])
    assert parse_radical("R1*R1") == R.poly(P([2, 0, 0, 0, 2]))


@settings(max_examples=100, deadline=None)
@given(small_poly, small_poly, small_poly, small_poly)
def test_grammar_round_trip_random(a, b, c, d):
    e = R({(0, 0): a, (1, 0): b, (0, 1): c, (1, 1): d})
    assert parse_radical(format_radical(e, strict=True)) == e


@pytest.mark.parametrize("text,pos", [("2*t^", 5), ("t + + ", 5), ("3*x", 3), ("(t+1", 5)])
def test_grammar_errors(text, pos):
    with pytest.raises(GrammarError) as err:
        parse_radical(text)
    assert err.value.pos + 1 == pos or err.value.column == pos
