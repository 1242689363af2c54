import cmath
import math

import numpy as np
import pytest

from sswalk.model import CoinProfile, WalkSpec, make_shift, make_site
from sswalk.symbol import MINUS, PLUS, SymbolPoly, build_symbol, eval_on_circle

SQ3_2 = math.sqrt(3) / 2


def spec(p, q, plus, minus=None):
    minus = minus or make_site(0.3)
    return WalkSpec(make_shift(p, q), CoinProfile.step(minus, plus))


def test_reference_symbol():
    sym = build_symbol(spec(0.5, SQ3_2, make_site(0.0, 1.0)), PLUS)
    assert sym.c2 == pytest.approx(0.75j)
    assert sym.c1 == pytest.approx(0.0)
    assert sym.c0 == pytest.approx(-0.25j)


@pytest.mark.parametrize("bp", [1.0, cmath.exp(0.8j), -1j])
def test_p_equal_one(bp):
    sym = build_symbol(spec(1.0, 0.0, make_site(0.0, bp)), PLUS)
    assert (sym.c2, sym.c1, sym.c0) == pytest.approx((1j * bp, 0, 0))


@pytest.mark.parametrize("bp", [1.0, cmath.exp(0.8j)])
def test_p_equal_minus_one(bp):
    sym = build_symbol(spec(-1.0, 0.0, make_site(0.0, bp)), PLUS)
    assert (sym.c2, sym.c1, sym.c0) == pytest.approx((0, 0, -1j * bp.conjugate()))


def test_side_selection():
    s = spec(0.2, math.sqrt(0.96), make_site(0.4), make_site(-0.7))
    assert build_symbol(s, MINUS).c1 == pytest.approx(1j * math.sqrt(0.96) * -0.7)
    with pytest.raises(ValueError):
        build_symbol(s, "left")


def test_coefficients_from_definition():
    """Each coefficient against the formula written out term by term."""
    p, q = 0.3, 0.7 * cmath.exp(1.1j)
    q = q / abs(q) * math.sqrt(1 - p * p)
    site = make_site(-0.45, phase=-2.0)
    sym = build_symbol(spec(p, q, site), PLUS)
    th = cmath.phase(q)
    assert sym.c2 == pytest.approx(0.5j * (1 + p) * cmath.exp(1j * th) * site.b, abs=1e-12)
    assert sym.c1 == pytest.approx(1j * abs(q) * site.a, abs=1e-12)
    assert sym.c0 == pytest.approx(-0.5j * (1 - p) * cmath.exp(-1j * th) * site.b.conjugate(), abs=1e-12)


def test_eval_on_circle_examples():
    sym = build_symbol(spec(0.5, SQ3_2, make_site(0.0, 1.0)), PLUS)
    assert eval_on_circle(sym, 0.0) == pytest.approx(0.5j)
    sym = build_symbol(spec(0.0, 1.0, make_site(0.0, 1.0)), PLUS)
    assert eval_on_circle(sym, math.pi / 2) == pytest.approx(-1.0)


def test_eval_on_circle_constant():
    sym = SymbolPoly(0, 0, -1j)
    t = np.linspace(0, 2 * np.pi, 7)
    np.testing.assert_allclose(eval_on_circle(sym, t), -1j * np.exp(-1j * t))


def test_eval_matches_laurent_form():
    sym = build_symbol(spec(-0.4, math.sqrt(0.84) * 1j, make_site(0.25, phase=1.0)), PLUS)
    t = np.linspace(0, 2 * np.pi, 33)
    z = np.exp(1j * t)
    ref = sum(c * z ** k for k, c in sym.laurent.items())
    np.testing.assert_allclose(eval_on_circle(sym, t), ref, atol=1e-14)
