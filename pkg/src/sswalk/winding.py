"""
Winding numbers of the boundary symbols.

Three independent routes to wn(z·F):

* :func:`winding_by_roots` counts roots of the quadratic z·F inside the open
  unit disc (argument principle for a polynomial).  This is the authoritative
  route.
* :func:`winding_by_argument` sums unwrapped phase increments of z·F along
  the sampled circle.
* :func:`winding_table_case` reads the answer off the sign pattern of p and
  |a| directly.

wn(F) is always wn(z·F) - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import CircleZeroError, DegenerateError, UnwrapError, ZeroPolynomialError
from .model import CoinSite, ShiftParams
from .symbol import SymbolPoly

__all__ = [
    "WindingResult",
    "ArgumentWinding",
    "quadratic_roots",
    "roots_closed_form",
    "limit_roots",
    "winding_by_roots",
    "winding_by_argument",
    "winding_table_case",
]

TOL_CIRCLE = 1e-9


@dataclass(frozen=True)
class WindingResult:
    """Outcome of root counting.

    ``wn_F`` and ``wn_zF`` are ``None`` when the symbol is not Fredholm.
    """

    wn_F: Optional[int]
    wn_zF: Optional[int]
    fredholm: bool
    root_moduli: tuple[float, ...]
    margin: float


class ArgumentWinding(NamedTuple):
    wn_raw: float
    wn: int

    @property
    def residual(self) -> float:
        return abs(self.wn_raw - self.wn)


def quadratic_roots(c2: complex, c1: complex, c0: complex) -> list[complex]:
    """Roots of c2·z² + c1·z + c0, larger-magnitude root first.

    The small root is recovered from the product c0/c2 so that it does not
    suffer cancellation when |c1|² >> |c0·c2|.
    """
    if c2 == 0 and c1 == 0 and c0 == 0:
        raise ZeroPolynomialError("polynomial is identically zero")
    if c2 == 0:
        if c1 == 0:
            return []
        return [-c0 / c1]
    disc = np.sqrt(complex(c1) * c1 - 4 * complex(c2) * c0)
    # pick the sign that adds magnitudes
    if (np.conj(c1) * disc).real < 0:
        disc = -disc
    big = -0.5 * (c1 + disc)
    if big == 0:
        return [0j, 0j]
    return [complex(big / c2), complex(c0 / big)]


def roots_closed_form(sym: SymbolPoly) -> list[complex]:
    """All finite roots of z·F(z).

    Two roots when c2 != 0, one when only c2 vanishes, none for a nonzero
    constant.

    Raises
    ------
    ZeroPolynomialError
        If all three coefficients vanish (this happens only at |p| = |a| = 1).
    """
    return quadratic_roots(sym.c2, sym.c1, sym.c0)


def limit_roots(shift: ShiftParams, limit: CoinSite) -> tuple[complex, complex]:
    """Root pair written directly in terms of (p, q, a, b).

    z₁ = |q|(1 - a) / ((1 + p) e^{iθ} b),  z₂ = -|q|(1 + a) / ((1 + p) e^{iθ} b).
    Valid for |p| != 1 and |a| != 1.
    """
    den = (1 + shift.p) * np.exp(1j * shift.theta) * limit.b
    z1 = shift.abs_q * (1 - limit.a) / den
    z2 = -shift.abs_q * (1 + limit.a) / den
    return complex(z1), complex(z2)


def winding_by_roots(sym: SymbolPoly, tol_circle: float = TOL_CIRCLE) -> WindingResult:
    """Winding of z·F as the number of roots in the open unit disc.

    A root whose modulus lies in [1 - tol_circle, 1 + tol_circle] makes the
    symbol non-Fredholm, as does an identically zero polynomial.
    """
    if tol_circle <= 0:
        raise ValueError("tol_circle must be positive")
    try:
        roots = roots_closed_form(sym)
    except ZeroPolynomialError:
        return WindingResult(None, None, False, (), 0.0)
    moduli = tuple(abs(r) for r in roots)
    margin = min((abs(m - 1.0) for m in moduli), default=math.inf)
    if margin <= tol_circle:
        return WindingResult(None, None, False, moduli, margin)
    wn_zf = sum(m < 1.0 for m in moduli)
    return WindingResult(wn_zf - 1, wn_zf, True, moduli, margin)


def winding_by_argument(sym: SymbolPoly, samples: int = 4096) -> ArgumentWinding:
    """Winding of z·F from the total phase change of P(e^{it}) over the circle.

    Raises
    ------
    CircleZeroError
        If |P| < 1e-12 at a sample.
    UnwrapError
        If some increment between consecutive samples exceeds π/2.
    """
    if samples < 16:
        raise ValueError("need at least 16 samples")
    t = 2 * np.pi * np.arange(samples) / samples
    vals = sym(np.exp(1j * t))
    if np.min(np.abs(vals)) < 1e-12:
        raise CircleZeroError("symbol vanishes on the sampled circle")
    steps = np.angle(np.roll(vals, -1) / vals)
    worst = float(np.max(np.abs(steps)))
    if worst > np.pi / 2:
        raise UnwrapError(
            f"phase step {worst:.3f} rad exceeds pi/2; increase samples above {samples}"
        )
    wn_raw = float(np.sum(steps) / (2 * np.pi))
    return ArgumentWinding(wn_raw, int(round(wn_raw)))


def winding_table_case(shift: ShiftParams, limit: CoinSite) -> int:
    """wn(z·F) from the case table: 2 if |a| < p, 1 if |p| < |a|, 0 if |a| < -p."""
    p, a = shift.p, abs(limit.a)
    if abs(abs(p) - a) <= 1e-12:
        raise DegenerateError(f"|p| = |a| = {a:.6g}: symbol vanishes on the circle")
    if a < p:
        return 2
    if abs(p) < a:
        return 1
    return 0
