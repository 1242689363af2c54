"""
Boundary symbols of the supercharge block.

Far to the right (left) of the interface the supercharge block acts like
F₊(L) (F₋(L)), with

    F(z) = (i/2)·[(1+p)e^{iθ} b z − (1−p)e^{−iθ} conj(b) z̄ + 2|q| a]

for the coin limit (a, b) on that side.  On the unit circle z̄ = 1/z, so
z·F(z) is the quadratic P(z) = c2·z² + c1·z + c0, which is what we store.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import CoinSite, ShiftParams, WalkSpec

__all__ = ["SymbolPoly", "band_coefficients", "build_symbol", "symbol_from_limit", "eval_on_circle", "PLUS", "MINUS"]

PLUS = "plus"
MINUS = "minus"


@dataclass(frozen=True)
class SymbolPoly:
    """Coefficients of P(z) = z·F(z) = c2·z² + c1·z + c0."""

    c2: complex
    c1: complex
    c0: complex
    side: Optional[str] = None

    @property
    def coeffs(self) -> np.ndarray:
        """Highest power first, as for :func:`numpy.polyval`."""
        return np.array([self.c2, self.c1, self.c0], dtype=complex)

    @property
    def laurent(self) -> dict[int, complex]:
        """F as a Laurent polynomial {power: coefficient}."""
        return {1: self.c2, 0: self.c1, -1: self.c0}

    def is_zero(self, tol: float = 0.0) -> bool:
        return max(abs(self.c2), abs(self.c1), abs(self.c0)) <= tol

    def __call__(self, z):
        """P(z), the polynomial form."""
        return np.polyval(self.coeffs, z)


def band_coefficients(shift: ShiftParams, a_here, b_here, a_next, b_next):
    """(sub, diag, sup) of a supercharge-block row from the coin at x and x+1.

    Shared by the symbol and the matrix assembly so that homogeneous rows
    reproduce the symbol coefficients bit for bit.
    """
    p, th = shift.p, shift.theta
    k_sup = 0.5j * (1 + p) * np.exp(1j * th)
    k_sub = -0.5j * (1 - p) * np.exp(-1j * th)
    k_diag = 0.5j * shift.abs_q
    return k_sub * np.conj(b_here), k_diag * (a_next + a_here), k_sup * b_next


def symbol_from_limit(shift: ShiftParams, limit: CoinSite, side: Optional[str] = None) -> SymbolPoly:
    a = np.array([limit.a])
    b = np.array([limit.b])
    c0, c1, c2 = band_coefficients(shift, a, b, a, b)
    return SymbolPoly(complex(c2[0]), complex(c1[0]), complex(c0[0]), side)


def build_symbol(spec: WalkSpec, side: str) -> SymbolPoly:
    """Symbol polynomial z·F±(z) for the ``plus`` or ``minus`` coin limit."""
    if side == PLUS:
        limit = spec.coin.limit_plus
    elif side == MINUS:
        limit = spec.coin.limit_minus
    else:
        raise ValueError(f"side must be {PLUS!r} or {MINUS!r}, got {side!r}")
    return symbol_from_limit(spec.shift, limit, side)


def eval_on_circle(sym: SymbolPoly, t):
    """F(e^{it}) = P(e^{it})·e^{-it}.  Accepts scalars or arrays of angles."""
    z = np.exp(1j * np.asarray(t, dtype=float))
    return sym(z) / z
