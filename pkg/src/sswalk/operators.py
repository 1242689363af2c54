"""
Finite-window matrices of the walk operators.

Conventions
-----------
* Sites run over ``window.lo .. window.hi``.  Two-component operators
  (Γ, C, U, Q) use site-major layout: basis vector ``(x, s)`` sits at index
  ``2*(x - lo) + s``.
* L is the left shift, (Lψ)(x) = ψ(x+1), i.e. L|x⟩ = |x-1⟩.  As a matrix it
  has ones on the superdiagonal.
* ``open`` windows drop every term that would leave the window;
  ``periodic`` windows wrap them around.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Mapping, Optional, TextIO, Union

import numpy as np

from .errors import NonBlockDiagonalError, WindowTooSmallError
from .model import CoinProfile, ShiftParams, WalkSpec
from .symbol import SymbolPoly, band_coefficients

__all__ = [
    "Window",
    "BandedMatrix",
    "TrigPoly",
    "q_plus_bands",
    "assemble_gamma",
    "assemble_coin",
    "assemble_evolution_and_supercharge",
    "assemble_q_plus",
    "assemble_piecewise",
    "assemble_toeplitz",
    "hardy_conjugate",
    "write_triplets",
]

OPEN = "open"
PERIODIC = "periodic"


@dataclass(frozen=True)
class Window:
    """Inclusive site range ``lo..hi`` with a boundary mode."""

    lo: int
    hi: int
    boundary: str = OPEN

    def __post_init__(self):
        if self.boundary not in (OPEN, PERIODIC):
            raise ValueError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        if self.hi - self.lo < 8:
            raise WindowTooSmallError(f"window [{self.lo}, {self.hi}] is narrower than 9 sites")

    @classmethod
    def centered(cls, half: int, boundary: str = OPEN) -> "Window":
        return cls(-half, half, boundary)

    @property
    def n(self) -> int:
        return self.hi - self.lo + 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    @property
    def periodic(self) -> bool:
        return self.boundary == PERIODIC

    def contains(self, lo: int, hi: int) -> bool:
        return self.lo <= lo and hi <= self.hi

    def central_mask(self) -> np.ndarray:
        """Boolean mask over sites of the central half of the window."""
        quarter = self.n / 4.0
        x = self.sites
        return (x >= self.lo + quarter) & (x <= self.hi - quarter)


@dataclass(frozen=True, eq=False)
class BandedMatrix:
    """Dense matrix tagged with its window, site bandwidth and operator kind."""

    window: Optional[Window]
    block: np.ndarray
    bandwidth: int
    kind: str

    @property
    def components(self) -> int:
        if self.window is None:
            return 1
        return self.block.shape[0] // self.window.n

    @property
    def shape(self) -> tuple[int, int]:
        return self.block.shape

    def site_band(self, tol: float = 0.0) -> int:
        """Largest site distance between coupled basis vectors."""
        rows, cols = np.nonzero(np.abs(self.block) > tol)
        if rows.size == 0:
            return 0
        c = self.components
        d = np.abs(rows // c - cols // c)
        if self.window is not None and self.window.periodic:
            d = np.minimum(d, self.window.n - d)
        return int(d.max())

    def __array__(self, dtype=None, copy=None):
        return self.block if dtype is None else self.block.astype(dtype)


class TrigPoly:
    """Trigonometric polynomial h(z) = Σ_m h_m z^m on the unit circle."""

    def __init__(self, coeffs: Union[Mapping[int, complex], "TrigPoly"]):
        if isinstance(coeffs, TrigPoly):
            coeffs = coeffs.coeffs
        self.coeffs = {int(m): complex(c) for m, c in coeffs.items() if c != 0}

    @classmethod
    def from_symbol(cls, sym: SymbolPoly) -> "TrigPoly":
        """F = P(z)/z as a Laurent polynomial."""
        return cls(sym.laurent)

    @property
    def degree(self) -> int:
        return max((abs(m) for m in self.coeffs), default=0)

    def __getitem__(self, m: int) -> complex:
        return self.coeffs.get(m, 0j)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for m, c in self.coeffs.items():
            out = out + c * z**m
        return out

    def reflect(self) -> "TrigPoly":
        """h(z̄): coefficient of z^m moves to z^{-m}."""
        return TrigPoly({-m: c for m, c in self.coeffs.items()})

    def __repr__(self):
        return f"TrigPoly({self.coeffs!r})"


def _as_trig(h) -> TrigPoly:
    if isinstance(h, SymbolPoly):
        return TrigPoly.from_symbol(h)
    if isinstance(h, (int, float, complex)):
        return TrigPoly({0: h})
    return TrigPoly(h)


def _wrapped_sites(w: Window, shift: int) -> np.ndarray:
    x = w.sites + shift
    if w.periodic:
        x = w.lo + np.mod(x - w.lo, w.n)
    return x


def q_plus_bands(spec: WalkSpec, xs) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row coefficients (sub, diag, sup) of the supercharge block at rows ``xs``.

    Row x acts as sub·ψ(x-1) + diag·ψ(x) + sup·ψ(x+1) with

    sup  =  (i/2)(1+p) e^{iθ} b(x+1)
    diag =  (i/2)|q| (a(x+1) + a(x))
    sub  = -(i/2)(1-p) e^{-iθ} conj(b(x))
    """
    xs = np.asarray(xs, dtype=int)
    a0, b0 = spec.coin.sites(xs)
    a1, b1 = spec.coin.sites(xs + 1)
    return band_coefficients(spec.shift, a0, b0, a1, b1)


def assemble_gamma(shift: ShiftParams, w: Window) -> BandedMatrix:
    """Γ = ((p, qL), (q̄L*, -p)) on the window, site-major layout."""
    n = w.n
    G = np.zeros((2 * n, 2 * n), dtype=complex)
    i = np.arange(n)
    G[2 * i, 2 * i] = shift.p
    G[2 * i + 1, 2 * i + 1] = -shift.p
    # (x,0) <- (x+1,1) with weight q; Hermitian partner (x+1,1) <- (x,0)
    for k in range(n):
        kn = k + 1
        if kn == n:
            if not w.periodic:
                continue
            kn = 0
        G[2 * k, 2 * kn + 1] = shift.q
        G[2 * kn + 1, 2 * k] = np.conj(shift.q)
    return BandedMatrix(w, G, 1, "gamma")


def assemble_coin(coin: CoinProfile, w: Window) -> BandedMatrix:
    """Block-diagonal C with ((a, conj b), (b, -a)) at every site."""
    a, b = coin.sites(w.sites)
    n = w.n
    C = np.zeros((2 * n, 2 * n), dtype=complex)
    i = np.arange(n)
    C[2 * i, 2 * i] = a
    C[2 * i + 1, 2 * i + 1] = -a
    C[2 * i + 1, 2 * i] = b
    C[2 * i, 2 * i + 1] = np.conj(b)
    return BandedMatrix(w, C, 0, "coin")


def assemble_evolution_and_supercharge(
    spec: WalkSpec, w: Window
) -> tuple[BandedMatrix, BandedMatrix]:
    """U = ΓC and Q = (U - U*)/2i."""
    G = assemble_gamma(spec.shift, w).block
    C = assemble_coin(spec.coin, w).block
    U = G @ C
    Q = (U - U.conj().T) / 2j
    return BandedMatrix(w, U, 1, "evolution"), BandedMatrix(w, Q, 1, "supercharge")


def assemble_q_plus(spec: WalkSpec, w: Window) -> BandedMatrix:
    """Scalar tridiagonal matrix of the supercharge block on the window."""
    n = w.n
    if w.periodic:
        a0, b0 = spec.coin.sites(w.sites)
        a1, b1 = spec.coin.sites(_wrapped_sites(w, 1))
        sub, diag, sup = band_coefficients(spec.shift, a0, b0, a1, b1)
    else:
        sub, diag, sup = q_plus_bands(spec, w.sites)
    M = np.zeros((n, n), dtype=complex)
    i = np.arange(n)
    M[i, i] = diag
    M[i[:-1], i[:-1] + 1] = sup[:-1]
    M[i[1:], i[1:] - 1] = sub[1:]
    if w.periodic:
        M[n - 1, 0] += sup[-1]
        M[0, n - 1] += sub[0]
    return BandedMatrix(w, M, 1, "q_plus")


def _apply_columns(M: np.ndarray, w: Window, h: TrigPoly, cols: np.ndarray, keep=None):
    """Write h(L)|x⟩ = Σ_m h_m |x - m⟩ into the columns listed by site in ``cols``."""
    for x in cols:
        for m, c in h.coeffs.items():
            y = x - m
            if not (w.lo <= y <= w.hi):
                continue
            if keep is not None and not keep(y):
                continue
            M[y - w.lo, x - w.lo] += c


def assemble_piecewise(f, g, w: Window, variant: str = "A") -> BandedMatrix:
    """A(f, g) or B(f, g) on an open window.

    Column x is g(L)|x⟩ for x >= 0 and f(L)|x⟩ for x <= -1.  Variant ``B``
    additionally projects each column onto its own half-line.

    Raises
    ------
    WindowTooSmallError
        If the window does not contain [-M-1, M+1], M the larger degree.
    """
    f, g = _as_trig(f), _as_trig(g)
    if variant not in ("A", "B"):
        raise ValueError("variant must be 'A' or 'B'")
    M_deg = max(f.degree, g.degree)
    if not w.contains(-M_deg - 1, M_deg + 1):
        raise WindowTooSmallError(
            f"window [{w.lo}, {w.hi}] must contain [{-M_deg - 1}, {M_deg + 1}]"
        )
    x = w.sites
    M = np.zeros((w.n, w.n), dtype=complex)
    if variant == "A":
        _apply_columns(M, w, g, x[x >= 0])
        _apply_columns(M, w, f, x[x <= -1])
    else:
        _apply_columns(M, w, g, x[x >= 0], keep=lambda y: y >= 0)
        _apply_columns(M, w, f, x[x <= -1], keep=lambda y: y <= -1)
    kind = "piecewise_A" if variant == "A" else "piecewise_B"
    return BandedMatrix(w, M, M_deg, kind)


def assemble_toeplitz(h, n: int) -> BandedMatrix:
    """n×n finite section of T_h: entry (j, k) is the Fourier coefficient h_{j-k}."""
    h = _as_trig(h)
    if n <= 2 * h.degree:
        raise WindowTooSmallError(f"n={n} must exceed twice the symbol degree {h.degree}")
    T = np.zeros((n, n), dtype=complex)
    for m, c in h.coeffs.items():
        T += c * np.eye(n, k=-m)
    return BandedMatrix(None, T, h.degree, "toeplitz")


def hardy_conjugate(
    mat: BandedMatrix, w: Optional[Window] = None, tol: float = 1e-12
) -> tuple[BandedMatrix, BandedMatrix]:
    """Split B(f, g) along the half-lines into its two Toeplitz blocks.

    Site x >= 0 goes to position x of the first block and site x <= -1 to
    position -x-1 of the second.  Returns (T_{g(z̄)}, T_f) finite sections.

    Raises
    ------
    NonBlockDiagonalError
        If the two half-lines are coupled by more than ``tol``.
    """
    w = w or mat.window
    if w is None or not (w.lo <= -1 and w.hi >= 0):
        raise ValueError("window must straddle the cut between -1 and 0")
    B = mat.block
    right = np.arange(0, w.hi + 1) - w.lo
    left = (-np.arange(0, -w.lo) - 1) - w.lo
    off = max(
        np.max(np.abs(B[np.ix_(right, left)]), initial=0.0),
        np.max(np.abs(B[np.ix_(left, right)]), initial=0.0),
    )
    if off > tol:
        raise NonBlockDiagonalError(f"half-lines coupled with magnitude {off:.3e}")
    T1 = B[np.ix_(right, right)].copy()
    T2 = B[np.ix_(left, left)].copy()
    return (
        BandedMatrix(None, T1, mat.bandwidth, "toeplitz"),
        BandedMatrix(None, T2, mat.bandwidth, "toeplitz"),
    )


def write_triplets(mat: BandedMatrix, fh: TextIO, tol: float = 0.0) -> int:
    """Write nonzero entries as ``row,col,re,im`` CSV lines; returns the count."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["row", "col", "re", "im"])
    rows, cols = np.nonzero(np.abs(mat.block) > tol)
    for r, c in zip(rows, cols):
        v = mat.block[r, c]
        writer.writerow([int(r), int(c), f"{v.real:.17g}", f"{v.imag:.17g}"])
    return int(rows.size)


def triplets_text(mat: BandedMatrix) -> str:
    buf = io.StringIO()
    write_triplets(mat, buf)
    return buf.getvalue()
