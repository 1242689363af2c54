"""
Exact kernel dimensions of the supercharge block for piecewise-constant coins.

The kernel equation is the three-term recurrence

    sub(x)·ψ(x-1) + diag(x)·ψ(x) + sup(x)·ψ(x+1) = 0.

Outside the breakpoint region the coefficients are constant and solutions are
spanned by geometric modes z^x, z a root of the region polynomial
sup·z² + diag·z + sub.  An ℓ² solution must be built from roots with |z| < 1
on the right and |z| > 1 (including roots at infinity) on the left.  Both
decaying families are described by their two-site states, the right family is
carried across the breakpoint region by 2×2 transfer matrices, and the
dimension of the intersection with the left family is the kernel dimension.

Rows whose ``sub`` coefficient vanishes cannot be inverted; those cases are
solved as one linear system over the breakpoint region instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CircleRootError, NotPiecewiseConstantError, ZeroPolynomialError
from .model import WalkSpec
from .operators import q_plus_bands
from .winding import quadratic_roots

__all__ = ["KernelCount", "kernel_by_matching", "adjoint_bands"]

log = logging.getLogger(__name__)

Bands = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]

# below this |sub| a row is treated as non-invertible
_SUB_FLOOR = 1e-12


@dataclass(frozen=True)
class KernelCount:
    dim_ker: int
    dim_coker: int
    decay_rates: tuple[float, ...]

    @property
    def witten(self) -> int:
        return self.dim_ker - self.dim_coker

    @property
    def coburn_violation(self) -> bool:
        return min(self.dim_ker, self.dim_coker) > 0


def adjoint_bands(bands: Bands) -> Bands:
    """Row coefficients of the conjugate-transpose operator."""

    def adj(xs):
        xs = np.asarray(xs, dtype=int)
        _, _, sup_prev = bands(xs - 1)
        _, diag, _ = bands(xs)
        sub_next, _, _ = bands(xs + 1)
        return np.conj(sup_prev), np.conj(diag), np.conj(sub_next)

    return adj


def _region_roots(bands: Bands, x: int, tol: float) -> list[complex]:
    sub, diag, sup = (v[0] for v in bands(np.array([x])))
    try:
        roots = quadratic_roots(sup, diag, sub)
    except ZeroPolynomialError:
        raise CircleRootError(f"region polynomial at row {x} vanishes identically") from None
    for z in roots:
        if abs(abs(z) - 1.0) < tol:
            raise CircleRootError(f"region root {z:.6g} at row {x} lies on the unit circle")
    return roots


def _normalized(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _right_states(roots: list[complex]) -> tuple[np.ndarray, list[float]]:
    """Basis of states (ψ(xR-1), ψ(xR)) of solutions decaying at +∞."""
    inside = [z for z in roots if abs(z) < 1.0]
    rates = [abs(z) for z in inside]
    if len(inside) == 2:
        return np.eye(2, dtype=complex), rates
    if len(inside) == 1:
        return _normalized(np.array([[1.0], [inside[0]]], dtype=complex)), rates
    return np.zeros((2, 0), dtype=complex), rates


def _left_states(roots: list[complex]) -> tuple[np.ndarray, list[float]]:
    """Basis of states (ψ(xL), ψ(xL+1)) of solutions decaying at -∞.

    A mode w^x is stored through u = 1/w; roots lost to a vanishing leading
    coefficient sit at infinity, u = 0.
    """
    us = [1.0 / z for z in roots if abs(z) > 1.0]
    us += [0j] * (2 - len(roots))
    rates = [1.0 / abs(u) if u != 0 else np.inf for u in us]
    if len(us) == 2:
        return np.eye(2, dtype=complex), rates
    if len(us) == 1:
        return _normalized(np.array([[us[0]], [1.0]], dtype=complex)), rates
    return np.zeros((2, 0), dtype=complex), rates


def _intersection_dim(R: np.ndarray, L: np.ndarray, tol: float) -> int:
    if R.shape[1] == 0 or L.shape[1] == 0:
        return 0
    s = np.linalg.svd(np.hstack([R, L]), compute_uv=False)
    rank = int(np.sum(s > tol))
    return R.shape[1] + L.shape[1] - rank


def _by_transfer(bands: Bands, xL: int, xR: int, R: np.ndarray, L: np.ndarray, tol: float) -> int:
    xs = np.arange(xR - 1, xL, -1)
    sub, diag, sup = bands(xs)
    S = R
    for k in range(xs.size):
        if S.shape[1] == 0:
            break
        T = np.array([[-diag[k] / sub[k], -sup[k] / sub[k]], [1.0, 0.0]])
        S, _ = np.linalg.qr(T @ S)
    return _intersection_dim(S, L, tol)


def _by_substitution(bands: Bands, xL: int, xR: int, R: np.ndarray, L: np.ndarray, tol: float) -> int:
    m = xR - xL + 1
    r, l = R.shape[1], L.shape[1]
    A = np.zeros((m + 2, m + r + l), dtype=complex)
    xs = np.arange(xL + 1, xR)
    sub, diag, sup = bands(xs)
    for k, x in enumerate(xs):
        j = x - xL
        A[k, j - 1], A[k, j], A[k, j + 1] = sub[k], diag[k], sup[k]
    e = m - 2
    A[e, m - 2] = A[e + 1, m - 1] = 1.0
    A[e : e + 2, m : m + r] = -R
    A[e + 2, 0] = A[e + 3, 1] = 1.0
    A[e + 2 : e + 4, m + r :] = -L
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return A.shape[1] - rank


def _kernel_dim(bands: Bands, xL: int, xR: int, tol: float, method: str) -> tuple[int, list[float]]:
    R, rates_r = _right_states(_region_roots(bands, xR, tol))
    L, rates_l = _left_states(_region_roots(bands, xL, tol))
    if method == "auto":
        sub, _, _ = bands(np.arange(xL + 1, xR))
        method = "transfer" if np.all(np.abs(sub) > _SUB_FLOOR) else "substitution"
    if method == "transfer":
        dim = _by_transfer(bands, xL, xR, R, L, tol)
    elif method == "substitution":
        dim = _by_substitution(bands, xL, xR, R, L, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    return dim, rates_r + rates_l


def kernel_by_matching(spec: WalkSpec, tol: float = 1e-8, method: str = "auto") -> KernelCount:
    """Dimensions of the kernel and cokernel of the supercharge block.

    Parameters
    ----------
    spec : WalkSpec
        Walk with a piecewise-constant coin.
    tol : float
        Singular-value threshold of the matching rank test; also the minimum
        distance of region roots from the unit circle.
    method : {"auto", "transfer", "substitution"}
        ``auto`` uses transfer matrices unless a row in the breakpoint region
        has a vanishing ``sub`` coefficient.

    Raises
    ------
    NotPiecewiseConstantError
        For tanh profiles.
    CircleRootError
        If a limit symbol has a root within ``tol`` of the unit circle.
    """
    coin = spec.coin
    if not coin.piecewise_constant:
        raise NotPiecewiseConstantError(f"{coin.kind} profile has no finite breakpoint set")
    cuts = [x for x, _ in coin.breakpoints]
    xL, xR = min(cuts) - 3, max(cuts) + 2

    def bands(xs):
        return q_plus_bands(spec, xs)

    dim_ker, rates = _kernel_dim(bands, xL, xR, tol, method)
    dim_coker, _ = _kernel_dim(adjoint_bands(bands), xL, xR, tol, method)
    out = KernelCount(dim_ker, dim_coker, tuple(float(r) for r in rates))
    if out.coburn_violation:
        log.info("kernel and cokernel both nontrivial: %s (spec=%r)", out, spec)
    return out
