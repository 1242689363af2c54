"""
Numerical spectral diagnostics on finite windows.

* :func:`index_by_chirality` estimates the Witten index as the total
  chirality ⟨ψ, Γψ⟩ of zero modes of the full supercharge Q that live in the
  middle of the window.  Open truncation creates spurious zero modes at the
  window ends; they are removed by localization, not by modelling them.
* :func:`near_kernel_svd` returns the smallest singular values of any
  finite section.
* :func:`edge_state_detector` lists eigenvalues of U = ΓC at ±1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousCutError
from .model import WalkSpec
from .operators import BandedMatrix, Window, assemble_evolution_and_supercharge, assemble_gamma

__all__ = [
    "DEFAULT_WINDOW",
    "SpectralEstimate",
    "Mode",
    "index_by_chirality",
    "near_kernel_svd",
    "edge_state_detector",
]

DEFAULT_WINDOW = Window(-150, 150)
MIN_SITES = 200


@dataclass(frozen=True)
class Mode:
    value: float
    weight: float
    chirality: float


@dataclass(frozen=True)
class SpectralEstimate:
    near_zero_values: tuple[float, ...]
    modes: tuple[Mode, ...]
    estimated_index: int
    residual: float
    window: Window


def _check_interfaces(spec: WalkSpec, w: Window) -> None:
    third = w.n / 3.0
    lo, hi = w.lo + third, w.hi - third
    if spec.coin.piecewise_constant:
        xs = [x for x, _ in spec.coin.breakpoints]
        if spec.coin.is_homogeneous:
            return
    else:
        xs = [0]
    if min(xs) < lo or max(xs) > hi:
        raise ValueError(
            f"coin interfaces {xs} must lie in the central third [{lo:.1f}, {hi:.1f}] of the window"
        )


def index_by_chirality(
    spec: WalkSpec,
    w: Window = DEFAULT_WINDOW,
    eps_cut: float = 1e-6,
    loc_threshold: float = 0.9,
) -> SpectralEstimate:
    """Witten index from the chirality of centrally localized zero modes of Q.

    The near-zero eigenspace of Q (|λ| < eps_cut) is rotated to diagonalize
    the central-half-window weight, so that exactly degenerate interface and
    truncation modes are separated before the chirality is summed.

    Raises
    ------
    AmbiguousCutError
        If an eigenvalue of Q has modulus within a factor 2 of ``eps_cut``.
    """
    if w.periodic:
        raise ValueError("index_by_chirality needs an open window")
    if w.n < MIN_SITES:
        raise ValueError(f"window has {w.n} sites; need at least {MIN_SITES}")
    _check_interfaces(spec, w)

    _, Q = assemble_evolution_and_supercharge(spec, w)
    G = assemble_gamma(spec.shift, w).block
    evals, evecs = np.linalg.eigh(Q.block)
    mag = np.abs(evals)
    close = (mag >= eps_cut / 2) & (mag <= 2 * eps_cut)
    if np.any(close):
        raise AmbiguousCutError(
            f"eigenvalue {mag[close].min():.3e} too close to cutoff {eps_cut:.1e}"
        )
    near_zero = tuple(float(v) for v in np.sort(mag)[:8])

    V = evecs[:, mag < eps_cut]
    modes: tuple[Mode, ...] = ()
    total = 0.0
    if V.shape[1]:
        central = np.repeat(w.central_mask(), 2)
        W = V[central].conj().T @ V[central]
        weights, rot = np.linalg.eigh(W)
        Vc = V @ rot[:, weights > loc_threshold]
        if Vc.shape[1]:
            chi, rot2 = np.linalg.eigh(Vc.conj().T @ G @ Vc)
            Vc = Vc @ rot2
            total = float(np.sum(chi))
            modes = tuple(
                Mode(
                    float(np.real(v.conj() @ Q.block @ v)),
                    float(np.sum(np.abs(v[central]) ** 2)),
                    float(c),
                )
                for v, c in zip(Vc.T, chi)
            )
    est = int(round(total))
    return SpectralEstimate(near_zero, modes, est, abs(total - est), w)


def near_kernel_svd(mat, k: int) -> list[float]:
    """The ``k`` smallest singular values, ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    block = mat.block if isinstance(mat, BandedMatrix) else np.asarray(mat)
    s = np.linalg.svd(block, compute_uv=False)
    return [float(v) for v in np.sort(s)[:k]]


def edge_state_detector(
    spec: WalkSpec, w: Window = DEFAULT_WINDOW, tol_eig: float = 1e-6
) -> list[tuple[complex, float]]:
    """Eigenvalues of U within ``tol_eig`` of +1 or -1, with central weight.

    An empty list is a valid answer.
    """
    if w.periodic:
        raise ValueError("edge_state_detector needs an open window")
    U, _ = assemble_evolution_and_supercharge(spec, w)
    evals, evecs = np.linalg.eig(U.block)
    central = np.repeat(w.central_mask(), 2)
    out = []
    for lam, v in zip(evals, evecs.T):
        if min(abs(lam - 1), abs(lam + 1)) < tol_eig:
            v = v / np.linalg.norm(v)
            out.append((complex(lam), float(np.sum(np.abs(v[central]) ** 2))))
    return out
