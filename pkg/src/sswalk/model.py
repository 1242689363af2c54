"""
Parameters of a split-step quantum walk.

A walk is the pair (shift, coin).  The shift is fixed by two scalars (p, q)
with p² + |q|² = 1; the coin is a site-dependent pair (a(x), b(x)) with
a real, b complex and a² + |b|² = 1, required to have limits at ±∞.

Coin profiles are stored as an evaluation rule plus their two limits, so any
finite window can be materialized on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NormalizationError

__all__ = [
    "NORM_TOL",
    "ShiftParams",
    "CoinSite",
    "CoinProfile",
    "WalkSpec",
    "make_shift",
    "make_site",
    "eval_coin",
    "flatten",
]

#: Deviation from the unit sphere that is silently renormalized.
NORM_TOL = 1e-9

STEP = "step"
MULTISTEP = "multistep"
TANH = "tanh"
KINDS = (STEP, MULTISTEP, TANH)


_ROUNDING = 8 * np.finfo(float).eps


def _unit_scale(sq_norm: float, what: str) -> float:
    if not math.isfinite(sq_norm) or abs(sq_norm - 1.0) > NORM_TOL:
        raise NormalizationError(
            f"{what} has squared norm {sq_norm!r}; expected 1 within {NORM_TOL:g}"
        )
    if abs(sq_norm - 1.0) <= _ROUNDING:
        # already unit up to rounding; rescaling would only perturb exact inputs
        return 1.0
    return 1.0 / math.sqrt(sq_norm)


@dataclass(frozen=True)
class ShiftParams:
    """Shift scalars (p, q), renormalized onto p² + |q|² = 1 on construction.

    ``theta`` is arg(q) in (-π, π], or 0 when q = 0.
    """

    p: float
    q: complex

    def __post_init__(self):
        p = float(self.p)
        q = complex(self.q)
        s = _unit_scale(p * p + abs(q) ** 2, "shift (p, q)")
        object.__setattr__(self, "p", p * s)
        object.__setattr__(self, "q", q * s)

    @property
    def theta(self) -> float:
        if self.q == 0:
            return 0.0
        return float(np.angle(self.q))

    @property
    def abs_q(self) -> float:
        return abs(self.q)


@dataclass(frozen=True)
class CoinSite:
    """A single coin value (a, b) with a² + |b|² = 1."""

    a: float
    b: complex

    def __post_init__(self):
        a = float(self.a)
        b = complex(self.b)
        s = _unit_scale(a * a + abs(b) ** 2, "coin site (a, b)")
        object.__setattr__(self, "a", a * s)
        object.__setattr__(self, "b", b * s)

    def matrix(self) -> np.ndarray:
        """The 2×2 coin block ((a, conj b), (b, -a))."""
        return np.array(
            [[self.a, self.b.conjugate()], [self.b, -self.a]], dtype=complex
        )

    def isclose(self, other: "CoinSite", tol: float = 1e-12) -> bool:
        return abs(self.a - other.a) <= tol and abs(self.b - other.b) <= tol


def make_shift(p: float, q: complex) -> ShiftParams:
    """Validate and normalize shift scalars.

    Raises
    ------
    NormalizationError
        If p² + |q|² differs from 1 by more than ``NORM_TOL``.
    """
    return ShiftParams(p, q)


def make_site(a: float, b: complex | None = None, phase: float = 0.0) -> CoinSite:
    """Coin site from ``a`` and ``b``; if ``b`` is omitted it is e^{i·phase}·sqrt(1 - a²)."""
    if b is None:
        b = np.exp(1j * phase) * math.sqrt(max(0.0, 1.0 - a * a))
    return CoinSite(a, b)


@dataclass(frozen=True)
class CoinProfile:
    """Site-dependent coin with limits at ±∞.

    Piecewise-constant kinds (``step``, ``multistep``) hold ``breakpoints``, an
    increasing tuple of ``(x, site)``: the coin equals ``site`` from ``x`` up
    to the next breakpoint, ``limit_minus`` below the first one and
    ``limit_plus`` (the last site) from the last one on.

    The ``tanh`` kind interpolates a(x) between the limits with width
    ``width`` and keeps the phase of b fixed at ``phi``.
    """

    kind: str
    limit_minus: CoinSite
    limit_plus: CoinSite
    breakpoints: tuple[tuple[int, CoinSite], ...] = ()
    width: float = 1.0
    phi: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        bps = tuple((int(x), s) for x, s in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        if self.kind == TANH:
            if not self.width > 0:
                raise ValueError("tanh width must be positive")
            for lim in (self.limit_minus, self.limit_plus):
                expected = np.exp(1j * self.phi) * math.sqrt(max(0.0, 1.0 - lim.a**2))
                if abs(lim.b - expected) > NORM_TOL:
                    raise ValueError(
                        "tanh limits must have b = e^{i phi} sqrt(1 - a^2)"
                    )
            return
        if not bps:
            raise ValueError(f"{self.kind} profile needs at least one breakpoint")
        if self.kind == STEP and len(bps) != 1:
            raise ValueError("step profile takes exactly one breakpoint")
        xs = [x for x, _ in bps]
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if not bps[-1][1].isclose(self.limit_plus, NORM_TOL):
            raise ValueError("last breakpoint value must equal limit_plus")

    # constructors -----------------------------------------------------------

    @classmethod
    def step(cls, minus: CoinSite, plus: CoinSite, cut: int = 0) -> "CoinProfile":
        """``minus`` for x < cut, ``plus`` for x >= cut."""
        return cls(STEP, minus, plus, ((cut, plus),))

    @classmethod
    def constant(cls, site: CoinSite) -> "CoinProfile":
        return cls.step(site, site)

    @classmethod
    def multistep(
        cls, minus: CoinSite, breakpoints: Sequence[tuple[int, CoinSite]]
    ) -> "CoinProfile":
        bps = tuple(sorted(breakpoints, key=lambda t: t[0]))
        if not bps:
            raise ValueError("multistep profile needs at least one breakpoint")
        return cls(MULTISTEP, minus, bps[-1][1], bps)

    @classmethod
    def tanh(
        cls, a_minus: float, a_plus: float, width: float, phi: float = 0.0
    ) -> "CoinProfile":
        return cls(
            TANH,
            make_site(a_minus, phase=phi),
            make_site(a_plus, phase=phi),
            width=float(width),
            phi=float(phi),
        )

    # queries ----------------------------------------------------------------

    @property
    def piecewise_constant(self) -> bool:
        return self.kind != TANH

    @property
    def is_homogeneous(self) -> bool:
        return self.piecewise_constant and all(
            s.isclose(self.limit_minus) for _, s in self.breakpoints
        )

    def at(self, x: int) -> CoinSite:
        return eval_coin(self, x)

    def sites(self, xs: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (a, b) evaluated at the integer sites ``xs``."""
        xs = np.asarray(list(xs), dtype=int)
        if self.kind == TANH:
            a = self._tanh_a(xs)
            b = np.exp(1j * self.phi) * np.sqrt(np.clip(1.0 - a * a, 0.0, None))
            return a, b
        cuts = np.array([x for x, _ in self.breakpoints])
        vals = [self.limit_minus] + [s for _, s in self.breakpoints]
        idx = np.searchsorted(cuts, xs, side="right")
        a = np.array([vals[i].a for i in idx], dtype=float)
        b = np.array([vals[i].b for i in idx], dtype=complex)
        return a, b

    def _tanh_a(self, x):
        am, ap = self.limit_minus.a, self.limit_plus.a
        return 0.5 * (ap + am) + 0.5 * (ap - am) * np.tanh(np.asarray(x) / self.width)


@dataclass(frozen=True)
class WalkSpec:
    """A split-step walk: shift scalars plus coin profile."""

    shift: ShiftParams
    coin: CoinProfile = field()

    @property
    def limits(self) -> tuple[CoinSite, CoinSite]:
        """(limit_minus, limit_plus)."""
        return self.coin.limit_minus, self.coin.limit_plus


def eval_coin(profile: CoinProfile, x: int) -> CoinSite:
    """Coin value at site ``x``."""
    if profile.kind == TANH:
        a = float(profile._tanh_a(x))
        return CoinSite(a, np.exp(1j * profile.phi) * math.sqrt(max(0.0, 1.0 - a * a)))
    site = profile.limit_minus
    for bx, s in profile.breakpoints:
        if x < bx:
            break
        site = s
    return site


def flatten(profile: CoinProfile, cut: int = 0) -> CoinProfile:
    """Replace the coin by its limits: ``limit_minus`` for x <= cut - 1, ``limit_plus`` for x >= cut."""
    return CoinProfile.step(profile.limit_minus, profile.limit_plus, cut)
