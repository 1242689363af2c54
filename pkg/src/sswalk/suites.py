"""
Seeded cross-method verification suites.

Each suite draws (or enumerates) test cases, checks one agreement property
and returns a :class:`SuiteResult`.  Output is a pure function of the seed
and the case counts.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .analysis import formula_index
from .model import CoinProfile, CoinSite, ShiftParams, WalkSpec, make_shift, make_site
from .operators import TrigPoly, Window, assemble_piecewise, assemble_q_plus, assemble_toeplitz
from .scenario import spec_to_dict
from .spectral import edge_state_detector, index_by_chirality, near_kernel_svd
from .symbol import MINUS, PLUS, build_symbol, symbol_from_limit
from .transfer import kernel_by_matching
from .winding import (
    limit_roots,
    roots_closed_form,
    winding_by_argument,
    winding_by_roots,
    winding_table_case,
)

__all__ = ["SuiteResult", "SUITES", "DEFAULT_COUNTS", "QUICK_COUNTS", "run_suite", "run_all"]

GRID_P = (-0.9, -0.5, -0.2, 0.0, 0.3, 0.8)
GRID_A = (-0.95, -0.6, -0.3, 0.0, 0.4, 0.7, 0.9)
GRID_PHASES = (0.0, math.pi / 3)

# spectral/edge draws keep every limit root at |log|z|| >= this, so interface
# modes decay to ~e^{-30} across 150 sites
SPECTRAL_LOG_MARGIN = 0.2
SPECTRAL_WINDOW = Window(-150, 150)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failure: Optional[dict] = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def fail(self, case: dict) -> None:
        self.total += 1
        if self.failure is None:
            self.failure = case

    def success(self) -> None:
        self.total += 1
        self.passed += 1

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        s = f"[{tag}] {self.name}: {self.passed}/{self.total}"
        if self.total == 0:
            s += " (vacuous: no cases run)"
        return s


# random draws ----------------------------------------------------------------

def random_shift(rng, p_max: float = 1.0) -> ShiftParams:
    p = rng.uniform(-p_max, p_max)
    return make_shift(p, math.sqrt(1 - p * p) * np.exp(1j * rng.uniform(-np.pi, np.pi)))


def random_site(rng, a_max: float = 1.0, phase: Optional[float] = None) -> CoinSite:
    a = rng.uniform(-a_max, a_max)
    if phase is None:
        phase = rng.uniform(-np.pi, np.pi)
    return make_site(a, phase=phase)


def root_margin(shift: ShiftParams, site: CoinSite) -> float:
    return winding_by_roots(symbol_from_limit(shift, site)).margin


def log_margin(shift: ShiftParams, site: CoinSite) -> float:
    roots = roots_closed_form(symbol_from_limit(shift, site))
    return min((abs(math.log(abs(z))) if z != 0 else math.inf for z in roots), default=math.inf)


def windings(spec: WalkSpec) -> tuple[int, int]:
    return (
        winding_by_roots(build_symbol(spec, PLUS)).wn_F,
        winding_by_roots(build_symbol(spec, MINUS)).wn_F,
    )


def _rng(seed: int, name: str):
    return np.random.default_rng([seed, sum(map(ord, name))])


def _case(spec: WalkSpec, **extra) -> dict:
    return {"scenario": spec_to_dict(spec), **extra}


# suites -----------------------------------------------------------------------

def suite_formula_winding(seed: int, count: Optional[int] = None) -> SuiteResult:
    """Case formula vs root-count winding on the fixed grid (``count`` caps the grid)."""
    res = SuiteResult("formula_winding")
    n = 0
    for p in GRID_P:
        shift = make_shift(p, math.sqrt(1 - p * p))
        for am in GRID_A:
            for ap in GRID_A:
                if min(abs(abs(p) - abs(am)), abs(abs(p) - abs(ap))) < 0.02:
                    continue
                for phm in GRID_PHASES:
                    for php in GRID_PHASES:
                        if count is not None and n >= count:
                            return res
                        n += 1
                        spec = WalkSpec(shift, CoinProfile.step(make_site(am, phase=phm), make_site(ap, phase=php)))
                        ok, idx, _ = formula_index(shift, *spec.limits)
                        wp, wm = windings(spec)
                        if ok and wp is not None and wm is not None and wp - wm == idx:
                            res.success()
                        else:
                            res.fail(_case(spec, formula=idx, winding=(wp, wm)))
    return res


def suite_winding_methods(seed: int, count: int = 1000) -> SuiteResult:
    """Roots vs argument principle (4096 samples) vs case table on random limits."""
    res = SuiteResult("winding_methods")
    rng = _rng(seed, res.name)
    while res.total < count:
        shift, site = random_shift(rng), random_site(rng)
        if abs(abs(shift.p) - abs(site.a)) < 0.02:
            continue
        sym = symbol_from_limit(shift, site)
        by_roots = winding_by_roots(sym)
        arg = winding_by_argument(sym, 4096)
        table = winding_table_case(shift, site)
        if by_roots.fredholm and by_roots.wn_zF == arg.wn == table and arg.residual < 1e-4:
            res.success()
        else:
            res.fail({"p": shift.p, "q": [shift.q.real, shift.q.imag], "a": site.a,
                      "b": [site.b.real, site.b.imag], "roots": by_roots.wn_zF,
                      "argument": arg.wn_raw, "table": table})
    return res


def suite_root_formula(seed: int, count: int = 500) -> SuiteResult:
    """Stable quadratic roots vs the closed (p, q, a, b) root expressions, rel. err 1e-9."""
    res = SuiteResult("root_formula")
    rng = _rng(seed, res.name)
    for _ in range(count):
        shift, site = random_shift(rng, 0.99), random_site(rng, 0.99)
        got = roots_closed_form(symbol_from_limit(shift, site))
        ref = limit_roots(shift, site)
        errs = [
            max(abs(got[0] - ref[i]) / abs(ref[i]), abs(got[1] - ref[1 - i]) / abs(ref[1 - i]))
            for i in (0, 1)
        ]
        if len(got) == 2 and min(errs) <= 1e-9:
            res.success()
        else:
            res.fail({"p": shift.p, "a": site.a, "closed_form": [str(z) for z in got],
                      "reference": [str(z) for z in ref]})
    return res


def _fredholm_limits(rng, shift, margin=0.02):
    while True:
        site = random_site(rng)
        if root_margin(shift, site) >= margin:
            return site


def suite_transfer(seed: int, count: int = 200, multi: Optional[int] = None) -> SuiteResult:
    """Transfer-matrix index vs wn(F+) - wn(F-); ``count`` single-breakpoint + ``multi`` multi-breakpoint specs."""
    if multi is None:
        multi = count // 4
    res = SuiteResult("transfer")
    rng = _rng(seed, res.name)
    specs = []
    for _ in range(count):
        shift = random_shift(rng)
        lm, lp = _fredholm_limits(rng, shift), _fredholm_limits(rng, shift)
        specs.append(WalkSpec(shift, CoinProfile.step(lm, lp, int(rng.integers(-5, 6)))))
    for _ in range(multi):
        shift = random_shift(rng)
        lm = _fredholm_limits(rng, shift)
        k = int(rng.integers(1, 4))
        xs = np.sort(rng.choice(np.arange(-6, 7), size=k, replace=False))
        sites = [random_site(rng) for _ in range(k - 1)] + [_fredholm_limits(rng, shift)]
        specs.append(WalkSpec(shift, CoinProfile.multistep(lm, list(zip(xs.tolist(), sites)))))
    both = 0
    for spec in specs:
        wp, wm = windings(spec)
        kc = kernel_by_matching(spec)
        if kc.witten == wp - wm:
            res.success()
        else:
            res.fail(_case(spec, transfer=[kc.dim_ker, kc.dim_coker], winding=[wp, wm]))
        both += kc.coburn_violation
    if both:
        res.notes.append(f"{both} specs have kernel and cokernel both nontrivial")
    return res


def spectral_specs(seed: int, count: int = 30) -> list[WalkSpec]:
    """Step and tanh walks cycling through index -1, 0, +1 with wide root margins."""
    rng = _rng(seed, "spectral")
    out = []
    for i in range(count):
        target = (-1, 0, 1)[i % 3]
        tanh = (i // 3) % 2 == 1
        while True:
            shift = random_shift(rng, 0.95)
            am, ap = rng.uniform(-0.95, 0.95, size=2)
            if tanh:
                phi = rng.uniform(-np.pi, np.pi)
                coin = CoinProfile.tanh(am, ap, rng.uniform(1.0, 8.0), phi)
            else:
                coin = CoinProfile.step(make_site(am, phase=rng.uniform(-np.pi, np.pi)),
                                        make_site(ap, phase=rng.uniform(-np.pi, np.pi)))
            ok, idx, _ = formula_index(shift, coin.limit_minus, coin.limit_plus)
            if not ok or idx != target:
                continue
            if min(log_margin(shift, coin.limit_minus), log_margin(shift, coin.limit_plus)) < SPECTRAL_LOG_MARGIN:
                continue
            out.append(WalkSpec(shift, coin))
            break
    return out


def suite_spectral(seed: int, count: int = 30) -> SuiteResult:
    """Chirality zero-mode count on [-150, 150] vs wn(F+) - wn(F-), residual < 0.05."""
    res = SuiteResult("spectral")
    for spec in spectral_specs(seed, count):
        wp, wm = windings(spec)
        est = index_by_chirality(spec, SPECTRAL_WINDOW)
        if est.estimated_index == wp - wm and est.residual < 0.05:
            res.success()
        else:
            res.fail(_case(spec, spectral=est.estimated_index, residual=est.residual, winding=[wp, wm]))
    return res


def suite_edge_states(seed: int, count: int = 30) -> SuiteResult:
    """Every spectral-suite walk with nonzero index has a localized U-eigenvalue at ±1."""
    res = SuiteResult("edge_states")
    for spec in spectral_specs(seed, count):
        wp, wm = windings(spec)
        if wp == wm:
            continue
        modes = edge_state_detector(spec, SPECTRAL_WINDOW, 1e-6)
        if any(loc > 0.9 for _, loc in modes):
            res.success()
        else:
            res.fail(_case(spec, modes=[[str(l), w] for l, w in modes]))
    return res


def toeplitz_symbol(rng, k: int) -> TrigPoly:
    """h(z) = c·z^{-s}(z - r1)(z - r2) with winding ``k`` and every | |r| - 1 | >= 0.1."""
    options = [(n_in, n_in - k) for n_in in range(3) if 0 <= n_in - k <= 2]
    n_in, s = options[int(rng.integers(len(options)))]
    roots = []
    for j in range(2):
        mod = rng.uniform(0.2, 0.9) if j < n_in else rng.uniform(1.1, 2.5)
        roots.append(mod * np.exp(1j * rng.uniform(-np.pi, np.pi)))
    c = np.exp(1j * rng.uniform(-np.pi, np.pi)) * rng.uniform(0.5, 2.0)
    poly = c * np.poly(roots)  # highest power first
    return TrigPoly({2 - s: poly[0], 1 - s: poly[1], -s: poly[2]})


def suite_toeplitz(seed: int, count: int = 20) -> SuiteResult:
    """n=400 sections: exactly |k| singular values < 1e-6, gap ratio >= 1e3."""
    res = SuiteResult("toeplitz")
    rng = _rng(seed, res.name)
    for i in range(count):
        k = (-2, -1, 0, 1, 2)[i % 5]
        h = toeplitz_symbol(rng, k)
        sv = near_kernel_svd(assemble_toeplitz(h, 400), abs(k) + 1)
        small = sum(v < 1e-6 for v in sv)
        gap = math.inf if k == 0 else (sv[abs(k)] / sv[abs(k) - 1] if sv[abs(k) - 1] > 0 else math.inf)
        if small == abs(k) and gap >= 1e3:
            res.success()
        else:
            res.fail({"winding": k, "coeffs": {m: [c.real, c.imag] for m, c in h.coeffs.items()},
                      "smallest": sv})
    return res


def _random_trig(rng, M: int) -> TrigPoly:
    return TrigPoly({m: complex(*rng.normal(size=2)) for m in range(-M, M + 1)})


def suite_finite_rank(seed: int, count: int = 20) -> SuiteResult:
    """A(f,g) - B(f,g) vanishes on columns |x| >= M+1; Q+ - A(F-,F+) lives in column -1."""
    res = SuiteResult("finite_rank")
    rng = _rng(seed, res.name)
    for _ in range(count):
        M = int(rng.integers(1, 4))
        f, g = _random_trig(rng, M), _random_trig(rng, M)
        w = Window(-(M + 6), M + 6)
        D = assemble_piecewise(f, g, w, "A").block - assemble_piecewise(f, g, w, "B").block
        far = np.abs(w.sites) >= M + 1
        if np.all(D[:, far] == 0):
            res.success()
        else:
            res.fail({"M": M, "f": str(f), "g": str(g)})
    for _ in range(count):
        shift = random_shift(rng)
        spec = WalkSpec(shift, CoinProfile.step(random_site(rng), random_site(rng), 0))
        w = Window(-12, 12)
        Qp = assemble_q_plus(spec, w).block
        A = assemble_piecewise(build_symbol(spec, MINUS), build_symbol(spec, PLUS), w, "A").block
        D = Qp - A
        other = w.sites != -1
        if np.all(D[:, other] == 0):
            res.success()
        else:
            res.fail(_case(spec, max_off=float(np.abs(D[:, other]).max())))
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "formula_winding": suite_formula_winding,
    "winding_methods": suite_winding_methods,
    "root_formula": suite_root_formula,
    "transfer": suite_transfer,
    "spectral": suite_spectral,
    "toeplitz": suite_toeplitz,
    "edge_states": suite_edge_states,
    "finite_rank": suite_finite_rank,
}

DEFAULT_COUNTS: dict[str, Optional[int]] = {
    "formula_winding": None,
    "winding_methods": 1000,
    "root_formula": 500,
    "transfer": 200,
    "spectral": 30,
    "toeplitz": 20,
    "edge_states": 30,
    "finite_rank": 20,
}

QUICK_COUNTS: dict[str, Optional[int]] = {
    "formula_winding": None,
    "winding_methods": 100,
    "root_formula": 50,
    "transfer": 20,
    "spectral": 6,
    "toeplitz": 10,
    "edge_states": 6,
    "finite_rank": 5,
}


def run_suite(name: str, seed: int, count: Optional[int] = None) -> SuiteResult:
    fn = SUITES[name]
    if count is None and name != "formula_winding":
        count = DEFAULT_COUNTS[name]
    res = fn(seed, count)
    if res.total == 0:
        warnings.warn(f"suite {name} ran no cases", stacklevel=2)
    return res


def run_all(seed: int, counts: Optional[dict] = None) -> list[SuiteResult]:
    counts = {**DEFAULT_COUNTS, **(counts or {})}
    return [run_suite(name, seed, counts[name]) for name in SUITES]
