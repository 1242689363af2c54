"""
Index evaluation by every available route, and CSV reporting.

:func:`analyze_spec` runs the closed-form case formula and both winding
algorithms, optionally the transfer-matrix kernel count and the spectral
chirality estimate, and collects them in an :class:`IndexReport`.  Methods
that disagree are never reconciled; the report records it and
:meth:`IndexReport.raise_on_disagreement` turns it into an error.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from .errors import AmbiguousCutError, MethodDisagreementError, UnwrapError
from .model import CoinProfile, CoinSite, ShiftParams, WalkSpec, make_shift, make_site
from .operators import Window
from .spectral import DEFAULT_WINDOW, index_by_chirality
from .symbol import MINUS, PLUS, build_symbol
from .transfer import kernel_by_matching
from .winding import TOL_CIRCLE, winding_by_argument, winding_by_roots

__all__ = [
    "PLUS_SGN_P",
    "MINUS_SGN_P",
    "ZERO",
    "NOT_FREDHOLM",
    "METHODS",
    "CSV_COLUMNS",
    "formula_index",
    "IndexReport",
    "analyze_spec",
    "parse_range",
    "sweep_specs",
    "sweep",
    "write_reports",
]

PLUS_SGN_P = "plus_sgn_p"
MINUS_SGN_P = "minus_sgn_p"
ZERO = "zero"
NOT_FREDHOLM = "not_fredholm"

METHODS = ("formula", "winding", "transfer", "spectral")

CSV_COLUMNS = (
    "p", "q_re", "q_im",
    "a_minus", "b_minus_re", "b_minus_im",
    "a_plus", "b_plus_re", "b_plus_im",
    "fredholm", "wn_plus", "wn_minus",
    "witten_formula", "witten_winding", "witten_transfer", "witten_spectral",
    "case", "margin", "residual",
)

DEGENERACY_TOL = 1e-9
_MAX_SAMPLES = 1 << 18


def formula_index(
    shift: ShiftParams, limit_minus: CoinSite, limit_plus: CoinSite, tol: float = DEGENERACY_TOL
) -> tuple[bool, Optional[int], str]:
    """Closed-form Witten index from p and the coin limits.

    Returns ``(fredholm, index, case)``; ``index`` is ``None`` when the walk is
    not Fredholm, i.e. when |p| equals |a(+∞)| or |a(-∞)| within ``tol``.
    """
    p = shift.p
    am, ap = abs(limit_minus.a), abs(limit_plus.a)
    if abs(abs(p) - ap) <= tol or abs(abs(p) - am) <= tol:
        return False, None, NOT_FREDHOLM
    sgn = int(np.sign(p))
    if ap < abs(p) < am:
        return True, sgn, PLUS_SGN_P
    if am < abs(p) < ap:
        return True, -sgn, MINUS_SGN_P
    return True, 0, ZERO


@dataclass
class IndexReport:
    spec: WalkSpec
    fredholm: bool
    reason: str
    wn_plus: Optional[int]
    wn_minus: Optional[int]
    witten_formula: Optional[int]
    witten_winding: Optional[int]
    witten_transfer: Optional[int] = None
    witten_spectral: Optional[int] = None
    formula_case: str = NOT_FREDHOLM
    diagnostics: dict = field(default_factory=dict)

    @property
    def disagreements(self) -> list[str]:
        out = []
        if not self.fredholm:
            return out
        ref = self.witten_winding
        for name in ("formula", "transfer", "spectral"):
            v = getattr(self, f"witten_{name}")
            if v is not None and v != ref:
                out.append(f"{name}={v} vs winding={ref}")
        arg = self.diagnostics.get("argument_wn")
        if arg is not None and arg != (self.wn_plus, self.wn_minus):
            out.append(f"argument windings {arg} vs roots {(self.wn_plus, self.wn_minus)}")
        return out

    @property
    def agree(self) -> bool:
        return not self.disagreements

    def raise_on_disagreement(self) -> None:
        if self.disagreements:
            raise MethodDisagreementError("; ".join(self.disagreements))

    @property
    def margin(self) -> float:
        return self.diagnostics.get("margin", math.nan)

    @property
    def residual(self) -> float:
        vals = [self.diagnostics.get(k) for k in ("argument_residual", "spectral_residual")]
        vals = [v for v in vals if v is not None]
        return max(vals) if vals else math.nan

    def csv_row(self) -> list[str]:
        sh = self.spec.shift
        lm, lp = self.spec.limits
        vals = [
            sh.p, sh.q.real, sh.q.imag,
            lm.a, lm.b.real, lm.b.imag,
            lp.a, lp.b.real, lp.b.imag,
            self.fredholm, self.wn_plus, self.wn_minus,
            self.witten_formula, self.witten_winding, self.witten_transfer, self.witten_spectral,
            self.formula_case, self.margin, self.residual,
        ]
        return [_fmt(v) for v in vals]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    if math.isnan(float(v)):
        return ""
    return f"{float(v):.17g}"


def _argument_wn(sym) -> tuple[Optional[int], Optional[float]]:
    samples = 4096
    while True:
        try:
            res = winding_by_argument(sym, samples)
            return res.wn, res.residual
        except UnwrapError:
            if samples >= _MAX_SAMPLES:
                return None, None
            samples *= 8


def analyze_spec(
    spec: WalkSpec,
    methods: Iterable[str] = METHODS,
    window: Window = DEFAULT_WINDOW,
    retry_window: bool = True,
    tol_circle: float = TOL_CIRCLE,
) -> IndexReport:
    """Compute the Witten index of ``spec`` by every requested method.

    Formula and both winding algorithms always run.  ``transfer`` applies to
    piecewise-constant coins only; ``spectral`` retries once on a window of
    twice the size if the eigenvalue cutoff is ambiguous.
    """
    methods = set(methods)
    unknown = methods - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods {sorted(unknown)}")
    lm, lp = spec.limits
    diag: dict = {}
    t0 = time.perf_counter()
    f_ok, f_idx, case = formula_index(spec.shift, lm, lp)

    wins = {}
    for side in (PLUS, MINUS):
        wins[side] = winding_by_roots(build_symbol(spec, side), tol_circle)
    diag["margin"] = min(w.margin for w in wins.values())
    w_ok = all(w.fredholm for w in wins.values())
    diag["timing_formula_winding"] = time.perf_counter() - t0

    fredholm = f_ok and w_ok
    reason = ""
    if not fredholm:
        bad = [s for s, w in wins.items() if not w.fredholm]
        if not bad:
            bad = [s for s, lim in ((PLUS, lp), (MINUS, lm)) if abs(abs(spec.shift.p) - abs(lim.a)) <= DEGENERACY_TOL]
        reason = "symbol vanishes on the unit circle: " + ",".join(bad)
        if f_ok != w_ok:
            reason += " (near-degenerate)"
        return IndexReport(spec, False, reason, None, None, None, None, formula_case=NOT_FREDHOLM, diagnostics=diag)

    wn_plus, wn_minus = wins[PLUS].wn_F, wins[MINUS].wn_F
    arg = [_argument_wn(build_symbol(spec, s)) for s in (PLUS, MINUS)]
    if all(a[0] is not None for a in arg):
        diag["argument_wn"] = (arg[0][0] - 1, arg[1][0] - 1)
        diag["argument_residual"] = max(a[1] for a in arg)
    else:
        diag["argument_wn"] = None
        reason = "argument-principle sampling did not resolve the phase"

    report = IndexReport(
        spec, True, reason, wn_plus, wn_minus, f_idx, wn_plus - wn_minus,
        formula_case=case, diagnostics=diag,
    )

    if "transfer" in methods and spec.coin.piecewise_constant:
        t0 = time.perf_counter()
        kc = kernel_by_matching(spec)
        report.witten_transfer = kc.witten
        diag["dim_ker"], diag["dim_coker"] = kc.dim_ker, kc.dim_coker
        diag["timing_transfer"] = time.perf_counter() - t0

    if "spectral" in methods:
        t0 = time.perf_counter()
        try:
            est = index_by_chirality(spec, window)
        except AmbiguousCutError:
            if not retry_window:
                raise
            est = index_by_chirality(spec, Window(2 * window.lo, 2 * window.hi))
        report.witten_spectral = est.estimated_index
        diag["spectral_residual"] = est.residual
        diag["spectral_window"] = (est.window.lo, est.window.hi)
        diag["timing_spectral"] = time.perf_counter() - t0
    return report


def parse_range(text: str) -> np.ndarray:
    """Inclusive grid from ``lo:hi:step`` (or a single value)."""
    parts = [float(t) for t in text.split(":")]
    if len(parts) == 1:
        return np.array(parts)
    if len(parts) != 3:
        raise ValueError(f"expected lo:hi:step, got {text!r}")
    lo, hi, step = parts
    if step <= 0 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(n), 12)


def sweep_specs(
    p_values: Sequence[float], a_plus_values: Sequence[float], a_minus: float, b_phase: float = 0.0
) -> list[WalkSpec]:
    """Step walks on the (p, a₊) grid in row-major order, q = sqrt(1 - p²)."""
    minus = make_site(a_minus, phase=b_phase)
    out = []
    for p in p_values:
        shift = make_shift(p, math.sqrt(max(0.0, 1.0 - p * p)))
        for ap in a_plus_values:
            out.append(WalkSpec(shift, CoinProfile.step(minus, make_site(ap, phase=b_phase))))
    return out


def _analyze_for_sweep(args):
    spec, methods = args
    return analyze_spec(spec, methods)


def sweep(specs: Sequence[WalkSpec], methods: Iterable[str] = ("formula", "winding"), jobs: int = 1) -> list[IndexReport]:
    """Analyze every spec; results come back in input order."""
    methods = tuple(methods)
    work = [(s, methods) for s in specs]
    if jobs <= 1 or len(work) < 2:
        return [_analyze_for_sweep(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_analyze_for_sweep, work, chunksize=max(1, len(work) // (4 * jobs))))


def write_reports(reports: Iterable[IndexReport], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(r.csv_row())


def reports_csv(reports: Iterable[IndexReport]) -> str:
    buf = io.StringIO()
    write_reports(reports, buf)
    return buf.getvalue()
