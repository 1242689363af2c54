"""
Acceptance criteria, one test per criterion, at the stated tolerances.

Each test records a one-line verdict; ``conftest.py`` prints them at the end
of the pytest run.  Running this file as a script prints the same lines:

    python3 tests/test_acceptance.py
"""

import math
import time

import numpy as np
import pytest

from sswalk.operators import TrigPoly
from sswalk.suites import (
    SPECTRAL_WINDOW,
    run_suite,
    spectral_specs,
    toeplitz_symbol,
    windings,
    _rng,
)

SEED = 42
RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number} ({title}): {detail}"


@pytest.fixture(autouse=True)
def _always_report(request):
    """A criterion that fails before reaching ``check`` still gets a FAIL line."""
    number = int(request.node.name.split("_")[2])
    yield
    if number not in RESULTS:
        record(number, request.node.name.split("_", 3)[3].replace("_", " "), False, "setup check failed")


def timed_suite(name: str, count=None):
    t0 = time.perf_counter()
    res = run_suite(name, SEED, count)
    return res, time.perf_counter() - t0


def check(number, title, res, elapsed, limit=None):
    in_time = limit is None or elapsed < limit
    budget = f" (limit {limit:g} s)" if limit else ""
    ok = res.ok and res.total > 0 and in_time
    record(number, title, ok, f"{res.passed}/{res.total} in {elapsed:.2f} s{budget}")
    assert res.total > 0, "no cases ran"
    assert res.ok, f"first failure: {res.failure}"
    assert in_time, f"took {elapsed:.2f} s, limit {limit} s"


def test_criterion_1_formula_vs_winding():
    res, dt = timed_suite("formula_winding")
    # 6 p values x 7 x 7 limits x 2 x 2 phases, minus near-degenerate points
    assert 500 < res.total < 6 * 49 * 4
    check(1, "formula = winding on the grid", res, dt, 1.0)


def test_criterion_2_winding_methods():
    res, dt = timed_suite("winding_methods", 1000)
    check(2, "roots = argument principle, 1000 draws", res, dt, 5.0)


def test_criterion_3_root_formula():
    res, dt = timed_suite("root_formula", 500)
    check(3, "closed-form roots to 1e-9", res, dt)


def test_criterion_4_transfer():
    res, dt = timed_suite("transfer", 200)
    assert res.total == 250
    check(4, "transfer-matrix index, 200 + 50 specs", res, dt, 10.0)


def test_criterion_5_spectral():
    specs = spectral_specs(SEED, 30)
    targets = {wp - wm for wp, wm in map(windings, specs)}
    kinds = {s.coin.kind for s in specs}
    assert targets == {-1, 0, 1}
    assert kinds == {"step", "tanh"}
    assert all(s.coin.width <= 8 for s in specs if s.coin.kind == "tanh")
    assert (SPECTRAL_WINDOW.lo, SPECTRAL_WINDOW.hi) == (-150, 150)
    res, dt = timed_suite("spectral", 30)
    check(5, "chirality count on [-150, 150]", res, dt, 120.0)


def _winding_by_sampling(h: TrigPoly, n: int = 1 << 14) -> float:
    t = np.linspace(0, 2 * np.pi, n + 1)
    phase = np.unwrap(np.angle(h(np.exp(1j * t))))
    return (phase[-1] - phase[0]) / (2 * np.pi)


def test_criterion_6_toeplitz():
    # the generated symbols really have the intended winding and root margin
    rng = _rng(SEED, "toeplitz")
    for i in range(20):
        k = (-2, -1, 0, 1, 2)[i % 5]
        h = toeplitz_symbol(rng, k)
        assert round(_winding_by_sampling(h)) == k
        lo = min(h.coeffs)
        poly = [h.coeffs.get(m, 0) for m in range(max(h.coeffs), lo - 1, -1)]
        assert min(abs(abs(r) - 1) for r in np.roots(poly)) >= 0.1
    res, dt = timed_suite("toeplitz", 20)
    check(6, "Toeplitz finite-section law, n = 400", res, dt)


def test_criterion_7_edge_states():
    res, dt = timed_suite("edge_states", 30)
    nonzero = sum(wp != wm for wp, wm in map(windings, spectral_specs(SEED, 30)))
    assert res.total == nonzero
    check(7, "edge states at +-1 for nonzero index", res, dt)


def test_criterion_8_finite_rank():
    res, dt = timed_suite("finite_rank", 20)
    check(8, "finite-rank differences are exact", res, dt)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
