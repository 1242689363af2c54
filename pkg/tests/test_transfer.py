import math

import numpy as np
import pytest

from sswalk.errors import CircleRootError, NotPiecewiseConstantError
from sswalk.model import CoinProfile, WalkSpec, make_shift, make_site
from sswalk.operators import Window, assemble_q_plus
from sswalk.symbol import MINUS, PLUS, build_symbol
from sswalk.transfer import kernel_by_matching
from sswalk.winding import winding_by_roots

SQ3_2 = math.sqrt(3) / 2


def windings(spec):
    return winding_by_roots(build_symbol(spec, PLUS)).wn_F - winding_by_roots(build_symbol(spec, MINUS)).wn_F


def dense_kernel_counts(spec, half=120, tol=1e-8):
    """Oracle: near-zero singular values of a large finite section with central singular vectors."""
    w = Window(-half, half)
    M = assemble_q_plus(spec, w).block
    u, s, vh = np.linalg.svd(M)
    central = np.abs(w.sites) < half // 2
    ker = sum(1 for k in np.nonzero(s < tol)[0] if np.sum(np.abs(vh[k, central]) ** 2) > 0.9)
    coker = sum(1 for k in np.nonzero(s < tol)[0] if np.sum(np.abs(u[central, k]) ** 2) > 0.9)
    return ker, coker


def test_homogeneous_is_zero(homogeneous_spec):
    kc = kernel_by_matching(homogeneous_spec)
    assert (kc.dim_ker, kc.dim_coker, kc.witten) == (0, 0, 0)


def test_plus_one(plus_one_spec):
    kc = kernel_by_matching(plus_one_spec)
    assert kc.witten == 1
    assert (kc.dim_ker, kc.dim_coker) == dense_kernel_counts(plus_one_spec)


def test_minus_one(minus_one_spec):
    kc = kernel_by_matching(minus_one_spec)
    assert kc.witten == -1
    assert (kc.dim_ker, kc.dim_coker) == dense_kernel_counts(minus_one_spec)


@pytest.mark.parametrize("seed", range(6))
def test_split_matches_dense_oracle(seed):
    rng = np.random.default_rng(seed)
    while True:
        p = rng.uniform(-0.95, 0.95)
        am, ap = rng.uniform(-0.95, 0.95, 2)
        if min(abs(abs(p) - abs(am)), abs(abs(p) - abs(ap))) > 0.25:
            break
    spec = WalkSpec(
        make_shift(p, math.sqrt(1 - p * p) * np.exp(1j * rng.uniform(-3, 3))),
        CoinProfile.step(make_site(am, phase=rng.uniform(-3, 3)), make_site(ap, phase=rng.uniform(-3, 3)), 2),
    )
    kc = kernel_by_matching(spec)
    assert (kc.dim_ker, kc.dim_coker) == dense_kernel_counts(spec)
    assert kc.witten == windings(spec)


def test_transfer_and_substitution_agree():
    rng = np.random.default_rng(3)
    for _ in range(40):
        p = rng.uniform(-0.9, 0.9)
        shift = make_shift(p, math.sqrt(1 - p * p))
        sites = [make_site(rng.uniform(-0.99, 0.99), phase=rng.uniform(-3, 3)) for _ in range(3)]
        if min(abs(abs(p) - abs(s.a)) for s in (sites[0], sites[2])) < 0.05:
            continue
        spec = WalkSpec(shift, CoinProfile.multistep(sites[0], [(-1, sites[1]), (2, sites[2])]))
        a = kernel_by_matching(spec, method="transfer")
        b = kernel_by_matching(spec, method="substitution")
        assert (a.dim_ker, a.dim_coker) == (b.dim_ker, b.dim_coker)


@pytest.mark.parametrize("cut", [-4, 0, 7])
def test_breakpoint_position_does_not_matter(cut):
    spec = WalkSpec(make_shift(0.5, SQ3_2), CoinProfile.step(make_site(0.9), make_site(0.0), cut))
    assert kernel_by_matching(spec).witten == 1


def test_degenerate_rows_use_substitution():
    # |p| = 1: the sub coefficient vanishes everywhere
    spec = WalkSpec(make_shift(1.0, 0.0), CoinProfile.step(make_site(0.3), make_site(0.0, 1.0)))
    kc = kernel_by_matching(spec)
    assert kc.witten == windings(spec)
    # b = 0 inside the breakpoint region (|a| = 1 at a middle site)
    spec = WalkSpec(
        make_shift(0.5, SQ3_2),
        CoinProfile.multistep(make_site(0.9), [(-1, make_site(1.0, 0.0)), (1, make_site(0.0))]),
    )
    assert kernel_by_matching(spec).witten == windings(spec) == 1


def test_method_validation(plus_one_spec):
    with pytest.raises(ValueError):
        kernel_by_matching(plus_one_spec, method="bogus")


def test_tanh_rejected():
    spec = WalkSpec(make_shift(0.5, SQ3_2), CoinProfile.tanh(0.9, 0.0, 3.0))
    with pytest.raises(NotPiecewiseConstantError):
        kernel_by_matching(spec)


def test_circle_root_rejected():
    spec = WalkSpec(make_shift(0.5, SQ3_2), CoinProfile.step(make_site(0.9), make_site(0.5)))
    with pytest.raises(CircleRootError):
        kernel_by_matching(spec)


def test_decay_rates_are_mode_moduli(plus_one_spec):
    # right region: both roots ±1/√3 decay; left region: the root ≈ -2.517 grows toward +∞
    kc = kernel_by_matching(plus_one_spec)
    assert sorted(kc.decay_rates) == pytest.approx([1 / math.sqrt(3)] * 2 + [2.5166114784], rel=1e-9)
