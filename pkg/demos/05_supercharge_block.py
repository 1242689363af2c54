"""
The supercharge block and the full supercharge
==============================================

Q = (U - U*)/2i anticommutes with Gamma, so in a basis where Gamma is
diag(1, -1) it is off-diagonal with corner block Q+.  Unitary changes of
basis keep singular values, so those of Q should be those of Q+, each
twice.  We compare Q with the banded operator that the index computations
use, and with the same band with the sign of its diagonal flipped.

Flipping that sign maps a to -a in the symbol.  This swaps the two root
moduli of z F(z), so winding numbers and index are identical either way.
"""

import numpy as np

from sswalk import (
    CoinProfile,
    PLUS,
    WalkSpec,
    Window,
    assemble_evolution_and_supercharge,
    assemble_q_plus,
    build_symbol,
    make_shift,
    make_site,
    winding_by_roots,
)
from sswalk.symbol import SymbolPoly

rng = np.random.default_rng(0)
site = lambda: make_site(rng.uniform(-1, 1), phase=rng.uniform(-np.pi, np.pi))  # noqa: E731
p = 0.3
spec = WalkSpec(make_shift(p, np.sqrt(1 - p * p) * np.exp(0.8j)), CoinProfile.multistep(site(), [(-2, site()), (3, site())]))
w = Window(-8, 8, "periodic")

_, Q = assemble_evolution_and_supercharge(spec, w)
band = assemble_q_plus(spec, w).block
flipped = band - 2 * np.diag(np.diag(band))


def sv(m):
    return np.sort(np.linalg.svd(m, compute_uv=False))


print("max |sv(Q) - sv(band)|         ", np.abs(sv(Q.block)[::2] - sv(band)).max())
print("max |sv(Q) - sv(flipped band)| ", np.abs(sv(Q.block)[::2] - sv(flipped)).max())

sym = build_symbol(spec, PLUS)
mirror = SymbolPoly(sym.c2, -sym.c1, sym.c0)
print("root moduli  ", np.sort(np.abs(np.roots(sym.coeffs))))
print("mirrored     ", np.sort(np.abs(np.roots(mirror.coeffs))))
print("wn(F+) both ways:", winding_by_roots(sym).wn_F, winding_by_roots(mirror).wn_F)
