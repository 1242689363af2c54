"""
Witten index of one-dimensional split-step quantum walks.

The index of a walk with coin limits (a₋, b₋) at -∞ and (a₊, b₊) at +∞ is
computed three ways: the closed-form case formula in p and |a±|, the winding
numbers of the boundary symbols, and kernel counts of the supercharge block
(exactly by transfer matrices, approximately by finite-window spectra).
"""

__version__ = "0.1.0"

from .analysis import IndexReport, analyze_spec, formula_index, sweep, sweep_specs
from .errors import *  # noqa: F401,F403
from .model import CoinProfile, CoinSite, ShiftParams, WalkSpec, eval_coin, flatten, make_shift, make_site
from .operators import (
    BandedMatrix,
    TrigPoly,
    Window,
    assemble_coin,
    assemble_evolution_and_supercharge,
    assemble_gamma,
    assemble_piecewise,
    assemble_q_plus,
    assemble_toeplitz,
    hardy_conjugate,
)
from .scenario import dumps_scenario, load_scenario
from .spectral import edge_state_detector, index_by_chirality, near_kernel_svd
from .symbol import MINUS, PLUS, SymbolPoly, build_symbol, eval_on_circle
from .transfer import KernelCount, kernel_by_matching
from .winding import WindingResult, quadratic_roots, roots_closed_form, winding_by_argument, winding_by_roots
