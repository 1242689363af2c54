"""
Index in the singular values of finite sections
===============================================

The Toeplitz operator T_h with a nonvanishing symbol h has index -wn(h).
Its n x n truncations show this as |wn(h)| singular values that shrink
geometrically with n while the rest stay bounded away from zero.
"""

import numpy as np

from sswalk import TrigPoly, assemble_toeplitz, near_kernel_svd

symbols = {
    "z + 2 (wn 0)": TrigPoly({1: 1, 0: 2}),
    "z - 0.5 (wn 1)": TrigPoly({1: 1, 0: -0.5}),
    "(z - 0.3)(z + 0.6) (wn 2)": TrigPoly(dict(zip((2, 1, 0), np.poly([0.3, -0.6])))),
    "1/z - 0.4 (wn -1)": TrigPoly({-1: 1, 0: -0.4}),
}

for name, h in symbols.items():
    print(name)
    for n in (25, 50, 100, 200, 400):
        sv = near_kernel_svd(assemble_toeplitz(h, n), 3)
        print(f"  n={n:4d}  smallest singular values " + "  ".join(f"{s:.2e}" for s in sv))
