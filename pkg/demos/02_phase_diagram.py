"""
Phase diagram over (p, a+)
==========================

Fix a(-inf) = 0.9 and sweep p and a(+inf).  The index takes the values -1, 0
and +1 on plateaus whose boundaries are the lines |p| = |a(+inf)| and
|p| = 0.9, where the walk stops being Fredholm.  The same table is what
``sswalk sweep`` writes as CSV.
"""

import numpy as np

from sswalk import sweep, sweep_specs

ps = np.round(np.linspace(-0.95, 0.95, 20), 4)
aps = np.round(np.linspace(-0.95, 0.95, 39), 4)
reports = sweep(sweep_specs(ps, aps, a_minus=0.9), jobs=2)

symbol = {1: "+", 0: ".", -1: "-", None: "x"}
grid = np.array([symbol[r.witten_winding] for r in reports]).reshape(ps.size, aps.size)

print("rows: p from -0.95 (top) to 0.95; columns: a+ from -0.95 to 0.95")
print("+ index +1   - index -1   . index 0   x not Fredholm\n")
for p, row in zip(ps, grid):
    print(f"{p:+.2f}  {''.join(row)}")

disagree = [r for r in reports if not r.agree]
print(f"\n{len(reports)} points, {len(disagree)} where formula and winding disagree")
