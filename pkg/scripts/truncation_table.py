"""Degrees and dominant poles of S^(l)(x) for l = 0..L (default 10).

    python3 scripts/truncation_table.py [L]

Classes of l with identical generating functions are grouped on one line.
"""

import sys
import time

from sqfree.genfun import rational_gf
from sqfree.roots import dominant_real_root

if __name__ == "__main__":
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    print(f"{'l':>8} {'d_num':>6} {'d_den':>6} {'x_c':>12} {'1/x_c':>12} {'sec':>6}")
    classes = []
    for ell in range(top + 1):
        t0 = time.perf_counter()
        gf = rational_gf(ell)
        if classes and classes[-1][1].same_function(gf):
            classes[-1][0].append(ell)
            continue
        root = dominant_real_root(gf.denominator, 30, ell=ell)
        classes.append(([ell], gf, root, time.perf_counter() - t0))
    for ells, gf, root, dt in classes:
        label = ",".join(map(str, ells))
        print(f"{label:>8} {gf.d_num:>6} {gf.d_den:>6} {root.decimal(9):>12} "
              f"{float(1 / root.x_c):>12.9f} {dt:>6.2f}")
