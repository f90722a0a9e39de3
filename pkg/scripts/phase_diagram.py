"""Critical curve x_c(q) at n = 40 against the rigorous bounds, as CSV and SVG.

    python3 scripts/phase_diagram.py [n] [out_prefix]
"""

import sys

from sqfree.cli import csv_text
from sqfree.enumerate import count_by_letter
from sqfree.figures import phase_svg
from sqfree.thermo import critical_curve, phase_q_grid

if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 40
    prefix = sys.argv[2] if len(sys.argv) > 2 else "phase"
    table = count_by_letter(n)
    for method in ("dlog", "finite"):
        curve = critical_curve(table, phase_q_grid(), method)
        with open(f"{prefix}_{method}.csv", "w") as fh:
            fh.write(csv_text(curve.to_rows()))
        with open(f"{prefix}_{method}.svg", "w") as fh:
            fh.write(phase_svg(curve))
        outside = [p.q for p in curve.points if p.within_bounds is False]
        print(f"{method}: {len(curve.points)} points, outside bounds at q = {outside or 'none'}")
