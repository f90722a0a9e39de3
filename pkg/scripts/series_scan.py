"""Dlog-Pade estimates of (x_c, gamma, A) for s_n truncated at several n.

    python3 scripts/series_scan.py [n_lo] [n_hi]

Shows how far the pooled estimate drifts with the series length, which is the
main source of uncertainty at desk scale.
"""

import sys

from sqfree.analysis import InsufficientApproximants, amplitude_estimate, pooled_estimate
from sqfree.enumerate import count_square_free

if __name__ == "__main__":
    lo = int(sys.argv[1]) if len(sys.argv) > 1 else 30
    hi = int(sys.argv[2]) if len(sys.argv) > 2 else 45
    s = count_square_free(hi).values
    print(f"{'n':>4} {'x_c':>10} {'gamma':>8} {'A':>8} {'A(gamma=1)':>11} {'members':>8}")
    for n in range(lo, hi + 1):
        try:
            est = pooled_estimate(s[:n + 1], "diag2")
        except InsufficientApproximants as exc:
            print(f"{n:>4} {exc}")
            continue
        a1, _ = amplitude_estimate(s[:n + 1], est.x_c, 1.0)
        print(f"{n:>4} {est.x_c:>10.6f} {est.gamma:>8.4f} {est.A:>8.3f} {a1:>11.3f} "
              f"{len(est.family):>8}")
