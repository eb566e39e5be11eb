"""Orders of the delta-kernel graded pieces, raw and modulo U_E^m."""

import argparse
import time

from artifact import orders

ap = argparse.ArgumentParser()
ap.add_argument("--q", type=int, default=3)
ap.add_argument("--mmax", type=int, default=5)
ap.add_argument("--kinds", nargs="+", default=["unramified", "ramified1"])
a = ap.parse_args()

print("kind        m   |Gr_m|  kernel  U_E^m  Gr^1  expected  abelian  |K1/L1|  seconds")
for kind in a.kinds:
    for m in range(1, a.mmax + 1):
        t = time.perf_counter()
        R = orders.gr1_structure(a.q, kind, m)
        print(f"{kind:<11}{m:>2}  {R.gr_order:>7} {R.raw_kernel:>7} {R.diagonal:>6} {R.gr1_order:>5} {R.expected:>9}"
              f"  {str(R.abelian):>7} {R.gr1_order * R.quotient_order:>8}  {time.perf_counter() - t:7.1f}")
