"""Print the V/W filtration dimension table with the exponents used and the searched minima."""

import argparse

from artifact import orders

ap = argparse.ArgumentParser()
ap.add_argument("--q", type=int, default=3)
ap.add_argument("--mmax", type=int, default=6)
a = ap.parse_args()

cols = ("VA/WA", "VB/WB", "WA/VA+", "WB/VB+")
print(f"{'kind':<11}{'m':>2}  " + "  ".join(f"{c:>7}" for c in cols) + "   r  r'  r_min r'_min  match")
for row in orders.dimension_table(a.q, a.mmax):
    print(f"{row['kind']:<11}{row['m']:>2}  " + "  ".join(f"{row[c]:>7}" for c in cols)
          + f"  {row['r']:>2}  {row['r_prime']:>2}  {row['r_min']:>5} {row['r_prime_min']:>6}  {row['matches']}")
