"""Point counts of the DL and Hermitian curves over F_{q^2k} against the closed forms.

Over F_{q^2k} the Hermitian Frobenius acts as (-q)^k on all of H^1; the DL
Frobenius has eigenvalues +-q^k with q-1 more of one sign when k is odd, so
the two counts agree only for even k.
"""

import argparse

from artifact import curves

ap = argparse.ArgumentParser()
ap.add_argument("--q", type=int, default=3)
ap.add_argument("--kmax", type=int, default=3)
a = ap.parse_args()
q = a.q

print(" k      #DL  formula   #Herm  formula")
for k, dl, he in curves.dl_hermitian_counts(q, a.kmax):
    Q = q**(2 * k)
    if k % 2:
        f_dl, f_he = Q + 1 - (q - 1) * q**k, Q + 1 + q * (q - 1) * q**k
    else:
        f_dl = f_he = Q + 1 - q * (q - 1) * q**k
    print(f"{k:>2} {dl:>8} {f_dl:>8} {he:>7} {f_he:>8}")
