"""Brute-force reference computations, written independently of the package internals."""

import cmath
from itertools import product


def plane_count(F, terms):
    """Projective points of sum c X^a Y^b Z^c = 0 by a plain loop."""
    def val(v):
        acc = 0
        for c, ex in terms:
            t = F.scalar(c % F.p, 1)
            for x, e in zip(v, ex):
                t = F.mul(t, F.pow(x, e))
            acc = F.add(acc, t)
        return acc
    n = 0
    for y, z in product(range(F.q), repeat=2):
        n += val((1, y, z)) == 0
    for z in range(F.q):
        n += val((0, 1, z)) == 0
    n += val((0, 0, 1)) == 0
    return n


def hyperelliptic_count(F, q):
    """y^2 = x^q - x affine solutions plus the one point at infinity."""
    n = 1
    for x in range(F.q):
        rhs = F.sub(F.pow(x, q), x)
        n += sum(1 for y in range(F.q) if F.mul(y, y) == rhs)
    return n


def complex_gauss(F, chi_exp, psi_alpha):
    """sum chi(a) psi(a) in floating point; chi(a) = exp(2 pi i chi_exp log a / (q-1))."""
    total = 0
    for a in range(1, F.q):
        c = cmath.exp(2j * cmath.pi * chi_exp * F.log(a) / (F.q - 1))
        tr = F.absolute_trace(F.mul(psi_alpha, a))
        total += c * cmath.exp(2j * cmath.pi * tr / F.p)
    return total


def element_inner_product(G, f, g):
    """(1/|G|) sum over elements of f(x) conj(g(x)) as a complex number."""
    s = 0
    for x in G.elements:
        s += f(x).approx() * g(x).approx().conjugate()
    return s / G.order
