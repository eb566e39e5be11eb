"""Exact arithmetic in the cyclotomic rings Z[zeta_n].

A value is stored as its coefficient vector in the power basis of
Z[x]/Phi_n(x).  Values with different conductors are compared and combined
after embedding both into the lcm of the conductors.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import budget, BudgetError, ConfigurationError


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    r = n
    for p, _ in _factor(n):
        r = r // p * (p - 1)
    return r


def mobius(n: int) -> int:
    f = _factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_divexact(num, den):
    # exact division of integer polynomials, den monic; coefficient lists low->high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


def _check_conductor(n: int) -> None:
    cap = budget("conductor")
    if n > cap:
        raise BudgetError("conductor", n, cap)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> np.ndarray:
    """Row i is x^i mod Phi_n for i < n, as an integer matrix of shape (n, phi(n))."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = np.zeros((n, d), dtype=object)
    cur = [0] * d
    for i in range(n):
        if i < d:
            cur = [0] * d
            cur[i] = 1
        else:
            # multiply previous row by x and reduce
            top = prev[d - 1]
            cur = [0] + prev[:d - 1]
            if top:
                for j in range(d):
                    cur[j] -= top * phi[j]
        rows[i] = cur
        prev = list(cur)
    small = np.array(rows.tolist(), dtype=np.int64)
    return small


def _reduce_histogram(n: int, hist) -> tuple:
    """Reduce sum_e hist[e] x^e (exponents mod n) modulo Phi_n."""
    rows = _reduction_rows(n)
    h = np.asarray(hist)
    if h.dtype == object or (h.size and np.abs(h).max() > 2**40):
        v = [0] * rows.shape[1]
        for e, c in enumerate(hist):
            if c:
                r = rows[e]
                for j in range(len(v)):
                    v[j] += c * int(r[j])
        return tuple(v)
    v = h.astype(np.int64) @ rows
    return tuple(int(c) for c in v)


class CyclotomicInt:
    """An element of Z[zeta_n], immutable."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ConfigurationError("conductor must be positive")
        _check_conductor(conductor)
        coeffs = tuple(int(c) for c in coeffs)
        d = euler_phi(conductor)
        if len(coeffs) != d:
            if len(coeffs) > d:
                coeffs = _reduce_histogram(conductor, _pad(coeffs, conductor))
            else:
                coeffs = coeffs + (0,) * (d - len(coeffs))
        self.conductor = conductor
        self.coeffs = coeffs
        self._hash = None

    # constructors

    @classmethod
    def from_int(cls, a: int, conductor: int = 1) -> "CyclotomicInt":
        return cls(conductor, (a,) + (0,) * (euler_phi(conductor) - 1))

    @classmethod
    def zeta(cls, n: int, e: int = 1) -> "CyclotomicInt":
        hist = [0] * n
        hist[e % n] = 1
        return cls(n, _reduce_histogram(n, hist))

    @classmethod
    def from_exponents(cls, n: int, hist) -> "CyclotomicInt":
        """sum_e hist[e] zeta_n^e, where hist is a length-n sequence or a dict."""
        if isinstance(hist, dict):
            h = [0] * n
            for e, c in hist.items():
                h[e % n] += c
            hist = h
        elif len(hist) != n:
            h = [0] * n
            for e, c in enumerate(hist):
                h[e % n] += c
            hist = h
        _check_conductor(n)
        return cls(n, _reduce_histogram(n, hist))

    # structure

    def embed(self, n_new: int) -> "CyclotomicInt":
        if n_new % self.conductor:
            raise ConfigurationError(f"{n_new} is not a multiple of {self.conductor}")
        if n_new == self.conductor:
            return self
        step = n_new // self.conductor
        hist = [0] * n_new
        for i, c in enumerate(self.coeffs):
            if c:
                hist[(i * step) % n_new] += c
        return CyclotomicInt.from_exponents(n_new, hist)

    def _unify(self, other):
        if not isinstance(other, CyclotomicInt):
            if isinstance(other, int):
                other = CyclotomicInt.from_int(other, self.conductor)
            else:
                return None, None
        if other.conductor == self.conductor:
            return self, other
        n = _lcm(self.conductor, other.conductor)
        _check_conductor(n)
        return self.embed(n), other.embed(n)

    def galois(self, a: int) -> "CyclotomicInt":
        """Apply zeta_n -> zeta_n^a for a coprime to n."""
        n = self.conductor
        if gcd(a, n) != 1:
            raise ConfigurationError("Galois exponent must be a unit")
        hist = [0] * n
        for i, c in enumerate(self.coeffs):
            if c:
                hist[(i * a) % n] += c
        return CyclotomicInt.from_exponents(n, hist)

    def conjugate(self) -> "CyclotomicInt":
        return self.galois(-1)

    def is_integer(self) -> bool:
        # the power basis contains 1, so rational values have no higher terms
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def trace(self) -> int:
        """Absolute trace Tr_{Q(zeta_n)/Q}."""
        n = self.conductor
        tot = 0
        for i, c in enumerate(self.coeffs):
            if c:
                d = n // gcd(n, i) if i else 1
                tot += c * mobius(d) * (euler_phi(n) // euler_phi(d))
        return tot

    def exact_div(self, k: int) -> "CyclotomicInt":
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(f"{self!r} is not divisible by {k}")
        return CyclotomicInt(self.conductor, [c // k for c in self.coeffs])

    def divisible_by(self, k: int) -> bool:
        return not any(c % k for c in self.coeffs)

    def minimal_conductor(self) -> "CyclotomicInt":
        """Same value expressed in the smallest conductor dividing the current one."""
        n = self.conductor
        for d in sorted(x for x in range(1, n + 1) if n % x == 0):
            if d == n:
                return self
            if self._fixed_by_kernel(d):
                cand = self._descend(d)
                if cand is not None:
                    return cand
        return self

    def _fixed_by_kernel(self, d: int) -> bool:
        n = self.conductor
        for a in range(1, n):
            if a % d == 1 % d and gcd(a, n) == 1 and a != 1:
                if self.galois(a) != self:
                    return False
        return True

    def _descend(self, d: int):
        # solve for coefficients in Z[zeta_d] by matching the embedding
        n = self.conductor
        step = n // d
        rows = _reduction_rows(n)
        k = euler_phi(d)
        basis = np.array([rows[(i * step) % n] for i in range(k)], dtype=object)
        target = np.array(self.coeffs, dtype=object)
        sol = _integer_solve(basis.T, target)
        if sol is None:
            return None
        return CyclotomicInt(d, sol)

    def approx(self) -> complex:
        """Floating-point value under zeta_n = exp(2 pi i / n); diagnostics only."""
        w = np.exp(2j * np.pi / self.conductor)
        return complex(sum(c * w**i for i, c in enumerate(self.coeffs)))

    def to_json(self) -> dict:
        v = self.minimal_conductor()
        return {"conductor": v.conductor, "coeffs": list(v.coeffs)}

    @classmethod
    def from_json(cls, d: dict) -> "CyclotomicInt":
        return cls(d["conductor"], d["coeffs"])

    # arithmetic

    def __add__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return CyclotomicInt(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return CyclotomicInt(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.conductor, [x * other for x in self.coeffs])
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        n = a.conductor
        if n == 1:
            return CyclotomicInt(1, [a.coeffs[0] * b.coeffs[0]])
        big = max(map(abs, a.coeffs), default=0) * max(map(abs, b.coeffs), default=0)
        if big * len(a.coeffs) < 2**50:
            prod = np.convolve(np.array(a.coeffs, dtype=np.int64), np.array(b.coeffs, dtype=np.int64))
            prod = prod.tolist()
        else:
            prod = [0] * (2 * len(a.coeffs) - 1)
            for i, x in enumerate(a.coeffs):
                if x:
                    for j, y in enumerate(b.coeffs):
                        prod[i + j] += x * y
        return CyclotomicInt(n, _reduce_histogram(n, _pad(prod, n)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result = CyclotomicInt.from_int(1, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalized trace and normalized trace of |x|^2 do not depend on the conductor
        if self._hash is None:
            n = self.conductor
            t1 = Fraction(self.trace(), euler_phi(n))
            t2 = Fraction((self * self.conjugate()).trace(), euler_phi(n))
            self._hash = hash((t1, t2))
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.conductor}^{i}")
        return "CyclotomicInt(" + (" + ".join(terms) or "0") + ")"


def _pad(coeffs, n):
    # fold a coefficient list of any length into exponents mod n
    hist = [0] * n
    for e, c in enumerate(coeffs):
        if c:
            hist[e % n] += c
    return hist


def _integer_solve(A, b):
    """Solve A x = b over Q with A of full column rank; return integer x or None."""
    rows, cols = A.shape
    M = [[Fraction(int(A[i, j])) for j in range(cols)] + [Fraction(int(b[i]))] for i in range(rows)]
    r = 0
    piv = []
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            return None
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x = [M[i][cols] for i in range(cols)]
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


ZERO = CyclotomicInt.from_int(0)
ONE = CyclotomicInt.from_int(1)


def as_cyc(x) -> CyclotomicInt:
    if isinstance(x, CyclotomicInt):
        return x
    return CyclotomicInt.from_int(int(x))


def cyc_sum(values, conductor: int = 1) -> CyclotomicInt:
    """Sum a collection of CyclotomicInt or int values."""
    vals = [as_cyc(v) for v in values]
    n = conductor
    for v in vals:
        n = _lcm(n, v.conductor)
    _check_conductor(n)
    acc = [0] * euler_phi(n)
    for v in vals:
        w = v.embed(n)
        for i, c in enumerate(w.coeffs):
            acc[i] += c
    return CyclotomicInt(n, acc)


# function-style aliases
def cyc_add(a, b):
    return as_cyc(a) + as_cyc(b)


def cyc_mul(a, b):
    return as_cyc(a) * as_cyc(b)


def cyc_neg(a):
    return -as_cyc(a)


def cyc_conjugate(a):
    return as_cyc(a).conjugate()


def embed(a, n_new):
    return as_cyc(a).embed(n_new)
