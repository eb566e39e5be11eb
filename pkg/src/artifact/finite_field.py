"""Finite fields F_{p^k} for odd p, with characters and Gauss sums.

Elements are plain ints: the coefficient vector (c_0, ..., c_{k-1}) of a
polynomial in the generator u is encoded as sum c_i p^i.  Integers below p
are therefore the prime field.  The modulus is the lexicographically
smallest primitive polynomial, so u itself generates the multiplicative
group and discrete logs are taken with respect to u (for k = 1, with
respect to the smallest primitive root).

Small fields get exp/log/Zech tables and numpy-vectorized operations; large
fields fall back to polynomial-basis arithmetic.
"""

from functools import lru_cache
from itertools import product
import re

import numpy as np

from .errors import budget, ConfigurationError
from .exact_values import CyclotomicInt, _lcm


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple:
    """Return (p, r) with q = p^r, or raise."""
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1:
                raise ConfigurationError(f"{q} is not a prime power")
            return p, r
    raise ConfigurationError(f"{q} is not a prime power")


# polynomial arithmetic over F_p on coefficient lists (low -> high),
# used only to choose and check moduli

def _pmod_mul(a, b, f, p):
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * f[j]) % p
    out = prod[:k] + [0] * max(0, k - len(prod))
    return out


def _pmod_pow_x(e, f, p):
    k = len(f) - 1
    result = [1] + [0] * (k - 1)
    base = ([0, 1] + [0] * (k - 2)) if k > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _pmod_mul(result, base, f, p)
        base = _pmod_mul(base, base, f, p)
        e >>= 1
    return result


def is_primitive_modulus(f, p) -> bool:
    """f monic of degree k over F_p; true iff x has order p^k - 1 modulo f."""
    k = len(f) - 1
    q = p**k
    one = [1] + [0] * (k - 1)
    if _pmod_pow_x(q - 1, f, p) != one:
        return False
    return all(_pmod_pow_x((q - 1) // r, f, p) != one for r in prime_factors(q - 1))


def smallest_primitive_modulus(p: int, k: int) -> tuple:
    """Monic f = x^k - sum c_i x^i, minimizing (c_{k-1}, ..., c_0) lexicographically."""
    for cs in product(range(p), repeat=k):
        # cs = (c_{k-1}, ..., c_0)
        low = [(-c) % p for c in reversed(cs)]
        f = low + [1]
        if f[0] == 0:
            continue
        if is_primitive_modulus(f, p):
            return tuple(f)
    raise ConfigurationError(f"no primitive polynomial for p={p}, k={k}")


def smallest_primitive_root(p: int) -> int:
    for g in range(2, p) if p > 2 else [1]:
        if all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1)):
            return g
    return 1


class FiniteField:
    """The field F_{p^k}; see module docstring for the encoding."""

    def __init__(self, p: int, k: int = 1):
        if p % 2 == 0 or not is_prime(p):
            raise ConfigurationError(f"characteristic must be an odd prime, got {p}")
        if k < 1:
            raise ConfigurationError("extension degree must be positive")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.generator = smallest_primitive_root(p)
            self.modulus = ((-self.generator) % p, 1)
        else:
            self.modulus = smallest_primitive_modulus(p, k)
            self.generator = p  # the element u
        self._pw = [p**i for i in range(k + 1)]
        self.tables = self.q <= budget("field_table")
        if self.tables:
            self._build_tables()

    # tables

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        n = q - 1
        if k == 1:
            exp = np.empty(n, dtype=np.int64)
            x = 1
            for i in range(n):
                exp[i] = x
                x = x * self.generator % p
        else:
            comp = np.zeros((k, k), dtype=np.int64)
            # column j: digits of u * u^j
            for j in range(k - 1):
                comp[j + 1, j] = 1
            for i in range(k):
                comp[i, k - 1] = (-self.modulus[i]) % p
            B = min(n, 1024)
            digits = np.zeros((n, k), dtype=np.int64)
            v = np.zeros(k, dtype=np.int64)
            v[0] = 1
            for i in range(B):
                digits[i] = v
                v = comp @ v % p
            # multiplication by u^B as a matrix
            MB = np.eye(k, dtype=np.int64)
            base = comp.copy()
            e = B
            while e:
                if e & 1:
                    MB = MB @ base % p
                base = base @ base % p
                e >>= 1
            start = B
            while start < n:
                stop = min(n, start + B)
                prev = digits[start - B:stop - B]
                digits[start:stop] = prev @ MB.T % p
                start = stop
            exp = digits @ np.array(self._pw[:k], dtype=np.int64)
        self._exp = np.concatenate([exp, exp])
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        self._log = log
        one_plus = np.where(exp % p == p - 1, exp - (p - 1), exp + 1)
        self._zech = log[one_plus]  # log(1 + g^i), -1 when 1 + g^i = 0
        self._exp_list = self._exp.tolist()
        self._log_list = log.tolist()
        self._zech_list = self._zech.tolist()

    # basic helpers

    def digits(self, x: int) -> list:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(x % p)
            x //= p
        return out

    def from_digits(self, ds) -> int:
        p = self.p
        v = 0
        for i in range(len(ds) - 1, -1, -1):
            v = v * p + int(ds[i]) % p
        return v

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self):
        return f"F({self.p},{self.k})"

    @property
    def tag(self) -> str:
        return f"F({self.p},{self.k})"

    # arithmetic on ints

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        if self.tables:
            la = self._log_list[a]
            d = self._log_list[b] - la
            if d < 0:
                d += self.q - 1
            z = self._zech_list[d]
            if z < 0:
                return 0
            return self._exp_list[la + z]
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self.tables:
            return self._exp_list[self._log_list[a] + self._log_list[b]]
        return self.from_digits(_pmod_mul(self.digits(a), self.digits(b), list(self.modulus), self.p))

    def scalar(self, c: int, a: int) -> int:
        """Multiply by an integer (prime field element)."""
        return self.mul(c % self.p, a)

    def pow(self, a: int, e: int) -> int:
        n = self.q - 1
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        if self.tables:
            return self._exp_list[(self._log_list[a] * e) % n]
        e %= n
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        if self.tables:
            la = self._log_list[a]
            return self._exp_list[(self.q - 1 - la) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, e: int = 1) -> int:
        """a^(p^e)."""
        return self.pow(a, self.p ** (e % self.k))

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of 0")
        if self.tables:
            return self._log_list[a]
        # baby-step giant-step
        n = self.q - 1
        m = int(n**0.5) + 1
        table = {}
        x = 1
        for j in range(m):
            table.setdefault(x, j)
            x = self.mul(x, self.generator)
        factor = self.inv(self.pow(self.generator, m))
        y = a
        for i in range(m + 1):
            if y in table:
                return (i * m + table[y]) % n
            y = self.mul(y, factor)
        raise ArithmeticError("discrete log failed")

    def exp(self, e: int) -> int:
        if self.tables:
            return self._exp_list[e % (self.q - 1)]
        return self.pow(self.generator, e)

    def order(self, a: int) -> int:
        n = self.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    # subfields

    def subfield_order(self, d: int) -> int:
        if self.k % d:
            raise ConfigurationError(f"F_{self.p}^{d} is not a subfield of {self}")
        return self.p**d

    def in_subfield(self, a: int, d: int) -> bool:
        return self.pow(a, self.subfield_order(d)) == a

    def subfield_elements(self, d: int) -> list:
        qd = self.subfield_order(d)
        if d == self.k:
            return list(range(self.q))
        step = (self.q - 1) // (qd - 1)
        return sorted([0] + [self.exp(step * i) for i in range(qd - 1)])

    def subfield_generator(self, d: int) -> int:
        qd = self.subfield_order(d)
        return self.exp((self.q - 1) // (qd - 1))

    def trace(self, a: int, d: int = 1, within: int = None) -> int:
        """Trace from the subfield of degree `within` (default: whole field) to degree d."""
        within = self.k if within is None else within
        if within % d:
            raise ConfigurationError("trace target must be a subfield")
        qd = self.p**d
        tot = 0
        x = a
        for _ in range(within // d):
            tot = self.add(tot, x)
            x = self.pow(x, qd)
        return tot

    def norm(self, a: int, d: int = 1, within: int = None) -> int:
        within = self.k if within is None else within
        if within % d:
            raise ConfigurationError("norm target must be a subfield")
        qd = self.p**d
        qw = self.p**within
        if a == 0:
            return 0
        return self.pow(a, (qw - 1) // (qd - 1))

    def absolute_trace(self, a: int, within: int = None) -> int:
        """Trace down to F_p, returned as an integer in [0, p)."""
        return self.trace(a, 1, within)

    def quadratic_character(self, a: int, within: int = None) -> int:
        """Legendre symbol of a in the subfield of degree `within`."""
        within = self.k if within is None else within
        if a == 0:
            return 0
        qw = self.p**within
        v = self.pow(a, (qw - 1) // 2)
        return 1 if v == 1 else -1

    def is_square(self, a: int) -> bool:
        return a == 0 or self.quadratic_character(a) == 1

    def sqrt(self, a: int) -> int:
        """A square root of a (the one with smaller discrete log), or raise."""
        if a == 0:
            return 0
        if not self.is_square(a):
            raise ValueError(f"{a} is not a square in {self}")
        if self.tables:
            la = self._log_list[a]
            return self._exp_list[la // 2]
        # Tonelli-Shanks
        q = self.q
        s, t = 0, q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = next(x for x in range(2, q) if self.quadratic_character(x) == -1)
        m, c, r, tt = s, self.pow(z, t), self.pow(a, (t + 1) // 2), self.pow(a, t)
        while tt != 1:
            i, x = 0, tt
            while x != 1:
                x = self.mul(x, x)
                i += 1
            b = self.pow(c, 2 ** (m - i - 1))
            m, c = i, self.mul(b, b)
            r, tt = self.mul(r, b), self.mul(tt, c)
        other = self.neg(r)
        return min(r, other)

    def nonsquare(self, within: int = None) -> int:
        """Smallest encoded nonsquare of the subfield of degree `within`."""
        within = self.k if within is None else within
        for x in self.subfield_elements(within):
            if x and self.quadratic_character(x, within) == -1:
                return x
        raise ArithmeticError("no nonsquare")

    # vectorized versions (tables only)

    def _require_tables(self):
        if not self.tables:
            raise ConfigurationError(f"{self} is too large for vectorized arithmetic")

    def vmul(self, a, b):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return a * b % self.p
        la, lb = self._log[a], self._log[b]
        out = self._exp[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def vadd(self, a, b):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        a, b = np.broadcast_arrays(a, b)
        la, lb = self._log[a], self._log[b]
        d = (lb - la) % (self.q - 1)
        z = self._zech[d]
        s = self._exp[np.maximum(la, 0) + np.maximum(z, 0)]
        s = np.where(z < 0, 0, s)
        s = np.where(la < 0, b, s)
        s = np.where(lb < 0, a, s)
        return s

    def vneg(self, a):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        la = self._log[a]
        out = self._exp[np.maximum(la, 0) + (self.q - 1) // 2]
        return np.where(la < 0, 0, out)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vpow(self, a, e: int):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        la = self._log[a]
        out = self._exp[(np.maximum(la, 0) * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(la < 0, 0, out)

    def vscalar(self, c: int, a):
        return self.vmul(np.full(np.shape(a), c % self.p, dtype=np.int64), a)

    def vtrace_abs(self, a, within: int = None):
        """Absolute trace to F_p of an array of elements of the degree-`within` subfield."""
        within = self.k if within is None else within
        tot = np.zeros(np.shape(a), dtype=np.int64)
        x = np.asarray(a, dtype=np.int64)
        for _ in range(within):
            tot = self.vadd(tot, x)
            x = self.vpow(x, self.p)
        return tot

    # convenience

    def element(self, value) -> "FieldElement":
        return FieldElement(self, int(value))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))


@lru_cache(maxsize=None)
def gf(p: int, k: int = 1) -> FiniteField:
    """Cached field constructor."""
    return FiniteField(p, k)


def field_of_order(q: int) -> FiniteField:
    p, r = prime_power(q)
    return gf(p, r)


def parse_field_tag(tag: str) -> FiniteField:
    m = re.fullmatch(r"\s*F\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", tag)
    if not m:
        raise ConfigurationError(f"bad field tag {tag!r}; expected F(p,k)")
    return gf(int(m.group(1)), int(m.group(2)))


def embedding(small: FiniteField, big: FiniteField):
    """A ring embedding small -> big, as a function on encoded ints.

    The generator of `small` goes to the smallest encoded root of its modulus
    in `big`.
    """
    if small.p != big.p or big.k % small.k:
        raise ConfigurationError(f"{small} does not embed in {big}")
    if small.k == 1:
        return lambda x: x % small.p
    f = small.modulus
    root = None
    for x in big.subfield_elements(small.k):
        acc = 0
        for c in reversed(f):
            acc = big.add(big.mul(acc, x), c % big.p)
        if acc == 0:
            root = x
            break
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))

    def emb(x: int) -> int:
        acc = 0
        for d, r in zip(small.digits(x), powers):
            if d:
                acc = big.add(acc, big.scalar(d, r))
        return acc

    return emb


class FieldElement:
    """Thin operator wrapper around an encoded int."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _v(self, other):
        if isinstance(other, FieldElement):
            return other.value
        return int(other) % self.field.p

    def __add__(self, o):
        return FieldElement(self.field, self.field.add(self.value, self._v(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, self.field.sub(self.value, self._v(o)))

    def __rsub__(self, o):
        return FieldElement(self.field, self.field.sub(self._v(o), self.value))

    def __mul__(self, o):
        return FieldElement(self.field, self.field.mul(self.value, self._v(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.field, self.field.div(self.value, self._v(o)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, e: int = 1):
        return FieldElement(self.field, self.field.frobenius(self.value, e))

    def trace(self, d: int = 1):
        return FieldElement(self.field, self.field.trace(self.value, d))

    def norm(self, d: int = 1):
        return FieldElement(self.field, self.field.norm(self.value, d))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.field == o.field and self.value == o.value
        if isinstance(o, int):
            return self.value == o % self.field.p and o % self.field.p == self.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        ds = self.field.digits(self.value)
        terms = []
        for i, d in enumerate(ds):
            if d:
                terms.append(str(d) if i == 0 else (f"{d}*u^{i}" if d != 1 else f"u^{i}"))
        return " + ".join(reversed(terms)) or "0"


# characters

class AdditiveCharacter:
    """x -> zeta_p^{Tr(alpha x)} on the subfield of degree `degree` of `field`."""

    def __init__(self, field: FiniteField, alpha: int, degree: int = None):
        self.field = field
        self.alpha = alpha
        self.degree = field.k if degree is None else degree
        if not field.in_subfield(alpha, self.degree):
            raise ConfigurationError("twist must lie in the character's domain")

    @property
    def trivial(self) -> bool:
        return self.alpha == 0

    def exponent(self, x: int) -> int:
        """Tr(alpha x) in Z/p."""
        return self.field.absolute_trace(self.field.mul(self.alpha, x), self.degree)

    def __call__(self, x: int) -> CyclotomicInt:
        return CyclotomicInt.zeta(self.field.p, self.exponent(x))

    def inverse(self) -> "AdditiveCharacter":
        return AdditiveCharacter(self.field, self.field.neg(self.alpha), self.degree)

    def __repr__(self):
        return f"psi[{self.alpha}]"


class MultiplicativeCharacter:
    """x -> zeta_N^{e log x} on the degree-`degree` subfield, N = p^degree - 1."""

    def __init__(self, field: FiniteField, exponent: int, degree: int = None):
        self.field = field
        self.degree = field.k if degree is None else degree
        self.modulus = field.p**self.degree - 1
        self.e = exponent % self.modulus

    @classmethod
    def quadratic(cls, field: FiniteField, degree: int = None) -> "MultiplicativeCharacter":
        d = field.k if degree is None else degree
        return cls(field, (field.p**d - 1) // 2, d)

    def sublog(self, x: int) -> int:
        """Discrete log inside the subfield, relative to its induced generator."""
        step = (self.field.q - 1) // self.modulus
        lg = self.field.log(x)
        if lg % step:
            raise ConfigurationError(f"{x} is outside the character's domain")
        return lg // step

    def order(self) -> int:
        from math import gcd
        return self.modulus // gcd(self.e, self.modulus)

    def exponent(self, x: int):
        """Exponent of the value as a fraction of the full turn: value = zeta_order^(returned)."""
        n = self.order()
        return (self.e * self.sublog(x)) * n // self.modulus % n

    def __call__(self, x: int) -> CyclotomicInt:
        if x == 0:
            return CyclotomicInt.from_int(0)
        return CyclotomicInt.zeta(self.order(), self.exponent(x))

    def __mul__(self, other):
        return MultiplicativeCharacter(self.field, self.e + other.e, self.degree)

    def inverse(self):
        return MultiplicativeCharacter(self.field, -self.e, self.degree)

    def __eq__(self, other):
        return isinstance(other, MultiplicativeCharacter) and (self.field, self.degree, self.e) == (other.field, other.degree, other.e)

    def __hash__(self):
        return hash((self.field, self.degree, self.e))

    def __repr__(self):
        return f"chi[{self.e} mod {self.modulus}]"


def quadratic_character(field: FiniteField, a: int, degree: int = None) -> int:
    return field.quadratic_character(a, degree)


def gauss_sum(chi: MultiplicativeCharacter, psi: AdditiveCharacter) -> CyclotomicInt:
    """sum over nonzero a of chi(a) psi(a), computed from an exponent histogram."""
    if psi.trivial:
        raise ConfigurationError("Gauss sum needs a nontrivial additive character")
    if chi.field != psi.field or chi.degree != psi.degree:
        raise ConfigurationError("characters must share a domain")
    f = chi.field
    p = f.p
    n = chi.order()
    M = _lcm(p, n)
    hist = [0] * M
    for a in f.subfield_elements(chi.degree):
        if a == 0:
            continue
        e = (M // p) * psi.exponent(a) + (M // n) * chi.exponent(a)
        hist[e % M] += 1
    return CyclotomicInt.from_exponents(M, hist)


def additive_characters(field: FiniteField, degree: int = None) -> list:
    d = field.k if degree is None else degree
    return [AdditiveCharacter(field, a, d) for a in field.subfield_elements(d)]


# polynomials over a FiniteField: lists of ints, low -> high, no trailing zeros

def poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(F, f, g):
    n = max(len(f), len(g))
    return poly_trim([F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)])


def poly_sub(F, f, g):
    return poly_add(F, f, [F.neg(c) for c in g])


def poly_mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(out)


def poly_scale(F, c, f):
    return poly_trim([F.mul(c, a) for a in f])


def poly_divmod(F, f, g):
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = poly_trim(f)
    inv_lead = F.inv(g[-1])
    out = [0] * max(0, len(f) - len(g) + 1)
    f = list(f)
    dg = len(g) - 1
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            c = F.mul(c, inv_lead)
            out[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = F.sub(f[i - dg + j], F.mul(c, b))
    return poly_trim(out), poly_trim(f[:dg])


def poly_monic(F, f):
    f = poly_trim(f)
    if not f:
        return f
    return poly_scale(F, F.inv(f[-1]), f)


def poly_gcd(F, f, g):
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(F, f, g)[1]
    return poly_monic(F, f)


def poly_deriv(F, f):
    return poly_trim([F.scalar(i, f[i]) for i in range(1, len(f))])


def poly_eval(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_pth_root(F, f):
    """g with g^p = f, for f a polynomial in x^p."""
    p = F.p
    out = []
    for i in range(0, len(f), p):
        out.append(F.pow(f[i], F.q // p))
    return poly_trim(out)


def distinct_root_count(F, f) -> int:
    """Number of distinct roots of f over an algebraic closure of F."""
    f = poly_monic(F, f)
    if len(f) <= 1:
        return 0
    d = poly_deriv(F, f)
    if not d:
        return distinct_root_count(F, poly_pth_root(F, f))
    g = poly_gcd(F, f, d)
    w = poly_divmod(F, f, g)[0]
    h = g
    while True:
        c = poly_gcd(F, h, w)
        if len(c) <= 1:
            break
        h = poly_divmod(F, h, c)[0]
    return (len(w) - 1) + (distinct_root_count(F, h) if len(h) > 1 else 0)


def poly_roots(F, f) -> list:
    """Roots of f lying in F, by enumeration, sorted by encoding."""
    f = poly_trim(f)
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    if F.tables:
        xs = np.arange(F.q, dtype=np.int64)
        acc = np.zeros(F.q, dtype=np.int64)
        for c in reversed(f):
            acc = F.vadd(F.vmul(acc, xs), np.full(F.q, c, dtype=np.int64))
        return [int(x) for x in np.nonzero(acc == 0)[0]]
    return [x for x in range(F.q) if poly_eval(F, f, x) == 0]


# linear algebra over a FiniteField (lists of rows)

def mat_mul(F, A, B):
    n, m, r = len(A), len(B), len(B[0])
    out = [[0] * r for _ in range(n)]
    for i in range(n):
        for k in range(m):
            a = A[i][k]
            if a:
                row = B[k]
                for j in range(r):
                    if row[j]:
                        out[i][j] = F.add(out[i][j], F.mul(a, row[j]))
    return out


def mat_vec(F, A, v):
    return [poly_dot(F, row, v) for row in A]


def poly_dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def nullspace(F, A) -> list:
    """Basis of {v : A v = 0}, returned as a list of vectors."""
    rows = [list(r) for r in A]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(rows[i][fc])
        basis.append(v)
    return basis


def mat_det(F, A):
    M = [list(r) for r in A]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return det


def solve_affine_linearized(F, coeffs, const, d: int = 1):
    """All x in F with sum_i coeffs[i] x^(p^(d*i)) = const.

    The left side is additive, so the solution set is empty or a coset of an
    F_p-subspace; it is found by linear algebra over F_p on the digit basis.
    """
    p, k = F.p, F.k

    def L(x):
        acc = 0
        y = x
        for c in coeffs:
            if c:
                acc = F.add(acc, F.mul(c, y))
            y = F.pow(y, p**d)
        return acc

    # matrix over F_p: column j = digits of L(p^j)
    cols = [F.digits(L(p**j)) for j in range(k)]
    A = [[cols[j][i] for j in range(k)] for i in range(k)]
    b = F.digits(const)
    Fp = gf(p, 1)
    aug = [A[i] + [b[i]] for i in range(k)]
    # row reduce the augmented system over F_p
    rows = [list(r) for r in aug]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, k) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(k):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] % p for i in range(r, k)):
        return []
    part = [0] * k
    for i, pc in enumerate(pivots):
        part[pc] = rows[i][k]
    free = [c for c in range(k) if c not in pivots]
    kernel = []
    for fc in free:
        v = [0] * k
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        kernel.append(v)
    del Fp
    sols = []
    for combo in product(range(p), repeat=len(kernel)):
        v = list(part)
        for c, kv in zip(combo, kernel):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, kv)]
        sols.append(F.from_digits(v))
    return sorted(sols)
