"""Truncated Laurent series over a finite field.

A series is sum_{i >= start} c_i t^i + O(t^prec).  `prec` is the absolute
precision; None means the value is an exact Laurent polynomial.  Reading a
coefficient at or beyond the precision raises PrecisionError.
"""

from .errors import PrecisionError
from .finite_field import FiniteField


class LaurentSeries:
    __slots__ = ("field", "start", "coeffs", "prec")

    def __init__(self, field: FiniteField, coeffs, start: int = 0, prec=None):
        self.field = field
        coeffs = [int(c) for c in coeffs]
        if prec is not None:
            keep = max(0, prec - start)
            coeffs = coeffs[:keep]
        # strip leading zeros so start is the valuation when nonzero
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        coeffs = coeffs[i:]
        start += i
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.start = start
        self.coeffs = coeffs
        self.prec = prec

    # constructors

    @classmethod
    def constant(cls, field, c: int, prec=None):
        return cls(field, [c], 0, prec)

    @classmethod
    def monomial(cls, field, c: int, e: int, prec=None):
        return cls(field, [c], e, prec)

    @classmethod
    def variable(cls, field, prec=None):
        return cls(field, [1], 1, prec)

    # inspection

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (zero to the working precision)."""
        return not self.coeffs

    def valuation(self) -> int:
        if not self.coeffs:
            if self.prec is None:
                return float("inf")
            raise PrecisionError(f"series vanishes to precision {self.prec}; valuation unknown")
        return self.start

    def coeff(self, i: int) -> int:
        if self.prec is not None and i >= self.prec:
            raise PrecisionError(f"coefficient t^{i} is beyond precision {self.prec}")
        j = i - self.start
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def leading(self) -> int:
        self.valuation()
        return self.coeffs[0]

    def truncate(self, prec: int) -> "LaurentSeries":
        p = prec if self.prec is None else min(prec, self.prec)
        return LaurentSeries(self.field, self.coeffs, self.start, p)

    def with_prec(self, prec):
        return LaurentSeries(self.field, self.coeffs, self.start, prec)

    def dense(self, lo: int, hi: int) -> list:
        """Coefficients of t^lo .. t^(hi-1)."""
        return [self.coeff(i) for i in range(lo, hi)]

    # arithmetic

    @staticmethod
    def _minprec(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.constant(self.field, int(other) % self.field.p)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        prec = self._minprec(self.prec, other.prec)
        if not self.coeffs:
            return other.with_prec(prec)
        if not other.coeffs:
            return self.with_prec(prec)
        lo = min(self.start, other.start)
        hi = max(self.start + len(self.coeffs), other.start + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        out = []
        for i in range(lo, hi):
            a = self.coeffs[i - self.start] if 0 <= i - self.start < len(self.coeffs) else 0
            b = other.coeffs[i - other.start] if 0 <= i - other.start < len(other.coeffs) else 0
            out.append(F.add(a, b))
        return LaurentSeries(F, out, lo, prec)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, [F.neg(c) for c in self.coeffs], self.start, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        return LaurentSeries(F, [F.mul(c, x) for x in self.coeffs], self.start, self.prec)

    def shift(self, e: int) -> "LaurentSeries":
        prec = None if self.prec is None else self.prec + e
        return LaurentSeries(self.field, self.coeffs, self.start + e, prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other % self.field.p)
        F = self.field
        # relative precision of the product is the smaller relative precision
        va = self.start if self.coeffs else None
        vb = other.start if other.coeffs else None
        rel = []
        if self.prec is not None:
            rel.append(self.prec - (va if va is not None else self.prec))
        if other.prec is not None:
            rel.append(other.prec - (vb if vb is not None else other.prec))
        if (not self.coeffs and self.prec is None) or (not other.coeffs and other.prec is None):
            return LaurentSeries(F, [], 0, None)
        if not self.coeffs or not other.coeffs:
            # zero to some precision: the product is known to vanish below
            pa = self.prec if not self.coeffs else self.start
            pb = other.prec if not other.coeffs else other.start
            return LaurentSeries(F, [], 0, pa + pb)
        start = va + vb
        prec = None if not rel else start + min(rel)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, prec - start)
        out = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if i >= n:
                break
            if a:
                for j, b in enumerate(other.coeffs):
                    if i + j >= n:
                        break
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return LaurentSeries(F, out, start, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self, prec=None) -> "LaurentSeries":
        """Multiplicative inverse; exact inputs need an explicit relative precision."""
        F = self.field
        v = self.valuation()
        if self.prec is None:
            if prec is None:
                if len(self.coeffs) == 1:
                    return LaurentSeries(F, [F.inv(self.coeffs[0])], -v, None)
                raise PrecisionError("inverse of an exact non-monomial needs a precision")
            rel = prec
        else:
            rel = self.prec - v
        a0inv = F.inv(self.coeffs[0])
        out = [a0inv]
        for n in range(1, rel):
            acc = 0
            for i in range(1, min(n, len(self.coeffs) - 1) + 1):
                acc = F.add(acc, F.mul(self.coeffs[i], out[n - i]))
            out.append(F.neg(F.mul(acc, a0inv)))
        return LaurentSeries(F, out, -v, -v + rel)

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.inv(other % self.field.p))
        if other.prec is None and self.prec is not None:
            return self * other.inverse(self.prec - (self.start if self.coeffs else 0))
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius_coeffs(self, e: int = 1) -> "LaurentSeries":
        """Apply x -> x^(p^e) to every coefficient."""
        F = self.field
        return LaurentSeries(F, [F.frobenius(c, e) for c in self.coeffs], self.start, self.prec)

    def map_coeffs(self, f) -> "LaurentSeries":
        return LaurentSeries(self.field, [f(c) for c in self.coeffs], self.start, self.prec)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            other = self._coerce(other)
        d = self - other
        return d.is_zero()

    def __hash__(self):
        return hash((self.start, tuple(self.coeffs), self.prec))

    def __repr__(self):
        terms = [f"{c}*t^{self.start + i}" for i, c in enumerate(self.coeffs) if c]
        tail = f" + O(t^{self.prec})" if self.prec is not None else ""
        return "(" + (" + ".join(terms) or "0") + tail + ")"
