"""Equal-characteristic local fields F = F_q((t)) and their quadratic extensions.

Every field here is a Laurent series field k((s)) over its residue field k,
so F and each quadratic extension E share one representation:

* unramified E: k_E = F_{q^2}, s = t
* ramified E:   k_E = F_q,     s^2 = eps t  (eps = 1 or the smallest nonsquare)

Characters are trivial on U^(D+1) for a stated depth D and are stored by their
values on generators: the uniformizer s, a generator of k^x, and the basis
1 + b s^i (p not dividing i, b in an F_p-basis of k) of U^1/U^(D+1).  In
characteristic p that basis is free: 1 + b s^i has order p^k(i) with k(i)
the number of p-powers p^e with i p^e <= D.

Character values are kept as exponents in Q/Z (Fractions in [0, 1)); the
uniformizer value may instead be any nonzero CyclotomicInt, which is how the
correction character with value -q at s is represented.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import ConfigurationError, PrecisionError
from .exact_values import CyclotomicInt
from .finite_field import FiniteField, gf, prime_power, embedding, AdditiveCharacter, MultiplicativeCharacter, gauss_sum
from .series import LaurentSeries

KINDS = ("unramified", "ramified1", "ramified2")


def _frac(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def root_of_unity(x: Fraction) -> CyclotomicInt:
    x = _frac(x)
    return CyclotomicInt.zeta(x.denominator, x.numerator)


class LocalField:
    """k((s)) with its unit-group coordinates."""

    def __init__(self, residue: FiniteField, name: str = "F"):
        self.k = residue
        self.name = name

    @property
    def p(self):
        return self.k.p

    @property
    def residue_order(self):
        return self.k.q

    def series(self, coeffs, start=0, prec=None) -> LaurentSeries:
        return LaurentSeries(self.k, coeffs, start, prec)

    def uniformizer(self) -> LaurentSeries:
        return LaurentSeries.variable(self.k)

    def one_plus(self, b: int, i: int) -> LaurentSeries:
        return LaurentSeries(self.k, [1] + [0] * (i - 1) + [b], 0)

    @lru_cache(maxsize=None)
    def unit_basis(self, D: int) -> tuple:
        """((i, b, k(i)), ...) for the basis 1 + b s^i of U^1/U^(D+1)."""
        p = self.p
        out = []
        for i in range(1, D + 1):
            if i % p == 0:
                continue
            e, x = 0, i
            while x <= D:
                e += 1
                x *= p
            for l in range(self.k.k):
                out.append((i, p**l, e))
        return tuple(out)

    def group_order(self, D: int) -> int:
        """|O^x / U^(D+1)|."""
        return (self.k.q - 1) * self.k.q**D

    def decompose(self, x: LaurentSeries, D: int):
        """(v, zeta, exps) with x = s^v zeta prod(basis^exps) mod U^(D+1)."""
        F = self.k
        v = x.valuation()
        need = v + D + 1
        if x.prec is not None and x.prec < need:
            raise PrecisionError(f"element known to s^{x.prec}, need s^{need}")
        u = x.shift(-v).truncate(D + 1)
        zeta = u.coeff(0)
        u = u.scale(F.inv(zeta))
        return v, zeta, self.unit_log(u, D)

    def unit_log(self, u: LaurentSeries, D: int) -> tuple:
        F, p = self.k, self.p
        basis = self.unit_basis(D)
        index = {(i, b): n for n, (i, b, _) in enumerate(basis)}
        exps = [0] * len(basis)
        u = u.truncate(D + 1)
        if u.coeff(0) != 1:
            raise ConfigurationError("not a principal unit")
        for j in range(1, D + 1):
            c = u.coeff(j)
            if c == 0:
                continue
            i, e = j, 0
            while i % p == 0:
                i //= p
                e += 1
            root = F.frobenius(c, -e % F.k) if F.k > 1 else c
            ds = F.digits(root)
            corr = LaurentSeries.constant(F, 1, D + 1)
            for l, d in enumerate(ds):
                if d:
                    exps[index[(i, p**l)]] += d * p**e
                    corr = corr * self.one_plus(F.frobenius(p**l, e) if F.k > 1 else p**l, j).truncate(D + 1) ** d
            u = (u * corr.inverse()).truncate(D + 1)
        return tuple(x % p**k for x, (_, _, k) in zip(exps, basis))

    def principal_units(self, D: int):
        """All of U^1/U^(D+1) as truncated series."""
        F = self.k
        for cs in product(range(F.q), repeat=D):
            yield LaurentSeries(F, [1] + list(cs), 0, D + 1)

    def units(self, D: int):
        F = self.k
        for z in range(1, F.q):
            for cs in product(range(F.q), repeat=D):
                yield LaurentSeries(F, [z] + list(cs), 0, D + 1)

    def __repr__(self):
        return f"{self.name}={self.k.tag}((s))"


class LocalCharacter:
    """A character of K^x trivial on U^(D+1), stored by generator values."""

    __slots__ = ("field", "depth", "pi", "theta", "u1")

    def __init__(self, field: LocalField, depth: int, pi, theta, u1):
        self.field = field
        self.depth = depth
        self.pi = pi if isinstance(pi, CyclotomicInt) else _frac(pi)
        self.theta = _frac(theta)          # value exponent at the generator of k^x
        basis = field.unit_basis(depth)
        self.u1 = tuple(_frac(x) for x in u1)
        if len(self.u1) != len(basis):
            raise ConfigurationError("wrong number of principal-unit values")
        n = field.k.q - 1
        if (self.theta * n).denominator != 1:
            raise ConfigurationError("value on k^x must have order dividing q_K - 1")
        for x, (_, _, k) in zip(self.u1, basis):
            if (x * p_pow(field.p, k)).denominator != 1:
                raise ConfigurationError("principal-unit value of wrong order")

    @classmethod
    def trivial(cls, field, depth):
        return cls(field, depth, 0, 0, [0] * len(field.unit_basis(depth)))

    @classmethod
    def from_function(cls, field, depth, f, pi=None):
        """Build from a function returning Q/Z exponents on units; pi taken from f(s) unless given."""
        g = field.k.generator
        theta = f(LaurentSeries.constant(field.k, g))
        u1 = [f(field.one_plus(b, i)) for i, b, _ in field.unit_basis(depth)]
        if pi is None:
            pi = f(field.uniformizer())
        return cls(field, depth, pi, theta, u1)

    def unit_exponent(self, u: LaurentSeries) -> Fraction:
        v, zeta, exps = self.field.decompose(u, self.depth)
        if v != 0:
            raise ConfigurationError("not a unit")
        return self._unit(zeta, exps)

    def _unit(self, zeta, exps):
        acc = self.theta * self.field.k.log(zeta)
        for x, e in zip(self.u1, exps):
            acc += x * e
        return _frac(acc)

    def exponent(self, x: LaurentSeries) -> Fraction:
        if isinstance(self.pi, CyclotomicInt):
            raise ConfigurationError("uniformizer value is not a root of unity")
        v, zeta, exps = self.field.decompose(x, self.depth)
        return _frac(self.pi * v + self._unit(zeta, exps))

    def __call__(self, x: LaurentSeries) -> CyclotomicInt:
        v, zeta, exps = self.field.decompose(x, self.depth)
        unit = root_of_unity(self._unit(zeta, exps))
        if isinstance(self.pi, CyclotomicInt):
            if v < 0:
                raise ConfigurationError("negative power of a non-unit uniformizer value")
            return unit * self.pi**v
        return unit * root_of_unity(self.pi * v)

    def __mul__(self, other):
        if self.field is not other.field or self.depth != other.depth:
            raise ConfigurationError("characters live on different groups")
        if isinstance(self.pi, CyclotomicInt) or isinstance(other.pi, CyclotomicInt):
            a = self.pi if isinstance(self.pi, CyclotomicInt) else root_of_unity(self.pi)
            b = other.pi if isinstance(other.pi, CyclotomicInt) else root_of_unity(other.pi)
            pi = a * b
        else:
            pi = self.pi + other.pi
        return LocalCharacter(self.field, self.depth, pi, self.theta + other.theta,
                              [a + b for a, b in zip(self.u1, other.u1)])

    def inverse(self):
        if isinstance(self.pi, CyclotomicInt):
            raise ConfigurationError("inverse needs a root-of-unity uniformizer value")
        return LocalCharacter(self.field, self.depth, -self.pi, -self.theta, [-x for x in self.u1])

    def unit_key(self) -> tuple:
        return (self.theta, self.u1)

    def restrict_depth(self, D: int) -> "LocalCharacter":
        """The same character on a deeper/shallower quotient (must be trivial on U^(D+1))."""
        return LocalCharacter.from_function(self.field, D, lambda u: self.unit_exponent(u.truncate(self.depth + 1)),
                                            pi=self.pi)

    def __eq__(self, other):
        return (isinstance(other, LocalCharacter) and self.field is other.field and self.depth == other.depth
                and self.pi == other.pi and self.unit_key() == other.unit_key())

    def __hash__(self):
        return hash((self.depth, self.theta, self.u1))

    def to_json(self) -> dict:
        pi = self.pi.to_json() if isinstance(self.pi, CyclotomicInt) else str(self.pi)
        return {"field": repr(self.field), "depth": self.depth, "pi": pi, "theta": str(self.theta),
                "principal_units": [str(x) for x in self.u1]}

    def __repr__(self):
        return f"LocalCharacter(depth={self.depth}, pi={self.pi}, theta={self.theta}, u1={[str(x) for x in self.u1]})"


def p_pow(p, k):
    return p**k


def level(chi: LocalCharacter) -> int:
    """Least m with chi trivial on U^(m+1); 0 when chi is trivial on U^1."""
    K, D = chi.field, chi.depth
    for j in range(D, 0, -1):
        for b in range(1, K.k.q):
            if chi.unit_exponent(K.one_plus(b, j).truncate(D + 1)) != 0:
                return j
    return 0


def characters(field: LocalField, D: int, pi=0, theta=None):
    """All characters of O^x/U^(D+1) (or with fixed theta exponent), with the given value at s."""
    basis = field.unit_basis(D)
    n = field.k.q - 1
    thetas = [Fraction(e, n) for e in range(n)] if theta is None else [_frac(theta)]
    ranges = [range(field.p**k) for _, _, k in basis]
    for th in thetas:
        for cs in product(*ranges):
            yield LocalCharacter(field, D, pi, th, [Fraction(c, field.p**k) for c, (_, _, k) in zip(cs, basis)])


def principal_characters(field: LocalField, D: int):
    """Characters of U^1/U^(D+1), extended trivially to k^x and s."""
    return characters(field, D, 0, 0)


# the base field and its quadratic extensions

class QuadraticExtension:
    def __init__(self, q: int, kind: str):
        if kind not in KINDS:
            raise ConfigurationError(f"unknown extension kind {kind!r}; use one of {KINDS}")
        p, r = prime_power(q)
        if p == 2:
            raise ConfigurationError("odd residue characteristic only")
        self.q, self.kind = q, kind
        kF = gf(p, r)
        self.F = LocalField(kF, "F")
        if kind == "unramified":
            self.e, self.f = 1, 2
            kE = gf(p, 2 * r)
            self.eps = None
            self._emb = embedding(kF, kE)
            self._back = {self._emb(x): x for x in range(kF.q)}
        else:
            self.e, self.f = 2, 1
            kE = kF
            self.eps = 1 if kind == "ramified1" else kF.nonsquare()
            self._emb = lambda x: x
            self._back = None
        self.E = LocalField(kE, "E")

    @property
    def ramified(self) -> bool:
        return self.e == 2

    def __repr__(self):
        return f"QuadraticExtension(q={self.q}, {self.kind})"

    def to_json(self) -> dict:
        return {"q": self.q, "kind": self.kind, "e": self.e, "f": self.f, "eps": self.eps,
                "uniformizer": "s = t" if not self.ramified else f"s^2 = {self.eps} t"}

    # maps between F and E

    def embed(self, x: LaurentSeries) -> LaurentSeries:
        kE = self.E.k
        if not self.ramified:
            return LaurentSeries(kE, [self._emb(c) for c in x.coeffs], x.start, x.prec)
        # t = s^2 / eps
        ie = kE.inv(self.eps)
        out = {}
        for n, c in enumerate(x.coeffs):
            i = x.start + n
            out[2 * i] = kE.mul(c, kE.pow(ie, i) if i >= 0 else kE.pow(self.eps, -i))
        return _from_dict(kE, out, None if x.prec is None else 2 * x.prec)

    def sigma(self, x: LaurentSeries) -> LaurentSeries:
        kE = self.E.k
        if not self.ramified:
            return x.map_coeffs(lambda c: kE.pow(c, self.q))
        return LaurentSeries(kE, [c if (x.start + n) % 2 == 0 else kE.neg(c) for n, c in enumerate(x.coeffs)],
                             x.start, x.prec)

    def _descend(self, y: LaurentSeries) -> LaurentSeries:
        # y is sigma-invariant; write it in F
        kF = self.F.k
        if not self.ramified:
            try:
                cs = [self._back[c] for c in y.coeffs]
            except KeyError:
                raise ArithmeticError("element is not in F")
            return LaurentSeries(kF, cs, y.start, y.prec)
        out = {}
        for n, c in enumerate(y.coeffs):
            i = y.start + n
            if c == 0:
                continue
            if i % 2:
                raise ArithmeticError("element is not in F")
            j = i // 2
            out[j] = kF.mul(c, kF.pow(self.eps, j) if j >= 0 else kF.pow(kF.inv(self.eps), -j))
        prec = None if y.prec is None else (y.prec + 1) // 2
        return _from_dict(kF, out, prec)

    def norm(self, x: LaurentSeries) -> LaurentSeries:
        return self._descend(x * self.sigma(x))

    def trace(self, x: LaurentSeries) -> LaurentSeries:
        return self._descend(x + self.sigma(x))

    def norm_of_uniformizer(self) -> LaurentSeries:
        return self.norm(self.E.uniformizer())

    # characters and the level-zero additive character

    def psi_F(self, x: LaurentSeries) -> Fraction:
        """Tr_{k/F_p}(constant coefficient) / p."""
        kF = self.F.k
        if x.prec is not None and x.prec <= 0:
            raise PrecisionError("constant coefficient unknown")
        return Fraction(kF.absolute_trace(x.coeff(0)), kF.p)

    def psi_E(self, x: LaurentSeries) -> Fraction:
        return self.psi_F(self.trace(x))

    def pullback(self, omega: LocalCharacter, D: int = None) -> LocalCharacter:
        """omega o N_{E/F} as a character of E^x."""
        D = omega.depth if D is None else D
        Dn = omega.depth

        def f(u):
            return omega.unit_exponent(self.norm(u).truncate(Dn + 1))
        if isinstance(omega.pi, CyclotomicInt):
            raise ConfigurationError("pullback needs a root-of-unity uniformizer value")
        pi = omega.exponent(self.norm_of_uniformizer().truncate(Dn + 2 * self.f + 2))
        return LocalCharacter.from_function(self.E, D, f, pi=pi)

    def conjugate(self, chi: LocalCharacter) -> LocalCharacter:
        """chi o sigma."""
        D = chi.depth
        if isinstance(chi.pi, CyclotomicInt):
            raise ConfigurationError("conjugate needs a root-of-unity uniformizer value")
        return LocalCharacter.from_function(self.E, D, lambda u: chi.exponent(self.sigma(u)),
                                            pi=chi.exponent(self.sigma(self.E.uniformizer()).truncate(D + 2)))

    def character_from_residue(self, theta_exponent: int, depth: int = 0, pi=0) -> LocalCharacter:
        n = self.E.k.q - 1
        return LocalCharacter(self.E, depth, pi, Fraction(theta_exponent, n), [0] * len(self.E.unit_basis(depth)))


def _from_dict(k, d, prec):
    if not d:
        return LaurentSeries(k, [], 0, prec)
    lo, hi = min(d), max(d)
    return LaurentSeries(k, [d.get(i, 0) for i in range(lo, hi + 1)], lo, prec)


@lru_cache(maxsize=None)
def extension(q: int, kind: str) -> QuadraticExtension:
    return QuadraticExtension(q, kind)


def kappa_char(ext: QuadraticExtension, depth: int = 0) -> LocalCharacter:
    """The quadratic character of F^x with kernel N_{E/F}(E^x)."""
    F = ext.F
    n = F.k.q - 1
    zero = [0] * len(F.unit_basis(depth))
    if not ext.ramified:
        return LocalCharacter(F, depth, Fraction(1, 2), 0, zero)
    # kappa(-eps t) = 1 since -eps t is the norm of s
    kF = F.k
    minus_eps = kF.neg(ext.eps)
    pi = Fraction(0) if kF.is_square(minus_eps) else Fraction(1, 2)
    return LocalCharacter(F, depth, pi, Fraction(1, 2), zero)


def norm_subgroup(ext: QuadraticExtension, D: int) -> set:
    """Image of N_{E/F} on O_E^x / U^(D+1), as (zeta, exps) tuples in F."""
    out = set()
    for u in ext.E.units(D if ext.ramified is False else 2 * D):
        v, z, e = ext.F.decompose(ext.norm(u).truncate(D + 1), D)
        out.add((z, e))
    return out


# levels, twists, admissibility

def twist_depth(ext: QuadraticExtension, D: int) -> int:
    """Largest depth of omega with omega o N trivial on U_E^(D+1)."""
    return D // 2 if ext.ramified else D


def base_twists(ext: QuadraticExtension, D: int):
    """omega o N for omega ranging over characters of U_F^1/U_F^(d+1), d = twist_depth."""
    for omega in principal_characters(ext.F, twist_depth(ext, D)):
        yield ext.pullback(omega, D)


def essential_level(chi: LocalCharacter, ext: QuadraticExtension) -> int:
    best = level(chi)
    if best == 0:
        return 0
    for tw in base_twists(ext, chi.depth):
        best = min(best, level(chi * tw))
        if best == 0:
            break
    return best


def essential_twist(chi: LocalCharacter, ext: QuadraticExtension) -> LocalCharacter:
    """A twist chi (omega o N) of minimal level."""
    best, arg = level(chi), chi
    for tw in base_twists(ext, chi.depth):
        c = chi * tw
        lv = level(c)
        if lv < best:
            best, arg = lv, c
    return arg


def _units_fixed_by_sigma(chi, ext, principal_only):
    E, D = ext.E, chi.depth
    gens = [E.one_plus(b, i).truncate(D + 1) for i, b, _ in E.unit_basis(D)]
    if not principal_only:
        gens.append(LaurentSeries.constant(E.k, E.k.generator, D + 1))
    return all(chi.unit_exponent(g) == chi.unit_exponent(ext.sigma(g)) for g in gens)


def factors_through_norm(chi: LocalCharacter, ext: QuadraticExtension, principal_only: bool = False) -> bool:
    """Whether chi (or chi on U_E^1) is omega o N_{E/F}.

    For cyclic E/F the kernel of the norm is {x / sigma(x)}, so this is
    sigma-invariance; on U_E^1 the same holds with x in U_E^1.  The value at
    the uniformizer never obstructs since roots of unity have roots.
    For the ramified kinds sigma(s) = -s adds the condition chi(-1) = 1.
    """
    if not _units_fixed_by_sigma(chi, ext, principal_only):
        return False
    if not principal_only and ext.ramified:
        return chi.unit_exponent(LaurentSeries.constant(ext.E.k, ext.E.k.neg(1), chi.depth + 1)) == 0
    return True


def factors_through_norm_bruteforce(chi: LocalCharacter, ext: QuadraticExtension, principal_only=False) -> bool:
    """Search over characters omega of O_F^x/U_F^(D+1) for chi = omega o N on units."""
    D = chi.depth
    F = ext.F
    Dn = twist_depth(ext, D)
    E = ext.E
    gens = [E.one_plus(b, i) for i, b, _ in E.unit_basis(D)]
    if not principal_only:
        gens.append(LaurentSeries.constant(E.k, E.k.generator))
    targets = [chi.unit_exponent(g.truncate(D + 1)) for g in gens]
    norms = [ext.norm(g).truncate(Dn + 1) for g in gens]
    pool = principal_characters(F, Dn) if principal_only else characters(F, Dn)
    for omega in pool:
        if all(omega.unit_exponent(nm) == t for nm, t in zip(norms, targets)):
            return True
    return False


def is_admissible(chi: LocalCharacter, ext: QuadraticExtension) -> bool:
    if factors_through_norm(chi, ext):
        return False
    if ext.ramified and factors_through_norm(chi, ext, principal_only=True):
        return False
    return True


# minimal elements and the families X_alpha, Y_alpha

def valuation_E(alpha: LaurentSeries) -> int:
    return alpha.valuation()


def is_minimal(alpha: LaurentSeries, ext: QuadraticExtension) -> bool:
    v = alpha.valuation()
    if v >= 0:
        raise ConfigurationError("minimal elements have negative valuation")
    m = -v
    if ext.ramified:
        return m % 2 == 1
    # t^m alpha is a unit; its reduction must generate k_E over k
    lead = alpha.leading()
    return ext.E.k.pow(lead, ext.q) != lead


def minimal_representatives(ext: QuadraticExtension, m: int) -> list:
    """Representatives of minimal classes in p_E^-m/(p_F^-m + p_E^(1-m)), as s^-m series."""
    kE = ext.E.k
    if m <= 0:
        raise ConfigurationError("m must be positive")
    if ext.ramified:
        if m % 2 == 0:
            return []
        return [LaurentSeries(kE, [z], -m) for z in range(1, kE.q)]
    # residues in k_E modulo the additive subgroup k
    kF_in = sorted(ext._back)
    seen, reps = set(), []
    for z in range(kE.q):
        if z in seen:
            continue
        coset = {kE.add(z, c) for c in kF_in}
        seen |= coset
        if 0 in coset:
            continue
        reps.append(LaurentSeries(kE, [min(coset)], -m))
    return reps


def _agrees(chi, ext, alpha, lo, hi):
    E, D = ext.E, chi.depth
    for j in range(lo, max(hi, D) + 1):
        for b in range(1, E.k.q):
            x = LaurentSeries(E.k, [b], j, D + 1 + j)
            lhs = chi.unit_exponent((LaurentSeries.constant(E.k, 1) + x).truncate(D + 1))
            rhs = ext.psi_E(alpha * x) if j <= hi else Fraction(0)
            if lhs != _frac(rhs):
                return False
    return True


def _family(chi, ext, alpha, lo):
    m = -alpha.valuation()
    if chi.depth < m:
        raise ConfigurationError(f"character depth {chi.depth} is below level {m}")
    chi = chi if chi.depth == m else chi
    for tw in [LocalCharacter.trivial(ext.E, chi.depth)] + list(base_twists(ext, chi.depth)):
        if _agrees(chi * tw, ext, alpha, lo, m):
            return True
    return False


def in_X_alpha(chi: LocalCharacter, alpha: LaurentSeries, ext: QuadraticExtension) -> bool:
    """Some twist chi (omega o N) has level m and equals psi_E(alpha x) on 1 + p_E^(floor(m/2)+1)."""
    m = -alpha.valuation()
    return _family(chi, ext, alpha, m // 2 + 1)


def in_Y_alpha(chi: LocalCharacter, alpha: LaurentSeries, ext: QuadraticExtension) -> bool:
    """Some twist chi (omega o N) has level m and equals psi_E(alpha x) on 1 + p_E^m."""
    m = -alpha.valuation()
    return _family(chi, ext, alpha, m)


def in_X_theta(chi: LocalCharacter, theta_exponent: int, ext: QuadraticExtension) -> bool:
    """chi is trivial on U^1 up to twist and agrees with theta o N-twists on k_E^x."""
    if essential_level(chi, ext) != 0:
        return False
    kE = ext.E.k
    n = kE.q - 1
    g = LaurentSeries.constant(kE, kE.generator, chi.depth + 1)
    target = chi.unit_exponent(g) - Fraction(theta_exponent, n)
    # theta' theta^-1 must be omega o N on k_E^x: values on g of such are multiples of (q+1)/n
    nF = ext.F.k.q - 1
    step = Fraction(1, nF) if not ext.ramified else Fraction(2, n)
    return (_frac(target) / step).denominator == 1


def character_from_alpha(alpha: LaurentSeries, ext: QuadraticExtension, depth: int = None,
                         theta_exponent: int = 0) -> LocalCharacter:
    """A character of level m with chi(1+x) = psi_E(alpha x) on 1 + p_E^(floor(m/2)+1).

    Found by exhaustive search over characters of U_E^1/U_E^(m+1), which is
    fine at the depths in scope.
    """
    m = -alpha.valuation()
    D = m if depth is None else depth
    E = ext.E
    lo = m // 2 + 1
    for c in principal_characters(E, D):
        if _agrees(c, ext, alpha, lo, m):
            n = E.k.q - 1
            return LocalCharacter(E, D, 0, Fraction(theta_exponent, n), c.u1)
    raise ArithmeticError("no character matches")


# the correction character

def gauss_sum_kappa(q: int) -> CyclotomicInt:
    """tau(kappa, psi) over the residue field, with psi(a) = zeta_p^Tr(a)."""
    p, r = prime_power(q)
    k = gf(p, r)
    return gauss_sum(MultiplicativeCharacter.quadratic(k), AdditiveCharacter(k, 1))


def quadratic_symbol(q: int, a: int) -> int:
    p, r = prime_power(q)
    return gf(p, r).quadratic_character(a)


def delta_varpi_ramified(q: int, m: int, zeta: int) -> CyclotomicInt:
    """kappa(zeta) tau^m q^((1-m)/2), rewritten with tau^2 = kappa(-1) q."""
    if m % 2 == 0:
        raise ConfigurationError("ramified correction needs odd m")
    tau = gauss_sum_kappa(q)
    p, r = prime_power(q)
    k = gf(p, r)
    sign = k.quadratic_character(zeta) * k.quadratic_character(k.neg(1)) ** ((m - 1) // 2)
    return tau * sign


@dataclass
class DeltaData:
    ext: str
    q: int
    m: int
    zeta: int
    character: LocalCharacter
    varpi_value: CyclotomicInt
    reading: str

    def to_json(self) -> dict:
        return {"extension": self.ext, "q": self.q, "m": self.m, "zeta": self.zeta,
                "delta_varpi": self.varpi_value.to_json(), "reading": self.reading,
                "character": self.character.to_json()}


UNIT_READING = "Delta(u) = (u mod p_E / q) on units, trivial on U_E^1"


def delta_char(ext: QuadraticExtension, m: int, zeta: int = 1, depth: int = None) -> DeltaData:
    """The correction character attached to level m and leading coefficient zeta of alpha s^m."""
    D = m if depth is None else depth
    E = ext.E
    zero = [0] * len(E.unit_basis(D))
    if not ext.ramified:
        val = CyclotomicInt.from_int(-ext.q)
        chi = LocalCharacter(E, D, val, 0, zero)
        return DeltaData(ext.kind, ext.q, m, zeta, chi, val, "unramified, value -q at s")
    if m % 2 == 0:
        raise ConfigurationError("ramified correction needs odd m")
    val = delta_varpi_ramified(ext.q, m, zeta)
    chi = LocalCharacter(E, D, val, Fraction(1, 2), zero)
    return DeltaData(ext.kind, ext.q, m, zeta, chi, val, UNIT_READING)


def delta_for(chi: LocalCharacter, alpha: LaurentSeries, ext: QuadraticExtension) -> DeltaData:
    """delta_char after checking admissibility and chi in Y_alpha."""
    if not is_admissible(chi, ext):
        raise ConfigurationError("character is not admissible")
    if not in_Y_alpha(chi, alpha, ext):
        raise ConfigurationError("character is not in Y_alpha")
    return delta_char(ext, -alpha.valuation(), alpha.leading(), chi.depth)


def check_delta_on_units(ext: QuadraticExtension, m: int, zeta: int = 1) -> bool:
    """Delta|_{U_F} = kappa|_{U_F} on every element of U_F/U_F^(m+1)."""
    data = delta_char(ext, m, zeta, depth=ext.e * m)
    kap = kappa_char(ext, m)
    for u in ext.F.units(m):
        if data.character.unit_exponent(ext.embed(u).truncate(ext.e * m + 1)) != kap.unit_exponent(u):
            return False
    return True


# classification of admissible characters

@dataclass
class Classification:
    q: int
    kind: str
    depth: int
    total: int
    admissible: int
    by_level: dict
    unique_Y: bool
    conjugate_excluded: bool
    exceptions: list

    def to_json(self) -> dict:
        return {"q": self.q, "extension": self.kind, "depth": self.depth, "characters": self.total,
                "admissible": self.admissible,
                "by_essential_level": {str(k): v for k, v in sorted(self.by_level.items())},
                "unique_Y_alpha": self.unique_Y, "conjugate_excluded": self.conjugate_excluded,
                "exceptions": self.exceptions[:10]}


def classify(q: int, kind: str, depth: int) -> Classification:
    """Admissible characters of O_E^x/U_E^(depth+1) sorted by essential level and Y_alpha class."""
    ext = extension(q, kind)
    E = ext.E
    reps = {m: minimal_representatives(ext, m) for m in range(1, depth + 1)}
    total = adm = 0
    by_level = {}
    unique, conj_ok = True, True
    exceptions = []
    for chi in characters(E, depth):
        total += 1
        if not is_admissible(chi, ext):
            continue
        adm += 1
        m = essential_level(chi, ext)
        entry = by_level.setdefault(m, {"count": 0, "classes": {}})
        entry["count"] += 1
        if m == 0:
            continue
        hits = [a for a in reps[m] if in_Y_alpha(chi, a, ext)]
        key = ",".join(str(a.leading()) for a in hits) or "none"
        entry["classes"][key] = entry["classes"].get(key, 0) + 1
        if len(hits) != 1:
            unique = False
            exceptions.append({"character": chi.to_json(), "classes": key})
            continue
        if in_Y_alpha(ext.conjugate(chi), hits[0], ext):
            conj_ok = False
            exceptions.append({"character": chi.to_json(), "conjugate_in_same_class": True})
    return Classification(q, kind, depth, total, adm, by_level, unique, conj_ok, exceptions)
