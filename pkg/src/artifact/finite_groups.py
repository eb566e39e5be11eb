"""Explicit finite groups acting on the curves, and exact class functions.

Groups are enumerated completely.  Elements are tuples of encoded field
elements; the class ordering is by the smallest element of each class.
Only the characters the decomposition checks need are constructed: the H^1
character from Lefschetz numbers, isotypic projections, and closed-form
cuspidal characters of GL_2(F_q).
"""

from collections import deque
from dataclasses import dataclass
from math import gcd

from .errors import check_budget, ConfigurationError
from .exact_values import CyclotomicInt, cyc_sum
from .finite_field import gf, prime_power, embedding, AdditiveCharacter, MultiplicativeCharacter
from . import curves


class FiniteGroup:
    def __init__(self, name, q, elements, mul, inv, identity, describe=None):
        check_budget("group_order", len(elements))
        self.name = name
        self.q = q
        self.elements = sorted(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ConfigurationError("duplicate element encodings")
        self._mul = mul
        self._inv = inv
        self.identity = identity
        self.describe = describe or (lambda g: list(g))
        self._classes = None
        self._class_of = None
        self._gens = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a, b):
        return self._mul(a, b)

    def inv(self, a):
        return self._inv(a)

    def conj(self, g, h):
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def verify(self, exhaustive_limit: int = 400) -> bool:
        """Closure, identity and inverses; associativity on a sample of triples."""
        S = self.index
        if self.identity not in S:
            return False
        gens = self.generators()
        for g in self.elements:
            if self.mul(g, self.identity) != g or self.mul(self.identity, g) != g:
                return False
            if self.mul(g, self.inv(g)) != self.identity or self.inv(g) not in S:
                return False
            for h in gens:
                if self.mul(g, h) not in S:
                    return False
        sample = self.elements if self.order <= exhaustive_limit // 20 else self.elements[:: max(1, self.order // 20)]
        for a in sample:
            for b in gens:
                for c in gens:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        return False
        return True

    def generated_by(self, gens) -> set:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def generators(self) -> list:
        """Greedy generating set: repeatedly add the smallest element not yet generated."""
        if self._gens is None:
            gens, span = [], {self.identity}
            for g in self.elements:
                if g not in span:
                    gens.append(g)
                    span = self.generated_by(gens)
                    if len(span) == self.order:
                        break
            if len(span) != self.order:
                raise ConfigurationError("element list is not closed")
            self._gens = gens
        return self._gens

    def conjugacy_classes(self) -> list:
        if self._classes is None:
            gens = self.generators()
            seen = set()
            classes = []
            for g in self.elements:
                if g in seen:
                    continue
                orb = {g}
                queue = deque([g])
                while queue:
                    x = queue.popleft()
                    for h in gens:
                        y = self.conj(x, h)
                        if y not in orb:
                            orb.add(y)
                            queue.append(y)
                seen |= orb
                classes.append(sorted(orb))
            classes.sort(key=lambda c: c[0])
            self._classes = classes
        return self._classes

    def class_of(self) -> dict:
        if self._class_of is None:
            self._class_of = {g: i for i, c in enumerate(self.conjugacy_classes()) for g in c}
        return self._class_of

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def element_order(self, g) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    def to_json(self) -> dict:
        cls = self.conjugacy_classes()
        return {"name": self.name, "q": self.q, "order": self.order, "classes": len(cls),
                "class_sizes": [len(c) for c in cls],
                "representatives": [self.describe(c[0]) for c in cls]}

    def __repr__(self):
        return f"{self.name}(q={self.q}, order={self.order})"


# class functions

class ClassFunction:
    def __init__(self, group: FiniteGroup, values, name: str = ""):
        self.group = group
        self.values = tuple(v if isinstance(v, CyclotomicInt) else CyclotomicInt.from_int(v) for v in values)
        self.name = name
        if len(self.values) != len(group.conjugacy_classes()):
            raise ConfigurationError("one value per conjugacy class is required")

    @classmethod
    def from_function(cls, group, f, name=""):
        return cls(group, [f(c[0]) for c in group.conjugacy_classes()], name)

    @classmethod
    def trivial(cls, group):
        return cls(group, [1] * len(group.conjugacy_classes()), "trivial")

    @classmethod
    def regular(cls, group):
        return cls(group, [group.order if c[0] == group.identity else 0 for c in group.conjugacy_classes()], "regular")

    def __call__(self, g):
        return self.values[self.group.class_of()[g]]

    def degree(self) -> CyclotomicInt:
        return self.values[self.group.class_of()[self.group.identity]]

    def __add__(self, other):
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        c = c if isinstance(c, CyclotomicInt) else CyclotomicInt.from_int(c)
        return ClassFunction(self.group, [c * v for v in self.values])

    def __mul__(self, other):
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])

    def is_zero(self) -> bool:
        return all(not v for v in self.values)

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and self.group is other.group and self.values == other.values

    def to_json(self) -> dict:
        return {"name": self.name, "values": [v.to_json() for v in self.values]}


def inner_product(f: ClassFunction, g: ClassFunction, strict: bool = False):
    """(1/|G|) sum |C| f(C) conj(g(C)); None (or ArithmeticError if strict) when inexact."""
    if f.group is not g.group:
        raise ConfigurationError("class functions on different groups")
    G = f.group
    total = cyc_sum(CyclotomicInt.from_int(len(c)) * a * b.conjugate()
                    for c, a, b in zip(G.conjugacy_classes(), f.values, g.values))
    if not total.divisible_by(G.order):
        if strict:
            raise ArithmeticError("inner product is not an algebraic integer multiple of 1/|G|")
        return None
    return total.exact_div(G.order)


@dataclass
class Decomposition:
    multiplicities: list
    residual_zero: bool
    valid: bool
    notes: list

    def to_json(self) -> dict:
        return {"multiplicities": self.multiplicities, "residual_zero": self.residual_zero,
                "valid": self.valid, "notes": self.notes}


def isotypic_decomposition(chi: ClassFunction, candidates: list) -> Decomposition:
    """Multiplicities <chi, c> for each candidate and whether chi - sum m c vanishes."""
    mults, notes = [], []
    residual = chi
    valid = True
    for c in candidates:
        m = inner_product(chi, c)
        if m is None or not m.is_integer():
            valid = False
            notes.append(f"non-integer multiplicity for {c.name or 'candidate'}")
            mults.append(None)
            continue
        k = m.to_int()
        if k < 0:
            valid = False
            notes.append(f"negative multiplicity for {c.name or 'candidate'}")
        mults.append(k)
        if k:
            residual = residual - c.scale(k)
    return Decomposition(mults, residual.is_zero(), valid, notes)


# group actions on curves

@dataclass
class GroupAction:
    group: FiniteGroup
    model: curves.PlaneCurveModel
    to_aut: object          # element -> CurveAutomorphism

    def automorphism(self, g):
        return self.to_aut(g)

    def verify_homomorphism(self, k=None) -> bool:
        """act(g h) = act(g) act(h) on points, for generators g, h."""
        gens = self.group.generators()
        model = self.model
        F = self.to_aut(self.group.identity).field
        ext = 2 if model.family != "DeligneLusztig" else 4
        L = gf(F.p, curves._lcm(F.k, ext * model.r))
        pts = curves.enumerate_points(model, L.k // model.r)
        pts = pts[:: max(1, len(pts) // 40)]
        for a in gens:
            for b in gens:
                ab = self.to_aut(self.group.mul(a, b))
                A, B = self.to_aut(a), self.to_aut(b)
                for P in pts:
                    if ab.apply(P, L) != A.apply(B.apply(P, L), L):
                        return False
        return True

    def kernel(self) -> list:
        out = []
        for g in self.group.elements:
            aut = self.to_aut(g)
            if aut.is_identity() or _acts_trivially(aut):
                out.append(g)
        return out


def _acts_trivially(aut) -> bool:
    if aut.kind == "hyperelliptic":
        return aut.data == (1, 0, 1)
    M = aut.data
    n = len(M)
    d = M[0][0]
    return d != 0 and all(M[i][j] == (d if i == j else 0) for i in range(n) for j in range(n))


def h1_character(action: GroupAction) -> ClassFunction:
    """g -> tr(g | H^1) by the Lefschetz formula on class representatives."""
    G = action.group
    two_g = 2 * action.model.genus
    vals = []
    for c in G.conjugacy_classes():
        g = c[0]
        aut = action.to_aut(g)
        if _acts_trivially(aut):
            vals.append(CyclotomicInt.from_int(two_g))
        else:
            vals.append(curves.h1_trace(aut))
    return ClassFunction(G, vals, f"H1({action.model.family})")


def check_class_function(action: GroupAction, chi: ClassFunction, limit: int = None) -> bool:
    """h1 trace is constant on each class (all elements, or the first `limit` per class)."""
    two_g = 2 * action.model.genus
    for c, v in zip(action.group.conjugacy_classes(), chi.values):
        for g in (c if limit is None else c[:limit]):
            aut = action.to_aut(g)
            val = CyclotomicInt.from_int(two_g) if _acts_trivially(aut) else curves.h1_trace(aut)
            if val != v:
                return False
    return True


# the unitary groups Q and Q^1 acting on the Hermitian curve

def _q_field(q):
    p, r = prime_power(q)
    return gf(p, 2 * r)


def _normalize_q(F2, q, a, b, c):
    # scale by F_q^x so that log(alpha) lies in [0, q+1)
    lg = F2.log(a)
    k = lg // (q + 1)
    if k:
        s = F2.exp(-(q + 1) * k)
        a, b, c = F2.mul(s, a), F2.mul(s, b), F2.mul(s, c)
    return (a, b, c)


def _q_group(q: int, unitary: bool) -> FiniteGroup:
    if prime_power(q)[0] == 2:
        raise ConfigurationError("odd q only")
    F2 = _q_field(q)
    n = F2.q
    alphas = [F2.exp(i) for i in range(q + 1)]
    elements = []
    for a in alphas:
        aq = F2.pow(a, q)
        for b in range(n):
            rhs = F2.pow(b, q + 1)
            for c in range(n):
                if unitary and F2.add(F2.mul(a, F2.pow(c, q)), F2.mul(aq, c)) != rhs:
                    continue
                elements.append((a, b, c))

    def mul(x, y):
        a1, b1, c1 = x
        a2, b2, c2 = y
        a = F2.mul(a1, a2)
        b = F2.add(F2.mul(a1, b2), F2.mul(b1, F2.pow(a2, q)))
        c = F2.add(F2.add(F2.mul(a1, c2), F2.mul(b1, F2.pow(b2, q))), F2.mul(c1, a2))
        return _normalize_q(F2, q, a, b, c)

    def inv(x):
        a, b, c = x
        ai = F2.inv(a)
        aqi = F2.pow(ai, q)
        bi = F2.neg(F2.mul(F2.mul(ai, b), aqi))
        # solve a c' + b b'^q + c a^-1 = 0 for c'
        ci = F2.neg(F2.mul(ai, F2.add(F2.mul(b, F2.pow(bi, q)), F2.mul(c, ai))))
        return _normalize_q(F2, q, ai, bi, ci)

    name = "Q1" if unitary else "Q"
    G = FiniteGroup(name, q, elements, mul, inv, (1, 0, 0),
                    describe=lambda g: {"alpha": g[0], "beta": g[1], "gamma": g[2]})
    G.field = F2
    return G


def build_Q(q: int) -> FiniteGroup:
    """Matrices (a b c; 0 a^q b^q; 0 0 a) over F_{q^2} modulo F_q^x."""
    return _q_group(q, False)


def build_Q1(q: int) -> FiniteGroup:
    """The subgroup of Q with a c^q + a^q c = b^(q+1); it preserves the Hermitian curve."""
    return _q_group(q, True)


def q_matrix(G: FiniteGroup, g):
    F2 = G.field
    q = G.q
    a, b, c = g
    return [[a, b, c], [0, F2.pow(a, q), F2.pow(b, q)], [0, 0, a]]


def hermitian_action(G: FiniteGroup) -> GroupAction:
    if G.name != "Q1":
        raise ConfigurationError("only Q1 preserves the Hermitian curve")
    model = curves.hermitian(G.q)
    F2 = G.field

    def to_aut(g):
        return curves.projective_automorphism(model, q_matrix(G, g), F2, 0, f"Q1{g}", verify=False)
    return GroupAction(G, model, to_aut)


def center_P(G: FiniteGroup) -> list:
    """alpha = 1, beta = 0, gamma^q = -gamma."""
    F2 = G.field
    return [g for g in G.elements if g[0] == 1 and g[1] == 0 and F2.pow(g[2], G.q) == F2.neg(g[2])]


def torus_D(G: FiniteGroup) -> list:
    return [g for g in G.elements if g[1] == 0 and g[2] == 0]


def heisenberg_H(G: FiniteGroup) -> list:
    return [g for g in G.elements if G.field.mul(g[0], 1) == 1 and g[0] == 1]


def is_central(G: FiniteGroup, S) -> bool:
    gens = G.generators()
    return all(G.mul(s, h) == G.mul(h, s) for s in S for h in gens)


def psi_alpha(G: FiniteGroup, alpha: int):
    """Character gamma -> psi(Tr(alpha gamma)) of P, psi(x) = zeta_p^Tr(x)."""
    F2 = G.field
    if F2.pow(alpha, G.q) == alpha:
        raise ConfigurationError("psi_alpha is trivial for alpha in F_q")

    def f(g):
        return F2.absolute_trace(F2.mul(alpha, g[2]))
    return f


def alpha_representatives(q: int, mode: str = "additive") -> list:
    """alpha in F_{q^2} \\ F_q modulo F_q: additively (distinct psi_alpha) or multiplicatively."""
    F2 = _q_field(q)
    sub = [x for x in range(F2.q) if F2.pow(x, q) == x]
    seen, reps = set(), []
    for a in range(F2.q):
        if a in seen or F2.pow(a, q) == a:
            continue
        if mode == "additive":
            coset = {F2.add(a, c) for c in sub}
        elif mode == "multiplicative":
            coset = {F2.mul(a, c) for c in sub if c}
        else:
            raise ConfigurationError(f"unknown mode {mode!r}")
        seen |= coset
        reps.append(a)
    return reps


def extract_tau_alpha(chi: ClassFunction, alpha: int) -> ClassFunction:
    """Character of the psi_alpha-isotypic part for the central subgroup P."""
    G = chi.group
    P = center_P(G)
    ex = psi_alpha(G, alpha)
    p = G.field.p
    cls = G.class_of()
    reps = G.conjugacy_classes()
    vals = []
    for c in reps:
        g = c[0]
        hist = {}
        parts = []
        for z in P:
            v = chi.values[cls[G.mul(g, z)]]
            e = (-ex(z)) % p
            parts.append(v * CyclotomicInt.zeta(p, e))
        s = cyc_sum(parts)
        if not s.divisible_by(len(P)):
            raise ArithmeticError("isotypic projection is not integral")
        vals.append(s.exact_div(len(P)))
    return ClassFunction(G, vals, f"tau[{alpha}]")


def induced_from_center(G: FiniteGroup, P, ex) -> ClassFunction:
    """Ind_P^G psi for a central P: |G|/|P| psi(g) on P, zero elsewhere."""
    p = G.field.p
    Pset = set(P)
    idx = G.order // len(P)
    vals = []
    for c in G.conjugacy_classes():
        g = c[0]
        vals.append(CyclotomicInt.zeta(p, ex(g)) * idx if g in Pset else CyclotomicInt.from_int(0))
    return ClassFunction(G, vals, "Ind_P psi")


def torus_character(G: FiniteGroup, e: int) -> ClassFunction:
    """eta(g) = zeta_(q+1)^(e * log(alpha)), inflated from Q1 -> D."""
    F2 = G.field
    n = G.q + 1
    return ClassFunction.from_function(G, lambda g: CyclotomicInt.zeta(n, e * F2.log(g[0]) % n), f"eta[{e}]")


@dataclass
class HermitianReport:
    q: int
    group: str
    group_order: int
    classes: int
    chi: ClassFunction
    additive_reps: list
    multiplicative_reps: list
    taus: dict
    norms: dict
    torus_traces: dict
    dims: dict
    sum_additive: bool
    sum_multiplicative: bool
    uniqueness: dict

    def to_json(self) -> dict:
        return {
            "q": self.q, "group": self.group, "order": self.group_order, "classes": self.classes,
            "h1_dimension": self.chi.degree().to_int(),
            "alpha_additive": self.additive_reps, "alpha_multiplicative": self.multiplicative_reps,
            "norms": {str(k): v for k, v in self.norms.items()},
            "torus_trace_minus_one": {str(k): v for k, v in self.torus_traces.items()},
            "dimensions": {str(k): v for k, v in self.dims.items()},
            "sum_over_additive_reps": self.sum_additive,
            "sum_over_multiplicative_reps": self.sum_multiplicative,
            "unique_constituent": {str(k): v for k, v in self.uniqueness.items()},
        }


def hermitian_decomposition(q: int) -> HermitianReport:
    G = build_Q1(q)
    act = hermitian_action(G)
    chi = h1_character(act)
    add_reps = alpha_representatives(q, "additive")
    mul_reps = alpha_representatives(q, "multiplicative")
    D = [d for d in torus_D(G) if d != G.identity]
    taus, norms, traces, dims, uniq = {}, {}, {}, {}, {}
    for a in sorted(set(add_reps) | set(mul_reps)):
        t = extract_tau_alpha(chi, a)
        taus[a] = t
        ip = inner_product(t, t)
        norms[a] = ip.to_int() if ip is not None and ip.is_integer() else None
        traces[a] = all(t(g) == CyclotomicInt.from_int(-1) for g in D)
        dims[a] = t.degree().to_int()
        uniq[a] = _unique_constituent(G, t, a)
    total_add = cyc_free_sum(G, [taus[a] for a in add_reps])
    total_mul = cyc_free_sum(G, [taus[a] for a in mul_reps])
    return HermitianReport(q, G.name, G.order, len(G.conjugacy_classes()), chi, add_reps, mul_reps, taus,
                           norms, traces, dims, total_add == chi, total_mul == chi, uniq)


def cyc_free_sum(G, fs):
    acc = ClassFunction(G, [0] * len(G.conjugacy_classes()))
    for f in fs:
        acc = acc + f
    return acc


def _unique_constituent(G, tau, alpha) -> bool:
    """The psi_alpha part of the regular representation is q * sum_eta tau (x) eta over the
    q+1 torus characters, each irreducible and distinct, and only eta = 1 gives trace -1 on D \\ {1}."""
    P = center_P(G)
    ind = induced_from_center(G, P, psi_alpha(G, alpha))
    n = G.q + 1
    twists = [tau * torus_character(G, e) for e in range(n)]
    if any(inner_product(t, t) != CyclotomicInt.from_int(1) for t in twists):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if inner_product(twists[i], twists[j]) != CyclotomicInt.from_int(0):
                return False
    if cyc_free_sum(G, twists).scale(G.q) != ind:
        return False
    D = [d for d in torus_D(G) if d != G.identity]
    good = [e for e, t in enumerate(twists) if all(t(g) == CyclotomicInt.from_int(-1) for g in D)]
    return good == [0]


def commutator_witness(G: FiniteGroup):
    """Two elements of the Heisenberg part whose commutator is a nontrivial element of P."""
    H = heisenberg_H(G)
    P = set(center_P(G))
    for x in H:
        for y in H:
            c = G.mul(G.mul(x, y), G.mul(G.inv(x), G.inv(y)))
            if c != G.identity and c in P:
                return x, y, c
    return None


# the level-zero group G^1 acting on the DL curve

def build_levelzero_G1(q: int) -> FiniteGroup:
    """Pairs (g, beta) in GL_2(F_q) x F_{q^2}^x with det g = N(beta)."""
    p, r = prime_power(q)
    if p == 2:
        raise ConfigurationError("odd q only")
    Fq = gf(p, r)
    F2 = gf(p, 2 * r)
    emb = embedding(Fq, F2)
    back = {emb(x): x for x in range(Fq.q)}
    check_budget("group_order", q * (q * q - 1) ** 2)
    by_det = {}
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    det = Fq.sub(Fq.mul(a, d), Fq.mul(b, c))
                    if det:
                        by_det.setdefault(det, []).append((a, b, c, d))
    elements = []
    for beta in range(1, F2.q):
        det = back[F2.pow(beta, q + 1)]
        for m in by_det[det]:
            elements.append(m + (beta,))

    def mul(x, y):
        a1, b1, c1, d1, e1 = x
        a2, b2, c2, d2, e2 = y
        return (Fq.add(Fq.mul(a1, a2), Fq.mul(b1, c2)), Fq.add(Fq.mul(a1, b2), Fq.mul(b1, d2)),
                Fq.add(Fq.mul(c1, a2), Fq.mul(d1, c2)), Fq.add(Fq.mul(c1, b2), Fq.mul(d1, d2)),
                F2.mul(e1, e2))

    def inv(x):
        a, b, c, d, e = x
        di = Fq.inv(Fq.sub(Fq.mul(a, d), Fq.mul(b, c)))
        return (Fq.mul(d, di), Fq.mul(Fq.neg(b), di), Fq.mul(Fq.neg(c), di), Fq.mul(a, di), F2.inv(e))

    G = FiniteGroup("G1", q, elements, mul, inv, (1, 0, 0, 1, 1),
                    describe=lambda g: {"g": [[g[0], g[1]], [g[2], g[3]]], "beta": g[4]})
    G.field, G.base, G.emb = F2, Fq, emb
    return G


def dl_action(G: FiniteGroup) -> GroupAction:
    """(g, beta) acts by (X, Y, Z) -> (aX + bY, cX + dY, beta Z) on column vectors.

    This is the row-vector action (u, v) -> beta^-1 (au + cv, bu + dv) read
    through g -> g^T, which preserves conjugacy classes of GL_2.
    """
    model = curves.deligne_lusztig(G.q)
    F2, emb = G.field, G.emb

    def to_aut(g):
        a, b, c, d, e = g
        M = [[emb(a), emb(b), 0], [emb(c), emb(d), 0], [0, 0, e]]
        return curves.projective_automorphism(model, M, F2, 0, "G1", verify=False)
    return GroupAction(G, model, to_aut)


def cuspidal_value(q: int, theta: MultiplicativeCharacter, g) -> CyclotomicInt:
    """Cuspidal character of GL_2(F_q) attached to a regular theta of F_{q^2}^x."""
    p, r = prime_power(q)
    Fq, F2 = gf(p, r), theta.field
    emb = embedding(Fq, F2)
    a, b, c, d = g
    tr = Fq.add(a, d)
    det = Fq.sub(Fq.mul(a, d), Fq.mul(b, c))
    if b == 0 and c == 0 and a == d:
        return theta(emb(a)) * (q - 1)
    disc = Fq.sub(Fq.mul(tr, tr), Fq.scalar(4, det))
    if disc == 0:
        z = Fq.div(tr, 2 % p)
        return -theta(emb(z))
    if Fq.is_square(disc):
        return CyclotomicInt.from_int(0)
    # elliptic: eigenvalues beta, beta^q in F_{q^2}
    E, D = emb(tr), emb(disc)
    s = F2.sqrt(D)
    half = F2.inv(2 % p)
    beta = F2.mul(F2.add(E, s), half)
    return -(theta(beta) + theta(F2.pow(beta, q)))


def regular_thetas(q: int) -> list:
    p, r = prime_power(q)
    F2 = gf(p, 2 * r)
    n = q * q - 1
    return [MultiplicativeCharacter(F2, e) for e in range(n) if (e * q - e) % n]


def cuspidal_character(G: FiniteGroup, theta: MultiplicativeCharacter) -> ClassFunction:
    if (theta.e * G.q - theta.e) % (G.q**2 - 1) == 0:
        raise ConfigurationError("theta must differ from theta^q")
    return ClassFunction.from_function(G, lambda g: cuspidal_value(G.q, theta, g[:4]),
                                       f"lambda[{theta.e}]")


def gl2_group(q: int) -> FiniteGroup:
    p, r = prime_power(q)
    Fq = gf(p, r)
    els = [(a, b, c, d) for a in range(q) for b in range(q) for c in range(q) for d in range(q)
           if Fq.sub(Fq.mul(a, d), Fq.mul(b, c))]

    def mul(x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (Fq.add(Fq.mul(a1, a2), Fq.mul(b1, c2)), Fq.add(Fq.mul(a1, b2), Fq.mul(b1, d2)),
                Fq.add(Fq.mul(c1, a2), Fq.mul(d1, c2)), Fq.add(Fq.mul(c1, b2), Fq.mul(d1, d2)))

    def inv(x):
        a, b, c, d = x
        di = Fq.inv(Fq.sub(Fq.mul(a, d), Fq.mul(b, c)))
        return (Fq.mul(d, di), Fq.mul(Fq.neg(b), di), Fq.mul(Fq.neg(c), di), Fq.mul(a, di))
    return FiniteGroup("GL2", q, els, mul, inv, (1, 0, 0, 1))


def lambda_twist(G: FiniteGroup, theta: MultiplicativeCharacter, dual: bool = True) -> ClassFunction:
    """(g, beta) -> lambda_theta(g) theta(beta)^(-1) (dual) or theta(beta)."""
    sign = -1 if dual else 1
    lab = "lambda(x)theta^-1" if dual else "lambda(x)theta"
    return ClassFunction.from_function(
        G, lambda g: cuspidal_value(G.q, theta, g[:4]) * (theta(g[4]).conjugate() if dual else theta(g[4])),
        f"{lab}[{theta.e}]")


def twist_class_thetas(q: int) -> list:
    """One regular theta per class theta ~ theta (eta o N), eta a character of F_q^x.

    Such twists agree on G^1 because det g = N(beta); the classes are the
    exponents e mod q+1 with e nonzero, so there are exactly q of them.
    """
    p, r = prime_power(q)
    F2 = gf(p, 2 * r)
    return [MultiplicativeCharacter(F2, e) for e in range(1, q + 1)]


@dataclass
class DLReport:
    q: int
    order: int
    kernel: int
    classes: int
    chi: ClassFunction
    dual: Decomposition
    plain: Decomposition
    thetas: list
    orthonormal: bool
    all_regular: list

    def to_json(self) -> dict:
        return {"q": self.q, "order": self.order, "kernel_order": self.kernel, "classes": self.classes,
                "h1_dimension": self.chi.degree().to_int(),
                "twist_class_exponents": self.thetas,
                "candidates_orthonormal": self.orthonormal,
                "dual_twist": self.dual.to_json(), "plain_twist": self.plain.to_json(),
                "inner_products_all_regular": self.all_regular}


def dl_decomposition(q: int) -> DLReport:
    G = build_levelzero_G1(q)
    act = dl_action(G)
    chi = h1_character(act)
    thetas = twist_class_thetas(q)
    cands = [lambda_twist(G, t, True) for t in thetas]
    one, zero = CyclotomicInt.from_int(1), CyclotomicInt.from_int(0)
    ortho = all(inner_product(a, b) == (one if i == j else zero)
                for i, a in enumerate(cands) for j, b in enumerate(cands))
    dual = isotypic_decomposition(chi, cands)
    plain = isotypic_decomposition(chi, [lambda_twist(G, t, False) for t in thetas])
    every = []
    for t in regular_thetas(q):
        ip = inner_product(chi, lambda_twist(G, t, True))
        every.append([t.e, ip.to_int() if ip is not None and ip.is_integer() else None])
    return DLReport(q, G.order, len(act.kernel()), len(G.conjugacy_classes()), chi, dual, plain,
                    [t.e for t in thetas], ortho, every)


# ramified quotients acting on the projective line or the hyperelliptic curve

def build_ramified_quotient(q: int, case: str) -> FiniteGroup:
    p, r = prime_power(q)
    if p == 2:
        raise ConfigurationError("odd q only")
    if case == "level0":
        F2 = gf(p, 2 * r)
        els = [(b, s) for b in range(1, F2.q) for s in (0, 1)]

        def mul(x, y):
            # (b, s) is X -> b X^((-1)^s)
            b1, s1 = x
            b2, s2 = y
            b2e = F2.inv(b2) if s1 else b2
            return (F2.mul(b1, b2e), s1 ^ s2)

        def inv(x):
            b, s = x
            return (b, 1) if s else (F2.inv(b), 0)
        G = FiniteGroup("k2x:Z2", q, els, mul, inv, (1, 0))
        G.field = F2
        return G
    if case == "evenLevel":
        F2 = gf(p, 2 * r)
        els = [(b, s) for b in range(F2.q) for s in (0, 1)]

        def mul(x, y):
            # (b, s) is X -> (-1)^s X + b
            b1, s1 = x
            b2, s2 = y
            return (F2.add(F2.neg(b2) if s1 else b2, b1), s1 ^ s2)

        def inv(x):
            b, s = x
            return (b, 1) if s else (F2.neg(b), 0)
        G = FiniteGroup("k2:Z2", q, els, mul, inv, (0, 0))
        G.field = F2
        return G
    if case == "oddLevel":
        Fq = gf(p, r)
        els = [(a, s) for a in range(Fq.q) for s in (0, 1)]
        G = FiniteGroup("Fq x Z2", q, els, lambda x, y: (Fq.add(x[0], y[0]), x[1] ^ y[1]),
                        lambda x: (Fq.neg(x[0]), x[1]), (0, 0))
        G.field = Fq
        return G
    raise ConfigurationError(f"unknown case {case!r}")


def ramified_action(G: FiniteGroup, case: str) -> GroupAction:
    q = G.q
    p, r = prime_power(q)
    F2 = gf(p, 2 * r)
    if case == "level0":
        model = curves.projective_line(q)

        def to_aut(g):
            b, s = g
            M = [[0, b], [1, 0]] if s else [[b, 0], [0, 1]]
            return curves.mobius_automorphism(model, M, F2)
    elif case == "evenLevel":
        model = curves.projective_line(q)

        def to_aut(g):
            b, s = g
            return curves.mobius_automorphism(model, [[F2.neg(1) if s else 1, b], [0, 1]], F2)
    else:
        model = curves.hyperelliptic(q)
        emb = embedding(G.field, F2)

        def to_aut(g):
            a, s = g
            return curves.hyperelliptic_automorphism(model, 1, emb(a), F2.neg(1) if s else 1, F2, verify=False)
    return GroupAction(G, model, to_aut)


def translation_group(q: int) -> FiniteGroup:
    p, r = prime_power(q)
    Fq = gf(p, r)
    G = FiniteGroup("Fq", q, [(a,) for a in range(Fq.q)], lambda x, y: (Fq.add(x[0], y[0]),),
                    lambda x: (Fq.neg(x[0]),), (0,))
    G.field = Fq
    return G


@dataclass
class HyperellipticReport:
    q: int
    chi: ClassFunction
    decomposition: Decomposition
    infinity_multiplicities: list
    sign_decomposition: Decomposition

    def to_json(self) -> dict:
        return {"q": self.q, "h1_dimension": self.chi.degree().to_int(),
                "multiplicities": self.decomposition.multiplicities,
                "residual_zero": self.decomposition.residual_zero,
                "infinity_multiplicities": self.infinity_multiplicities,
                "with_involution": self.sign_decomposition.to_json()}


def hyperelliptic_decomposition(q: int) -> HyperellipticReport:
    """H^1 of y^2 = x^q - x under translations, over the characters psi_c of F_q (c = 0 first)."""
    G = translation_group(q)
    model = curves.hyperelliptic(q)
    p, r = prime_power(q)
    F2 = gf(p, 2 * r)
    emb = embedding(G.field, F2)
    act = GroupAction(G, model, lambda g: curves.hyperelliptic_automorphism(model, 1, emb(g[0]), 1, F2))
    chi = h1_character(act)
    cands = []
    for c in range(G.field.q):
        psi = AdditiveCharacter(G.field, c)
        cands.append(ClassFunction.from_function(G, lambda g, psi=psi: psi(g[0]), f"psi[{c}]"))
    dec = isotypic_decomposition(chi, cands)
    mults = []
    for a in range(1, G.field.q):
        fp = curves.fixed_points(act.to_aut((a,)))
        mults.append([m for P, m in fp.points if P.chart == curves.INFINITY][0])
    # with the involution: H^1 = sum over nontrivial psi of psi (x) sign
    G2 = build_ramified_quotient(q, "oddLevel")
    act2 = ramified_action(G2, "oddLevel")
    chi2 = h1_character(act2)
    cands2 = []
    for c in range(G.field.q):
        psi = AdditiveCharacter(G.field, c)
        for s in (0, 1):
            cands2.append(ClassFunction.from_function(
                G2, lambda g, psi=psi, s=s: psi(g[0]) * ((-1) ** (s * g[1])), f"psi[{c}]sgn^{s}"))
    dec2 = isotypic_decomposition(chi2, cands2)
    return HyperellipticReport(q, chi, dec, mults, dec2)
