"""Chain orders, the quaternion order, and the filtrations V^m, W^m.

Both algebras are written as cyclic algebras over a quadratic extension E:

    A = M_2(F) = E + E c,  c x = sigma(x) c,  c^2 = 1        (split)
    B          = E + E c,  c x = sigma(x) c,  c^2 = a         (division)

with a = t for unramified E and a = a nonsquare unit for ramified E, so that
a is not a norm from E.  Reduced trace kills E c, hence the trace-complement
projection is s(x + y c) = x.  Every module below has the shape

    L(a, b) = { x + y c : v_E(x) >= a, v_E(y) >= b },

an O_E-module whose k_E-length between two such is a difference of bounds.
The chain order of A is L(0, 0) (M_2(O_F) or the Iwahori order) with radical
powers varpi_E^r L(0, 0); O_B = L(0, 0) with P_B = Pi O_B for Pi = c
(unramified E) or Pi = varpi_E (ramified E).  These radical powers are
computed by multiplying generators, not assumed.
"""

from dataclasses import dataclass
from itertools import product

from .errors import ConfigurationError, check_budget
from .finite_field import gf
from .local_fields import extension, LocalField
from .series import LaurentSeries

INF = 10**9


class CyclicAlgebra:
    def __init__(self, ext, name: str):
        self.ext = ext
        self.name = name
        kF = ext.F.k
        if name == "A":
            a = LaurentSeries.constant(kF, 1)
        elif name == "B":
            # a non-norm: a nonsquare unit for ramified E, t for unramified E
            a = LaurentSeries.constant(kF, kF.nonsquare()) if ext.ramified else LaurentSeries.variable(kF)
        else:
            raise ConfigurationError("algebra must be A or B")
        self.c2_base = a
        self.c2 = ext.embed(a)
        self.vc2 = self.c2.valuation()

    def mul(self, u, w, prec=None):
        x1, y1 = u
        x2, y2 = w
        s = self.ext.sigma
        x = x1 * x2 + y1 * s(y2) * self.c2
        y = x1 * y2 + y1 * s(x2)
        if prec is not None:
            x, y = x.truncate(prec[0]), y.truncate(prec[1])
        return (x, y)

    def nrd(self, u):
        x, y = u
        ext = self.ext
        return ext._descend(x * ext.sigma(x) - self.c2 * y * ext.sigma(y))

    def trd(self, u):
        return self.ext.trace(u[0])

    def corestriction(self, u):
        """Projection onto E along the reduced-trace complement E c."""
        return u[0]

    def uniformizer(self):
        """Generator of the radical of the standard order."""
        kE = self.ext.E.k
        zero = LaurentSeries(kE, [], 0)
        if self.name == "B" and not self.ext.ramified:
            return (zero, LaurentSeries.constant(kE, 1))
        return (LaurentSeries.variable(kE), zero)

    def __repr__(self):
        return f"{self.name} over {self.ext.kind}"


def _val(x):
    return INF if x.is_zero() else x.valuation()


@dataclass(frozen=True)
class Module:
    """L(a, b) inside an algebra."""
    algebra: object
    a: int
    b: int
    label: str = ""

    def generators(self):
        kE = self.algebra.ext.E.k
        zero = LaurentSeries(kE, [], 0)
        units = [1, kE.generator] if kE.q > 2 else [1]
        out = []
        for z in units:
            out.append((LaurentSeries(kE, [z], self.a), zero))
            out.append((zero, LaurentSeries(kE, [z], self.b)))
        return out

    def contains(self, u) -> bool:
        return _val(u[0]) >= self.a and _val(u[1]) >= self.b

    def __le__(self, other):
        return self.a >= other.a and self.b >= other.b

    def meet(self, other, label=""):
        return Module(self.algebra, max(self.a, other.a), max(self.b, other.b), label)

    def closed_under_multiplication(self) -> bool:
        gens = self.generators()
        return all(self.contains(self.algebra.mul(g, h)) for g in gens for h in gens)

    def corestriction_of_square_in(self, n: int) -> bool:
        """s(M M) inside p_E^n, on generator products."""
        gens = self.generators()
        return all(_val(self.algebra.corestriction(self.algebra.mul(g, h))) >= n for g in gens for h in gens)


def length(num: Module, den: Module) -> int:
    """k_E-dimension of num/den."""
    if not den <= num:
        raise ConfigurationError(f"{den.label} is not contained in {num.label}")
    return (den.a - num.a) + (den.b - num.b)


def standard_order(alg: CyclicAlgebra) -> Module:
    return Module(alg, 0, 0, f"O_{alg.name}")


def radical_power(alg: CyclicAlgebra, r: int) -> Module:
    """Pi^r applied to the standard order, read off from generator images."""
    M = standard_order(alg)
    pi = alg.uniformizer()
    for _ in range(r):
        imgs = [alg.mul(pi, g) for g in M.generators()]
        M = Module(alg, min(_val(u[0]) for u in imgs), min(_val(u[1]) for u in imgs))
    return Module(alg, M.a, M.b, f"P_{alg.name}^{r}")


def corestriction_preimage(alg: CyclicAlgebra, m: int) -> Module:
    return Module(alg, m, -INF, f"s^-1(p^{m})")


def tame_corestriction_checks(alg: CyclicAlgebra, rmax: int = 4) -> dict:
    """s on E is the identity; s(order) = O_E; s(P^r) = p_E^r (A) or p_E^ceil(r/f) (B)."""
    f = alg.ext.f
    out = {"identity_on_E": True, "order_to_O_E": standard_order(alg).a == 0, "radical_powers": {}}
    kE = alg.ext.E.k
    x = LaurentSeries(kE, [1, 2 % kE.p, 1], -1)
    out["identity_on_E"] = alg.corestriction((x, LaurentSeries(kE, [], 0))) == x
    for r in range(1, rmax + 1):
        P = radical_power(alg, r)
        want = r if alg.name == "A" else -(-r // f)
        out["radical_powers"][r] = (P.a, want, P.a == want)
    return out


@dataclass(frozen=True)
class ChainOrder:
    """The hereditary order of A normalized by E^x: maximal (E unramified) or Iwahori."""
    type: str
    order: Module
    radical: Module
    period: int

    @property
    def residue_dimension(self) -> int:
        """k-dimension of order/radical: 4 for M_2(O_F), 2 for the Iwahori order."""
        f = self.order.algebra.ext.f
        return length(self.order, self.radical) * f


def chain_order(q: int, kind: str) -> ChainOrder:
    ext = extension(q, kind)
    alg = CyclicAlgebra(ext, "A")
    return ChainOrder("Iwahori" if ext.ramified else "maximal", standard_order(alg),
                      radical_power(alg, 1), ext.e)


def quaternion_model(q: int, kind: str = "unramified") -> CyclicAlgebra:
    """B presented over E; for unramified E this is E_0 + E_0 Pi with Pi^2 = t."""
    return CyclicAlgebra(extension(q, kind), "B")


# the V/W filtrations

def _r_values(ext, m):
    if ext.ramified:
        return (m + 1) // 2, m // 2 + 1
    return 2 * (m // 2), m + 1


def build_filtration(m: int, algebra: str, kind: str, q: int) -> dict:
    """V^m and W^m for A or B, with the exponents found by search."""
    if m < 0:
        raise ConfigurationError("m must be nonnegative")
    ext = extension(q, kind)
    alg = CyclicAlgebra(ext, algebra)
    pre = corestriction_preimage(alg, m)
    if algebra == "A":
        r, r2 = (m + 1) // 2, m // 2 + 1
    else:
        r, r2 = _r_values(ext, m)
    # smallest exponents that give a ring and the trace condition, for comparison
    r_min = next(x for x in range(0, 2 * m + 3) if pre.meet(radical_power(alg, x)).closed_under_multiplication())
    r2_min = next(x for x in range(0, 2 * m + 4)
                  if pre.meet(radical_power(alg, x)).corestriction_of_square_in(m + 1))
    V = pre.meet(radical_power(alg, r), f"V_{algebra}^{m}")
    W = pre.meet(radical_power(alg, r2), f"W_{algebra}^{m}")
    return {"V": V, "W": W, "r": r, "r_prime": r2, "r_min": r_min, "r_prime_min": r2_min}


TABLE = {
    # (kind, parity) -> (dim V_A/W_A, dim V_B/W_B)
    ("ramified", "odd"): (0, 0), ("ramified", "even"): (1, 1),
    ("unramified", "odd"): (0, 1), ("unramified", "even"): (1, 0),
}


def dimension_row(m: int, kind: str, q: int) -> dict:
    fa, fa1 = build_filtration(m, "A", kind, q), build_filtration(m + 1, "A", kind, q)
    fb, fb1 = build_filtration(m, "B", kind, q), build_filtration(m + 1, "B", kind, q)
    row = {
        "m": m,
        "VA/WA": length(fa["V"], fa["W"]),
        "VB/WB": length(fb["V"], fb["W"]),
        "WA/VA+": length(fa["W"], fa1["V"]),
        "WB/VB+": length(fb["W"], fb1["V"]),
        "r": fb["r"], "r_prime": fb["r_prime"], "r_min": fb["r_min"], "r_prime_min": fb["r_prime_min"],
        "VA_closed": fa["V"].closed_under_multiplication(),
        "WA_good": fa["W"].corestriction_of_square_in(m + 1),
        "VB_closed": fb["V"].closed_under_multiplication(),
        "WB_good": fb["W"].corestriction_of_square_in(m + 1),
        "chain": fa1["V"] <= fa["W"] <= fa["V"] and fb1["V"] <= fb["W"] <= fb["V"],
    }
    kk = "ramified" if extension(q, kind).ramified else "unramified"
    expect = TABLE[(kk, "odd" if m % 2 else "even")]
    row["expected"] = {"VA/WA": expect[0], "VB/WB": expect[1], "WA/VA+": 1, "WB/VB+": 1}
    row["matches"] = all(row[k] == v for k, v in row["expected"].items())
    return row


def dimension_table(q: int, mmax: int = 6, kinds=("unramified", "ramified1")) -> list:
    return [dict(dimension_row(m, kind, q), kind=kind) for kind in kinds for m in range(mmax + 1)]


# Gr_m and its delta-kernel

def delta_hom(alg_A, alg_B, g, b, N: int):
    """det(g)^-1 Nrd(b) in F, to relative precision N + 1."""
    dA = alg_A.nrd(g)
    dB = alg_B.nrd(b)
    return (dB * dA.inverse(N + 1)).truncate(dB.valuation() - dA.valuation() + N + 1)


@dataclass
class GrReport:
    q: int
    kind: str
    m: int
    gr_order: int
    gr1_order: int
    abelian: bool
    witness: object
    quotient_order: int
    expected: int
    raw_kernel: int = 0
    diagonal: int = 1

    def to_json(self) -> dict:
        return {"q": self.q, "extension": self.kind, "m": self.m, "Gr_order": self.gr_order,
                "Gr1_order": self.gr1_order, "kernel_in_Gr_m": self.raw_kernel,
                "U_E^m_image": self.diagonal, "abelian": self.abelian,
                "nonsplit_witness": self.witness, "K1/L1_order": self.gr1_order * self.quotient_order,
                "E^x/F^xU_E^1": self.quotient_order, "lemma_order": self.expected,
                "matches_lemma": self.gr1_order == self.expected}


class _GrGroup:
    """(1 + V^m)/(1 + V^(m+1)) in A x B with truncated arithmetic."""

    def __init__(self, q, kind, m):
        self.ext = ext = extension(q, kind)
        self.A, self.B = CyclicAlgebra(ext, "A"), CyclicAlgebra(ext, "B")
        self.m = m
        fa, fa1 = build_filtration(m, "A", kind, q), build_filtration(m + 1, "A", kind, q)
        fb, fb1 = build_filtration(m, "B", kind, q), build_filtration(m + 1, "B", kind, q)
        self.lo = (fa["V"], fb["V"])
        self.hi = (fa1["V"], fb1["V"])
        self.kE = ext.E.k
        # coordinates: for each of the four E-components, exponents lo..hi-1
        self.slots = []
        for which, (L, H) in enumerate(zip(self.lo, self.hi)):
            for part, (a, b) in enumerate(((L.a, H.a), (L.b, H.b))):
                for j in range(a, b):
                    self.slots.append((which, part, j))
        self.size = self.kE.q ** len(self.slots)
        check_budget("group_order", self.size)

    def _series(self, coeffs, which, part):
        kE = self.kE
        H = self.hi[which]
        bound = H.a if part == 0 else H.b
        d = {j: c for (w, pp, j), c in zip(self.slots, coeffs) if w == which and pp == part}
        lo = min([j for (w, pp, j) in self.slots if w == which and pp == part], default=bound)
        cs = [d.get(j, 0) for j in range(lo, bound)]
        return LaurentSeries(kE, cs, lo, bound)

    def element(self, coeffs):
        """1 + v for v with the given slot coefficients."""
        kE = self.kE
        one = LaurentSeries.constant(kE, 1)
        out = []
        for which in (0, 1):
            x = self._series(coeffs, which, 0)
            y = self._series(coeffs, which, 1)
            out.append((one + x.with_prec(None), y.with_prec(None)))
        return tuple(out)

    def encode(self, pair):
        # pair = ((xA, yA), (xB, yB)) with xA = 1 + ...; read slot coefficients
        vals = []
        for which, part, j in self.slots:
            comp = pair[which][part]
            c = comp.coeff(j) if not (part == 0 and j == 0) else self.kE.sub(comp.coeff(0), 1)
            vals.append(c)
        return tuple(vals)

    def _mul_alg(self, alg, u, w, H):
        prod = alg.mul(u, w)
        return (prod[0].truncate(H.a).with_prec(None), prod[1].truncate(H.b).with_prec(None))

    def mul(self, g, h):
        eg, eh = self.element(g), self.element(h)
        out = (self._mul_alg(self.A, eg[0], eh[0], self.hi[0]), self._mul_alg(self.B, eg[1], eh[1], self.hi[1]))
        return self.encode(out)

    def inv(self, g):
        # (1 + v)^-1 = sum (-v)^k; the series stops since v^k lands in V^(m+1)
        x = g
        e = self.identity
        acc = e
        power = e
        neg = tuple(self.kE.neg(c) for c in g)
        for _ in range(4 * (self.m + 2)):
            power = self._vmul(power, neg)
            if all(c == 0 for c in power):
                break
            acc = tuple(self.kE.add(a, b) for a, b in zip(acc, power))
        acc = tuple(a for a in acc)
        # acc holds the coordinates of 1 + sum_{k>=1} (-v)^k
        assert self.mul(g, acc) == self.identity
        return acc

    def _vmul(self, v, w):
        # product of the nilpotent parts, v w, in coordinates (v = 0 means coordinates of 1)
        ev, ew = self._nil(v), self._nil(w)
        out = (self._mul_alg(self.A, ev[0], ew[0], self.hi[0]), self._mul_alg(self.B, ev[1], ew[1], self.hi[1]))
        vals = []
        for which, part, j in self.slots:
            vals.append(out[which][part].coeff(j))
        return tuple(vals)

    def _nil(self, v):
        if all(c == 0 for c in v):
            # the identity element stands for the multiplicative unit here
            kE = self.kE
            one = LaurentSeries.constant(kE, 1)
            zero = LaurentSeries(kE, [], 0)
            return ((one, zero), (one, zero))
        return tuple((self._series(v, w, 0).with_prec(None), self._series(v, w, 1).with_prec(None)) for w in (0, 1))

    @property
    def identity(self):
        return tuple(0 for _ in self.slots)

    def elements(self):
        return product(range(self.kE.q), repeat=len(self.slots))

    def delta(self, g, N):
        e = self.element(g)
        return delta_hom(self.A, self.B, e[0], e[1], N)


def _principal_log(F: LocalField, u, N):
    return F.unit_log(u.truncate(N + 1), N)


def _span(gens, mods):
    """Subgroup of a product of cyclic groups generated by vectors."""
    seen = {tuple(0 for _ in mods)}
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b, n in zip(x, g, mods))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def _delta_image_deeper(G: _GrGroup, N: int):
    """delta(1 + V^(m+1)) inside U_F^1/U_F^(N+1), as a set of log vectors."""
    ext = G.ext
    F = ext.F
    kE = G.kE
    zero = LaurentSeries(kE, [], 0)
    one = LaurentSeries.constant(kE, 1)
    units = [kE.exp(i) for i in range(kE.q - 1)] if kE.q <= 49 else [1, kE.generator]
    gens = []
    e = ext.e
    depth = e * (N + 1) + 2
    for which, H in enumerate(G.hi):
        alg = G.A if which == 0 else G.B
        for part, start in ((0, H.a), (1, H.b)):
            for j in range(max(start, 0), max(start, 0) + depth):
                for z in units:
                    term = LaurentSeries(kE, [z], j)
                    u = (one + term, zero) if part == 0 else (one, term)
                    d = alg.nrd(u)
                    if which == 0:
                        d = d.inverse(N + 1)
                    gens.append(_principal_log(F, d, N))
    mods = [F.p**k for _, _, k in F.unit_basis(N)]
    return _span(gens, mods), mods


def _diagonal(G: _GrGroup):
    """Image of U_E^m (E embedded diagonally) in Gr_m."""
    kE = G.kE
    m = G.m
    out = set()
    zero = LaurentSeries(kE, [], 0)
    one = LaurentSeries.constant(kE, 1)
    for z in range(kE.q):
        x = one + LaurentSeries(kE, [z], m)
        out.add(G.encode(((x, zero), (x, zero))))
    return out


def gr1_structure(q: int, kind: str, m: int, N: int = None) -> GrReport:
    """ker(delta) on Gr_m, and its image modulo U_E^m (the part seen by K^1/L^1)."""
    if m < 1:
        raise ConfigurationError("m must be at least 1")
    G = _GrGroup(q, kind, m)
    ext = G.ext
    F = ext.F
    N = N or (m + 2)
    results = []
    for NN in (N, N + 1):
        H, mods = _delta_image_deeper(G, NN)
        kernel = []
        for g in G.elements():
            d = G.delta(g, NN)
            if d.valuation() != 0 or d.coeff(0) != 1:
                continue
            if _principal_log(F, d, NN) in H:
                kernel.append(g)
        results.append(kernel)
    if len(results[0]) != len(results[1]):
        raise ArithmeticError("delta kernel not stable in the truncation; raise N")
    kernel = results[1]
    ks = set(kernel)
    diag = _diagonal(G)
    if not diag <= ks:
        raise ArithmeticError("U_E^m is not in the delta kernel")
    witness = None
    abelian = True
    for x in kernel[1:80]:
        for y in kernel[1:80]:
            comm = G.mul(G.mul(x, y), G.inv(G.mul(y, x)))
            if comm not in diag:
                abelian = False
                witness = {"x": list(x), "y": list(y), "commutator": list(comm),
                           "commutator_in_kernel": comm in ks}
                break
        if witness:
            break
    quotient = 2 if ext.ramified else q + 1
    if ext.ramified:
        expected = q * q
    else:
        expected = q**3
    return GrReport(q, kind, m, G.size, len(kernel) // len(diag), abelian, witness, quotient, expected,
                    raw_kernel=len(kernel), diagonal=len(diag))


def cross_check_groups(q: int, m: int = 1) -> dict:
    """Compare K^1/L^1 and Gr_m^1 with the matrix groups of finite_groups."""
    from .finite_groups import build_Q1, heisenberg_H, commutator_witness, build_ramified_quotient
    out = {}
    R = gr1_structure(q, "unramified", m)
    Q1 = build_Q1(q)
    H = heisenberg_H(Q1)
    out["unramified"] = {
        "Gr1_order": R.gr1_order, "H_order": len(H),
        "K1/L1_order": R.gr1_order * R.quotient_order, "Q1_order": Q1.order,
        "Gr1_nonabelian": not R.abelian, "H_nonabelian": commutator_witness(Q1) is not None,
    }
    out["unramified"]["agree"] = (R.gr1_order == len(H) and R.gr1_order * R.quotient_order == Q1.order
                                  and out["unramified"]["Gr1_nonabelian"] and out["unramified"]["H_nonabelian"])
    for mm, case in ((2, "evenLevel"), (1, "oddLevel")):
        Rr = gr1_structure(q, "ramified1", mm)
        G = build_ramified_quotient(q, case)
        out[case] = {"K1/L1_order": Rr.gr1_order * Rr.quotient_order, "group_order": G.order,
                     "agree": Rr.gr1_order * Rr.quotient_order == G.order}
    return out
