"""The twelve acceptance criteria as functions returning (label, ok) sub-checks.

Shared by tests/test_acceptance.py and scripts/run_acceptance.py so the two
always agree.  A criterion passes when every sub-check does.
"""

import io
import json
import time

from . import curves, orders, verify
from . import dual_graph as dg
from . import local_fields as lf
from .exact_values import CyclotomicInt
from .finite_field import gf, prime_power


def _ok(findings):
    return all(f.status != verify.MISMATCH for f in findings)


def hermitian_maximality():
    out = []
    for q in (3, 5, 7, 9):
        n = curves.point_count(curves.hermitian(q), 2)
        out.append((f"q={q}: {n} points over F_q^2, want {q**3 + 1}", n == q**3 + 1))
    return out


def gauss_eigenvalue():
    out = []
    for q in (3, 5, 7):
        bad = [a for a in range(1, q)
               if curves.frobenius_eigenvalue_on_eigenspace(q, a) != -curves.quadratic_gauss_sum(q, a)]
        out.append((f"q={q}: eigenvalue is -g_psi for all {q - 1} nontrivial psi", not bad))
    return out


def gauss_identity():
    out = []
    for q in (3, 5, 7, 9, 11):
        p, r = prime_power(q)
        tau = lf.gauss_sum_kappa(q)
        sign = lf.quadratic_symbol(q, gf(p, r).neg(1))
        out.append((f"q={q}: tau^2 = {sign} * {q}", tau * tau == CyclotomicInt.from_int(sign * q)))
    return out


def hyperelliptic_decomposition():
    out = []
    for q in (3, 5, 7):
        fs = verify.check_hyperelliptic(q)
        out.append((f"q={q}: nontrivial psi each once, infinity multiplicity 3", _ok(fs)))
    return out


def hermitian_decomposition():
    out = []
    for q in (3, 5):
        for f in verify.check_hermitian_group(q):
            if f.status == verify.COMPUTED:
                continue
            tail = f.id.split(".")[2]
            out.append((f"q={q}: {f.anchor} [{tail}] value={f.value}", f.status == verify.VERIFIED))
    return out


def dl_decomposition():
    return [(f"q=3: {f.anchor} value={f.value}", f.status == verify.VERIFIED)
            for f in verify.check_dl(3) if f.status != verify.COMPUTED]


GR1_QS = (3, 5)


def filtration_table():
    out = []
    for q in (3, 5):
        for f in verify.check_table(q):
            out.append((f"q={q}: {f.id.split('.', 2)[2]}", f.status == verify.VERIFIED))
    for q in GR1_QS:
        for kind in ("unramified", "ramified1"):
            for m in range(1, 6):
                R = orders.gr1_structure(q, kind, m)
                ok = R.gr1_order == R.expected and (kind != "unramified" or not R.abelian)
                out.append((f"q={q} {kind} m={m}: |Gr^1| = {R.gr1_order}, want {R.expected}"
                            f" (kernel in Gr_m {R.raw_kernel}, modulo U_E^m of order {R.diagonal})", ok))
    cc = orders.cross_check_groups(3)
    out.append(("q=3: K1/L1 orders agree with the finite matrix groups", all(v["agree"] for v in cc.values())))
    return out


def delta_units():
    out = []
    for q in (3, 5):
        for f in verify.check_delta(q):
            out.append((f"q={q}: {f.id.split('.')[2]} failures={f.value['failures']}", f.status == verify.VERIFIED))
    return out


def weil_trace():
    out = []
    for q in (3, 5):
        for f in verify.check_weil_trace(q):
            out.append((f"q={q}: {f.id.split('.')[2]} all zeta", f.status == verify.VERIFIED))
    return out


def admissible_partition():
    out = []
    for depth in (1, 2):
        for kind in lf.KINDS:
            C = lf.classify(3, kind, depth)
            out.append((f"q=3 {kind} depth {depth}: {C.admissible} admissible, one Y_alpha each, "
                        f"conjugate excluded", C.unique_Y and C.conjugate_excluded))
    return out


def graph_structure():
    out = []
    for q in (2, 3):
        out.append((f"q={q}: forest, injective attachment, branching, R<=2 M<=2",
                    _ok(verify.check_graph(q))))
        good = True
        for R in range(3):
            for M in range(3):
                rep = dg.genus_report(dg.build_graph(q, R, M))
                s = sum(v["genus"] for v in rep["per_level"].values())
                good = good and s == rep["total_genus"] and rep["arithmetic_genus"] == s + rep["graph_h1"]
        out.append((f"q={q}: genus report sums agree", good))
    return out


def determinism():
    from .cli import run
    outs = []
    codes = []
    for _ in range(2):
        buf = io.StringIO()
        codes.append(run(["verify", "all", "--q", "3"], buf))
        outs.append(buf.getvalue().encode())
    n = len(json.loads(outs[0])["findings"])
    return [("two runs of verify all --q 3 are byte-identical", outs[0] == outs[1]),
            (f"report has {n} findings (at least 12)", n >= 12),
            (f"exit codes {codes[0]} and {codes[1]} agree", codes[0] == codes[1])]


CRITERIA = [
    (1, "Hermitian curve maximality", hermitian_maximality),
    (2, "Frobenius eigenvalue equals minus the Gauss sum", gauss_eigenvalue),
    (3, "quadratic Gauss sum squares to kappa(-1) q", gauss_identity),
    (4, "hyperelliptic H1 decomposition", hyperelliptic_decomposition),
    (5, "Hermitian H1 under the unitary Borel group", hermitian_decomposition),
    (6, "DL level-zero decomposition", dl_decomposition),
    (7, "filtration dimension table and Gr^1 orders", filtration_table),
    (8, "correction character on units is kappa", delta_units),
    (9, "Weil twist trace equals the correction value", weil_trace),
    (10, "admissible characters partition into Y_alpha", admissible_partition),
    (11, "dual graph structure", graph_structure),
    (12, "determinism of verify all", determinism),
]

# criteria whose published form does not hold as stated; see the notes in the README
EXPECTED_FAILURES = {5, 7}


def evaluate(number):
    """(passed, lines, seconds) for one criterion."""
    _, title, fn = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    subs = fn()
    dt = time.perf_counter() - t0
    passed = all(ok for _, ok in subs)
    lines = [f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} ({dt:.1f} s)"]
    lines += [f"    {'PASS' if ok else 'FAIL'} {label}" for label, ok in subs]
    return passed, lines, dt
