"""Command line entry point: `python3 -m artifact ...` or `artifact ...`.

Exit codes: 0 when no finding is a mismatch, 1 when some finding is, 2 for
usage errors, 3 when a budget or precision limit stops a computation.
Budgets can be raised with ARTIFACT_BUDGET_<NAME> environment variables.
"""

import argparse
import json
import sys
import time

from . import curves, orders, verify
from . import dual_graph as dg
from . import finite_groups as fg
from . import local_fields as lf
from .errors import BudgetError, ConfigurationError, PrecisionError
from .verify import Finding, COMPUTED, MISMATCH

SCHEMA = 1
VERIFY_NAMES = ("gauss", "hermitian", "hyperelliptic", "dl", "table", "gr1", "delta", "weil-trace",
                "admissible", "graph")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _report(command: str, params: dict, findings: list, elapsed=None) -> dict:
    out = {"schema": SCHEMA, "command": command, "parameters": params,
           "findings": [f.to_json() for f in sorted(findings, key=lambda f: f.id)]}
    if elapsed is not None:
        out["timing"] = round(elapsed, 3)
    return out


def _render_table(report: dict) -> str:
    lines = [f"{report['command']}  {json.dumps(report['parameters'], sort_keys=True)}"]
    for f in report["findings"]:
        val = json.dumps(f["value"], sort_keys=True)
        if len(val) > 60:
            val = val[:57] + "..."
        lines.append(f"  {f['status']:<9} {f['id']:<45} {val}")
    return "\n".join(lines) + "\n"


# subcommand bodies; each returns (params, findings) or raw bytes for graph export

def cmd_verify(a):
    names = VERIFY_NAMES if a.what == "all" else (a.what,)
    return {"q": a.q, "checks": list(names)}, verify.run_checks(names, a.q)


def cmd_curve(a):
    model = curves.make_model(a.family, a.q)
    if a.action == "points":
        n = curves.point_count(model, a.ext)
        val = n
        anchor = "Hermitian curve maximality" if model.family == "Hermitian" and a.ext == 2 else "point count"
        status = COMPUTED
        if model.family == "Hermitian" and a.ext == 2:
            status = verify.VERIFIED if n == a.q**3 + 1 else MISMATCH
        fid = f"curve.{model.family}.points.q{a.q}.ext{a.ext}"
        return {"family": model.family, "q": a.q, "ext": a.ext}, [Finding(fid, anchor, status, val)]
    if a.action == "genus":
        return {"family": model.family, "q": a.q}, [Finding(f"curve.{model.family}.genus.q{a.q}", "genus",
                                                            COMPUTED, model.genus)]
    if a.action == "model":
        return {"family": model.family, "q": a.q}, [Finding(f"curve.{model.family}.model.q{a.q}", "plumbing",
                                                            COMPUTED, model.to_json())]
    rows = curves.dl_hermitian_counts(a.q, a.ext)
    return {"q": a.q, "kmax": a.ext}, [Finding(f"curve.twist_counts.q{a.q}", "DL and Hermitian counts",
                                               COMPUTED, [list(r) for r in rows])]


def cmd_group(a):
    if a.which == "hermitian":
        R = fg.hermitian_decomposition(a.q)
        return {"q": a.q}, verify.check_hermitian_group(a.q) + [
            Finding(f"group.hermitian.report.q{a.q}", "Hermitian curve under the unitary Borel group", COMPUTED,
                    R.to_json())]
    if a.which == "dl":
        R = fg.dl_decomposition(a.q)
        return {"q": a.q}, verify.check_dl(a.q) + [
            Finding(f"group.dl.report.q{a.q}", "DL curve under the level-zero group", COMPUTED, R.to_json())]
    if a.which == "hyperelliptic":
        R = fg.hyperelliptic_decomposition(a.q)
        return {"q": a.q}, verify.check_hyperelliptic(a.q) + [
            Finding(f"group.hyperelliptic.report.q{a.q}", "hyperelliptic curve under translations", COMPUTED,
                    R.to_json())]
    G = fg.build_ramified_quotient(a.q, a.which)
    act = fg.ramified_action(G, a.which)
    return {"q": a.q, "case": a.which}, [Finding(f"group.{a.which}.q{a.q}", "ramified quotient action", COMPUTED,
                                                 {"order": G.order, "homomorphism": act.verify_homomorphism()})]


def cmd_local(a):
    if a.action == "classify":
        C = lf.classify(a.q, a.ext, a.depth)
        return {"q": a.q, "ext": a.ext, "depth": a.depth}, [
            Finding(f"local.classify.{a.ext}.q{a.q}.d{a.depth}", "admissible characters fall in exactly one Y_alpha",
                    verify.VERIFIED if C.unique_Y and C.conjugate_excluded else MISMATCH, C.to_json())]
    ext = lf.extension(a.q, a.ext)
    D = lf.delta_char(ext, a.m)
    ok = lf.check_delta_on_units(ext, a.m)
    return {"q": a.q, "ext": a.ext, "m": a.m}, [
        Finding(f"local.delta.{a.ext}.m{a.m}.q{a.q}", "correction character restricted to units is kappa",
                verify.VERIFIED if ok else MISMATCH, D.to_json())]


def cmd_orders(a):
    if a.action == "table":
        rows = orders.dimension_table(a.q, a.mmax)
        fs = []
        for r in rows:
            fs.append(Finding(f"orders.table.{r['kind']}.m{r['m']}.q{a.q}", "filtration dimension table",
                              verify.VERIFIED if r["matches"] else MISMATCH,
                              {k: r[k] for k in ("VA/WA", "VB/WB", "WA/VA+", "WB/VB+")},
                              {"expected": r["expected"], "r": r["r"], "r_prime": r["r_prime"]}))
        return {"q": a.q, "mmax": a.mmax}, fs
    R = orders.gr1_structure(a.q, a.ext, a.m)
    return {"q": a.q, "m": a.m, "ext": a.ext}, [
        Finding(f"orders.gr1.{a.ext}.m{a.m}.q{a.q}", "order of the delta-kernel graded piece",
                verify.VERIFIED if R.gr1_order == R.expected else MISMATCH, R.gr1_order, R.to_json())]


def cmd_graph(a):
    if getattr(a, "input", None):
        with open(a.input, "rb") as fh:
            g = dg.import_json(fh.read())
    else:
        g = dg.build_graph(a.q, a.radius, a.depth, split_ramified=a.split_ramified)
    params = {"q": g.q, "radius": g.R, "depth": g.M, "split_ramified": g.split_ramified}
    if a.action == "build":
        return dg.export(g, a.graph_format)
    if a.action == "validate":
        v = dg.validate(g)
        return params, [Finding(f"graph.validate.q{g.q}", "dual graph is a forest without triple points",
                                verify.VERIFIED if v["ok"] else MISMATCH, v)]
    return params, [
        Finding(f"graph.genus.q{g.q}", "component genera add up", COMPUTED, dg.genus_report(g)),
        Finding(f"graph.branching.q{g.q}", "branching numbers", COMPUTED, dg.branching_report(g)),
        Finding(f"graph.counts.q{g.q}", "vertices per level", COMPUTED,
                {f"{k[0]}:{k[1]}": v for k, v in sorted(dg.level_counts(g).items())}),
    ]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Finite checks around the stable Lubin-Tate curve of GL_2.")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify")
    v.add_argument("what", choices=("all",) + VERIFY_NAMES)
    v.add_argument("--q", type=int, default=3)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("curve")
    c.add_argument("action", choices=("points", "genus", "model", "twist-counts"))
    c.add_argument("--family", default="hermitian")
    c.add_argument("--q", type=int, default=3)
    c.add_argument("--ext", type=int, default=1, help="count over F_{q^ext}")
    c.set_defaults(func=cmd_curve)

    g = sub.add_parser("group")
    g.add_argument("which", choices=("hermitian", "dl", "hyperelliptic", "level0", "evenLevel", "oddLevel"))
    g.add_argument("--q", type=int, default=3)
    g.set_defaults(func=cmd_group)

    lo = sub.add_parser("local")
    lo.add_argument("action", choices=("classify", "delta"))
    lo.add_argument("--q", type=int, default=3)
    lo.add_argument("--ext", choices=lf.KINDS, default="unramified")
    lo.add_argument("--depth", type=int, default=2)
    lo.add_argument("--m", type=int, default=1)
    lo.set_defaults(func=cmd_local)

    o = sub.add_parser("orders")
    o.add_argument("action", choices=("table", "gr1"))
    o.add_argument("--q", type=int, default=3)
    o.add_argument("--mmax", type=int, default=6)
    o.add_argument("--m", type=int, default=1)
    o.add_argument("--ext", choices=("unramified", "ramified", "ramified1", "ramified2"), default="unramified")
    o.set_defaults(func=cmd_orders)

    gr = sub.add_parser("graph")
    gr.add_argument("action", choices=("build", "validate", "stats"))
    gr.add_argument("--q", type=int, default=3)
    gr.add_argument("--radius", type=int, default=1)
    gr.add_argument("--depth", type=int, default=0)
    gr.add_argument("--split-ramified", action="store_true")
    gr.add_argument("--graph-format", choices=("dot", "json"), default="dot")
    gr.add_argument("--input", help="read a graph from a JSON export")
    gr.set_defaults(func=cmd_graph)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if getattr(a, "ext", None) == "ramified":
            a.ext = "ramified1"
        t0 = time.perf_counter()
        result = a.func(a)
        elapsed = time.perf_counter() - t0 if a.timing else None
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ConfigurationError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except BudgetError as e:
        print(f"budget exceeded: {e.parameter}={e.value} (limit {e.limit}; raise ARTIFACT_BUDGET_"
              f"{e.parameter.upper()})", file=sys.stderr)
        return 3
    except PrecisionError as e:
        print(f"precision error: {e}", file=sys.stderr)
        return 3
    if isinstance(result, bytes):
        _emit(result, a.out, stdout)
        return 0
    params, findings = result
    rep = _report(a.command + (" " + _sub(a) if _sub(a) else ""), params, findings, elapsed)
    text = json.dumps(rep, sort_keys=True, indent=1) + "\n" if a.format == "json" else _render_table(rep)
    _emit(text.encode(), a.out, stdout)
    return 1 if any(f.status == MISMATCH for f in findings) else 0


def _sub(a):
    for k in ("what", "action", "which"):
        if hasattr(a, k):
            return getattr(a, k)
    return ""


def _emit(data: bytes, path, stdout):
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        stdout.write(data.decode())
        stdout.flush()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
