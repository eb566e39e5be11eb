"""Finite truncations of the dual graph of the stable curve.

Level 0 is the barycentric subdivision of the Bruhat-Tits tree: one
unramified vertex (a DL curve) per lattice class and one ramified vertex
(a projective line) per edge midpoint.  Each level-0 vertex then carries a
tree of higher-level vertices, with branching numbers from a BranchingTable.

Tree vertices are named by paths from the root class: the root has q+1
neighbours indexed by P^1(k) = {0..q-1, inf}; every other vertex has q forward
neighbours indexed by k plus the way back.  Ids are assigned breadth first.
"""

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import ConfigurationError, check_budget
from .finite_field import prime_power

CURVE_LABELS = ("DL", "Hermitian", "P1-ram0", "P1-ramEven", "HyperellipticOdd")
COLORS = {"DL": "blue", "P1-ram0": "green", "Hermitian": "cyan",
          "HyperellipticOdd": "red", "P1-ramEven": "black"}
BASE_POINT = {"DL": "cm", "Hermitian": "(0,0)", "P1-ram0": "1",
              "P1-ramEven": "0", "HyperellipticOdd": "(0,0)"}


def curve_label(level: int, kind: str) -> str:
    if kind == "unramified":
        return "DL" if level == 0 else "Hermitian"
    if level == 0:
        return "P1-ram0"
    return "HyperellipticOdd" if level % 2 else "P1-ramEven"


def curve_genus(label: str, q: int) -> int:
    if label in ("DL", "Hermitian"):
        return q * (q - 1) // 2
    if label == "HyperellipticOdd":
        return (q - 1) // 2
    return 0


def sl2_order(q: int) -> int:
    return q * (q * q - 1)


def distinguished_points(label: str, q: int) -> set:
    """Names of the points an edge may glue at, before torsor indexing."""
    if label == "DL":
        return {f"inf[{j}]" for j in range(q + 1)} | {"cm"}
    if label == "P1-ram0":
        return {"0", "infinity", "1"}
    if label == "P1-ramEven":
        return {"0", "infinity"}
    return {"(0,0)", "infinity"}


def _point_ok(label: str, q: int, name: str) -> bool:
    head = name.split("#")[0]
    return head in distinguished_points(label, q)


@dataclass
class BranchingTable:
    """Children per vertex for each level transition; None means the default."""
    unramified_root: int = None     # level 0 -> 1, DL vertex
    hermitian: int = None           # level m -> m+1, m >= 1
    ramified_root: int = None       # per ramified extension, level 0 -> 1
    hyperelliptic: int = None       # odd m -> m+1
    p1_even: int = None             # even m >= 2 -> m+1
    ramified_extensions: int = 2    # child torsors at a ramified level-0 vertex

    def resolved(self, q: int) -> dict:
        d = {
            "unramified_root": sl2_order(q), "hermitian": q**3, "ramified_root": q * q - 1,
            "hyperelliptic": q, "p1_even": q * q,
        }
        for k in d:
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        d["ramified_extensions"] = self.ramified_extensions
        return d

    def children(self, q: int, label: str, level: int) -> int:
        d = self.resolved(q)
        if label == "DL":
            return d["unramified_root"]
        if label == "Hermitian":
            return d["hermitian"]
        if label == "P1-ram0":
            return d["ramified_root"] * d["ramified_extensions"]
        if label == "HyperellipticOdd":
            return d["hyperelliptic"]
        return d["p1_even"]

    def torsor(self, label: str) -> str:
        return {"DL": "SL_2(F_q)", "Hermitian": "Heisenberg group of order q^3",
                "P1-ram0": "F_{q^2}^x (one per ramified extension)", "HyperellipticOdd": "F_q",
                "P1-ramEven": "F_{q^2}"}[label]


@dataclass
class Vertex:
    id: int
    level: int
    kind: str
    curve_label: str
    name: str
    attachment_points: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"id": self.id, "level": self.level, "kind": self.kind, "curveLabel": self.curve_label,
                "name": self.name, "attachmentPoints": list(self.attachment_points)}


@dataclass
class Edge:
    u: int
    v: int
    label_u: str
    label_v: str

    def to_json(self) -> dict:
        return {"endpoints": [self.u, self.v], "attachment": [self.label_u, self.label_v]}


@dataclass
class GraphTruncation:
    q: int
    R: int
    M: int = 0
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    split_ramified: bool = False
    boundary_stubs: int = 0
    table: dict = field(default_factory=dict)

    def add_vertex(self, level, kind, name, label=None) -> Vertex:
        check_budget("graph_vertices", len(self.vertices) + 1)
        lab = label or curve_label(level, kind)
        v = Vertex(len(self.vertices), level, kind, lab, name, [BASE_POINT[lab]])
        self.vertices.append(v)
        return v

    def add_edge(self, u: Vertex, v: Vertex, lu: str, lv: str):
        self.edges.append(Edge(u.id, v.id, lu, lv))

    def degree(self, vid: int) -> int:
        return sum((e.u == vid) + (e.v == vid) for e in self.edges)

    def adjacency(self) -> dict:
        adj = {v.id: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        return adj

    def to_json(self) -> dict:
        return {"q": self.q, "radius": self.R, "depth": self.M, "split_ramified": self.split_ramified,
                "boundary_stubs": self.boundary_stubs, "branching": self.table,
                "vertices": [v.to_json() for v in self.vertices],
                "edges": [e.to_json() for e in self.edges]}

    @classmethod
    def from_json(cls, d: dict) -> "GraphTruncation":
        g = cls(d["q"], d["radius"], d["depth"], split_ramified=d["split_ramified"],
                boundary_stubs=d["boundary_stubs"], table=d["branching"])
        for v in d["vertices"]:
            g.vertices.append(Vertex(v["id"], v["level"], v["kind"], v["curveLabel"], v["name"],
                                     list(v["attachmentPoints"])))
        for e in d["edges"]:
            g.edges.append(Edge(e["endpoints"][0], e["endpoints"][1], e["attachment"][0], e["attachment"][1]))
        return g

    def __eq__(self, other):
        return isinstance(other, GraphTruncation) and self.to_json() == other.to_json()


def _check_q(q):
    prime_power(q)
    if q < 2:
        raise ConfigurationError("q must be a prime power")


def build_gamma0(q: int, R: int) -> GraphTruncation:
    """Barycentric subdivision of the Bruhat-Tits tree out to radius R."""
    _check_q(q)
    if R < 0:
        raise ConfigurationError("radius must be nonnegative")
    g = GraphTruncation(q, R)
    root = g.add_vertex(0, "unramified", "")
    # (vertex, path, distance)
    queue = deque([(root, (), 0)])
    P1 = [str(j) for j in range(q)] + ["inf"]
    while queue:
        v, path, d = queue.popleft()
        if d == R:
            g.boundary_stubs += q if d > 0 else q + 1
            continue
        steps = P1 if d == 0 else [str(j) for j in range(q)]
        for j, step in enumerate(steps):
            child_path = path + (step,)
            name = "/".join(child_path)
            mid = g.add_vertex(0, "ramified", name + "~")
            w = g.add_vertex(0, "unramified", name)
            # the DL side glues at the point at infinity for the direction;
            # the P^1 side gets infinity or 0 by the parity of the lattice chain
            # the way back from w is the last point inf[q] of P^1(k)
            near, far = ("infinity", "0") if d % 2 == 0 else ("0", "infinity")
            g.add_edge(v, mid, f"inf[{j}]", near)
            g.add_edge(mid, w, far, f"inf[{q}]")
            queue.append((w, child_path, d + 1))
    return g


def attach_level_trees(g0: GraphTruncation, M: int, table: BranchingTable = None,
                       split_ramified: bool = False) -> GraphTruncation:
    """Hang a level tree of depth M on every level-0 vertex."""
    if M < 0:
        raise ConfigurationError("depth must be nonnegative")
    table = table or BranchingTable()
    q = g0.q
    g = GraphTruncation.from_json(g0.to_json())
    g.M = M
    g.split_ramified = split_ramified
    g.table = table.resolved(q)
    roots = [v for v in g.vertices if v.level == 0]
    if split_ramified:
        # the second ramified extension gets its own level-0 vertex per midpoint
        extra = []
        for v in roots:
            if v.kind == "ramified":
                extra.append(g.add_vertex(0, "ramified", v.name + "'"))
        roots = roots + extra
    # check the full size before building
    total = len(g.vertices)
    for v in roots:
        n, lab = 1, v.curve_label
        for m in range(M):
            n *= _children(table, q, lab, m, split_ramified)
            total += n
            lab = curve_label(m + 1, v.kind)
    check_budget("graph_vertices", total)
    for v in roots:
        frontier = [v]
        for m in range(M):
            new = []
            for u in frontier:
                n = _children(table, q, u.curve_label, m, split_ramified)
                ext_count = table.ramified_extensions if (u.curve_label == "P1-ram0" and not split_ramified) else 1
                per = n // ext_count
                for i in range(n):
                    if ext_count > 1:
                        tag = f"{i // per}.{i % per}"
                    else:
                        tag = str(i)
                    w = g.add_vertex(m + 1, u.kind, f"{u.name}|{tag}")
                    point = f"{BASE_POINT[u.curve_label]}#{tag}"
                    u.attachment_points.append(point)
                    g.add_edge(u, w, point, "infinity")
                    new.append(w)
            frontier = new
    return g


def _children(table, q, label, level, split):
    if label == "P1-ram0" and split:
        return table.resolved(q)["ramified_root"]
    return table.children(q, label, level)


def build_graph(q: int, R: int, M: int, table: BranchingTable = None, split_ramified: bool = False):
    return attach_level_trees(build_gamma0(q, R), M, table, split_ramified)


# validation

def _components(g: GraphTruncation) -> int:
    adj = g.adjacency()
    seen = set()
    count = 0
    for v in adj:
        if v in seen:
            continue
        count += 1
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def validate(g: GraphTruncation) -> dict:
    """Forest, simplicity, attachment injectivity, edge rules and stability bookkeeping."""
    byid = {v.id: v for v in g.vertices}
    comps = _components(g)
    pairs = [tuple(sorted((e.u, e.v))) for e in g.edges]
    loops = [e for e in g.edges if e.u == e.v]
    used = {}
    reused = []
    bad_labels = []
    bad_edges = []
    for e in g.edges:
        for vid, lab in ((e.u, e.label_u), (e.v, e.label_v)):
            key = (vid, lab)
            if key in used:
                reused.append({"vertex": vid, "point": lab})
            used[key] = True
            if vid in byid and not _point_ok(byid[vid].curve_label, g.q, lab):
                bad_labels.append({"vertex": vid, "point": lab})
        a, b = byid.get(e.u), byid.get(e.v)
        if a is None or b is None or e.u == e.v:
            bad_edges.append(e.to_json())
            continue
        ok = abs(a.level - b.level) == 1 or (a.level == b.level == 0 and {a.kind, b.kind} == {"unramified", "ramified"})
        if not ok:
            bad_edges.append(e.to_json())
    label_errors = [v.id for v in g.vertices if v.curve_label != curve_label(v.level, v.kind)]
    # stability: genus-0 interior vertices must meet at least 3 gluing points
    unstable = []
    for v in g.vertices:
        if curve_genus(v.curve_label, g.q) != 0 or v.level >= g.M:
            continue
        if v.level == 0 and g.split_ramified and v.name.endswith("'"):
            continue
        if g.degree(v.id) < 3:
            unstable.append(v.id)
    report = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "components": comps,
        "forest": len(g.vertices) == len(g.edges) + comps and not loops,
        "simple": len(set(pairs)) == len(pairs) and not loops,
        "attachment_injective": not reused,
        "attachment_labels_valid": not bad_labels,
        "edge_rules": not bad_edges,
        "curve_labels": not label_errors,
        "stability_interior": not unstable,
        "stability_caveat": "vertices at the truncation boundary are not checked",
        "violations": {"reused": reused[:20], "bad_labels": bad_labels[:20], "bad_edges": bad_edges[:20],
                       "unstable": unstable[:20], "label_errors": label_errors[:20]},
        "h1_graph_rank": len(g.edges) - len(g.vertices) + comps,
    }
    report["ok"] = all(report[k] for k in ("forest", "simple", "attachment_injective",
                                           "attachment_labels_valid", "edge_rules", "curve_labels"))
    return report


def expected_level_counts(q: int, R: int, M: int, table: BranchingTable = None, split_ramified=False) -> dict:
    """Closed-form vertex counts per (level, kind)."""
    table = table or BranchingTable()
    d = table.resolved(q)
    U = 1 + (q + 1) * sum(q**i for i in range(R))
    ram = U - 1
    if split_ramified:
        ram_roots, first = 2 * ram, d["ramified_root"]
    else:
        ram_roots, first = ram, d["ramified_root"] * d["ramified_extensions"]
    out = {(0, "unramified"): U, (0, "ramified"): ram_roots}
    nu, nr = U, ram_roots
    for m in range(1, M + 1):
        nu *= d["unramified_root"] if m == 1 else d["hermitian"]
        if m == 1:
            nr *= first
        else:
            nr *= d["hyperelliptic"] if (m - 1) % 2 else d["p1_even"]
        out[(m, "unramified")] = nu
        out[(m, "ramified")] = nr
    return {k: v for k, v in out.items() if v}


def level_counts(g: GraphTruncation) -> dict:
    out = {}
    for v in g.vertices:
        out[(v.level, v.kind)] = out.get((v.level, v.kind), 0) + 1
    return out


def branching_report(g: GraphTruncation, table: BranchingTable = None) -> dict:
    """Observed child counts per curve label against the table."""
    table = table or BranchingTable()
    byid = {v.id: v for v in g.vertices}
    kids = {}
    for e in g.edges:
        a, b = byid[e.u], byid[e.v]
        if b.level == a.level + 1:
            kids[a.id] = kids.get(a.id, 0) + 1
    seen = {}
    for v in g.vertices:
        if v.level < g.M:
            want = _children(table, g.q, v.curve_label, v.level, g.split_ramified)
            seen.setdefault(v.curve_label, set()).add((kids.get(v.id, 0), want))
    return {lab: {"observed": sorted({a for a, _ in s}), "expected": sorted({b for _, b in s}),
                  "torsor": table.torsor(lab), "match": all(a == b for a, b in s)}
            for lab, s in sorted(seen.items())}


def degree_report(g: GraphTruncation) -> dict:
    """Degrees of interior level-0 vertices against the closed formula."""
    q = g.q
    out = {}
    if g.R < 1 or g.M < 1:
        return out
    root = g.vertices[0]
    out["unramified_root"] = {"degree": g.degree(root.id), "expected": (q + 1) + g.table["unramified_root"]}
    mids = [v for v in g.vertices if v.level == 0 and v.kind == "ramified" and not v.name.endswith("'")]
    if mids:
        d = g.degree(mids[0].id)
        exp = 2 + (g.table["ramified_root"] if g.split_ramified else g.table["ramified_root"] * g.table["ramified_extensions"])
        out["ramified_midpoint"] = {"degree": d, "expected": exp}
    for v in out.values():
        v["match"] = v["degree"] == v["expected"]
    return out


def genus_report(g: GraphTruncation) -> dict:
    per = {}
    total = 0
    for v in g.vertices:
        gv = curve_genus(v.curve_label, g.q)
        total += gv
        row = per.setdefault(v.level, {"vertices": 0, "genus": 0})
        row["vertices"] += 1
        row["genus"] += gv
    h1 = len(g.edges) - len(g.vertices) + _components(g)
    return {"per_level": {str(k): per[k] for k in sorted(per)}, "total_genus": total,
            "graph_h1": h1, "arithmetic_genus": total + h1}


# export

def export(g: GraphTruncation, fmt: str = "dot") -> bytes:
    if fmt == "json":
        return (json.dumps(g.to_json(), sort_keys=True, indent=1) + "\n").encode()
    if fmt != "dot":
        raise ConfigurationError("format must be dot or json")
    lines = ["graph gamma {", "  node [style=filled, fontsize=8];"]
    for v in g.vertices:
        lab = v.curve_label
        size = 0.3 if lab in ("DL", "Hermitian") else 0.15
        lines.append(f'  n{v.id} [level={v.level}, kind="{v.kind}", curveLabel="{lab}", '
                     f'genus={curve_genus(lab, g.q)}, color={COLORS[lab]}, fillcolor={COLORS[lab]}, '
                     f'width={size}, label=""];')
    for e in g.edges:
        lines.append(f'  n{e.u} -- n{e.v} [taillabel="{e.label_u}", headlabel="{e.label_v}"];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def import_json(data) -> GraphTruncation:
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    return GraphTruncation.from_json(data)
