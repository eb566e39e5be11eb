"""Write a dual-graph truncation as DOT (and JSON) and print its statistics.

    python3 scripts/export_graph.py --q 3 --radius 1 --depth 1 --out gamma
    dot -Tsvg gamma.dot > gamma.svg       # if graphviz is available
"""

import argparse
import json

from artifact import dual_graph as dg

ap = argparse.ArgumentParser()
ap.add_argument("--q", type=int, default=3)
ap.add_argument("--radius", type=int, default=1)
ap.add_argument("--depth", type=int, default=0)
ap.add_argument("--split-ramified", action="store_true")
ap.add_argument("--out", default="gamma")
a = ap.parse_args()

g = dg.build_graph(a.q, a.radius, a.depth, split_ramified=a.split_ramified)
for fmt in ("dot", "json"):
    with open(f"{a.out}.{fmt}", "wb") as fh:
        fh.write(dg.export(g, fmt))
v = dg.validate(g)
print(json.dumps({"vertices": v["vertices"], "edges": v["edges"], "ok": v["ok"],
                  "counts": {f"{k[0]}:{k[1]}": n for k, n in sorted(dg.level_counts(g).items())},
                  "genus": dg.genus_report(g)}, indent=1))
