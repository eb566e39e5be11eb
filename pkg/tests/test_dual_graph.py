import json

import pytest
from hypothesis import given, settings, strategies as st

from artifact import dual_graph as dg
from artifact.errors import BudgetError, ConfigurationError


def test_level_zero_radius_one():
    g = dg.build_graph(3, 1, 0)
    assert len(g.vertices) == 9 and len(g.edges) == 8
    assert dg.level_counts(g) == {(0, "unramified"): 5, (0, "ramified"): 4}
    assert g.boundary_stubs == 4 * 3
    v = dg.validate(g)
    assert v["ok"] and v["components"] == 1 and v["h1_graph_rank"] == 0


def test_root_points_and_way_back():
    g = dg.build_graph(3, 2, 0)
    root = [e.label_u for e in g.edges if e.u == 0]
    assert sorted(root) == [f"inf[{j}]" for j in range(4)]
    # every non-root DL vertex is reached through inf[q]
    back = [e for e in g.edges if g.vertices[e.v].kind == "unramified"]
    assert {e.label_v for e in back} == {"inf[3]"}


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2), st.integers(0, 1), st.booleans())
def test_structure_and_counts(q, R, M, split):
    if q == 5 and R == 2 and M == 1:
        return
    g = dg.build_graph(q, R, M, split_ramified=split)
    v = dg.validate(g)
    assert v["ok"] and v["forest"] and v["stability_interior"]
    assert dg.level_counts(g) == dg.expected_level_counts(q, R, M, split_ramified=split)
    assert all(b["match"] for b in dg.branching_report(g).values())
    assert all(d["match"] for d in dg.degree_report(g).values())


def test_degrees_at_depth_one():
    q = 3
    g = dg.build_graph(q, 1, 1)
    d = dg.degree_report(g)
    assert d["unramified_root"]["degree"] == (q + 1) + q * (q * q - 1)
    assert d["ramified_midpoint"]["degree"] == 2 + 2 * (q * q - 1)
    gs = dg.build_graph(q, 1, 1, split_ramified=True)
    assert dg.degree_report(gs)["ramified_midpoint"]["degree"] == 2 + (q * q - 1)


def test_curve_labels_by_level():
    assert [dg.curve_label(m, "unramified") for m in range(3)] == ["DL", "Hermitian", "Hermitian"]
    assert [dg.curve_label(m, "ramified") for m in range(4)] == ["P1-ram0", "HyperellipticOdd", "P1-ramEven",
                                                                 "HyperellipticOdd"]
    assert dg.curve_genus("DL", 3) == 3 and dg.curve_genus("HyperellipticOdd", 5) == 2
    assert dg.curve_genus("P1-ramEven", 5) == 0


def test_custom_branching_table():
    t = dg.BranchingTable(unramified_root=2, ramified_root=1, ramified_extensions=1)
    g = dg.build_graph(3, 1, 1, table=t)
    assert dg.level_counts(g) == dg.expected_level_counts(3, 1, 1, table=t)
    assert dg.level_counts(g)[(1, "unramified")] == 10


def test_genus_report():
    g = dg.build_graph(3, 1, 1)
    rep = dg.genus_report(g)
    assert rep["per_level"]["0"]["genus"] == 5 * 3
    # level 1: 5 * 24 Hermitian curves of genus 3 and 4 * 16 hyperelliptic curves of genus 1
    assert rep["per_level"]["1"]["genus"] == 5 * 24 * 3 + 4 * 16 * 1
    assert rep["graph_h1"] == 0 and rep["arithmetic_genus"] == rep["total_genus"]


def _corrupt(kind):
    g = dg.build_graph(3, 1, 0)
    a, b = g.vertices[0], g.vertices[1]
    if kind == "cycle":
        g.add_edge(a, b, "cm", "1")
    elif kind == "reuse":
        g.add_edge(a, g.vertices[4], "inf[0]", "1")
        g.edges.pop(1)
    elif kind == "label":
        g.edges[0].label_u = "nowhere"
    elif kind == "levels":
        w = g.add_vertex(2, "unramified", "far")
        g.add_edge(a, w, "cm", "infinity")
    elif kind == "curve":
        g.vertices[2].curve_label = "Hermitian"
    return g


@pytest.mark.parametrize("kind,flag", [("cycle", "forest"), ("cycle", "simple"), ("reuse", "attachment_injective"),
                                       ("label", "attachment_labels_valid"), ("levels", "edge_rules"),
                                       ("curve", "curve_labels")])
def test_validation_detects_corruption(kind, flag):
    v = dg.validate(_corrupt(kind))
    assert not v[flag] and not v["ok"]


def test_json_round_trip():
    g = dg.build_graph(3, 1, 1, split_ramified=True)
    data = dg.export(g, "json")
    h = dg.import_json(data)
    assert h == g and dg.export(h, "json") == data
    assert json.loads(data)["split_ramified"] is True


def test_dot_export():
    g = dg.build_graph(3, 1, 0)
    text = dg.export(g, "dot").decode()
    assert text.count(" -- ") == 8
    assert "color=blue" in text and "color=green" in text
    empty = dg.export(dg.GraphTruncation(3, 0), "dot").decode()
    assert empty.startswith("graph gamma {") and " -- " not in empty
    with pytest.raises(ConfigurationError):
        dg.export(g, "svg")


def test_bad_parameters_and_budget(monkeypatch):
    with pytest.raises(ConfigurationError):
        dg.build_gamma0(3, -1)
    with pytest.raises(ConfigurationError):
        dg.build_graph(6, 1, 0)
    monkeypatch.setenv("ARTIFACT_BUDGET_GRAPH_VERTICES", "50")
    with pytest.raises(BudgetError):
        dg.build_graph(3, 1, 2)
