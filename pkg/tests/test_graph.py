import json
import random
from collections import Counter
from itertools import product

import numpy as np
import pytest

from orthograph import FieldCtx, Mat
from orthograph.classify import classify_component_m2, classify_component_t2
from orthograph.errors import InfiniteField, TooLarge, UnsupportedFormat
from orthograph.graph import (
    UNREACHABLE,
    bfs_distance,
    build_graph,
    components,
    diameter,
    distance_matrix,
    export,
    shortest_path,
)

GF2, GF3, GF5 = FieldCtx(2), FieldCtx(3), FieldCtx(5)


def naive_graph(n, p, triangular):
    """Pure-Python enumeration: (vertex tuples, edge set)."""

    def mul(X, Y):
        return tuple(tuple(sum(X[i][k] * Y[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))

    def det(X):
        # cofactor expansion along the first row
        if len(X) == 1:
            return X[0][0]
        return sum(
            (-1) ** c * X[0][c] * det(tuple(r[:c] + r[c + 1 :] for r in X[1:])) for c in range(len(X))
        )

    zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    verts = []
    for flat in product(range(p), repeat=n * n):
        X = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
        if triangular and any(X[i][j] for i in range(n) for j in range(i)):
            continue
        if X != zero and det(X) % p == 0:
            verts.append(X)
    edges = {
        (i, j)
        for i, A in enumerate(verts)
        for j, B in enumerate(verts)
        if i < j and mul(A, B) == zero and mul(B, A) == zero
    }
    return verts, edges


def formula(n, q):
    return q ** (n * (n + 1) // 2) - (q - 1) ** n * q ** (n * (n - 1) // 2) - 1


@pytest.mark.parametrize(
    "alg,n,ctx,count",
    [("tn", 3, GF2, 55), ("mn", 2, GF2, 9), ("tn", 2, GF3, 14)],
)
def test_vertex_counts(alg, n, ctx, count):
    assert build_graph(alg, n, ctx).order == count


@pytest.mark.parametrize("alg,n,p", [("tn", 2, 3), ("tn", 3, 2), ("mn", 2, 2), ("mn", 2, 3), ("tn", 2, 5)])
def test_matches_naive_enumeration(alg, n, p):
    g = build_graph(alg, n, FieldCtx(p))
    verts, edges = naive_graph(n, p, alg == "tn")
    assert [v.rows for v in g.vertices] == verts
    iu, ju = np.nonzero(np.triu(g.adjacency, 1))
    assert set(zip(iu.tolist(), ju.tolist())) == edges
    assert (g.adjacency == g.adjacency.T).all()
    assert not g.adjacency.diagonal().any()


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (4, 2)])
def test_vertex_count_formula(n, q):
    assert build_graph("tn", n, FieldCtx(q)).order == formula(n, q)


def test_component_sizes():
    g = build_graph("mn", 2, GF2)
    assert Counter(len(c) for c in components(g)) == Counter({2: 3, 1: 3})
    g = build_graph("tn", 2, GF2)
    assert sorted(len(c) for c in components(g)) == [1, 2, 2]
    assert len(components(build_graph("tn", 3, GF2))) == 1


def test_components_are_sorted_partition():
    g = build_graph("mn", 2, GF3)
    comps = components(g)
    assert sorted(k for c in comps for k in c) == list(range(g.order))
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    assert all(c == sorted(c) for c in comps)


def test_distances():
    g = build_graph("tn", 3, GF2)
    a_hat = Mat.identity(3, GF2) - Mat.unit(3, 1, 1, GF2)
    u, v = g.index_of(a_hat), g.index_of(Mat.jordan(3, GF2))
    assert bfs_distance(g, u, v) == 4
    assert bfs_distance(g, u, u) == 0
    path = shortest_path(g, u, v)
    assert len(path) == 5 and path[0] == u and path[-1] == v
    t2 = build_graph("tn", 2, GF2)
    e11, e12 = Mat.unit(2, 1, 1, GF2), Mat.unit(2, 1, 2, GF2)
    assert bfs_distance(t2, t2.index_of(e11), t2.index_of(e12)) == UNREACHABLE
    assert shortest_path(t2, t2.index_of(e11), t2.index_of(e12)) is None


@pytest.mark.parametrize("alg,n,p", [("tn", 3, 2), ("mn", 2, 3), ("tn", 2, 5)])
def test_bfs_agrees_with_distance_matrix(alg, n, p):
    g = build_graph(alg, n, FieldCtx(p))
    dist = distance_matrix(g)
    for u in range(g.order):
        for v in range(g.order):
            d = bfs_distance(g, u, v)
            assert dist[u, v] == (-1 if d == UNREACHABLE else d)


def test_distance_is_a_metric():
    g = build_graph("tn", 3, GF3)
    dist = distance_matrix(g)
    assert (dist == dist.T).all()
    rng = random.Random(7)
    for _ in range(3000):
        a, b, c = (rng.randrange(g.order) for _ in range(3))
        assert dist[a, c] <= dist[a, b] + dist[b, c]


def test_diameters():
    assert str(diameter(build_graph("tn", 3, GF2))) == "connected, diameter = 4"
    rep = diameter(build_graph("tn", 2, GF2))
    assert not rep.connected and rep.diameter == UNREACHABLE
    assert sorted(rep.component_diameters) == [0, 1, 1]


@pytest.mark.parametrize("ctx", [GF3, GF5])
def test_t2_component_diameters_larger_fields(ctx):
    g = build_graph("tn", 2, ctx)
    rep = diameter(g)
    expected = {"V1": 2, "V3": 1, "V4": 2}
    for comp, d in zip(components(g), rep.component_diameters):
        assert d == expected[classify_component_t2(g.vertex(comp[0])).family]
    assert len(rep.component_diameters) == 2 + (ctx.p - 1)


@pytest.mark.parametrize("alg,ctx", [("mn", GF2), ("mn", GF3), ("mn", GF5), ("tn", GF2), ("tn", GF3), ("tn", GF5)])
def test_components_match_labels(alg, ctx):
    g = build_graph(alg, 2, ctx)
    classify = classify_component_m2 if alg == "mn" else classify_component_t2
    classes = {}
    for k, A in enumerate(g.vertices):
        classes.setdefault(classify(A), []).append(k)
    assert sorted(classes.values()) == components(g)


def test_jobs_do_not_change_anything():
    a = build_graph("tn", 3, GF3, jobs=1)
    b = build_graph("tn", 3, GF3, jobs=4)
    assert (a.array == b.array).all() and (a.adjacency == b.adjacency).all()
    assert components(a) == components(b)


def test_export_formats():
    g = build_graph("mn", 2, GF2)
    dot = export(g, "dot").decode()
    assert dot.count("label=") == 9
    assert dot.count(" -- ") == 3
    assert export(g, "dot") == export(build_graph("mn", 2, GF2), "dot")
    empty = build_graph("tn", 1, GF2)
    assert empty.order == 0
    assert json.loads(export(empty, "json")) == {"vertices": [], "edges": []}
    doc = json.loads(export(build_graph("tn", 2, GF2), "json"))
    assert doc["vertices"] == ["0,0;0,1", "0,1;0,0", "0,1;0,1", "1,0;0,0", "1,1;0,0"]
    # E22 -- E11 and (0 1; 0 1) -- (1 1; 0 0)
    assert doc["edges"] == [[0, 3], [2, 4]]
    with pytest.raises(UnsupportedFormat):
        export(g, "gml")


def test_enumeration_guards():
    with pytest.raises(InfiniteField):
        build_graph("tn", 3, FieldCtx.rationals())
    with pytest.raises(TooLarge):
        build_graph("tn", 3, GF3, max_size=100)
