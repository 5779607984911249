import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from k3isogeny import xtrack, ztrack
from k3isogeny.dualgraph import (DualGraph, KodairaType, classify_fiber, euler_number,
                                 fiber_cycle, is_isomorphic, to_dot, verify_isomorphism)
from k3isogeny.errors import K3Error, NotAFiber
from oracles import nx_isomorphic


def graph(labels, edges, sq=-2):
    return DualGraph([(l, sq) for l in labels], {(a, b): m for a, b, m in edges})


def chain(labels):
    return [(a, b, 1) for a, b in zip(labels, labels[1:])]


def affine_d(n):
    """Extended D_{n+4}: I_n* with n + 5 components."""
    k = n + 5
    labs = ["c%d" % i for i in range(k)]
    spine = labs[2:k - 2]
    edges = chain(spine) + [(labs[0], spine[0], 1), (labs[1], spine[0], 1),
                            (labs[k - 2], spine[-1], 1), (labs[k - 1], spine[-1], 1)]
    return graph(labs, edges)


# non-Kummer big fiber: G34 + Gamma + 2(Delta3 + G23 + Delta2 + G12 + Delta1) + G15 + G16
I4STAR = graph(["G34", "Gamma", "Delta3", "G23", "Delta2", "G12", "Delta1", "G15", "G16"],
               [("G34", "Delta3", 1), ("Gamma", "Delta3", 1), ("Delta1", "G15", 1),
                ("Delta1", "G16", 1)] + chain(["Delta3", "G23", "Delta2", "G12", "Delta1"]))
I4STAR_CYCLE = {"G34": 1, "Gamma": 1, "Delta3": 2, "G23": 2, "Delta2": 2, "G12": 2,
                "Delta1": 2, "G15": 1, "G16": 1}


def test_i4_star():
    assert classify_fiber(I4STAR) == KodairaType("I*", 4)
    assert fiber_cycle(I4STAR) == I4STAR_CYCLE


def test_z_big_fibers_from_lattice():
    for kummer, t in ((False, "I4*"), (True, "I5*")):
        Z = ztrack.build_z(kummer)
        big = Z.diagram().subgraph(ztrack.big_fiber_labels(kummer))
        assert classify_fiber(big) == KodairaType.parse(t)
    Z = ztrack.build_z(False)
    assert fiber_cycle(Z.diagram().subgraph(ztrack.big_fiber_labels(False))) == I4STAR_CYCLE


def test_iii_star_cycle():
    X = xtrack.build_x(False)
    sub = X.graph.subgraph(["a%d" % i for i in range(1, 9)])
    assert classify_fiber(sub) == KodairaType("III*")
    cyc = fiber_cycle(sub)
    assert [cyc["a%d" % i] for i in range(1, 9)] == [1, 2, 3, 4, 2, 3, 2, 1]


def test_i2_and_cycles():
    assert classify_fiber(graph(["a", "b"], [("a", "b", 2)])) == KodairaType("I", 2)
    assert fiber_cycle(graph(["a", "b"], [("a", "b", 2)])) == {"a": 1, "b": 1}
    ring = graph(list("abcde"), chain(list("abcde")) + [("e", "a", 1)])
    assert classify_fiber(ring) == KodairaType("I", 5)


@pytest.mark.parametrize("arms,name", [((2, 2, 2), "IV*"), ((1, 3, 3), "III*"),
                                       ((1, 2, 5), "II*")])
def test_exceptional_fibers(arms, name):
    labs, edges = ["o"], []
    for k, n in enumerate(arms):
        prev = "o"
        for i in range(n):
            lab = "x%d_%d" % (k, i)
            labs.append(lab)
            edges.append((prev, lab, 1))
            prev = lab
    g = graph(labs, edges)
    assert classify_fiber(g) == KodairaType(name)
    cyc = fiber_cycle(g)
    assert cyc["o"] == max(cyc.values())


@pytest.mark.parametrize("n", range(0, 8))
def test_affine_d(n):
    g = affine_d(n)
    t = classify_fiber(g)
    assert t == KodairaType("I*", n)
    assert len(g) == n + 5
    assert euler_number(t) == n + 6


def test_not_a_fiber():
    with pytest.raises(NotAFiber):
        classify_fiber(graph(list("abc"), chain(list("abc"))))
    with pytest.raises(NotAFiber):
        classify_fiber(graph(["a", "b"], [("a", "b", 2)], sq=-1))
    with pytest.raises(NotAFiber):
        classify_fiber(graph(["a", "b"], [("a", "b", 3)]))


def test_euler_numbers():
    E = lambda s: euler_number(KodairaType.parse(s))
    assert E("I8*") == 14 and E("I1") == 1
    assert E("I8*") + 2 * E("I2") + 6 * E("I1") == 24
    assert E("I10*") + E("I2") + 6 * E("I1") == 24
    assert (E("III*"), E("II*"), E("IV*"), E("II"), E("III"), E("IV")) == (9, 10, 8, 2, 3, 4)
    with pytest.raises(K3Error):
        KodairaType("V")


def test_i4_star_not_i5_star():
    assert is_isomorphic(affine_d(4), affine_d(5)) is None


@st.composite
def random_graph(draw):
    n = draw(st.integers(2, 12))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            m = draw(st.sampled_from([0, 0, 0, 1, 1, 2]))
            if m:
                edges[(i, j)] = m
    sqs = [draw(st.sampled_from([-2, -2, -2, -1, -4])) for _ in range(n)]
    return DualGraph([("v%d" % i, s) for i, s in enumerate(sqs)], edges)


@given(random_graph(), st.randoms(use_true_random=False))
def test_isomorphic_to_relabeling(g, r):
    perm = list(range(len(g)))
    r.shuffle(perm)
    h = g.permuted([g.labels[i] for i in perm]).relabel({l: "w" + l[1:] for l in g.labels})
    m = is_isomorphic(g, h)
    assert m is not None and verify_isomorphism(g, h, m)
    assert nx_isomorphic(g, h)


@given(random_graph(), random_graph())
def test_isomorphism_agrees_with_networkx(g, h):
    assert (is_isomorphic(g, h) is not None) == nx_isomorphic(g, h)


@given(st.integers(0, 6), st.randoms(use_true_random=False))
def test_classification_invariant_under_relabeling(n, r):
    g = affine_d(n)
    perm = list(range(len(g)))
    r.shuffle(perm)
    assert classify_fiber(g.permuted([g.labels[i] for i in perm])) == classify_fiber(g)


@given(st.integers(0, 6))
def test_cycle_in_kernel(n):
    g = affine_d(n)
    cyc = fiber_cycle(g)
    G = g.gram()
    v = [cyc[l] for l in g.labels]
    assert all(sum(G[i][j] * v[j] for j in range(len(v))) == 0 for i in range(len(v)))
    assert min(v) == 1


def test_w_diagram_isomorphic_to_x_alternate():
    for kummer in (False, True):
        W = ztrack.nikulin_transform_z(ztrack.build_z(kummer)).graph
        X = xtrack.build_x(kummer).graph
        m = is_isomorphic(W, X)
        assert m is not None and verify_isomorphism(W, X, m)
        assert nx_isomorphic(W, X)
    W = ztrack.nikulin_transform_z(ztrack.build_z(False)).graph
    assert is_isomorphic(W, xtrack.build_x(True).graph) is None


def test_isomorphism_deterministic_across_hash_seeds():
    code = ("import json;from k3isogeny import ztrack,xtrack;"
            "from k3isogeny.dualgraph import is_isomorphic;"
            "W=ztrack.nikulin_transform_z(ztrack.build_z(False)).graph;"
            "print(json.dumps(sorted(is_isomorphic(W,xtrack.build_x(False).graph).items())))")
    outs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        outs.add(subprocess.run([sys.executable, "-c", code], env=env, check=True,
                                capture_output=True, text=True).stdout)
    assert len(outs) == 1


def test_dot_and_json():
    g = graph(["a", "b'", "c"], [("a", "b'", 2), ("b'", "c", 1)])
    text = to_dot(g, "F")
    assert text == to_dot(g, "F")
    assert text.startswith("graph F {")
    assert "(-2)" in text
    h = DualGraph.from_json(json.loads(json.dumps(g.to_json())))
    assert h.nodes == g.nodes and h.edges == g.edges
    assert h.to_networkx().number_of_edges() == 2


def test_graph_errors():
    with pytest.raises(K3Error):
        DualGraph([("a", -2), ("a", -2)])
    with pytest.raises(K3Error):
        DualGraph([("a", -2)], {("a", "a"): 1})
    with pytest.raises(K3Error):
        DualGraph.from_gram(["a", "b"], [[-2, -1], [-1, -2]])
