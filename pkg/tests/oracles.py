"""Independent reference computations used to freeze expected values.

Each oracle uses a different method from the library: sympy for exact
linear algebra, brute-force boxes for vector enumeration, networkx for
graph isomorphism.
"""
import itertools

import networkx as nx
import sympy
from networkx.algorithms.isomorphism import GraphMatcher


def inertia(G):
    """(pos, neg, zero) from the characteristic polynomial.

    A real symmetric matrix has a real-rooted characteristic polynomial,
    so Descartes' rule of signs counts the positive roots exactly.
    """
    n = len(G)
    if n == 0:
        return (0, 0, 0)
    x = sympy.Symbol("x")
    cp = sympy.Matrix(G).charpoly(x)
    coeffs = cp.all_coeffs()
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs):
        s = [c for c in cs if c != 0]
        return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))
    pos = changes(coeffs)
    deg = len(coeffs) - 1
    neg = changes([c * (-1) ** (deg - i) for i, c in enumerate(coeffs)])
    return (pos, neg, zero)


def det(M):
    return int(sympy.Matrix(M).det()) if M else 1


def smith_diagonal(M):
    from sympy.matrices.normalforms import smith_normal_form
    from sympy.polys.domains import ZZ
    S = smith_normal_form(sympy.Matrix(M), domain=ZZ)
    d = [abs(int(S[i, i])) for i in range(min(S.shape))]
    return sorted(x for x in d if x)


def brute_vectors(G, norm, box):
    """All v in [-box, box]^n with v.G.v == norm (G given as -Gram)."""
    n = len(G)
    out = []
    for v in itertools.product(range(-box, box + 1), repeat=n):
        if sum(v[i] * G[i][j] * v[j] for i in range(n) for j in range(n)) == norm:
            out.append(list(v))
    return out


def nx_graph(g):
    G = nx.Graph()
    for lab, sq in g.nodes:
        G.add_node(lab, sq=sq)
    labs = g.labels
    for (a, b), m in g.edges.items():
        G.add_edge(labs[a], labs[b], mult=m)
    return G


def nx_isomorphic(g1, g2):
    em = lambda e1, e2: e1["mult"] == e2["mult"]
    nm = lambda n1, n2: n1["sq"] == n2["sq"]
    return GraphMatcher(nx_graph(g1), nx_graph(g2), node_match=nm,
                        edge_match=em).is_isomorphic()
