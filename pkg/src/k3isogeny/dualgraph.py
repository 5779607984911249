"""Dual graphs of rational curve configurations and Kodaira fibers."""
import networkx as nx

from . import intmat
from .errors import NotAFiber, K3Error


class DualGraph:
    """Curves (label, self-intersection) and intersection multiplicities."""

    def __init__(self, nodes, edges=None):
        self.nodes = [(str(lab), int(sq)) for lab, sq in nodes]
        labels = [lab for lab, _ in self.nodes]
        if len(set(labels)) != len(labels):
            raise K3Error("duplicate node labels")
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.edges = {}
        for key, m in (edges or {}).items():
            i, j = key
            i = self.index[i] if isinstance(i, str) else i
            j = self.index[j] if isinstance(j, str) else j
            if i == j:
                raise K3Error("self-loops are not allowed")
            if m < 1:
                raise K3Error("edge multiplicities must be positive")
            a, b = min(i, j), max(i, j)
            self.edges[(a, b)] = self.edges.get((a, b), 0) + int(m)

    @classmethod
    def from_gram(cls, labels, gram):
        nodes = [(lab, gram[i][i]) for i, lab in enumerate(labels)]
        edges = {}
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                if gram[i][j] < 0:
                    raise K3Error("distinct curves %s, %s meet negatively"
                                  % (labels[i], labels[j]))
                if gram[i][j] > 0:
                    edges[(i, j)] = gram[i][j]
        return cls(nodes, edges)

    @property
    def labels(self):
        return [lab for lab, _ in self.nodes]

    def __len__(self):
        return len(self.nodes)

    def gram(self):
        n = len(self.nodes)
        G = [[0] * n for _ in range(n)]
        for i, (_, sq) in enumerate(self.nodes):
            G[i][i] = sq
        for (i, j), m in self.edges.items():
            G[i][j] = G[j][i] = m
        return G

    def neighbors(self, i):
        out = []
        for (a, b), m in self.edges.items():
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def subgraph(self, labels):
        keep = [self.index[lab] for lab in labels]
        pos = {old: new for new, old in enumerate(keep)}
        nodes = [self.nodes[i] for i in keep]
        edges = {(pos[a], pos[b]): m for (a, b), m in self.edges.items()
                 if a in pos and b in pos}
        return DualGraph(nodes, edges)

    def components(self):
        seen = set()
        comps = []
        for s in range(len(self.nodes)):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append([self.nodes[i][0] for i in sorted(comp)])
        return comps

    def relabel(self, mapping):
        nodes = [(mapping.get(lab, lab), sq) for lab, sq in self.nodes]
        return DualGraph(nodes, dict(self.edges))

    def permuted(self, order):
        """Same graph with nodes listed in a different order."""
        return self.subgraph(order)

    def to_networkx(self):
        g = nx.Graph()
        for lab, sq in self.nodes:
            g.add_node(lab, sq=sq)
        for (i, j), m in sorted(self.edges.items()):
            g.add_edge(self.nodes[i][0], self.nodes[j][0], m=m)
        return g

    def to_json(self):
        return {
            "nodes": [{"label": lab, "sq": sq} for lab, sq in self.nodes],
            "edges": [[i, j, m] for (i, j), m in sorted(self.edges.items())],
        }

    @classmethod
    def from_json(cls, data):
        nodes = [(d["label"], d["sq"]) for d in data["nodes"]]
        return cls(nodes, {(i, j): m for i, j, m in data["edges"]})


class KodairaType:
    """Kodaira fiber type: tag in I, I*, II, III, IV, II*, III*, IV*."""

    def __init__(self, tag, n=None):
        if tag in ("I", "I*"):
            if n is None or (tag == "I" and n < 1) or (tag == "I*" and n < 0):
                raise K3Error("bad parameter for %s" % tag)
        elif tag in ("II", "III", "IV", "II*", "III*", "IV*"):
            n = None
        else:
            raise K3Error("unknown Kodaira tag %r" % tag)
        self.tag = tag
        self.n = n

    def __eq__(self, other):
        return isinstance(other, KodairaType) and (self.tag, self.n) == (other.tag, other.n)

    def __hash__(self):
        return hash((self.tag, self.n))

    def __str__(self):
        if self.tag == "I":
            return "I%d" % self.n
        if self.tag == "I*":
            return "I%d*" % self.n
        return self.tag

    __repr__ = __str__

    @classmethod
    def parse(cls, text):
        if text.startswith("I") and text[1:2].isdigit():
            if text.endswith("*"):
                return cls("I*", int(text[1:-1]))
            return cls("I", int(text[1:]))
        return cls(text)


def euler_number(t):
    if t.tag == "I":
        return t.n
    if t.tag == "I*":
        return t.n + 6
    return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[t.tag]


def _check_fiber_gram(g):
    if any(sq != -2 for _, sq in g.nodes):
        raise NotAFiber("fiber components must be (-2)-curves")
    if len(g.components()) != 1:
        raise NotAFiber("configuration is not connected")
    p, n, z = intmat.inertia(g.gram())
    if p != 0 or z != 1:
        raise NotAFiber("intersection matrix is not semidefinite of corank one")


def classify_fiber(g):
    """Affine Dynkin recognition of a connected (-2)-configuration."""
    _check_fiber_gram(g)
    k = len(g)
    mult = list(g.edges.values())
    if k == 2:
        if mult == [2]:
            return KodairaType("I", 2)
        raise NotAFiber("two components must meet twice")
    if any(m != 1 for m in mult):
        raise NotAFiber("multiple edge in a fiber with more than two components")
    deg = [len(g.neighbors(i)) for i in range(k)]
    if len(mult) == k and all(d == 2 for d in deg):
        return KodairaType("I", k)
    if len(mult) != k - 1:
        raise NotAFiber("unrecognized fiber shape")
    branch = [i for i in range(k) if deg[i] >= 3]
    if len(branch) == 1 and deg[branch[0]] == 4 and k == 5:
        return KodairaType("I*", 0)
    if len(branch) == 2 and all(deg[b] == 3 for b in branch):
        leaves = [sum(1 for j in g.neighbors(b) if deg[j] == 1) for b in branch]
        if leaves == [2, 2]:
            return KodairaType("I*", k - 5)
    if len(branch) == 1 and deg[branch[0]] == 3:
        b = branch[0]
        arms = []
        for start in g.neighbors(b):
            length, prev, cur = 1, b, start
            while True:
                nxt = [j for j in g.neighbors(cur) if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        shape = {(2, 2, 2): "IV*", (1, 3, 3): "III*", (1, 2, 5): "II*"}.get(tuple(arms))
        if shape:
            return KodairaType(shape)
    raise NotAFiber("unrecognized fiber shape")


def fiber_cycle(g):
    """Primitive positive kernel vector: {label: multiplicity}."""
    classify_fiber(g)
    ker = intmat.right_kernel(g.gram())
    if len(ker) != 1:
        raise NotAFiber("kernel is not one-dimensional")
    v = intmat.primitive(ker[0])
    if v[0] < 0:
        v = [-x for x in v]
    if any(x <= 0 for x in v):
        raise NotAFiber("kernel vector is not positive")
    return {lab: m for lab, m in zip(g.labels, v)}


def _refine(graphs, tags):
    """Joint colour refinement: start from (self-intersection, tag) and
    repeatedly add the multiset of (multiplicity, neighbour colour)."""
    colors = [[(sq, tag.get(lab, -1)) for lab, sq in g.nodes] for g, tag in zip(graphs, tags)]
    adj = []
    for g in graphs:
        a = [[] for _ in g.nodes]
        for (i, j), m in g.edges.items():
            a[i].append((j, m))
            a[j].append((i, m))
        adj.append(a)
    n = max(len(g) for g in graphs)
    for _ in range(n):
        sigs = [[(c[i], tuple(sorted((m, c[j]) for j, m in a[i]))) for i in range(len(c))]
                for c, a in zip(colors, adj)]
        table = {s: k for k, s in enumerate(sorted({s for sig in sigs for s in sig}))}
        new = [[table[s] for s in sig] for sig in sigs]
        if all(len(set(x)) == len(set(y)) for x, y in zip(new, colors)):
            colors = new
            break
        colors = new
    return colors, adj


def is_isomorphic(g1, g2, anchors=None):
    """Node mapping preserving self-intersections and multiplicities.

    Returns {label in g1: label in g2} or None.  anchors optionally pins
    labels of g1 to labels of g2.  Colour refinement splits the nodes
    into classes, then a backtracking search extends the mapping one
    node at a time.  Candidates are tried in the order of g2's nodes, so
    the answer depends only on the inputs.
    """
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return None
    anchors = anchors or {}
    tag1 = {a: k for k, a in enumerate(sorted(anchors))}
    tag2 = {anchors[a]: k for a, k in tag1.items()}
    (c1, c2), (a1, a2) = _refine([g1, g2], [tag1, tag2])
    if sorted(c1) != sorted(c2):
        return None
    n = len(g1)
    m1 = [dict(a) for a in a1]
    m2 = [dict(a) for a in a2]
    # order: rarest colour first, then nodes with most mapped neighbours
    freq = {c: c1.count(c) for c in c1}
    order = []
    left = set(range(n))
    while left:
        placed = set(order)
        best = min(left, key=lambda i: (-sum(1 for j in m1[i] if j in placed),
                                        freq[c1[i]], i))
        order.append(best)
        left.remove(best)
    image = [None] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or c2[j] != c1[i]:
                continue
            if any(m2[j].get(image[p]) != m for p, m in m1[i].items() if image[p] is not None):
                continue
            if sum(1 for p in m2[j] if used[p]) != sum(1 for p in m1[i] if image[p] is not None):
                continue
            image[i], used[j] = j, True
            if extend(k + 1):
                return True
            image[i], used[j] = None, False
        return False

    if not extend(0):
        return None
    return {g1.nodes[i][0]: g2.nodes[image[i]][0] for i in range(n)}


def verify_isomorphism(g1, g2, mapping):
    """Independent check that mapping is an isomorphism."""
    if mapping is None or sorted(mapping) != sorted(g1.labels):
        return False
    if sorted(mapping.values()) != sorted(g2.labels):
        return False
    G1, G2 = g1.gram(), g2.gram()
    for a in g1.labels:
        for b in g1.labels:
            if G1[g1.index[a]][g1.index[b]] != G2[g2.index[mapping[a]]][g2.index[mapping[b]]]:
                return False
    return True


def _dot_id(label):
    return '"%s"' % label.replace('"', "'")


def to_dot(g, name="G"):
    lines = ["graph %s {" % name]
    for lab, sq in g.nodes:
        lines.append('  %s [label="%s (%d)"];' % (_dot_id(lab), lab, sq))
    for (i, j), m in sorted(g.edges.items()):
        attr = ' [label="%d", penwidth=2]' % m if m > 1 else ""
        lines.append("  %s -- %s%s;" % (_dot_id(g.nodes[i][0]), _dot_id(g.nodes[j][0]), attr))
    lines.append("}")
    return "\n".join(lines) + "\n"
