"""The H+E7+E7 side: curve diagrams on X, the standard and alternate
fibrations, the two-torsion certificate, the Nikulin quotient Y, the
rational quotient R and the recovery of a six-line configuration.
"""
from fractions import Fraction

from . import intmat
from . import lattice as lat
from .arrangement import PAIR_LABELS
from .dualgraph import DualGraph, KodairaType, classify_fiber, fiber_cycle, is_isomorphic
from .errors import CertificateFailure
from .surface import (DivisorClass, numerical_model, intersect, combine, contract,
                      quotient_gram)
from . import ztrack
from .ztrack import FibrationModel, vgs_certificate, nikulin_images, fibers_from_diagram


def _chain(labels):
    return [(labels[i], labels[i + 1], 1) for i in range(len(labels) - 1)]


def x_diagram(special):
    """Nineteen (-2)-curves on X for a generic polarized pair."""
    if special:
        labels = ["a%d" % i for i in range(1, 10)] + ["S"] + ["b%d" % i for i in range(1, 9)] + ["c"]
        edges = _chain(["a1", "a2", "a3", "a5", "a6", "a7", "a8", "a9", "S",
                        "b8", "b7", "b6", "b4", "b3", "b2"])
        edges += [("a3", "a4", 1), ("b4", "b5", 1), ("a1", "c", 1), ("b2", "b1", 1), ("c", "b1", 2)]
    else:
        labels = ["a%d" % i for i in range(1, 9)] + ["S"] + ["b%d" % i for i in range(1, 9)] + ["c", "d"]
        edges = _chain(["a2", "a3", "a4", "a6", "a7", "a8", "S", "b8", "b7", "b6", "b4", "b3", "b2"])
        edges += [("a4", "a5", 1), ("b4", "b5", 1), ("a2", "a1", 1), ("a2", "c", 1),
                  ("b2", "d", 1), ("b2", "b1", 1), ("a1", "d", 2), ("c", "b1", 2)]
    return DualGraph([(l, -2) for l in labels], {(a, b): m for a, b, m in edges})


# intersections of Q and K with the diagram curves (all others are zero)
MULTISECTION_DATA = {
    False: {"Q": {"a5": 1, "b5": 1, "a1": 1, "d": 1, "c": 1, "b1": 1},
            "K": {"S": 2, "a1": 2, "d": 2, "c": 2, "b1": 2}},
    True: {"Q": {"a4": 1, "b5": 1, "c": 1, "b1": 1},
           "K": {"a9": 2, "c": 2, "b1": 2}},
}
GENUS_CLAIM = {False: {"Q": 2, "K": 3}, True: {"Q": 2, "K": 2}}
BRANCH_POINTS = {False: 9, True: 8}


class XModel:
    def __init__(self, special, graph, model, named):
        self.special = special
        self.graph = graph
        self.model = model
        self.named = named

    def pair(self, a, b):
        A = self.named[a] if isinstance(a, str) else a
        B = self.named[b] if isinstance(b, str) else b
        return intersect(self.model, A, B)


def class_from_pairings(model, named, pairings):
    """The rational class with prescribed pairings against every named curve."""
    rows = [intmat.matvec(model.gram, list(v.coords)) for v in named.values()]
    rhs = [pairings.get(k, 0) for k in named]
    x = intmat.solve_rational(rows, rhs)
    if x is None:
        raise CertificateFailure("pairing data is inconsistent with the lattice")
    return DivisorClass(x)


def build_x(special=False):
    g = x_diagram(special)
    model, named = numerical_model(g.labels, g.gram(), chi_O=2,
                                   name="X (%s)" % ("special" if special else "non-special"))
    curves = dict(named)
    for lab, data in MULTISECTION_DATA[special].items():
        named[lab] = class_from_pairings(model, curves, data)
    return XModel(special, g, model, named)


# -------------------------------------------------------------- fibrations

FS_DISPLAY = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a5": 2, "a6": 3, "a7": 2, "a8": 1}
FS_DISPLAY_B = {"b1": 1, "b2": 2, "b3": 3, "b4": 4, "b5": 2, "b6": 3, "b7": 2, "b8": 1}


def fa_display(special):
    if special:
        expr = {"a2": 1, "a4": 1, "b3": 1, "b5": 1}
        for l in ["a3", "a5", "a6", "a7", "a8", "a9", "S", "b8", "b7", "b6", "b4"]:
            expr[l] = 2
    else:
        expr = {"a3": 1, "a5": 1, "b3": 1, "b5": 1}
        for l in ["a4", "a6", "a7", "a8", "S", "b8", "b7", "b6", "b4"]:
            expr[l] = 2
    return expr


def _fiber_from(graph, named, labels):
    sub = graph.subgraph(labels)
    t = classify_fiber(sub)
    cyc = fiber_cycle(sub)
    return t, cyc, combine(named, cyc)


def standard_fibration(X):
    a_side = ["a%d" % i for i in range(1, 10 if X.special else 9)]
    b_side = ["b%d" % i for i in range(1, 9)]
    ta, ca, Fa = _fiber_from(X.graph, X.named, a_side)
    tb, cb, Fb = _fiber_from(X.graph, X.named, b_side)
    if Fa != Fb:
        raise CertificateFailure("the two standard fibers have different classes")
    if not X.special:
        if ca != FS_DISPLAY or cb != FS_DISPLAY_B:
            raise CertificateFailure("standard fiber multiplicities differ from the display")
    residual = 24 - sum(ztrack.euler_number(t) for t in (ta, tb))
    inventory = [(ta, a_side, 1), (tb, b_side, 1), (KodairaType("I", 1), "nodal/uncounted", residual)]
    fib = FibrationModel(X.model, X.named, Fa, ["S"], [], inventory)
    fib.check()
    fib.cycles = [ca, cb]
    L = lat.IntegerLattice([[X.pair(Fa, Fa), X.pair(Fa, "S")], [X.pair("S", Fa), X.pair("S", "S")]])
    fib.h_block_even_unimodular = L.is_even and lat.discriminant(L) == -1
    return fib


def alternate_sections(special):
    return ("a1", "b2") if special else ("a2", "b2")


def alternate_fibration(X):
    disp = fa_display(X.special)
    big = list(disp)
    t, cyc, F = _fiber_from(X.graph, X.named, big)
    if cyc != disp:
        raise CertificateFailure("alternate fiber multiplicities differ from the display")
    pairs = [("c", "b1")] if X.special else [("a1", "d"), ("c", "b1")]
    for a, b in pairs:
        if classify_fiber(X.graph.subgraph([a, b])) != KodairaType("I", 2):
            raise CertificateFailure("%s, %s do not form an I2 fiber" % (a, b))
        if X.named[a] + X.named[b] != F:
            raise CertificateFailure("%s + %s is not the fiber class" % (a, b))
    residual = 24 - ztrack.euler_number(t) - 2 * len(pairs)
    inventory = [(t, big, 1), (KodairaType("I", 2), [list(p) for p in pairs], len(pairs)),
                 (KodairaType("I", 1), "nodal/uncounted", residual)]
    s1, s2 = alternate_sections(X.special)
    fib = FibrationModel(X.model, X.named, F, [s1, s2], [("Q", 2), ("K", 4)], inventory)
    fib.check()
    if X.pair(s1, s2) != 0:
        raise CertificateFailure("alternate sections meet")
    fib.cycle = cyc
    return fib


# ------------------------------------------------------ two-torsion section

def _membership_chain(X, fib, in_root):
    """The chain of root-lattice memberships ending in 2 b2 - 2 a2 - 4 F^a."""
    n = X.named
    Fs = combine(n, FS_DISPLAY)
    Fa = fib.fiber

    def c(expr):
        return combine(n, expr)

    steps = []

    def step(name, lhs, rhs):
        steps.append({"name": name, "identity": lhs == rhs, "member": in_root(rhs)})

    b = {"b8": 1, "b7": 2, "b6": 3, "b4": 4, "b5": 2, "b3": 3, "b1": 1}
    ll1_rhs = -c(b)
    step("ll1", n["b2"] * 2 - Fs, ll1_rhs)
    ll2_rhs = c({"a4": 4, "a5": 2, "a6": 3, "a7": 2, "a8": 1})
    step("ll2", Fs - c({"a1": 1, "a2": 2, "a3": 3}), ll2_rhs)
    ll3_lhs = n["b2"] * 2 - n["a2"] * 2 - c({"a1": 1, "a3": 3})
    step("ll3", ll3_lhs, ll1_rhs + ll2_rhs)
    ll4_rhs = combine(n, {k: v for k, v in fa_display(False).items() if k != "a3"})
    step("ll4", Fa - n["a3"], ll4_rhs)
    step("ll5", Fa - n["a1"], n["d"])
    ll6_lhs = Fa * 4 - c({"a1": 1, "a3": 3})
    step("ll6", ll6_lhs, n["d"] + ll4_rhs * 3)
    final = n["b2"] * 2 - n["a2"] * 2 - Fa * 4
    step("final", final, ll3_lhs - ll6_lhs)
    return steps


def vgs_certificate_x(X, fib=None):
    fib = fib or alternate_fibration(X)
    s1, s2 = alternate_sections(X.special)
    comps = [l for l in fib.inventory[0][1] if X.pair(l, s1) == 0]
    for pair in fib.inventory[1][1]:
        comps += [l for l in pair if X.pair(l, s1) == 0]
    cert = vgs_certificate(X.model, X.named, fib, s1, s2, root_labels=comps)
    W, basis, coords = ztrack.mordell_weil_lattices(X.model, X.named, fib.fiber, s1)
    roots = lat.root_span(W)

    def in_root(v):
        try:
            w = coords(v)
        except CertificateFailure:
            return False
        if any(x.denominator != 1 for x in w):
            return False
        return lat.member_of_span([int(x) for x in w], roots)

    if not X.special:
        cert.chain = _membership_chain(X, fib, in_root)
        chain_ok = all(s["identity"] and s["member"] for s in cert.chain)
    else:
        chain_ok = True
    Fa = fib.fiber
    target = X.named[s2] * 2 - X.named[s1] * 2 - Fa * 4
    control = X.named[s2] * 2 - X.named[s1] * 2 - Fa * 2
    cert.final_member = in_root(target)
    cert.control_member = in_root(control)
    cert.ok = cert.ok and chain_ok and cert.final_member and not cert.control_member
    if not cert.ok:
        failing = [s["name"] for s in getattr(cert, "chain", []) if not (s["identity"] and s["member"])]
        raise CertificateFailure("X-side two-torsion certificate failed %s" % failing)
    return cert


# ------------------------------------------------------------ multisections

class MultisectionRecord:
    def __init__(self, label, degree, intersections, genus, self_intersection,
                 lattice_square, ramification, branch_points=None):
        self.label = label
        self.degree = degree
        self.intersections = intersections
        self.genus = genus
        self.self_intersection = self_intersection
        self.lattice_square = lattice_square
        self.ramification = ramification
        self.branch_points = branch_points

    @property
    def consistent(self):
        ok = self.self_intersection == self.lattice_square == 2 * self.genus - 2
        if self.branch_points is not None:
            ok = ok and self.ramification >= self.branch_points
        return ok

    def to_json(self):
        return {"label": self.label, "degree": self.degree,
                "intersections": self.intersections, "genus": self.genus,
                "self_intersection": self.self_intersection,
                "lattice_square": int(self.lattice_square),
                "ramification_total": self.ramification,
                "branch_points": self.branch_points, "consistent": self.consistent}


def multisections(X, fib=None):
    fib = fib or alternate_fibration(X)
    out = []
    for lab in ("Q", "K"):
        C = X.named[lab]
        g = GENUS_CLAIM[X.special][lab]
        deg = X.pair(C, fib.fiber)
        # Riemann-Hurwitz over P^1: 2g - 2 = deg * (-2) + ramification
        ram = 2 * g - 2 + 2 * deg
        bp = BRANCH_POINTS[X.special] if lab == "K" else None
        rec = MultisectionRecord(lab, int(deg), dict(MULTISECTION_DATA[X.special][lab]), g,
                                 2 * g - 2, X.pair(C, C), int(ram), bp)
        out.append(rec)
    Q, K = out
    if Q.ramification != 6:
        raise CertificateFailure("Q is not ramified at six points")
    return Q, K


# ------------------------------------------------------- Nikulin quotient Y

def _x_sigma(X):
    F = combine(X.named, fa_display(X.special))
    nodal = {"N%d" % i: F for i in range(1, 7)}
    fixed = [{"N%d" % i: 2, "Q": 1, "K": 1} for i in range(1, 7)]
    if X.special:
        inv = ["a9", "Q", "K"]
        pairs = [("a3", "b4"), ("a5", "b6"), ("a6", "b7"), ("a7", "b8"), ("a8", "S"),
                 ("a2", "b3"), ("a4", "b5"), ("a1", "b2"), ("c", "b1")]
        # K has genus two here, so only six fixed points can lie on it
        fixed += [{"a9": 1}, {"a9": 1}]
    else:
        inv = ["S", "Q", "K"]
        pairs = [("a8", "b8"), ("a7", "b7"), ("a6", "b6"), ("a5", "b5"), ("a4", "b4"),
                 ("a3", "b3"), ("a2", "b2"), ("a1", "d"), ("c", "b1")]
        fixed += [{"S": 1, "K": 1}, {"S": 1, "K": 1}]
    return inv, pairs, nodal, fixed


def y_names():
    names = {l: l + "~" for l in ["S", "Q", "K"] + ["a%d" % i for i in range(1, 10)]}
    names.update({"c": "c~"})
    for i in range(1, 9):
        names["p%d" % i] = "U%d" % i
    for i in range(1, 7):
        names["N%d" % i] = "V%d" % i
    return names


class YDiagram:
    def __init__(self, graph, special, nodal_images, inventory, sections, bisection):
        self.graph = graph
        self.special = special
        self.nodal_images = nodal_images
        self.inventory = inventory
        self.sections = sections
        self.bisection = bisection


def nikulin_transform_x(X):
    inv, pairs, nodal, fixed = _x_sigma(X)
    graph, zero = nikulin_images(X.model, X.named, inv, pairs, nodal, fixed, y_names())
    expected = 25 if X.special else 24
    if len(graph) != expected:
        raise CertificateFailure("Y diagram has %d curves, expected %d" % (len(graph), expected))
    sections = ["a1~" if X.special else "a2~", "Q~"]
    inventory = fibers_from_diagram(graph, sections + ["K~"], len(zero))
    Y = YDiagram(graph, X.special, zero, inventory, sections, "K~")
    model, named = numerical_model(graph.labels, graph.gram())
    big = graph.subgraph(inventory[0][1])
    F = combine(named, fiber_cycle(big))
    for s in sections:
        if intersect(model, F, named[s]) != 1:
            raise CertificateFailure("%s is not a section on Y" % s)
    if intersect(model, F, named["K~"]) != 2:
        raise CertificateFailure("K~ is not a bisection on Y")
    for a, b in inventory[1][1]:
        if named[a] + named[b] != F:
            raise CertificateFailure("I2 pair on Y does not sum to the fiber")
    Y.model, Y.named, Y.fiber_cycle = model, named, fiber_cycle(big)
    return Y


# ------------------------------------------------- rational quotient R

def r_fixed_curves(special):
    if special:
        return ["K~", "a1~", "Q~", "a8~", "a6~", "a3~"]
    return ["K~", "S~", "a7~", "a4~", "a2~", "Q~"]


def r_swapped_pairs(special):
    return [("U7", "U8")] if special else []


def hat(label):
    return label.rstrip("~") + "^"


class RModel:
    def __init__(self, special, model, named, graph, fixed, fiber):
        self.special = special
        self.model = model
        self.named = named
        self.graph = graph
        self.fixed = fixed
        self.fiber = fiber


def quotient_model(Y):
    """Quotient of Y by the inversion with origin at the zero section."""
    fixed = r_fixed_curves(Y.special)
    pairs = r_swapped_pairs(Y.special)
    paired = {x for p in pairs for x in p}
    labels, rows, kinds = [], [], {}
    for lab in Y.graph.labels:
        if lab in paired:
            continue
        v = list(Y.named[lab].coords)
        if lab in fixed:
            v = [2 * x for x in v]
            kinds[hat(lab)] = "fixed"
        else:
            kinds[hat(lab)] = "invariant"
        labels.append(hat(lab))
        rows.append(v)
    for a, b in pairs:
        labels.append(hat(a) + b[1:].rstrip("~"))
        rows.append(list((Y.named[a] + Y.named[b]).coords))
        kinds[labels[-1]] = "pair"
    G = quotient_gram(Y.model.gram, rows)
    expected = {"fixed": -4, "invariant": -1, "pair": -2}
    for i, lab in enumerate(labels):
        if G[i][i] != expected[kinds[lab]]:
            raise CertificateFailure("%s has square %d, expected %d"
                                     % (lab, G[i][i], expected[kinds[lab]]))
    fixed_hats = [hat(l) for l in fixed]
    for i, a in enumerate(fixed_hats):
        for b in fixed_hats[i + 1:]:
            if G[labels.index(a)][labels.index(b)] != 0:
                raise CertificateFailure("fixed curves %s and %s meet" % (a, b))
    model, named = numerical_model(labels, G, chi_O=1,
                                   canonical_expr={l: Fraction(-1, 2) for l in fixed_hats},
                                   name="R")
    # fiber of the induced ruling: pull-back multiplicities halved on fixed curves
    fexpr = {}
    for lab, m in Y.fiber_cycle.items():
        h = hat(lab)
        if lab in paired:
            a, b = next(p for p in pairs if lab in p)
            h = hat(a) + b[1:].rstrip("~")
            fexpr[h] = m
        else:
            fexpr[h] = Fraction(m, 2) if kinds[h] == "fixed" else m
    F = combine(named, fexpr)
    graph = DualGraph.from_gram(labels, G)
    Rq = RModel(Y.special, model, named, graph, fixed_hats, F)
    Rq.fiber_expr = fexpr
    Rq.kinds = kinds
    Rq.unimodular = abs(lat.discriminant(lat.IntegerLattice(model.gram))) == 1
    Rq.k_square = intersect(model, model.canonical, model.canonical)
    if not Rq.unimodular or Rq.k_square != 10 - model.rank:
        raise CertificateFailure("quotient lattice is not that of a rational surface")
    return Rq


# ------------------------------------------------------------- recovery

BLOW_DOWN_SEQUENCE = ["U1^", "U2^", "U3^", "V4^", "V5^", "V6^", "U7^", "U8^",
                      "a8^", "a6^", "S^", "a7^", "a5^", "a3^"]
ALTERNATE_TAIL = ["a2^", "a4^"]
LINE_CURVES = {False: ["a4^", "a7^", "S^", "K^", "a2^", "Q^"]}

# Z-side labels pinned when transporting the fifteen classes (non-special);
# the I2 fibers are matched so that E46 = U1^ and E45 = V4^.  U7^ and U8^
# are exchanged by a diagram symmetry; the table uses E34 = U7^.
NONSPECIAL_ANCHORS = {"L'1": "a4^", "L'2": "a7^", "L'3": "S^", "L'4": "K^", "L'5": "a2^",
                      "L'6": "Q^", "Phi6": "U1^", "Phi'1": "V4^", "Phi2": "U6^",
                      "Phi3": "U5^", "Phi4": "U3^", "Phi5": "U2^", "E34": "U7^"}

# E_ij as F + sum of hat curves; E12 is a6^ (the diagram forces it)
E_TABLE = {
    "12": (0, {"a6^": 1}),
    "13": (12, {"a2^": 3, "a4^": -3, "a5^": -3, "a6^": -8, "a7^": -5, "a8^": -12, "S^": -7,
                "U2^": -1, "U3^": -1, "U4^": -3, "U5^": -2, "U6^": -2, "U7^": -7, "U8^": -8}),
    "14": (8, {"a2^": 2, "a4^": -2, "a5^": -2, "a6^": -5, "a7^": -3, "a8^": -7, "S^": -4,
               "U3^": -1, "U4^": -2, "U5^": -1, "U6^": -2, "U7^": -4, "U8^": -5}),
    "15": (1, {"a4^": -1, "a5^": -1, "a6^": -2, "a7^": -1, "a8^": -2, "S^": -1,
               "U7^": -1, "U8^": -1}),
    "16": (0, {"a5^": 1}),
    "23": (0, {"a8^": 1}),
    "24": (4, {"a2^": 1, "a4^": -1, "a5^": -1, "a6^": -3, "a7^": -2, "a8^": -4, "S^": -2,
               "U4^": -1, "U5^": -1, "U6^": -1, "U7^": -2, "U8^": -2}),
    "25": (9, {"a2^": 2, "a4^": -2, "a5^": -2, "a6^": -6, "a7^": -4, "a8^": -9, "S^": -5,
               "U2^": -1, "U3^": -1, "U4^": -2, "U5^": -1, "U6^": -2, "U7^": -5, "U8^": -6}),
    "26": (8, {"a2^": 2, "a4^": -2, "a5^": -2, "a6^": -6, "a7^": -4, "a8^": -9, "S^": -5,
               "U3^": -1, "U4^": -2, "U5^": -1, "U6^": -1, "U7^": -5, "U8^": -6}),
    "34": (0, {"U7^": 1}),
    "35": (5, {"a2^": 1, "a4^": -1, "a5^": -1, "a6^": -3, "a7^": -2, "a8^": -5, "S^": -3,
               "U3^": -1, "U4^": -1, "U5^": -1, "U6^": -1, "U7^": -3, "U8^": -3}),
    "36": (4, {"a2^": 1, "a4^": -1, "a5^": -1, "a6^": -3, "a7^": -2, "a8^": -5, "S^": -3,
               "U4^": -1, "U6^": -1, "U7^": -3, "U8^": -3}),
    "45": (1, {"U4^": -1}),
    "46": (0, {"U1^": 1}),
    "56": (5, {"a2^": 1, "a4^": -1, "a5^": -1, "a6^": -3, "a7^": -2, "a8^": -5, "S^": -3,
               "U4^": -1, "U5^": -1, "U6^": -1, "U7^": -3, "U8^": -4}),
}

# the nine classes in the basis H, E_1..E_15 of the blown-up plane
H_TABLE = {
    "13": (5, {1: 3, 2: 2, 4: 2, 5: 2, 8: 1, 10: 1, 11: 1, 13: 1, 14: 1}),
    "14": (3, {1: 2, 2: 1, 4: 1, 5: 1, 8: 1, 11: 1, 13: 1}),
    "15": (1, {1: 1, 2: 1}),
    "24": (1, {1: 1, 4: 1}),
    "25": (4, {1: 2, 2: 2, 4: 2, 5: 1, 8: 1, 11: 1, 13: 1, 14: 1}),
    "26": (4, {1: 2, 2: 2, 4: 2, 5: 1, 8: 1, 10: 1, 11: 1, 13: 1}),
    "35": (2, {1: 1, 2: 1, 4: 1, 5: 1, 13: 1}),
    "36": (2, {1: 1, 2: 1, 4: 1, 5: 1, 11: 1}),
    "56": (2, {1: 1, 2: 1, 4: 1, 5: 1, 8: 1}),
}


class Recovery:
    def __init__(self, **fields):
        self.__dict__.update(fields)

    def to_json(self):
        return {k: v for k, v in self.__dict__.items() if not k.startswith("_")}


def _contract_step(S, named, label, fiber_key="F"):
    e = named[label]
    rec = {"curve": label, "square": int(intersect(S, e, e)),
           "k_degree": int(intersect(S, e, S.canonical)),
           "fiber_degree": int(intersect(S, e, named[fiber_key]))}
    rec["ok"] = rec["square"] == -1 and rec["k_degree"] == -1 and rec["fiber_degree"] == 0
    if not rec["ok"]:
        raise CertificateFailure("%s is not a fiber-contained (-1)-curve: %r" % (label, rec))
    T, push, pushed = contract(S, e, named)
    return T, push, pushed, rec


def _pull_to_top(pushes, level, C):
    """Pull a class from model number `level` back to the top model."""
    for push in reversed(pushes[:level]):
        C = push.pullback(C)
    return C


def e_table_classes(Rq, table=E_TABLE):
    out = {}
    for key, (f, expr) in table.items():
        out[key] = Rq.fiber * f + combine(Rq.named, expr)
    return out


def check_exceptional_system(model, E, canonical=None):
    """15 pairwise orthogonal (-1)-classes with K.E = -1."""
    keys = sorted(E)
    bad = []
    for i, a in enumerate(keys):
        if intersect(model, E[a], E[a]) != -1:
            bad.append("E%s^2" % a)
        if intersect(model, E[a], model.canonical) != -1:
            bad.append("K.E%s" % a)
        for b in keys[i + 1:]:
            if intersect(model, E[a], E[b]) != 0:
                bad.append("E%s.E%s" % (a, b))
    return bad


def line_checks(model, E, lines):
    """H' = (sum E - K)/3, and each line is H' minus its five points."""
    total = None
    for v in E.values():
        total = v if total is None else total + v
    Hp = (total - model.canonical) * Fraction(1, 3)
    out = {"H_integral": Hp.is_integral, "H_square": int(intersect(model, Hp, Hp))}
    ok = Hp.is_integral and out["H_square"] == 1
    strict = {}
    for i, C in enumerate(lines, start=1):
        expect = Hp
        for key, v in E.items():
            if str(i) in key:
                expect = expect - v
        strict[i] = C == expect
    out["strict_transforms"] = all(strict.values())
    # the six lines meet pairwise once in the plane
    P, named = _blow_down_all(model, E, {"L%d" % i: C for i, C in enumerate(lines, start=1)})
    h = DivisorClass([1])
    if P.gram != [[1]]:
        raise CertificateFailure("contracting the fifteen classes does not reach P^2")
    degrees = [named["L%d" % i].coords[0] * (1 if P.canonical.coords[0] < 0 else -1)
               for i in range(1, 7)]
    out["line_degrees"] = [int(d) for d in degrees]
    meets = [[int(intersect(P, named["L%d" % i], named["L%d" % j])) for j in range(1, 7)]
             for i in range(1, 7)]
    out["pairwise_meet_once"] = all(meets[i][j] == 1 for i in range(6) for j in range(6) if i != j)
    out["ok"] = ok and out["strict_transforms"] and out["pairwise_meet_once"] \
        and all(d == 1 for d in out["line_degrees"])
    return Hp, out


def _blow_down_all(model, E, named):
    S = model
    cur = dict(named)
    cur.update({"E" + k: v for k, v in E.items()})
    for k in sorted(E):
        S, push, cur = contract(S, cur["E" + k], cur)
    return S, cur


def blow_down_recovery(Rq):
    if Rq.special:
        return special_recovery(Rq)
    S = Rq.model
    named = dict(Rq.named)
    named["F"] = Rq.fiber
    steps, pushes, models = [], [], [S]
    for label in BLOW_DOWN_SEQUENCE[:-1]:
        S, push, named, rec = _contract_step(S, named, label)
        steps.append(rec)
        pushes.append(push)
        models.append(S)
    at_r2 = (S, dict(named))
    S1, _, named1, rec = _contract_step(S, named, BLOW_DOWN_SEQUENCE[-1])
    steps.append(rec)
    # two rulings: the fiber of phi_R ends up as a4^, the other ruling
    # has a2^ and Q^ as fibers
    F, a2 = named1["F"], named1["a2^"]
    f0 = {
        "rank": S1.rank,
        "fiber_square": int(intersect(S1, F, F)),
        "a2_square": int(intersect(S1, a2, a2)),
        "rulings_meet": int(intersect(S1, F, a2)),
        "a4_is_ruling_fiber": named1["a4^"] == F,
        "Q_is_a2": named1["Q^"] == a2,
        "even_unimodular": lat.IntegerLattice(S1.gram).is_even
        and lat.discriminant(lat.IntegerLattice(S1.gram)) == -1,
        "k_square": int(intersect(S1, S1.canonical, S1.canonical)),
    }
    f0["ok"] = (f0["rank"] == 2 and f0["fiber_square"] == 0 and f0["a2_square"] == 0
                and f0["rulings_meet"] == 1 and f0["a4_is_ruling_fiber"] and f0["Q_is_a2"]
                and f0["even_unimodular"] and f0["k_square"] == 8)
    # alternate tail from R_2: contract a2^ then a4^
    S, named = at_r2
    tail = []
    for label in ALTERNATE_TAIL:
        e = named[label]
        rec = {"curve": label, "square": int(intersect(S, e, e)),
               "k_degree": int(intersect(S, e, S.canonical))}
        rec["ok"] = rec["square"] == -1 and rec["k_degree"] == -1
        if not rec["ok"]:
            raise CertificateFailure("%s is not exceptional in the tail" % label)
        S, push, named = contract(S, e, named)
        pushes.append(push)
        models.append(S)
        tail.append(rec)
    p2 = {"rank": S.rank, "gram": S.gram,
          "k_square": int(intersect(S, S.canonical, S.canonical))}
    p2["ok"] = S.gram == [[1]] and p2["k_square"] == 9
    # total transforms: contraction j (1-based) gives E_{16-j}
    h = DivisorClass([1 if S.canonical.coords[0] < 0 else -1])
    Hhat = _pull_to_top(pushes, 15, h)
    Ehat = {}
    for j in range(1, 16):
        label = (BLOW_DOWN_SEQUENCE[:-1] + ALTERNATE_TAIL)[j - 1]
        e_level = _level_class(Rq, pushes, j - 1, label)
        Ehat[16 - j] = _pull_to_top(pushes, j - 1, e_level)
    basis_ok = _standard_basis_ok(Rq.model, Hhat, Ehat)
    fiber_identity = Rq.fiber == Hhat - Ehat[2]
    E = e_table_classes(Rq)
    bad = check_exceptional_system(Rq.model, E)
    h_table = {}
    for key, (d, m) in H_TABLE.items():
        v = Hhat * d
        for k, c in m.items():
            v = v - Ehat[k] * c
        h_table[key] = v == E[key]
    e45 = E["45"] == Rq.fiber - Rq.named["U4^"] == Rq.named["V4^"]
    lines = [Rq.named[l] for l in LINE_CURVES[False]]
    Hp, lc = line_checks(Rq.model, E, lines)
    conic = _conic_record(Rq, E, Hp)
    Et, _, _ = transport_e_table(Rq, NONSPECIAL_ANCHORS)
    transport = {k: Et[k] == E[k] for k in sorted(E)}
    ok = (all(s["ok"] for s in steps) and f0["ok"] and p2["ok"] and basis_ok and fiber_identity
          and not bad and all(h_table.values()) and e45 and lc["ok"] and conic["ok"]
          and all(transport.values()))
    return Recovery(steps=steps, f0=f0, tail=tail, p2=p2, standard_basis=basis_ok,
                    fiber_is_H_minus_E2=fiber_identity, exceptional_failures=bad,
                    h_table=h_table, e45_identity=e45, lines=lc, conic=conic,
                    line_curves=LINE_CURVES[False], transport_agrees=transport,
                    ok=ok, _E=E, _H=Hp)


def _level_class(Rq, pushes, level, label):
    """Class of a named curve pushed down to model number `level`."""
    C = Rq.named[label]
    for push in pushes[:level]:
        C = push(C)
    return C


def _standard_basis_ok(model, H, E):
    vecs = [H] + [E[k] for k in range(1, 16)]
    G = [[intersect(model, a, b) for b in vecs] for a in vecs]
    want = [[(1 if i == 0 else -1) if i == j else 0 for j in range(16)] for i in range(16)]
    K = H * -3
    for k in range(1, 16):
        K = K + E[k]
    M = [[int(x) for x in v.coords] for v in vecs]
    return G == want and K == model.canonical and abs(intmat.det_int(M)) == 1


def _conic_record(Rq, E, Hp):
    """The conic through q13, q14, q25, q26, q56 and its multiplicity at q34."""
    base = Hp * 2
    for k in ("13", "14", "25", "26", "56"):
        base = base - E[k]
    m34 = int(intersect(Rq.model, base, E["34"]))
    # strict transform is base - m E34 with m the multiplicity at q34
    candidates = []
    for m in (0, 1):
        cls = base - E["34"] * m
        for lab, v in Rq.named.items():
            if v == cls:
                candidates.append((m, lab))
    rec = {"curves": [[m, lab] for m, lab in candidates]}
    if len(candidates) != 1:
        rec["ok"] = False
        return rec
    m, lab = candidates[0]
    rec["curve"] = lab
    rec["contains_q34"] = m == 1
    rec["m34_base"] = m34
    if Rq.special:
        # the conic is disjoint from all six strict line transforms and
        # has square -2, so it splits in the double cover: tangency witness
        C = Rq.named[lab]
        rec["square"] = int(intersect(Rq.model, C, C))
        rec["meets_lines"] = [int(intersect(Rq.model, C, Rq.named[l])) for l in Rq.lines]
        rec["tangency_witness"] = rec["square"] == -2 and not any(rec["meets_lines"])
        rec["ok"] = rec["contains_q34"] and rec["tangency_witness"]
    else:
        rec["ok"] = not rec["contains_q34"]
    return rec


# ---------------------------------------------------- transport from Z side

def r_z_diagram(kummer):
    """Images on R of the curves of Z under the covering involution."""
    R = ztrack.r_model()
    classes = {}
    for i in range(1, 7):
        classes["L'%d" % i] = ztrack.branch_class(R, i)
    for p in ("12", "23", "15", "16", "34"):
        classes["E" + p] = R.cls({"E" + p: 1})
    classes["C'"] = ztrack.conic_class(R, kummer)
    D = ztrack.divisor_d(R)
    for i, phi in enumerate(ztrack.phi_classes(R), start=1):
        classes["Phi%d" % i] = phi
        classes["Phi'%d" % i] = D - phi
    labels = list(classes)
    G = [[intersect(R, classes[a], classes[b]) for b in labels] for a in labels]
    return R, classes, DualGraph.from_gram(labels, [[int(x) for x in r] for r in G])


def transport_e_table(Rq, anchors=None):
    """E_ij on R from the Z-side classes through a diagram isomorphism."""
    Rz, classes, gz = r_z_diagram(Rq.special)
    mapping = is_isomorphic(gz, Rq.graph, anchors)
    if mapping is None:
        raise CertificateFailure("R diagrams from the two sides are not isomorphic")
    labels = gz.labels
    rows = [list(classes[l].coords) for l in labels]
    out = {}
    for p in PAIR_LABELS:
        target = Rz.cls({"E" + p: 1})
        c = intmat.solve_left(rows, list(target.coords))
        v = None
        for coef, l in zip(c, labels):
            if coef:
                term = Rq.named[mapping[l]] * coef
                v = term if v is None else v + term
        if not v.is_integral:
            raise CertificateFailure("transported E%s is not integral" % p)
        out[p] = v
    lines = [mapping["L'%d" % i] for i in range(1, 7)]
    return out, lines, mapping


def special_recovery(Rq):
    """Recovery for the special case: the fifteen classes come from the
    Z-side model by diagram isomorphism; lines, conic and tangency are
    then certified exactly as in the non-special case."""
    E, lines, mapping = transport_e_table(Rq)
    Rq.lines = lines
    bad = check_exceptional_system(Rq.model, E)
    Hp, lc = line_checks(Rq.model, E, [Rq.named[l] for l in lines])
    conic = _conic_record(Rq, E, Hp)
    fiber_dot = {k: int(intersect(Rq.model, v, Rq.fiber)) for k, v in E.items()}
    ok = not bad and lc["ok"] and conic["ok"]
    return Recovery(exceptional_failures=bad, lines=lc, conic=conic, line_curves=lines,
                    transport=mapping, fiber_degrees=fiber_dot, ok=ok, _E=E, _H=Hp)
