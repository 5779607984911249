"""The double sextic side: NS(Z), its elliptic fibration, the translation
involution by the two-torsion section, and the Nikulin quotient W.
"""
from fractions import Fraction

from . import intmat
from . import lattice as lat
from .arrangement import PAIR_LABELS, DIVISOR_D, PHI, class_difference
from .dualgraph import DualGraph, KodairaType, classify_fiber, fiber_cycle, euler_number
from .errors import CertificateFailure, EulerMismatch
from .surface import (DivisorClass, SurfaceModel, blowup_p2, double_cover_model,
                      intersect, quotient_gram, combine)

G_LABELS = ["G" + p for p in PAIR_LABELS]


# ------------------------------------------------------------- shared types

def inventory_euler(inventory):
    """Euler number sum of [(KodairaType, components, count)]."""
    return sum(euler_number(t) * count for t, _, count in inventory)


def inventory_text(inventory):
    parts = []
    for t, _, count in inventory:
        if count:
            parts.append(str(t) if count == 1 else "%d x %s" % (count, t))
    return " + ".join(parts)


def inventory_json(inventory):
    return [{"type": str(t), "count": c, "components": comps} for t, comps, c in inventory]


class FibrationModel:
    """Elliptic fibration: fiber class, sections, multisections, fibers."""

    def __init__(self, host, named, fiber, sections, multisections, inventory):
        self.host = host
        self.named = named
        self.fiber = fiber
        self.sections = list(sections)
        self.multisections = list(multisections)
        self.inventory = list(inventory)

    def euler_sum(self):
        return inventory_euler(self.inventory)

    def inventory_text(self):
        return inventory_text(self.inventory)

    def big_fiber(self):
        return self.inventory[0][0]

    def count(self, text):
        t = KodairaType.parse(text)
        return sum(c for k, _, c in self.inventory if k == t)

    def check(self):
        h, F = self.host, self.fiber
        if intersect(h, F, F) != 0:
            raise CertificateFailure("fiber class has nonzero square")
        for s in self.sections:
            if intersect(h, F, self.named[s]) != 1:
                raise CertificateFailure("%s is not a section" % s)
        for m, deg in self.multisections:
            if intersect(h, F, self.named[m]) != deg:
                raise CertificateFailure("%s is not a %d-section" % (m, deg))
        if self.euler_sum() != 24:
            raise EulerMismatch("Euler numbers sum to %d" % self.euler_sum())
        return True

    def to_json(self):
        return {
            "sections": self.sections,
            "multisections": [[m, d] for m, d in self.multisections],
            "inventory": inventory_json(self.inventory),
            "euler_sum": self.euler_sum(),
        }


class VgsCertificate:
    """Two-torsion section certificate: (S2^w)^2 = -4 and 2 S2^w in W_root."""

    def __init__(self, **fields):
        self.__dict__.update(fields)

    def to_json(self):
        out = {}
        for k, v in self.__dict__.items():
            if k.startswith("_"):
                continue
            out[k] = v
        return out


class PolarizationCertificate:
    def __init__(self, blocks, grams, verdict, ok, failures):
        self.blocks = blocks
        self.grams = grams
        self.verdict = verdict
        self.ok = ok
        self.failures = failures

    def to_json(self):
        return {"verdict": self.verdict, "ok": self.ok, "failures": self.failures,
                "blocks": [{"name": name, "generators": gens, "gram": g}
                           for (name, gens), g in zip(self.blocks, self.grams)]}


# ---------------------------------------------------------- classes on R

def r_model():
    return blowup_p2(15, ["E" + p for p in PAIR_LABELS])


def r_class(R, c):
    d, m = c
    v = [d] + [-m[p] for p in PAIR_LABELS]
    return DivisorClass(v)


def branch_class(R, i):
    """L'_i = H - sum_{j != i} E_ij."""
    expr = {"H": 1}
    for p in PAIR_LABELS:
        if str(i) in p:
            expr["E" + p] = -1
    return R.cls(expr)


def conic_class(R, kummer):
    """C' = 2H - E13 - E14 - E25 - E26 - E56, minus E34 when Kummer."""
    expr = {"H": 2, "E13": -1, "E14": -1, "E25": -1, "E26": -1, "E56": -1}
    if kummer:
        expr["E34"] = -1
    return R.cls(expr)


def divisor_d(R):
    return r_class(R, DIVISOR_D)


def phi_classes(R):
    return [r_class(R, c) for c in PHI]


def special_member_identity(R):
    """L'1 + L'2 + L'3 + C' + E34 + 2 E23 + 2 E12 + E15 + E16 = D."""
    lhs = branch_class(R, 1) + branch_class(R, 2) + branch_class(R, 3) + conic_class(R, False)
    lhs = lhs + R.cls({"E34": 1, "E23": 2, "E12": 2, "E15": 1, "E16": 1})
    return lhs == divisor_d(R)


# ------------------------------------------------------------------ Z model

class ZModel:
    def __init__(self, R, model, named, kummer, ambient):
        self.R = R
        self.model = model
        self.named = named
        self.kummer = kummer
        self.ambient = ambient

    def pair(self, a, b):
        A = self.named[a] if isinstance(a, str) else a
        B = self.named[b] if isinstance(b, str) else b
        return intersect(self.model, A, B)

    def cls(self, expr):
        return combine(self.named, expr)

    def curve_labels(self):
        base = ["Delta%d" % i for i in range(1, 7)] + ["G12", "G23", "G15", "G16", "G34"]
        base += ["Gamma1", "Gamma2"] if self.kummer else ["Gamma"]
        base += ["Ups%d" % i for i in range(1, 7)] + ["Ups'%d" % i for i in range(1, 7)]
        return base

    def diagram(self):
        labels = self.curve_labels()
        G = [[self.pair(a, b) for b in labels] for a in labels]
        return DualGraph.from_gram(labels, G)


def build_z(kummer=False, generic=None):
    """NS(Z) for the double cover of R branched along L'_1..L'_6.

    generic: optional genericity certificate of the input arrangement;
    when given it must be positive.
    """
    if generic is not None and not generic.get("generic"):
        raise CertificateFailure("arrangement is not generic (%s)" % generic.get("first_failure"))
    R = r_model()
    branch = [branch_class(R, i) for i in range(1, 7)]
    n = R.rank
    k = 1 if kummer else 0
    extra = {}
    if kummer:
        half = [x / 2 for x in conic_class(R, True).coords]
        extra["Gamma1"] = half + [Fraction(1, 2)]
        extra["Gamma2"] = half + [Fraction(-1, 2)]
    else:
        extra["Gamma"] = list(conic_class(R, False).coords)
    model, named, amb = double_cover_model(R, branch, extra, [[-4]] if kummer else None)
    out = {}
    for lab, v in named.items():
        if lab == "pi*H":
            out["T"] = v
        elif lab.startswith("pi*E"):
            out["G" + lab[4:]] = v
        else:
            out[lab] = v

    # pull-backs are integer combinations of T and the G_ij
    def pullback(A):
        d = A.coords
        total = out["T"] * d[0]
        for p, c in zip(PAIR_LABELS, d[1:]):
            total = total + out["G" + p] * c
        return total

    out["F"] = pullback(divisor_d(R))
    phis = phi_classes(R)
    D = divisor_d(R)
    for i, phi in enumerate(phis, start=1):
        out["Ups%d" % i] = pullback(phi)
        out["Ups'%d" % i] = pullback(D - phi)
    model.name = "Z (%s)" % ("Kummer" if kummer else "non-Kummer")
    return ZModel(R, model, out, kummer, amb)


# --------------------------------------------------------------- fibration

def big_fiber_labels(kummer):
    chain = ["Delta3", "G23", "Delta2", "G12", "Delta1", "G15", "G16"]
    if kummer:
        return ["Gamma1", "Gamma2", "G34"] + chain
    return ["G34", "Gamma"] + chain


def fibration_z(Z):
    g = Z.diagram()
    F = Z.named["F"]
    big = g.subgraph(big_fiber_labels(Z.kummer))
    t = classify_fiber(big)
    cyc = fiber_cycle(big)
    if combine(Z.named, cyc) != F:
        raise CertificateFailure("big fiber cycle is not the fiber class")
    inventory = [(t, list(big.labels), 1)]
    i2 = []
    for i in range(1, 7):
        pair = g.subgraph(["Ups%d" % i, "Ups'%d" % i])
        if classify_fiber(pair) != KodairaType("I", 2):
            raise CertificateFailure("Phi%d pair is not an I2 fiber" % i)
        if Z.named["Ups%d" % i] + Z.named["Ups'%d" % i] != F:
            raise CertificateFailure("Phi%d pair does not sum to the fiber" % i)
        i2.append(["Ups%d" % i, "Ups'%d" % i])
    inventory.append((KodairaType("I", 2), i2, 6))
    residual = 24 - euler_number(t) - 12
    if residual < 0:
        raise EulerMismatch("no room for nodal fibers")
    inventory.append((KodairaType("I", 1), "nodal/uncounted", residual))
    fib = FibrationModel(Z.model, Z.named, F, ["Delta5", "Delta6"], [("Delta4", 2)], inventory)
    fib.check()
    fib.cycle = cyc
    return fib


# --------------------------------------------------------- Mordell-Weil

def mordell_weil_lattices(host, named, fiber, zero):
    """W = <F, O>^perp in the host lattice, with coordinates for classes."""
    L = lat.IntegerLattice(host.gram)
    basis = lat.orthogonal_complement(L, [fiber.int_coords(), named[zero].int_coords()])
    W = lat.IntegerLattice(intmat.congruence(basis, host.gram), "W")

    def coords(C):
        c = intmat.solve_left(basis, list(C.coords))
        if c is None:
            raise CertificateFailure("class is not orthogonal to <F, O>")
        return c

    return W, basis, coords


def vgs_certificate(host, named, fib, zero, torsion, display=None, root_labels=None):
    """Certify that torsion - zero - 2F has square -4 and doubles into W_root."""
    F = fib.fiber
    Sw = named[torsion] - named[zero] - F * 2
    sq = intersect(host, Sw, Sw)
    W, basis, coords = mordell_weil_lattices(host, named, F, zero)
    roots = lat.root_span(W)
    types = lat.classify_ade(roots)
    v = coords(Sw)
    if any(x.denominator != 1 for x in v):
        raise CertificateFailure("S^w is not integral in W")
    v = [int(x) for x in v]
    two = [2 * x for x in v]
    witness = lat.span_witness(two, roots)
    order = lat.order_in_quotient(v, roots)
    group = lat.quotient_group(lat.SublatticeSpan(W, intmat.identity(W.rank)), roots)
    fiber_span = None
    if root_labels is not None:
        gens = [[int(x) for x in coords(named[l])] for l in root_labels]
        fiber_span = lat.SublatticeSpan(W, gens)
    cert = VgsCertificate(
        zero=zero, torsion=torsion, sw_square=int(sq),
        w_rank=W.rank, w_root_type=lat.ade_label(types), w_root_rank=roots.rank,
        member=witness is not None, witness_hnf=witness,
        order_in_quotient=order,
        quotient_invariants=group.invariant_factors, quotient_free_rank=group.free_rank,
    )
    cert._sw = Sw
    if fiber_span is not None:
        cert.fiber_components_span_root_lattice = fiber_span.basis == roots.basis
    if display is not None:
        cert.display_matches = combine(named, display) == Sw
        twice = {k: 2 * Fraction(c) for k, c in display.items()}
        if all(c.denominator == 1 for c in twice.values()):
            named_witness = {k: int(c) for k, c in twice.items()}
            in_root = all(lat.member_of_span([int(x) for x in coords(named[k])], roots)
                          for k in named_witness)
            cert.named_witness = {k: c for k, c in named_witness.items() if c}
            cert.named_witness_in_root_lattice = in_root
    ok = (sq == -4 and witness is not None and order == 2
          and getattr(cert, "display_matches", True)
          and getattr(cert, "named_witness_in_root_lattice", True))
    cert.ok = ok
    return cert


def vgs_display_z(kummer):
    """Delta6^w as minus the chain minus half the roots of the I2 fibers
    not meeting Delta5 and the far leaves of the big fiber."""
    chain = ["Delta3", "G23", "Delta2", "G12", "Delta1", "G16"]
    leaves = ["Gamma1", "Gamma2"] if kummer else ["G34", "Gamma"]
    if kummer:
        chain = ["G34"] + chain
    expr = {lab: -1 for lab in chain}
    for lab in ["Ups%d" % i for i in range(1, 7)] + leaves:
        expr[lab] = Fraction(-1, 2)
    return expr


def vgs_certificate_z(Z, fib=None):
    fib = fib or fibration_z(Z)
    roots = [l for l in big_fiber_labels(Z.kummer) if l != "G15"]
    roots += ["Ups%d" % i for i in range(1, 7)]
    for i in range(1, 7):
        if Z.pair("Ups%d" % i, "Delta5") != 0:
            raise CertificateFailure("Ups%d meets the zero section" % i)
    cert = vgs_certificate(Z.model, Z.named, fib, "Delta5", "Delta6",
                           display=vgs_display_z(Z.kummer), root_labels=roots)
    if not cert.ok:
        raise CertificateFailure("two-torsion certificate failed: %r" % cert.to_json())
    return cert


# ------------------------------------------------------ Nikulin quotients

def nikulin_images(host, named, invariant, pairs, nodal, fixed_points, names):
    """Image curves of the quotient by a symplectic involution.

    invariant: curves mapped to themselves; pairs: swapped curves;
    nodal: {label: class} of invariant nodal curves; fixed_points: list
    of {curve label: multiplicity at the point}; names: {source: image
    label} (pairs are keyed by their first member).  Returns
    (diagram of (-2)-curves, list of images of square 0).
    """
    r = host.rank
    k = len(fixed_points)
    ext = [[0] * (r + k) for _ in range(r + k)]
    for i in range(r):
        for j in range(r):
            ext[i][j] = host.gram[i][j]
    for t in range(k):
        ext[r + t][r + t] = -1
    classes = dict(named)
    classes.update(nodal)
    through = {}
    for t, pt in enumerate(fixed_points):
        for lab, m in pt.items():
            through.setdefault(lab, []).append((t, m))
    for a, b in pairs:
        if a in through or b in through:
            raise CertificateFailure("a swapped curve passes through a fixed point")
    labels, rows = [], []
    for lab in list(invariant) + list(nodal):
        v = list(classes[lab].coords) + [0] * k
        for t, m in through.get(lab, []):
            v[r + t] -= m
        rational = intmat.bilinear(ext, v[:r] + [0] * k, v[:r] + [0] * k) == -2
        if lab in invariant and rational and len(through.get(lab, [])) != 2:
            raise CertificateFailure("invariant rational curve %s must carry two fixed points" % lab)
        labels.append(names.get(lab, lab + "~"))
        rows.append(v)
    for a, b in pairs:
        v = list((classes[a] + classes[b]).coords) + [0] * k
        labels.append(names.get(a, a + "~"))
        rows.append(v)
    for t in range(k):
        v = [0] * (r + k)
        v[r + t] = 2
        labels.append(names.get("p%d" % (t + 1), "E%d" % (t + 1)))
        rows.append(v)
    G = quotient_gram(ext, rows)
    keep = [i for i in range(len(labels)) if G[i][i] == -2]
    zero = [labels[i] for i in range(len(labels)) if G[i][i] == 0]
    bad = [labels[i] for i in range(len(labels)) if G[i][i] not in (-2, 0)]
    if bad:
        raise CertificateFailure("images with unexpected squares: %s" % bad)
    sub = [[G[i][j] for j in keep] for i in keep]
    return DualGraph.from_gram([labels[i] for i in keep], sub), zero


def _z_sigma(Z):
    """Action of the translation on the named curves, plus fixed points."""
    inv = ["Delta1", "Delta2", "Delta3", "Delta4", "G12", "G23"]
    pairs = [("Delta5", "Delta6"), ("G15", "G16")]
    if Z.kummer:
        inv.append("G34")
        pairs.append(("Gamma1", "Gamma2"))
    else:
        pairs.append(("G34", "Gamma"))
    for i in range(1, 7):
        a, b = "Ups%d" % i, "Ups'%d" % i
        # the translation exchanges the component met by Delta5 with the
        # one met by Delta6
        if not (Z.pair(a, "Delta5") == 0 and Z.pair(a, "Delta6") == 1
                and Z.pair(b, "Delta5") == 1 and Z.pair(b, "Delta6") == 0):
            raise CertificateFailure("sections do not separate the I2 components")
        pairs.append((a, b))
    fixed = [
        {"Delta1": 1},
        {"Delta1": 1, "G12": 1},
        {"Delta2": 1, "G12": 1},
        {"Delta2": 1, "G23": 1},
        {"Delta3": 1, "G23": 1},
    ]
    if Z.kummer:
        fixed += [{"Delta3": 1, "G34": 1}, {"G34": 1, "Delta4": 1}, {"Delta4": 1, "J8": 2}]
        nodal = {"J8": Z.named["F"]}
    else:
        fixed += [{"Delta3": 1}, {"Delta4": 1, "J7": 2}, {"Delta4": 1, "J8": 2}]
        nodal = {"J7": Z.named["F"], "J8": Z.named["F"]}
    return inv, pairs, nodal, fixed


W_NAMES = {
    "Delta1": "Delta1~", "Delta2": "Delta2~", "Delta3": "Delta3~", "Delta4": "Delta4~",
    "Delta5": "Delta5~", "G12": "G12~", "G23": "G23~", "G15": "G15~", "G34": "G34~",
    "Gamma1": "Gamma~", "J7": "J7~", "J8": "J8~",
}
for _t in range(1, 9):
    W_NAMES["p%d" % _t] = "Psi%d" % _t


class WDiagram:
    def __init__(self, graph, kummer, nodal_images, fibration):
        self.graph = graph
        self.kummer = kummer
        self.nodal_images = nodal_images
        self.fibration = fibration


def fibers_from_diagram(graph, drop, nodal_count):
    """Fiber inventory of a diagram after removing the horizontal curves.

    The remaining connected components are fibers; the residual Euler
    number must match the count of nodal images from the quotient.
    """
    rest = [l for l in graph.labels if l not in drop]
    sub = graph.subgraph(rest)
    fibers = []
    for comp in sub.components():
        t = classify_fiber(sub.subgraph(comp))
        fibers.append((t, comp))
    fibers.sort(key=lambda f: (-euler_number(f[0]), f[1]))
    big = fibers[0]
    twos = [c for t, c in fibers[1:] if t == KodairaType("I", 2)]
    if len(twos) != len(fibers) - 1:
        raise CertificateFailure("unexpected small fiber in the diagram")
    residual = 24 - euler_number(big[0]) - 2 * len(twos)
    if residual != nodal_count:
        raise EulerMismatch("Euler balance gives %d nodal fibers, quotient gives %d"
                            % (residual, nodal_count))
    return [(big[0], big[1], 1),
            (KodairaType("I", 2), twos, len(twos)),
            (KodairaType("I", 1), "nodal/uncounted", residual)]


def nikulin_transform_z(Z):
    inv, pairs, nodal, fixed = _z_sigma(Z)
    graph, zero = nikulin_images(Z.model, Z.named, inv, pairs, nodal, fixed, W_NAMES)
    if len(graph) != 19:
        raise CertificateFailure("W diagram has %d curves, expected 19" % len(graph))
    inventory = fibers_from_diagram(graph, ("Delta4~", "Delta5~"), len(zero))
    return WDiagram(graph, Z.kummer, zero, inventory)


# ------------------------------------------------------------ polarization

def polarization_generators(kummer):
    """Generators of the H, E8/E7 and E7 blocks on the W diagram."""
    if kummer:
        h = [{"Delta2~": 1},
             {"Delta4~": 2, "Psi7": 4, "G34~": 6, "Gamma~": 3, "Psi6": 5,
              "Delta3~": 4, "Psi5": 3, "G23~": 2, "Psi4": 1}]
        first = ("E8", ["Delta4~", "Psi7", "G34~", "Gamma~", "Psi6", "Delta3~", "Psi5", "G23~"])
    else:
        h = [{"Delta2~": 1},
             {"Psi7": 1, "Delta4~": 2, "G34~": 3, "Delta3~": 4, "Psi6": 2,
              "Psi5": 3, "G23~": 2, "Psi4": 1}]
        first = ("E7", ["Psi7", "Delta4~", "G34~", "Delta3~", "Psi6", "Psi5", "G23~"])
    second = ("E7", ["J8~", "Delta5~", "G15~", "Delta1~", "Psi1", "Psi2", "G12~"])
    return [("H", h), first, second]


def _combo_pair(graph, a, b):
    G = graph.gram()
    idx = graph.index
    return sum(ca * cb * G[idx[x]][idx[y]] for x, ca in a.items() for y, cb in b.items())


def polarization_certificate_w(graph, kummer, generators=None):
    blocks = generators or polarization_generators(kummer)
    gens = []
    for name, g in blocks:
        gens.append([x if isinstance(x, dict) else {x: 1} for x in g])
    grams = [[[_combo_pair(graph, a, b) for b in gs] for a in gs] for gs in gens]
    failures = []
    Hg = lat.IntegerLattice(grams[0])
    if not lat.is_hyperbolic_plane(Hg):
        failures.append("H block is not even unimodular of rank 2")
    for (name, _), g in zip(blocks[1:], grams[1:]):
        got = _dynkin_name(g)
        if got != name:
            failures.append("%s block has Dynkin type %s" % (name, got))
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            for x in gens[a]:
                for y in gens[b]:
                    if _combo_pair(graph, x, y) != 0:
                        failures.append("blocks %s and %s are not orthogonal" % (blocks[a][0], blocks[b][0]))
                        break
                else:
                    continue
                break
    verdict = "H+" + "+".join(name for name, _ in blocks[1:])
    ok = not failures
    out_blocks = [(name, [{k: v for k, v in x.items()} for x in gs])
                  for (name, _), gs in zip(blocks, gens)]
    return PolarizationCertificate(out_blocks, grams, verdict if ok else None, ok, failures)


def _dynkin_name(g):
    n = len(g)
    adjacency = {i: [] for i in range(n)}
    for i in range(n):
        if g[i][i] != -2:
            return None
        for j in range(i + 1, n):
            if g[i][j] not in (0, 1):
                return None
            if g[i][j]:
                adjacency[i].append(j)
                adjacency[j].append(i)
    return lat.dynkin_type(n, adjacency)
