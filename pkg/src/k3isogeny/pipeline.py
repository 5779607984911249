"""End-to-end runs of both sides, assembled into plain report data.

Reports follow {meta, verdicts, certificates, diagrams}.  Every rational
is written as a string and every list has a fixed order, so the same
input always gives byte-identical JSON.
"""
import json
from fractions import Fraction

from . import __version__
from . import arrangement as arrmod
from . import xtrack, ztrack
from .dualgraph import DualGraph, KodairaType, is_isomorphic, verify_isomorphism, to_dot
from .errors import CertificateFailure
from .surface import DivisorClass


def jsonable(obj):
    """Convert certificate data to JSON types; rationals become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, DivisorClass):
        return [str(x) for x in obj.coords]
    if isinstance(obj, KodairaType):
        return str(obj)
    if isinstance(obj, DualGraph):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    raise TypeError("cannot serialize %r" % type(obj))


def dumps(report):
    return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"


class Report:
    def __init__(self, command, inputs=None):
        self.meta = {"tool": "k3isogeny", "version": __version__, "command": command}
        if inputs is not None:
            self.meta["input"] = inputs
        self.verdicts = []
        self.certificates = []
        self.diagrams = []

    def verdict(self, name, value, ok=True):
        self.verdicts.append({"name": name, "value": value, "ok": bool(ok)})

    def certificate(self, name, ok, data):
        self.certificates.append({"name": name, "ok": bool(ok), "data": data})

    def diagram(self, name, graph):
        self.diagrams.append({"name": name, "graph": graph})

    @property
    def ok(self):
        return all(v["ok"] for v in self.verdicts) and all(c["ok"] for c in self.certificates)

    def to_json(self):
        return {"meta": self.meta, "verdicts": self.verdicts,
                "certificates": self.certificates,
                "diagrams": [{"name": d["name"], "graph": d["graph"].to_json()}
                             for d in self.diagrams]}

    def dot_files(self):
        return {d["name"]: to_dot(d["graph"], d["name"].replace("-", "_"))
                for d in self.diagrams}


# ------------------------------------------------------------ arrangement side

def kummer_record(arr):
    dual, wit = arrmod.is_kummer_dual_conic(arr, witness=True)
    pascal = arrmod.is_kummer_pascal(arr)
    rec = {"dual_conic": dual, "pascal": pascal, "agree": dual == pascal,
           "determinant": wit["determinant_scaled"]}
    if dual:
        rec["tangent_conic"] = arrmod.tangent_conic(arr)
    return rec


def z_side(kummer, generic=None):
    """Z, its fibration, the two-torsion certificate, W and its polarization."""
    Z = ztrack.build_z(kummer, generic)
    fib = ztrack.fibration_z(Z)
    vgs = ztrack.vgs_certificate_z(Z, fib)
    W = ztrack.nikulin_transform_z(Z)
    pol = ztrack.polarization_certificate_w(W.graph, kummer)
    return {"Z": Z, "fibration": fib, "vgs": vgs, "W": W, "polarization": pol}


def analyze(arr, source=None):
    """Full arrangement pipeline.  Raises ArrangementError on bad input."""
    rep = Report("analyze", arr.to_json() if source is None else source)
    rep.verdict("valid", True)
    rep.certificate("intersection_points", True,
                    {p: list(arr.q(int(p[0]), int(p[1]))) for p in arrmod.PAIR_LABELS})
    kum = kummer_record(arr)
    rep.verdict("kummer", kum["dual_conic"], kum["agree"])
    rep.certificate("kummer_tests", kum["agree"], kum)
    gen = arrmod.is_generic(arr)
    rep.certificate("genericity", gen["generic"], gen)
    if not gen["generic"] or not kum["agree"]:
        rep.verdict("generic", False, False)
        return rep, None
    rep.verdict("generic", True)
    z = z_side(kum["dual_conic"], gen)
    _z_report(rep, z)
    return rep, z


def _z_report(rep, z):
    Z, fib, vgs, W, pol = z["Z"], z["fibration"], z["vgs"], z["W"], z["polarization"]
    rep.verdict("picard_rank_Z", Z.model.rank)
    rep.verdict("fibration_Z", fib.inventory_text(), fib.euler_sum() == 24)
    rep.certificate("fibration_Z", fib.euler_sum() == 24, {
        "fiber": "F = pullback of D", "fiber_square": 0, **fib.to_json(),
        "big_fiber_cycle": fib.cycle})
    rep.certificate("two_torsion_Z", vgs.ok, vgs.to_json())
    euler = ztrack.inventory_euler(W.fibration)
    rep.verdict("fibration_W", ztrack.inventory_text(W.fibration), euler == 24)
    rep.certificate("nikulin_quotient_W", len(W.graph) == 19 and euler == 24, {
        "curves": len(W.graph), "nodal_images": W.nodal_images,
        "inventory": ztrack.inventory_json(W.fibration), "euler_sum": euler})
    rep.verdict("polarization_W", pol.verdict, pol.ok)
    rep.certificate("polarization_W", pol.ok, pol.to_json())
    rep.diagram("Z", Z.diagram())
    rep.diagram("W", W.graph)


# ------------------------------------------------------------------ X side

def x_side(special):
    X = xtrack.build_x(special)
    std = xtrack.standard_fibration(X)
    alt = xtrack.alternate_fibration(X)
    vgs = xtrack.vgs_certificate_x(X, alt)
    Q, K = xtrack.multisections(X, alt)
    Y = xtrack.nikulin_transform_x(X)
    Rq = xtrack.quotient_model(Y)
    rec = xtrack.blow_down_recovery(Rq)
    return {"X": X, "standard": std, "alternate": alt, "vgs": vgs, "Q": Q, "K": K,
            "Y": Y, "R": Rq, "recovery": rec}


def _h_block(X, fib, section):
    F, S = fib.fiber, X.named[section]
    return {"F2": int(X.pair(F, F)), "FS": int(X.pair(F, S)), "S2": int(X.pair(S, S))}


def xside(special):
    rep = Report("xside", {"special": special})
    x = x_side(special)
    X, std, alt = x["X"], x["standard"], x["alternate"]
    rep.verdict("picard_rank_X", X.model.rank)
    hs = _h_block(X, std, "S")
    rep.verdict("standard_fibration", std.inventory_text(),
                hs["F2"] == 0 and hs["FS"] == 1 and std.h_block_even_unimodular)
    rep.certificate("standard_fibration", std.h_block_even_unimodular,
                    {**std.to_json(), "h_block": hs, "cycles": std.cycles})
    s1 = xtrack.alternate_sections(special)[0]
    ha = _h_block(X, alt, s1)
    rep.verdict("alternate_fibration", alt.inventory_text(), ha["F2"] == 0 and ha["FS"] == 1)
    rep.certificate("alternate_fibration", ha["F2"] == 0 and ha["FS"] == 1,
                    {**alt.to_json(), "h_block": ha, "cycle": alt.cycle})
    rep.certificate("two_torsion_X", x["vgs"].ok, x["vgs"].to_json())
    rep.certificate("multisections", x["Q"].consistent and x["K"].consistent,
                    [x["Q"].to_json(), x["K"].to_json()])
    Y = x["Y"]
    euler = ztrack.inventory_euler(Y.inventory)
    rep.verdict("fibration_Y", ztrack.inventory_text(Y.inventory), euler == 24)
    rep.certificate("nikulin_quotient_Y", euler == 24, {
        "curves": len(Y.graph), "sections": Y.sections, "bisection": Y.bisection,
        "nodal_images": Y.nodal_images, "inventory": ztrack.inventory_json(Y.inventory),
        "euler_sum": euler})
    Rq = x["R"]
    rep.certificate("rational_quotient_R", Rq.unimodular, {
        "rank": Rq.model.rank, "fixed_curves": Rq.fixed, "k_square": Rq.k_square,
        "squares": {l: Rq.graph.gram()[i][i] for i, l in enumerate(Rq.graph.labels)},
        "unimodular": Rq.unimodular})
    rec = x["recovery"]
    rep.verdict("recovery", rec.ok, rec.ok)
    rep.certificate("recovery", rec.ok, rec.to_json())
    rep.diagram("X", X.graph)
    rep.diagram("Y", Y.graph)
    rep.diagram("R", Rq.graph)
    return rep, x


# ------------------------------------------------------------------ matching

def match_diagrams(kummer, z=None):
    """Isomorphism of the W diagram with the X alternate diagram."""
    z = z or z_side(kummer)
    X = xtrack.build_x(special=kummer)
    mapping = is_isomorphic(z["W"].graph, X.graph)
    ok = verify_isomorphism(z["W"].graph, X.graph, mapping)
    if not ok:
        raise CertificateFailure("no isomorphism between the W diagram and the X diagram")
    return mapping


def match(arr):
    rep, z = analyze(arr)
    rep.meta["command"] = "match"
    if z is None:
        return rep, None
    kummer = z["Z"].kummer
    mapping = match_diagrams(kummer, z)
    rep.verdict("x_side_type", "special" if kummer else "non-special")
    rep.verdict("diagram_isomorphism", True)
    rep.certificate("diagram_isomorphism", True,
                    {"from": "W", "to": "X (%s)" % ("special" if kummer else "non-special"),
                     "mapping": [[a, mapping[a]] for a in z["W"].graph.labels]})
    return rep, mapping
