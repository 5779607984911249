"""The ten acceptance criteria as executable checks.

Each check returns an Outcome with a one-line summary and details.
Random inputs come from fixed seeds, so a run is reproducible.
"""
import random
import time

from . import arrangement as arrmod
from . import lattice as lat
from . import pipeline, xtrack, ztrack
from .dualgraph import KodairaType, is_isomorphic, verify_isomorphism
from .errors import K3Error
from .surface import riemann_roch_chi

SEED = 20240601
N_KUMMER_TESTS = 100
N_TANGENT = 10
N_GENERIC = 25
N_GENERIC_KUMMER = 3
TIME_LIMIT = 120.0


class Outcome:
    def __init__(self, number, title, ok, summary, details=None, seconds=0.0):
        self.number = number
        self.title = title
        self.ok = bool(ok)
        self.summary = summary
        self.details = details or {}
        self.seconds = seconds

    def line(self):
        return "criterion %2d %s  %s: %s (%.1f s)" % (
            self.number, "PASS" if self.ok else "FAIL", self.title, self.summary, self.seconds)

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "ok": self.ok,
                "summary": self.summary, "details": self.details,
                "seconds": "%.2f" % self.seconds}


class Corpus:
    """Shared inputs and cached pipeline results for one run."""

    def __init__(self, seed=SEED):
        self.rng = random.Random(seed)
        self._random = None
        self._tangent = None
        self._generic = None
        self._z = []
        self._x = {}

    def random_arrangements(self):
        if self._random is None:
            self._random = [arrmod.random_arrangement(self.rng) for _ in range(N_KUMMER_TESTS)]
        return self._random

    def tangent_arrangements(self):
        if self._tangent is None:
            self._tangent = [arrmod.random_tangent_arrangement(self.rng) for _ in range(N_TANGENT)]
        return self._tangent

    def generic_arrangements(self):
        """[(arrangement, kummer, genericity certificate)] for the Z-side checks."""
        if self._generic is None:
            out = []
            for arr in self.random_arrangements():
                if len([x for x in out if not x[1]]) == N_GENERIC:
                    break
                cert = arrmod.is_generic(arr)
                if cert["generic"]:
                    out.append((arr, arrmod.kummer_verdict(arr), cert))
            for arr in self.tangent_arrangements()[:N_GENERIC_KUMMER]:
                cert = arrmod.is_generic(arr)
                if cert["generic"]:
                    out.append((arr, arrmod.kummer_verdict(arr), cert))
            self._generic = out
        return self._generic

    def z_runs(self):
        """Z-side pipeline for every generic arrangement: [(arr, kummer, run)]."""
        if not self._z:
            self._z = [(arr, kummer, pipeline.z_side(kummer, cert))
                       for arr, kummer, cert in self.generic_arrangements()]
        return self._z

    def z_side(self, kummer):
        """First Z-side run with the given Kummer verdict."""
        return next(run for _, k, run in self.z_runs() if k == kummer)

    def x_side(self, special):
        if special not in self._x:
            self._x[special] = pipeline.x_side(special)
        return self._x[special]


def _timed(number, title, fn, corpus):
    t = time.time()
    try:
        ok, summary, details = fn(corpus)
    except (K3Error, AssertionError) as exc:
        ok, summary, details = False, "%s: %s" % (type(exc).__name__, exc), {}
    return Outcome(number, title, ok, summary, details, time.time() - t)


# ------------------------------------------------------------------ checks

ROOT_COUNTS = {"A1": 2, "E6": 72, "E7": 126, "E8": 240, "D4": 24}
DISCRIMINANTS = {"H": -1, "E7": -2, "E8": 1}


def check_lattices(corpus):
    counts = {n: len(lat.roots(lat.standard_lattice(n))) for n in ROOT_COUNTS}
    discs = {n: lat.discriminant(lat.standard_lattice(n)) for n in DISCRIMINANTS}
    classified = {n: lat.ade_label(lat.classify_ade(lat.root_span(lat.standard_lattice(n))))
                  for n in ROOT_COUNTS}
    ok = counts == ROOT_COUNTS and discs == DISCRIMINANTS and all(
        classified[n] == n for n in ROOT_COUNTS)
    summary = "roots %s, discriminants %s" % (
        "/".join(str(counts[n]) for n in ROOT_COUNTS), "/".join(str(discs[n]) for n in DISCRIMINANTS))
    return ok, summary, {"root_counts": counts, "discriminants": discs, "classified": classified}


def check_kummer_tests(corpus):
    disagree = []
    kummer_random = 0
    for arr in corpus.random_arrangements():
        a, b = arrmod.is_kummer_dual_conic(arr), arrmod.is_kummer_pascal(arr)
        kummer_random += a
        if a != b:
            disagree.append(arr.to_json())
    tangent_true = 0
    for arr in corpus.tangent_arrangements():
        a, b = arrmod.is_kummer_dual_conic(arr), arrmod.is_kummer_pascal(arr)
        tangent_true += a and b
        if a != b:
            disagree.append(arr.to_json())
    n_r, n_t = len(corpus.random_arrangements()), len(corpus.tangent_arrangements())
    ok = not disagree and tangent_true == n_t and n_r >= 100 and n_t >= 10
    summary = "%d random + %d tangent, %d disagreements, %d/%d tangent detected" % (
        n_r, n_t, len(disagree), tangent_true, n_t)
    return ok, summary, {"disagreements": disagree, "random_kummer": kummer_random}


def check_interpolation(corpus):
    R = ztrack.r_model()
    chi = riemann_roch_chi(R, ztrack.divisor_d(R))
    bad = []
    rows = [(arr, cert) for arr, kummer, cert in corpus.generic_arrangements() if not kummer]
    for arr, cert in rows:
        hd = arrmod.system_h0(arr, arrmod.DIVISOR_D)
        hs = {c["system"]: c["h0"] for c in cert["checks"]}
        if hd != 2 or any(v != 1 for v in hs.values()):
            bad.append({"arrangement": arr.to_json(), "h0_D": hd, "h0": hs})
    ok = len(rows) >= N_GENERIC and not bad and chi == 2
    summary = "%d generic arrangements, h0(D) = 2 and twelve h0 = 1 on all, chi(D) = %s" % (
        len(rows), chi)
    return ok, summary, {"failures": bad, "chi_D": chi}


def check_z_fibration(corpus):
    seen = {False: 0, True: 0}
    bad = []
    for arr, kummer, run in corpus.z_runs():
        fib = run["fibration"]
        want = KodairaType("I*", 5 if kummer else 4)
        if not (fib.big_fiber() == want and fib.euler_sum() == 24 and fib.count("I2") == 6
                and fib.count("I1") == (1 if kummer else 2)):
            bad.append(arr.to_json())
        seen[kummer] += 1
    texts = {k: corpus.z_side(k)["fibration"].inventory_text() for k in (False, True)}
    ok = not bad and seen[False] >= 1 and seen[True] >= 1
    summary = "non-Kummer %s (%d), Kummer %s (%d)" % (texts[False], seen[False], texts[True], seen[True])
    return ok, summary, {"failures": bad, "inventories": texts}


def check_z_two_torsion(corpus):
    rows = corpus.z_runs()
    passed = sum(1 for _, _, run in rows if run["vgs"].ok and run["vgs"].sw_square == -4
                 and run["vgs"].member and run["vgs"].order_in_quotient == 2)
    certs = {k: corpus.z_side(k)["vgs"] for k in (False, True)}
    details = {("kummer" if k else "non_kummer"): c.to_json() for k, c in certs.items()}
    ok = passed == len(rows)
    summary = "(S^w)^2 = %d, witness found, order %d, %d/%d arrangements" % (
        certs[False].sw_square, certs[False].order_in_quotient, passed, len(rows))
    return ok, summary, details


def polarization_control(graph, kummer, rng):
    """Replace one block generator by a curve outside all blocks."""
    blocks = ztrack.polarization_generators(kummer)
    used = {l for _, gens in blocks for g in gens for l in ([g] if isinstance(g, str) else g)}
    spare = [l for l in graph.labels if l not in used]
    b = rng.randrange(1, len(blocks))
    name, gens = blocks[b]
    gens = list(gens)
    k = rng.randrange(len(gens))
    swap = rng.choice(spare)
    old = gens[k]
    gens[k] = swap
    blocks[b] = (name, gens)
    cert = ztrack.polarization_certificate_w(graph, kummer, blocks)
    return cert, {"block": name, "replaced": old, "by": swap, "failures": cert.failures}


def check_polarization(corpus):
    verdicts = {}
    for _, k, run in corpus.z_runs():
        cert = run["polarization"]
        v = cert.verdict if cert.ok else None
        verdicts[k] = v if verdicts.get(k, v) == v else None
    control, info = polarization_control(corpus.z_side(False)["W"].graph, False,
                                         random.Random(SEED))
    ok = verdicts == {False: "H+E7+E7", True: "H+E8+E7"} and not control.ok
    summary = "non-Kummer %s, Kummer %s, perturbed control rejected: %s" % (
        verdicts[False], verdicts[True], not control.ok)
    return ok, summary, {"control": info}


def check_x_side(corpus):
    out = {}
    ok = True
    for special in (False, True):
        x = corpus.x_side(special)
        X, std, alt, vgs = x["X"], x["standard"], x["alternate"], x["vgs"]
        s1 = xtrack.alternate_sections(special)[0]
        h_std = (X.pair(std.fiber, std.fiber), X.pair(std.fiber, "S"))
        h_alt = (X.pair(alt.fiber, alt.fiber), X.pair(alt.fiber, s1))
        std_types = sorted(str(t) for t, _, c in std.inventory[:2])
        rec = {"standard": std_types, "alternate": str(alt.big_fiber()),
               "h_standard": [int(v) for v in h_std], "h_alternate": [int(v) for v in h_alt],
               "final_member": vgs.final_member, "control_member": vgs.control_member}
        good = h_std == (0, 1) and h_alt == (0, 1) and vgs.final_member and not vgs.control_member
        if special:
            good = good and std_types == ["II*", "III*"] and rec["alternate"] == "I10*"
        else:
            rec["chain"] = {s["name"]: s["identity"] and s["member"] for s in vgs.chain}
            good = good and std_types == ["III*", "III*"] and rec["alternate"] == "I8*" \
                and all(rec["chain"].values()) and len(rec["chain"]) == 7
        rec["ok"] = good
        ok = ok and good
        out["special" if special else "non_special"] = rec
    summary = "III*+III*/I8* and II*+III*/I10*, chain ll1-ll6 + final hold, control rejected: %s" % ok
    return ok, summary, out


def check_correspondence(corpus):
    out = {}
    ok = True
    for kummer in (False, True):
        W = corpus.z_side(kummer)["W"].graph
        X = corpus.x_side(kummer)["X"].graph
        mapping = is_isomorphic(W, X)
        good = verify_isomorphism(W, X, mapping)
        ok = ok and good
        out["kummer" if kummer else "non_kummer"] = {
            "ok": good, "mapping": [[a, mapping[a]] for a in W.labels] if mapping else None}
    summary = "W ~ X alternate diagram: non-Kummer %s, Kummer %s" % (
        out["non_kummer"]["ok"], out["kummer"]["ok"])
    return ok, summary, out


def check_recovery(corpus):
    ns = corpus.x_side(False)["recovery"]
    sp = corpus.x_side(True)["recovery"]
    steps_ok = len(ns.steps) == 14 and all(s["ok"] and s["fiber_degree"] == 0 for s in ns.steps)
    ok = (steps_ok and ns.f0["ok"] and ns.p2["ok"] and not ns.exceptional_failures
          and ns.e45_identity and not ns.conic["contains_q34"]
          and not sp.exceptional_failures and sp.conic["contains_q34"] and ns.ok and sp.ok)
    summary = ("14 contractions certified, F0 %s, P2 %s, fifteen E_ij orthogonal (-1)-classes, "
               "E45 identity %s, conic through q34: non-special %s, special %s") % (
        ns.f0["ok"], ns.p2["ok"], ns.e45_identity, ns.conic["contains_q34"], sp.conic["contains_q34"])
    return ok, summary, {"non_special": ns.to_json(), "special": sp.to_json()}


CHECKS = [
    (1, "lattice oracles", check_lattices),
    (2, "Kummer tests agree", check_kummer_tests),
    (3, "interpolation counts", check_interpolation),
    (4, "Z-side fibration", check_z_fibration),
    (5, "Z-side two-torsion", check_z_two_torsion),
    (6, "W polarization", check_polarization),
    (7, "X-side fibrations", check_x_side),
    (8, "diagram correspondence", check_correspondence),
    (9, "blow-down recovery", check_recovery),
]


def run_all(seed=SEED, report=None):
    """Run criteria 1-9, then criterion 10 on the total time."""
    corpus = Corpus(seed)
    outcomes = []
    start = time.time()
    for number, title, fn in CHECKS:
        o = _timed(number, title, fn, corpus)
        outcomes.append(o)
        if report:
            report(o)
    total = time.time() - start
    ok = all(o.ok for o in outcomes) and total < TIME_LIMIT
    last = Outcome(10, "selftest budget", ok,
                   "criteria 1-9 %s in %.1f s (limit %.0f s)" % (
                       "pass" if all(o.ok for o in outcomes) else "fail", total, TIME_LIMIT),
                   {"seconds": "%.2f" % total}, total)
    outcomes.append(last)
    if report:
        report(last)
    return outcomes
