import functools

import pytest
from hypothesis import given, strategies as st

from k3isogeny import lattice, xtrack, ztrack
from k3isogeny.dualgraph import KodairaType, is_isomorphic, verify_isomorphism
from k3isogeny.errors import CertificateFailure
from k3isogeny.surface import DivisorClass, combine, intersect


@pytest.fixture(scope="module", params=[False, True], ids=["non-special", "special"])
def x(request):
    return {"special": request.param, "X": xtrack.build_x(request.param)}


@functools.lru_cache(maxsize=None)
def r_nonspecial():
    return xtrack.quotient_model(xtrack.nikulin_transform_x(xtrack.build_x(False)))


@pytest.fixture(scope="module")
def nonspecial():
    X = xtrack.build_x(False)
    Y = xtrack.nikulin_transform_x(X)
    Rq = xtrack.quotient_model(Y)
    return {"X": X, "Y": Y, "R": Rq, "rec": xtrack.blow_down_recovery(Rq)}


@pytest.fixture(scope="module")
def special():
    X = xtrack.build_x(True)
    Y = xtrack.nikulin_transform_x(X)
    Rq = xtrack.quotient_model(Y)
    return {"X": X, "Y": Y, "R": Rq, "rec": xtrack.blow_down_recovery(Rq)}


def test_build_x(x):
    X = x["X"]
    assert len(X.graph) == 19
    assert all(sq == -2 for _, sq in X.graph.nodes)
    assert X.model.rank == (17 if x["special"] else 16)
    names = set(X.graph.labels)
    if x["special"]:
        assert "a9" in names and "d" not in names
    else:
        assert {"c", "d"} <= names and "a9" not in names
    assert X.pair("c", "b1") == 2


def test_standard_fibration(x):
    X = x["X"]
    fib = xtrack.standard_fibration(X)
    F = fib.fiber
    assert X.pair(F, F) == 0 and X.pair(F, "S") == 1
    kinds = sorted(str(t) for t, _, _ in fib.inventory[:2])
    assert kinds == (["II*", "III*"] if x["special"] else ["III*", "III*"])
    assert fib.h_block_even_unimodular
    assert fib.euler_sum() == 24
    if not x["special"]:
        assert fib.cycles[0] == xtrack.FS_DISPLAY


def test_alternate_fibration(x):
    X = x["X"]
    fib = xtrack.alternate_fibration(X)
    s1, s2 = xtrack.alternate_sections(x["special"])
    F = fib.fiber
    assert X.pair(F, F) == 0
    assert X.pair(F, s1) == X.pair(F, s2) == 1
    assert X.pair(s1, s2) == 0
    assert fib.big_fiber() == KodairaType.parse("I10*" if x["special"] else "I8*")
    assert fib.count("I2") == (1 if x["special"] else 2)
    assert fib.count("I1") == 6
    assert fib.cycle == xtrack.fa_display(x["special"])
    assert combine(X.named, xtrack.fa_display(x["special"])) == F


def test_vgs_x(x):
    cert = xtrack.vgs_certificate_x(x["X"])
    assert cert.ok and cert.sw_square == -4 and cert.order_in_quotient == 2
    assert cert.final_member and not cert.control_member
    if not x["special"]:
        assert [s["name"] for s in cert.chain] == ["ll1", "ll2", "ll3", "ll4", "ll5", "ll6", "final"]
        assert all(s["identity"] and s["member"] for s in cert.chain)


def test_multisections(x):
    Q, K = xtrack.multisections(x["X"])
    assert Q.degree == 2 and K.degree == 4
    assert Q.genus == 2 and Q.lattice_square == 2 and Q.ramification == 6
    assert K.genus == (2 if x["special"] else 3)
    assert K.lattice_square == 2 * K.genus - 2
    assert Q.consistent and K.consistent
    X = x["X"]
    if x["special"]:
        assert X.pair("Q", "c") == X.pair("Q", "b1") == 1
        assert X.pair("K", "c") == X.pair("K", "b1") == 2


def test_y_diagram(x):
    Y = xtrack.nikulin_transform_x(x["X"])
    # the special case keeps both curves over a9, giving one extra curve
    assert len(Y.graph) == (25 if x["special"] else 24)
    assert ztrack.inventory_euler(Y.inventory) == 24
    if not x["special"]:
        assert ztrack.inventory_text(Y.inventory) == "I4* + 6 x I2 + 2 x I1"
        assert Y.sections == ["a2~", "Q~"]
    assert Y.bisection == "K~"


def test_y_isomorphic_to_z(x):
    Y = xtrack.nikulin_transform_x(x["X"])
    Z = ztrack.build_z(x["special"]).diagram()
    m = is_isomorphic(Y.graph, Z)
    assert m is not None and verify_isomorphism(Y.graph, Z, m)


def test_r_squares(nonspecial):
    Rq = nonspecial["R"]
    G = Rq.graph.gram()
    sq = {l: G[i][i] for i, l in enumerate(Rq.graph.labels)}
    for l in ["K^", "S^", "a7^", "a4^", "a2^", "Q^"]:
        assert sq[l] == -4
    for i in range(1, 9):
        assert sq["U%d^" % i] == -1
    for i in range(1, 7):
        assert sq["V%d^" % i] == -1
    assert len(Rq.fixed) == 6
    assert Rq.unimodular and Rq.model.rank == 16 and Rq.k_square == -6


def test_recovery_non_special(nonspecial):
    rec = nonspecial["rec"]
    assert rec.ok
    assert [s["curve"] for s in rec.steps] == xtrack.BLOW_DOWN_SEQUENCE
    assert all(s["square"] == -1 and s["k_degree"] == -1 and s["fiber_degree"] == 0
               for s in rec.steps)
    assert rec.f0["ok"] and rec.f0["rank"] == 2
    assert rec.p2["ok"] and rec.p2["gram"] == [[1]]
    assert rec.e45_identity and rec.fiber_is_H_minus_E2 and rec.standard_basis
    assert rec.exceptional_failures == []
    assert not rec.conic["contains_q34"]
    assert rec.lines["pairwise_meet_once"]
    assert all(rec.transport_agrees.values())


def test_recovery_special(special):
    rec = special["rec"]
    assert rec.ok
    assert rec.conic["contains_q34"] and rec.conic["tangency_witness"]
    assert rec.exceptional_failures == []


def test_e_table(nonspecial):
    Rq = nonspecial["R"]
    E = xtrack.e_table_classes(Rq)
    assert len(E) == 15
    assert E["12"] == Rq.named["a6^"]
    assert E["45"] == Rq.fiber - Rq.named["U4^"] == Rq.named["V4^"]
    keys = sorted(E)
    for i, a in enumerate(keys):
        assert intersect(Rq.model, E[a], E[a]) == -1
        for b in keys[i + 1:]:
            assert intersect(Rq.model, E[a], E[b]) == 0


@given(st.lists(st.integers(-2, 2), min_size=15, max_size=15))
def test_e_table_combinations(cs):
    # any combination of orthogonal (-1)-classes has square -sum c^2
    Rq = r_nonspecial()
    E = xtrack.e_table_classes(Rq)
    v = DivisorClass([0] * Rq.model.rank)
    for c, k in zip(cs, sorted(E)):
        v = v + E[k] * c
    assert intersect(Rq.model, v, v) == -sum(c * c for c in cs)


def test_exceptional_system_control(nonspecial):
    Rq = nonspecial["R"]
    E = xtrack.e_table_classes(Rq)
    E["13"] = E["13"] + E["14"]
    assert xtrack.check_exceptional_system(Rq.model, E)


def test_transport_matches_table(nonspecial):
    Rq = nonspecial["R"]
    Et, lines, _ = xtrack.transport_e_table(Rq, xtrack.NONSPECIAL_ANCHORS)
    E = xtrack.e_table_classes(Rq)
    assert all(Et[k] == E[k] for k in E)
    assert lines == xtrack.LINE_CURVES[False]


def test_x_polarization_signature(x):
    L = lattice.IntegerLattice(x["X"].model.gram)
    assert lattice.signature(L) == (1, L.rank - 1)
