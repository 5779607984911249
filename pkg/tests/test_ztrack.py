import pytest

from k3isogeny import dualgraph as dg
from k3isogeny import lattice, ztrack
from k3isogeny.dualgraph import KodairaType
from k3isogeny.errors import CertificateFailure
from k3isogeny.surface import intersect


def chain(labels):
    return [(a, b, 1) for a, b in zip(labels, labels[1:])]


def graph(edges):
    labels = sorted({a for a, _, _ in edges} | {b for _, b, _ in edges})
    return dg.DualGraph([(l, -2) for l in labels], {(a, b): m for a, b, m in edges})


# W diagrams transcribed by hand from the published pictures
W_NON_KUMMER = graph(
    chain(["G34~", "Delta3~", "Psi5", "G23~", "Psi4", "Delta2~", "Psi3", "G12~", "Psi2",
           "Delta1~", "G15~"])
    + [("Delta4~", "G34~", 1), ("Delta4~", "Psi7", 1), ("Delta4~", "Psi8", 1),
       ("Delta3~", "Psi6", 1), ("Delta1~", "Psi1", 1), ("Delta5~", "G15~", 1),
       ("Delta5~", "J7~", 1), ("Delta5~", "J8~", 1), ("Psi7", "J7~", 2), ("Psi8", "J8~", 2)])
W_KUMMER = graph(
    chain(["Gamma~", "G34~", "Psi6", "Delta3~", "Psi5", "G23~", "Psi4", "Delta2~", "Psi3",
           "G12~", "Psi2", "Delta1~", "G15~"])
    + [("Delta4~", "Gamma~", 1), ("Delta4~", "Psi8", 1), ("G34~", "Psi7", 1),
       ("Delta1~", "Psi1", 1), ("Delta5~", "G15~", 1), ("Delta5~", "J8~", 1),
       ("Psi8", "J8~", 2)])


@pytest.fixture(scope="module", params=[False, True], ids=["non-kummer", "kummer"])
def z(request):
    Z = ztrack.build_z(request.param)
    fib = ztrack.fibration_z(Z)
    return {"Z": Z, "fib": fib, "vgs": ztrack.vgs_certificate_z(Z, fib),
            "W": ztrack.nikulin_transform_z(Z)}


def test_rank_and_signature(z):
    Z = z["Z"]
    # the Kummer case gains the anti-invariant class Gamma1 - Gamma2
    n = 17 if Z.kummer else 16
    assert Z.model.rank == n
    assert lattice.signature(lattice.IntegerLattice(Z.model.gram)) == (1, n - 1)
    assert all(x == 0 for x in Z.model.canonical.coords)


def test_pairings(z):
    Z = z["Z"]
    for i in range(1, 7):
        for p in ["12", "23", "34", "15", "16", "56"]:
            expect = 1 if str(i) in p else 0
            assert Z.pair("Delta%d" % i, "G" + p) == expect
    F = Z.named["F"]
    assert Z.pair(F, F) == 0
    assert Z.pair(F, "Delta5") == Z.pair(F, "Delta6") == 1
    assert Z.pair(F, "Delta4") == 2
    for i in range(1, 7):
        a, b = "Ups%d" % i, "Ups'%d" % i
        assert Z.pair(a, a) == Z.pair(b, b) == -2
        assert Z.pair(a, b) == 2


def test_kummer_conic_splits():
    Z = ztrack.build_z(True)
    assert Z.pair("Gamma1", "Gamma1") == Z.pair("Gamma2", "Gamma2") == -2
    assert Z.pair("Gamma1", "Gamma2") == 0
    Zn = ztrack.build_z(False)
    assert Zn.pair("Gamma", "Gamma") == -2
    assert Zn.pair("Gamma", "G34") == 0


def test_fibration(z):
    fib, kummer = z["fib"], z["Z"].kummer
    assert fib.euler_sum() == 24
    assert fib.big_fiber() == KodairaType.parse("I5*" if kummer else "I4*")
    assert fib.count("I2") == 6
    assert fib.count("I1") == (1 if kummer else 2)
    assert fib.sections == ["Delta5", "Delta6"]
    assert fib.multisections == [("Delta4", 2)]


def test_non_kummer_big_fiber_cycle():
    fib = ztrack.fibration_z(ztrack.build_z(False))
    assert fib.cycle == {"G34": 1, "Gamma": 1, "Delta3": 2, "G23": 2, "Delta2": 2,
                         "G12": 2, "Delta1": 2, "G15": 1, "G16": 1}


def test_vgs(z):
    v = z["vgs"]
    assert v.ok and v.member and v.sw_square == -4 and v.order_in_quotient == 2
    assert v.display_matches and v.named_witness_in_root_lattice
    assert v.quotient_invariants == [2] and v.quotient_free_rank == 0
    assert v.w_root_type == ("D9+6A1" if z["Z"].kummer else "D8+6A1")
    assert v.fiber_components_span_root_lattice


def test_vgs_half_is_not_in_root_lattice():
    Z = ztrack.build_z(False)
    fib = ztrack.fibration_z(Z)
    W, basis, coords = ztrack.mordell_weil_lattices(Z.model, Z.named, fib.fiber, "Delta5")
    roots = lattice.root_span(W)
    sw = Z.named["Delta6"] - Z.named["Delta5"] - fib.fiber * 2
    v = [int(x) for x in coords(sw)]
    assert not lattice.member_of_span(v, roots)
    assert lattice.member_of_span([2 * x for x in v], roots)


def test_vgs_control_fails():
    # Delta4 is a bisection, not a section: the same recipe must fail
    Z = ztrack.build_z(False)
    fib = ztrack.fibration_z(Z)
    try:
        ok = ztrack.vgs_certificate(Z.model, Z.named, fib, "Delta5", "Delta4").ok
    except CertificateFailure:
        ok = False
    assert not ok


def test_w_inventory(z):
    W, kummer = z["W"], z["Z"].kummer
    assert len(W.graph) == 19
    inv = ztrack.inventory_text(W.fibration)
    assert inv == ("I10* + I2 + 6 x I1" if kummer else "I8* + 2 x I2 + 6 x I1")
    assert ztrack.inventory_euler(W.fibration) == 24
    # each swapped pair Ups_i, Ups'_i merges into a nodal curve: the six I1 fibers
    assert W.nodal_images == ["Ups%d~" % i for i in range(1, 7)]


def test_w_matches_transcribed_non_kummer():
    W = ztrack.nikulin_transform_z(ztrack.build_z(False)).graph
    ident = {l: l for l in W.labels}
    assert dg.verify_isomorphism(W, W_NON_KUMMER, ident)


def test_w_matches_transcribed_kummer():
    W = ztrack.nikulin_transform_z(ztrack.build_z(True)).graph
    m = dg.is_isomorphic(W, W_KUMMER)
    assert m is not None
    # same labels except that Gamma~ and Psi7 trade places
    assert {a: b for a, b in m.items() if a != b} == {"Gamma~": "Psi7", "Psi7": "Gamma~"}
    # our Psi7 is the exceptional curve over the fixed point on G34 and Delta4
    assert W.edges[tuple(sorted((W.index["Psi7"], W.index["Delta4~"])))] == 1
    assert W.edges[tuple(sorted((W.index["Psi7"], W.index["G34~"])))] == 1


def test_polarization(z):
    W, kummer = z["W"], z["Z"].kummer
    cert = ztrack.polarization_certificate_w(W.graph, kummer)
    assert cert.ok and not cert.failures
    assert cert.verdict == ("H+E8+E7" if kummer else "H+E7+E7")
    H = cert.grams[0]
    assert H[0][0] % 2 == 0 and H[1][1] % 2 == 0
    assert H[0][0] * H[1][1] - H[0][1] ** 2 == -1


def test_polarization_control():
    W = ztrack.nikulin_transform_z(ztrack.build_z(False)).graph
    blocks = ztrack.polarization_generators(False)
    name, gens = blocks[2]
    blocks[2] = (name, ["Psi3"] + gens[1:])
    cert = ztrack.polarization_certificate_w(W, False, blocks)
    assert not cert.ok and cert.verdict is None and cert.failures


def test_polarization_lattice_signature():
    W = ztrack.nikulin_transform_z(ztrack.build_z(False)).graph
    cert = ztrack.polarization_certificate_w(W, False)
    n = sum(len(g) for g in cert.grams)
    G = [[0] * n for _ in range(n)]
    off = 0
    for g in cert.grams:
        for i in range(len(g)):
            for j in range(len(g)):
                G[off + i][off + j] = g[i][j]
        off += len(g)
    L = lattice.IntegerLattice(G)
    assert L.rank == 16 and lattice.signature(L) == (1, 15)
    assert lattice.discriminant(L) == -4


def test_inventory_helpers():
    inv = [(KodairaType.parse("I8*"), ["a"], 1), (KodairaType("I", 2), [["b", "c"]], 2),
           (KodairaType("I", 1), "nodal/uncounted", 6)]
    assert ztrack.inventory_euler(inv) == 24
    assert ztrack.inventory_text(inv) == "I8* + 2 x I2 + 6 x I1"


def test_generic_flag_required():
    with pytest.raises(CertificateFailure):
        ztrack.build_z(False, {"generic": False, "first_failure": "Phi1"})
