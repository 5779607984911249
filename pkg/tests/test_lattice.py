import pytest
from hypothesis import given, strategies as st

from k3isogeny import lattice as L
from k3isogeny.errors import LatticeError, NotASublattice, NotDefinite, NotRootGenerated
from oracles import brute_vectors, inertia

# frozen from the brute-force box enumeration in oracles.brute_vectors
ROOT_COUNTS = {"A1": 2, "A2": 6, "D4": 24, "E6": 72, "E7": 126, "E8": 240}


def test_hyperbolic_plane():
    H = L.standard_lattice("H")
    assert H.gram_list() == [[0, 1], [1, 0]]
    assert L.signature(H) == (1, 1)
    assert L.is_hyperbolic_plane(H)


@pytest.mark.parametrize("name,count", sorted(ROOT_COUNTS.items()))
def test_root_counts(name, count):
    lat = L.standard_lattice(name)
    rts = L.roots(lat)
    assert len(rts) == count
    assert rts == sorted(rts)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "D4"])
def test_roots_match_brute_force(name):
    lat = L.standard_lattice(name)
    Q = [[-x for x in row] for row in lat.gram]
    brute = brute_vectors(Q, 2, 2)
    assert sorted(map(list, L.roots(lat))) == sorted(brute)


def test_brute_force_oracle_agrees_on_e6():
    # simple-root coordinates of E6 roots are bounded by the highest root (<= 3)
    Q = [[-x for x in row] for row in L.cartan_gram("E", 6)]
    assert len(brute_vectors(Q, 2, 3)) == 72


@given(st.integers(1, 6))
def test_a_n_root_count(n):
    assert len(L.roots(L.standard_lattice("A%d" % n))) == n * (n + 1)


@given(st.integers(4, 6))
def test_d_n_root_count(n):
    assert len(L.roots(L.standard_lattice("D%d" % n))) == 2 * n * (n - 1)


@pytest.mark.parametrize("name", ["A3", "D5", "E7"])
def test_roots_closed_under_negation(name):
    rts = {tuple(v) for v in L.roots(L.standard_lattice(name))}
    assert {tuple(-x for x in v) for v in rts} == rts
    assert len(rts) % 2 == 0


@pytest.mark.parametrize("name,disc", [("H", -1), ("E7", -2), ("E8", 1), ("E6", 3), ("D4", 4)])
def test_discriminants(name, disc):
    assert L.discriminant(L.standard_lattice(name)) == disc


def test_direct_sum_and_signature():
    H, E7, E8 = (L.standard_lattice(n) for n in ("H", "E7", "E8"))
    s = L.direct_sum(H, E7, E7)
    assert s.rank == 16
    assert L.signature(s) == (1, 15)
    assert L.signature(L.direct_sum(H, E8, E7)) == (1, 16)
    assert L.direct_sum(E7, L.IntegerLattice([])) == E7


def test_twist():
    A1 = L.standard_lattice("A1")
    assert L.twist(A1, 2).gram_list() == [[-4]]
    E7 = L.standard_lattice("E7")
    assert L.twist(E7, 1) == E7
    assert L.discriminant(L.twist(E7, 2)) == -2 * 2 ** 7
    assert L.root_span(L.twist(A1, 2)).rank == 0


@pytest.mark.parametrize("name", ["A1", "A4", "D4", "D7", "E6", "E7", "E8"])
def test_classify_standard(name):
    assert L.classify_ade(L.root_span(L.standard_lattice(name))) == [name]


def test_classify_sum():
    lat = L.direct_sum(L.standard_lattice("E7"), L.standard_lattice("A1"))
    assert L.classify_ade(L.root_span(lat)) == ["A1", "E7"]
    assert L.ade_label(["A1"] * 6 + ["D8"]) == "D8+6A1"


def test_classify_rejects_non_root_span():
    lat = L.standard_lattice("A2")
    span = L.SublatticeSpan(lat, [[1, 0], [0, 2]])
    with pytest.raises(NotRootGenerated):
        L.classify_ade(span)


def test_roots_need_negative_definite():
    with pytest.raises(NotDefinite):
        L.roots(L.standard_lattice("H"))


def test_unknown_lattice():
    with pytest.raises(LatticeError):
        L.standard_lattice("F4")


def test_nikulin_lattice():
    N = L.standard_lattice("NikulinN")
    assert N.rank == 8 and N.is_even
    assert abs(L.discriminant(N)) == 2 ** 6
    assert L.signature(N) == (0, 8)
    # the roots of N are the sixteen +-e_i of the A1^8 sublattice
    assert len(L.roots(N)) == 16
    assert L.quotient_group(L.SublatticeSpan(N, [[int(i == j) for j in range(8)]
                                                 for i in range(8)]),
                            L.root_span(N)).invariant_factors == [2]


def test_complement_of_root_in_e8_is_e7():
    E8 = L.standard_lattice("E8")
    r = L.roots(E8)[0]
    comp = L.orthogonal_complement(E8, [r])
    sub = L.SublatticeSpan(E8, comp)
    assert L.classify_ade(L.root_span(sub.lattice())) == ["E7"]


def test_membership_and_quotient():
    A1 = L.standard_lattice("A1")
    full = L.SublatticeSpan(A1, [[1]])
    twice = L.SublatticeSpan(A1, [[2]])
    assert L.member_of_span([0], twice)
    assert not L.member_of_span([1], twice)
    assert L.quotient_group(full, full).is_trivial()
    q = L.quotient_group(full, twice)
    assert q.invariant_factors == [2] and q.order == 2
    assert L.order_in_quotient([1], twice) == 2
    assert L.order_in_quotient([2], twice) == 1
    with pytest.raises(NotASublattice):
        L.quotient_group(twice, full)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_membership_closed_under_addition(a, b):
    D4 = L.standard_lattice("D4")
    span = L.SublatticeSpan(D4, [[2, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 0], [1, 1, 1, 1]])
    va = [sum(c * g for c, g in zip(a, col)) for col in zip(*span.basis)]
    vb = [sum(c * g for c, g in zip(b, col)) for col in zip(*span.basis)]
    assert L.member_of_span(va, span) and L.member_of_span(vb, span)
    assert L.member_of_span([x + y for x, y in zip(va, vb)], span)


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_order_divides_exponent(v):
    A3 = L.standard_lattice("A3")
    full = L.SublatticeSpan(A3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    sub = L.SublatticeSpan(A3, [[2, 0, 0], [0, 6, 0], [1, 1, 3]])
    q = L.quotient_group(full, sub)
    assert q.order == abs(L.intmat.det_int(sub.basis))
    assert q.exponent % L.order_in_quotient(v, sub) == 0


@pytest.mark.parametrize("name", ["H", "A3", "D5", "E7", "NikulinN"])
def test_signature_oracle(name):
    lat = L.standard_lattice(name)
    p, n, z = inertia(lat.gram_list())
    assert z == 0 and L.signature(lat) == (p, n)
