from hypothesis import given, strategies as st

from k3isogeny import intmat, lattice
from oracles import det, inertia, smith_diagonal

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def symmetric(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = draw(small)
    return G


@given(st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(lambda n: matrices(m, n))))
def test_hnf_transform(A):
    H, U, piv = intmat.hnf(A)
    assert intmat.matmul(U, A) == H
    assert abs(intmat.det_int(U)) == 1
    for r, c in enumerate(piv):
        assert H[r][c] > 0
        for i in range(r):
            assert 0 <= H[i][c] < H[r][c]
    for row in H[len(piv):]:
        assert not any(row)


@given(symmetric())
def test_inertia_matches_charpoly(G):
    p, n, z = intmat.inertia(G)
    assert (p, n, z) == inertia(G)
    assert p + n + z == len(G)


def test_inertia_affine_d8_is_degenerate():
    # extended D8: negative semidefinite with a one-dimensional radical
    adj = [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (6, 8)]
    G = [[-2 if i == j else 0 for j in range(9)] for i in range(9)]
    for i, j in adj:
        G[i][j] = G[j][i] = 1
    assert intmat.inertia(G) == (0, 8, 1)
    assert inertia(G) == (0, 8, 1)


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_det_matches_sympy(M):
    assert intmat.det_int(M) == det(M)


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: matrices(m, n))))
def test_smith_matches_sympy(A):
    d = intmat.smith_diagonal(A)
    assert sorted(d) == smith_diagonal(A)
    for a, b in zip(d, d[1:]):
        assert b % a == 0


@given(st.integers(1, 4).flatmap(lambda m: matrices(m, 5)))
def test_left_kernel(A):
    for k in intmat.left_kernel(A):
        assert not any(intmat.matvec(intmat.transpose(A), k))
    assert len(intmat.left_kernel(A)) == len(A) - intmat.rank(A)


def test_frozen_determinants():
    # values from the sympy determinant oracle
    assert det(lattice.cartan_gram("E", 8)) == 1
    assert det(lattice.cartan_gram("E", 7)) == -2
    assert det(lattice.cartan_gram("E", 6)) == 3
    assert intmat.det_int(lattice.cartan_gram("D", 8)) == 4
