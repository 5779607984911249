"""Exact integer and rational matrix routines.

Matrices are lists of row lists.  Integer routines keep Python ints
(arbitrary precision); rational routines use fractions.Fraction.
Nothing here ever touches floating point.
"""
from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def bilinear(G, u, v):
    """u^T G v."""
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = G[i]
            total += ui * sum(g * x for g, x in zip(row, v) if x)
    return total


def congruence(P, G):
    """P G P^T."""
    return matmul(matmul(P, G), transpose(P))


def is_symmetric(G):
    n = len(G)
    return all(len(row) == n for row in G) and all(
        G[i][j] == G[j][i] for i in range(n) for j in range(i))


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0


def common_denominator(values):
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def to_fraction_matrix(A):
    return [[Fraction(x) for x in row] for row in A]


# ---------------------------------------------------------------- integers

def hnf(A):
    """Row-style Hermite normal form with unimodular transform.

    Returns (H, U, pivots) with U * A = H.  The first len(pivots) rows of
    H are the nonzero echelon rows (positive pivots, entries above each
    pivot reduced into [0, pivot)); the remaining rows of H are zero and
    the matching rows of U form a basis of the integer left kernel.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [[int(x) for x in row] for row in A]
    U = identity(m)
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            clean = True
            pr, ur = H[r], U[r]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // pr[c]
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], pr)]
                        U[i] = [a - q * b for a, b in zip(U[i], ur)]
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        pr, ur = H[r], U[r]
        for i in range(r):
            q = H[i][c] // pr[c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], pr)]
                U[i] = [a - q * b for a, b in zip(U[i], ur)]
        pivots.append(c)
        r += 1
    return H, U, pivots


def row_basis(gens):
    """HNF basis (nonzero rows) of the integer row span of gens."""
    if not gens:
        return []
    H, _, piv = hnf(gens)
    return H[:len(piv)]


def left_kernel(A):
    """Integer basis of {x : x A = 0}, saturated."""
    H, U, piv = hnf(A)
    return U[len(piv):]


def right_kernel(A):
    """Integer basis of {x : A x = 0}, saturated."""
    return left_kernel(transpose(A)) if A and A[0] else []


def solve_in_hnf(basis, pivots, v):
    """Coefficients c with c * basis = v, or None.

    basis must be the echelon rows returned by hnf() with their pivots.
    """
    v = list(v)
    coeffs = []
    for row, c in zip(basis, pivots):
        if any(v[j] for j in range(c)):
            return None
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


def pivots_of(basis):
    piv = []
    for row in basis:
        piv.append(next(j for j, x in enumerate(row) if x))
    return piv


def det_int(M):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [[int(x) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_diagonal(A):
    """Diagonal of the Smith normal form (nonzero entries, d1 | d2 | ...)."""
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        entries = [(abs(M[i][j]), i, j) for i in range(t, m)
                   for j in range(t, n) if M[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    if M[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    for row in M:
                        row[j] -= q * row[t]
                    if M[t][j]:
                        changed = True
            if not changed:
                # entries of the remaining block must be divisible by p
                bad = next(((i, j) for i in range(t + 1, m)
                            for j in range(t + 1, n) if M[i][j] % p), None)
                if bad is None:
                    break
                M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
                continue
            entries = [(abs(M[i][j]), i, j) for i in range(t, m)
                       for j in range(t, n) if M[i][j] and (i == t or j == t)]
            _, pi, pj = min(entries)
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


# ---------------------------------------------------------------- rationals

def rref(A):
    """Reduced row echelon form over Q.  Returns (R, pivots)."""
    R = to_fraction_matrix(A)
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(A):
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols=None):
    """Rational basis of {x : A x = 0}."""
    if not A:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(A[0])
    R, piv = rref(A)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def solve_rational(A, b):
    """One rational solution x of A x = b, or None."""
    m = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    n = len(A[0]) if m else 0
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def solve_left(B, v):
    """Rational c with c * B = v (rows of B), or None."""
    return solve_rational(transpose(B), list(v))


def primitive(v):
    """Scale a rational vector to a primitive integer vector."""
    d = common_denominator(v)
    w = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return w
    return [x // g for x in w]


def inertia(G):
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Symmetric Gaussian elimination: a nonzero diagonal pivot when one
    exists, otherwise a congruence e_i -> e_i + e_j creates one.
    """
    A = to_fraction_matrix(G)
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if A[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active
                         if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for t in range(n):
                A[i][t] += A[j][t]
            for t in range(n):
                A[t][i] += A[t][j]
            k = i
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        row = list(A[k])
        for i in active:
            if row[i] != 0:
                f = row[i] / p
                for j in active:
                    A[i][j] -= f * row[j]
        for i in active:
            A[i][k] = A[k][i] = Fraction(0)
    return pos, neg, n - pos - neg
