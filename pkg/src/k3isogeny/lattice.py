"""Integer lattices with symmetric bilinear forms.

ADE lattices use the negative definite convention (Gram = -Cartan) so
roots have norm -2, matching smooth rational curves on a K3 surface.
"""
from fractions import Fraction
from math import ceil, floor, isqrt

from . import intmat
from .errors import NotDefinite, NotRootGenerated, NotASublattice, LatticeError


class IntegerLattice:
    """Free Z-module of finite rank with a symmetric integer Gram matrix."""

    def __init__(self, gram, name=None):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        if not intmat.is_symmetric([list(r) for r in g]):
            raise LatticeError("gram matrix is not symmetric")
        self.gram = g
        self.name = name

    @property
    def rank(self):
        return len(self.gram)

    @property
    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def gram_list(self):
        return [list(r) for r in self.gram]

    def pair(self, u, v):
        return intmat.bilinear(self.gram, u, v)

    def norm(self, v):
        return self.pair(v, v)

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        label = self.name or "lattice"
        return "IntegerLattice(%s, rank=%d)" % (label, self.rank)


class SublatticeSpan:
    """Integer span of a set of ambient vectors, stored as an HNF basis."""

    def __init__(self, ambient, generators):
        self.ambient = ambient
        gens = [[int(x) for x in g] for g in generators]
        for g in gens:
            if len(g) != ambient.rank:
                raise LatticeError("generator has wrong dimension")
        self.basis = intmat.row_basis(gens)
        self._pivots = intmat.pivots_of(self.basis)

    @property
    def rank(self):
        return len(self.basis)

    def gram(self):
        return intmat.congruence(self.basis, self.ambient.gram_list())

    def lattice(self):
        return IntegerLattice(self.gram())

    def coefficients(self, v):
        """Integer coefficients of v over the basis, or None."""
        if len(v) != self.ambient.rank:
            raise LatticeError("dimension mismatch")
        if any(Fraction(x).denominator != 1 for x in v):
            return None
        return intmat.solve_in_hnf(self.basis, self._pivots, [int(x) for x in v])

    def rational_coefficients(self, v):
        if not self.basis:
            return [] if not any(v) else None
        return intmat.solve_left(self.basis, v)


class FiniteAbelianGroup:
    """Z^free_rank + sum Z/d_i with d_1 | d_2 | ... and each d_i > 1."""

    def __init__(self, invariant_factors, free_rank=0):
        facs = [int(d) for d in invariant_factors if d != 1]
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise LatticeError("invariant factors must form a divisibility chain")
        if any(d <= 0 for d in facs):
            raise LatticeError("invariant factors must be positive")
        self.invariant_factors = facs
        self.free_rank = free_rank

    @property
    def order(self):
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def exponent(self):
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self):
        return not self.invariant_factors and not self.free_rank

    def __repr__(self):
        parts = ["Z/%d" % d for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        return " + ".join(parts) if parts else "0"


# ------------------------------------------------------------ constructions

def cartan_gram(kind, n):
    """Negative definite Gram (= -Cartan) of a simply laced root system."""
    adj = set()
    if kind == "A":
        adj = {(i, i + 1) for i in range(n - 1)}
    elif kind == "D":
        if n < 4:
            raise LatticeError("D_n needs n >= 4")
        adj = {(i, i + 1) for i in range(n - 2)} | {(n - 3, n - 1)}
    elif kind == "E":
        if n not in (6, 7, 8):
            raise LatticeError("E_n needs n in 6..8")
        # chain 0..n-2 with node n-1 attached to node 2
        adj = {(i, i + 1) for i in range(n - 2)} | {(2, n - 1)}
    else:
        raise LatticeError("unknown root system %r" % kind)
    G = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in adj:
        G[i][j] = G[j][i] = 1
    return G


def standard_lattice(name):
    """H, A_n, D_n, E6, E7, E8 or NikulinN."""
    if name == "H":
        return IntegerLattice([[0, 1], [1, 0]], "H")
    if name == "NikulinN":
        return nikulin_lattice()
    kind, digits = name[:1], name[1:].lstrip("_")
    if kind in "ADE" and digits.isdigit():
        n = int(digits)
        if n < 1:
            raise LatticeError("unknown lattice %r" % name)
        return IntegerLattice(cartan_gram(kind, n), "%s%d" % (kind, n))
    raise LatticeError("unknown lattice %r" % name)


def nikulin_lattice():
    """Saturation of A1^8 by the half-sum of the eight generators."""
    gens = [[2 * int(i == j) for j in range(8)] for i in range(8)]
    gens.append([1] * 8)
    basis = intmat.row_basis(gens)
    # basis is expressed in half-units of the A1 generators
    G = [[Fraction(-2 * intmat.dot(u, v), 4) for v in basis] for u in basis]
    return IntegerLattice([[int(x) for x in row] for row in G], "NikulinN")


def direct_sum(*lattices):
    n = sum(L.rank for L in lattices)
    G = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                G[off + i][off + j] = L.gram[i][j]
        off += L.rank
    names = [L.name for L in lattices if L.rank]
    name = "+".join(names) if names and all(names) else None
    return IntegerLattice(G, name)


def twist(L, n):
    if n < 1:
        raise LatticeError("twist factor must be positive")
    name = "%s(%d)" % (L.name, n) if L.name else None
    return IntegerLattice([[n * x for x in row] for row in L.gram], name)


def discriminant(L):
    return intmat.det_int(L.gram_list())


def signature(L):
    """(p, n) for nondegenerate L; (p, n, zero) when degenerate."""
    p, n, z = intmat.inertia(L.gram_list())
    return (p, n) if z == 0 else (p, n, z)


def is_hyperbolic_plane(L):
    """Rank 2, even, determinant -1: isomorphic to H by classification."""
    return L.rank == 2 and L.is_even and discriminant(L) == -1


# ------------------------------------------------------------------- roots

def _cholesky_terms(Q):
    """Q = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2 over Q."""
    n = len(Q)
    A = intmat.to_fraction_matrix(Q)
    q = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i] = A[i][i] - sum(mu[k][i] ** 2 * q[k] for k in range(i))
        if q[i] <= 0:
            raise NotDefinite("form is not definite")
        for j in range(i + 1, n):
            mu[i][j] = (A[i][j] - sum(mu[k][i] * mu[k][j] * q[k] for k in range(i))) / q[i]
    return q, mu


def _isqrt_floor(t):
    """floor(sqrt(t)) for a nonnegative Fraction t."""
    if t <= 0:
        return 0
    s = isqrt(t.numerator // t.denominator)
    while Fraction((s + 1) ** 2) <= t:
        s += 1
    while Fraction(s * s) > t:
        s -= 1
    return s


def short_vectors(Q, bound):
    """All nonzero x with x^T Q x <= bound for positive definite integer Q.

    Fincke-Pohst enumeration on exact rational Cholesky data.
    """
    n = len(Q)
    if n == 0:
        return []
    q, mu = _cholesky_terms(Q)
    out = []
    x = [0] * n
    bound = Fraction(bound)

    def rec(i, remaining):
        c = sum(mu[i][j] * x[j] for j in range(i + 1, n))
        t = remaining / q[i]
        s = _isqrt_floor(t) + 1
        lo = floor(-c - s)
        hi = ceil(-c + s)
        for v in range(lo, hi + 1):
            used = q[i] * (v + c) ** 2
            if used > remaining:
                continue
            x[i] = v
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, bound)
    return out


def roots(L):
    """Every v with <v, v> = -2, in lexicographic order."""
    if L.rank == 0:
        return []
    p, n = signature(L)[:2]
    if p or n != L.rank:
        raise NotDefinite("roots() needs a negative definite lattice")
    Q = [[-x for x in row] for row in L.gram]
    found = [v for v in short_vectors(Q, 2) if intmat.bilinear(Q, v, v) == 2]
    return sorted(found)


def root_span(L):
    return SublatticeSpan(L, roots(L))


def member_of_span(v, span):
    return span.coefficients(v) is not None


def span_witness(v, span):
    """Integer coefficients reproducing v from the span basis, or None."""
    return span.coefficients(v)


# ---------------------------------------------------------------- quotients

def quotient_group(W, Wroot):
    """Structure of W / Wroot for nested integer spans in one ambient."""
    if W.ambient.rank != Wroot.ambient.rank:
        raise NotASublattice("different ambient lattices")
    M = []
    for b in Wroot.basis:
        c = W.coefficients(b)
        if c is None:
            raise NotASublattice("root span is not contained in W")
        M.append(c)
    diag = intmat.smith_diagonal(M) if M else []
    return FiniteAbelianGroup(sorted(d for d in diag if d > 1),
                              free_rank=W.rank - len(diag))


def order_in_quotient(v, Wroot):
    """Least k >= 1 with k v in Wroot, or None for infinite order."""
    c = Wroot.rational_coefficients(v)
    if c is None:
        return None
    return intmat.common_denominator(c)


# ------------------------------------------------------------ ADE analysis

def _generic_functional(vectors, dim):
    weights = [1]
    for _ in range(dim - 1):
        weights.append(weights[-1] * 1009 + 7)
    k = 0
    while True:
        w = [a + k * (i + 1) for i, a in enumerate(weights)]
        if all(intmat.dot(w, v) != 0 for v in vectors):
            return w
        k += 1


def simple_roots(lattice):
    """Simple roots of the root system of a negative definite lattice."""
    rts = roots(lattice)
    f = _generic_functional(rts, lattice.rank)
    pos = [r for r in rts if intmat.dot(f, r) > 0]
    posset = {tuple(r) for r in pos}
    simple = []
    for r in pos:
        decomposable = False
        for s in pos:
            if s == r:
                continue
            diff = tuple(a - b for a, b in zip(r, s))
            if diff in posset:
                decomposable = True
                break
        if not decomposable:
            simple.append(r)
    return simple


def dynkin_type(n_nodes, adjacency):
    """Name of a connected simply laced Dynkin diagram."""
    degrees = [len(adjacency[i]) for i in range(n_nodes)]
    edges = sum(degrees) // 2
    if edges != n_nodes - 1:
        return None
    branch = [i for i in range(n_nodes) if degrees[i] >= 3]
    if not branch:
        return "A%d" % n_nodes
    if len(branch) > 1 or degrees[branch[0]] != 3:
        return None
    b = branch[0]
    arms = []
    for start in adjacency[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [j for j in adjacency[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return "D%d" % n_nodes
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return "E%d" % n_nodes
    return None


def classify_ade(span):
    """Multiset (sorted list) of ADE symbols for a root-generated span."""
    if span.rank == 0:
        return []
    L = span.lattice()
    simple = simple_roots(L)
    if len(simple) != span.rank:
        raise NotRootGenerated("span is not generated by its roots")
    G = intmat.congruence(simple, L.gram_list())
    n = len(simple)
    adjacency = {i: [] for i in range(n)}
    for i in range(n):
        if G[i][i] != -2:
            raise NotRootGenerated("simple root with norm %d" % G[i][i])
        for j in range(i + 1, n):
            if G[i][j] not in (0, 1):
                raise NotRootGenerated("simple roots pair to %d" % G[i][j])
            if G[i][j] == 1:
                adjacency[i].append(j)
                adjacency[j].append(i)
    seen = set()
    types = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort()
        index = {u: k for k, u in enumerate(comp)}
        sub = {index[u]: [index[w] for w in adjacency[u]] for u in comp}
        name = dynkin_type(len(comp), sub)
        if name is None:
            raise NotRootGenerated("component is not a Dynkin diagram")
        types.append(name)
    return sorted(types, key=_ade_key)


def _ade_key(name):
    return (name[0], int(name[1:]))


def ade_label(types):
    """Compact text such as 'D8+6A1'."""
    counts = {}
    for t in types:
        counts[t] = counts.get(t, 0) + 1
    parts = []
    for t in sorted(counts, key=lambda s: (-int(s[1:]), s[0])):
        parts.append(t if counts[t] == 1 else "%d%s" % (counts[t], t))
    return "+".join(parts) if parts else "0"


def orthogonal_complement(lattice, vectors):
    """Saturated integer basis of the orthogonal complement of vectors."""
    if not vectors:
        return intmat.identity(lattice.rank)
    cols = [intmat.matvec(lattice.gram_list(), v) for v in vectors]
    return intmat.right_kernel(cols)
