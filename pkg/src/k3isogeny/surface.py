"""Symbolic Neron-Severi models of surfaces.

A SurfaceModel is a labelled basis with an intersection matrix, a
canonical class and chi(O).  Divisor classes are exact rational
coordinate vectors over that basis.
"""
from fractions import Fraction

from . import intmat
from .errors import (SurfaceError, BranchNotEven, BranchNotDisjoint,
                     NotExceptional, CertificateFailure)


class DivisorClass:
    """Exact coordinate vector of a divisor class over a model basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(x) for x in coords)

    @property
    def is_integral(self):
        return all(x.denominator == 1 for x in self.coords)

    def int_coords(self):
        if not self.is_integral:
            raise SurfaceError("class is not integral")
        return [int(x) for x in self.coords]

    def __len__(self):
        return len(self.coords)

    def __add__(self, other):
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return DivisorClass(-a for a in self.coords)

    def __mul__(self, k):
        k = Fraction(k)
        return DivisorClass(k * a for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DivisorClass) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "DivisorClass(%s)" % ", ".join(str(x) for x in self.coords)


def combine(named, expr):
    """Linear combination {label: coefficient} of named classes."""
    total = None
    for label, c in expr.items():
        term = named[label] * c
        total = term if total is None else total + term
    if total is None:
        raise SurfaceError("empty combination")
    return total


class SurfaceModel:
    """Labelled basis, intersection matrix, canonical class, chi(O)."""

    def __init__(self, labels, gram, canonical=None, chi_O=2, name=None):
        self.labels = list(labels)
        n = len(self.labels)
        g = [[Fraction(x) for x in row] for row in gram]
        if len(g) != n or not intmat.is_symmetric(g):
            raise SurfaceError("intersection matrix must be square symmetric")
        if any(x.denominator != 1 for row in g for x in row):
            raise SurfaceError("intersection matrix must be integral")
        self.gram = [[int(x) for x in row] for row in g]
        if canonical is None:
            canonical = DivisorClass([0] * n)
        if len(canonical) != n:
            raise SurfaceError("canonical class has wrong dimension")
        if not canonical.is_integral:
            raise SurfaceError("canonical class must be integral")
        self.canonical = canonical
        self.chi_O = chi_O
        self.name = name

    @property
    def rank(self):
        return len(self.labels)

    def basis_class(self, label):
        i = self.labels.index(label)
        return DivisorClass([int(j == i) for j in range(self.rank)])

    def cls(self, expr):
        """Class from {label: coefficient} over basis labels."""
        v = [Fraction(0)] * self.rank
        for label, c in expr.items():
            v[self.labels.index(label)] += Fraction(c)
        return DivisorClass(v)

    def to_json(self):
        return {
            "labels": list(self.labels),
            "gram": [list(r) for r in self.gram],
            "canonical": [str(x) for x in self.canonical.coords],
            "chi_O": self.chi_O,
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["labels"], data["gram"],
                   DivisorClass(Fraction(x) for x in data["canonical"]),
                   data["chi_O"])


def intersect(S, A, B):
    if len(A) != S.rank or len(B) != S.rank:
        raise SurfaceError("dimension mismatch")
    return intmat.bilinear(S.gram, A.coords, B.coords)


def riemann_roch_chi(S, A):
    return S.chi_O + (intersect(S, A, A) - intersect(S, A, S.canonical)) / 2


def arithmetic_genus(S, C):
    return 1 + (intersect(S, C, C) + intersect(S, C, S.canonical)) / 2


def blowup_p2(n, point_labels=None):
    """P^2 blown up at n points: basis H, E_1..E_n."""
    if n < 0:
        raise SurfaceError("point count must be nonnegative")
    if point_labels is None:
        point_labels = ["E%d" % (i + 1) for i in range(n)]
    if len(point_labels) != n:
        raise SurfaceError("need one label per point")
    labels = ["H"] + list(point_labels)
    gram = [[0] * (n + 1) for _ in range(n + 1)]
    gram[0][0] = 1
    for i in range(1, n + 1):
        gram[i][i] = -1
    K = DivisorClass([-3] + [1] * n)
    return SurfaceModel(labels, gram, K, chi_O=1, name="P2 blown up at %d points" % n)


def blowup(S, label):
    """Blow up one general point: append an exceptional class."""
    n = S.rank
    gram = [list(r) + [0] for r in S.gram] + [[0] * n + [-1]]
    K = DivisorClass(list(S.canonical.coords) + [1])
    return SurfaceModel(S.labels + [label], gram, K, S.chi_O)


def is_exceptional(S, e):
    return intersect(S, e, e) == -1 and intersect(S, e, S.canonical) == -1


def contract(S, e, named=None):
    """Blow down a (-1)-class e.

    Classes push forward by C -> C + (C.e) e, which is the projection to
    the orthogonal complement of e.  Returns (new model, push function,
    pushed named classes); push.pullback embeds classes back.
    """
    if not e.is_integral or not is_exceptional(S, e):
        raise NotExceptional("class is not a (-1)-curve class with K.e = -1")
    ev = e.int_coords()
    n = S.rank
    # keep the labels when e is a basis vector
    if sorted(map(abs, ev)) == [0] * (n - 1) + [1]:
        k = next(i for i, x in enumerate(ev) if x)
        basis = []
        labels = []
        for i in range(n):
            if i == k:
                continue
            bi = [int(j == i) for j in range(n)]
            c = intmat.bilinear(S.gram, bi, ev)
            basis.append([a + c * b for a, b in zip(bi, ev)])
            labels.append(S.labels[i])
    else:
        basis = intmat.right_kernel([intmat.matvec(S.gram, ev)])
        basis = intmat.row_basis(basis)
        labels = ["b%d" % (i + 1) for i in range(len(basis))]
    gram = intmat.congruence(basis, S.gram)

    def project(C):
        c = intersect(S, C, e)
        return C + e * c

    def push(C):
        v = intmat.solve_left(basis, list(project(C).coords))
        if v is None:
            raise SurfaceError("push-forward left the complement")
        return DivisorClass(v)

    def pullback(C):
        v = [sum(c * row[j] for c, row in zip(C.coords, basis)) for j in range(n)]
        return DivisorClass(v)

    push.pullback = pullback
    K = push(S.canonical)
    T = SurfaceModel(labels, gram, K, S.chi_O)
    pushed = None
    if named is not None:
        pushed = {k: push(v) for k, v in named.items()}
    return T, push, pushed


# ------------------------------------------------------------ saturation

def saturated_model(ambient_gram, generators, chi_O=2, canonical_ambient=None):
    """Integral lattice spanned by rational generators in an ambient space.

    generators: {label: rational ambient vector}.  The lattice is the
    integer span of all generators, computed with HNF after clearing
    the common denominator.  Returns (model, named classes in the model
    basis).
    """
    labels = list(generators)
    vecs = [[Fraction(x) for x in generators[k]] for k in labels]
    d = intmat.common_denominator([x for v in vecs for x in v])
    scaled = [[int(x * d) for x in v] for v in vecs]
    basis_scaled = intmat.row_basis(scaled)
    basis = [[Fraction(x, d) for x in row] for row in basis_scaled]
    G = [[intmat.bilinear(ambient_gram, u, v) for v in basis] for u in basis]
    if any(Fraction(x).denominator != 1 for row in G for x in row):
        raise CertificateFailure("generated lattice is not integral")
    named = {}
    for k, v in zip(labels, vecs):
        c = intmat.solve_left(basis, v)
        if c is None or any(x.denominator != 1 for x in c):
            raise CertificateFailure("generator %s not integral in span" % k)
        named[k] = DivisorClass(c)
    K = None
    if canonical_ambient is not None:
        c = intmat.solve_left(basis, canonical_ambient)
        K = DivisorClass(c)
    model = SurfaceModel(["w%d" % (i + 1) for i in range(len(basis))], G, K, chi_O)
    return model, named


def double_cover_model(R, branch, extra_classes=None, extra_gram=None):
    """Double cover of R branched along disjoint classes branch[i].

    The ambient space is NS(R) (pull-backs, pairing doubled) plus
    optional extra orthogonal directions with Gram extra_gram (used for
    anti-invariant classes).  Generators: the pull-backs of the basis of
    R, the halves of the branch pull-backs (labelled Delta1, ...), and
    extra_classes given in ambient coordinates.
    """
    for i, a in enumerate(branch):
        for b in branch[i + 1:]:
            if intersect(R, a, b) != 0:
                raise BranchNotDisjoint("branch curves meet")
    total = branch[0]
    for b in branch[1:]:
        total = total + b
    if any(x.denominator != 1 or x.numerator % 2 for x in total.coords):
        raise BranchNotEven("half the branch class is not integral")
    extra_gram = extra_gram or []
    k = len(extra_gram)
    n = R.rank
    amb = [[0] * (n + k) for _ in range(n + k)]
    for i in range(n):
        for j in range(n):
            amb[i][j] = 2 * R.gram[i][j]
    for i in range(k):
        for j in range(k):
            amb[n + i][n + j] = extra_gram[i][j]
    gens = {}
    for i, lab in enumerate(R.labels):
        gens["pi*" + lab] = [int(j == i) for j in range(n + k)]
    for i, b in enumerate(branch):
        gens["Delta%d" % (i + 1)] = [x / 2 for x in b.coords] + [0] * k
    for lab, v in (extra_classes or {}).items():
        gens[lab] = list(v)
    model, named = saturated_model(amb, gens, chi_O=2)
    return model, named, amb


def pullback_vector(R, A, extra_dim=0):
    """Ambient coordinates of the pull-back of a class of R."""
    return list(A.coords) + [0] * extra_dim


# ----------------------------------------------------- numerical lattices

def numerical_model(labels, gram, chi_O=2, canonical_expr=None, name=None):
    """Numerical lattice of a configuration of curves.

    Curve classes modulo the radical of their intersection matrix.  The
    basis comes from the unimodular HNF transform, so every curve has
    integer coordinates.  Returns (model, named curve classes).
    """
    n = len(labels)
    H, U, piv = hnf([list(r) for r in gram])
    r = len(piv)
    W = U[:r]
    Ginv = _inverse_unimodular(U)
    G = intmat.congruence(W, gram)
    named = {}
    for i, lab in enumerate(labels):
        named[lab] = DivisorClass(Ginv[i][:r])
    K = None
    if canonical_expr is not None:
        K = combine(named, canonical_expr)
        if not K.is_integral:
            raise CertificateFailure("canonical class is not integral")
    model = SurfaceModel(["n%d" % (i + 1) for i in range(r)], G, K, chi_O, name)
    return model, named


def hnf(A):
    return intmat.hnf(A)


def _inverse_unimodular(U):
    n = len(U)
    inv = []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        x = intmat.solve_left(U, e)
        inv.append([int(v) for v in x])
    return inv


# ------------------------------------------------------- quotient pairings

def quotient_gram(cover_gram, pullbacks):
    """Intersection matrix of image curves under a degree-two quotient.

    pullbacks[i] is the pull-back of the i-th image curve as a vector
    over the cover basis; image pairings are (pi^*A . pi^*B) / 2.
    """
    P = [[Fraction(x) for x in row] for row in pullbacks]
    full = intmat.congruence(P, cover_gram)
    out = []
    for row in full:
        out_row = []
        for x in row:
            y = Fraction(x) / 2
            if y.denominator != 1:
                raise CertificateFailure("image intersection number is not integral")
            out_row.append(int(y))
        out.append(out_row)
    return out
