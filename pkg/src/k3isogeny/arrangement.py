"""Six-line arrangements in the projective plane, in exact rationals.

Covers validation, the fifteen intersection points q_ij, two Kummer
tests (dual conic and the five-point conic through q34), interpolation
counts h0 for the plane systems attached to the blown-up plane, and a
genericity certificate for the twelve curves used on the K3 side.
"""
import itertools
import random
from fractions import Fraction

import sympy

from . import intmat
from .errors import (ArrangementError, DuplicateLine, ConcurrentTriple,
                     DegenerateFive, NotKummer, NotPencilFree)

PAIRS = [(i, j) for i in range(1, 7) for j in range(i + 1, 7)]
PAIR_LABELS = ["%d%d" % p for p in PAIRS]


def parse_rational(value):
    if isinstance(value, bool):
        raise ArrangementError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ArrangementError("rationals must be integers or p/q strings: %r" % value)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ArrangementError("cannot parse rational %r" % value)
    raise ArrangementError("unsupported coefficient %r" % (value,))


def normalize(v):
    """Scale so the first nonzero coordinate is 1."""
    v = [Fraction(x) for x in v]
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise ArrangementError("zero vector is not a projective point or line")
    return tuple(x / lead for x in v)


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def det3(a, b, c):
    return intmat.dot(a, cross(b, c))


class ProjLine:
    """Line a x + b y + c z = 0, normalized."""

    def __init__(self, coeffs):
        if len(coeffs) != 3:
            raise ArrangementError("a line needs three coefficients")
        self.coeffs = normalize(coeffs)

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "ProjLine(%s)" % ", ".join(str(x) for x in self.coeffs)


class LineArrangement:
    """Six distinct lines, no three concurrent, with their 15 points."""

    def __init__(self, lines):
        self.lines = [l if isinstance(l, ProjLine) else ProjLine(l) for l in lines]
        self.points = intersection_points(self)

    def q(self, i, j):
        return self.points[(min(i, j), max(i, j))]

    def to_json(self):
        return {"lines": [[str(x) for x in l.coeffs] for l in self.lines]}


def validate(data):
    """Build a LineArrangement, rejecting duplicates and concurrent triples."""
    if isinstance(data, dict):
        data = data.get("lines")
    if not isinstance(data, (list, tuple)) or len(data) != 6:
        raise ArrangementError("an arrangement needs exactly six lines")
    lines = []
    for row in data:
        if isinstance(row, ProjLine):
            lines.append(row)
            continue
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise ArrangementError("each line needs three coefficients")
        lines.append(ProjLine([parse_rational(x) for x in row]))
    for a, b in itertools.combinations(range(6), 2):
        if lines[a] == lines[b]:
            raise DuplicateLine("lines %d and %d coincide" % (a + 1, b + 1))
    for t in itertools.combinations(range(6), 3):
        if det3(*(lines[k].coeffs for k in t)) == 0:
            raise ConcurrentTriple(t)
    return LineArrangement(lines)


def intersection_points(arr):
    pts = {}
    for i, j in PAIRS:
        pts[(i, j)] = normalize(cross(arr.lines[i - 1].coeffs, arr.lines[j - 1].coeffs))
    if len(set(pts.values())) != 15:
        raise ArrangementError("intersection points are not distinct")
    return pts


# ------------------------------------------------------------ conics

def _conic_row(p):
    x, y, z = p
    return [x * x, y * y, z * z, x * y, x * z, y * z]


def eval_conic(c, p):
    return intmat.dot(c, _conic_row(p))


def conic_matrix(c):
    A, B, C, D, E, F = (Fraction(x) for x in c)
    return [[A, D / 2, E / 2], [D / 2, B, F / 2], [E / 2, F / 2, C]]


def conic_through(points):
    """Unique conic through five points, or DegenerateFive."""
    ns = intmat.nullspace([_conic_row(p) for p in points], 6)
    if len(ns) != 1:
        raise DegenerateFive("conic through the five points is not unique")
    return list(normalize(ns[0]))


def is_kummer_dual_conic(arr, witness=False):
    """Six lines tangent to one smooth conic: dual points on a conic."""
    rows = [_conic_row(l.coeffs) for l in arr.lines]
    d = intmat.det_int([[int(x * intmat.common_denominator(r)) for x in r] for r in rows])
    result = False
    dual = None
    if d == 0:
        ns = intmat.nullspace(rows, 6)
        if len(ns) == 1:
            dual = list(normalize(ns[0]))
            result = intmat.det_int(_scaled(conic_matrix(dual))) != 0
    if witness:
        return result, {"determinant_scaled": d, "dual_conic": dual}
    return result


def _scaled(M):
    d = intmat.common_denominator([x for row in M for x in row])
    return [[int(x * d) for x in row] for row in M]


def is_kummer_pascal(arr):
    """Conic through q13, q14, q25, q26, q56 also passes through q34."""
    five = [arr.q(1, 3), arr.q(1, 4), arr.q(2, 5), arr.q(2, 6), arr.q(5, 6)]
    c = conic_through(five)
    return eval_conic(c, arr.q(3, 4)) == 0


def kummer_verdict(arr):
    """Both tests; disagreement would contradict Pascal/Brianchon."""
    a = is_kummer_dual_conic(arr)
    b = is_kummer_pascal(arr)
    if a != b:
        raise AssertionError("Kummer tests disagree on %r" % arr.to_json())
    return a


def tangent_conic(arr):
    """The conic tangent to all six lines (adjugate of the dual conic)."""
    ok, wit = is_kummer_dual_conic(arr, witness=True)
    if not ok:
        raise NotKummer("no smooth conic is tangent to all six lines")
    M = conic_matrix(wit["dual_conic"])
    adj = [[(M[(j + 1) % 3][(i + 1) % 3] * M[(j + 2) % 3][(i + 2) % 3]
             - M[(j + 1) % 3][(i + 2) % 3] * M[(j + 2) % 3][(i + 1) % 3])
            for j in range(3)] for i in range(3)]
    c = normalize([adj[0][0], adj[1][1], adj[2][2], 2 * adj[0][1], 2 * adj[0][2], 2 * adj[1][2]])
    for l in arr.lines:
        if not conic_tangent_to_line(c, l.coeffs):
            raise NotKummer("adjugate conic is not tangent to every line")
    return list(c)


def _two_points_on_line(l):
    a, b, c = l
    basis = intmat.nullspace([list(l)], 3)
    return basis[0], basis[1]


def conic_tangent_to_line(c, l):
    """Discriminant of the conic restricted to the line vanishes."""
    P, Q = _two_points_on_line(l)
    M = conic_matrix(c)
    a = intmat.bilinear(M, P, P)
    b = 2 * intmat.bilinear(M, P, Q)
    cc = intmat.bilinear(M, Q, Q)
    return b * b - 4 * a * cc == 0


# -------------------------------------------------------- interpolation

class InterpolationProblem:
    """Plane curves of a degree with assigned point multiplicities."""

    def __init__(self, degree, assignments):
        self.degree = int(degree)
        self.assignments = []
        for p, m in assignments:
            if m < 1:
                raise ArrangementError("multiplicities must be positive")
            self.assignments.append((normalize(p), int(m)))


def monomials(d):
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


def _chart(p):
    """Index of the coordinate set to 1 (largest height)."""
    best, score = None, None
    for k, x in enumerate(p):
        if x != 0:
            h = abs(x.numerator) * x.denominator
            if score is None or h > score:
                best, score = k, h
    return best


def _conditions(d, p, m):
    """Rows: derivatives of order < m vanish at p, in the affine chart."""
    k = _chart(p)
    others = [t for t in range(3) if t != k]
    u = p[others[0]] / p[k]
    v = p[others[1]] / p[k]
    rows = []
    for order in range(m):
        for i in range(order + 1):
            j = order - i
            row = []
            for mono in monomials(d):
                a, b = mono[others[0]], mono[others[1]]
                c = _falling(a, i) * _falling(b, j)
                row.append(Fraction(c) * u ** (a - i) * v ** (b - j) if c else Fraction(0))
            rows.append(row)
    return rows


def condition_matrix(p):
    rows = []
    for pt, m in p.assignments:
        rows.extend(_conditions(p.degree, pt, m))
    return rows


def h0_interpolation(p):
    n = len(monomials(p.degree))
    rows = condition_matrix(p)
    return n - (intmat.rank(rows) if rows else 0)


def unique_member(p):
    """Coefficient vector (over monomials(d)) of the only member."""
    rows = condition_matrix(p)
    n = len(monomials(p.degree))
    ns = intmat.nullspace(rows, n) if rows else intmat.nullspace([], n)
    if len(ns) != 1:
        raise NotPencilFree("the system has h0 = %d, not 1" % len(ns))
    v = intmat.primitive(ns[0])
    lead = next(x for x in v if x)
    if lead < 0:
        v = [-x for x in v]
    return v


def curve_polynomial(d, coeffs):
    x, y, z = sympy.symbols("x y z")
    return sympy.Add(*[c * x ** a * y ** b * z ** e
                       for c, (a, b, e) in zip(coeffs, monomials(d)) if c]), (x, y, z)


def multiplicity_at(d, coeffs, p):
    """Order of vanishing of the curve at p."""
    for m in range(d + 1):
        rows = _conditions(d, normalize(p), m + 1)[-(m + 1):]
        if any(intmat.dot(r, coeffs) != 0 for r in rows):
            return m
    return d + 1


# ------------------------------------------------ systems on R = Bl_15 P^2

def _cls(degree, **mults):
    m = {k: 0 for k in PAIR_LABELS}
    for k, v in mults.items():
        m[k.lstrip("E")] = v
    return degree, m


DIVISOR_D = _cls(5, E13=3, E14=2, E25=2, E26=2, E24=1, E35=1, E36=1, E56=1)

PHI = [
    _cls(5, E13=3, E14=2, E25=2, E26=2, E24=1, E35=1, E36=1, E45=1, E56=1),
    _cls(4, E13=2, E14=2, E25=2, E24=1, E26=1, E35=1, E36=1, E56=1),
    _cls(3, E13=2, E14=1, E24=1, E25=1, E26=1, E35=1, E56=1),
    _cls(2, E13=1, E14=1, E25=1, E26=1, E35=1),
    _cls(1, E13=1, E25=1),
    _cls(0, E46=-1),
]


def class_difference(a, b):
    return a[0] - b[0], {k: a[1][k] - b[1][k] for k in PAIR_LABELS}


def class_text(c):
    d, m = c
    parts = []
    if d:
        parts.append("%dH" % d if d != 1 else "H")
    for k in PAIR_LABELS:
        v = m[k]
        if v:
            sign = "-" if v > 0 else "+"
            coef = "" if abs(v) == 1 else str(abs(v))
            parts.append("%s %sE%s" % (sign, coef, k))
    text = " ".join(parts)
    return text.lstrip("+ ") if text.startswith("+") else text


def is_exceptional_class(c):
    d, m = c
    return d == 0 and sorted(m.values()) == [-1] + [0] * 14


def problem_for(arr, c):
    d, m = c
    pts = [(arr.points[p], m[lab]) for p, lab in zip(PAIRS, PAIR_LABELS) if m[lab] > 0]
    return InterpolationProblem(d, pts)


def genericity_systems():
    """The twelve classes (Phi_i, D - Phi_i) as (name, class)."""
    out = []
    for i, phi in enumerate(PHI, start=1):
        out.append(("Phi%d" % i, phi))
        out.append(("D-Phi%d" % i, class_difference(DIVISOR_D, phi)))
    return out


def system_h0(arr, c):
    """h0 of a class: interpolation count, or 1 for an exceptional curve."""
    if is_exceptional_class(c):
        return 1
    return h0_interpolation(problem_for(arr, c))


# ---------------------------------------------------------- genericity

def _tangent_cone_squarefree(d, coeffs, p, m):
    """Lowest-order part at p is a product of distinct linear factors.

    The degree-m Taylor coefficients in the affine chart of p come from
    the same derivative rows used for the interpolation conditions.
    """
    rows = _conditions(d, normalize(p), m + 1)[-(m + 1):]
    t = sympy.Symbol("t")
    # row i is d^i/du^i d^(m-i)/dv^(m-i); divide by i! (m-i)!
    cone = [intmat.dot(r, coeffs) / (_falling(i, i) * _falling(m - i, m - i))
            for i, r in enumerate(rows)]
    if all(c == 0 for c in cone):
        return False
    # binary form sum c_i u^i v^(m-i): squarefree iff its dehomogenization
    # in u/v is squarefree and v^2 does not divide it
    if cone[m] == 0 and cone[m - 1] == 0:
        return False
    f = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(cone)], t)
    return sympy.gcd(f, f.diff(t)).degree() <= 0


def _singular_points_ok(poly, xyz, allowed):
    """Every singular point of the plane curve lies in allowed.

    Resultant elimination in the chart z = 1: the coordinates of
    singular points are common roots of two resultants; the finitely
    many rational candidates are tested exactly and irrational ones go
    to a Groebner fallback.  The line at infinity is checked with a gcd.
    """
    x, y, z = xyz
    P = sympy.Poly(poly, x, y, z)
    grads = [P.diff(t) for t in (x, y, z)]
    # affine chart z = 1
    aff = [sympy.Poly(q.as_expr().subs(z, 1), x, y) for q in [P] + grads[:2]]
    if not _affine_singular_ok(aff, (x, y), allowed):
        return False
    # line at infinity z = 0: points (x : 1 : 0) and (1 : 0 : 0)
    g = [sympy.Poly(q.as_expr().subs({z: 0, y: 1}), x) for q in [P] + grads]
    common = g[0]
    for h in g[1:]:
        common = sympy.gcd(common, h)
    if not common.is_zero and common.degree() > 0:
        for r in sympy.roots(common, filter="Q"):
            pt = normalize((Fraction(str(r)), 1, 0))
            if pt not in allowed:
                return False
        if _irrational_roots(common):
            return False
    at = [q.eval({x: 1, y: 0, z: 0}) for q in [P] + grads]
    if all(a == 0 for a in at) and normalize((1, 0, 0)) not in allowed:
        return False
    return True


def _irrational_roots(p):
    """True if the univariate polynomial p has a root outside Q."""
    rational = sympy.roots(p, filter="Q", multiple=True)
    return p.sqf_part().degree() > len(set(rational))


def _resultant(f, g, elim, keep):
    """Resultant eliminating elim, as a univariate Poly in keep."""
    r = sympy.Poly(f.as_expr(), elim, keep).resultant(sympy.Poly(g.as_expr(), elim, keep))
    return sympy.Poly(r.as_expr(), keep)


def _affine_singular_ok(polys, uv, allowed):
    u, v = uv
    f, fu, fv = polys
    px = sympy.gcd(_resultant(f, fu, v, u), _resultant(f, fv, v, u))
    py = sympy.gcd(_resultant(f, fu, u, v), _resultant(f, fv, u, v))
    if px.is_zero or py.is_zero:
        return False
    if (px.degree() > 0 and _irrational_roots(px)) or (py.degree() > 0 and _irrational_roots(py)):
        return _exact_irrational_check([q.as_expr() for q in polys], u, v, allowed)
    xs = list(sympy.roots(px, filter="Q")) if px.degree() > 0 else []
    ys = list(sympy.roots(py, filter="Q")) if py.degree() > 0 else []
    for a in xs:
        for b in ys:
            if all(q.eval({u: a, v: b}) == 0 for q in polys):
                pt = normalize((Fraction(str(a)), Fraction(str(b)), 1))
                if pt not in allowed:
                    return False
    return True


def _exact_irrational_check(polys, u, v, allowed):
    """Groebner fallback: the singular scheme is supported on allowed."""
    G = sympy.groebner(polys, u, v, order="lex")
    if list(G) == [1]:
        return True
    sols = sympy.solve_poly_system(list(G), u, v) or []
    for a, b in sols:
        if not (a.is_rational and b.is_rational):
            return False
        pt = normalize((Fraction(str(a)), Fraction(str(b)), 1))
        if pt not in allowed:
            return False
    return True


def member_certificate(arr, name, c):
    """Checks for one system: h0 = 1, multiplicities, irreducibility, smoothness."""
    cert = {"system": name, "class": class_text(c)}
    if is_exceptional_class(c):
        cert.update(h0=1, kind="exceptional curve", multiplicities_ok=True,
                    q_irreducible=True, singular_locus_ok=True, ok=True)
        return cert
    prob = problem_for(arr, c)
    h0 = h0_interpolation(prob)
    cert["h0"] = h0
    cert["kind"] = "plane curve of degree %d" % c[0]
    if h0 != 1:
        cert.update(multiplicities_ok=False, q_irreducible=False,
                    singular_locus_ok=False, ok=False)
        return cert
    d, mults = c
    coeffs = unique_member(prob)
    cert["member"] = [str(x) for x in coeffs]
    mult_ok = True
    for p, lab in zip(PAIRS, PAIR_LABELS):
        if multiplicity_at(d, coeffs, arr.points[p]) != max(mults[lab], 0):
            mult_ok = False
            cert.setdefault("multiplicity_mismatch", []).append(lab)
    cert["multiplicities_ok"] = mult_ok
    poly, xyz = curve_polynomial(d, coeffs)
    _, factors = sympy.factor_list(poly)
    irreducible = len(factors) == 1 and factors[0][1] == 1
    cert["q_irreducible"] = irreducible
    sing_ok = False
    if mult_ok and irreducible:
        singular = {arr.points[p]: mults[lab] for p, lab in zip(PAIRS, PAIR_LABELS)
                    if mults[lab] >= 2}
        cones = all(_tangent_cone_squarefree(d, coeffs, p, m) for p, m in singular.items())
        cert["ordinary_multiple_points"] = cones
        sing_ok = cones and (d <= 2 or _singular_points_ok(poly, xyz, set(singular)))
        if d == 2:
            sing_ok = sing_ok and _conic_nondegenerate(coeffs)
    cert["singular_locus_ok"] = sing_ok
    cert["ok"] = bool(mult_ok and irreducible and sing_ok)
    return cert


def _conic_nondegenerate(coeffs):
    # monomials(2): x^2, xy, xz, y^2, yz, z^2
    a, b, c, d, e, f = (Fraction(v) for v in coeffs)
    M = [[a, b / 2, c / 2], [b / 2, d, e / 2], [c / 2, e / 2, f]]
    return intmat.det_int(_scaled(M)) != 0


def is_generic(arr):
    """Genericity certificate over the twelve systems."""
    checks = []
    first_failure = None
    for k, (name, c) in enumerate(genericity_systems()):
        cert = member_certificate(arr, name, c)
        checks.append(cert)
        if not cert["ok"] and first_failure is None:
            first_failure = name
    return {"generic": first_failure is None, "first_failure": first_failure,
            "irreducibility": "Q-irreducible", "checks": checks}


# ---------------------------------------------------------- generators

def random_arrangement(rng, low=-9, high=9):
    """Rejection-sample a valid arrangement with small integer coefficients."""
    while True:
        rows = [[rng.randint(low, high) for _ in range(3)] for _ in range(6)]
        try:
            return validate(rows)
        except ArrangementError:
            continue


def tangent_circle_arrangement(ts):
    """Six tangent lines to x^2 + y^2 = z^2 at rational parameters t."""
    if len(ts) != 6:
        raise ArrangementError("need six parameters")
    rows = []
    for t in ts:
        t = Fraction(t)
        rows.append([1 - t * t, 2 * t, -(1 + t * t)])
    return validate(rows)


def random_tangent_arrangement(rng, low=-9, high=9):
    while True:
        ts = set()
        while len(ts) < 6:
            ts.add(Fraction(rng.randint(low, high), rng.randint(1, 5)))
        try:
            return tangent_circle_arrangement(sorted(ts))
        except ArrangementError:
            continue


def perturb_line(arr, index, delta):
    rows = [list(l.coeffs) for l in arr.lines]
    rows[index] = [a + Fraction(b) for a, b in zip(rows[index], delta)]
    return validate(rows)


# ------------------------------------------------ non-generic arrangements

def _pencil_residual(pa, pb, xyz, lam, line, known):
    """Extra point where the member pa + lam*pb of a pencil meets a line.

    known lists (point, multiplicity) base points on the line; they
    must leave exactly one residual intersection.  Returns coordinates
    as rational functions of lam, or None.
    """
    s = sympy.Symbol("s")
    B0, B1 = _two_points_on_line(line)
    P = [sympy.Rational(a) + s * sympy.Rational(b) for a, b in zip(B0, B1)]
    f = sympy.Poly(sympy.expand((pa + lam * pb).subs(dict(zip(xyz, P)), simultaneous=True)), s)
    for kp, m in known:
        # parameter of kp on the line: P(s) proportional to kp
        eqs = [P[k] * kp[(k + 1) % 3] - P[(k + 1) % 3] * kp[k] for k in range(3)]
        sol = sympy.solve([e for e in eqs if e != 0], s, dict=True)
        if len(sol) != 1:
            return None
        for _ in range(m):
            f, r = sympy.div(f, sympy.Poly(s - sol[0][s], s))
            if not r.is_zero:
                return None
    if f.degree() != 1:
        return None
    c1, c0 = f.all_coeffs()
    return [sympy.cancel(p.subs(s, -c0 / c1)) for p in P]


def degenerate_quintic_arrangement(rng, low=-9, high=9):
    """Search for a valid arrangement carrying an irreducible quintic with
    a triple point at q13, double points at q14, q25, q26 and through
    q24, q35, q36, q45, q46, q56.

    Five lines and q13 are drawn at random; the quintics with all
    conditions except those at q35, q36 form a pencil, each member
    meeting L5 and L6 in one further point.  Requiring q13 and these
    two points to be collinear is a quadratic in the pencil parameter;
    a rational root gives the third line.  Returns (arrangement, seed
    attempts used) or None after 50 draws.
    """
    lam = sympy.Symbol("lam")
    for attempt in range(1, 51):
        L = {i: normalize([rng.randint(low, high) for _ in range(3)]) for i in (1, 2, 4, 5, 6)}
        if any(L[i] == L[j] for i in L for j in L if i < j):
            continue
        P0, P1 = _two_points_on_line(L[1])
        t0 = Fraction(rng.randint(low, high), rng.randint(1, 4))
        try:
            q13 = normalize([a + t0 * b for a, b in zip(P0, P1)])
            q = {(i, j): normalize(cross(L[i], L[j])) for i in L for j in L if i < j}
        except ArrangementError:
            continue
        base = [(q13, 3), (q[1, 4], 2), (q[2, 5], 2), (q[2, 6], 2),
                (q[2, 4], 1), (q[4, 5], 1), (q[5, 6], 1), (q[4, 6], 1)]
        prob = InterpolationProblem(5, base)
        ns = intmat.nullspace(condition_matrix(prob), len(monomials(5)))
        if len(ns) != 2:
            continue
        pa, xyz = curve_polynomial(5, ns[0])
        pb, _ = curve_polynomial(5, ns[1])
        p5 = _pencil_residual(pa, pb, xyz, lam, L[5], [(q[2, 5], 2), (q[4, 5], 1), (q[5, 6], 1)])
        p6 = _pencil_residual(pa, pb, xyz, lam, L[6], [(q[2, 6], 2), (q[4, 6], 1), (q[5, 6], 1)])
        if p5 is None or p6 is None:
            continue
        det = sympy.Matrix([[sympy.Rational(x) for x in q13], p5, p6]).det()
        num, _ = sympy.fraction(sympy.together(det))
        poly = sympy.Poly(num, lam)
        if poly.degree() < 1:
            continue
        for r in poly.ground_roots():
            pt = [Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
                  for c in (sympy.nsimplify(e.subs(lam, r)) for e in p5)]
            try:
                L3 = normalize(cross(q13, pt))
                arr = validate([L[1], L[2], L3, L[4], L[5], L[6]])
            except (ArrangementError, ZeroDivisionError):
                continue
            m = problem_for(arr, class_difference(PHI[0], _cls(0, E46=1)))
            if h0_interpolation(m) == 1:
                coeffs = unique_member(m)
                poly5, _ = curve_polynomial(5, coeffs)
                _, factors = sympy.factor_list(poly5)
                if len(factors) == 1 and factors[0][1] == 1:
                    return arr, attempt
    return None
