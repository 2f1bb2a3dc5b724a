"""Plucker geometry of Gr(2, 2m): coordinates, quadric relations, lines, and
exhaustive enumeration over small finite fields.

Pair indexing is lexicographic on (i < j) throughout, and the three-term
relation carries the sign pattern  p_ij p_kl - p_ik p_jl + p_il p_jk  over
4-subsets i < j < k < l.  Projective representatives are canonicalized by
scaling the first nonzero coordinate to 1, so equal points compare equal.
"""

from __future__ import annotations

import itertools
from math import comb

from .fields import FieldElement
from .matrices import ExactMatrix
from .multipoly import MultiPoly

_pair_cache = {}


def pair_indices(two_m):
    got = _pair_cache.get(two_m)
    if got is None:
        pairs = [(i, j) for i in range(two_m) for j in range(i + 1, two_m)]
        got = (pairs, {p: k for k, p in enumerate(pairs)})
        _pair_cache[two_m] = got
    return got


def gaussian_binomial(n, k, q):
    """Number of k-dim subspaces of an n-dim space over GF(q)."""
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


class PluckerPoint:
    """Projective point of P(Lambda^2 V) with canonical scaling; carries an
    optional 2-plane basis when it came from one."""

    __slots__ = ("field", "two_m", "coords", "basis")

    def __init__(self, field, two_m, coords, basis=None):
        pairs, _ = pair_indices(two_m)
        vals = []
        for c in coords:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise ValueError("coordinate field mismatch")
                vals.append(c.value)
            else:
                vals.append(field.coerce_value(c))
        if len(vals) != len(pairs):
            raise ValueError("expected %d coordinates, got %d"
                             % (len(pairs), len(vals)))
        lead = next((v for v in vals if not field.is_zero_value(v)), None)
        if lead is None:
            raise ValueError("zero vector is not a projective point")
        inv = field.inv(lead)
        self.field = field
        self.two_m = two_m
        self.coords = tuple(field.mul(inv, v) for v in vals)
        self.basis = basis

    def coordinate(self, i, j):
        """Signed coordinate p_ij, valid for i != j in either order."""
        _, pos = pair_indices(self.two_m)
        if i < j:
            return FieldElement(self.field, self.coords[pos[(i, j)]])
        if j < i:
            return FieldElement(self.field,
                                self.field.neg(self.coords[pos[(j, i)]]))
        raise ValueError("p_ii is not a coordinate")

    def vector(self):
        return [FieldElement(self.field, v) for v in self.coords]

    def satisfies_quadrics(self):
        f = self.field
        _, pos = pair_indices(self.two_m)
        c = self.coords
        for i, j, k, l in itertools.combinations(range(self.two_m), 4):
            t1 = f.mul(c[pos[(i, j)]], c[pos[(k, l)]])
            t2 = f.mul(c[pos[(i, k)]], c[pos[(j, l)]])
            t3 = f.mul(c[pos[(i, l)]], c[pos[(j, k)]])
            if not f.is_zero_value(f.add(f.sub(t1, t2), t3)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PluckerPoint):
            return NotImplemented
        return (self.field == other.field and self.two_m == other.two_m
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.key, self.two_m, self.coords))

    def __repr__(self):
        fmt = self.field.format_value
        return "PluckerPoint(%s)" % ", ".join(fmt(v) for v in self.coords)


def plucker_from_basis(b):
    """Plucker point of the row space of a rank-2 matrix (2 x 2m)."""
    if b.nrows != 2:
        raise ValueError("need exactly 2 rows")
    f = b.field
    two_m = b.ncols
    pairs, _ = pair_indices(two_m)
    r0, r1 = b.rows
    coords = [f.sub(f.mul(r0[i], r1[j]), f.mul(r0[j], r1[i]))
              for i, j in pairs]
    if all(f.is_zero_value(c) for c in coords):
        raise ValueError("rows are dependent: rank < 2")
    return PluckerPoint(f, two_m, coords, basis=b)


def plane_from_plucker(point):
    """Recover a 2-plane basis; rejects non-decomposable vectors by verifying
    the round trip."""
    f = point.field
    two_m = point.two_m
    pairs, pos = pair_indices(two_m)
    c = point.coords
    lead = next(k for k, v in enumerate(c) if not f.is_zero_value(v))
    i0, j0 = pairs[lead]

    def signed(i, j):
        if i == j:
            return f.zero_value
        if i < j:
            return c[pos[(i, j)]]
        return f.neg(c[pos[(j, i)]])

    inv = f.inv(c[lead])
    # with the plane in the normal form u[i0]=1, u[j0]=0, v[i0]=0, v[j0]=1:
    # u_k = p_{k j0} / p_{i0 j0} and v_k = p_{i0 k} / p_{i0 j0}
    u = [f.mul(inv, signed(k, j0)) for k in range(two_m)]
    v = [f.mul(inv, signed(i0, k)) for k in range(two_m)]
    basis = ExactMatrix(f, [u, v])
    back = plucker_from_basis(basis)
    if back.coords != c:
        raise ValueError("coordinates violate the Plucker relations "
                         "(not a decomposable 2-vector)")
    return basis


def plucker_quadrics(two_m, field):
    """The C(2m, 4) three-term relations as quadrics in C(2m, 2) variables."""
    if two_m < 4:
        raise ValueError("need 2m >= 4")
    pairs, pos = pair_indices(two_m)
    nv = len(pairs)

    def var_exps(a, b):
        e = [0] * nv
        e[pos[(a, b)]] += 1
        return e

    out = []
    one = field.one_value
    neg1 = field.neg(one)
    for i, j, k, l in itertools.combinations(range(two_m), 4):
        terms = {}
        for (a, b, cc, d), s in (((i, j, k, l), one), ((i, k, j, l), neg1),
                                 ((i, l, j, k), one)):
            e = [0] * nv
            e[pos[(a, b)]] += 1
            e[pos[(cc, d)]] += 1
            terms[tuple(e)] = s
        out.append(MultiPoly(field, nv, terms))
    return out


def enumerate_grassmannian(two_m, field, limit=10_000_000):
    """One representative per 2-plane via reduced echelon canonical forms,
    streamed in (pivot pair, free entries) lexicographic order."""
    q = getattr(field, "order", None)
    if q is None:
        raise ValueError("enumeration needs a finite field")
    total = gaussian_binomial(two_m, 2, q)
    if total > limit:
        raise ValueError("Gr(2,%d) over GF(%d) has %d points, over the "
                         "limit %d" % (two_m, q, total, limit))
    elements = [e.value for e in field.elements()]
    zero, one = field.zero_value, field.one_value
    for c1 in range(two_m - 1):
        for c2 in range(c1 + 1, two_m):
            free1 = [j for j in range(c1 + 1, two_m) if j != c2]
            free2 = [j for j in range(c2 + 1, two_m)]
            for vals in itertools.product(elements,
                                          repeat=len(free1) + len(free2)):
                r1 = [zero] * two_m
                r2 = [zero] * two_m
                r1[c1] = one
                r2[c2] = one
                for j, v in zip(free1, vals):
                    r1[j] = v
                for j, v in zip(free2, vals[len(free1):]):
                    r2[j] = v
                yield plucker_from_basis(ExactMatrix(field, [r1, r2]))


def enumerate_projective(field, dim):
    """Points of P^dim over a finite field as coordinate tuples (payloads),
    first nonzero coordinate scaled to 1."""
    q = getattr(field, "order", None)
    if q is None:
        raise ValueError("enumeration needs a finite field")
    elements = [e.value for e in field.elements()]
    zero, one = field.zero_value, field.one_value
    n = dim + 1
    for lead in range(n):
        for tail in itertools.product(elements, repeat=n - lead - 1):
            yield (zero,) * lead + (one,) + tail


def projective_count(q, dim):
    return (q ** (dim + 1) - 1) // (q - 1)


class GrassmannLine:
    """Pencil {U : v in U inside W} for a 3-dim W containing v, seen as a
    line in P(Lambda^2 V) spanned by v ^ w1 and v ^ w2."""

    __slots__ = ("field", "two_m", "v", "w1", "w2", "span")

    def __init__(self, field, two_m, v, w1, w2):
        self.field = field
        self.two_m = two_m
        self.v = tuple(v)
        self.w1 = tuple(w1)
        self.w2 = tuple(w2)
        p1 = plucker_from_basis(ExactMatrix(field, [list(v), list(w1)]))
        p2 = plucker_from_basis(ExactMatrix(field, [list(v), list(w2)]))
        if p1 == p2:
            raise ValueError("spanning points coincide; W is not 3-dim")
        self.span = (p1, p2)

    def point_at(self, s, t):
        """U(s:t) = span(v, s*w1 + t*w2); (s, t) not both zero."""
        f = self.field
        s = f.coerce_value(s) if not isinstance(s, FieldElement) else s.value
        t = f.coerce_value(t) if not isinstance(t, FieldElement) else t.value
        w = [f.add(f.mul(s, a), f.mul(t, b))
             for a, b in zip(self.w1, self.w2)]
        return plucker_from_basis(ExactMatrix(self.field,
                                              [list(self.v), w]))

    def parameter_points(self, params):
        return [self.point_at(s, t) for s, t in params]

    def __repr__(self):
        return "GrassmannLine(span=%r)" % (self.span,)


def pencil_line(v, w_basis):
    """Build the pencil line from a vector and a 3-dim subspace containing
    it; w_basis is a matrix whose rows span W."""
    if isinstance(w_basis, ExactMatrix):
        W = w_basis
    else:
        raise ValueError("w_basis must be an ExactMatrix of row vectors")
    f = W.field
    piv, basis = W.rref()
    if len(piv) != 3:
        raise ValueError("W must be 3-dimensional, got rank %d" % len(piv))
    vv = [x.value if isinstance(x, FieldElement) else f.coerce_value(x)
          for x in v]
    # coordinates of v in the reduced basis are its values at pivot columns
    alphas = [vv[c] for c in piv]
    recon = [f.zero_value] * W.ncols
    for a, row in zip(alphas, basis.rows):
        for k in range(W.ncols):
            recon[k] = f.add(recon[k], f.mul(a, row[k]))
    if recon != vv:
        raise ValueError("v does not lie in W")
    i0 = next((i for i, a in enumerate(alphas) if not f.is_zero_value(a)),
              None)
    if i0 is None:
        raise ValueError("v is zero")
    others = [basis.rows[i] for i in range(3) if i != i0]
    return GrassmannLine(f, W.ncols, vv, others[0], others[1])
