"""Sparse multivariate polynomials over the exact fields.

Terms live in a dict from exponent tuple to nonzero payload.  The only
monomial order used anywhere is graded lexicographic (total degree first,
then exponent tuples compared left to right), which fixes leading terms,
the text rendering, and the column order of Macaulay matrices.  Degrees in
this package stay small, so no packing tricks are needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import FieldElement, FieldMismatchError, reduce_scalar


def grlex_key(exps):
    return (sum(exps), exps)


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, in descending graded-lex order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for e0 in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e0):
            yield (e0,) + rest


def _coerce_coeff(field, c):
    if isinstance(c, FieldElement):
        if c.field != field:
            raise FieldMismatchError("coefficient from %s in a %s polynomial"
                                     % (c.field, field))
        return c.value
    return field.coerce_value(c)


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError("bad exponent tuple %r" % (exps,))
                v = _coerce_coeff(field, c)
                if not field.is_zero_value(v):
                    clean[exps] = v
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, terms):
        p = object.__new__(cls)
        p.field = field
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, field, nvars):
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        v = _coerce_coeff(field, c)
        if field.is_zero_value(v):
            return cls.zero(field, nvars)
        return cls._raw(field, nvars, {(0,) * nvars: v})

    @classmethod
    def variable(cls, field, nvars, i):
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(field, nvars, {exps: field.one_value})

    @classmethod
    def monomial(cls, field, nvars, exps, c=1):
        return cls(field, nvars, {tuple(exps): c})

    @classmethod
    def linear_form(cls, field, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            v = _coerce_coeff(field, c)
            if not field.is_zero_value(v):
                terms[tuple(1 if j == i else 0 for j in range(n))] = v
        return cls._raw(field, n, terms)

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else None

    def leading(self):
        """(exponent tuple, coefficient payload) of the graded-lex top term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]),
                      reverse=True)

    def coefficient(self, exps):
        return FieldElement(self.field,
                            self.terms.get(tuple(exps), self.field.zero_value))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.field == other.field and self.nvars == other.nvars
                    and self.terms == other.terms)
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.nvars,
                     tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return "MultiPoly(%s, %s)" % (self.field, self.render())

    # -- arithmetic ----------------------------------------------------------

    def _compat(self, other):
        if self.field != other.field:
            raise FieldMismatchError("mixed-field polynomial arithmetic")
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch: %d vs %d"
                             % (self.nvars, other.nvars))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._compat(other)
        f = self.field
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = f.add(out.get(exps, f.zero_value), c)
            if f.is_zero_value(s):
                out.pop(exps, None)
            else:
                out[exps] = s
        return MultiPoly._raw(f, self.nvars, out)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        f = self.field
        return MultiPoly._raw(f, self.nvars,
                              {e: f.neg(c) for e, c in self.terms.items()})

    def scale(self, c):
        f = self.field
        v = _coerce_coeff(f, c)
        if f.is_zero_value(v):
            return MultiPoly.zero(f, self.nvars)
        return MultiPoly._raw(f, self.nvars,
                              {e: f.mul(v, x) for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._compat(other)
        f = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, f.zero_value), f.mul(c1, c2))
                if f.is_zero_value(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly._raw(f, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, i):
        f = self.field
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = exps[:i] + (e - 1,) + exps[i + 1:]
            v = f.mul(f.coerce_value(e), c)
            if not f.is_zero_value(v):
                s = f.add(out.get(new, f.zero_value), v)
                if f.is_zero_value(s):
                    out.pop(new, None)
                else:
                    out[new] = s
        return MultiPoly._raw(f, self.nvars, out)

    def evaluate(self, point):
        """Value at a point given as payloads/FieldElements/ints."""
        f = self.field
        vals = [_coerce_coeff(f, x) for x in point]
        if len(vals) != self.nvars:
            raise ValueError("point has %d coordinates, expected %d"
                             % (len(vals), self.nvars))
        acc = f.zero_value
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(vals, exps):
                for _ in range(e):
                    term = f.mul(term, x)
            acc = f.add(acc, term)
        return FieldElement(f, acc)

    def substitute(self, subs):
        """Compose: replace variable i by subs[i] (polynomials over the same
        field, all with a common nvars)."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitute per variable")
        f = self.field
        nv = subs[0].nvars
        for s in subs:
            if s.field != f:
                raise FieldMismatchError("substitution across fields")
            if s.nvars != nv:
                raise ValueError("substitutes disagree on nvars")
        out = MultiPoly.zero(f, nv)
        # horner-free: powers built per term; degrees here are tiny
        for exps, c in self.terms.items():
            term = MultiPoly.constant(f, nv, FieldElement(f, c))
            for s, e in zip(subs, exps):
                for _ in range(e):
                    term = term * s
            out = out + term
        return out

    def map_field(self, target):
        """Move coefficients into `target` via reduce_scalar."""
        out = {}
        for exps, c in self.terms.items():
            v = reduce_scalar(FieldElement(self.field, c), target).value
            if not target.is_zero_value(v):
                out[exps] = v
        return MultiPoly._raw(target, self.nvars, out)

    def normalized(self):
        """Scale to the canonical representative of the projective class:
        leading graded-lex coefficient 1 over GF, and over QQ integer
        coefficients with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        f = self.field
        _, lead = self.leading()
        if f.kind == "QQ":
            denom_lcm = 1
            for c in self.terms.values():
                denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm,
                                                             c.denominator)
            content = 0
            for c in self.terms.values():
                content = gcd(content, int(c * denom_lcm))
            scale = Fraction(denom_lcm, content)
            if lead < 0:
                scale = -scale
            return self.scale(scale)
        return self.scale(f.inv(lead))

    # -- text form -----------------------------------------------------------

    def render(self, names=None):
        """Canonical text: terms in descending graded-lex order, every
        coefficient explicit, factors joined by '*', terms by ' + '."""
        if not self.terms:
            return "0"
        if names is None:
            names = ["x%d" % i for i in range(self.nvars)]
        fmt = self.field.format_value
        parts = []
        for exps, c in self.sorted_terms():
            factors = [fmt(c)]
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append("%s^%d" % (names[i], e))
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, field, nvars, text, names=None):
        """Inverse of render (also accepts terms with the coefficient 1
        left implicit)."""
        text = text.strip()
        if text == "0":
            return cls.zero(field, nvars)
        if names is None:
            names = ["x%d" % i for i in range(nvars)]
        index = {nm: i for i, nm in enumerate(names)}
        terms = {}
        for chunk in text.split(" + "):
            chunk = chunk.strip()
            if chunk.startswith("("):
                close = chunk.index(")")
                coeff_txt = chunk[:close + 1]
                rest = chunk[close + 1:].lstrip("*")
            else:
                head, _, tail = chunk.partition("*")
                if head in index or head.split("^")[0] in index:
                    coeff_txt, rest = "1", chunk
                else:
                    coeff_txt, rest = head, tail
            exps = [0] * nvars
            if rest:
                for factor in rest.split("*"):
                    nm, _, e = factor.partition("^")
                    if nm not in index:
                        raise ValueError("unknown variable %r" % nm)
                    exps[index[nm]] += int(e) if e else 1
            c = _parse_coeff(field, coeff_txt)
            exps = tuple(exps)
            prev = terms.get(exps, field.zero_value)
            terms[exps] = field.add(prev, c)
        return cls(field, nvars, terms)


def _parse_coeff(field, text):
    text = text.strip()
    if field.kind == "QQ":
        return Fraction(text)
    if field.kind == "GF(p)":
        return int(text) % field.p
    # extension field: "(c*g^i+...)" or a bare integer
    if not text.startswith("("):
        return field.coerce_value(int(text))
    body = text[1:-1]
    acc = field.zero_value
    for part in body.split("+"):
        part = part.strip()
        c_txt, _, g_txt = part.partition("*")
        if not g_txt and c_txt.startswith("g"):
            g_txt, c_txt = c_txt, "1"
        if g_txt:
            _, _, e = g_txt.partition("^")
            deg = int(e) if e else 1
            mono = [0] * field.k
            mono[deg] = int(c_txt) % field.p
            acc = field.add(acc, tuple(mono))
        else:
            acc = field.add(acc, field.coerce_value(int(c_txt)))
    return acc


def exact_divide(num, den):
    """Single-divisor long division under graded-lex; the remainder must
    come out zero or a ValueError is raised."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    num._compat(den)
    f = num.field
    de, dc = den.leading()
    dc_inv = f.inv(dc)
    q_terms = {}
    rem = num
    while not rem.is_zero():
        ne, nc = rem.leading()
        step = tuple(a - b for a, b in zip(ne, de))
        if any(e < 0 for e in step):
            raise ValueError("nonzero remainder: %s does not divide %s"
                             % (den.render(), num.render()))
        c = f.mul(nc, dc_inv)
        q_terms[step] = c
        rem = rem - MultiPoly.monomial(f, num.nvars, step,
                                       FieldElement(f, c)) * den
    return MultiPoly._raw(f, num.nvars, q_terms)


class SkewPolyMatrix:
    """Even-size grid of polynomials with entry[i][j] = -entry[j][i] and a
    zero diagonal, checked on construction."""

    __slots__ = ("field", "size", "nvars", "entries")

    def __init__(self, entries):
        size = len(entries)
        if size == 0 or any(len(row) != size for row in entries):
            raise ValueError("entries must form a nonempty square grid")
        if size % 2:
            raise ValueError("skew matrix size must be even")
        field = entries[0][0].field
        nvars = entries[0][0].nvars
        for i in range(size):
            if not entries[i][i].is_zero():
                raise ValueError("nonzero diagonal entry at %d" % i)
            for j in range(size):
                e = entries[i][j]
                if e.field != field or e.nvars != nvars:
                    raise ValueError("entries disagree on field or nvars")
                if j > i and e != -entries[j][i]:
                    raise ValueError("entries are not skew-symmetric at (%d,%d)"
                                     % (i, j))
        self.field = field
        self.size = size
        self.nvars = nvars
        self.entries = [list(row) for row in entries]

    @classmethod
    def from_upper(cls, field, nvars, size, upper):
        """Build from a dict {(i, j): MultiPoly} over i < j."""
        zero = MultiPoly.zero(field, nvars)
        grid = [[zero for _ in range(size)] for _ in range(size)]
        for (i, j), p in upper.items():
            grid[i][j] = p
            grid[j][i] = -p
        return cls(grid)

    def evaluate(self, point):
        from .matrices import ExactMatrix
        return ExactMatrix(self.field,
                           [[e.evaluate(point).value for e in row]
                            for row in self.entries])

    def entry_degree(self):
        """Common homogeneous degree of the nonzero entries (None if all 0)."""
        degs = set()
        for row in self.entries:
            for e in row:
                if not e.is_zero():
                    d = e.homogeneous_degree()
                    degs.add(d)
        if len(degs) > 1:
            raise ValueError("entries are homogeneous of different degrees")
        return degs.pop() if degs else None


MAX_POLY_PFAFFIAN_SIZE = 8


def pfaffian_poly(m):
    """Pfaffian of a SkewPolyMatrix (or a raw skew grid) by first-row
    expansion; entries must share one homogeneous degree d, and the result
    is homogeneous of degree (size/2)*d."""
    if not isinstance(m, SkewPolyMatrix):
        m = SkewPolyMatrix(m)
    if m.size > MAX_POLY_PFAFFIAN_SIZE:
        raise ValueError("polynomial pfaffian limited to size %d"
                         % MAX_POLY_PFAFFIAN_SIZE)
    if m.field.characteristic == 2:
        raise ValueError("pfaffians are not computed in characteristic 2")
    m.entry_degree()  # raises if mixed degrees
    entries = m.entries
    f = m.field
    nv = m.nvars

    def expand(idx):
        if not idx:
            return MultiPoly.constant(f, nv, 1)
        i0 = idx[0]
        acc = MultiPoly.zero(f, nv)
        for pos in range(1, len(idx)):
            a = entries[i0][idx[pos]]
            if a.is_zero():
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = a * expand(rest)
            acc = acc + term if pos % 2 == 1 else acc - term
        return acc

    return expand(tuple(range(m.size)))


def det_poly(entries):
    """Polynomial determinant by permutation expansion, sizes <= 6 (a
    test-support routine for the Pf^2 = det identity)."""
    import itertools
    n = len(entries)
    if n > 6:
        raise ValueError("polynomial determinant limited to size 6")
    if n == 0:
        raise ValueError("empty determinant")
    f = entries[0][0].field
    nv = entries[0][0].nvars
    total = MultiPoly.zero(f, nv)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = MultiPoly.constant(f, nv, 1)
        for i in range(n):
            term = term * entries[i][perm[i]]
        total = total + term if sign > 0 else total - term
    return total
