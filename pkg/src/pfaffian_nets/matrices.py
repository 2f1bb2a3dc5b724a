"""Dense matrices over the exact fields, with rank/kernel certificates and
Pfaffians of skew-symmetric matrices.

Entries are stored as raw field payloads (Fraction / int / coefficient tuple);
`m[i, j]` hands back a wrapped FieldElement.  Elimination is plain Gauss-Jordan
over prime and extension fields, and fraction-free (Bareiss) over QQ to keep
intermediate numerators from exploding.  Large prime-field matrices are routed
through the blocked numpy kernels in modnum.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .fields import QQ, FieldElement, FieldMismatchError
from . import modnum

_NUMPY_CUTOVER = 1200  # entry count above which prime fields use modnum


def _payload(field, x):
    if isinstance(x, FieldElement):
        if x.field != field:
            raise FieldMismatchError(
                "matrix over %s given a %s entry" % (field, x.field))
        return x.value
    return field.coerce_value(x)


class ExactMatrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [[_payload(field, x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
        else:
            self.ncols = 0 if ncols is None else ncols
        if ncols is not None and self.nrows and self.ncols != ncols:
            raise ValueError("ncols mismatch")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero_value
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one_value
        return m

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        cols = list(cols)
        if not cols:
            return cls(field, [], ncols=0) if nrows is None \
                else cls.zeros(field, nrows, 0)
        n = len(cols[0])
        return cls(field, [[cols[j][i] for j in range(len(cols))]
                           for i in range(n)])

    @classmethod
    def vstack(cls, mats):
        mats = list(mats)
        field = mats[0].field
        rows = []
        for m in mats:
            if m.field != field:
                raise FieldMismatchError("vstack over mixed fields")
            rows.extend(m.rows)
        return cls(field, rows, ncols=mats[0].ncols)

    def copy(self):
        return ExactMatrix(self.field, [row[:] for row in self.rows],
                           ncols=self.ncols)

    # -- entry access ---------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return FieldElement(self.field, self.rows[i][j])

    def column(self, j):
        return [FieldElement(self.field, row[j]) for row in self.rows]

    def row_elements(self, i):
        return [FieldElement(self.field, x) for x in self.rows[i]]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.key, self.nrows, self.ncols,
                     tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        fmt = self.field.format_value
        body = "; ".join(" ".join(fmt(x) for x in row) for row in self.rows)
        return "ExactMatrix(%s, %dx%d: %s)" % (
            self.field, self.nrows, self.ncols, body)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        f = self.field
        return ExactMatrix(f, [[f.add(a, b) for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)],
                           ncols=self.ncols)

    def __sub__(self, other):
        self._compat(other)
        f = self.field
        return ExactMatrix(f, [[f.sub(a, b) for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)],
                           ncols=self.ncols)

    def __neg__(self):
        f = self.field
        return ExactMatrix(f, [[f.neg(a) for a in row] for row in self.rows],
                           ncols=self.ncols)

    def scale(self, c):
        f = self.field
        c = _payload(f, c)
        return ExactMatrix(f, [[f.mul(c, a) for a in row] for row in self.rows],
                           ncols=self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows or self.field != other.field:
            raise ValueError("shape or field mismatch in matmul")
        f = self.field
        ocols = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            new = []
            for col in ocols:
                acc = f.zero_value
                for a, b in zip(row, col):
                    if not f.is_zero_value(a) and not f.is_zero_value(b):
                        acc = f.add(acc, f.mul(a, b))
                new.append(acc)
            out.append(new)
        return ExactMatrix(f, out, ncols=other.ncols)

    def apply(self, vec):
        """Matrix times a payload/element vector, as a list of FieldElements."""
        f = self.field
        v = [_payload(f, x) for x in vec]
        out = []
        for row in self.rows:
            acc = f.zero_value
            for a, b in zip(row, v):
                if not f.is_zero_value(a) and not f.is_zero_value(b):
                    acc = f.add(acc, f.mul(a, b))
            out.append(FieldElement(f, acc))
        return out

    def transpose(self):
        return ExactMatrix(self.field, [list(col) for col in zip(*self.rows)],
                           ncols=self.nrows)

    def submatrix(self, row_idx, col_idx):
        return ExactMatrix(self.field,
                           [[self.rows[i][j] for j in col_idx] for i in row_idx],
                           ncols=len(col_idx))

    def _compat(self, other):
        if self.field != other.field:
            raise FieldMismatchError("mixed-field matrix arithmetic")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def is_zero(self):
        f = self.field
        return all(f.is_zero_value(x) for row in self.rows for x in row)

    def is_skew_symmetric(self):
        if self.nrows != self.ncols:
            return False
        f = self.field
        for i in range(self.nrows):
            if not f.is_zero_value(self.rows[i][i]):
                return False
            for j in range(i + 1, self.ncols):
                if self.rows[i][j] != f.neg(self.rows[j][i]):
                    return False
        return True

    # -- elimination ----------------------------------------------------------

    def rref(self):
        """(pivot columns, basis matrix): unique RREF basis of the row space."""
        if self.field.kind == "GF(p)" and \
                self.nrows * self.ncols >= _NUMPY_CUTOVER:
            import numpy as np
            arr = np.array(self.rows, dtype=np.int64) if self.nrows else \
                np.zeros((0, self.ncols), dtype=np.int64)
            piv, basis = modnum.rref_mod(arr, self.field.p)
            return list(piv), ExactMatrix(self.field,
                                          [[int(x) for x in row] for row in basis],
                                          ncols=self.ncols)
        if self.field.kind == "QQ":
            piv, rows = _rref_rational(self.rows, self.ncols)
        else:
            piv, rows = _rref_generic(self.field, self.rows, self.ncols)
        return piv, ExactMatrix(self.field, rows, ncols=self.ncols)

    def rank_kernel(self):
        """(rank, kernel basis as columns, ncols x nullity).

        The kernel matrix is in the canonical reduced form derived from the
        RREF: one column per free column (ascending), unit entry in that
        coordinate, zeros in the other free coordinates.
        """
        piv, basis = self.rref()
        f = self.field
        pivset = set(piv)
        free = [c for c in range(self.ncols) if c not in pivset]
        cols = []
        for fc in free:
            v = [f.zero_value] * self.ncols
            v[fc] = f.one_value
            for i, pc in enumerate(piv):
                v[pc] = f.neg(basis.rows[i][fc])
            cols.append(v)
        kern = ExactMatrix.from_columns(f, cols, nrows=self.ncols) if cols \
            else ExactMatrix.zeros(f, self.ncols, 0)
        return len(piv), kern

    def rank(self):
        return len(self.rref()[0])

    def kernel(self):
        return self.rank_kernel()[1]

    def solve(self, rhs):
        """Solve self @ x = rhs for full-column-rank self; rhs an ExactMatrix."""
        if self.field != rhs.field or self.nrows != rhs.nrows:
            raise ValueError("shape or field mismatch in solve")
        aug = ExactMatrix(self.field,
                          [r1 + list(r2) for r1, r2 in zip(self.rows, rhs.rows)],
                          ncols=self.ncols + rhs.ncols)
        piv, basis = aug.rref()
        lead = [c for c in piv if c < self.ncols]
        if len(lead) != self.ncols:
            raise ValueError("matrix is column-rank deficient")
        if any(c >= self.ncols for c in piv):
            raise ValueError("inconsistent system")
        sol = [basis.rows[i][self.ncols:] for i in range(self.ncols)]
        return ExactMatrix(self.field, sol, ncols=rhs.ncols)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if self.field.kind == "QQ":
            return FieldElement(QQ, _det_rational(self.rows))
        return FieldElement(self.field, _det_generic(self.field, self.rows))


# -- elimination backends -----------------------------------------------------

def _rref_generic(field, rows, ncols):
    work = [list(r) for r in rows]
    pivots = []
    pr = 0
    for c in range(ncols):
        hit = None
        for r in range(pr, len(work)):
            if not field.is_zero_value(work[r][c]):
                hit = r
                break
        if hit is None:
            continue
        work[pr], work[hit] = work[hit], work[pr]
        inv = field.inv(work[pr][c])
        work[pr] = [field.mul(inv, x) for x in work[pr]]
        prow = work[pr]
        for r in range(len(work)):
            if r != pr and not field.is_zero_value(work[r][c]):
                fct = work[r][c]
                work[r] = [field.sub(x, field.mul(fct, y))
                           for x, y in zip(work[r], prow)]
        pivots.append(c)
        pr += 1
        if pr == len(work):
            break
    return pivots, work[:pr]


def _int_rows(rows):
    """Scale each rational row to integers (row scaling preserves row space)."""
    out = []
    for row in rows:
        mult = lcm(*[f.denominator for f in row]) if row else 1
        out.append([int(f * mult) for f in row])
    return out


def _bareiss_echelon(rows, ncols):
    """Fraction-free forward elimination on integer rows.

    Returns (pivot columns, pivot row indices into the permuted work list,
    work rows).  Entries stay integral: the two-step division by the previous
    pivot is always exact.
    """
    work = [r[:] for r in rows]
    n = len(work)
    pivots = []
    pr = 0
    prev = 1
    for c in range(ncols):
        hit = None
        for r in range(pr, n):
            if work[r][c]:
                hit = r
                break
        if hit is None:
            continue
        work[pr], work[hit] = work[hit], work[pr]
        piv = work[pr][c]
        prow = work[pr]
        for r in range(pr + 1, n):
            wr = work[r]
            vc = wr[c]
            for j in range(c, ncols):
                wr[j] = (piv * wr[j] - vc * prow[j]) // prev
        pivots.append(c)
        pr += 1
        prev = piv
        if pr == n:
            break
    return pivots, work[:pr]


def _rref_rational(rows, ncols):
    int_rows = _int_rows(rows)
    pivots, ech = _bareiss_echelon(int_rows, ncols)
    # normalize and back-substitute with exact rationals
    basis = [[Fraction(x) for x in row] for row in ech]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        inv = 1 / basis[i][c]
        basis[i] = [x * inv for x in basis[i]]
        for r in range(i):
            fct = basis[r][c]
            if fct:
                basis[r] = [x - fct * y for x, y in zip(basis[r], basis[i])]
    return pivots, basis


def _det_generic(field, rows):
    work = [list(r) for r in rows]
    n = len(work)
    det = field.one_value
    for c in range(n):
        hit = None
        for r in range(c, n):
            if not field.is_zero_value(work[r][c]):
                hit = r
                break
        if hit is None:
            return field.zero_value
        if hit != c:
            work[c], work[hit] = work[hit], work[c]
            det = field.neg(det)
        piv = work[c][c]
        det = field.mul(det, piv)
        inv = field.inv(piv)
        for r in range(c + 1, n):
            if not field.is_zero_value(work[r][c]):
                fct = field.mul(work[r][c], inv)
                work[r] = [field.sub(x, field.mul(fct, y))
                           for x, y in zip(work[r], work[c])]
    return det


def _det_rational(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        mult = lcm(*[f.denominator for f in row])
        scale *= mult
        int_rows.append([int(f * mult) for f in row])
    sign = 1
    work = int_rows
    prev = 1
    for c in range(n):
        hit = None
        for r in range(c, n):
            if work[r][c]:
                hit = r
                break
        if hit is None:
            return Fraction(0)
        if hit != c:
            work[c], work[hit] = work[hit], work[c]
            sign = -sign
        piv = work[c][c]
        for r in range(c + 1, n):
            vc = work[r][c]
            for j in range(c, n):
                work[r][j] = (piv * work[r][j] - vc * work[c][j]) // prev
        prev = piv
    return Fraction(sign * work[n - 1][n - 1]) / scale


# -- pfaffians ----------------------------------------------------------------

MAX_PFAFFIAN_SIZE = 12


def pfaffian_scalar(m):
    """Pfaffian of a skew-symmetric ExactMatrix via first-row expansion.

    Sizes beyond 12 are rejected (the expansion is combinatorial), as is
    characteristic 2, where alternating and skew-symmetric part ways.
    """
    if m.nrows != m.ncols:
        raise ValueError("pfaffian of a non-square matrix")
    if m.nrows % 2 == 1:
        raise ValueError("pfaffian of an odd-size matrix")
    if m.nrows > MAX_PFAFFIAN_SIZE:
        raise ValueError("pfaffian size %d beyond the expansion guard (%d)"
                         % (m.nrows, MAX_PFAFFIAN_SIZE))
    if m.field.characteristic == 2:
        raise ValueError("pfaffians are not computed in characteristic 2")
    if not m.is_skew_symmetric():
        raise ValueError("matrix is not skew-symmetric")
    f = m.field
    rows = m.rows

    def expand(idx):
        if not idx:
            return f.one_value
        i0 = idx[0]
        acc = f.zero_value
        for pos in range(1, len(idx)):
            a = rows[i0][idx[pos]]
            if f.is_zero_value(a):
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = f.mul(a, expand(rest))
            acc = f.add(acc, term) if pos % 2 == 1 else f.sub(acc, term)
        return acc

    return FieldElement(f, expand(tuple(range(m.nrows))))
