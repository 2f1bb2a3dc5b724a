"""Vectorized linear algebra mod p on numpy int64 arrays.

These kernels back the exact-matrix and ideal machinery for prime fields.
All arithmetic is exact: products stay below 2^31 because p < 2^16, and the
blocked updates use float64 matmuls whose accumulated sums stay below 2^53
(panel width times (p-1)^2), so nothing is ever rounded.

The reduced row echelon form of a row space is unique, which is what makes
the panel/blocked strategy here deterministic even though pivot rows are
picked up in a swap-compacted order.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 46337  # (p-1)^2 must fit comfortably; see module docstring

_inv_tables = {}


def inverse_table(p):
    """Array t with t[a] = a^-1 mod p (t[0] = 0)."""
    t = _inv_tables.get(p)
    if t is None:
        t = np.zeros(p, dtype=np.int64)
        t[1:] = np.array([pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
        _inv_tables[p] = t
    return t


def _check_prime(p):
    if p > MAX_PRIME:
        raise ValueError("prime %d too large for the int64/float64 kernels" % p)


def _panel_sweep(E, p, seq=None):
    """Gauss-Jordan on a panel.  If seq is None, discover the pivot sequence
    (destroying E); otherwise replay a known sequence on a wider array."""
    invtab = inverse_table(p)
    if seq is None:
        n, w = E.shape
        found = []
        used = np.zeros(n, dtype=bool)
        for c in range(w):
            col = E[:, c]
            nz = np.nonzero((col != 0) & ~used)[0]
            if nz.size == 0:
                continue
            r = int(nz[0])
            used[r] = True
            found.append((r, c))
            E[r] = E[r] * invtab[col[r]] % p
            f = E[:, c].copy()
            f[r] = 0
            rows = np.nonzero(f)[0]
            if rows.size:
                E[rows] = (E[rows] - f[rows, None] * E[r][None, :]) % p
            if len(found) == min(n, w):
                break
        return found
    for r, c in seq:
        E[r] = E[r] * invtab[E[r, c]] % p
        f = E[:, c].copy()
        f[r] = 0
        rows = np.nonzero(f)[0]
        if rows.size:
            E[rows] = (E[rows] - f[rows, None] * E[r][None, :]) % p
    return seq


def addmul_mod(target, delta, rows, p, col_lo=None, col_hi=None, chunk=2048):
    """target[:, J] += delta @ rows[:, J] (mod p) for all column ranges J,
    optionally skipping [col_lo, col_hi).  Exact float64 matmul inside."""
    C = target.shape[1]
    deltaf = delta.astype(np.float64)
    spans = []
    if col_lo is None:
        spans.append((0, C))
    else:
        if col_lo > 0:
            spans.append((0, col_lo))
        if col_hi < C:
            spans.append((col_hi, C))
    for lo, hi in spans:
        for j0 in range(lo, hi, chunk):
            j1 = min(hi, j0 + chunk)
            prod = deltaf @ rows[:, j0:j1].astype(np.float64)
            target[:, j0:j1] = (target[:, j0:j1] + prod.astype(np.int64)) % p


def rref_mod(a, p, panel=64):
    """Reduced row echelon form mod p.

    Returns (piv_cols, basis): pivot column indices (increasing) and a
    (rank x ncols) int64 array in RREF with unit pivots.
    """
    _check_prime(p)
    work = np.asarray(a, dtype=np.int64) % p
    if work.ndim != 2:
        raise ValueError("expected a 2d array")
    work = work.copy()
    R, C = work.shape
    piv_cols = []
    basis_rows = []
    groups = []  # (first_index_into_basis_rows, count) per panel, for backfill
    nfree = R
    for c0 in range(0, C, panel):
        if nfree == 0:
            break
        c1 = min(C, c0 + panel)
        E = work[:nfree, c0:c1].copy()
        seq = _panel_sweep(E, p)
        if not seq:
            continue
        k = len(seq)
        lrows = [r for r, _ in seq]
        E2 = np.concatenate(
            [work[:nfree, c0:c1], np.zeros((nfree, k), dtype=np.int64)], axis=1)
        for i, (r, _) in enumerate(seq):
            E2[r, c1 - c0 + i] = 1
        _panel_sweep(E2, p, seq=seq)
        delta = E2[:, c1 - c0:]
        for i, (r, _) in enumerate(seq):
            delta[r, i] = (delta[r, i] - 1) % p
        old_piv = work[lrows, :].copy()
        addmul_mod(work[:nfree], delta, old_piv, p, col_lo=c0, col_hi=c1)
        work[:nfree, c0:c1] = E2[:, :c1 - c0]
        groups.append((len(basis_rows), k))
        for r, c in seq:
            piv_cols.append(c0 + c)
            basis_rows.append(work[r].copy())
        for r in sorted(lrows, reverse=True):
            nfree -= 1
            if r != nfree:
                work[r] = work[nfree]
    if not basis_rows:
        return [], np.zeros((0, C), dtype=np.int64)
    basis = np.array(basis_rows, dtype=np.int64)
    # backfill: rows found in earlier panels still carry nonzeros in the pivot
    # columns of later panels
    for start, k in groups[1:]:
        block = basis[start:start + k]
        cols = piv_cols[start:start + k]
        coef = basis[:start, cols] % p
        if np.any(coef):
            addmul_mod(basis[:start], (-coef) % p, block, p)
    return piv_cols, basis


def rank_mod(a, p, panel=64):
    return len(rref_mod(a, p, panel=panel)[0])


def kernel_from_rref(piv_cols, basis, ncols, p):
    """Kernel basis (ncols x nullity) from an RREF basis of the row space.
    Column j corresponds to the j-th free column: unit there, minus the RREF
    column at the pivot rows."""
    pivset = set(piv_cols)
    free = [c for c in range(ncols) if c not in pivset]
    K = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        K[fc, j] = 1
        if piv_cols:
            K[piv_cols, j] = (-basis[:, fc]) % p
    return K


def batch_rank(mats, p):
    """Ranks of a stack of small matrices (N x r x c) mod p."""
    _check_prime(p)
    m = np.asarray(mats, dtype=np.int64) % p
    if m.ndim != 3:
        raise ValueError("expected a 3d stack of matrices")
    m = m.copy()
    N, r, c = m.shape
    invtab = inverse_table(p)
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or r == 0 or c == 0:
        return rank
    row = np.zeros(N, dtype=np.int64)
    rows_idx = np.arange(r)
    for col in range(c):
        colvals = m[:, :, col]
        active = (rows_idx[None, :] >= row[:, None]) & (colvals != 0)
        has = active.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        pr = np.argmax(active[idx], axis=1)
        ri = row[idx]
        tmp = m[idx, ri, :].copy()
        m[idx, ri, :] = m[idx, pr, :]
        m[idx, pr, :] = tmp
        pv = m[idx, ri, col]
        m[idx, ri, :] = m[idx, ri, :] * invtab[pv][:, None] % p
        below = rows_idx[None, :] > ri[:, None]
        f = np.where(below, m[idx, :, col], 0)
        m[idx] = (m[idx] - f[:, :, None] * m[idx, ri, :][:, None, :]) % p
        row[idx] += 1
        rank[idx] += 1
        if rank.max() == min(r, c) and bool((rank == min(r, c)).all()):
            break
    return rank


def small_field_tables(field, limit=64):
    """Dense operation tables for a finite field of order <= limit.

    Elements are encoded as integer codes: the residue itself for GF(p),
    base-p digits of the coefficient tuple for GF(p^k).  Returns a dict with
    'add', 'sub', 'mul' (q x q int64 arrays), 'inv' (length q, inv[0] = 0),
    and 'decode' (list mapping code -> payload).
    """
    q = getattr(field, "order", None)
    if q is None or q > limit:
        raise ValueError("need a finite field of order <= %d" % limit)
    elements = [e.value for e in field.elements()]
    code_of = {v: i for i, v in enumerate(elements)}
    add = np.zeros((q, q), dtype=np.int64)
    sub = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            add[i, j] = code_of[field.add(a, b)]
            sub[i, j] = code_of[field.sub(a, b)]
            mul[i, j] = code_of[field.mul(a, b)]
        if not field.is_zero_value(a):
            inv[i] = code_of[field.inv(a)]
    return {"q": q, "add": add, "sub": sub, "mul": mul, "inv": inv,
            "decode": elements, "encode": code_of}


def batch_rank_table(mats, tables):
    """Ranks of a stack of small matrices whose entries are field codes,
    using the operation tables from small_field_tables."""
    add_t, sub_t, mul_t, inv_t = (tables["add"], tables["sub"],
                                  tables["mul"], tables["inv"])
    m = np.asarray(mats, dtype=np.int64).copy()
    if m.ndim != 3:
        raise ValueError("expected a 3d stack of matrices")
    N, r, c = m.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or r == 0 or c == 0:
        return rank
    row = np.zeros(N, dtype=np.int64)
    rows_idx = np.arange(r)
    for col in range(c):
        colvals = m[:, :, col]
        active = (rows_idx[None, :] >= row[:, None]) & (colvals != 0)
        has = active.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        pr = np.argmax(active[idx], axis=1)
        ri = row[idx]
        tmp = m[idx, ri, :].copy()
        m[idx, ri, :] = m[idx, pr, :]
        m[idx, pr, :] = tmp
        pv = m[idx, ri, col]
        m[idx, ri, :] = mul_t[m[idx, ri, :], inv_t[pv][:, None]]
        below = rows_idx[None, :] > ri[:, None]
        f = np.where(below, m[idx, :, col], 0)
        prod = mul_t[f[:, :, None], m[idx, ri, :][:, None, :]]
        m[idx] = sub_t[m[idx], prod]
        row[idx] += 1
        rank[idx] += 1
        if bool((rank == min(r, c)).all()):
            break
    return rank


def monomial_values(points, exps, p):
    """Evaluate monomials at many points mod p.

    points: (N, n) int array; exps: (M, n) exponent array.
    Returns (N, M) with entry [i, j] = prod_k points[i, k] ** exps[j, k].
    """
    pts = np.asarray(points, dtype=np.int64) % p
    exps = np.asarray(exps)
    N, n = pts.shape
    M = exps.shape[0]
    out = np.ones((N, M), dtype=np.int64)
    maxe = int(exps.max()) if M else 0
    for k in range(n):
        if not np.any(exps[:, k]):
            continue
        powers = np.empty((maxe + 1, N), dtype=np.int64)
        powers[0] = 1
        for e in range(1, maxe + 1):
            powers[e] = powers[e - 1] * pts[:, k] % p
        out = out * powers[exps[:, k]].T % p
    return out
