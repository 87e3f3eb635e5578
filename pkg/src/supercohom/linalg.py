"""Exact dense linear algebra over a Scalar field.

Forward elimination is fraction-free (Bareiss): each update is
(a*p - b*c)/prev_pivot with an exact division, which keeps intermediate
entries as minors of the input instead of letting numerators and
denominators grow multiplicatively.  Everything downstream (rank, nullspace,
solve, column space) reads off the echelon form.
"""

from __future__ import annotations

from .errors import LengthMismatch
from .scalars import FieldSpec, Scalar, one, zero


Matrix = list[list[Scalar]]


def mat_zero(rows: int, cols: int, spec: FieldSpec) -> Matrix:
    z = zero(spec)
    return [[z] * cols for _ in range(rows)]


def mat_identity(n: int, spec: FieldSpec) -> Matrix:
    out = mat_zero(n, n, spec)
    o = one(spec)
    for i in range(n):
        out[i][i] = o
    return out


def mat_mul(a: Matrix, b: Matrix, spec: FieldSpec) -> Matrix:
    rows, cols = len(a), len(b[0]) if b else 0
    support = [[(j, x) for j, x in enumerate(bk) if not x.is_zero()] for bk in b]
    out = mat_zero(rows, cols, spec)
    for i in range(rows):
        ai, row = a[i], out[i]
        for k, aik in enumerate(ai):
            if aik.is_zero():
                continue
            for j, bkj in support[k]:
                row[j] = row[j] + aik * bkj
    return out


def mat_vec(a: Matrix, v: list[Scalar], spec: FieldSpec) -> list[Scalar]:
    out = []
    for row in a:
        acc = zero(spec)
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return out


def _bareiss_echelon(m: Matrix, spec: FieldSpec):
    """In-place fraction-free row echelon; returns list of pivot columns."""
    if not m:
        return []
    rows, cols = len(m), len(m[0])
    # The exact division by the previous pivot happens once per updated
    # entry, so hoist its (possibly costly) field inverse out of the loops.
    prev_inv = None
    r = 0
    pivots = []
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        scale = piv if prev_inv is None else piv * prev_inv
        for i in range(r + 1, rows):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            if mic.is_zero():
                for j in range(c, cols):
                    x = row_i[j]
                    if not x.is_zero():
                        row_i[j] = x * scale
                continue
            for j in range(c, cols):
                x, y = row_i[j], row_r[j]
                if y.is_zero():
                    if not x.is_zero():
                        row_i[j] = x * scale
                    continue
                v = x * piv - mic * y if not x.is_zero() else -(mic * y)
                row_i[j] = v if prev_inv is None else v * prev_inv
        prev_inv = piv.inverse()
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rref(mat: Matrix, spec: FieldSpec):
    """Reduced row echelon form (fresh matrix) plus pivot column list."""
    m = [list(row) for row in mat]
    pivots = _bareiss_echelon(m, spec)
    cols = len(m[0]) if m else 0
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        inv = m[r][c].inverse()
        m[r] = [x if x.is_zero() else x * inv for x in m[r]]
        for i in range(r):
            f = m[i][c]
            if not f.is_zero():
                m[i] = [
                    a if b.is_zero() else a - f * b for a, b in zip(m[i], m[r])
                ]
    return m, pivots


def mat_rank(mat: Matrix, spec: FieldSpec) -> int:
    m = [list(row) for row in mat]
    return len(_bareiss_echelon(m, spec))


def nullspace(mat: Matrix, cols: int, spec: FieldSpec) -> list[list[Scalar]]:
    """Basis of {x : mat @ x = 0}; one vector per free column."""
    if not mat:
        return [
            [one(spec) if i == j else zero(spec) for i in range(cols)]
            for j in range(cols)
        ]
    m, pivots = rref(mat, spec)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero(spec)] * cols
        v[fc] = one(spec)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(mat: Matrix, rhs: list[Scalar], spec: FieldSpec):
    """One exact solution of mat @ x = rhs, or None when inconsistent."""
    if not mat:
        return [] if all(b.is_zero() for b in rhs) else None
    cols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    m, pivots = rref(aug, spec)
    if cols in pivots:
        return None
    x = [zero(spec)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][cols]
    return x


def column_space_basis(mat: Matrix, spec: FieldSpec) -> list[list[Scalar]]:
    """The pivot columns of mat, as column vectors."""
    if not mat or not mat[0]:
        return []
    m = [list(row) for row in mat]
    pivots = _bareiss_echelon(m, spec)
    return [[row[c] for row in mat] for c in pivots]


def span_equal(a_cols: list[list[Scalar]], b_cols: list[list[Scalar]], spec: FieldSpec) -> bool:
    """Do two column families span the same subspace?"""
    if not a_cols and not b_cols:
        return True
    dim = len(a_cols[0]) if a_cols else len(b_cols[0])
    if any(len(col) != dim for col in a_cols) or any(len(col) != dim for col in b_cols):
        raise LengthMismatch("columns must all live in the same space")
    rows_a = [[col[i] for col in a_cols] for i in range(dim)]
    rows_b = [[col[i] for col in b_cols] for i in range(dim)]
    rows_ab = [ra + rb for ra, rb in zip(rows_a, rows_b)]
    ra = mat_rank(rows_a, spec)
    rb = mat_rank(rows_b, spec)
    return ra == rb == mat_rank(rows_ab, spec)


def is_zero_matrix(mat: Matrix) -> bool:
    return all(x.is_zero() for row in mat for x in row)
