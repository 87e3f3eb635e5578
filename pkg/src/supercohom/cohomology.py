"""The equivariant cochain complex and its coboundary.

Cochains are stored by their coordinates on canonical index tuples only; the
coboundary is likewise computed on canonical tuples, with all hat-omission
signs derived incrementally from prefix parity sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BasisMismatch, ValidationError
from .graded import (
    GradedBasis,
    Vector,
    canonicalize_tuple,
    cochain_coords,
    superalt_basis,
)
from .group_action import ActionRep, apply_rep, equivariant_subspace, induced_action_on_cochains
from .linalg import column_space_basis, mat_rank, nullspace
from .scalars import FieldSpec, Scalar, one, zero
from .superalgebra import LieSuperalgebra, LModule, module_act


@dataclass
class Cochain:
    arity: int
    parity: int
    algebra: GradedBasis
    space: GradedBasis
    coords: dict[tuple[tuple[int, ...], int], Scalar]

    def __post_init__(self):
        clean = {}
        for (T, j), c in self.coords.items():
            T = tuple(T)
            if len(T) != self.arity:
                raise ValueError(f"key {T} does not have arity {self.arity}")
            res = canonicalize_tuple(T, self.algebra.parities)
            if res is None or res[0] != T:
                raise ValueError(f"key {T} is not a canonical index tuple")
            want = (
                sum(self.algebra.parities[i] for i in T) + self.space.parities[j]
            ) % 2
            if want != self.parity % 2:
                raise ValueError(
                    f"coordinate ({T}, {j}) has parity {want}, cochain is tagged {self.parity}"
                )
            if not c.is_zero():
                clean[(T, j)] = c
        self.coords = clean

    def is_zero(self) -> bool:
        return not self.coords

    def value_at(self, T) -> Vector:
        """f(e_{t_1}, ..., e_{t_n}) for an arbitrary index tuple."""
        res = canonicalize_tuple(tuple(T), self.algebra.parities)
        if res is None:
            return Vector()
        S, sign = res
        out = {}
        for j in range(len(self.space)):
            c = self.coords.get((S, j))
            if c is not None:
                out[j] = c if sign == 1 else -c
        return Vector(out)

    def add(self, other: "Cochain") -> "Cochain":
        if (self.arity, self.parity) != (other.arity, other.parity):
            raise ValueError("can only add cochains of equal arity and parity")
        merged = dict(self.coords)
        for key, c in other.coords.items():
            s = merged.get(key)
            merged[key] = c if s is None else s + c
        return Cochain(self.arity, self.parity, self.algebra, self.space, merged)

    def scale(self, a: Scalar) -> "Cochain":
        return Cochain(
            self.arity,
            self.parity,
            self.algebra,
            self.space,
            {k: a * c for k, c in self.coords.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and (self.arity, self.parity) == (other.arity, other.parity)
            and self.algebra == other.algebra
            and self.space == other.space
            and self.coords == other.coords
        )


def cochain_eval(f: Cochain, args: list[Vector]) -> Vector:
    from itertools import product

    if len(args) != f.arity:
        raise ValueError("argument count must equal cochain arity")
    if f.arity == 0:
        return f.value_at(())
    out = Vector()
    for picks in product(*[list(a.coords.items()) for a in args]):
        idx = tuple(i for i, _ in picks)
        val = f.value_at(idx)
        if val.is_zero():
            continue
        c = picks[0][1]
        for _, extra in picks[1:]:
            c = c * extra
        out = out + val.scale(c)
    return out


def zero_cochain(n: int, parity: int, L: LieSuperalgebra, M: LModule) -> Cochain:
    return Cochain(n, parity, L.basis, M.space, {})


def _resolve_reps(rep, L: LieSuperalgebra, M: LModule):
    """Accept None, a single ActionRep (module uses the same matrices when it
    lives on the algebra basis), or a (rep_L, rep_M) pair."""
    if rep is None:
        return None
    if isinstance(rep, ActionRep):
        if M.space != L.basis:
            raise BasisMismatch(
                "a single representation only covers a module on the algebra basis"
            )
        return rep, rep
    rep_L, rep_M = rep
    return rep_L, rep_M


def is_equivariant(f: Cochain, rep_L: ActionRep, rep_M: ActionRep, L, M) -> bool:
    from itertools import product

    spec = L.spec
    group = rep_L.group
    for g in range(group.order):
        ginv = group.inverse(g)
        for T in superalt_basis(L.basis, f.arity):
            args = [apply_rep(rep_L, ginv, Vector.basis(t, spec)) for t in T]
            lhs = apply_rep(rep_M, g, cochain_eval(f, args))
            rhs = f.value_at(T)
            if lhs != rhs:
                return False
    return True


def coboundary(f: Cochain, L: LieSuperalgebra, M: LModule, rep=None) -> Cochain:
    if f.algebra != L.basis or f.space != M.space:
        raise BasisMismatch("cochain does not live over the given algebra and module")
    reps = _resolve_reps(rep, L, M)
    if reps is not None and not is_equivariant(f, reps[0], reps[1], L, M):
        raise ValidationError("cochain is not equivariant under the given action")
    return _coboundary_raw(f, L, M)


def _coboundary_raw(f: Cochain, L: LieSuperalgebra, M: LModule) -> Cochain:
    n = f.arity
    par = L.basis.parities
    out: dict[tuple[tuple[int, ...], int], Scalar] = {}
    for S in superalt_basis(L.basis, n + 1):
        pars = [par[s] for s in S]
        pre = [0] * (n + 2)
        for t, p in enumerate(pars):
            pre[t + 1] = pre[t] + p
        acc = Vector()
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                br = L.bracket.at((S[i], S[j]))
                if br.is_zero():
                    continue
                exp = (
                    (i + 1)
                    + (j + 1)
                    + (pars[i] + pars[j]) * pre[i]
                    + pars[j] * (pre[j] - pre[i + 1])
                )
                rest = S[:i] + S[i + 1 : j] + S[j + 1 :]
                term = Vector()
                for t, c in br.coords.items():
                    val = f.value_at((t,) + rest)
                    if not val.is_zero():
                        term = term + val.scale(c)
                if not term.is_zero():
                    acc = acc + (term if exp % 2 == 0 else -term)
        for i in range(n + 1):
            val = f.value_at(S[:i] + S[i + 1 :])
            if val.is_zero():
                continue
            term = module_act(M, Vector.basis(S[i], L.spec), val)
            if term.is_zero():
                continue
            exp = i + pars[i] * (f.parity + pre[i])
            acc = acc + (term if exp % 2 == 0 else -term)
        for j, c in acc.coords.items():
            out[(S, j)] = c
    return Cochain(n + 1, f.parity, L.basis, M.space, out)


def cochain_basis(n: int, L: LieSuperalgebra, M: LModule, rep=None) -> list[Cochain]:
    """Basis cochains of C^n (equivariant basis when a representation is given)."""
    coords = cochain_coords(L.basis, n, M.space)
    reps = _resolve_reps(rep, L, M)
    spec = L.spec
    if reps is None:
        out = []
        for T, j in coords:
            p = (sum(L.basis.parities[i] for i in T) + M.space.parities[j]) % 2
            out.append(Cochain(n, p, L.basis, M.space, {(T, j): one(spec)}))
        return out
    induced = induced_action_on_cochains(reps[0], reps[1], L, M, n)
    fixed = equivariant_subspace(induced)
    out = []
    for col in fixed:
        cs = {}
        parity = None
        for t, c in enumerate(col):
            if c.is_zero():
                continue
            T, j = coords[t]
            cs[(T, j)] = c
            p = (sum(L.basis.parities[i] for i in T) + M.space.parities[j]) % 2
            if parity is None:
                parity = p
            elif parity != p:
                raise ValidationError("fixed-space basis vector mixes parities")
        if parity is None:
            continue
        out.append(Cochain(n, parity, L.basis, M.space, cs))
    return out


def _matrix_from_basis(basis_cochains: list[Cochain], n: int, L, M):
    """Columns: coboundaries of the basis cochains, in raw (n+1)-coordinates."""
    cod = cochain_coords(L.basis, n + 1, M.space)
    pos = {c: t for t, c in enumerate(cod)}
    z = zero(L.spec)
    mat = [[z] * len(basis_cochains) for _ in range(len(cod))]
    for k, f in enumerate(basis_cochains):
        df = _coboundary_raw(f, L, M)
        for key, c in df.coords.items():
            mat[pos[key]][k] = c
    return mat


def coboundary_matrix(n: int, L: LieSuperalgebra, M: LModule, rep=None):
    return _matrix_from_basis(cochain_basis(n, L, M, rep), n, L, M)


@dataclass
class CohomologyReport:
    n: int
    c_dims: tuple[int, int]
    z_dims: tuple[int, int]
    b_dims: tuple[int, int]
    h_dims: tuple[int, int]
    representatives: dict[int, list[Cochain]] = field(default_factory=dict)


def cohomology(n: int, L: LieSuperalgebra, M: LModule, rep=None) -> CohomologyReport:
    dom = cochain_basis(n, L, M, rep)
    mat = _matrix_from_basis(dom, n, L, M)
    prev = cochain_basis(n - 1, L, M, rep) if n > 0 else []
    prev_mat = _matrix_from_basis(prev, n - 1, L, M) if n > 0 else []

    c_dims, z_dims, b_dims, h_dims = [0, 0], [0, 0], [0, 0], [0, 0]
    reps_out: dict[int, list[Cochain]] = {}
    for p in (0, 1):
        cols = [k for k, f in enumerate(dom) if f.parity == p]
        sub = [[row[k] for k in cols] for row in mat]
        rank = mat_rank(sub, L.spec) if cols else 0
        c_dims[p] = len(cols)
        z_dims[p] = len(cols) - rank

        img_cols = []
        if n > 0:
            pcols = [k for k, f in enumerate(prev) if f.parity == p]
            pm = [[row[k] for k in pcols] for row in prev_mat]
            img_cols = column_space_basis(pm, L.spec) if pcols else []
        b_dims[p] = len(img_cols)
        h_dims[p] = z_dims[p] - b_dims[p]

        kernel = nullspace(sub, len(cols), L.spec) if cols else []
        raw_len = len(cochain_coords(L.basis, n, M.space))
        coords = cochain_coords(L.basis, n, M.space)
        pos = {c: t for t, c in enumerate(coords)}

        def to_raw(coeffs):
            col = [zero(L.spec)] * raw_len
            for k, c in zip(cols, coeffs):
                if c.is_zero():
                    continue
                for key, v in dom[k].coords.items():
                    t = pos[key]
                    col[t] = col[t] + c * v
            return col

        stacked = [list(c) for c in img_cols] + [to_raw(kv) for kv in kernel]
        chosen: list[Cochain] = []
        if stacked:
            colmat = [
                [stacked[c][r] for c in range(len(stacked))] for r in range(raw_len)
            ]
            pivots = _pivot_columns(colmat, L.spec)
            for piv in pivots:
                if piv >= len(img_cols):
                    coeffs = kernel[piv - len(img_cols)]
                    f = zero_cochain(n, p, L, M)
                    for k, c in zip(cols, coeffs):
                        if not c.is_zero():
                            f = f.add(dom[k].scale(c))
                    chosen.append(f)
        reps_out[p] = chosen
    return CohomologyReport(
        n,
        tuple(c_dims),
        tuple(z_dims),
        tuple(b_dims),
        tuple(h_dims),
        reps_out,
    )


def _pivot_columns(mat, spec):
    from .linalg import _bareiss_echelon

    if not mat or not mat[0]:
        return []
    work = [list(row) for row in mat]
    return _bareiss_echelon(work, spec)


def annihilator(L: LieSuperalgebra, M: LModule, rep=None) -> list[Vector]:
    """Basis of {m in M_0 : [x, m] = 0 for all x}, fixed by G when given.

    Assembled directly from the action table; shares nothing with the
    coboundary machinery.
    """
    reps = _resolve_reps(rep, L, M)
    spec = L.spec
    evens = [j for j, p in enumerate(M.space.parities) if p == 0]
    rows = []
    for i in range(len(L.basis)):
        for r in range(len(M.space)):
            row = []
            for j in evens:
                v = M.act.get((i, j))
                row.append(v.get(r, spec) if v is not None else zero(spec))
            if any(not x.is_zero() for x in row):
                rows.append(row)
    if reps is not None:
        rep_M = reps[1]
        for g in range(rep_M.group.order):
            mat = rep_M.matrices[g]
            for r in range(len(M.space)):
                row = []
                for j in evens:
                    x = mat[r][j]
                    if r == j:
                        x = x - one(spec)
                    row.append(x)
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    if not rows:
        return [Vector.basis(j, spec) for j in evens]
    sols = nullspace(rows, len(evens), spec)
    return [
        Vector({evens[k]: c for k, c in enumerate(sol) if not c.is_zero()})
        for sol in sols
    ]


def _fixed_even_vectors(M: LModule, rep_M: ActionRep | None, spec) -> list[Vector]:
    evens = [j for j, p in enumerate(M.space.parities) if p == 0]
    if rep_M is None:
        return [Vector.basis(j, spec) for j in evens]
    rows = []
    for g in range(rep_M.group.order):
        mat = rep_M.matrices[g]
        for r in range(len(M.space)):
            row = []
            for j in evens:
                x = mat[r][j]
                if r == j:
                    x = x - one(spec)
                row.append(x)
            if any(not x.is_zero() for x in row):
                rows.append(row)
    if not rows:
        return [Vector.basis(j, spec) for j in evens]
    sols = nullspace(rows, len(evens), spec)
    return [
        Vector({evens[k]: c for k, c in enumerate(sol) if not c.is_zero()})
        for sol in sols
    ]


def derivations(L: LieSuperalgebra, M: LModule, rep=None):
    """(basis of Der^G, basis of Der^G_Inn) as degree-0 1-cochains.

    The derivation constraints are assembled from scratch here; only the
    nullspace routine is shared with the coboundary path.
    """
    reps = _resolve_reps(rep, L, M)
    spec = L.spec
    parL, parM = L.basis.parities, M.space.parities
    variables = [
        (i, j)
        for i in range(len(parL))
        for j in range(len(parM))
        if parL[i] == parM[j]
    ]
    vpos = {v: k for k, v in enumerate(variables)}
    rows = []
    for a in range(len(parL)):
        for b in range(len(parL)):
            sign_ab = 1 if (parL[a] * parL[b]) % 2 == 0 else -1
            br = L.bracket.at((a, b))
            for r in range(len(parM)):
                row = [zero(spec)] * len(variables)
                hit = False
                for t, c in br.coords.items():
                    k = vpos.get((t, r))
                    if k is not None:
                        row[k] = row[k] + c
                        hit = True
                for j in range(len(parM)):
                    act_a = M.act.get((a, j))
                    if act_a is not None and (b, j) in vpos:
                        x = act_a.get(r, spec)
                        if not x.is_zero():
                            row[vpos[(b, j)]] = row[vpos[(b, j)]] - x
                            hit = True
                    act_b = M.act.get((b, j))
                    if act_b is not None and (a, j) in vpos:
                        x = act_b.get(r, spec)
                        if not x.is_zero():
                            k = vpos[(a, j)]
                            row[k] = row[k] + x if sign_ab == 1 else row[k] - x
                            hit = True
                if hit:
                    rows.append(row)
    if reps is not None:
        rep_L, rep_M = reps
        for g in range(rep_L.group.order):
            A, B = rep_L.matrices[g], rep_M.matrices[g]
            for i in range(len(parL)):
                for r in range(len(parM)):
                    row = [zero(spec)] * len(variables)
                    hit = False
                    for t in range(len(parL)):
                        if (t, r) in vpos and not A[t][i].is_zero():
                            k = vpos[(t, r)]
                            row[k] = row[k] + A[t][i]
                            hit = True
                    for j in range(len(parM)):
                        if (i, j) in vpos and not B[r][j].is_zero():
                            k = vpos[(i, j)]
                            row[k] = row[k] - B[r][j]
                            hit = True
                    if hit:
                        rows.append(row)
    sols = nullspace(rows, len(variables), spec) if rows else [
        [one(spec) if t == k else zero(spec) for t in range(len(variables))]
        for k in range(len(variables))
    ]
    der = []
    for sol in sols:
        cs = {}
        for k, c in enumerate(sol):
            if not c.is_zero():
                i, j = variables[k]
                cs[((i,), j)] = c
        der.append(Cochain(1, 0, L.basis, M.space, cs))

    fixed = _fixed_even_vectors(M, reps[1] if reps else None, spec)
    inner_cols = []
    raw = cochain_coords(L.basis, 1, M.space)
    pos = {c: t for t, c in enumerate(raw)}
    inner_cochains = []
    for m in fixed:
        cs = {}
        for i in range(len(parL)):
            val = module_act(M, Vector.basis(i, spec), m)
            for j, c in val.coords.items():
                cs[((i,), j)] = c
        f = Cochain(1, 0, L.basis, M.space, cs)
        col = [zero(spec)] * len(raw)
        for key, c in f.coords.items():
            col[pos[key]] = c
        inner_cols.append(col)
        inner_cochains.append(f)
    inn = []
    if inner_cols:
        colmat = [
            [inner_cols[c][r] for c in range(len(inner_cols))]
            for r in range(len(raw))
        ]
        for piv in _pivot_columns(colmat, spec):
            inn.append(inner_cochains[piv])
    return der, inn
