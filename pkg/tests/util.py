"""Shared helpers for randomized exact tests (seeded, deterministic)."""

from fractions import Fraction
from itertools import product

from supercohom.graded import GradedBasis, MultilinearMap, Vector, cochain_coords
from supercohom.group_action import ActionRep, cyclic_group
from supercohom.linalg import mat_identity, mat_mul
from supercohom.scalars import RATIONAL, Scalar, one, scalar, zero
from supercohom.superalgebra import (
    LieSuperalgebra,
    adjoint_module,
    bracket_eval,
    make_gl,
    make_sl,
    zero_module,
)


def rand_fraction(rng, zero_bias=0.0):
    if zero_bias and rng.random() < zero_bias:
        return Fraction(0)
    return Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))


def rand_scalar(spec, rng, zero_bias=0.0):
    if zero_bias and rng.random() < zero_bias:
        return Scalar(spec, [0])
    return Scalar(spec, [rand_fraction(rng) for _ in range(spec.degree)])


def rand_vector(basis, spec, rng, parity=None, zero_bias=0.6):
    coords = {}
    for i in range(len(basis)):
        if parity is not None and basis.parities[i] != parity:
            continue
        c = rand_scalar(spec, rng, zero_bias=zero_bias)
        if not c.is_zero():
            coords[i] = c
    return Vector(coords)


def rand_multilinear(basis, spec, rng, arity, parity=0, zero_bias=0.6):
    comps = {}
    for tup in product(range(len(basis)), repeat=arity):
        want = (parity + sum(basis.parities[i] for i in tup)) % 2
        v = rand_vector(basis, spec, rng, parity=want, zero_bias=zero_bias)
        if not v.is_zero():
            comps[tup] = v
    return MultilinearMap(arity, parity, basis, basis, comps)


BASIS_22 = GradedBasis(("a", "b", "x", "y"), (0, 0, 1, 1))


def abelian_algebra(d0, d1, spec=RATIONAL):
    names = tuple(f"u{i}" for i in range(d0)) + tuple(f"v{i}" for i in range(d1))
    basis = GradedBasis(names, (0,) * d0 + (1,) * d1)
    return LieSuperalgebra(basis, spec, MultilinearMap(2, 0, basis, basis, {}))


def heisenberg_algebra(spec=RATIONAL):
    """One odd generator squaring to an even central element."""
    basis = GradedBasis(("z", "q"), (0, 1))
    comps = {(1, 1): Vector({0: one(spec)})}
    return LieSuperalgebra(basis, spec, MultilinearMap(2, 0, basis, basis, comps))


def direct_sum(parts, spec=RATIONAL):
    """Direct sum of superalgebras, re-sorted so even slots come first.

    Returns (algebra, slot) where slot[(part, local)] is the global index.
    """
    order = []
    for want in (0, 1):
        for pi, L in enumerate(parts):
            for i, p in enumerate(L.basis.parities):
                if p == want:
                    order.append((pi, i))
    slot = {key: g for g, key in enumerate(order)}
    names = tuple(f"{parts[pi].basis.names[i]}.{pi}" for pi, i in order)
    parities = tuple(parts[pi].basis.parities[i] for pi, i in order)
    basis = GradedBasis(names, parities)
    comps = {}
    for pi, L in enumerate(parts):
        for (i, j), v in L.bracket.components.items():
            w = Vector({slot[(pi, k)]: c for k, c in v.coords.items()})
            comps[(slot[(pi, i)], slot[(pi, j)])] = w
    return LieSuperalgebra(basis, spec, MultilinearMap(2, 0, basis, basis, comps)), slot


def random_basis_change(parities, spec, rng, rounds=5):
    """Random parity-preserving change of basis; returns (S, S_inv)."""
    n = len(parities)
    S, S_inv = mat_identity(n, spec), mat_identity(n, spec)
    scales = [Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(3)]
    for _ in range(rounds):
        p = rng.randint(0, 1)
        block = [i for i in range(n) if parities[i] == p]
        if len(block) >= 2 and rng.random() < 0.6:
            i, j = rng.sample(block, 2)
            c = scalar(spec, rng.choice([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]))
            E = mat_identity(n, spec)
            E[i][j] = c
            E_inv = mat_identity(n, spec)
            E_inv[i][j] = -c
        else:
            i = rng.randrange(n)
            u = scalar(spec, rng.choice(scales))
            E = mat_identity(n, spec)
            E[i][i] = u
            E_inv = mat_identity(n, spec)
            E_inv[i][i] = u.inverse()
        S = mat_mul(E, S, spec)
        S_inv = mat_mul(S_inv, E_inv, spec)
    return S, S_inv


def _apply_matrix(mat, v, n):
    out = Vector()
    for k, c in v.coords.items():
        col = Vector({r: mat[r][k] for r in range(n) if not mat[r][k].is_zero()})
        out = out + col.scale(c)
    return out


def twist_algebra(L, S, S_inv):
    """Transport the bracket through the change of basis S."""
    n = len(L.basis)
    cols_inv = [
        Vector({r: S_inv[r][c] for r in range(n) if not S_inv[r][c].is_zero()})
        for c in range(n)
    ]
    comps = {}
    for i in range(n):
        for j in range(n):
            w = bracket_eval(L, cols_inv[i], cols_inv[j])
            if not w.is_zero():
                comps[(i, j)] = _apply_matrix(S, w, n)
    bracket = MultilinearMap(2, 0, L.basis, L.basis, comps)
    return LieSuperalgebra(L.basis, L.spec, bracket)


def _perm_matrix(perm, spec):
    n = len(perm)
    z, o = zero(spec), one(spec)
    return [[o if perm[j] == i else z for j in range(n)] for i in range(n)]


def _core_automorphism(kind, L, slot, pi, rng, spec):
    """An order-two automorphism of the chosen core, as a permutation/diag
    global matrix seed (dict of index -> (index, scale))."""
    moves = {}
    if kind == "gl11" and rng.random() < 0.7:
        loc = {name: k for k, name in enumerate(("e11", "e22", "e12", "e21"))}
        for a, b in (("e11", "e22"), ("e12", "e21")):
            moves[slot[(pi, loc[a])]] = (slot[(pi, loc[b])], Fraction(1))
            moves[slot[(pi, loc[b])]] = (slot[(pi, loc[a])], Fraction(1))
    elif kind == "heis" and rng.random() < 0.7:
        moves[slot[(pi, 1)]] = (slot[(pi, 1)], Fraction(-1))
    elif kind == "sl11" and rng.random() < 0.7:
        moves[slot[(pi, 1)]] = (slot[(pi, 2)], Fraction(1))
        moves[slot[(pi, 2)]] = (slot[(pi, 1)], Fraction(1))
    return moves


def rand_instance(rng, spec=RATIONAL, with_action=False, max_d0=3, max_d1=2):
    """A random Lie superalgebra of dimension at most (max_d0 | max_d1),
    optionally with a faithful-or-not cyclic action of order at most 4.

    Built from a small catalog of cores padded with an abelian summand, then
    pushed through a random parity-preserving change of basis so the
    structure constants look nothing like the catalog.
    """
    cores = [("abelian", 0, 0), ("heis", 1, 1)]
    if max_d0 >= 1 and max_d1 >= 2:
        cores.append(("sl11", 1, 2))
    if max_d0 >= 2 and max_d1 >= 2:
        cores.append(("gl11", 2, 2))
    kind, d0, d1 = rng.choice(cores)
    pad0 = rng.randint(0, max_d0 - d0)
    pad1 = rng.randint(0, max_d1 - d1)
    if kind == "abelian" and pad0 + pad1 == 0:
        pad0 = 1
    parts = []
    if kind == "heis":
        parts.append(heisenberg_algebra(spec))
    elif kind == "sl11":
        parts.append(make_sl(1, 1, spec))
    elif kind == "gl11":
        parts.append(make_gl(1, 1, spec))
    core_pi = 0 if parts else None
    if pad0 + pad1:
        parts.append(abelian_algebra(pad0, pad1, spec))
    pad_pi = len(parts) - 1 if pad0 + pad1 else None
    L, slot = direct_sum(parts, spec)
    n = len(L.basis)

    rep = None
    if with_action:
        m = rng.choice([2, 3, 4])
        moves = {}
        if m % 2 == 0 and core_pi is not None:
            moves.update(_core_automorphism(kind, parts[core_pi], slot, core_pi, rng, spec))
        if pad_pi is not None:
            pads0 = [slot[(pad_pi, k)] for k in range(pad0)]
            pads1 = [slot[(pad_pi, pad0 + k)] for k in range(pad1)]
            if m == 3:
                if len(pads0) == 3 and rng.random() < 0.8:
                    moves[pads0[0]] = (pads0[1], Fraction(1))
                    moves[pads0[1]] = (pads0[2], Fraction(1))
                    moves[pads0[2]] = (pads0[0], Fraction(1))
            else:
                for group in (pads0, pads1):
                    if len(group) >= 2 and rng.random() < 0.5:
                        a, b = group[0], group[1]
                        moves[a] = (b, Fraction(1))
                        moves[b] = (a, Fraction(1))
                    elif group and rng.random() < 0.5:
                        moves[group[0]] = (group[0], Fraction(-1))
        z = zero(spec)
        phi = [[z] * n for _ in range(n)]
        for j in range(n):
            i, c = moves.get(j, (j, Fraction(1)))
            phi[i][j] = scalar(spec, c)
        mats = [mat_identity(n, spec)]
        for _ in range(m - 1):
            mats.append(mat_mul(phi, mats[-1], spec))
        rep = ActionRep(cyclic_group(m), spec, L.basis.parities, mats)

    S, S_inv = random_basis_change(L.basis.parities, spec, rng, rounds=rng.randint(2, 6))
    L = twist_algebra(L, S, S_inv)
    if rep is not None:
        mats = [mat_mul(mat_mul(S, g, spec), S_inv, spec) for g in rep.matrices]
        rep = ActionRep(rep.group, spec, L.basis.parities, mats)
    return L, rep


def gl11_swap_rep(L):
    """Order-two action on gl(1|1) swapping the two diagonal blocks."""
    from supercohom.group_action import permutation_rep

    return permutation_rep(
        cyclic_group(2), L.spec, L.basis.parities, [(0, 1, 2, 3), (1, 0, 3, 2)]
    )


def gl11_mu1(L):
    """First-order direction deforming the gl(1|1) bracket toward the one
    induced by the rule e_ij * e_kl = [j == k] e_li."""
    from supercohom.cohomology import Cochain

    spec = L.spec
    o = one(spec)
    coords = {
        ((0, 2), 3): o,
        ((0, 3), 2): -o,
        ((1, 2), 3): -o,
        ((1, 3), 2): o,
        ((2, 3), 0): o,
        ((2, 3), 1): o,
    }
    return Cochain(2, 0, L.basis, L.basis, coords)


def rand_cochain(rng, L, M, n, parity, zero_bias=0.5):
    from supercohom.cohomology import Cochain

    coords = {}
    for T, j in cochain_coords(L.basis, n, M.space):
        p = (sum(L.basis.parities[i] for i in T) + M.space.parities[j]) % 2
        if p != parity:
            continue
        c = rand_scalar(L.spec, rng, zero_bias=zero_bias)
        if not c.is_zero():
            coords[(T, j)] = c
    return Cochain(n, parity, L.basis, M.space, coords)


def rand_module(rng, L, rep):
    """Adjoint module most of the time, a zero-action module otherwise.

    Returns (module, reps) where reps is suitable for the rep= arguments:
    the algebra rep itself for the adjoint, a (rep_L, rep_M) pair otherwise.
    """
    if rng.random() < 0.3:
        d0, d1 = rng.randint(0, 2), rng.randint(0, 1)
        if d0 + d1 == 0:
            d0 = 1
        names = tuple(f"m{i}" for i in range(d0 + d1))
        space = GradedBasis(names, (0,) * d0 + (1,) * d1)
        M = zero_module(L, space)
        if rep is None:
            return M, None
        spec = L.spec
        dim = d0 + d1
        if rep.group.order % 2 == 0:
            diag = [rng.choice([Fraction(1), Fraction(-1)]) for _ in range(dim)]
        else:
            diag = [Fraction(1)] * dim
        z = zero(spec)
        gen = [[scalar(spec, diag[i]) if i == j else z for j in range(dim)] for i in range(dim)]
        mats = [mat_identity(dim, spec)]
        for _ in range(rep.group.order - 1):
            mats.append(mat_mul(gen, mats[-1], spec))
        return M, (rep, ActionRep(rep.group, spec, space.parities, mats))
    return adjoint_module(L), rep
