"""Formal one-parameter deformations of a Lie superalgebra bracket, truncated
at a finite order: order-by-order checking of the deformation identity,
infinitesimals, the next-order obstruction, and gauge equivalence.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

from .cohomology import (
    Cochain,
    coboundary,
    coboundary_matrix,
    cochain_basis,
    cochain_eval,
    is_equivariant,
    zero_cochain,
)
from .errors import (
    AllZero,
    BasisMismatch,
    NotValidated,
    OracleDisagreement,
    ValidationError,
    WrongBidegree,
)
from .graded import GradedBasis, Vector, cochain_coords, superalt_basis
from .group_action import ActionRep
from .linalg import solve
from .scalars import FieldSpec, one, scalar, zero
from .superalgebra import LieSuperalgebra, adjoint_module


def _basis_vec(i: int, spec: FieldSpec) -> Vector:
    return Vector({i: one(spec)})


def _bracket_cochain(L: LieSuperalgebra) -> Cochain:
    coords = {}
    for pair in superalt_basis(L.basis, 2):
        for j, c in L.bracket.at(pair).coords.items():
            coords[(pair, j)] = c
    return Cochain(2, 0, L.basis, L.basis, coords)


@dataclass
class Deformation:
    base: LieSuperalgebra
    rep: ActionRep
    terms: list[Cochain]
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not self.terms:
            raise ValueError("a deformation needs at least the order-0 term")
        for k, f in enumerate(self.terms):
            if f.algebra != self.base.basis or f.space != self.base.basis:
                raise BasisMismatch(f"term {k} does not live on the base algebra")
            if f.arity != 2 or f.parity != 0:
                raise WrongBidegree(f"term {k} must be a binary map of parity 0")
        if self.rep.parities != self.base.basis.parities:
            raise BasisMismatch("action does not match the base algebra")
        if check:
            if self.terms[0] != _bracket_cochain(self.base):
                raise ValidationError("order-0 term must equal the base bracket")
            M = adjoint_module(self.base)
            for k, f in enumerate(self.terms):
                if not is_equivariant(f, self.rep, self.rep, self.base, M):
                    raise ValidationError(f"term {k} is not equivariant")

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def term(self, k: int) -> Cochain:
        if 0 <= k < len(self.terms):
            return self.terms[k]
        return zero_cochain(2, 0, self.base, adjoint_module(self.base))


@dataclass
class OrderReport:
    r: int
    ok: bool
    residual: dict[tuple, Vector] = field(default_factory=dict)


def check_order(d: Deformation, r: int) -> OrderReport:
    """Coefficient of t^r in the deformation identity, over canonical triples."""
    if r < 0:
        raise ValueError("order must be nonnegative")
    L = d.base
    spec = L.spec
    par = L.basis.parities
    pairs = [(i, r - i) for i in range(r + 1) if i <= d.order and r - i <= d.order]
    residual = {}
    for T in superalt_basis(L.basis, 3):
        a, b, c = T
        ea, eb, ec = (_basis_vec(i, spec) for i in T)
        sign_ab = (par[a] * par[b]) % 2
        acc = Vector()
        for i, j in pairs:
            mi, mj = d.terms[i], d.terms[j]
            t1 = cochain_eval(mi, [ea, mj.value_at((b, c))])
            t2 = cochain_eval(mi, [mj.value_at((a, b)), ec])
            t3 = cochain_eval(mi, [eb, mj.value_at((a, c))])
            acc = acc + t1 + (-t2) + (t3 if sign_ab else -t3)
        if not acc.is_zero():
            residual[T] = acc
    return OrderReport(r, not residual, residual)


@dataclass
class DeformationReport:
    mode: str
    orders: list[OrderReport]
    terms_equivariant: bool
    terms_antisymmetric: bool

    @property
    def ok(self) -> bool:
        return (
            self.terms_equivariant
            and self.terms_antisymmetric
            and all(o.ok for o in self.orders)
        )

    def first_failure(self):
        for o in self.orders:
            if not o.ok:
                return o
        return None


def validate(d: Deformation, mode: str = "truncated") -> DeformationReport:
    if mode not in ("truncated", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    top = d.order if mode == "truncated" else 2 * d.order
    orders = [check_order(d, r) for r in range(top + 1)]
    M = adjoint_module(d.base)
    equivariant = all(
        is_equivariant(f, d.rep, d.rep, d.base, M) for f in d.terms
    )
    par = d.base.basis.parities
    n = len(d.base.basis)
    antisym = True
    for f in d.terms:
        for i in range(n):
            for j in range(n):
                flip = f.value_at((i, j))
                if (par[i] * par[j]) % 2 == 0:
                    flip = -flip
                if f.value_at((j, i)) != flip:
                    antisym = False
    return DeformationReport(mode, orders, equivariant, antisym)


@dataclass
class InfinitesimalReport:
    index: int
    cochain: Cochain
    is_cocycle: bool


def infinitesimal(d: Deformation) -> InfinitesimalReport:
    for k in range(1, d.order + 1):
        if not d.terms[k].is_zero():
            dk = coboundary(d.terms[k], d.base, adjoint_module(d.base))
            return InfinitesimalReport(k, d.terms[k], dk.is_zero())
    raise AllZero("every term beyond order 0 vanishes")


@dataclass
class ObstructionReport:
    cochain: Cochain
    solvable: bool
    next_term: Cochain | None
    closed: bool


def obstruction(d: Deformation) -> ObstructionReport:
    """The order-(N+1) obstruction: zero iff the truncation extends one order.

    Sign convention: an extension term m exists iff the obstruction equals
    delta^2(-m), so solvability reads "obstruction lies in the image of
    delta^2 on equivariant 2-cochains".
    """
    report = validate(d, "truncated")
    if not report.ok:
        bad = report.first_failure()
        where = f"order {bad.r}" if bad is not None else "term validation"
        raise NotValidated(f"deformation fails truncated validation at {where}")
    L = d.base
    spec = L.spec
    par = L.basis.parities
    r = d.order + 1
    pairs = [(i, r - i) for i in range(1, r) if i <= d.order and r - i <= d.order]
    coords = {}
    for T in superalt_basis(L.basis, 3):
        a, b, c = T
        ea, eb, ec = (_basis_vec(i, spec) for i in T)
        sign_ab = (par[a] * par[b]) % 2
        acc = Vector()
        for i, j in pairs:
            mi, mj = d.terms[i], d.terms[j]
            t1 = cochain_eval(mi, [ea, mj.value_at((b, c))])
            t2 = cochain_eval(mi, [mj.value_at((a, b)), ec])
            t3 = cochain_eval(mi, [eb, mj.value_at((a, c))])
            acc = acc + t1 + (-t2) + (t3 if sign_ab else -t3)
        for j, cval in acc.coords.items():
            coords[(T, j)] = cval
    M = adjoint_module(L)
    obs = Cochain(3, 0, L.basis, L.basis, coords)
    if obs.is_zero():
        return ObstructionReport(obs, True, zero_cochain(2, 0, L, M), True)
    closed = coboundary(obs, L, M).is_zero()

    basis2 = cochain_basis(2, L, M, rep=d.rep)
    mat = coboundary_matrix(2, L, M, rep=d.rep)
    cod = cochain_coords(L.basis, 3, L.basis)
    z = zero(spec)
    rhs = [-coords.get(key, z) for key in cod]
    sol = solve(mat, rhs, spec) if mat and mat[0] else ([] if all(x.is_zero() for x in rhs) else None)
    if sol is None:
        return ObstructionReport(obs, False, None, closed)
    nxt = zero_cochain(2, 0, L, M)
    for c, f in zip(sol, basis2):
        if not c.is_zero():
            nxt = nxt.add(f.scale(c))
    return ObstructionReport(obs, True, nxt, closed)


# -- gauge equivalence --------------------------------------------------------


def identity_endo(basis: GradedBasis, spec: FieldSpec) -> Cochain:
    return Cochain(
        1, 0, basis, basis, {((i,), i): one(spec) for i in range(len(basis))}
    )


def _endo_compose(f: Cochain, g: Cochain) -> Cochain:
    """f after g, as parity-preserving endomorphisms."""
    basis = f.algebra
    coords = {}
    for i in range(len(basis)):
        v = g.value_at((i,))
        w = Vector()
        for k, c in v.coords.items():
            w = w + f.value_at((k,)).scale(c)
        for j, c in w.coords.items():
            coords[((i,), j)] = c
    return Cochain(1, 0, basis, basis, coords)


@dataclass
class GaugeTransform:
    spec: FieldSpec
    space: GradedBasis
    maps: list[Cochain]

    def __post_init__(self):
        if not self.maps:
            raise ValueError("a gauge transform needs at least the order-0 map")
        for k, psi in enumerate(self.maps):
            if psi.algebra != self.space or psi.space != self.space:
                raise BasisMismatch(f"map {k} does not act on the declared space")
            if psi.arity != 1 or psi.parity != 0:
                raise WrongBidegree(f"map {k} must be a parity-preserving endomorphism")
        if self.maps[0] != identity_endo(self.space, self.spec):
            raise ValidationError("the order-0 map must be the identity")

    def map_at(self, k: int) -> Cochain:
        if 0 <= k < len(self.maps):
            return self.maps[k]
        return Cochain(1, 0, self.space, self.space, {})

    def inverse(self, order: int | None = None) -> "GaugeTransform":
        top = len(self.maps) - 1 if order is None else order
        return GaugeTransform(self.spec, self.space, self._inverse_maps(top))

    def _inverse_maps(self, top: int) -> list[Cochain]:
        phi = [identity_endo(self.space, self.spec)]
        minus = scalar(self.spec, -1)
        for k in range(1, top + 1):
            acc = Cochain(1, 0, self.space, self.space, {})
            for i in range(1, k + 1):
                acc = acc.add(_endo_compose(self.map_at(i), phi[k - i]))
            phi.append(acc.scale(minus))
        return phi


def gauge_transform(d: Deformation, g: GaugeTransform) -> Deformation:
    """Conjugate the deformation by the formal series, truncated at its order."""
    L = d.base
    if g.space != L.basis or g.spec != L.spec:
        raise BasisMismatch("gauge transform does not act on the base algebra")
    M = adjoint_module(L)
    for k, psi in enumerate(g.maps):
        if not is_equivariant(psi, d.rep, d.rep, L, M):
            raise ValidationError(f"gauge map {k} is not equivariant")
    N = d.order
    phi = g._inverse_maps(N)
    spec = L.spec
    new_terms = []
    for k in range(N + 1):
        coords = {}
        for pair in superalt_basis(L.basis, 2):
            a, b = pair
            acc = Vector()
            for i in range(k + 1):
                for j in range(k - i + 1):
                    for l in range(k - i - j + 1):
                        p = k - i - j - l
                        if j > N:
                            continue
                        va = phi[l].value_at((a,))
                        vb = phi[p].value_at((b,))
                        inner = cochain_eval(d.terms[j], [va, vb])
                        if inner.is_zero():
                            continue
                        acc = acc + cochain_eval(g.map_at(i), [inner])
            for j, c in acc.coords.items():
                coords[(pair, j)] = c
        new_terms.append(Cochain(2, 0, L.basis, L.basis, coords))
    return Deformation(L, d.rep, new_terms)


def infinitesimals_cohomologous(
    d1: Deformation, d2: Deformation, g: GaugeTransform | None = None
) -> bool:
    """Whether the first-order terms differ by the coboundary of an
    equivariant endomorphism."""
    L = d1.base
    if d2.base.basis != L.basis or d2.base.spec != L.spec:
        raise BasisMismatch("deformations live on different algebras")
    minus = scalar(L.spec, -1)
    diff = d1.term(1).add(d2.term(1).scale(minus))
    M = adjoint_module(L)
    mat = coboundary_matrix(1, L, M, rep=d1.rep)
    cod = cochain_coords(L.basis, 2, L.basis)
    z = zero(L.spec)
    rhs = [diff.coords.get(key, z) for key in cod]
    if not mat or not mat[0]:
        verdict = all(x.is_zero() for x in rhs)
    else:
        verdict = solve(mat, rhs, L.spec) is not None
    if g is not None:
        psi1 = g.map_at(1)
        certificate = coboundary(psi1, L, M)
        if certificate.coords == diff.coords and not verdict:
            raise OracleDisagreement(
                "gauge certificate solves the coboundary equation "
                "but the equivariant solve found no solution"
            )
    return verdict
