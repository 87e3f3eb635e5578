"""The Z x Z2-graded Lie algebra of super-alternating multilinear maps on a
graded space, in the Nijenhuis-Richardson style: the * and o (circle)
products, the graded bracket, and the Maurer-Cartan test that recognizes
Lie superalgebra structures among bilinear elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .cohomology import Cochain
from .errors import (
    BasisMismatch,
    DegreeOutOfRange,
    OracleDisagreement,
    WrongBidegree,
)
from .graded import (
    GradedBasis,
    MultilinearMap,
    Vector,
    koszul_sign,
    superalt_basis,
)
from .scalars import FieldSpec, scalar
from .superalgebra import LieSuperalgebra, validate_superalgebra


@dataclass
class NRElement:
    spec: FieldSpec
    space: GradedBasis
    z_degree: int
    parity: int
    payload: Cochain | Vector

    def __post_init__(self):
        if self.z_degree < -1:
            raise DegreeOutOfRange(
                f"z-degree {self.z_degree} is below the vector stratum"
            )
        self.parity %= 2
        if self.z_degree == -1:
            if not isinstance(self.payload, Vector):
                raise TypeError("a z-degree -1 element holds a plain vector")
            support = self.payload.parity_support(self.space)
            if support - {self.parity}:
                raise ValueError(
                    f"vector payload is not homogeneous of parity {self.parity}"
                )
        else:
            if not isinstance(self.payload, Cochain):
                raise TypeError("a z-degree >= 0 element holds a cochain")
            if self.payload.algebra != self.space or self.payload.space != self.space:
                raise BasisMismatch("payload must be a map from the space to itself")
            if self.payload.arity != self.z_degree + 1:
                raise WrongBidegree(
                    f"payload arity {self.payload.arity} does not match z-degree {self.z_degree}"
                )
            if self.payload.parity != self.parity:
                raise WrongBidegree("payload parity does not match the element")

    @property
    def arity(self) -> int:
        return self.z_degree + 1

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def add(self, other: "NRElement") -> "NRElement":
        if (self.z_degree, self.parity) != (other.z_degree, other.parity):
            raise WrongBidegree("can only add elements of equal bidegree")
        return NRElement(
            self.spec, self.space, self.z_degree, self.parity,
            self.payload + other.payload
            if self.z_degree == -1
            else self.payload.add(other.payload),
        )

    def scale(self, a) -> "NRElement":
        return NRElement(
            self.spec, self.space, self.z_degree, self.parity, self.payload.scale(a)
        )

    def __eq__(self, other):
        return (
            isinstance(other, NRElement)
            and (self.z_degree, self.parity) == (other.z_degree, other.parity)
            and self.space == other.space
            and self.payload == other.payload
        )


def zero_element(spec: FieldSpec, space: GradedBasis, z_degree: int, parity: int) -> NRElement:
    if z_degree == -1:
        return NRElement(spec, space, -1, parity, Vector())
    return NRElement(
        spec, space, z_degree, parity, Cochain(z_degree + 1, parity, space, space, {})
    )


def shuffles(p: int, q: int) -> list[tuple[int, ...]]:
    """0-based (p,q)-shuffles: permutations increasing on the first p and the
    last q positions, each generated once by choosing the first block's image."""
    m = p + q
    out = []
    for first in combinations(range(m), p):
        chosen = set(first)
        out.append(tuple(first) + tuple(k for k in range(m) if k not in chosen))
    return out


def _star_value(F: NRElement, Fp: NRElement, T: tuple[int, ...]) -> Vector:
    """Value of F*F' on basis arguments indexed by T."""
    if F.z_degree == -1:
        # no slot of F receives the second factor; the product collapses
        return Vector()
    n = F.z_degree
    head, tail = T[:n], T[n:]
    if Fp.z_degree == -1:
        inner = Fp.payload
    else:
        inner = Fp.payload.value_at(tail)
    if inner.is_zero():
        return Vector()
    acc = Vector()
    for k, c in inner.coords.items():
        acc = acc + F.payload.value_at(head + (k,)).scale(c)
    if Fp.parity and sum(F.space.parities[t] for t in head) % 2:
        return -acc
    return acc


def star(F: NRElement, Fp: NRElement) -> MultilinearMap:
    """The raw (not yet symmetrized) composition, as a full multilinear map."""
    m = F.z_degree + Fp.z_degree + 1
    if m < 0:
        raise DegreeOutOfRange("both factors lie in the vector stratum")
    parity = (F.parity + Fp.parity) % 2
    comps = {}
    dim = len(F.space)
    for T in product(range(dim), repeat=m):
        v = _star_value(F, Fp, T)
        if not v.is_zero():
            comps[T] = v
    return MultilinearMap(m, parity, F.space, F.space, comps)


def circ(F: NRElement, Fp: NRElement) -> NRElement:
    """Shuffle symmetrization of F*F'; lands in bidegree (n+n', f+f')."""
    if F.space != Fp.space:
        raise BasisMismatch("factors live on different spaces")
    z = F.z_degree + Fp.z_degree
    parity = (F.parity + Fp.parity) % 2
    if z < -1:
        raise DegreeOutOfRange("composition drops below the vector stratum")
    if F.z_degree == -1:
        return zero_element(F.spec, F.space, z, parity)
    sigmas = shuffles(F.z_degree, Fp.z_degree + 1)
    m = z + 1
    space = F.space
    if z == -1:
        # unary F applied to a vector payload: the single shuffle is trivial
        return NRElement(F.spec, space, -1, parity, _star_value(F, Fp, ()))
    coords = {}
    for S in superalt_basis(space, m):
        pars = tuple(space.parities[i] for i in S)
        acc = Vector()
        for sigma in sigmas:
            eps = koszul_sign(sigma, pars)
            val = _star_value(F, Fp, tuple(S[sigma[k]] for k in range(m)))
            if val.is_zero():
                continue
            acc = acc + (val if eps == 1 else -val)
        for j, c in acc.coords.items():
            coords[(S, j)] = c
    return NRElement(
        F.spec, space, z, parity, Cochain(m, parity, space, space, coords)
    )


def nr_bracket(F: NRElement, Fp: NRElement) -> NRElement:
    """[F, F'] = F o F' - (-1)^{nn'+ff'} F' o F."""
    left = circ(F, Fp)
    right = circ(Fp, F)
    sign = (F.z_degree * Fp.z_degree + F.parity * Fp.parity) % 2
    if sign == 0:
        right = right.scale(scalar(F.spec, -1))
    return left.add(right)


@dataclass
class MCReport:
    is_mc: bool
    residual: NRElement
    jacobi_ok: bool


def bracket_to_element(L: LieSuperalgebra) -> NRElement:
    coords = {}
    for pair in superalt_basis(L.basis, 2):
        v = L.bracket.at(pair)
        for j, c in v.coords.items():
            coords[(pair, j)] = c
    payload = Cochain(2, 0, L.basis, L.basis, coords)
    return NRElement(L.spec, L.basis, 1, 0, payload)


def element_to_bracket(F0: NRElement, basis: GradedBasis) -> LieSuperalgebra:
    """Unvalidated candidate superalgebra with the bracket encoded by F0."""
    if (F0.z_degree, F0.parity) != (1, 0):
        raise WrongBidegree("only bidegree (1,0) elements encode brackets")
    if F0.space != basis:
        raise BasisMismatch("element does not live on the given basis")
    comps = {}
    for (pair, j), c in F0.payload.coords.items():
        i1, i2 = pair
        v = comps.get((i1, i2), Vector())
        comps[(i1, i2)] = v + Vector({j: c})
    full = {}
    for (i1, i2), v in comps.items():
        full[(i1, i2)] = v
        if i1 != i2:
            p = basis.parities[i1] * basis.parities[i2]
            full[(i2, i1)] = v.scale(scalar(F0.spec, -1 if p % 2 == 0 else 1))
    bracket = MultilinearMap(2, 0, basis, basis, full)
    return LieSuperalgebra(basis, F0.spec, bracket, check=False)


def mc_check(F0: NRElement) -> MCReport:
    """Maurer-Cartan test for a bidegree (1,0) element, cross-checked against
    a direct super-Jacobi sweep of the encoded bracket."""
    if (F0.z_degree, F0.parity) != (1, 0):
        raise WrongBidegree(
            f"Maurer-Cartan candidates have bidegree (1,0), got ({F0.z_degree},{F0.parity})"
        )
    residual = nr_bracket(F0, F0)
    is_mc = residual.is_zero()
    candidate = element_to_bracket(F0, F0.space)
    report = validate_superalgebra(candidate)
    if report.jacobi_ok != is_mc:
        raise OracleDisagreement(
            "Maurer-Cartan verdict and the super-Jacobi sweep disagree: "
            f"[F,F]=0 is {is_mc}, Jacobi is {report.jacobi_ok}"
        )
    return MCReport(is_mc, residual, report.jacobi_ok)
