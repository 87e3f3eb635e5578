"""Z2-graded bases, sparse vectors, multilinear maps, and Koszul signs.

Permutations of {1..n} are stored 0-based: sigma[i] is the image of position
i.  The sign conventions follow the twisted symmetric-group action
(sigma.F)(X) = eps(sigma, X) * F(X_{sigma(1)}, ..., X_{sigma(n)}) where
eps(sigma, X) = sign(sigma) * (-1)^{# inverted odd-odd pairs}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import comb

from .errors import DegreeMismatch, LengthMismatch
from .scalars import FieldSpec, Scalar, one, zero


@dataclass(frozen=True)
class GradedBasis:
    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "parities", tuple(self.parities))
        if len(self.names) != len(self.parities):
            raise LengthMismatch("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis labels must be unique")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")
        if list(self.parities) != sorted(self.parities):
            raise ValueError("even basis vectors must be listed before odd ones")

    def __len__(self):
        return len(self.names)

    @property
    def dims(self) -> tuple[int, int]:
        d1 = sum(self.parities)
        return len(self.parities) - d1, d1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no basis vector named {name!r}") from None


class Vector:
    """Sparse coordinate vector: basis index -> nonzero Scalar."""

    __slots__ = ("coords",)

    def __init__(self, coords: dict[int, Scalar] | None = None):
        self.coords = {i: c for i, c in (coords or {}).items() if not c.is_zero()}

    @staticmethod
    def basis(i: int, spec: FieldSpec) -> "Vector":
        return Vector({i: one(spec)})

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.coords)
        for i, c in other.coords.items():
            if i in out:
                s = out[i] + c
                if s.is_zero():
                    del out[i]
                else:
                    out[i] = s
            else:
                out[i] = c
        return Vector(out)

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __neg__(self) -> "Vector":
        return Vector({i: -c for i, c in self.coords.items()})

    def scale(self, a: Scalar) -> "Vector":
        if a.is_zero():
            return Vector()
        return Vector({i: a * c for i, c in self.coords.items()})

    def __eq__(self, other):
        return isinstance(other, Vector) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def get(self, i: int, spec: FieldSpec) -> Scalar:
        return self.coords.get(i, zero(spec))

    def parity_support(self, basis: GradedBasis) -> set[int]:
        return {basis.parities[i] for i in self.coords}

    def __repr__(self):
        if not self.coords:
            return "Vector(0)"
        parts = [f"{c}*[{i}]" for i, c in sorted(self.coords.items())]
        return "Vector(" + " + ".join(parts) + ")"


def vec_str(v: Vector, basis: GradedBasis) -> str:
    if v.is_zero():
        return "0"
    parts = []
    for i in sorted(v.coords):
        c = v.coords[i]
        parts.append(f"({c})*{basis.names[i]}")
    return " + ".join(parts)


# -- Koszul machinery --------------------------------------------------------


def perm_sign(sigma) -> int:
    n = len(sigma)
    inv = 0
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[j] < sigma[i]:
                inv += 1
    return -1 if inv % 2 else 1


def koszul_count(sigma, parities) -> int:
    """Number of pairs i < j with sigma(j) < sigma(i) and both entries odd."""
    if len(sigma) != len(parities):
        raise LengthMismatch("permutation and parity tuple differ in length")
    n = len(sigma)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[j] < sigma[i] and parities[sigma[i]] == 1 and parities[sigma[j]] == 1:
                count += 1
    return count


def koszul_sign(sigma, parities) -> int:
    k = koszul_count(sigma, parities)
    return perm_sign(sigma) * (-1 if k % 2 else 1)


@dataclass(frozen=True)
class PermSigns:
    sigma: tuple[int, ...]
    k_count: int
    eps: int

    @staticmethod
    def of(sigma, parities) -> "PermSigns":
        k = koszul_count(sigma, parities)
        return PermSigns(tuple(sigma), k, perm_sign(sigma) * (-1 if k % 2 else 1))


def invert_perm(sigma):
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


# -- multilinear maps --------------------------------------------------------


@dataclass
class MultilinearMap:
    arity: int
    parity: int
    source: GradedBasis
    target: GradedBasis
    components: dict[tuple[int, ...], Vector] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for tup, vec in self.components.items():
            tup = tuple(tup)
            if len(tup) != self.arity:
                raise LengthMismatch(f"component tuple {tup} has wrong arity")
            if any(not 0 <= i < len(self.source) for i in tup):
                raise ValueError(f"component tuple {tup} indexes outside the basis")
            if vec.is_zero():
                continue
            want = (self.parity + sum(self.source.parities[i] for i in tup)) % 2
            got = vec.parity_support(self.target)
            if got - {want}:
                raise ValueError(
                    f"component at {tup} not homogeneous: parity {want} expected"
                )
            clean[tup] = vec
        self.components = clean

    def at(self, tup) -> Vector:
        return self.components.get(tuple(tup), Vector())

    def add(self, other: "MultilinearMap") -> "MultilinearMap":
        out = dict(self.components)
        for tup, vec in other.components.items():
            s = out.get(tup, Vector()) + vec
            if s.is_zero():
                out.pop(tup, None)
            else:
                out[tup] = s
        return MultilinearMap(self.arity, self.parity, self.source, self.target, out)

    def scale(self, a: Scalar) -> "MultilinearMap":
        return MultilinearMap(
            self.arity,
            self.parity,
            self.source,
            self.target,
            {t: v.scale(a) for t, v in self.components.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, MultilinearMap)
            and self.arity == other.arity
            and self.parity == other.parity
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )


def eval_map(F: MultilinearMap, args: list[Vector]) -> Vector:
    """Multilinear evaluation of F on coordinate vectors."""
    if len(args) != F.arity:
        raise LengthMismatch("argument count must equal map arity")
    if F.arity == 0:
        return F.at(())
    out = Vector()
    for picks in product(*[list(a.coords.items()) for a in args]):
        idx = tuple(i for i, _ in picks)
        comp = F.at(idx)
        if comp.is_zero():
            continue
        c = picks[0][1]
        for _, extra in picks[1:]:
            c = c * extra
        out = out + comp.scale(c)
    return out


def cochain_coords(basis: GradedBasis, n: int, target: GradedBasis):
    """Coordinates of super-alternating n-maps into the target space.

    Tuple-major ordering: every canonical source tuple paired with each
    target basis index in turn.
    """
    return [(T, j) for T in superalt_basis(basis, n) for j in range(len(target))]


def coord_parity(basis: GradedBasis, target: GradedBasis, T, j) -> int:
    return (sum(basis.parities[i] for i in T) + target.parities[j]) % 2


def act_permutation(sigma, F: MultilinearMap) -> MultilinearMap:
    """The twisted action (sigma.F)(X) = eps(sigma, X) F(X_{sigma(1)}, ...)."""
    if len(sigma) != F.arity:
        raise DegreeMismatch("permutation degree must equal map arity")
    out: dict[tuple[int, ...], Vector] = {}
    for S, vec in F.components.items():
        # The component of sigma.F at T is eps(sigma, T) * F(T o sigma); here
        # we enumerate T by scattering S back through sigma.
        T = [0] * F.arity
        for k, s in enumerate(sigma):
            T[s] = S[k]
        T = tuple(T)
        parities = tuple(F.source.parities[i] for i in T)
        eps = koszul_sign(sigma, parities)
        contrib = vec if eps == 1 else -vec
        prev = out.get(T)
        out[T] = contrib if prev is None else prev + contrib
    return MultilinearMap(F.arity, F.parity, F.source, F.target, out)


# -- canonical super-alternating basis ---------------------------------------


def superalt_basis(basis: GradedBasis, n: int) -> list[tuple[int, ...]]:
    """Canonical index tuples coordinatizing super-alternating n-maps.

    Even indices strictly increasing, then odd indices weakly increasing;
    since even basis vectors precede odd ones, every canonical tuple is
    weakly increasing as a flat sequence.
    """
    if n < 0:
        raise ValueError("arity must be >= 0")
    if n == 0:
        return [()]
    d0, d1 = basis.dims
    evens = range(d0)
    odds = range(d0, d0 + d1)
    out = []
    for k in range(min(n, d0) + 1):
        r = n - k
        if r > 0 and d1 == 0:
            continue
        for ev in combinations(evens, k):
            for od in combinations_with_replacement(odds, r):
                out.append(ev + od)
    out.sort()
    return out


def superalt_count(d0: int, d1: int, n: int) -> int:
    total = 0
    for k in range(min(n, d0) + 1):
        r = n - k
        if r == 0:
            odd_ways = 1
        elif d1 == 0:
            odd_ways = 0
        else:
            odd_ways = comb(d1 + r - 1, r)
        total += comb(d0, k) * odd_ways
    return total


def canonicalize_tuple(tup, parities_by_index):
    """Sort an index tuple into canonical order, tracking the Koszul sign.

    Returns (sorted_tuple, +/-1), or None when the tuple has a repeated even
    index (the super-alternating component vanishes there).
    """
    n = len(tup)
    order = sorted(range(n), key=lambda k: (tup[k], k))
    seen = set()
    for i in tup:
        if parities_by_index[i] == 0:
            if i in seen:
                return None
            seen.add(i)
    sigma = tuple(order)
    parities = tuple(parities_by_index[i] for i in tup)
    return tuple(tup[k] for k in order), koszul_sign(sigma, parities)


def superalt_expand(
    basis: GradedBasis,
    n: int,
    coords: list[Vector],
    target: GradedBasis,
    parity: int,
) -> MultilinearMap:
    """Expand canonical coordinates to the full component table."""
    canon = superalt_basis(basis, n)
    if len(coords) != len(canon):
        raise LengthMismatch(
            f"expected {len(canon)} coordinate vectors, got {len(coords)}"
        )
    table = dict(zip(canon, coords))
    spec = None
    for v in coords:
        for c in v.coords.values():
            spec = c.spec
            break
        if spec:
            break
    out: dict[tuple[int, ...], Vector] = {}
    for tup in product(range(len(basis)), repeat=n):
        res = canonicalize_tuple(tup, basis.parities)
        if res is None:
            continue
        sorted_tup, sign = res
        vec = table.get(sorted_tup)
        if vec is None or vec.is_zero():
            continue
        out[tup] = vec if sign == 1 else -vec
    return MultilinearMap(n, parity, basis, target, out)
