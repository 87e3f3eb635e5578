"""Exact scalar arithmetic over Q and the cyclotomic fields Q(zeta_m).

A scalar is stored as a Fraction vector over the power basis
1, z, ..., z^(phi(m)-1), where z is a primitive m-th root of unity; products
are reduced modulo the m-th cyclotomic polynomial.  The rational field is the
m = 1 case but keeps its own FieldSpec so purely rational runs never touch the
polynomial machinery.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch, NotCyclotomic, ParseError


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rational" | "cyclotomic"
    conductor: int = 1

    def __post_init__(self):
        if self.kind not in ("rational", "cyclotomic"):
            raise ValueError(f"unknown field kind: {self.kind!r}")
        if self.conductor < 1:
            raise ValueError("conductor must be a positive integer")
        if self.kind == "rational" and self.conductor != 1:
            raise ValueError("the rational field has conductor 1")

    @property
    def degree(self) -> int:
        if self.kind == "rational":
            return 1
        return len(cyclotomic_poly(self.conductor)) - 1


RATIONAL = FieldSpec("rational")


def cyclo(m: int) -> FieldSpec:
    return FieldSpec("cyclotomic", m)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # Long division by a monic divisor; the remainder must vanish.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    assert all(c == 0 for c in num[:dd]), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the m-th cyclotomic polynomial.

    Phi_m = (x^m - 1) / prod Phi_d over proper divisors d of m, computed by
    exact integer long division (every intermediate divisor is monic).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_mod(coeffs: list[Fraction], m: int) -> list[Fraction]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(deg + 1):
                coeffs[i - deg + j] -= c * phi[j]
    coeffs = coeffs[:deg]
    while len(coeffs) < deg:
        coeffs.append(Fraction(0))
    return coeffs


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    # Extended Euclid in Q[x]: returns (g, u, v) with u*a + v*b = g.
    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def pdivmod(p, q):
        p = list(p)
        out = [Fraction(0)] * max(1, len(p) - len(q) + 1)
        lead = q[-1]
        for i in range(len(p) - 1, len(q) - 2, -1):
            if i >= len(p):
                continue
            c = p[i] / lead
            out[i - (len(q) - 1)] = c
            if c:
                for j, qj in enumerate(q):
                    p[i - (len(q) - 1) + j] -= c * qj
        return trim(out), trim(p)

    def pmul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if pi:
                for j, qj in enumerate(q):
                    out[i + j] += pi * qj
        return trim(out)

    def psub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, pi in enumerate(p):
            out[i] += pi
        for i, qi in enumerate(q):
            out[i] -= qi
        return trim(out)

    r0, r1 = trim(list(a)), trim(list(b))
    u0, u1 = [Fraction(1)], []
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, psub(u0, pmul(q, u1))
    return r0, u0


class Scalar:
    """An element of Q or Q(zeta_m), always in canonical reduced form."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        object.__setattr__(self, "spec", spec)
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        deg = spec.degree
        if len(coeffs) > deg:
            coeffs = _poly_mod(coeffs, spec.conductor)
        while len(coeffs) < deg:
            coeffs.append(Fraction(0))
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- helpers -----------------------------------------------------------

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return Scalar(self.spec, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.spec, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Scalar(self.spec, [-a for a in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return Scalar(self.spec, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return Scalar(self.spec, _poly_mod(prod, self.spec.conductor))

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("scalar inverse of zero")
        if len(self.coeffs) == 1:
            return Scalar(self.spec, (1 / self.coeffs[0],))
        phi = [Fraction(c) for c in cyclotomic_poly(self.spec.conductor)]
        g, u = _poly_xgcd(list(self.coeffs), phi)
        # Phi_m is irreducible over Q, so the gcd is a nonzero constant.
        assert len(g) == 1 and g[0] != 0
        return Scalar(self.spec, [c / g[0] for c in u])

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("scalar division by zero")
        return self * other.inverse()

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"Scalar({self.spec.kind}:{self.spec.conductor}, {serialize_scalar(self)!r})"

    def __str__(self):
        return serialize_scalar(self)


def zero(spec: FieldSpec) -> Scalar:
    return Scalar(spec, [Fraction(0)])


def one(spec: FieldSpec) -> Scalar:
    return Scalar(spec, [Fraction(1)] + [Fraction(0)] * (spec.degree - 1))


def scalar(spec: FieldSpec, value) -> Scalar:
    """Coerce an int, Fraction, or serialized string into the field."""
    if isinstance(value, Scalar):
        if value.spec != spec:
            raise FieldMismatch(f"{value.spec} vs {spec}")
        return value
    if isinstance(value, str):
        return parse_scalar(spec, value)
    q = Fraction(value)
    return Scalar(spec, [q] + [Fraction(0)] * (spec.degree - 1))


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    ops = {
        "add": Scalar.__add__,
        "sub": Scalar.__sub__,
        "mul": Scalar.__mul__,
        "div": Scalar.__truediv__,
    }
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](a, b)


def root_of_unity(spec: FieldSpec, k: int) -> Scalar:
    """zeta_m^k in canonical form; the rational field only contains zeta_1 = 1."""
    if not isinstance(k, int):
        raise NotCyclotomic(f"exponent must be an integer, got {k!r}")
    if spec.kind == "rational":
        return one(spec)
    m = spec.conductor
    k %= m
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    return Scalar(spec, coeffs)


# -- text form --------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:"
    r"(?P<coeff>[+-]?\d+(?:/\d+)?)(?:\*z(?:\^(?P<exp1>\d+))?)?"
    r"|(?P<sign>[+-]?)z(?:\^(?P<exp2>\d+))?"
    r")$"
)


def parse_scalar(spec: FieldSpec, text: str) -> Scalar:
    """Parse "p/q" or "c0 + c1*z + c2*z^2 + ..." (whitespace-insensitive)."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty scalar")
    # Split into signed terms.
    pieces = re.split(r"(?=[+-])", s)
    pieces = [p for p in pieces if p not in ("", "+", "-")]
    if not pieces:
        raise ParseError(f"cannot parse scalar {text!r}")
    accum: dict[int, Fraction] = {}
    for piece in pieces:
        mt = _TERM_RE.match(piece)
        if not mt:
            raise ParseError(f"bad term {piece!r} in scalar {text!r}")
        if mt.group("coeff") is not None:
            coeff = Fraction(mt.group("coeff"))
            exp = 0
            if piece.find("*z") >= 0:
                exp = int(mt.group("exp1")) if mt.group("exp1") else 1
        else:
            coeff = Fraction(-1 if mt.group("sign") == "-" else 1)
            exp = int(mt.group("exp2")) if mt.group("exp2") else 1
        accum[exp] = accum.get(exp, Fraction(0)) + coeff
    if spec.kind == "rational":
        if any(e != 0 for e in accum):
            raise ParseError(f"z is not an element of the rational field: {text!r}")
        return Scalar(spec, [accum.get(0, Fraction(0))])
    m = spec.conductor
    coeffs = [Fraction(0)] * spec.degree
    extra = []
    for exp, c in accum.items():
        exp %= m
        if exp < len(coeffs):
            coeffs[exp] += c
        else:
            extra.append((exp, c))
    if extra:
        top = max(e for e, _ in extra)
        wide = coeffs + [Fraction(0)] * (top + 1 - len(coeffs))
        for exp, c in extra:
            wide[exp] += c
        coeffs = wide
    return Scalar(spec, coeffs)


def serialize_scalar(x: Scalar) -> str:
    """Canonical text form; parse_scalar round-trips it bit-exactly."""
    if x.spec.kind == "rational":
        return str(x.coeffs[0])
    terms = []
    for exp, c in enumerate(x.coeffs):
        if c == 0:
            continue
        if exp == 0:
            body = str(abs(c))
        else:
            zpart = "z" if exp == 1 else f"z^{exp}"
            body = zpart if abs(c) == 1 else f"{abs(c)}*{zpart}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    out = []
    for i, (neg, body) in enumerate(terms):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
