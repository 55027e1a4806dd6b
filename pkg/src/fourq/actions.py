"""Generating vectors of type (0; 2, 2, 2, 2q) for D_2q and their equivalences.

Covers validation, exhaustive enumeration, the canonical normal forms
sigma_{0,n} = (s, s r^-n, r^q, r^(q+n)) and sigma_{1,n} = (s r, s r^(1-n), r^q, r^(q+n)),
geometric signatures, Hurwitz moves and the orbit computation under
Hurwitz moves together with Aut(G).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Sequence

from fourq.dihedral import (
    GroupElement,
    automorphism_generators,
    check_q,
    elements,
    generates_group,
    identity,
    parse_elements,
    r,
    s,
    subgroup_class,
    subgroup_generated,
)
from fourq.errors import InvalidConstructionError, MismatchedGroupError


# -- signatures and Riemann-Hurwitz -------------------------------------------


@dataclass(frozen=True)
class SignatureType:
    genus: int  # orbit genus gamma
    periods: tuple  # (m_1, ..., m_l)

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidConstructionError("orbit genus must be nonnegative")
        if any(m < 2 for m in self.periods):
            raise InvalidConstructionError(f"periods must be >= 2, got {self.periods}")

    def __str__(self) -> str:
        return f"({self.genus}; {', '.join(map(str, self.periods))})"


def standard_signature(q: int) -> SignatureType:
    return SignatureType(0, (2, 2, 2, 2 * q))


def riemann_hurwitz_genus(group_order: int, sig: SignatureType, *, strict: bool = False) -> Fraction:
    """Solve 2g - 2 = |G|(2 gamma - 2) + |G| sum(1 - 1/m_i) for g.

    With ``strict`` a non-integral or negative genus raises
    InvalidConstructionError; otherwise the rational value is returned as-is.
    """
    rhs = group_order * (2 * sig.genus - 2) + group_order * sum(
        (1 - Fraction(1, m) for m in sig.periods), Fraction(0)
    )
    g = (rhs + 2) / 2
    if strict and (g.denominator != 1 or g < 0):
        raise InvalidConstructionError(f"inconsistent signature {sig} for |G| = {group_order}: g = {g}")
    return g


# -- generating vectors -------------------------------------------------------


class GeneratingVectorError(InvalidConstructionError):
    """Validation failure; ``codes`` lists every violated condition."""

    def __init__(self, codes: Sequence[str], detail: str):
        super().__init__(detail)
        self.codes = tuple(codes)


WRONG_ORDERS = "wrong_orders"
PRODUCT_NOT_ONE = "product_not_one"
DOES_NOT_GENERATE = "does_not_generate"


@dataclass(frozen=True)
class GeneratingVector:
    q: int
    elements: tuple  # (g1, g2, g3, g4)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> GroupElement:
        return self.elements[i]

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.elements)) + ")"

    def to_json(self) -> list[str]:
        return [str(g) for g in self.elements]

    @property
    def key(self) -> tuple:
        return tuple(g.code for g in self.elements)


def _product(elems: Iterable[GroupElement], q: int) -> GroupElement:
    acc = identity(q)
    for g in elems:
        acc = acc * g
    return acc


def validate(v: Sequence[GroupElement], q: int, periods: Sequence[int] | None = None) -> GeneratingVector:
    """Check orders, product one and generation; raise with all failing codes."""
    check_q(q)
    v = tuple(v)
    if any(g.q != q for g in v):
        raise MismatchedGroupError("vector entries do not lie in D_2q for this q")
    periods = tuple(periods) if periods is not None else (2, 2, 2, 2 * q)
    codes, detail = [], []
    orders = tuple(g.order() for g in v)
    if orders != periods:
        codes.append(WRONG_ORDERS)
        detail.append(f"orders {orders} != {periods}")
    prod = _product(v, q)
    if prod != identity(q):
        codes.append(PRODUCT_NOT_ONE)
        detail.append(f"product is {prod}")
    if not v or not generates_group(v):
        codes.append(DOES_NOT_GENERATE)
        detail.append("entries generate a proper subgroup")
    if codes:
        raise GeneratingVectorError(codes, "; ".join(detail))
    return GeneratingVector(q, v)


def parse_vector(text: str, q: int) -> GeneratingVector:
    return validate(parse_elements(text, q), q)


def sigma(parity: int, n: int, q: int) -> GeneratingVector:
    """The normal form sigma_{parity, n}."""
    first = s(q, parity)
    second = s(q, parity - n)
    return GeneratingVector(q, (first, second, r(q, q), r(q, q + n)))


def sigma0(q: int) -> GeneratingVector:
    """(s, s r^-2, r^q, r^(q+2))."""
    return sigma(0, 2, q)


def sigma1(q: int) -> GeneratingVector:
    """(s r, s r^-1, r^q, r^(q+2))."""
    return sigma(1, 2, q)


def enumerate_vectors(q: int) -> list[GeneratingVector]:
    """All generating vectors of type (2, 2, 2, 2q), sorted by element codes.

    Loops over triples of involutions and closes with g4 = (g1 g2 g3)^-1.
    """
    check_q(q)
    n = 2 * q
    involutions = [g for g in elements(q) if g.order() == 2]
    out = []
    for g1, g2, g3 in cartesian(involutions, repeat=3):
        g4 = (g1 * g2 * g3).inverse()
        if g4.order() != n:
            continue
        if not generates_group((g1, g2, g3, g4)):
            continue
        out.append(GeneratingVector(q, (g1, g2, g3, g4)))
    out.sort(key=lambda v: v.key)
    return out


# -- normal forms --------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    parity: int
    n: int
    vector: GeneratingVector
    moves: tuple  # (("permute", perm), ("conjugate", c)) replayable by apply_moves

    def to_json(self) -> dict:
        return {
            "parity": self.parity,
            "n": self.n,
            "vector": self.vector.to_json(),
            "moves": [list(m) if m[0] == "conjugate" else [m[0], list(m[1])] for m in self.moves],
        }


def _permute(v: tuple, perm: tuple) -> tuple:
    # new[i] = old[perm[i]]
    return tuple(v[p] for p in perm)


def _conjugate_tuple(v: tuple, x: GroupElement) -> tuple:
    return tuple(g.conjugate_by(x) for g in v)


def apply_moves(v: GeneratingVector, moves: Iterable[tuple]) -> GeneratingVector:
    elems = v.elements
    for kind, arg in moves:
        if kind == "permute":
            elems = _permute(elems, tuple(arg))
        elif kind == "conjugate":
            elems = _conjugate_tuple(elems, r(v.q, arg))
        else:
            raise ValueError(f"unknown move {kind!r}")
    return validate(elems, v.q)


def normalize(v: GeneratingVector) -> NormalForm:
    """Bring a valid vector to sigma_{0,n} or sigma_{1,n}.

    r^q is central, so moving it to slot 3 (keeping the two reflections in
    order) is a plain permutation that keeps the product. Conjugating by
    r^c sends s r^e to s r^(e + 2c), which zeroes the first exponent (even
    case) or makes it one (odd case).
    """
    q = v.q
    v = validate(v.elements, q)
    center = r(q, q)
    slot = [i for i in range(3) if v[i] == center]
    if len(slot) != 1:
        raise InvalidConstructionError("expected r^q in exactly one of the first three slots")
    others = [i for i in range(3) if i != slot[0]]
    perm = (others[0], others[1], slot[0], 3)
    elems = _permute(v.elements, perm)
    e1, e2 = elems[0].rot, elems[1].rot
    if not (elems[0].flip and elems[1].flip):
        raise InvalidConstructionError("slots other than r^q must hold reflections")
    parity = e1 % 2
    c = -(e1 - parity) // 2
    moves = (("permute", perm), ("conjugate", c % (2 * q)))
    out = validate(_conjugate_tuple(elems, r(q, c)), q)
    n = (e1 - e2) % (2 * q)
    expected = sigma(parity, n, q)
    if out != expected:
        raise InvalidConstructionError(f"normalization reached {out}, expected {expected}")
    return NormalForm(parity, n, out, moves)


# -- geometric signature -------------------------------------------------------


@dataclass(frozen=True)
class GeometricSignature:
    genus: int
    periods: tuple
    stabilizers: tuple  # Subgroup <c_k> for each branch point
    classes: tuple = field(compare=False)  # SubgroupClass of each stabilizer

    def labels(self) -> list[str]:
        return [c.label() for c in self.classes]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "entries": [
                {"period": m, "stabilizer": str(h), "class": c.label()}
                for m, h, c in zip(self.periods, self.stabilizers, self.classes)
            ],
        }


def geometric_signature(v: GeneratingVector) -> GeometricSignature:
    subs = tuple(subgroup_generated([g]) for g in v)
    classes = tuple(subgroup_class(h) for h in subs)
    return GeometricSignature(0, tuple(g.order() for g in v), subs, classes)


# -- Hurwitz moves and orbits -----------------------------------------------------


def _braid(elems: tuple, i: int) -> tuple:
    a, b = elems[i], elems[i + 1]
    return elems[:i] + (a * b * a.inverse(), a) + elems[i + 2 :]


def _braid_inverse(elems: tuple, i: int) -> tuple:
    a, b = elems[i], elems[i + 1]
    return elems[:i] + (b, b.inverse() * a * b) + elems[i + 2 :]


def braid_move(v: GeneratingVector, i: int, *, inverse: bool = False) -> GeneratingVector:
    """Hurwitz move on slots i, i+1 (1-based, i in {1, 2, 3}).

    The result generally has a permuted order type, so it is validated
    against the permuted periods rather than (2, 2, 2, 2q).
    """
    if i not in (1, 2, 3):
        raise ValueError("braid index must be 1, 2 or 3")
    fn = _braid_inverse if inverse else _braid
    out = fn(v.elements, i - 1)
    return validate(out, v.q, periods=tuple(g.order() for g in out))


@dataclass(frozen=True)
class OrbitReport:
    q: int
    orbits: tuple  # tuple of tuples of GeneratingVector (standard type only)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def to_json(self) -> dict:
        return {
            "orbit_count": self.orbit_count,
            "orbit_sizes": self.orbit_sizes,
            "representatives": [o[0].to_json() for o in self.orbits],
        }


def topological_orbits(q: int, vectors: Sequence[GeneratingVector] | None = None) -> OrbitReport:
    """Partition standard-type vectors under Hurwitz moves and Aut(G).

    The search runs over every positional order type, since a single move
    permutes the periods, and the result is then restricted to vectors of
    type (2, 2, 2, 2q).
    """
    check_q(q)
    vectors = enumerate_vectors(q) if vectors is None else list(vectors)
    els = elements(q)
    table = [[(a * b).code for b in els] for a in els]
    inv = [g.inverse().code for g in els]
    auts = [tuple(phi(g).code for g in els) for phi in automorphism_generators(q)]

    def neighbours(t: tuple):
        for i in range(3):
            a, b = t[i], t[i + 1]
            yield t[:i] + (table[table[a][b]][inv[a]], a) + t[i + 2 :]
            yield t[:i] + (b, table[table[inv[b]][a]][b]) + t[i + 2 :]
        for phi in auts:
            yield tuple(phi[x] for x in t)

    standard = {v.key: v for v in vectors}
    assigned: set = set()
    orbits = []
    for v in vectors:
        if v.key in assigned:
            continue
        seen = {v.key}
        queue = deque([v.key])
        while queue:
            t = queue.popleft()
            for u in neighbours(t):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        members = sorted(k for k in seen if k in standard)
        assigned.update(members)
        orbits.append(tuple(standard[k] for k in members))
    return OrbitReport(q, tuple(orbits))


# -- essential equality ---------------------------------------------------------------


@dataclass(frozen=True)
class EssentialClass:
    dims: tuple  # (dim B1, ..., dim B6)
    representative: GeneratingVector
    members: tuple

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "representative": self.representative.to_json(),
            "size": len(self.members),
        }


def essential_classes(q: int, vectors: Sequence[GeneratingVector] | None = None) -> list[EssentialClass]:
    """Group vectors by their factor-dimension vector.

    Representatives are sigma_0 and sigma_1 when they fall in a class,
    otherwise the smallest member.
    """
    from fourq.decomp import dimension_vector

    check_q(q)
    vectors = enumerate_vectors(q) if vectors is None else list(vectors)
    groups: dict[tuple, list[GeneratingVector]] = {}
    for v in vectors:
        groups.setdefault(dimension_vector(v), []).append(v)
    preferred = [sigma0(q), sigma1(q)]
    out = []
    for dims in sorted(groups, key=lambda d: tuple(-x for x in d)):
        members = groups[dims]
        rep = next((p for p in preferred if p in members), members[0])
        out.append(EssentialClass(dims, rep, tuple(members)))
    return out


__all__ = [
    "SignatureType",
    "standard_signature",
    "riemann_hurwitz_genus",
    "GeneratingVector",
    "GeneratingVectorError",
    "WRONG_ORDERS",
    "PRODUCT_NOT_ONE",
    "DOES_NOT_GENERATE",
    "validate",
    "parse_vector",
    "sigma",
    "sigma0",
    "sigma1",
    "enumerate_vectors",
    "NormalForm",
    "normalize",
    "apply_moves",
    "GeometricSignature",
    "geometric_signature",
    "braid_move",
    "OrbitReport",
    "topological_orbits",
    "EssentialClass",
    "essential_classes",
]
