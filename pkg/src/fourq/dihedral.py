"""The dihedral group D_2q = <r, s | r^2q = s^2 = (sr)^2 = 1> of order 4q.

Elements are kept in the normal form ``s^a r^b`` (a in {0, 1}, 0 <= b < 2q)
and carry their ambient q; mixing groups is an error.  Subgroups are explicit
element sets, which is exact and cheap at these orders.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from fourq.errors import InvalidParameterError, MismatchedGroupError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def check_q(q: int) -> int:
    """Return q if it is a prime >= 5, else raise InvalidParameterError."""
    if not isinstance(q, int) or isinstance(q, bool):
        raise InvalidParameterError(f"q must be an integer, got {q!r}")
    if q < 5 or not is_prime(q):
        raise InvalidParameterError(f"q must be a prime >= 5, got {q}")
    return q


@dataclass(frozen=True, order=True)
class GroupElement:
    """``s^flip r^rot`` in D_2q."""

    flip: int
    rot: int
    q: int = field(compare=True)

    def __post_init__(self):
        if self.flip not in (0, 1):
            raise ValueError("reflection flag must be 0 or 1")
        if not 0 <= self.rot < 2 * self.q:
            object.__setattr__(self, "rot", self.rot % (2 * self.q))

    @property
    def n(self) -> int:
        """Order of r, i.e. 2q."""
        return 2 * self.q

    @property
    def code(self) -> int:
        """Dense index in range(4q): rotations first, then reflections."""
        return self.flip * self.n + self.rot

    @classmethod
    def from_code(cls, code: int, q: int) -> "GroupElement":
        return cls(code // (2 * q), code % (2 * q), q)

    def is_reflection(self) -> bool:
        return self.flip == 1

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.q != self.q:
            raise MismatchedGroupError(f"cannot multiply elements of D_{2 * self.q} and D_{2 * other.q}")
        # r^b s = s r^-b
        rot = (-self.rot if other.flip else self.rot) + other.rot
        return GroupElement(self.flip ^ other.flip, rot % self.n, self.q)

    def inverse(self) -> "GroupElement":
        if self.flip:
            return self
        return GroupElement(0, -self.rot % self.n, self.q)

    def __pow__(self, e: int) -> "GroupElement":
        if self.flip:
            return self if e % 2 else identity(self.q)
        return GroupElement(0, (self.rot * e) % self.n, self.q)

    def conjugate_by(self, x: "GroupElement") -> "GroupElement":
        """``x^-1 self x``."""
        return x.inverse() * self * x

    def order(self) -> int:
        if self.flip:
            return 2
        return self.n // math.gcd(self.rot, self.n)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<{format_element(self)} in D_{2 * self.q}>"


def identity(q: int) -> GroupElement:
    return GroupElement(0, 0, q)


def r(q: int, k: int = 1) -> GroupElement:
    return GroupElement(0, k % (2 * q), q)


def s(q: int, k: int = 0) -> GroupElement:
    """The reflection ``s r^k``."""
    return GroupElement(1, k % (2 * q), q)


def elements(q: int) -> list[GroupElement]:
    return [GroupElement.from_code(c, q) for c in range(4 * q)]


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def order(g: GroupElement) -> int:
    return g.order()


def product(elems: Iterable[GroupElement]) -> GroupElement:
    it = iter(elems)
    acc = next(it)
    for g in it:
        acc = acc * g
    return acc


# -- text syntax -------------------------------------------------------------

_ELEMENT_RE = re.compile(
    r"^(?:(?P<s>s)(?:\^(?P<sexp>-?\d+))?)?\s*\*?\s*(?:(?P<r>r)(?:\^\(?(?P<rexp>-?\d+)\)?)?)?$"
)


def format_element(g: GroupElement) -> str:
    if g.flip == 0 and g.rot == 0:
        return "1"
    parts = []
    if g.flip:
        parts.append("s")
    if g.rot:
        parts.append("r" if g.rot == 1 else f"r^{g.rot}")
    return " ".join(parts)


def parse_element(text: str, q: int) -> GroupElement:
    """Parse ``"s^a r^b"`` style text such as ``"s r^3"``, ``"r^7"``, ``"1"``."""
    t = text.strip()
    if t in ("1", "e", "id"):
        return identity(q)
    m = _ELEMENT_RE.match(t)
    if not m or not (m.group("s") or m.group("r")):
        raise InvalidParameterError(f"cannot parse group element {text!r}")
    flip = 0
    if m.group("s"):
        flip = int(m.group("sexp") or 1) % 2
    rot = 0
    if m.group("r"):
        rot = int(m.group("rexp") or 1)
    return GroupElement(flip, rot % (2 * q), q)


def parse_elements(text: str, q: int) -> tuple[GroupElement, ...]:
    """Comma-separated list of elements; whitespace-insensitive."""
    return tuple(parse_element(part, q) for part in text.split(","))


# -- conjugacy classes ---------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    representative: GroupElement
    elements: frozenset

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements


@lru_cache(maxsize=None)
def conjugacy_classes(q: int) -> tuple[ConjugacyClass, ...]:
    """All classes by brute-force conjugation orbits.

    Ordered identity, reflections (even then odd), r^q, then the rotation
    pairs {r^t, r^-t} for t = 1..q-1; representatives have minimal exponent.
    """
    check_q(q)
    remaining = set(elements(q))
    group = elements(q)
    classes = []
    while remaining:
        g = min(remaining, key=lambda x: (x.flip, x.rot))
        orbit = frozenset(g.conjugate_by(x) for x in group)
        remaining -= orbit
        classes.append(ConjugacyClass(g, orbit))

    def key(c: ConjugacyClass):
        g = c.representative
        if g.flip:
            return (1, g.rot)
        if g.rot == 0:
            return (0, 0)
        if g.rot == q:
            return (2, 0)
        return (3, g.rot)

    return tuple(sorted(classes, key=key))


def class_index(q: int) -> dict[GroupElement, int]:
    return _class_index(q)


@lru_cache(maxsize=None)
def _class_index(q: int) -> dict[GroupElement, int]:
    return {g: i for i, c in enumerate(conjugacy_classes(q)) for g in c.elements}


# -- subgroups ---------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    q: int
    elements: tuple  # sorted GroupElements
    gens: tuple = field(compare=False, default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def conjugate(self, x: GroupElement) -> "Subgroup":
        return Subgroup(self.q, tuple(sorted(g.conjugate_by(x) for g in self.elements)),
                        tuple(g.conjugate_by(x) for g in self.gens))

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def __str__(self) -> str:
        gens = [g for g in self.gens if g.flip or g.rot]
        if not gens:
            return "<1>" if self.order == 1 else "<" + ", ".join(map(str, self.elements)) + ">"
        return "<" + ", ".join(map(str, gens)) + ">"


def subgroup_generated(gens: Iterable[GroupElement]) -> Subgroup:
    gens = tuple(gens)
    if not gens:
        raise InvalidParameterError("need at least one generator")
    q = gens[0].q
    for g in gens:
        if g.q != q:
            raise MismatchedGroupError("generators from different groups")
    seen = {identity(q)}
    frontier = [identity(q)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    assert (4 * q) % len(seen) == 0, "Lagrange violated"
    return Subgroup(q, tuple(sorted(seen)), gens)


def generates_group(gens: Iterable[GroupElement]) -> bool:
    gens = tuple(gens)
    return len(subgroup_generated(gens)) == 4 * gens[0].q


@lru_cache(maxsize=None)
def all_subgroups(q: int) -> tuple[Subgroup, ...]:
    """Every subgroup: cyclic <r^d> and dihedral <r^d, s r^t> for d | 2q, 0 <= t < d."""
    check_q(q)
    n = 2 * q
    found: dict[tuple, Subgroup] = {}
    for d in (d for d in range(1, n + 1) if n % d == 0):
        cyc = subgroup_generated([r(q, d)])
        found.setdefault(cyc.elements, cyc)
        for t in range(d):
            dih = subgroup_generated([r(q, d), s(q, t)])
            found.setdefault(dih.elements, dih)
    return tuple(sorted(found.values(), key=lambda h: (h.order, h.elements)))


@dataclass(frozen=True)
class SubgroupClass:
    """Conjugacy class of a subgroup; ``representative`` has the smallest element tuple."""

    representative: Subgroup
    members: frozenset  # of element tuples

    def __contains__(self, h: Subgroup) -> bool:
        return h.elements in self.members

    def label(self) -> str:
        return str(self.representative)


def subgroup_class(h: Subgroup) -> SubgroupClass:
    cls = _subgroup_class(h.q, h.elements)
    if cls.representative.elements == h.elements and cls.representative.gens != h.gens:
        return SubgroupClass(h, cls.members)
    return cls


@lru_cache(maxsize=4096)
def _subgroup_class(q: int, elems: tuple) -> SubgroupClass:
    h = _canonical_subgroup(q, elems)
    conj = {}
    for x in elements(h.q):
        c = h.conjugate(x)
        conj.setdefault(c.elements, c)
    rep = _canonical_subgroup(q, min(conj))
    return SubgroupClass(rep, frozenset(conj))


def _canonical_subgroup(q: int, elems: tuple) -> Subgroup:
    """The subgroup with these elements, with generators from all_subgroups."""
    for h in all_subgroups(q):
        if h.elements == elems:
            return h
    raise ValueError("not a subgroup")


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class GroupAutomorphism:
    """r -> r^a (a a unit mod 2q), s -> s r^b."""

    q: int
    a: int
    b: int

    def __post_init__(self):
        n = 2 * self.q
        if math.gcd(self.a, n) != 1:
            raise ValueError(f"r -> r^{self.a} is not bijective")
        object.__setattr__(self, "a", self.a % n)
        object.__setattr__(self, "b", self.b % n)

    @property
    def image_r(self) -> GroupElement:
        return r(self.q, self.a)

    @property
    def image_s(self) -> GroupElement:
        return s(self.q, self.b)

    def __call__(self, g: GroupElement) -> GroupElement:
        rot = r(self.q, self.a * g.rot)
        return self.image_s * rot if g.flip else rot

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self o other`` (apply ``other`` first)."""
        return GroupAutomorphism(self.q, self.a * other.a, self.b + self.a * other.b)

    def __str__(self) -> str:
        return f"r -> {self.image_r}, s -> {self.image_s}"


@lru_cache(maxsize=None)
def enumerate_automorphisms(q: int) -> tuple[GroupAutomorphism, ...]:
    check_q(q)
    n = 2 * q
    return tuple(
        GroupAutomorphism(q, a, b) for a in range(1, n) if math.gcd(a, n) == 1 for b in range(n)
    )


def automorphism_generators(q: int) -> tuple[GroupAutomorphism, ...]:
    """A small generating set of Aut(G): r -> r^a for each unit a, and s -> s r."""
    n = 2 * q
    gens = [GroupAutomorphism(q, a, 0) for a in range(1, n) if math.gcd(a, n) == 1]
    gens.append(GroupAutomorphism(q, 1, 1))
    return tuple(gens)
