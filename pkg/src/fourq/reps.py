"""Complex and rational irreducible characters of D_2q.

Characters live on conjugacy classes and take values in Q(zeta_2q).  The
rational irreducibles are found by letting Gal(Q(zeta_2q)/Q) act on the rows
of the complex table, so nothing about the orbits is assumed up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from fourq.dihedral import (
    GroupElement,
    Subgroup,
    check_q,
    class_index,
    conjugacy_classes,
)
from fourq.errors import InvariantViolation, MismatchedGroupError
from fourq.kernel import CycNum, cyclotomic


@dataclass(frozen=True)
class Irrep:
    """A complex irreducible; ``values[j]`` is the character on class j."""

    q: int
    label: str
    index: int  # 1-based: V1..V4, then V_{k+4}
    degree: int
    values: tuple  # of CycNum, one per conjugacy class
    k: int | None = None  # rotation weight for the degree-2 family

    def __call__(self, g: GroupElement) -> CycNum:
        if g.q != self.q:
            raise MismatchedGroupError("element and representation from different groups")
        return self.values[class_index(self.q)[g]]


@dataclass(frozen=True)
class RationalIrrep:
    q: int
    label: str
    index: int  # 1..6
    constituents: tuple  # Irrep labels of the Galois orbit
    complex_degree: int  # d_V of any constituent
    schur_index: int = 1

    @property
    def field_degree(self) -> int:
        """k_i = [L_V : Q]; with Schur index one this is the orbit length."""
        return len(self.constituents)

    @property
    def degree(self) -> int:
        return self.schur_index * self.field_degree * self.complex_degree

    @property
    def multiplicity(self) -> int:
        """n_i = d_V / s_V."""
        n, rem = divmod(self.complex_degree, self.schur_index)
        if rem:
            raise InvariantViolation(f"d_V / s_V not integral for {self.label}")
        return n

    def leading(self, table: "CharacterTable") -> Irrep:
        return table.irrep(self.constituents[0])


@dataclass(frozen=True)
class CharacterTable:
    q: int
    classes: tuple
    irreps: tuple
    rational: tuple

    def irrep(self, label: str) -> Irrep:
        for v in self.irreps:
            if v.label == label:
                return v
        raise KeyError(label)

    def rational_irrep(self, label: str) -> RationalIrrep:
        for w in self.rational:
            if w.label == label:
                return w
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "classes": [
                {"representative": str(c.representative), "size": c.size} for c in self.classes
            ],
            "irreps": [
                {
                    "label": v.label,
                    "degree": v.degree,
                    "conductor": 2 * self.q,
                    "values": [[str(x) for x in val.lift(2 * self.q).coeffs] for val in v.values],
                }
                for v in self.irreps
            ],
            "rational": [
                {
                    "label": w.label,
                    "constituents": list(w.constituents),
                    "schur_index": w.schur_index,
                    "field_degree": w.field_degree,
                    "degree": w.degree,
                }
                for w in self.rational
            ],
        }


def _linear_characters(q: int) -> list[tuple[int, int]]:
    # (sign on s, sign on r) for V1..V4
    return [(1, 1), (-1, 1), (1, -1), (-1, -1)]


def _build_irreps(q: int) -> list[Irrep]:
    classes = conjugacy_classes(q)
    n = 2 * q
    out = []
    for idx, (ss, sr) in enumerate(_linear_characters(q), start=1):
        vals = []
        for c in classes:
            g = c.representative
            vals.append(CycNum.from_rational(ss ** g.flip * sr ** g.rot, n))
        out.append(Irrep(q, f"V{idx}", idx, 1, tuple(vals)))
    for k in range(1, q):
        vals = []
        for c in classes:
            g = c.representative
            if g.flip:
                vals.append(CycNum.from_rational(0, n))
            else:
                vals.append(cyclotomic(n, k * g.rot) + cyclotomic(n, -k * g.rot))
        out.append(Irrep(q, f"V{k + 4}", k + 4, 2, tuple(vals), k))
    return out


def _inner(q: int, classes, a: tuple, b: tuple) -> CycNum:
    total = CycNum.from_rational(0, 2 * q)
    for c, x, y in zip(classes, a, b):
        total = total + x * y.conjugate() * c.size
    return total


def verify_orthogonality(table: CharacterTable) -> None:
    order = 4 * table.q
    for i, u in enumerate(table.irreps):
        for j, v in enumerate(table.irreps):
            ip = _inner(table.q, table.classes, u.values, v.values)
            if ip != (order if i == j else 0):
                raise InvariantViolation(f"<{u.label}, {v.label}> = {ip}")
    if sum(v.degree ** 2 for v in table.irreps) != order:
        raise InvariantViolation("sum of squared degrees is not the group order")


def _galois_orbits(q: int, irreps: list[Irrep]) -> list[list[Irrep]]:
    n = 2 * q
    by_row = {v.values: v for v in irreps}
    units = [a for a in range(1, n) if gcd(a, n) == 1]
    seen: set[str] = set()
    orbits = []
    for v in irreps:
        if v.label in seen:
            continue
        orbit = []
        for a in units:
            image = tuple(x.galois(a) for x in v.values)
            w = by_row.get(image)
            if w is None:
                raise InvariantViolation(f"Galois image of {v.label} is not a character row")
            if w.label not in {u.label for u in orbit}:
                orbit.append(w)
        orbit.sort(key=lambda u: u.index)
        seen.update(u.label for u in orbit)
        orbits.append(orbit)
    return orbits


@lru_cache(maxsize=None)
def character_table(q: int) -> CharacterTable:
    """Build and verify the full table for D_2q (cached per q)."""
    check_q(q)
    classes = conjugacy_classes(q)
    irreps = _build_irreps(q)
    orbits = _galois_orbits(q, irreps)
    # W1..W4 are the linear characters; W5 contains V5 (odd k), W6 the even-k family.
    orbits.sort(key=lambda o: o[0].index)
    rational = tuple(
        RationalIrrep(q, f"W{i}", i, tuple(v.label for v in orbit), orbit[0].degree)
        for i, orbit in enumerate(orbits, start=1)
    )
    table = CharacterTable(q, classes, tuple(irreps), rational)
    verify_orthogonality(table)
    if len(rational) != 6:
        raise InvariantViolation(f"expected 6 rational irreducibles, found {len(rational)}")
    return table


def rational_irreducibles(q: int) -> tuple[RationalIrrep, ...]:
    return character_table(q).rational


def fixed_dim(v: Irrep, h: Subgroup) -> int:
    """dim V^H as the average of the character over H."""
    if v.q != h.q:
        raise MismatchedGroupError("representation and subgroup from different groups")
    return _fixed_dim(v.q, v.label, h.elements)


@lru_cache(maxsize=65536)
def _fixed_dim(q: int, label: str, elems: tuple) -> int:
    v = character_table(q).irrep(label)
    total = CycNum.from_rational(0, 2 * v.q)
    for g in elems:
        total = total + v(g)
    avg = total / len(elems)
    if not avg.is_rational():
        raise InvariantViolation(f"average of {v.label} over H is irrational: {avg}")
    frac = avg.to_fraction()
    if frac.denominator != 1 or frac < 0:
        raise InvariantViolation(f"dim {v.label}^H = {frac} is not a nonnegative integer")
    return int(frac)


def rational_fixed_dim(w: RationalIrrep, h: Subgroup) -> int:
    """d_{V_i}^H for the leading constituent of W_i (the same for every constituent)."""
    return fixed_dim(character_table(w.q).irrep(w.constituents[0]), h)
