"""Group-algebra decomposition of the Jacobian for a D_2q action.

Given a generating vector, compute the dimensions of the isotypical factors
B_1..B_6, quotient decompositions for subgroups, which factors are Jacobians
of quotients, the Chevalley-Weil multiplicities of the analytic
representation and the dimension of the associated Shimura family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from fourq.actions import GeneratingVector, GeometricSignature, geometric_signature, validate
from fourq.dihedral import Subgroup, all_subgroups, class_index, elements, subgroup_class
from fourq.errors import InvariantViolation
from fourq.kernel import CycNum, cyclotomic
from fourq.reps import Irrep, RationalIrrep, character_table, fixed_dim


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InvariantViolation(f"{what} = {x} is not an integer")
    return int(x)


def factor_dimension(w: RationalIrrep, gsig: GeometricSignature) -> int:
    """k_i (d (gamma - 1) + 1/2 sum_k (d - d^{G_k})), one term per branch point."""
    v = character_table(w.q).irrep(w.constituents[0])
    if v.index == 1:
        # B_1 is the Jacobian of S/G, of dimension gamma
        return gsig.genus
    d = v.degree
    total = Fraction(d * (gsig.genus - 1))
    for h in gsig.stabilizers:
        total += Fraction(d - fixed_dim(v, h), 2)
    dim = _as_int(w.field_degree * total, f"dim {w.label.replace('W', 'B')}")
    if dim < 0:
        raise InvariantViolation(f"negative factor dimension for {w.label}")
    return dim


def dimension_vector(v: GeneratingVector) -> tuple:
    gsig = geometric_signature(v)
    return tuple(factor_dimension(w, gsig) for w in character_table(v.q).rational)


# -- quotients -------------------------------------------------------------------


def quotient_exponents(h: Subgroup) -> tuple:
    """n_i^H = d_{V_i}^H / s_{V_i} for i = 1..6."""
    out = []
    for w in character_table(h.q).rational:
        d = fixed_dim(character_table(h.q).irrep(w.constituents[0]), h)
        out.append(_as_int(Fraction(d, w.schur_index), f"n_{w.index}^H"))
    return tuple(out)


def quotient_decomposition(v: GeneratingVector, h: Subgroup, dims: tuple | None = None) -> tuple[int, tuple]:
    """Genus of S/H and the exponents n_i^H of each B_i in J(S/H)."""
    dims = dimension_vector(v) if dims is None else dims
    exps = quotient_exponents(h)
    return sum(n * d for n, d in zip(exps, dims)), exps


@dataclass(frozen=True)
class Identification:
    factor: str  # "B4", ...
    subgroup: Subgroup  # class representative
    quotient_genus: int

    def to_json(self) -> dict:
        return {"factor": self.factor, "subgroup": str(self.subgroup), "quotient_genus": self.quotient_genus}


@lru_cache(maxsize=None)
def _subgroup_class_reps(q: int) -> tuple:
    reps, seen = [], set()
    for h in all_subgroups(q):
        if h.elements in seen:
            continue
        cls = subgroup_class(h)
        seen.update(cls.members)
        reps.append(cls.representative)
    return tuple(reps)


def identify_jacobian_factors(v: GeneratingVector, dims: tuple | None = None) -> list[Identification]:
    """Every (B_i, N) with d_{V_i}^N = s_{V_i} and d_{V_l}^N = 0 for the other nonzero B_l.

    The test depends only on the conjugacy class of N, so one subgroup per
    class is reported.
    """
    dims = dimension_vector(v) if dims is None else dims
    table = character_table(v.q)
    nonzero = [i for i, d in enumerate(dims) if d]
    out = []
    for h in _subgroup_class_reps(v.q):
        fixed = [fixed_dim(table.irrep(w.constituents[0]), h) for w in table.rational]
        for i in nonzero:
            w = table.rational[i]
            if fixed[i] == w.schur_index and all(fixed[l] == 0 for l in nonzero if l != i):
                genus, _ = quotient_decomposition(v, h, dims)
                out.append(Identification(f"B{i + 1}", h, genus))
    out.sort(key=lambda x: (x.factor, x.subgroup.order, x.subgroup.elements))
    return out


def admits(ids: list[Identification], factor: str, h: Subgroup) -> bool:
    """Whether ``h`` (up to conjugacy) is an identified witness for ``factor``."""
    cls = subgroup_class(h)
    return any(x.factor == factor and x.subgroup in cls for x in ids)


# -- Chevalley-Weil ------------------------------------------------------------------


def eigenvalue_counts(v: Irrep, c) -> list[int]:
    """N_alpha = multiplicity of exp(2 pi i alpha / m) as an eigenvalue of V(c).

    Projection onto the eigenspaces of a cyclic group of order m:
    N_alpha = (1/m) sum_j chi(c^j) zeta_m^(-alpha j).
    """
    m = c.order()
    out = []
    for alpha in range(m):
        acc = CycNum.from_rational(0, 2 * v.q)
        for j in range(m):
            acc = acc + v(c ** j) * cyclotomic(m, -alpha * j)
        val = acc / m
        if not val.is_rational():
            raise InvariantViolation(f"eigenvalue count for {v.label} is irrational")
        out.append(_as_int(val.to_fraction(), f"eigenvalue count for {v.label}"))
    return out


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class CWMultiplicities:
    q: int
    multiplicities: tuple  # (label, n_V) in table order

    def as_dict(self) -> dict:
        return dict(self.multiplicities)

    def total_dimension(self) -> int:
        table = character_table(self.q)
        return sum(n * table.irrep(label).degree for label, n in self.multiplicities)

    def to_json(self) -> dict:
        return {label: n for label, n in self.multiplicities}


def chevalley_weil(v: GeneratingVector, genus: int = 0) -> CWMultiplicities:
    """Multiplicity of each complex irreducible in the action on holomorphic 1-forms."""
    table = character_table(v.q)
    out = []
    for rep in table.irreps:
        if rep.index == 1:
            out.append((rep.label, genus))
            continue
        total = Fraction(rep.degree * (genus - 1))
        for c in v:
            m = c.order()
            for alpha, count in enumerate(eigenvalue_counts(rep, c)):
                if count:
                    total += count * _frac(Fraction(-alpha, m))
        n_v = _as_int(total, f"multiplicity of {rep.label}")
        if n_v < 0:
            raise InvariantViolation(f"negative multiplicity for {rep.label}")
        out.append((rep.label, n_v))
    return CWMultiplicities(v.q, tuple(out))


def analytic_character(cw: CWMultiplicities) -> tuple:
    """Character of the analytic representation, one value per conjugacy class."""
    table = character_table(cw.q)
    vals = []
    for j in range(len(table.classes)):
        acc = CycNum.from_rational(0, 2 * cw.q)
        for label, n in cw.multiplicities:
            if n:
                acc = acc + table.irrep(label).values[j] * n
        vals.append(acc)
    return tuple(vals)


def shimura_dimension(v: GeneratingVector, cw: CWMultiplicities | None = None) -> int:
    """(1 / 2|G|) sum_g [chi(g)^2 + chi(g^2)] for the analytic character chi."""
    cw = chevalley_weil(v) if cw is None else cw
    chi = analytic_character(cw)
    idx = class_index(v.q)
    total = CycNum.from_rational(0, 2 * v.q)
    for g in elements(v.q):
        total = total + chi[idx[g]] * chi[idx[g]] + chi[idx[g * g]]
    total = total / (2 * 4 * v.q)
    if not total.is_rational():
        raise InvariantViolation("Shimura dimension is irrational")
    return _as_int(total.to_fraction(), "Shimura dimension")


# -- report ------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorInfo:
    label: str
    n: int
    k: int
    dim: int


@dataclass(frozen=True)
class DecompositionReport:
    q: int
    vector: GeneratingVector
    factors: tuple  # FactorInfo for B1..B6
    sum_check: int
    identifications: tuple
    cw: CWMultiplicities
    cw_consistent: bool
    shimura_dim: int

    @property
    def dims(self) -> tuple:
        return tuple(f.dim for f in self.factors)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "vector": self.vector.to_json(),
            "factors": [{"label": f.label, "n": f.n, "k": f.k, "dim": f.dim} for f in self.factors],
            "sum_check": self.sum_check,
            "identifications": [x.to_json() for x in self.identifications],
            "cw": {"multiplicities": self.cw.to_json(), "total_dimension": self.cw.total_dimension(),
                   "consistent_with_factor_dims": self.cw_consistent},
            "shimura_dim": self.shimura_dim,
        }


def decompose(q: int, v: GeneratingVector) -> DecompositionReport:
    v = validate(v.elements, q)
    table = character_table(q)
    dims = dimension_vector(v)
    factors = tuple(
        FactorInfo(f"B{w.index}", w.multiplicity, w.field_degree, d) for w, d in zip(table.rational, dims)
    )
    cw = chevalley_weil(v)
    mult = cw.as_dict()
    consistent = all(f.dim == f.k * mult[w.constituents[0]] for f, w in zip(factors, table.rational))
    return DecompositionReport(
        q=q,
        vector=v,
        factors=factors,
        sum_check=sum(f.n * f.dim for f in factors),
        identifications=tuple(identify_jacobian_factors(v, dims)),
        cw=cw,
        cw_consistent=consistent,
        shimura_dim=shimura_dimension(v, cw),
    )
