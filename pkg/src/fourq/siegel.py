"""Symplectic matrices, the Siegel-space action and invariant period-matrix families.

A 2g x 2g matrix M = (A B; C D) acts by Z -> (A + Z C)^-1 (B + Z D).  For
generators with C = 0 the fixed-point condition A^-1 (B + Z D) = Z is linear
in Z, namely A Z - Z D = B, and the invariant family is an exact nullspace
over the g(g+1)/2 symmetric coordinates.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from fourq.errors import (
    InvalidParameterError,
    InvariantViolation,
    NonlinearFixedPointUnsupported,
    SingularActionError,
)
from fourq.kernel import linalg as la
from fourq.report import Check, VerificationReport

Matrix = list[list[Fraction]]

# -- symplectic basics ------------------------------------------------------------------


def standard_j(g: int) -> Matrix:
    j = la.zeros(2 * g)
    for i in range(g):
        j[i][g + i] = Fraction(1)
        j[g + i][i] = Fraction(-1)
    return j


def blocks(m: Sequence[Sequence[Any]]) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    n = len(m)
    if n % 2 or any(len(row) != n for row in m):
        raise InvalidParameterError("expected a square matrix of even size")
    g = n // 2
    a = [list(row[:g]) for row in m[:g]]
    b = [list(row[g:]) for row in m[:g]]
    c = [list(row[:g]) for row in m[g:]]
    d = [list(row[g:]) for row in m[g:]]
    return a, b, c, d


def block_diag(a: Matrix, d: Matrix) -> Matrix:
    g = len(a)
    out = la.zeros(2 * g)
    for i in range(g):
        for j in range(g):
            out[i][j] = Fraction(a[i][j])
            out[g + i][g + j] = Fraction(d[i][j])
    return out


def is_symplectic(m: Sequence[Sequence[Any]]) -> tuple[bool, Matrix]:
    """(M^t J M == J, residual M^t J M - J)."""
    m = la.to_fraction_matrix(m)
    n = len(m)
    if n % 2 or any(len(row) != n for row in m):
        raise InvalidParameterError("expected a square matrix of even size")
    j = standard_j(n // 2)
    residual = la.matsub(la.matmul(la.matmul(la.transpose(m), j), m), j)
    return la.is_zero_matrix(residual), residual


def _is_identity(m: Matrix) -> bool:
    return m == la.identity(len(m))


def matrix_order(m: Matrix, bound: int = 100) -> int | None:
    p = la.to_fraction_matrix(m)
    for k in range(1, bound + 1):
        if _is_identity(p):
            return k
        p = la.matmul(p, m)
    return None


# -- bundled data --------------------------------------------------------------------------


def _load_bundled() -> dict:
    text = resources.files("fourq.data").joinpath("symplectic_q5.json").read_text(encoding="utf-8")
    return json.loads(text)


def symplectic_rep_q5() -> tuple[Matrix, Matrix]:
    """(rho(r), rho(s)) for D_10 in genus 5, checked before being returned."""
    data = _load_bundled()
    r_blk = la.to_fraction_matrix(data["R"])
    s_blk = la.to_fraction_matrix(data["S"])
    rho_r = block_diag(r_blk, la.inverse(la.transpose(r_blk)))
    rho_s = block_diag(s_blk, la.transpose(s_blk))
    problems = [c.name for c in generator_checks(rho_r, rho_s, 5).checks if not c.passed]
    if problems:
        raise InvariantViolation(f"bundled symplectic data fails: {problems}")
    return rho_r, rho_s


def generator_checks(rho_r: Matrix, rho_s: Matrix, q: int) -> VerificationReport:
    n = 2 * q
    one = la.identity(len(rho_r))
    sr = la.matmul(rho_s, rho_r)
    checks = [
        Check("rho(r) symplectic", is_symplectic(rho_r)[0]),
        Check("rho(s) symplectic", is_symplectic(rho_s)[0]),
        Check(f"rho(r) has order {n}", matrix_order(rho_r, n) == n, matrix_order(rho_r, n)),
        Check("rho(s) has order 2", matrix_order(rho_s, 2) == 2, matrix_order(rho_s, 2)),
        Check("(rho(s) rho(r))^2 = 1", la.matmul(sr, sr) == one),
        Check(
            "rho(s) rho(r) rho(s) = rho(r)^-1",
            la.matmul(la.matmul(rho_s, rho_r), rho_s) == la.inverse(rho_r),
        ),
    ]
    return VerificationReport(f"symplectic generators q={q}", tuple(checks))


# -- generator files ------------------------------------------------------------------------


def _parse_matrix(raw: Any, size: int) -> Matrix:
    if raw and isinstance(raw[0], list):
        rows = raw
    else:
        if len(raw) != size * size:
            raise InvalidParameterError(f"flat matrix needs {size * size} entries, got {len(raw)}")
        rows = [raw[i * size : (i + 1) * size] for i in range(size)]
    try:
        m = [[Fraction(str(x)) for x in row] for row in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"bad matrix entry: {exc}") from None
    if len(m) != size or any(len(row) != size for row in m):
        raise InvalidParameterError(f"matrix is not {size} x {size}")
    return m


def load_generators(path: str | Path) -> tuple[int, list[Matrix]]:
    """Read {"g": g, "matrices": [...]}; each matrix nested rows or flat row-major."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidParameterError(f"cannot read generator file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"generator file is not valid JSON: {exc}") from None
    try:
        g = int(data["g"])
        mats = [_parse_matrix(m, 2 * g) for m in data["matrices"]]
    except (KeyError, TypeError) as exc:
        raise InvalidParameterError(f"generator file missing field: {exc}") from None
    if not mats:
        raise InvalidParameterError("generator file lists no matrices")
    return g, mats


# -- the action ---------------------------------------------------------------------------


def siegel_action(m: Sequence[Sequence[Any]], z):
    """(A + Z C)^-1 (B + Z D).

    ``z`` may be a numpy array (numeric) or a nested list of Fractions (exact).
    """
    a, b, c, d = blocks(m)
    if isinstance(z, np.ndarray):
        fa, fb, fc, fd = (np.array(x, dtype=float) for x in (a, b, c, d))
        left = fa + z @ fc
        if abs(np.linalg.det(left)) < 1e-12:
            raise SingularActionError("A + Z C is singular")
        return np.linalg.solve(left, fb + z @ fd)
    left = la.matadd(a, la.matmul(z, c))
    try:
        inv = la.inverse(left)
    except ZeroDivisionError:
        raise SingularActionError("A + Z C is singular") from None
    return la.matmul(inv, la.matadd(b, la.matmul(z, d)))


#: Variants of how a generator enters the fixed-point equation.
CONVENTIONS = ("as_written", "inverse", "transpose", "inverse_transpose")


def apply_convention(m: Matrix, convention: str) -> Matrix:
    if convention == "as_written":
        return la.to_fraction_matrix(m)
    if convention == "inverse":
        return la.inverse(m)
    if convention == "transpose":
        return la.transpose(m)
    if convention == "inverse_transpose":
        return la.inverse(la.transpose(m))
    raise InvalidParameterError(f"unknown convention {convention!r}")


# -- invariant families ---------------------------------------------------------------------


def sym_coordinates(g: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g) for j in range(i, g)]


def sym_matrix(g: int, vec: Sequence[Any]) -> Matrix:
    out = la.zeros(g)
    for (i, j), x in zip(sym_coordinates(g), vec):
        out[i][j] = out[j][i] = Fraction(x)
    return out


def sym_vector(m: Matrix) -> list[Fraction]:
    return [Fraction(m[i][j]) for i, j in sym_coordinates(len(m))]


def fixed_point_residual(m: Matrix, z: Matrix) -> Matrix:
    """A Z - Z D - B (zero iff Z is fixed), for a generator with C = 0."""
    a, b, c, d = blocks(m)
    if not la.is_zero_matrix(c):
        raise NonlinearFixedPointUnsupported("generator has a nonzero C block")
    return la.matsub(la.matsub(la.matmul(a, z), la.matmul(z, d)), b)


@dataclass(frozen=True)
class SiegelFamily:
    g: int
    basis: tuple  # exact symmetric matrices
    params: tuple
    convention: str
    offset: Any = None  # particular solution when some B block is nonzero

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def member(self, coeffs: Sequence[Any]) -> Matrix:
        out = la.zeros(self.g) if self.offset is None else [row[:] for row in self.offset]
        for t, b in zip(coeffs, self.basis):
            out = la.matadd(out, la.scalar_mul(Fraction(t), b))
        return out

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "basis": [[[str(x) for x in row] for row in b] for b in self.basis],
            "params": list(self.params),
            "convention": self.convention,
            "offset": None if self.offset is None else [[str(x) for x in row] for row in self.offset],
        }


def invariant_family(gens: Sequence[Matrix], convention: str = "as_written") -> SiegelFamily:
    """All symmetric Z with A Z - Z D = B for every generator (C = 0 required)."""
    if not gens:
        raise InvalidParameterError("need at least one generator")
    g = len(gens[0]) // 2
    coords = sym_coordinates(g)
    mats = [apply_convention(la.to_fraction_matrix(m), convention) for m in gens]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for m in mats:
        a, b, c, d = blocks(m)
        if not la.is_zero_matrix(c):
            raise NonlinearFixedPointUnsupported(
                "nonlinear fixed-point unsupported: a generator has a nonzero C block"
            )
        images = []
        for k in range(len(coords)):
            e = sym_matrix(g, [int(i == k) for i in range(len(coords))])
            images.append(la.matsub(la.matmul(a, e), la.matmul(e, d)))
        for i in range(g):
            for j in range(g):
                rows.append([img[i][j] for img in images])
                rhs.append(Fraction(b[i][j]))
    offset = None
    if any(rhs):
        sol = la.solve_exact(rows, rhs)
        if sol is None:
            return SiegelFamily(g, (), (), convention, offset=None)
        offset = sym_matrix(g, sol)
    basis = tuple(sym_matrix(g, v) for v in la.nullspace(rows, len(coords)))
    params = tuple(f"t{k + 1}" for k in range(len(basis)))
    return SiegelFamily(g, basis, params, convention, offset)


# -- the published three-parameter family ---------------------------------------------------

#: Entry (i, j) -> coefficients of (u, v, w), exactly as displayed for g = 5.
PAPER_FAMILY_ENTRIES: dict[tuple[int, int], tuple] = {
    (0, 0): (4, 2, 0),  # 2(u + v + u)
    (0, 1): (-1, 0, -1),
    (0, 2): (0, -2, 0),
    (0, 3): (-1, -1, -1),
    (0, 4): (1, -1, 0),
    (1, 1): (Fraction(5, 4), -1, Fraction(-1, 2)),  # -v - w/2 + 5u/4
    (1, 2): (Fraction(-1, 2), 1, 0),
    (1, 3): (Fraction(1, 2), 0, 1),
    (1, 4): (-1, 1, 0),
    (2, 2): (1, 0, 0),
    (2, 3): (0, 1, 0),
    (2, 4): (0, 0, 1),
    (3, 3): (1, 0, 0),
    (3, 4): (0, 0, -1),
    (4, 4): (2, -2, -2),
}

#: The two entries that differ in the invariant family reconstructed here.
CORRECTED_ENTRIES: dict[tuple[int, int], tuple] = {
    (0, 0): (2, 2, 2),  # 2(u + v + w)
    (1, 1): (Fraction(5, 4), -1, Fraction(1, 2)),  # -v + w/2 + 5u/4
}


def family_matrices(entries: dict[tuple[int, int], tuple]) -> tuple[Matrix, Matrix, Matrix]:
    """(M_u, M_v, M_w) with Z = u M_u + v M_v + w M_w."""
    out = []
    for k in range(3):
        m = la.zeros(5)
        for (i, j), coeffs in entries.items():
            m[i][j] = m[j][i] = Fraction(coeffs[k])
        out.append(m)
    return tuple(out)


def paper_family() -> tuple[Matrix, Matrix, Matrix]:
    return family_matrices(PAPER_FAMILY_ENTRIES)


def corrected_family() -> tuple[Matrix, Matrix, Matrix]:
    return family_matrices({**PAPER_FAMILY_ENTRIES, **CORRECTED_ENTRIES})


def _flat(m: Matrix) -> list[Fraction]:
    return sym_vector(m)


def span_comparison(computed: Sequence[Matrix], other: Sequence[Matrix]) -> dict:
    """Exact ranks of each set and of their union, plus the defect of each ``other``."""
    a = [_flat(m) for m in computed]
    b = [_flat(m) for m in other]
    rank_a = la.rank(a) if a else 0
    rank_b = la.rank(b) if b else 0
    rank_ab = la.rank(a + b) if a or b else 0
    defects = []
    for m, vec in zip(other, b):
        inside = la.rank(a + [vec]) == rank_a if a else not any(vec)
        defects.append(None if inside else [str(x) for x in vec])
    return {
        "rank_computed": rank_a,
        "rank_other": rank_b,
        "rank_union": rank_ab,
        "equal": rank_a == rank_b == rank_ab,
        "defects": defects,
    }


def _fixed_by_all(m: Matrix, gens: Sequence[Matrix], convention: str) -> tuple[bool, list]:
    bad = []
    for k, gen in enumerate(gens):
        res = fixed_point_residual(apply_convention(gen, convention), m)
        if not la.is_zero_matrix(res):
            bad.append(k)
    return not bad, bad


def convention_search(gens: Sequence[Matrix] | None = None) -> dict:
    """For each convention: family dimension, which of M_u, M_v, M_w are fixed,
    and whether the published span matches.

    The chosen convention is the unique one fixing the whole published family;
    if none does, the one fixing the most of its basis matrices, ties broken
    in favour of the literal formula ("as_written").
    """
    gens = list(symplectic_rep_q5()) if gens is None else list(gens)
    paper = paper_family()
    rows = {}
    for conv in CONVENTIONS:
        fam = invariant_family(gens, conv)
        fixed = [_fixed_by_all(m, gens, conv)[0] for m in paper]
        cmp = span_comparison(fam.basis, paper)
        rows[conv] = {"dimension": fam.dimension, "paper_basis_fixed": fixed, "span_equal": cmp["equal"]}
    full = [c for c in CONVENTIONS if rows[c]["span_equal"]]
    if len(full) == 1:
        chosen, reason = full[0], "unique convention fixing the published family"
    else:
        best = max(sum(rows[c]["paper_basis_fixed"]) for c in CONVENTIONS)
        tied = [c for c in CONVENTIONS if sum(rows[c]["paper_basis_fixed"]) == best]
        chosen = "as_written" if "as_written" in tied else tied[0]
        reason = (
            f"no convention fixes the published family; {best} of 3 basis matrices fixed at best"
            if not full
            else "several conventions fix the published family"
        )
    return {"variants": rows, "chosen": chosen, "reason": reason}


def verify_paper_family(gens: Sequence[Matrix] | None = None) -> VerificationReport:
    """Compare the published (u, v, w) family with the computed invariant family.

    The published display is checked as printed.  The corrected family and
    the entries where it differs are reported alongside as diagnostics.
    """
    gens = list(symplectic_rep_q5()) if gens is None else list(gens)
    search = convention_search(gens)
    conv = search["chosen"]
    fam = invariant_family(gens, conv)
    paper = paper_family()
    corrected = corrected_family()
    names = ("M_u", "M_v", "M_w")
    checks = [Check(f"{n} symmetric", m == la.transpose(m)) for n, m in zip(names, paper)]
    for n, m in zip(names, paper):
        ok, bad = _fixed_by_all(m, gens, conv)
        checks.append(Check(f"{n} fixed by every generator", ok, None if ok else {"failing_generators": bad}))
    cmp = span_comparison(fam.basis, paper)
    checks.append(Check("published span equals computed span", cmp["equal"], cmp))
    checks.append(Check("paper entry (2,2) coefficient of u is 5/4", paper[0][1][1] == Fraction(5, 4)))
    corr_cmp = span_comparison(fam.basis, corrected)
    diagnostics = {
        "convention": search,
        "computed_dimension": fam.dimension,
        "corrected_family": {
            "entries": {f"({i + 1},{j + 1})": [str(c) for c in v] for (i, j), v in CORRECTED_ENTRIES.items()},
            "published": {
                f"({i + 1},{j + 1})": [str(c) for c in PAPER_FAMILY_ENTRIES[(i, j)]] for (i, j) in CORRECTED_ENTRIES
            },
            "span_equal": corr_cmp["equal"],
            "all_fixed": all(_fixed_by_all(m, gens, conv)[0] for m in corrected),
        },
    }
    return VerificationReport("siegel family q=5", tuple(checks), diagnostics)


# -- positive-definite witnesses ---------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    params: tuple  # t_k with Z = i * sum t_k M_k (plus offset)
    imag: Matrix  # Im Z
    minors: tuple

    def z_numeric(self) -> np.ndarray:
        return 1j * np.array([[float(x) for x in row] for row in self.imag])

    def to_json(self) -> dict:
        return {
            "params": [f"{t}*i" for t in self.params],
            "Z": [[f"{x}*i" for x in row] for row in self.imag],
            "minors": [str(m) for m in self.minors],
        }


def positive_definite_certificate(m: Matrix) -> tuple[bool, tuple]:
    """Sylvester's criterion with exact leading principal minors."""
    minors = tuple(la.leading_principal_minors(m))
    return all(x > 0 for x in minors), minors


DEFAULT_BUDGET = 5000


def sample_siegel_point(fam: SiegelFamily, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Witness | None:
    """Search t in Q^d with Im Z = sum t_k M_k positive definite (Z purely imaginary).

    Small integer vectors are tried first in order of max-norm, then seeded
    random rationals; returns None when the budget runs out.
    """
    if not fam.basis:
        return None
    d = fam.dimension
    tried = 0
    radius = 1
    seen: set = set()
    while tried < budget and radius <= 4:
        for t in itertools.product(range(-radius, radius + 1), repeat=d):
            if max(abs(x) for x in t) != radius or t in seen:
                continue
            seen.add(t)
            tried += 1
            ok, minors = positive_definite_certificate(_combo(fam, t))
            if ok:
                return Witness(tuple(Fraction(x) for x in t), _combo(fam, t), minors)
            if tried >= budget:
                return None
        radius += 1
    rng = random.Random(seed)
    while tried < budget:
        t = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 10)) for _ in range(d))
        tried += 1
        ok, minors = positive_definite_certificate(_combo(fam, t))
        if ok:
            return Witness(t, _combo(fam, t), minors)
    return None


def _combo(fam: SiegelFamily, t: Sequence[Any]) -> Matrix:
    out = la.zeros(fam.g)
    for x, b in zip(t, fam.basis):
        out = la.matadd(out, la.scalar_mul(Fraction(x), b))
    return out
