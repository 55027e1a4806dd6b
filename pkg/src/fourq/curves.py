"""Algebraic models of the family y^2 = x(x^2q + c x^q + 1), c = 2(1+lambda)/(1-lambda).

Identities are checked exactly: a point map (x, y) -> (a(x), b(x) y) carries
y^2 = f(x) to y^2 = g(x) iff b^2 f - g(a) vanishes, which after clearing
denominators is a polynomial identity in x.  Coefficients live in
Q(zeta_n), in Q(zeta_n)(lambda) for the symbolic checks.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import mpmath
import numpy as np

from fourq.dihedral import check_q
from fourq.errors import InvalidParameterError, PoleError
from fourq.kernel import CycNum, Poly, RatFun, cyclotomic, poly_gcd
from fourq.report import Check, VerificationReport

#: Tolerance for numeric comparisons (root sets, numeric lambda classification).
TOLERANCE = 1e-9

LAMBDA_VAR = "lambda"


# -- lambda values ----------------------------------------------------------------


@dataclass(frozen=True)
class LambdaValue:
    """A parameter value: exact in some Q(zeta_n), or a floating complex number."""

    text: str
    exact: CycNum | None
    numeric: complex

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def value(self):
        return self.exact if self.exact is not None else self.numeric

    @classmethod
    def from_exact(cls, z: Any, text: str | None = None) -> "LambdaValue":
        z = z if isinstance(z, CycNum) else CycNum.from_rational(z)
        return cls(text if text is not None else format_value(z), z, complex(z))

    @classmethod
    def from_complex(cls, z: complex, text: str | None = None) -> "LambdaValue":
        return cls(text if text is not None else repr(z), None, complex(z))


_RAT = r"\d+(?:/\d+)?"
_PURE_IMAG = re.compile(rf"^(?P<sign>[+-]?)(?P<im>{_RAT})?\*?i$")
_GAUSS = re.compile(rf"^(?P<re>[+-]?{_RAT})(?:(?P<isign>[+-])(?P<im>{_RAT})?\*?i)?$")
_ZETA = re.compile(r"^zeta\(\s*(?P<n>\d+)\s*(?:,\s*(?P<k>-?\d+)\s*)?\)$")


def parse_lambda(text: str) -> LambdaValue:
    """Parse rationals ("1/3"), Gaussian rationals ("1/2-3i", "i"), roots of
    unity ("zeta(5,1)") exactly; anything else that reads as a decimal complex
    number ("0.3+0.1i") is kept numeric."""
    t = text.strip().replace(" ", "").lower()
    if not t:
        raise InvalidParameterError("empty lambda")
    m = _ZETA.match(t)
    if m:
        n = int(m.group("n"))
        if n < 1:
            raise InvalidParameterError("zeta conductor must be positive")
        z = cyclotomic(n, int(m.group("k") or 1))
        return LambdaValue(text, z, complex(z))
    m = _PURE_IMAG.match(t)
    if m:
        im = Fraction(m.group("im") or 1) * (-1 if m.group("sign") == "-" else 1)
        return LambdaValue.from_exact(_gaussian(Fraction(0), im), text)
    m = _GAUSS.match(t)
    if m:
        re_part = Fraction(m.group("re"))
        im = Fraction(0)
        if m.group("isign"):
            im = Fraction(m.group("im") or 1) * (-1 if m.group("isign") == "-" else 1)
        return LambdaValue.from_exact(_gaussian(re_part, im), text)
    try:
        z = complex(t.replace("i", "j"))
    except ValueError:
        raise InvalidParameterError(f"cannot parse lambda {text!r}") from None
    if not (cmath.isfinite(z)):
        raise InvalidParameterError(f"lambda must be finite, got {text!r}")
    return LambdaValue.from_complex(z, text)


def _gaussian(a: Fraction, b: Fraction) -> CycNum:
    if b == 0:
        return CycNum.from_rational(a)
    return CycNum.from_rational(a, 4) + cyclotomic(4, 1) * b


def format_value(z: Any) -> str:
    """Readable exact form: rationals plainly, Gaussian rationals as a+bi."""
    if isinstance(z, (int, Fraction)):
        return str(Fraction(z))
    if isinstance(z, complex):
        return repr(z)
    d = z.descend()
    if d.n == 1:
        return str(Fraction(d.num[0], d.den))
    if d.n == 4:
        a, b = d.coeffs
        im = "i" if abs(b) == 1 else f"{abs(b)}i"
        if a == 0:
            return ("-" if b < 0 else "") + im
        return f"{a}{'+' if b > 0 else '-'}{im}"
    return str(d)


def _json_value(z: Any) -> dict:
    c = complex(z)
    out = {"re": float(c.real), "im": float(c.imag)}
    if isinstance(z, CycNum):
        out["exact"] = format_value(z)
    return out


# -- generic field helpers (work on CycNum and complex alike) -------------------------


def _conj(z):
    return z.conjugate()


def _is_zero(z, tol: float = TOLERANCE) -> bool:
    if isinstance(z, CycNum):
        return z.is_zero()
    return abs(z) <= tol


def _eq(a, b, tol: float = TOLERANCE) -> bool:
    if isinstance(a, CycNum) and isinstance(b, CycNum):
        return a == b
    a, b = complex(a), complex(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


#: The anharmonic group acting on lambda.
S3_MAPS: dict[str, Callable] = {
    "identity": lambda z: z,
    "1/z": lambda z: 1 / z,
    "1-z": lambda z: 1 - z,
    "1/(1-z)": lambda z: 1 / (1 - z),
    "z/(z-1)": lambda z: z / (z - 1),
    "(z-1)/z": lambda z: (z - 1) / z,
}


def s3_orbit(z) -> list:
    return [fn(z) for fn in S3_MAPS.values()]


def j_invariant(z):
    """256 (z^2 - z + 1)^3 / (z^2 (z - 1)^2); z a number or a RatFun."""
    if not isinstance(z, RatFun) and (_is_zero(z) or _is_zero(z - 1)):
        raise InvalidParameterError("j is undefined at lambda = 0, 1")
    return 256 * (z * z - z + 1) ** 3 / (z * z * (z - 1) ** 2)


def j_ratfun() -> RatFun:
    return j_invariant(RatFun.gen(LAMBDA_VAR))


def sixth_roots() -> tuple[CycNum, CycNum]:
    """The primitive sixth roots of unity, the two non-real roots of z^3 = -1."""
    return cyclotomic(6, 1), cyclotomic(6, -1)


def _excluded_points() -> list[tuple[Any, str]]:
    g1, g2 = sixth_roots()
    degenerate = "excluded: degenerate (lambda in {0, 1})"
    extra = "excluded: extra automorphisms"
    return [
        (CycNum.from_rational(0), degenerate),
        (CycNum.from_rational(1), degenerate),
        (CycNum.from_rational(-1), extra),
        (CycNum.from_rational(Fraction(1, 2)), extra),
        (CycNum.from_rational(2), extra),
        (g1, extra),
        (g2, extra),
    ]


def admissibility(lam: LambdaValue) -> tuple[bool, str | None]:
    for point, tag in _excluded_points():
        if _eq(lam.value, point if lam.is_exact else complex(point)):
            return False, tag
    return True, None


# -- classification ------------------------------------------------------------------

#: The four anticonformal symmetries z -> T(conj z), T an involution of the
#: anharmonic group. The last is z/(z-1) composed with conjugation.
REAL_CONDITIONS: dict[str, Callable] = {
    "lambda = conj(lambda)": lambda w: w,
    "lambda = 1 - conj(lambda)": lambda w: 1 - w,
    "lambda = 1/conj(lambda)": lambda w: 1 / w,
    "lambda = conj(lambda)/(conj(lambda) - 1)": lambda w: w / (w - 1),
}

#: The variant conj/(1 - conj) of the fourth condition, kept as a diagnostic.
#: z/(1-z) is not an involution and the equation only holds at lambda = 0.
VERBATIM_FOURTH = ("lambda = conj(lambda)/(1 - conj(lambda))", lambda w: w / (1 - w))


def real_conditions(z) -> dict[str, bool]:
    w = _conj(z)
    out = {}
    for name, fn in REAL_CONDITIONS.items():
        try:
            out[name] = _eq(z, fn(w))
        except ZeroDivisionError:
            out[name] = False
    return out


def is_real_surface(z) -> bool:
    return any(real_conditions(z).values())


def _in_region(c: complex, tol: float = TOLERANCE) -> bool:
    return abs(c) <= 1 + tol and c.real <= 0.5 + tol


def fundamental_representative(z):
    """Orbit member in the closed region |z| <= 1, Re z <= 1/2.

    Ties (boundary points) are broken by smallest real part, then smallest
    imaginary part, after rounding to 12 digits.
    """
    members = s3_orbit(z)
    cands = [m for m in members if _in_region(complex(m))]
    if not cands:
        raise InvalidParameterError("no orbit member in the fundamental region")

    def key(m):
        c = complex(m)
        return (round(c.real, 12), round(c.imag, 12))

    return min(cands, key=key)


@dataclass(frozen=True)
class LambdaClassification:
    lam: LambdaValue
    admissible: bool
    excluded_tag: str | None
    real_surface: bool | None
    conditions: dict = field(default_factory=dict)
    verbatim_fourth: bool | None = None
    s3_orbit: tuple = ()
    fundamental: Any = None
    j: Any = None
    note: str | None = None

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.text,
            "exact": self.lam.is_exact,
            "admissible": self.admissible,
            "excluded": self.excluded_tag,
            "real_surface": self.real_surface,
            "conditions": self.conditions,
            "verbatim_fourth_condition": self.verbatim_fourth,
            "s3_orbit": [_json_value(z) for z in self.s3_orbit],
            "fundamental_representative": None if self.fundamental is None else _json_value(self.fundamental),
            "j": None if self.j is None else _json_value(self.j),
            "note": self.note,
        }


def classify_lambda(lam: LambdaValue | str) -> LambdaClassification:
    lam = parse_lambda(lam) if isinstance(lam, str) else lam
    admissible, tag = admissibility(lam)
    note = None if lam.is_exact else "numeric - classification approximate"
    z = lam.value
    if _is_zero(z) or _is_zero(z - 1):
        return LambdaClassification(lam, False, tag, None, note=note)
    conds = real_conditions(z)
    w = _conj(z)
    try:
        verbatim = _eq(z, VERBATIM_FOURTH[1](w))
    except ZeroDivisionError:
        verbatim = False
    return LambdaClassification(
        lam=lam,
        admissible=admissible,
        excluded_tag=tag,
        real_surface=any(conds.values()),
        conditions=conds,
        verbatim_fourth=verbatim,
        s3_orbit=tuple(s3_orbit(z)),
        fundamental=fundamental_representative(z),
        j=j_invariant(z),
        note=note,
    )


def moduli_field_bounds(lam: LambdaValue | str) -> dict:
    """Q(j(lambda)) <= field of moduli <= Q(lambda), with the two degrees."""
    lam = parse_lambda(lam) if isinstance(lam, str) else lam
    if not lam.is_exact:
        raise InvalidParameterError("field-of-moduli bounds need an exact lambda")
    j = j_invariant(lam.exact)
    return {
        "lambda": format_value(lam.exact),
        "j": format_value(j),
        "degree_Q_j": j.descend().degree_over_q(),
        "degree_Q_lambda": lam.exact.descend().degree_over_q(),
        "field_of_moduli_is_field_of_definition": True,
    }


def elliptic_quotient(lam: LambdaValue | str) -> dict:
    """The Legendre curve y^2 = x(x-1)(x-lambda) and its j-invariant."""
    lam = parse_lambda(lam) if isinstance(lam, str) else lam
    z = lam.value
    if _is_zero(z) or _is_zero(z - 1):
        raise InvalidParameterError("lambda must differ from 0 and 1")
    # x(x-1)(x-lambda) = x^3 - (1+lambda) x^2 + lambda x
    coeffs = [0, z, -(1 + z), 1]
    return {
        "curve": "y^2 = x(x-1)(x-lambda)",
        "coefficients": [_json_value(c) for c in coeffs],
        "j": j_invariant(z),
    }


# -- curve models ------------------------------------------------------------------


def coefficient_c(lam):
    """2(1+lambda)/(1-lambda) for a number or a RatFun in lambda."""
    if not isinstance(lam, RatFun) and _is_zero(lam - 1):
        raise InvalidParameterError("lambda = 1 is a pole of the curve coefficient")
    return 2 * (1 + lam) / (1 - lam)


def curve_polynomial(q: int, c) -> Poly:
    """x (x^2q + c x^q + 1)."""
    coeffs: list = [0] * (2 * q + 2)
    coeffs[1] = 1
    coeffs[q + 1] = c
    coeffs[2 * q + 1] = 1
    return Poly(coeffs, "x")


@dataclass(frozen=True)
class CurveModel:
    q: int
    lam: LambdaValue | None  # None for the symbolic model
    c: Any
    poly: Poly
    squarefree: bool
    warnings: tuple = ()

    def to_json(self) -> dict:
        if self.lam is None:
            coeffs = [str(x) for x in self.poly.coeffs]
            c = str(self.c)
        else:
            coeffs = [_json_value(x) for x in self.poly.coeffs]
            c = _json_value(self.c)
        return {
            "q": self.q,
            "lambda": None if self.lam is None else self.lam.text,
            "c": c,
            "equation": "y^2 = x(x^(2q) + c x^q + 1)",
            "coefficients": coeffs,
            "squarefree": self.squarefree,
            "warnings": list(self.warnings),
        }


def _numeric_squarefree(coeffs: list[complex], tol: float = 1e-7) -> bool:
    roots = np.roots(list(reversed(coeffs)))
    if len(roots) < 2:
        return True
    diffs = np.abs(roots[:, None] - roots[None, :]) + np.eye(len(roots)) * 1e9
    return bool(diffs.min() > tol)


def symbolic_squarefree(q: int) -> bool:
    """gcd(f, f') = 1 over Q(c) with c an indeterminate."""
    c = RatFun.gen("c")
    f = curve_polynomial(q, c)
    return poly_gcd(f, f.derivative()).degree == 0


def curve_model(q: int, lam: LambdaValue | str | None = None) -> CurveModel:
    check_q(q)
    if lam is None:
        c = coefficient_c(RatFun.gen(LAMBDA_VAR))
        f = curve_polynomial(q, c)
        return CurveModel(q, None, c, f, poly_gcd(f, f.derivative()).degree == 0)
    lam = parse_lambda(lam) if isinstance(lam, str) else lam
    c = coefficient_c(lam.value)
    f = curve_polynomial(q, c)
    admissible, tag = admissibility(lam)
    warnings = () if admissible else (f"lambda not admissible ({tag})",)
    if lam.is_exact:
        sqf = poly_gcd(f, f.derivative()).degree == 0
    else:
        sqf = _numeric_squarefree([complex(x) for x in f.coeffs])
    return CurveModel(q, lam, c, f, sqf, warnings)


# -- point maps ------------------------------------------------------------------------


@dataclass(frozen=True)
class PointMap:
    """(x, y) -> (a(x), b(x) y)."""

    a: RatFun
    b: RatFun

    def compose(self, inner: "PointMap") -> "PointMap":
        """``self o inner``: apply ``inner`` first."""
        return PointMap(self.a.compose(inner.a), self.b.compose(inner.a) * inner.b)

    def __pow__(self, e: int) -> "PointMap":
        out = identity_map()
        for _ in range(e):
            out = self.compose(out)
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointMap) and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __str__(self) -> str:
        return f"(x, y) -> ({self.a}, ({self.b}) * y)"


def _rf(p: Poly, d: Poly | None = None) -> RatFun:
    return RatFun(p, d)


def identity_map() -> PointMap:
    return PointMap(RatFun.gen("x"), RatFun(Poly.constant(1, "x")))


def map_residual(m: PointMap, source: Poly, target: Poly) -> Poly:
    """Numerator of b^2 source - target(a); zero iff m carries source to target."""
    p, r = m.a.num, m.a.den
    u, w = m.b.num, m.b.den
    deg = target.degree
    pk = [Poly.constant(1, "x")]
    rk = [Poly.constant(1, "x")]
    for _ in range(deg):
        pk.append(pk[-1] * p)
        rk.append(rk[-1] * r)
    comp = Poly((), "x")
    for k, coeff in enumerate(target.coeffs):
        if coeff != 0:
            comp = comp + (pk[k] * rk[deg - k]).scale(coeff)
    return (u * u * rk[deg]) * source - (w * w) * comp


def automorphism_maps(q: int) -> dict[str, PointMap]:
    """r(x, y) = (w_q x, w_2q y) and s(x, y) = (1/x, y / x^(q+1))."""
    n = 2 * q
    x = Poly.gen("x")
    r_map = PointMap(_rf(x.scale(cyclotomic(n, 2))), _rf(Poly.constant(cyclotomic(n, 1), "x")))
    s_map = PointMap(_rf(Poly.constant(1, "x"), x), _rf(Poly.constant(1, "x"), Poly.monomial(1, q + 1, "x")))
    return {"r": r_map, "s": s_map}


def _residual_check(name: str, residual: Poly) -> Check:
    return Check(name, residual.is_zero(), "0" if residual.is_zero() else str(residual))


def _map_check(name: str, got: PointMap, want: PointMap) -> Check:
    ok = got == want
    return Check(name, ok, "equal" if ok else f"{got} != {want}")


def verify_automorphisms(q: int) -> VerificationReport:
    """Exact checks over Q(zeta_2q)(lambda) that r and s act on the symbolic curve."""
    check_q(q)
    f = curve_model(q).poly
    maps = automorphism_maps(q)
    r_map, s_map = maps["r"], maps["s"]
    one = identity_map()
    sr = s_map.compose(r_map)
    n = 2 * q
    x = Poly.gen("x")
    expected_sr = PointMap(
        _rf(Poly.constant(1, "x"), x.scale(cyclotomic(n, 2))),
        _rf(Poly.constant(1, "x"), Poly.monomial(cyclotomic(n, 1), q + 1, "x")),
    )
    hyperelliptic = PointMap(RatFun.gen("x"), RatFun(Poly.constant(-1, "x")))
    checks = [
        _residual_check("r preserves the curve", map_residual(r_map, f, f)),
        _residual_check("s preserves the curve", map_residual(s_map, f, f)),
        _map_check("r^2q = 1", r_map ** n, one),
        Check("r^q != 1", r_map ** q != one, str(r_map ** q)),
        _map_check("r^q is the hyperelliptic involution", r_map ** q, hyperelliptic),
        _map_check("s^2 = 1", s_map ** 2, one),
        _map_check("(sr)^2 = 1", sr ** 2, one),
        _map_check("sr(x, y) = (1/(w_q x), y/(w_2q x^(q+1)))", sr, expected_sr),
    ]
    return VerificationReport(f"automorphisms q={q}", tuple(checks))


# -- covering map ----------------------------------------------------------------------


def covering_map(q: int, lam) -> RatFun:
    """lambda (z^2q - 2 z^q + 1) / (z^2q + 2 z^q + 1) in the variable z."""
    num = [0] * (2 * q + 1)
    den = [0] * (2 * q + 1)
    num[0], num[q], num[2 * q] = 1, -2, 1
    den[0], den[q], den[2 * q] = 1, 2, 1
    return RatFun(Poly(num, "z"), Poly(den, "z")) * lam


def _preimages_of_one(q: int, c: complex) -> list[complex]:
    """Roots of x^2q + c x^q + 1 via w^2 + c w + 1 = 0 and q-th roots of w."""
    with mpmath.workdps(30):
        cm = mpmath.mpc(c)
        disc = mpmath.sqrt(cm * cm - 4)
        out = []
        for w in ((-cm + disc) / 2, (-cm - disc) / 2):
            base = mpmath.root(w, q)
            for k in range(q):
                out.append(complex(base * mpmath.expjpi(mpmath.mpf(2 * k) / q)))
    return out


def _match_distance(a: list[complex], b: list[complex]) -> float:
    """Greedy nearest-neighbour matching distance between two equal-size point sets."""
    if len(a) != len(b):
        return float("inf")
    remaining = list(b)
    worst = 0.0
    for z in a:
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
        worst = max(worst, abs(remaining[k] - z))
        remaining.pop(k)
    return worst


def root_set_distance(q: int, lam: complex) -> float:
    c = complex(coefficient_c(lam))
    coeffs = [0j] * (2 * q + 1)
    coeffs[0], coeffs[q], coeffs[2 * q] = 1, c, 1
    roots = [complex(z) for z in np.roots(list(reversed(coeffs)))]
    return _match_distance(_preimages_of_one(q, c), roots)


def verify_covering_map(q: int, lam: LambdaValue | str) -> VerificationReport:
    check_q(q)
    lam = parse_lambda(lam) if isinstance(lam, str) else lam
    if not lam.is_exact:
        raise InvalidParameterError("the covering-map check needs an exact lambda")
    admissible, tag = admissibility(lam)
    if not admissible:
        raise InvalidParameterError(f"lambda not admissible ({tag})")
    n = 2 * q
    pi = covering_map(q, lam.exact)
    z = Poly.gen("z")
    rot = RatFun(z.scale(cyclotomic(n, 2)))
    inv = RatFun(Poly.constant(1, "z"), z)
    checks = [
        Check("Pi(w_2q^2 z) = Pi(z)", pi.compose(rot) == pi),
        Check("Pi(1/z) = Pi(z)", pi.compose(inv) == pi),
        Check("Pi(0) = lambda", pi(CycNum.from_rational(0)) == lam.exact),
        Check("Pi(oo) = lambda", pi.value_at_infinity() == lam.exact),
    ]
    bad = []
    for k in range(n):
        pt = cyclotomic(n, k)
        try:
            val = pi(pt)
            ok = k % 2 == 0 and val == 0
        except PoleError:
            ok = k % 2 == 1
        if not ok:
            bad.append(k)
    checks.append(Check("Pi(w_2q^k) = oo for odd k, 0 for even k", not bad, bad or None))
    dist = root_set_distance(q, complex(lam.exact))
    checks.append(Check("roots of x^2q + c x^q + 1 = Pi^-1(1)", dist <= TOLERANCE, dist))
    return VerificationReport(f"covering map q={q} lambda={lam.text}", tuple(checks))


# -- Wiman curve -----------------------------------------------------------------------


def wiman_map(q: int) -> PointMap:
    """(x, y) -> (-w_4q x, w_8q y)."""
    x = Poly.gen("x")
    return PointMap(RatFun(x.scale(-cyclotomic(4 * q, 1))), RatFun(Poly.constant(cyclotomic(8 * q, 1), "x")))


def wiman_check(q: int) -> VerificationReport:
    """y^2 = x(x^2q + 1) is carried to y^2 = x(x^2q - 1), exactly in Q(zeta_8q)."""
    check_q(q)
    source = curve_polynomial(q, 0)
    target = Poly([0, -1] + [0] * (2 * q - 1) + [1], "x")
    residual = map_residual(wiman_map(q), source, target)
    control = map_residual(identity_map(), source, target)
    checks = [
        _residual_check("(-w_4q x, w_8q y) maps y^2 = x(x^2q+1) onto y^2 = x(x^2q-1)", residual),
        Check("identity map does not (negative control)", not control.is_zero(), str(control)),
    ]
    return VerificationReport(f"wiman q={q}", tuple(checks))
