import random
from fractions import Fraction

import pytest
import sympy

from fourq.curves import (
    S3_MAPS,
    LambdaValue,
    admissibility,
    automorphism_maps,
    classify_lambda,
    coefficient_c,
    covering_map,
    curve_model,
    format_value,
    fundamental_representative,
    is_real_surface,
    j_invariant,
    j_ratfun,
    map_residual,
    moduli_field_bounds,
    parse_lambda,
    real_conditions,
    root_set_distance,
    symbolic_squarefree,
    verify_automorphisms,
    verify_covering_map,
    wiman_check,
)
from fourq.errors import InvalidParameterError
from fourq.kernel import CycNum, RatFun, cyclotomic

I = cyclotomic(4, 1)


def gauss(a, b):
    return CycNum.from_rational(Fraction(a), 4) + I * Fraction(b)


def _x_sym():
    return sympy.symbols("x c z")


def _reduce(expr, z, n):
    """Reduce a polynomial in z modulo the n-th cyclotomic polynomial."""
    phi = sympy.cyclotomic_poly(n, z)
    return sympy.rem(sympy.expand(expr), phi, z)


# -- j and the anharmonic group -----------------------------------------------------


def test_j_is_s3_invariant_as_rational_function():
    j = j_ratfun()
    lam = RatFun.gen("lambda")
    for name, fn in S3_MAPS.items():
        assert j.compose(fn(lam)) == j, name


def test_j_invariance_sympy_oracle():
    lam = sympy.Symbol("lam")
    j = 256 * (lam**2 - lam + 1) ** 3 / (lam**2 * (lam - 1) ** 2)
    for t in (1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam):
        assert sympy.simplify(j.subs(lam, t) - j) == 0


def test_excluded_points_j_values():
    assert j_invariant(CycNum.from_rational(-1)) == 1728
    assert j_invariant(CycNum.from_rational(Fraction(1, 2))) == 1728
    assert j_invariant(CycNum.from_rational(2)) == 1728
    assert j_invariant(cyclotomic(6, 1)) == 0
    assert j_invariant(cyclotomic(6, -1)) == 0
    for text in ("-1", "1/2", "2", "zeta(6,1)", "zeta(6,-1)"):
        ok, tag = admissibility(parse_lambda(text))
        assert not ok and "extra automorphisms" in tag
    for text in ("0", "1"):
        ok, tag = admissibility(parse_lambda(text))
        assert not ok and "degenerate" in tag


def test_j_at_i():
    # 256 (-i)^3 / ((i^2)(i - 1)^2) = 256 i / (2 i)
    assert j_invariant(I) == 128


def _special_locus_samples(n_per_locus, seed):
    rng = random.Random(seed)
    out = []

    def rat():
        return Fraction(rng.randint(-40, 40), rng.randint(1, 12))

    for _ in range(n_per_locus):
        out.append(("real", gauss(rat(), 0)))
        out.append(("re=1/2", gauss(Fraction(1, 2), rat() or 1)))
        t = rat()
        # rational points on the unit circle and on |lambda - 1| = 1
        u = gauss((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))
        out.append(("|l|=1", u))
        out.append(("|l-1|=1", u + 1))
        out.append(("generic", gauss(rat(), rat() or 1)))
    return out


def _degenerate(z):
    return z == 0 or z == 1


def test_real_test_is_s3_equivariant_on_200_samples():
    samples = [(k, z) for k, z in _special_locus_samples(45, seed=2024) if not _degenerate(z)]
    assert len(samples) >= 200
    checked = 0
    for locus, z in samples[:200]:
        base = is_real_surface(z)
        if locus != "generic":
            assert base, (locus, format_value(z))
        for name, fn in S3_MAPS.items():
            assert is_real_surface(fn(z)) == base, (locus, name, format_value(z))
        checked += 1
    assert checked == 200


def test_real_conditions_on_each_locus():
    assert real_conditions(gauss(3, 0))["lambda = conj(lambda)"]
    assert real_conditions(gauss(Fraction(1, 2), 5))["lambda = 1 - conj(lambda)"]
    assert real_conditions(gauss(Fraction(3, 5), Fraction(4, 5)))["lambda = 1/conj(lambda)"]
    assert real_conditions(gauss(Fraction(8, 5), Fraction(4, 5)))["lambda = conj(lambda)/(conj(lambda) - 1)"]
    assert not is_real_surface(gauss(2, 3))


def test_verbatim_fourth_condition_diagnostic():
    # the variant conj/(1 - conj) fails on the locus |lambda - 1| = 1
    z = gauss(Fraction(8, 5), Fraction(4, 5))
    cls = classify_lambda(LambdaValue.from_exact(z))
    assert cls.real_surface and cls.verbatim_fourth is False


def test_fundamental_representative_is_orbit_invariant():
    rng = random.Random(7)
    for _ in range(30):
        z = gauss(Fraction(rng.randint(-30, 30), 7), Fraction(rng.randint(1, 30), 5))
        rep = fundamental_representative(z)
        c = complex(rep)
        assert abs(c) <= 1 + 1e-9 and c.real <= 0.5 + 1e-9
        for fn in S3_MAPS.values():
            assert fundamental_representative(fn(z)) == rep


def test_classify_lambda_examples():
    cls = classify_lambda("i")
    assert cls.admissible and cls.real_surface
    assert cls.j == 128
    bad = classify_lambda("zeta(6,1)")
    assert not bad.admissible and bad.j == 0
    num = classify_lambda("0.3+0.7i")
    assert not num.lam.is_exact and num.note
    bounds = moduli_field_bounds("i")
    assert bounds["degree_Q_lambda"] == 2 and bounds["degree_Q_j"] == 1


@pytest.mark.parametrize(
    "text, value",
    [("1/3", Fraction(1, 3)), ("-2", Fraction(-2)), ("i", None), ("2+3i", None), ("1/2 - 3/4 i", None)],
)
def test_parse_lambda(text, value):
    lam = parse_lambda(text)
    assert lam.is_exact
    if value is not None:
        assert lam.exact == value
    assert parse_lambda(format_value(lam.exact)).exact == lam.exact


def test_parse_lambda_errors():
    for bad in ("", "foo", "nan", "1/0i+"):
        with pytest.raises(InvalidParameterError):
            parse_lambda(bad)


# -- curve models and automorphisms ---------------------------------------------------------


@pytest.mark.parametrize("q", [5, 7])
def test_verify_automorphisms(q):
    rep = verify_automorphisms(q)
    assert rep.passed, rep.failures()
    assert len(rep.checks) == 8


def test_automorphisms_sympy_oracle_q5():
    q, n = 5, 10
    x, c, z = _x_sym()
    f = x * (x ** (2 * q) + c * x**q + 1)
    # r: x -> z^2 x, y -> z y with z a primitive 2q-th root
    assert _reduce(z**2 * f - f.subs(x, z**2 * x), z, n) == 0
    # s: x -> 1/x, y -> y / x^(q+1)
    assert sympy.simplify(f / x ** (2 * q + 2) - f.subs(x, 1 / x)) == 0


def test_map_residual_detects_wrong_map():
    q = 5
    f = curve_model(q).poly
    maps = automorphism_maps(q)
    wrong = maps["r"].compose(maps["r"])
    assert map_residual(wrong, f, f).is_zero()
    assert not map_residual(maps["s"], f, f.scale(2)).is_zero()


@pytest.mark.parametrize("q", [5, 7])
def test_symbolic_squarefree(q):
    assert symbolic_squarefree(q)
    x, c, _ = _x_sym()
    disc = sympy.discriminant(x * (x ** (2 * q) + c * x**q + 1), x)
    assert set(sympy.solve(disc, c)) == {-2, 2}


def test_squarefree_on_100_samples():
    rng = random.Random(11)
    n = 0
    while n < 100:
        q = rng.choice([5, 7])
        lam = gauss(Fraction(rng.randint(-20, 20), rng.randint(1, 6)), Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
        value = LambdaValue.from_exact(lam)
        if not admissibility(value)[0]:
            continue
        assert curve_model(q, value).squarefree
        n += 1


def test_degenerate_model_flags():
    m = curve_model(5, "0")
    assert not m.squarefree and m.warnings
    with pytest.raises(InvalidParameterError):
        curve_model(5, "1")
    assert curve_model(5, "-1").squarefree  # the Wiman curve is smooth


# -- covering map ------------------------------------------------------------------------


@pytest.mark.parametrize("q", [5, 7])
@pytest.mark.parametrize("lam", ["1/3", "2+3i", "i", "-5/7"])
def test_verify_covering_map(q, lam):
    rep = verify_covering_map(q, lam)
    assert rep.passed, rep.failures()


def test_covering_map_sympy_oracle():
    q = 5
    lam, z = sympy.symbols("lam z")
    pi = lam * (z**q - 1) ** 2 / (z**q + 1) ** 2
    c = 2 * (1 + lam) / (1 - lam)
    # Pi(z) = 1 exactly on the roots of z^2q + c z^q + 1
    numer = sympy.numer(sympy.together(pi - 1))
    assert sympy.simplify(numer / (lam - 1) - (z ** (2 * q) + c * z**q + 1)) == 0
    lib = covering_map(q, CycNum.from_rational(Fraction(1, 3)))
    for zv in (Fraction(2), Fraction(-3, 7), Fraction(5, 2)):
        want = pi.subs({lam: sympy.Rational(1, 3), z: sympy.Rational(zv.numerator, zv.denominator)})
        assert lib(CycNum.from_rational(zv)) == Fraction(str(want))


def test_covering_map_rejects_excluded():
    with pytest.raises(InvalidParameterError):
        verify_covering_map(5, "-1")
    with pytest.raises(InvalidParameterError):
        verify_covering_map(5, "0.3+0.1i")


def test_root_set_on_20_random_parameters():
    rng = random.Random(5)
    for _ in range(20):
        q = rng.choice([5, 7])
        lam = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert root_set_distance(q, lam) <= 1e-9


def test_coefficient_c():
    assert coefficient_c(CycNum.from_rational(Fraction(1, 3))) == 4
    assert coefficient_c(CycNum.from_rational(-1)) == 0


# -- Wiman ---------------------------------------------------------------------------------


@pytest.mark.parametrize("q", [5, 7])
def test_wiman(q):
    rep = wiman_check(q)
    assert rep.passed
    assert rep.checks[1].passed  # negative control really differs


def test_wiman_sympy_oracle_q5():
    q, n = 5, 40
    x, _, z = _x_sym()
    # x -> -z^2 x, y -> z y with z a primitive 8q-th root: z^2 is a primitive 4q-th root
    source = x * (x ** (2 * q) + 1)
    target = x * (x ** (2 * q) - 1)
    assert _reduce(z**2 * source - target.subs(x, -(z**2) * x), z, n) == 0
