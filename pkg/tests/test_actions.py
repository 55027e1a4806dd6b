from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fourq.actions import (
    DOES_NOT_GENERATE,
    PRODUCT_NOT_ONE,
    WRONG_ORDERS,
    GeneratingVectorError,
    SignatureType,
    apply_moves,
    braid_move,
    enumerate_vectors,
    essential_classes,
    geometric_signature,
    normalize,
    parse_vector,
    riemann_hurwitz_genus,
    sigma,
    sigma0,
    sigma1,
    standard_signature,
    topological_orbits,
    validate,
)
from fourq.dihedral import r, s
from fourq.errors import InvalidConstructionError

PRIMES = [5, 7, 11, 13]


@pytest.mark.parametrize("q", PRIMES)
def test_census_matches_brute_force(q):
    vectors = enumerate_vectors(q)
    assert len(vectors) == 6 * q * (q - 1)
    assert {v.key for v in vectors} == oracles.brute_force_vectors(q)
    assert [v.key for v in vectors] == sorted(v.key for v in vectors)


@pytest.mark.parametrize("q", PRIMES)
def test_riemann_hurwitz(q):
    assert riemann_hurwitz_genus(4 * q, standard_signature(q)) == q
    assert riemann_hurwitz_genus(4 * q, SignatureType(0, (2, 2, 2, 2 * q))) == q


def test_riemann_hurwitz_non_integral():
    sig = SignatureType(0, (2, 3, 7))
    # 2g - 2 = 10 (-2 + 1/2 + 2/3 + 6/7)
    assert riemann_hurwitz_genus(10, sig) == Fraction(47, 42)
    with pytest.raises(InvalidConstructionError):
        riemann_hurwitz_genus(10, sig, strict=True)


def test_validate_reports_every_failure():
    q = 5
    with pytest.raises(GeneratingVectorError) as exc:
        validate((s(q), s(q), r(q), r(q)), q)
    assert set(exc.value.codes) == {WRONG_ORDERS, PRODUCT_NOT_ONE}
    with pytest.raises(GeneratingVectorError) as exc:
        validate((s(q), s(q), r(q, q), r(q, q)), q)
    assert WRONG_ORDERS in exc.value.codes and DOES_NOT_GENERATE in exc.value.codes


def test_parse_vector():
    v = parse_vector("s, s r^8, r^5, r^7", 5)
    assert v == sigma0(5)
    with pytest.raises(GeneratingVectorError):
        parse_vector("s, s, r, r", 5)


@pytest.mark.parametrize("q", PRIMES)
def test_sigma_vectors_are_valid(q):
    for n in range(1, 2 * q):
        for parity in (0, 1):
            v = sigma(parity, n, q)
            try:
                validate(v.elements, q)
            except GeneratingVectorError:
                continue
            assert n % 2 == 0 and n % q != 0
    assert validate(sigma0(q).elements, q) == sigma0(q)
    assert validate(sigma1(q).elements, q) == sigma1(q)


@pytest.mark.parametrize("q", [5, 7, 11])
def test_normalize_every_vector(q):
    for v in enumerate_vectors(q):
        nf = normalize(v)
        assert nf.vector == sigma(nf.parity, nf.n, q)
        assert apply_moves(v, nf.moves) == nf.vector


def test_normalize_example():
    q = 5
    v = validate((s(q, 3), s(q, 1), r(q, 5), r(q, 7)), q)
    nf = normalize(v)
    assert (nf.parity, nf.n) == (1, 2)
    assert nf.vector == sigma1(q)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 6 * 7 * 6 - 1), st.integers(1, 3), st.booleans())
def test_braid_moves_preserve_validity(idx, i, inverse):
    v = enumerate_vectors(7)[idx]
    w = braid_move(v, i, inverse=inverse)
    assert sorted(g.order() for g in w) == sorted(g.order() for g in v)
    back = braid_move(w, i, inverse=not inverse)
    assert back == v


def _independent_orbit_count(q):
    """Orbits of standard-type vectors under braid moves and Aut(G), via the permutation model."""
    table = oracles.multiplication_table(q)
    size = len(table)
    inv = [int(next(y for y in range(size) if table[x, y] == 0)) for x in range(size)]
    n = 2 * q
    rot_codes = [k for k in range(n)]
    ref_codes = [n + k for k in range(n)]

    def power(x, e):
        acc = 0
        for _ in range(e):
            acc = int(table[acc, x])
        return acc

    autos = []
    for a in rot_codes:
        if oracles.element_orders(table)[a] != n:
            continue
        for b in ref_codes:
            image = [int(table[power(b, f), power(a, k)]) for f in (0, 1) for k in range(n)]
            autos.append(image)
    standard = oracles.brute_force_vectors(q)
    left, count = set(standard), 0
    while left:
        start = left.pop()
        seen, queue = {start}, deque([start])
        while queue:
            t = queue.popleft()
            nbrs = []
            for i in range(3):
                x, y = t[i], t[i + 1]
                nbrs.append(t[:i] + (int(table[table[x, y], inv[x]]), x) + t[i + 2 :])
                nbrs.append(t[:i] + (y, int(table[table[inv[y], x], y])) + t[i + 2 :])
            nbrs.extend(tuple(phi[c] for c in t) for phi in autos)
            for u in nbrs:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        left -= seen
        count += 1
    return count


@pytest.mark.parametrize("q", [5, 7])
def test_orbit_count_matches_independent_bfs(q):
    report = topological_orbits(q)
    assert report.orbit_count == _independent_orbit_count(q) == 1


@pytest.mark.parametrize("q, size", [(5, 120), (7, 252), (11, 660), (13, 936)])
def test_single_orbit(q, size):
    report = topological_orbits(q)
    assert report.orbit_count == 1
    assert report.orbit_sizes == [size]


@pytest.mark.parametrize("q", [5, 7, 11])
def test_essential_classes(q):
    classes = essential_classes(q)
    half = (q - 1) // 2
    assert sorted(c.dims for c in classes) == sorted([(0, 0, 1, 0, half, 0), (0, 0, 0, 1, half, 0)])
    reps = {c.representative for c in classes}
    assert reps == {sigma0(q), sigma1(q)}
    assert sum(len(c.members) for c in classes) == 6 * q * (q - 1)


def test_geometric_signature_sigma0():
    gs = geometric_signature(sigma0(5))
    assert gs.genus == 0 and gs.periods == (2, 2, 2, 10)
    assert gs.labels()[2] == "<r^5>"
