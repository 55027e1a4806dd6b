import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fourq.dihedral import (
    GroupAutomorphism,
    all_subgroups,
    automorphism_generators,
    check_q,
    class_index,
    conjugacy_classes,
    elements,
    enumerate_automorphisms,
    format_element,
    generates_group,
    identity,
    parse_element,
    parse_elements,
    r,
    s,
    subgroup_class,
    subgroup_generated,
)
from fourq.errors import InvalidParameterError, MismatchedGroupError

PRIMES = [5, 7, 11, 13]


@pytest.mark.parametrize("q", PRIMES)
def test_multiplication_matches_permutation_model(q):
    table = oracles.multiplication_table(q)
    group = elements(q)
    for a, b in itertools.product(group, group):
        assert (a * b).code == table[a.code, b.code]


@pytest.mark.parametrize("q", PRIMES)
def test_presentation(q):
    one = identity(q)
    assert r(q) ** (2 * q) == one and r(q) ** q != one
    assert s(q) * s(q) == one
    assert (s(q) * r(q)) ** 2 == one


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 19), st.integers(0, 19), st.integers(0, 19))
def test_group_axioms(i, j, k):
    a, b, c = (elements(5)[x] for x in (i, j, k))
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == identity(5)
    assert a ** a.order() == identity(5)
    assert a.conjugate_by(b) == b.inverse() * a * b


@pytest.mark.parametrize("q", PRIMES)
def test_conjugacy_classes(q):
    classes = conjugacy_classes(q)
    assert len(classes) == q + 3
    assert sum(c.size for c in classes) == 4 * q
    assert [str(c.representative) for c in classes[:4]] == ["1", "s", "s r", f"r^{q}"]
    for c in classes:
        assert (4 * q) % c.size == 0
        g = c.representative
        assert c.elements == {g.conjugate_by(x) for x in elements(q)}
    idx = class_index(q)
    assert len(idx) == 4 * q


@pytest.mark.parametrize("q", [5, 7])
def test_subgroups_against_two_generator_closure(q):
    # every subgroup of a dihedral group is generated by at most two elements
    group = elements(q)
    brute = {subgroup_generated([a, b]).elements for a in group for b in group}
    assert {h.elements for h in all_subgroups(q)} == brute


def test_subgroup_counts():
    # d(2q) cyclic plus sigma(2q) dihedral subgroups
    for q in PRIMES:
        assert len(all_subgroups(q)) == 4 + (1 + 2 + q + 2 * q)


def test_subgroup_classes():
    q = 5
    assert subgroup_generated([s(q, 0)]) in subgroup_class(subgroup_generated([s(q, 2)]))
    assert subgroup_generated([s(q, 1)]) not in subgroup_class(subgroup_generated([s(q, 0)]))
    assert len(subgroup_class(subgroup_generated([s(q, 0)])).members) == q


@pytest.mark.parametrize("q", [5, 7])
def test_automorphisms(q):
    autos = enumerate_automorphisms(q)
    assert len(autos) == 2 * q * (q - 1)
    group = elements(q)
    for phi in autos[:: max(1, len(autos) // 20)]:
        assert {phi(g) for g in group} == set(group)
        for a, b in itertools.product(group, group):
            assert phi(a * b) == phi(a) * phi(b)
    closure = {GroupAutomorphism(q, 1, 0)}
    frontier = list(closure)
    while frontier:
        nxt = []
        for x in frontier:
            for g in automorphism_generators(q):
                y = g.compose(x)
                if y not in closure:
                    closure.add(y)
                    nxt.append(y)
        frontier = nxt
    assert closure == set(autos)


def test_automorphism_composition_order():
    q = 7
    f, g = GroupAutomorphism(q, 3, 2), GroupAutomorphism(q, 5, 1)
    for x in elements(q):
        assert f.compose(g)(x) == f(g(x))


@pytest.mark.parametrize("q", [5, 7])
def test_format_parse_roundtrip(q):
    for g in elements(q):
        assert parse_element(format_element(g), q) == g


def test_parse_variants():
    q = 5
    assert parse_element(" s r^3 ", q) == s(q, 3)
    assert parse_element("r^-1", q) == r(q, 9)
    assert parse_element("r^(12)", q) == r(q, 2)
    assert parse_element("sr", q) == s(q, 1)
    assert parse_elements("s,s r^8 , r^5,r^7", q) == (s(q, 0), s(q, 8), r(q, 5), r(q, 7))
    with pytest.raises(InvalidParameterError):
        parse_element("t^2", q)


@pytest.mark.parametrize("bad", [0, 1, 2, 3, 4, 9, 15, -5])
def test_check_q_rejects(bad):
    with pytest.raises(InvalidParameterError):
        check_q(bad)


def test_mixed_groups_rejected():
    with pytest.raises(MismatchedGroupError):
        r(5) * r(7)


@pytest.mark.parametrize("q", [5, 7])
def test_generates_group(q):
    assert generates_group([r(q), s(q)])
    assert not generates_group([r(q, 2), s(q)])
