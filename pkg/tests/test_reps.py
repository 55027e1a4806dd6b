import json

import numpy as np
import pytest

import oracles
from fourq.dihedral import all_subgroups, elements, r, s, subgroup_generated
from fourq.reps import character_table, fixed_dim, rational_fixed_dim, rational_irreducibles

ALL_PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31]


def _matrices(table, v):
    kind = v.label if v.index <= 4 else "2d"
    return oracles.irrep_matrices(table.q, kind, v.k or 0)


@pytest.mark.parametrize("q", ALL_PRIMES)
def test_table_shape(q):
    table = character_table(q)
    assert len(table.classes) == q + 3
    assert len(table.irreps) == q + 3
    assert sum(v.degree**2 for v in table.irreps) == 4 * q
    ws = rational_irreducibles(q)
    assert [w.label for w in ws] == [f"W{i}" for i in range(1, 7)]
    assert [w.field_degree for w in ws] == [1, 1, 1, 1, (q - 1) // 2, (q - 1) // 2]
    assert [w.multiplicity for w in ws] == [1, 1, 1, 1, 2, 2]
    assert all(w.schur_index == 1 for w in ws)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_characters_match_explicit_matrices(q):
    table = character_table(q)
    for v in table.irreps:
        rho_r, rho_s = _matrices(table, v)
        for g in elements(q):
            m = oracles.element_matrix(rho_r, rho_s, g.flip, g.rot)
            assert abs(np.trace(m) - complex(v(g))) < 1e-9


@pytest.mark.parametrize("q", [5, 7])
def test_matrix_model_is_a_homomorphism(q):
    table = character_table(q)
    v = table.irrep("V6")
    rho_r, rho_s = _matrices(table, v)
    for a in elements(q):
        for b in elements(q):
            lhs = oracles.element_matrix(rho_r, rho_s, (a * b).flip, (a * b).rot)
            rhs = oracles.element_matrix(rho_r, rho_s, a.flip, a.rot) @ oracles.element_matrix(
                rho_r, rho_s, b.flip, b.rot
            )
            assert np.allclose(lhs, rhs)


def test_galois_orbits_split_by_parity():
    for q in (5, 7, 11):
        ws = rational_irreducibles(q)
        table = character_table(q)
        odd = {table.irrep(lbl).k % 2 for lbl in ws[4].constituents}
        even = {table.irrep(lbl).k % 2 for lbl in ws[5].constituents}
        assert odd == {1} and even == {0}


@pytest.mark.parametrize("q", [5, 7, 11])
def test_fixed_dim_against_projector(q):
    table = character_table(q)
    for h in all_subgroups(q):
        for v in table.irreps:
            rho_r, rho_s = _matrices(table, v)
            mats = [oracles.element_matrix(rho_r, rho_s, g.flip, g.rot) for g in h]
            assert fixed_dim(v, h) == oracles.fixed_dimension(mats)


def test_fixed_dim_table_q5():
    # rows V2..V6 over <s>, <sr>, <sr^-2>, <sr^-1>, <r^5>, <r^7>
    q = 5
    cols = [
        subgroup_generated([s(q, 0)]),
        subgroup_generated([s(q, 1)]),
        subgroup_generated([s(q, -2)]),
        subgroup_generated([s(q, -1)]),
        subgroup_generated([r(q, q)]),
        subgroup_generated([r(q, q + 2)]),
    ]
    table = character_table(q)
    got = {lbl: [fixed_dim(table.irrep(lbl), h) for h in cols] for lbl in ("V2", "V3", "V4", "V5", "V6")}
    assert got == {
        "V2": [0, 0, 0, 0, 1, 1],
        "V3": [1, 0, 1, 0, 0, 0],
        "V4": [0, 1, 0, 1, 0, 0],
        "V5": [1, 1, 1, 1, 0, 0],
        "V6": [1, 1, 1, 1, 2, 0],
    }


def test_rational_fixed_dim_is_constituent_independent():
    q = 7
    table = character_table(q)
    for h in all_subgroups(q):
        for w in table.rational:
            vals = {fixed_dim(table.irrep(lbl), h) for lbl in w.constituents}
            assert vals == {rational_fixed_dim(w, h)}


def test_table_json_is_serialisable():
    doc = character_table(5).to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["irreps"][0]["conductor"] == 10
