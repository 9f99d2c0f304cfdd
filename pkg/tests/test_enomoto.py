import json

import pytest

from exact_lattice.core import check_exact_axioms, maximal, split
from exact_lattice.core.coresolution import injective_coresolution, projectives
from exact_lattice.enomoto import (ModelError, ModelUniverse, a2_model, a3_model, classify_by_gldim,
                                   enumerate_generators, lattice_dot, lattice_json, model_from_json,
                                   order_reversal, structure_from_generator)


@pytest.fixture(scope="module")
def a3():
    return a3_model()


@pytest.fixture(scope="module")
def rows(a3):
    return classify_by_gldim(a3)


def test_a3_model_shape(a3):
    assert len(a3.ids) == 6
    assert a3.projective == {"P1", "P2", "P3"}
    assert len(a3.ar_sequences) == 3


def test_generator_counts(a3):
    assert len(enumerate_generators(a3).nodes) == 8
    assert len(enumerate_generators(a2_model()).nodes) == 2
    lat = enumerate_generators(a3)
    assert len(lat.edges) == 12


def test_extreme_generators(a3):
    u = ModelUniverse(a3)
    assert structure_from_generator(a3, a3.projective, u) == maximal(u)
    assert structure_from_generator(a3, a3.ids, u) == split(u)


def test_round_trip(a3):
    u = ModelUniverse(a3)
    for M in enumerate_generators(a3).nodes:
        e = structure_from_generator(a3, M, u)
        assert set(projectives(e)) == set(M)


def test_structures_satisfy_axioms(a3):
    u = ModelUniverse(a3)
    for M in enumerate_generators(a3).nodes:
        assert check_exact_axioms(structure_from_generator(a3, M, u)).ok


def test_gldim_classification(rows):
    vals = {r["label"]: r["value"] for r in rows}
    assert all(r["status"] == "exact" for r in rows)
    assert sum(v <= 1 for v in vals.values()) == 7
    assert vals["P+I2"] == 2 and vals["P"] == 1 and vals["P+I1+I2+S2"] == 0


def test_gldim_two_witness(a3):
    u = ModelUniverse(a3)
    e = structure_from_generator(a3, a3.projective | {"I2"}, u)
    lengths = {x: injective_coresolution(e, x).length for x in a3.ids}
    assert max(lengths.values()) == 2
    assert [x for x, n in lengths.items() if n == 2] == ["P3"]


def test_order_reversal(a3):
    assert order_reversal(a3) == []


def test_lattice_outputs(a3, rows):
    js = lattice_json(a3, rows)
    assert js["counts"] == {"0": 1, "1": 6, "2": 1}
    json.dumps(js, sort_keys=True)
    dot = lattice_dot(a3, rows)
    assert dot.startswith('digraph "A3"') and dot.count("->") == 12


def test_bad_tables_rejected(a3):
    d = a3.to_json()
    d["homs"]["P3"]["P2"] = 0
    with pytest.raises(ModelError):
        model_from_json(d)
    d = a3.to_json()
    d["ar_sequences"][0]["middle"] = ["P1"]
    with pytest.raises(ModelError):
        model_from_json(d)


def test_other_field(a3):
    m = a3_model(p=3)
    assert [r["value"] for r in classify_by_gldim(m)] == [r["value"] for r in classify_by_gldim(a3)]
