import json

import pytest

import corpus
from coxring import (Block, factor_dims, irrelevant_components, irrelevant_ideal, load_ring,
                     make_cox_ring, make_product_space, ring_from_descriptor, ring_to_descriptor)
from errors import InputError, ResourceCapExceeded
from groebner import Ideal


def test_product_space_layout():
    R = make_product_space([1, 2])
    assert R.names == ("x0", "x1", "y0", "y1", "y2")
    assert R.dimX == 3
    assert R.r == 2
    assert R.degree_of_var(0) == (1, 0)
    assert R.degree_of_var(4) == (0, 1)
    assert R.is_product


def test_fixture_ring_matches_constructor(p1p2):
    R = make_product_space([1, 2], p=101)
    assert p1p2.ring == R.ring
    assert p1p2.dimX == 3
    assert p1p2.component_vars == ((0, 1), (2, 3, 4))


def test_irrelevant_ideal(p1p1):
    B = irrelevant_ideal(p1p1)
    assert B == corpus.ideal_of(p1p1, ["x0*y0", "x0*y1", "x1*y0", "x1*y1"])
    comps = irrelevant_components(p1p1)
    assert comps.components[0] == corpus.ideal_of(p1p1, ["x0", "x1"])
    assert comps.dimX == 2


def test_factor_dims(p1p2, p2):
    assert factor_dims(p1p2) == [1, 2]
    assert factor_dims(p2) == [2]


def test_non_product_cox_data():
    # weighted projective plane P(1,1,2)
    blocks = [Block("x", 2, (1,)), Block("z", 1, (2,))]
    R = make_cox_ring(blocks, 2, 101, components=[[0, 1, 2]])
    assert not R.is_product
    with pytest.raises(InputError):
        factor_dims(R)
    with pytest.raises(InputError):
        make_cox_ring(blocks, None, 101)


def test_descriptor_round_trip(p1p2):
    assert ring_from_descriptor(ring_to_descriptor(p1p2)).ring == p1p2.ring


def test_load_ring_errors(tmp_path):
    with pytest.raises(InputError):
        load_ring(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_ring(str(bad))
    nonprime = tmp_path / "p100.json"
    nonprime.write_text(json.dumps({"p": 100, "blocks": [{"name": "x", "count": 2, "degree": [1]}]}))
    with pytest.raises(InputError):
        load_ring(str(nonprime))
    unknown = tmp_path / "comp.json"
    unknown.write_text(json.dumps({"blocks": [{"name": "x", "count": 2, "degree": [1]}],
                                   "dimX": 1, "components": [["x0", "q7"]]}))
    with pytest.raises(InputError):
        load_ring(str(unknown))


def test_degree_length_mismatch():
    with pytest.raises(InputError):
        make_cox_ring([Block("x", 2, (1, 0)), Block("y", 2, (1,))], 2, 101)


def test_variable_cap(monkeypatch):
    import settings
    monkeypatch.setattr(settings, "MAX_VARIABLES", 4)
    with pytest.raises(ResourceCapExceeded):
        make_product_space([1, 2])


def test_irrelevant_components_default_to_blocks(p1p2):
    comps = irrelevant_components(p1p2)
    assert comps.variables == ((0, 1), (2, 3, 4))
    assert all(isinstance(Q, Ideal) for Q in comps.components)
