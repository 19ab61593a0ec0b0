import json
from fractions import Fraction as F

import pytest

from vallab.io import (
    InputError,
    classification_from_json,
    classification_to_json,
    load_json,
    measure_to_json,
    polytope_from_json,
    polytope_to_json,
    tensor_from_json,
    tensor_to_json,
    unary_from_json,
    unary_to_json,
    zeta_from_json,
    zeta_to_json,
)
from vallab.measures import cone_volume_measure
from vallab.polytope import hull, simplex
from vallab.scalar import QuadScalar
from vallab.tensors import m0p
from vallab.valuations import (
    AbsPower,
    ClassificationData,
    MinusPower,
    Polynomial,
    SampledFunction,
    Table,
    ZetaSpec,
)


def test_polytope_round_trip():
    for P in (simplex(3, 3), hull([(0, 0), (QuadScalar(1, 1), 0), (0, F(1, 3))]), hull([], n=3)):
        assert polytope_from_json(json.loads(json.dumps(polytope_to_json(P)))) == P
    doc = polytope_to_json(simplex(3, 3))
    assert doc["vertices"][1] == ["1", "0", "0"] and doc["scalar"] == "rational"


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"vertices": "x"},
        {"vertices": []},
        {"vertices": [["1", "0"], ["1"]]},
        {"vertices": [["1/0", "0"]]},
        {"vertices": [["a", "0"]]},
        {"vertices": [[{"a": "1", "b": "1"}, "0"]]},
        {"vertices": [["1", "0"]], "scalar": "complex"},
    ],
)
def test_malformed_polytopes(doc):
    with pytest.raises(InputError):
        polytope_from_json(doc)


def test_measure_json():
    out = measure_to_json(cone_volume_measure(simplex(3, 3)))
    assert out == {"kind": "cone_volume", "atoms": [{"normal": ["1", "1", "1"], "weight": "1/6"}]}


def test_unary_round_trip():
    fns = [
        Polynomial((0, F(1, 2), -3)),
        AbsPower(2, F(3, 4)),
        MinusPower(1.5),
        Table((-1, 0, 1), (F(1, 2), 0, 2)),
        AbsPower(1) + Polynomial((1,)),
        F(2, 3) * AbsPower(3),
    ]
    for f in fns:
        g = unary_from_json(json.loads(json.dumps(unary_to_json(f))))
        for t in (F(-3, 2), F(0), F(1, 3), F(2)):
            assert g(t) == f(t)


def test_sampled_function_dumps_as_table():
    s = SampledFunction(lambda t: t * t, grid=(F(-1), F(0), F(1)))
    g = unary_from_json(unary_to_json(s))
    assert g(F(1, 2)) == F(1, 2)


@pytest.mark.parametrize(
    "doc",
    [{}, {"kind": "nope"}, {"kind": "poly"}, {"kind": "abs_power", "p": -1}, {"kind": "abs_power", "p": "x"}, {"kind": "table", "t": [1, 0], "v": ["0", "1"]}],
)
def test_malformed_unary(doc):
    with pytest.raises(InputError):
        unary_from_json(doc)


def test_zeta_and_classification_round_trip():
    z = ZetaSpec(Polynomial((0, 1)), AbsPower(2))
    z2 = zeta_from_json(zeta_to_json(z))
    assert z2(F(1, 2), QuadScalar(1, 1)) == z(F(1, 2), QuadScalar(1, 1))
    assert zeta_from_json({"eta_a": {"kind": "poly", "coeffs": ["0", "1"]}})(2, F(1, 3)) == F(2, 3)
    data = ClassificationData(zeta1=z, c_nm1=5, c0=2, c0_prime=-1, c0_tilde=F(1, 7))
    back = classification_from_json(classification_to_json(data))
    assert (back.c_nm1, back.c0, back.c0_prime, back.c0_tilde) == (5, 2, -1, F(1, 7))
    with pytest.raises(InputError):
        classification_from_json({"c9": "1"})
    with pytest.raises(InputError):
        zeta_from_json({"eta_b": {}})


def test_tensor_round_trip():
    T = m0p(simplex(3, 3), p=2)
    assert tensor_from_json(tensor_to_json(T)) == T
    with pytest.raises(InputError):
        tensor_from_json({"p": 2})


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InputError):
        load_json(bad)
