import json
from fractions import Fraction

import pytest

from csf.graphs import LabelledGraph, family, path
from csf.serialization import element_from_json, element_to_json, graph_from_json, graph_to_json
from csf.sym import SymElement
from csf.ubcqsym import UBCQSymElement
from csf.ubcsym import UBCSymElement, change_basis, y_centred


def test_graph_round_trip():
    g = LabelledGraph(4, [(1, 2), (2, 3), (1, 4)])
    data = graph_to_json(g)
    assert data == {"n": 4, "edges": [[1, 2], [1, 4], [2, 3]]}
    assert graph_from_json(json.loads(json.dumps(data))) == g


def test_graph_from_unit_interval_forms():
    assert graph_from_json({"unit_interval": {"m": [3, 3, 4, 4]}}).n == 4
    assert graph_from_json({"unit_interval": {"w": [1, 1, 2]}}) == path(3)


def test_graph_from_family_form():
    data = {"family": {"name": "wl", "params": {"m": 5, "n": 2, "k": 1}}}
    assert graph_from_json(data) == family("wl", m=5, n=2, k=1)
    with_strings = {"family": {"name": "path", "params": {"d": "3"}}}
    assert graph_from_json(with_strings) == path(3)


@pytest.mark.parametrize(
    "data",
    [
        [],
        {},
        {"n": 3},
        {"edges": []},
        {"n": 3, "edges": [[1, 2]], "family": {"name": "path"}},
        {"n": 3, "edges": [[1, 2]], "extra": 1},
        {"n": "three", "edges": []},
        {"n": 3, "edges": [[1, 2, 3]]},
        {"n": 3, "edges": [[0, 2]]},
        {"unit_interval": {}},
        {"unit_interval": {"m": [1], "w": [1]}},
        {"unit_interval": {"m": "abc"}},
        {"family": {}},
        {"family": {"name": "path", "params": {"d": 2.5}}},
        {"family": {"name": "path", "params": {"d": 3}, "junk": 1}},
    ],
)
def test_graph_rejects_malformed(data):
    with pytest.raises(ValueError):
        graph_from_json(data)


def test_element_round_trip_ubcsym():
    y = y_centred(path(4), 4)
    for basis in ("p", "e", "m"):
        x = change_basis(y, basis)
        data = json.loads(json.dumps(element_to_json(x)))
        assert element_from_json(data) == x


def test_element_round_trip_awkward_coefficients():
    x = UBCSymElement(3, "p", {((2,), 1): Fraction(-7, 3), ((), 3): Fraction(10**20, 7)})
    data = element_to_json(x)
    assert {"lambda": [2], "b": 1, "num": "-7", "den": "3"} in data["terms"]
    assert element_from_json(data) == x


def test_element_round_trip_zero():
    x = UBCSymElement(2, "e")
    assert element_from_json(element_to_json(x)) == x


def test_element_round_trip_sym():
    x = SymElement(3, "e", {(2, 1): Fraction(1, 2), (3,): 4})
    data = element_to_json(x)
    assert all("b" not in term for term in data["terms"])
    assert element_from_json(data, kind="sym") == x


def test_element_round_trip_marked():
    x = UBCQSymElement(3, "Q", {((1, 2), 1): Fraction(2), ((3,), 0): Fraction(-1, 6)})
    data = element_to_json(x)
    assert {"alpha": [1, 2], "marked": 1, "num": "2", "den": "1"} in data["terms"]
    assert element_from_json(data, kind="ubcqsym") == x


def test_element_rejects_malformed():
    good = element_to_json(UBCSymElement(2, "e", {((), 2): 1}))
    for breakage in (
        lambda d: d.pop("degree"),
        lambda d: d.__setitem__("terms", "nope"),
        lambda d: d["terms"][0].pop("num"),
        lambda d: d["terms"][0].__setitem__("den", "0"),
        lambda d: d["terms"][0].__setitem__("num", "one half"),
        lambda d: d["terms"][0].pop("lambda"),
    ):
        data = json.loads(json.dumps(good))
        breakage(data)
        with pytest.raises(ValueError):
            element_from_json(data)
    with pytest.raises(ValueError):
        element_from_json(good, kind="nope")
    with pytest.raises(ValueError):
        element_from_json(good, kind="sym")  # carries a "b" field
