import pytest

from kdg.errors import InvalidGraphError, PreconditionError
from kdg.graph import (
    WeightedDualGraph,
    adjunction_degrees,
    build_graph,
    connected_components,
    graph_to_json,
    graph_to_obj,
    intersection_matrix,
    is_connected,
    load_graph,
    parse_graph_json,
    parse_graph_obj,
    subgraph,
    to_dot,
    validate,
)


def x31() -> WeightedDualGraph:
    return build_graph([("e", 0, -3)], [])


def chain32() -> WeightedDualGraph:
    return build_graph([("a", 0, -3), ("b", 0, -2)], [("a", "b", 1)])


def test_build_graph_basic():
    g = chain32()
    assert len(g) == 2
    assert g.ids() == ("a", "b")
    assert g.index_of("b") == 1
    assert g.edge_mult(0, 1) == 1
    assert g.edge_mult(1, 0) == 1
    assert intersection_matrix(g) == ((-3, 1), (1, -2))
    assert adjunction_degrees(g) == (1, 0)


def test_build_graph_rejects_bad_input():
    with pytest.raises(InvalidGraphError, match="at least one vertex"):
        build_graph([], [])
    with pytest.raises(InvalidGraphError, match="duplicate vertex id"):
        build_graph([("a", 0, -2), ("a", 0, -2)], [])
    with pytest.raises(InvalidGraphError, match="genus must be >= 0"):
        build_graph([("a", -1, -2)], [])
    with pytest.raises(InvalidGraphError, match="self-intersection must be <= -1"):
        build_graph([("a", 0, 0)], [])
    with pytest.raises(InvalidGraphError, match="unknown vertex id"):
        build_graph([("a", 0, -2)], [("a", "z", 1)])
    with pytest.raises(InvalidGraphError, match="self-loop"):
        build_graph([("a", 0, -2)], [("a", "a", 1)])
    with pytest.raises(InvalidGraphError, match="multiplicity must be >= 1"):
        build_graph([("a", 0, -2), ("b", 0, -2)], [("a", "b", 0)])
    with pytest.raises(InvalidGraphError, match="duplicate edge"):
        build_graph([("a", 0, -2), ("b", 0, -2)], [("a", "b", 1), ("b", "a", 1)])


def test_adjacency_and_components():
    g = build_graph(
        [("a", 0, -2), ("b", 0, -2), ("c", 0, -5)],
        [("a", "b", 2)],
    )
    adj = g.adjacency()
    assert adj[0] == {1: 2}
    assert adj[2] == {}
    assert not is_connected(g)
    assert connected_components(g) == [[0, 1], [2]]


def test_validate_flags():
    assert validate(x31()).admissible
    ok = validate(chain32())
    assert ok.admissible and ok.connected and ok.negative_definite and ok.minimal

    res = validate(build_graph([("a", 0, -1)], []))
    assert not res.admissible
    assert any("not minimal: (-1)-curve" in m for m in res.messages)
    # genus > 0 makes a (-1)-vertex acceptable
    assert validate(build_graph([("a", 1, -1)], [])).admissible

    res = validate(build_graph([("a", 0, -2), ("b", 0, -2)], [("a", "b", 2)]))
    assert not res.negative_definite
    assert "not negative definite" in res.messages

    res = validate(build_graph([("a", 0, -2), ("b", 0, -2)], []))
    assert not res.connected
    assert any("not connected: 2 components" in m for m in res.messages)


def test_subgraph_induced():
    g = build_graph(
        [("a", 0, -3), ("b", 1, -2), ("c", 0, -4)],
        [("a", "b", 1), ("b", "c", 3)],
    )
    h = subgraph(g, [1, 2])
    assert h.ids() == ("b", "c")
    assert intersection_matrix(h) == ((-2, 3), (3, -4))
    assert h.vertices[0].genus == 1
    with pytest.raises(PreconditionError):
        subgraph(g, [0, 5])
    with pytest.raises(PreconditionError):
        subgraph(g, [])


def test_json_round_trip():
    g = build_graph(
        [("a", 0, -3), ("b", 2, -7)],
        [("a", "b", 2)],
    )
    text = graph_to_json(g)
    assert text.endswith("\n")
    back = parse_graph_json(text)
    assert back == g
    obj = graph_to_obj(g)
    assert obj["vertices"][1] == {"id": "b", "genus": 2, "self": -7}
    assert obj["edges"] == [{"a": "a", "b": "b", "m": 2}]
    assert parse_graph_obj(obj) == g


def test_json_defaults_and_strictness():
    obj = {"vertices": [{"id": "a", "self": -2}, {"id": "b", "self": -2}],
           "edges": [{"a": "a", "b": "b"}]}
    g = parse_graph_obj(obj)
    assert g.vertices[0].genus == 0
    assert g.edge_mult(0, 1) == 1

    with pytest.raises(InvalidGraphError, match="unknown keys"):
        parse_graph_obj({"vertices": [{"id": "a", "self": -2}], "edges": [], "extra": 1})
    with pytest.raises(InvalidGraphError, match=r"vertices\[0\]: unknown keys"):
        parse_graph_obj({"vertices": [{"id": "a", "self": -2, "w": 3}], "edges": []})
    with pytest.raises(InvalidGraphError, match=r"vertices\[0\].self: required"):
        parse_graph_obj({"vertices": [{"id": "a"}], "edges": []})
    with pytest.raises(InvalidGraphError, match="integer expected"):
        parse_graph_obj({"vertices": [{"id": "a", "self": -2.0}], "edges": []})
    with pytest.raises(InvalidGraphError, match="integer expected"):
        parse_graph_obj({"vertices": [{"id": "a", "self": True}], "edges": []})
    with pytest.raises(InvalidGraphError, match="invalid JSON at line"):
        parse_graph_json("{not json")
    with pytest.raises(InvalidGraphError, match="top level"):
        parse_graph_json("[1, 2]")


def test_load_graph(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(graph_to_json(chain32()))
    assert load_graph(str(p)) == chain32()
    with pytest.raises(InvalidGraphError, match="cannot read"):
        load_graph(str(tmp_path / "missing.json"))


def test_to_dot():
    text = to_dot(chain32())
    assert text.startswith("graph ")
    assert '"a"' in text and '"b"' in text
    assert "--" in text
    # multiplicity shows up as an edge label
    g = build_graph([("a", 0, -2), ("b", 0, -3)], [("a", "b", 2)])
    assert "2" in to_dot(g)
