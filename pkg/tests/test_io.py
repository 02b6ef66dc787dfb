import json

import pytest

from submatch.graphs import Graph
from submatch.io import (
    DatasetRecord,
    graph_from_obj,
    graph_to_obj,
    read_dataset,
    record_from_obj,
    record_to_line,
    write_dataset,
)


def _pair():
    target = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    query = Graph.from_edges(3, [(0, 1), (1, 2)])
    return target, query


def test_graph_obj_round_trip_plain():
    g = Graph.from_edges(5, [(0, 1), (2, 4)])
    assert graph_from_obj(graph_to_obj(g)) == g


def test_graph_obj_round_trip_attrs_kinds():
    g = Graph.from_edges(
        4,
        [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)],
        attributes=[[1.0, 0.0]] * 3 + [[0.0, 0.0]],
        kinds=[0, 0, 0, 3],
    )
    back = graph_from_obj(graph_to_obj(g))
    assert back == g
    assert back.kinds == (0, 0, 0, 3)


def test_graph_from_obj_rejects_invalid():
    with pytest.raises(ValueError):
        graph_from_obj({"n": 2, "edges": [[0, 0]]})


def test_record_round_trip(tmp_path):
    target, query = _pair()
    records = [
        DatasetRecord(target, query, True, {"generator": "er", "seed": 1}),
        DatasetRecord(target, query, False, {"generator": "er", "seed": 2}),
    ]
    path = tmp_path / "data.jsonl"
    write_dataset(records, path)
    back = read_dataset(path)
    assert back == records


def test_write_dataset_is_stable_text(tmp_path):
    target, query = _pair()
    records = [DatasetRecord(target, query, True, {"b": 1, "a": 2})]
    p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_dataset(records, p1)
    write_dataset(records, p2)
    assert p1.read_bytes() == p2.read_bytes()
    line = p1.read_text().splitlines()[0]
    # keys are sorted so the byte form is canonical
    assert line == record_to_line(records[0])
    assert json.loads(line)["label"] is True


def test_read_dataset_error_names_line(tmp_path):
    target, query = _pair()
    good = record_to_line(DatasetRecord(target, query, True, {}))
    bad = json.dumps({"target": graph_to_obj(target), "query": graph_to_obj(query)})
    path = tmp_path / "broken.jsonl"
    path.write_text(good + "\n" + bad + "\n")
    with pytest.raises(ValueError, match="line 2"):
        read_dataset(path)


def test_record_from_obj_requires_bool_label():
    target, query = _pair()
    obj = {
        "target": graph_to_obj(target),
        "query": graph_to_obj(query),
        "label": 1,
    }
    with pytest.raises(ValueError):
        record_from_obj(obj)


def test_record_from_obj_rejects_oversized_query():
    target, query = _pair()
    obj = {
        "target": graph_to_obj(query),
        "query": graph_to_obj(target),
        "label": True,
    }
    with pytest.raises(ValueError):
        record_from_obj(obj)


def test_blank_lines_skipped(tmp_path):
    target, query = _pair()
    line = record_to_line(DatasetRecord(target, query, False, {}))
    path = tmp_path / "gaps.jsonl"
    path.write_text("\n" + line + "\n\n" + line + "\n")
    assert len(read_dataset(path)) == 2
