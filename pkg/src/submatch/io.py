"""Line-delimited dataset files: one JSON record per line.

A record is {"target": g, "query": g, "label": bool, "meta": {...}} with
graphs encoded as {"n": int, "edges": [[u, v], ...], "attrs": [[...], ...],
"kinds": [...]}; "attrs" and "kinds" are omitted when absent/all-regular.
Unknown fields are ignored on read, and read(write(x)) == x field for field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .graphs import REGULAR, Graph, validate

__all__ = [
    "DatasetRecord",
    "graph_from_obj",
    "graph_to_obj",
    "read_dataset",
    "write_dataset",
]


@dataclass(frozen=True)
class DatasetRecord:
    """One labeled (target, query) pair plus generation metadata."""

    target: Graph
    query: Graph
    label: bool
    meta: dict[str, Any] = field(default_factory=dict)


def graph_to_obj(g: Graph) -> dict[str, Any]:
    obj: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.attributes is not None:
        obj["attrs"] = g.attributes.tolist()
    if any(k != REGULAR for k in g.kinds):
        obj["kinds"] = list(g.kinds)
    return obj


def graph_from_obj(obj: Any) -> Graph:
    if not isinstance(obj, dict):
        raise ValueError(f"graph object must be a mapping, got {type(obj).__name__}")
    for key in ("n", "edges"):
        if key not in obj:
            raise ValueError(f"graph object missing {key!r}")
    g = Graph.from_edges(
        int(obj["n"]),
        [(int(u), int(v)) for u, v in obj["edges"]],
        attributes=obj.get("attrs"),
        kinds=obj.get("kinds"),
    )
    violations = validate(g)
    if violations:
        raise ValueError("invalid graph: " + "; ".join(violations))
    return g


def record_to_line(record: DatasetRecord) -> str:
    obj = {
        "target": graph_to_obj(record.target),
        "query": graph_to_obj(record.query),
        "label": bool(record.label),
        "meta": record.meta,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def record_from_obj(obj: Any) -> DatasetRecord:
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")
    for key in ("target", "query", "label"):
        if key not in obj:
            raise ValueError(f"missing {key!r}")
    if not isinstance(obj["label"], bool):
        raise ValueError("'label' must be a boolean")
    record = DatasetRecord(
        target=graph_from_obj(obj["target"]),
        query=graph_from_obj(obj["query"]),
        label=obj["label"],
        meta=obj.get("meta", {}),
    )
    if record.query.n > record.target.n:
        raise ValueError("query has more nodes than target")
    return record


def write_dataset(records: Iterable[DatasetRecord], path: str | Path) -> None:
    """Write records one per line; bytes are deterministic in the records."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(record_to_line(record))
            fh.write("\n")


def read_dataset(path: str | Path) -> list[DatasetRecord]:
    """Read a dataset file; any malformed line raises with its line number."""
    out: list[DatasetRecord] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                out.append(record_from_obj(obj))
            except (ValueError, TypeError) as exc:
                raise ValueError(f"{path}, line {lineno}: {exc}") from None
    return out
