"""JSON document schemas for the CLI: one object per file.

Kinds: monoid_subset, table, category_subset, path_table, morphism, functor.
Loading validates structure and the target type's invariants; serialisation
is deterministic (sorted keys, fixed list orders) so identical inputs give
byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from typing import Any, Optional

from .algebra import InducedAlgebra, Monoid, PartialAlgebra, Report, TableAlgebra
from .envelope import RewriteStep
from .errors import InputError
from .finset import FinSet, Subset, TotalMap
from .morphisms import AlgMorphism
from .paracat import FiniteCategory, ParaFunctor, PathTableAlgebra, from_category
from .words import Graph, PathWord, Word

DEFAULT_QUERY_LEN = 4
DEFAULT_WORK_LEN = 6


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read document {path}: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError(f"document {path} must be an object with a 'kind' field")
    return doc


def _finset(spec: Any, what: str) -> FinSet:
    if isinstance(spec, int):
        return FinSet(spec)
    if isinstance(spec, dict):
        labels = spec.get("labels")
        return FinSet(spec["size"], tuple(labels) if labels else None)
    raise InputError(f"{what} must be an int or an object with 'size'")


def _monoid(spec: dict) -> Monoid:
    carrier = _finset({"size": len(spec["mult"]), "labels": spec.get("labels")},
                      "monoid carrier")
    return Monoid(carrier, spec.get("unit", 0),
                  tuple(tuple(row) for row in spec["mult"]))


def _graph(spec: dict) -> Graph:
    nodes = _finset(spec["nodes"], "graph nodes")
    edges = spec["edges"]
    ends = [(e["dom"], e["cod"]) for e in edges]
    labels = [e.get("label") for e in edges]
    edge_labels = tuple(labels) if all(lab is not None for lab in labels) and labels else None
    edge_set = FinSet(len(edges), edge_labels)
    return Graph(nodes, edge_set,
                 TotalMap(edge_set, nodes, tuple(d for d, _ in ends)),
                 TotalMap(edge_set, nodes, tuple(c for _, c in ends)))


def build_algebra(doc: dict) -> PartialAlgebra:
    kind = doc["kind"]
    try:
        if kind == "monoid_subset":
            monoid = _monoid(doc["monoid"])
            subset = Subset.from_members(monoid.carrier, doc["subset"])
            return InducedAlgebra(monoid, subset)
        if kind == "table":
            carrier = _finset(doc["carrier"], "table carrier")
            entries = {tuple(e["word"]): e["value"] for e in doc.get("entries", [])}
            bound = doc.get("declared_bound",
                            max((len(w) for w in entries), default=1))
            return TableAlgebra(carrier, entries, bound)
        if kind == "category_subset":
            category = _category(doc["category"])
            subset = Subset.from_members(category.graph.edges, doc["subset"])
            return from_category(category, subset)
        if kind == "path_table":
            graph = _graph(doc["graph"])
            entries = {PathWord(e["src"], tuple(e["edges"])): e["value"]
                       for e in doc.get("entries", [])}
            bound = doc.get("declared_bound",
                            max((len(p.edges) for p in entries), default=1))
            return PathTableAlgebra(graph, entries, bound)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed {kind} document: {exc}") from exc
    raise InputError(f"unknown algebra kind {kind!r}")


def _category(spec: dict) -> FiniteCategory:
    graph = _graph(spec)
    identities = TotalMap(graph.nodes, graph.edges, tuple(spec["identities"]))
    comp = {(e1, e2): e for e1, e2, e in spec["comp"]}
    return FiniteCategory(graph, identities, comp)


def build_morphism(doc: dict) -> AlgMorphism:
    if doc["kind"] != "morphism":
        raise InputError("expected a morphism document")
    try:
        source = build_algebra(doc["source"])
        target = build_algebra(doc["target"])
        node_map = doc.get("node_map")
        return AlgMorphism(source, target, tuple(doc["map"]),
                           node_table=tuple(node_map) if node_map else None)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed morphism document: {exc}") from exc


def build_functor(doc: dict) -> ParaFunctor:
    if doc["kind"] != "functor":
        raise InputError("expected a functor document")
    try:
        source = build_algebra(doc["source"])
        target = build_algebra(doc["target"])
        gs, gt = source.graph, target.graph  # type: ignore[attr-defined]
        return ParaFunctor(
            source, target,  # type: ignore[arg-type]
            TotalMap(gs.nodes, gt.nodes, tuple(doc["node_map"])),
            TotalMap(gs.edges, gt.edges, tuple(doc["edge_map"])))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed functor document: {exc}") from exc


def document_bounds(doc: dict, query_flag: Optional[int],
                    work_flag: Optional[int]) -> tuple[int, int]:
    bounds = doc.get("bounds", {})
    query = query_flag if query_flag is not None else bounds.get(
        "query_len", DEFAULT_QUERY_LEN)
    work = work_flag if work_flag is not None else bounds.get(
        "work_len", query + 2 if query_flag is not None else DEFAULT_WORK_LEN)
    if query > work:
        raise InputError(f"query_len {query} must be <= work_len {work}")
    return query, work


def table_document(table: TableAlgebra) -> dict:
    carrier = table.carrier
    return {
        "kind": "table",
        "carrier": {"size": carrier.size,
                    **({"labels": list(carrier.labels)} if carrier.labels else {})},
        "declared_bound": table.effective_bound,
        "entries": [
            {"word": list(w), "value": v}
            for w, v in sorted(table.entries.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ],
    }


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "-", "e", "eps", "epsilon"):
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse word {text!r}; expected comma-separated letter indices") from exc


def jsonable(obj: Any) -> Any:
    """Deterministic JSON projection of words, paths, steps and reports."""
    if isinstance(obj, Report):
        return {
            "check": obj.check,
            "verdict": obj.verdict,
            "bound_used": obj.bound_used,
            "witnesses": jsonable(obj.witnesses),
            "certificates": jsonable(obj.certificates),
            "notes": jsonable(obj.notes),
        }
    if isinstance(obj, PathWord):
        return {"src": obj.src, "edges": list(obj.edges)}
    if isinstance(obj, RewriteStep):
        return {"pos": obj.pos, "rule": jsonable(obj.rule), "value": obj.value,
                "direction": "contract" if obj.forward else "expand"}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    return obj
