"""Finite paracategories as partial algebras over the free-path monad.

Path algebras reuse every checker and the congruence engine unchanged: only
the word geometry differs (words become basepointed edge paths, the 0-ary
operations are one empty path per node, evaluating returns an edge with the
path's endpoints). A category with a distinguished arrow subset induces a
paracategory on the subgraph spanned by those arrows, with a tuple defined
exactly when its composite stays in the subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator, Optional

from .algebra import (PartialAlgebra, Report, check_freyd_axioms_direct)
from .envelope import Congruence, EnvelopeAlgebra, build_envelope, check_envelope_recovery
from .errors import InputError
from .finset import FinSet, Subset, TotalMap
from .morphisms import AlgMorphism, check_morphism, is_kleene
from .words import Graph, PathWord, enumerate_paths, make_path, mu_paths, path_cod


class PathAlgebra(PartialAlgebra):
    """Partial algebra over the free-path monad of a finite graph. The
    carrier is the edge set; a defined path evaluates to an edge with the
    path's endpoints."""

    def __init__(self, graph: Graph) -> None:
        self.graph = graph

    @property
    def carrier(self) -> FinSet:
        return self.graph.edges

    # word geometry over based paths

    def words_upto(self, max_len: int) -> Iterator[PathWord]:
        return enumerate_paths(self.graph, max_len)

    def unit_words(self) -> tuple[PathWord, ...]:
        return tuple(PathWord(u, ()) for u in self.graph.nodes.elements())

    def singleton(self, letter: int) -> PathWord:
        return PathWord(self.graph.dom.table[letter], (letter,))

    def word_len(self, w: PathWord) -> int:
        return len(w.edges)

    def word_key(self, w: PathWord):
        return (len(w.edges), w.src, w.edges)

    def letters_of(self, w: PathWord) -> tuple[int, ...]:
        return w.edges

    def node_at(self, w: PathWord, i: int) -> int:
        if i == 0:
            return w.src
        return self.graph.cod.table[w.edges[i - 1]]

    def segment(self, w: PathWord, i: int, j: int) -> PathWord:
        return PathWord(self.node_at(w, i), w.edges[i:j])

    def splice(self, w: PathWord, i: int, j: int, letter: int) -> PathWord:
        return PathWord(w.src, w.edges[:i] + (letter,) + w.edges[j:])

    def make_word(self, letters, like: PathWord) -> PathWord:
        return PathWord(like.src, tuple(letters))

    def concat(self, parts) -> PathWord:
        return mu_paths(self.graph, parts)

    def word_endpoints(self, w: PathWord) -> tuple[int, int]:
        return (w.src, path_cod(self.graph, w))

    def check_value_typing(self, bound: int) -> bool:
        """Defined paths must evaluate to edges with the path's endpoints."""
        g = self.graph
        for p in self.domain_words(bound):
            e = self.evaluate(p)
            if (g.dom.table[e], g.cod.table[e]) != self.word_endpoints(p):
                return False
        return True


@dataclass(frozen=True)
class FiniteCategory:
    graph: Graph
    identities: TotalMap               # nodes -> edges
    comp: dict                         # (e1, e2) with cod e1 = dom e2 -> edge

    def __post_init__(self) -> None:
        g = self.graph
        if self.identities.src != g.nodes or self.identities.dst != g.edges:
            raise InputError("identities must map nodes to edges")
        for u in g.nodes.elements():
            e = self.identities.table[u]
            if g.dom.table[e] != u or g.cod.table[e] != u:
                raise InputError(f"identity of node {u} has wrong endpoints")
        for e1 in g.edges.elements():
            for e2 in g.edges.elements():
                composable = g.cod.table[e1] == g.dom.table[e2]
                if composable != ((e1, e2) in self.comp):
                    raise InputError("comp must be defined exactly on composable pairs")
                if composable:
                    e = self.comp[(e1, e2)]
                    if (g.dom.table[e] != g.dom.table[e1]
                            or g.cod.table[e] != g.cod.table[e2]):
                        raise InputError("composite has wrong endpoints")
        for e in g.edges.elements():
            if self.comp[(self.identities.table[g.dom.table[e]], e)] != e:
                raise InputError("left identity law fails")
            if self.comp[(e, self.identities.table[g.cod.table[e]])] != e:
                raise InputError("right identity law fails")
        for e1 in g.edges.elements():
            for e2 in g.edges.elements():
                if g.cod.table[e1] != g.dom.table[e2]:
                    continue
                for e3 in g.edges.elements():
                    if g.cod.table[e2] != g.dom.table[e3]:
                        continue
                    if (self.comp[(self.comp[(e1, e2)], e3)]
                            != self.comp[(e1, self.comp[(e2, e3)])]):
                        raise InputError("composition not associative")

    def compose_path(self, start_node: int, edges: tuple[int, ...]) -> int:
        """Composite of a path, diagrammatic order; identity for empty paths."""
        acc = self.identities.table[start_node]
        for e in edges:
            acc = self.comp[(acc, e)]
        return acc


class InducedPathAlgebra(PathAlgebra):
    """The subparacategory carved out of a category by an arrow subset: paths
    over the subgraph on those arrows, defined iff the composite stays in the
    subset."""

    def __init__(self, category: FiniteCategory, subset: Subset) -> None:
        if subset.ambient != category.graph.edges:
            raise InputError("subset must consist of arrows of the category")
        for u in category.graph.nodes.elements():
            if category.identities.table[u] not in subset:
                raise InputError("the arrow subset must contain all identities")
        self.category = category
        self.subset = subset
        self._members = subset.members
        self._index = {m: k for k, m in enumerate(self._members)}
        amb = category.graph
        sub_edges = subset.as_finset()
        graph = Graph(
            amb.nodes, sub_edges,
            TotalMap(sub_edges, amb.nodes, tuple(amb.dom.table[e] for e in self._members)),
            TotalMap(sub_edges, amb.nodes, tuple(amb.cod.table[e] for e in self._members)),
        )
        super().__init__(graph)

    def fold_start(self, w: PathWord) -> int:
        return self.category.identities.table[w.src]

    def fold_step(self, state: int, letter: int) -> int:
        return self.category.comp[(state, self._members[letter])]

    def fold_value(self, state: int) -> Optional[int]:
        return self._index.get(state)

    def member(self, letter: int) -> int:
        return self._members[letter]


def from_category(category: FiniteCategory, subset: Subset) -> InducedPathAlgebra:
    return InducedPathAlgebra(category, subset)


class PathTableAlgebra(PathAlgebra):
    """Extensional path algebra: finite table from based paths to edges, with
    forced singleton entries and endpoint-correct values."""

    def __init__(self, graph: Graph, entries: dict[PathWord, int],
                 declared_bound: int) -> None:
        super().__init__(graph)
        full: dict[PathWord, int] = {}
        for e in graph.edges.elements():
            full[self.singleton(e)] = e
        for p, v in entries.items():
            p = make_path(graph, p.src, p.edges)
            if len(p.edges) > declared_bound:
                raise InputError("entry longer than the declared bound")
            if v not in graph.edges:
                raise InputError("entry value out of range")
            ends = (graph.dom.table[v], graph.cod.table[v])
            if ends != self.word_endpoints(p):
                raise InputError(f"entry {p} -> {v} breaks endpoint typing")
            if len(p.edges) == 1 and v != p.edges[0]:
                raise InputError("singleton entries must map to themselves")
            full[p] = v
        self._entries = full
        self._declared_bound = max(declared_bound, 1)
        # one trie per basepoint
        self._children: list[dict[int, int]] = []
        self._value: list[Optional[int]] = []
        self._roots: dict[int, int] = {}
        for u in graph.nodes.elements():
            self._roots[u] = len(self._children)
            self._children.append({})
            self._value.append(None)
        for p, v in sorted(full.items(), key=lambda kv: self.word_key(kv[0])):
            node = self._roots[p.src]
            for e in p.edges:
                nxt = self._children[node].get(e)
                if nxt is None:
                    nxt = len(self._children)
                    self._children[node][e] = nxt
                    self._children.append({})
                    self._value.append(None)
                node = nxt
            self._value[node] = v

    @property
    def effective_bound(self) -> Optional[int]:
        return self._declared_bound

    @property
    def entries(self) -> dict[PathWord, int]:
        return dict(self._entries)

    def fold_start(self, w: PathWord) -> int:
        return self._roots[w.src]

    def fold_step(self, state: int, letter: int) -> int:
        if state < 0:
            return -1
        return self._children[state].get(letter, -1)

    def fold_value(self, state: int) -> Optional[int]:
        return None if state < 0 else self._value[state]

    def domain_words(self, max_len: int) -> Iterator[PathWord]:
        for p in sorted(self._entries, key=self.word_key):
            if len(p.edges) <= max_len:
                yield p


def check_freyd_axioms(algebra: PathAlgebra, bound: int,
                       report: Optional[Report] = None) -> bool:
    """Elementary paracategory axioms: total 0-ary operations per node, fixed
    singletons, splice Kleene-equality over composable tuples."""
    return check_freyd_axioms_direct(algebra, bound, report)


@dataclass
class EnvelopeCategory:
    """Truncated enveloping category: arrows are path classes grouped by
    endpoints, composition concatenates representatives within the bound,
    identities are empty-path classes, and the distinguished arrows are the
    classes of singleton paths."""
    envelope: EnvelopeAlgebra
    objects: range
    identity_class: dict
    hom: dict                     # (u, v) -> list of class indices
    distinguished: set

    def compose(self, c1: int, c2: int) -> Optional[int]:
        return self.envelope.concat_classes(c1, c2)


def enveloping_category(algebra: PathAlgebra, work_len: int) -> EnvelopeCategory:
    env = build_envelope(algebra, work_len)
    hom: dict = {}
    for c in range(env.class_count()):
        ends = algebra.word_endpoints(env.rep(c))
        hom.setdefault(ends, []).append(c)
    identity_class = {u: env.class_of(PathWord(u, ()))
                      for u in algebra.graph.nodes.elements()}
    distinguished = {c for c, flag in enumerate(env.distinguished) if flag}
    return EnvelopeCategory(env, algebra.graph.nodes.elements(),
                            identity_class, hom, distinguished)


def check_enveloping_recovery(algebra: PathAlgebra, query_len: int,
                              work_len: int,
                              report: Optional[Report] = None) -> bool:
    """Fully-faithfulness of the enveloping category on the induced
    paracategory, verified as the bounded recovery predicate per hom-pair."""
    return check_envelope_recovery(algebra, query_len, work_len, report)


@dataclass(frozen=True)
class ParaFunctor:
    source: PathAlgebra
    target: PathAlgebra
    node_map: TotalMap
    edge_map: TotalMap

    def __post_init__(self) -> None:
        gs, gt = self.source.graph, self.target.graph
        if self.node_map.src != gs.nodes or self.node_map.dst != gt.nodes:
            raise InputError("node map has wrong types")
        if self.edge_map.src != gs.edges or self.edge_map.dst != gt.edges:
            raise InputError("edge map has wrong types")
        for e in gs.edges.elements():
            if gt.dom.table[self.edge_map.table[e]] != self.node_map.table[gs.dom.table[e]]:
                raise InputError("edge map breaks dom")
            if gt.cod.table[self.edge_map.table[e]] != self.node_map.table[gs.cod.table[e]]:
                raise InputError("edge map breaks cod")

    def as_morphism(self, bound: int = 0) -> AlgMorphism:
        return AlgMorphism(self.source, self.target, self.edge_map.table,
                           bound, self.node_map.table)

    def map_path(self, p: PathWord) -> PathWord:
        return PathWord(self.node_map.table[p.src],
                        tuple(self.edge_map.table[e] for e in p.edges))


def check_parafunctor(functor: ParaFunctor, bound: int,
                      report: Optional[Report] = None) -> bool:
    """Defined composites are preserved on the nose."""
    return check_morphism(functor.as_morphism(bound), bound, report)


def is_kleene_functor(functor: ParaFunctor, bound: int,
                      report: Optional[Report] = None) -> bool:
    """[f1 x] = f1 y forces [x] = y; computed directly and asserted equal to
    the Kleene-morphism predicate of the corresponding path-algebra map."""
    if not functor.node_map.is_injective() or not functor.edge_map.is_injective():
        raise InputError("Kleene functors need injective node and edge maps")
    src, tgt = functor.source, functor.target
    image = {functor.edge_map.table[e]: e for e in src.graph.edges.elements()}
    direct = True
    for p in src.words_upto(bound):
        got = tgt.evaluate(functor.map_path(p))
        if got is None or got not in image:
            continue
        val = src.evaluate(p)
        if val is None or functor.edge_map.table[val] != got:
            direct = False
            break
    via_morphism = is_kleene(functor.as_morphism(bound), bound)
    if direct != via_morphism:
        from .errors import InternalCheckError
        raise InternalCheckError("Kleene-functor routes disagree")
    if report is not None:
        report.check = "kleene-functor"
        report.conclude(direct, bound)
    return direct
