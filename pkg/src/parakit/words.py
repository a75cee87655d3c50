"""Words of the free-monoid monad and paths of the free-path monad.

A Word is a tuple of letter indices into some carrier FinSet. A PathWord is a
basepoint node plus a tuple of composable edges; the basepoint makes empty
paths at distinct nodes distinct elements. Nestings (elements of T^2 X) are
tuples of words whose concatenation is the flattening.

All enumerators yield in length-then-lexicographic order and are restartable.
An enumeration whose total count would exceed the configured budget raises
BudgetError before yielding anything.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import BudgetError, InputError
from .finset import FinSet, TotalMap

Word = tuple[int, ...]
Nesting = tuple[Word, ...]

DEFAULT_BUDGET = 10**7


def enumeration_budget() -> int:
    """Word-count cap for enumerators; override with PARAKIT_BUDGET."""
    raw = os.environ.get("PARAKIT_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def eta(a: int) -> Word:
    return (a,)


def mu(nesting: Sequence[Word]) -> Word:
    out: list[int] = []
    for inner in nesting:
        out.extend(inner)
    return tuple(out)


def map_word(f: TotalMap, w: Word) -> Word:
    return tuple(f.table[a] for a in w)


def count_words(alphabet_size: int, max_len: int) -> int:
    if alphabet_size == 0:
        return 1  # just the empty word
    if alphabet_size == 1:
        return max_len + 1
    return (alphabet_size ** (max_len + 1) - 1) // (alphabet_size - 1)


def enumerate_words(alphabet_size: int, max_len: int) -> Iterator[Word]:
    if max_len < 0:
        raise InputError("max_len must be >= 0")
    if count_words(alphabet_size, max_len) > enumeration_budget():
        raise BudgetError(
            f"{count_words(alphabet_size, max_len)} words exceed the budget "
            f"of {enumeration_budget()}"
        )
    for n in range(max_len + 1):
        yield from itertools.product(range(alphabet_size), repeat=n)


def compositions(total: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    """Splits of `total` into at most `max_parts` parts >= 0, in nesting order.

    Order: the empty split first (only when total == 0), then recursively by
    decreasing first-part length. This fixes witness order everywhere.
    """
    if total == 0:
        yield ()
    if max_parts == 0:
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, max_parts - 1):
            yield (first, *rest)


def default_inner_cap(total_len: int) -> int:
    # total length + 2 leaves room for empty-word paddings without making the
    # family infinite; behaviourally new cases beyond that do not exist at the
    # given bound.
    return total_len + 2


def enumerate_nestings(
    alphabet_size: int,
    max_total_len: int,
    inner_cap: Optional[int] = None,
) -> Iterator[Nesting]:
    """All words-of-words whose flattening has length <= max_total_len."""
    for w in enumerate_words(alphabet_size, max_total_len):
        cap = inner_cap if inner_cap is not None else default_inner_cap(len(w))
        for parts in compositions(len(w), cap):
            nesting: list[Word] = []
            pos = 0
            for p in parts:
                nesting.append(w[pos:pos + p])
                pos += p
            yield tuple(nesting)


def eta_is_cartesian_check(f: TotalMap, max_len: int = 3) -> bool:
    """Whether the eta-naturality square for f is a pullback, checked on words
    up to max_len: anything mapping to a singleton must be a singleton, and
    singletons correspond one-to-one to source elements."""
    for w in enumerate_words(f.src.size, max_len):
        if len(map_word(f, w)) == 1 and len(w) != 1:
            return False
    singles = {w for w in enumerate_words(f.src.size, 1) if len(w) == 1}
    return singles == {eta(a) for a in f.src.elements()}


# Paths over a finite graph (the free-path monad).


@dataclass(frozen=True)
class Graph:
    nodes: FinSet
    edges: FinSet
    dom: TotalMap
    cod: TotalMap

    def __post_init__(self) -> None:
        if self.dom.src != self.edges or self.dom.dst != self.nodes:
            raise InputError("dom must map edges to nodes")
        if self.cod.src != self.edges or self.cod.dst != self.nodes:
            raise InputError("cod must map edges to nodes")

    @staticmethod
    def build(num_nodes: int, edge_ends: Sequence[tuple[int, int]],
              node_labels: Optional[Sequence[str]] = None,
              edge_labels: Optional[Sequence[str]] = None) -> Graph:
        nodes = FinSet(num_nodes, tuple(node_labels) if node_labels else None)
        edges = FinSet(len(edge_ends), tuple(edge_labels) if edge_labels else None)
        dom = TotalMap(edges, nodes, tuple(d for d, _ in edge_ends))
        cod = TotalMap(edges, nodes, tuple(c for _, c in edge_ends))
        return Graph(nodes, edges, dom, cod)


@dataclass(frozen=True)
class PathWord:
    src: int
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def path_ok(g: Graph, p: PathWord) -> bool:
    at = p.src
    if at not in g.nodes:
        return False
    for e in p.edges:
        if e not in g.edges or g.dom.table[e] != at:
            return False
        at = g.cod.table[e]
    return True


def path_cod(g: Graph, p: PathWord) -> int:
    return g.cod.table[p.edges[-1]] if p.edges else p.src


def make_path(g: Graph, src: int, edges: Sequence[int]) -> PathWord:
    p = PathWord(src, tuple(edges))
    if not path_ok(g, p):
        raise InputError(f"not a path in the graph: src={src}, edges={tuple(edges)}")
    return p


def mu_paths(g: Graph, nesting: Sequence[PathWord]) -> PathWord:
    """Flatten a nesting of paths; consecutive inner paths must abut."""
    if not nesting:
        raise InputError("a path nesting needs at least one inner path to fix the basepoint")
    at = nesting[0].src
    edges: list[int] = []
    for inner in nesting:
        if inner.src != at:
            raise InputError("inner paths do not abut")
        edges.extend(inner.edges)
        at = path_cod(g, inner)
    return PathWord(nesting[0].src, tuple(edges))


def enumerate_paths(g: Graph, max_len: int, src: Optional[int] = None) -> Iterator[PathWord]:
    """All paths of length <= max_len (from `src` when given), shortest first."""
    out_edges: list[list[int]] = [[] for _ in g.nodes.elements()]
    for e in g.edges.elements():
        out_edges[g.dom.table[e]].append(e)

    starts = [src] if src is not None else list(g.nodes.elements())
    frontier = [PathWord(u, ()) for u in starts]
    budget = enumeration_budget()
    seen = 0
    for _ in range(max_len + 1):
        nxt: list[PathWord] = []
        for p in frontier:
            seen += 1
            if seen > budget:
                raise BudgetError(f"path enumeration exceeded budget {budget}")
            yield p
            for e in out_edges[path_cod(g, p)]:
                nxt.append(PathWord(p.src, p.edges + (e,)))
        frontier = nxt
