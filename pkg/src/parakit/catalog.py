"""The built-in catalog: every monoid of size <= 3 up to isomorphism with
every subset of its carrier, the three-element table algebra N, two small
categories with arrow subsets, and a seeded pool of random lax table
algebras.

Random tables are rejection-sampled to satisfy laxity over their full finite
domains and never contain an empty-word entry: the theorems under test are
about genuine partial algebras, and a finite table with a defined empty word
cannot be saturated beyond its bound (unit insertions run away).
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .algebra import InducedAlgebra, Monoid, TableAlgebra
from .errors import InputError
from .finset import FinSet, Subset, TotalMap
from .paracat import FiniteCategory, InducedPathAlgebra, from_category
from .words import Graph

RANDOM_SEED = 1729
RANDOM_COUNT = 200


@lru_cache(maxsize=None)
def monoids_upto_iso(max_size: int = 3) -> tuple[Monoid, ...]:
    """All monoids with carrier {0..n-1}, unit 0, n <= max_size, one per
    isomorphism class (canonical form: minimal table under unit-fixing
    relabelings)."""
    out: list[Monoid] = []
    for n in range(1, max_size + 1):
        seen: set = set()
        free = [(i, j) for i in range(1, n) for j in range(1, n)]
        for values in itertools.product(range(n), repeat=len(free)):
            table = [[0] * n for _ in range(n)]
            for a in range(n):
                table[0][a] = a
                table[a][0] = a
            for (i, j), v in zip(free, values):
                table[i][j] = v
            if not _associative(table):
                continue
            canon = _canonical_form(table)
            if canon in seen:
                continue
            seen.add(canon)
            out.append(Monoid.from_rows(table))
    return tuple(out)


def _associative(table: list[list[int]]) -> bool:
    n = len(table)
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            row = table[b]
            for c in range(n):
                if table[ab][c] != table[a][row[c]]:
                    return False
    return True


def _canonical_form(table: list[list[int]]) -> tuple:
    n = len(table)
    best = None
    for perm in itertools.permutations(range(1, n)):
        relabel = (0, *perm)
        inverse = [0] * n
        for k, v in enumerate(relabel):
            inverse[v] = k
        flat = tuple(inverse[table[relabel[i]][relabel[j]]]
                     for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return best


@lru_cache(maxsize=None)
def induced_catalog() -> tuple[tuple[str, InducedAlgebra], ...]:
    """Every catalog monoid with every subset of its carrier."""
    out = []
    for k, monoid in enumerate(monoids_upto_iso()):
        n = monoid.carrier.size
        for bits in itertools.product((False, True), repeat=n):
            subset = Subset(monoid.carrier, bits)
            name = f"m{n}.{k}_P{''.join(str(m) for m in subset.members)}"
            out.append((name, InducedAlgebra(monoid, subset)))
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_paramonoids() -> tuple[tuple[str, InducedAlgebra], ...]:
    """The induced algebras whose subset contains the unit: exactly those
    passing the paramonoid axioms (the empty word folds to the unit)."""
    return tuple((name, alg) for name, alg in induced_catalog()
                 if alg.monoid.unit in alg.subset)


def z3_01() -> InducedAlgebra:
    z3 = Monoid.cyclic(3)
    return InducedAlgebra(z3, Subset.from_members(z3.carrier, (0, 1)))


def n_table() -> TableAlgebra:
    """N = {e, a, b} with [a,a] -> b and [a,a,a,a] -> e: lax but unsaturated
    (the nesting [[a,a],[a,a]] has defined flattening and undefined values)."""
    carrier = FinSet(3, ("e", "a", "b"))
    return TableAlgebra(carrier, {(1, 1): 2, (1, 1, 1, 1): 0}, 4)


def walking_retract_category() -> FiniteCategory:
    """Two objects, arrows x: A->B, y: B->A with xyx = x and yxy = y; the
    loops xy and yx are idempotent."""
    graph = Graph.build(
        2, [(0, 0), (1, 1), (0, 1), (1, 0), (0, 0), (1, 1)],
        node_labels=("A", "B"),
        edge_labels=("idA", "idB", "x", "y", "lA", "lB"))
    identities = TotalMap(graph.nodes, graph.edges, (0, 1))
    comp = {
        (0, 0): 0, (0, 2): 2, (0, 4): 4,
        (1, 1): 1, (1, 3): 3, (1, 5): 5,
        (2, 1): 2, (2, 3): 4, (2, 5): 2,
        (3, 0): 3, (3, 2): 5, (3, 4): 3,
        (4, 0): 4, (4, 2): 2, (4, 4): 4,
        (5, 1): 5, (5, 3): 3, (5, 5): 5,
    }
    return FiniteCategory(graph, identities, comp)


def chain_category() -> FiniteCategory:
    """Three objects in a row with the composite arrow: A -> B -> C."""
    graph = Graph.build(
        3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)],
        node_labels=("A", "B", "C"),
        edge_labels=("idA", "idB", "idC", "f", "g", "gf"))
    identities = TotalMap(graph.nodes, graph.edges, (0, 1, 2))
    comp = {
        (0, 0): 0, (0, 3): 3, (0, 5): 5,
        (1, 1): 1, (1, 4): 4,
        (2, 2): 2,
        (3, 1): 3, (3, 4): 5,
        (4, 2): 4,
        (5, 2): 5,
    }
    return FiniteCategory(graph, identities, comp)


@lru_cache(maxsize=None)
def paracategory_catalog() -> tuple[tuple[str, InducedPathAlgebra], ...]:
    retract = walking_retract_category()
    chain = chain_category()
    return (
        ("retract_P_xy", from_category(
            retract, Subset.from_members(retract.graph.edges, (0, 1, 2, 3)))),
        ("chain_P_fg", from_category(
            chain, Subset.from_members(chain.graph.edges, (0, 1, 2, 3, 4)))),
    )


def fully_lax(table: TableAlgebra) -> bool:
    """Laxity over the whole finite domain, by direct tuple enumeration: for
    every domain word of inner values, every choice of inner preimages must
    flatten into the domain with the same value."""
    entries = table.entries
    preimage: dict[int, list] = {}
    for w, v in entries.items():
        preimage.setdefault(v, []).append(w)
    for values_word, expected in entries.items():
        pools = [preimage.get(b, []) for b in values_word]
        for combo in itertools.product(*pools):
            flat = tuple(itertools.chain.from_iterable(combo))
            if table.evaluate(flat) != expected:
                return False
    return True


def lax_completion(entries: dict[tuple[int, ...], int], size: int,
                   bound: int) -> dict[tuple[int, ...], int] | None:
    """Close an entry table under the laxity obligations: whenever a word of
    entry values is itself an entry, its flattenings must be entries with the
    same value. Returns the closed table, or None when closure would need a
    key beyond the bound or would conflict with an existing value."""
    table = {(a,): a for a in range(size)}
    table.update(entries)
    while True:
        preimage: dict[int, list] = {}
        for w, v in table.items():
            preimage.setdefault(v, []).append(w)
        added = False
        for values_word, expected in list(table.items()):
            for combo in itertools.product(*(preimage.get(b, []) for b in values_word)):
                flat = tuple(itertools.chain.from_iterable(combo))
                have = table.get(flat)
                if have == expected:
                    continue
                if have is not None:
                    return None  # value conflict: not completable
                if len(flat) > bound or len(flat) == 1:
                    return None  # would escape the bound or rewrite a singleton
                table[flat] = expected
                added = True
        if not added:
            return table


@lru_cache(maxsize=None)
def random_table_algebras(count: int = RANDOM_COUNT,
                          seed: int = RANDOM_SEED) -> tuple[TableAlgebra, ...]:
    """Deterministic pool of lax table algebras: entries are proposed one at
    a time and kept whenever the laxity completion still fits the bound."""
    out: list[TableAlgebra] = []
    for i in range(count):
        rng = random.Random(seed * 1_000_003 + i)
        size = rng.choice((2, 3, 3))
        closed = {(a,): a for a in range(size)}
        for _ in range(rng.randint(2, 6)):
            length = rng.choice((2, 2, 3, 4))
            word = tuple(rng.randrange(size) for _ in range(length))
            if word in closed:
                continue
            value = rng.randrange(size)
            if value in word:  # self-referential values rarely complete in bound
                value = rng.randrange(size)
            trial = dict(closed)
            trial[word] = value
            completed = lax_completion(trial, size, 4)
            if completed is not None:
                closed = completed
        candidate = TableAlgebra(FinSet(size), closed, 4)
        assert fully_lax(candidate)
        out.append(candidate)
    return tuple(out)
