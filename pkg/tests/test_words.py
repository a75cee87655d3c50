from __future__ import annotations

import itertools

import pytest

from parakit.errors import BudgetError, InputError
from parakit.finset import FinSet, TotalMap
from parakit.words import (Graph, PathWord, compositions, default_inner_cap,
                           enumerate_nestings, enumerate_paths,
                           enumerate_words, eta, eta_is_cartesian_check,
                           make_path, map_word, mu, mu_paths, path_cod)


def test_eta_and_mu_basics():
    assert eta(0) == (0,)
    assert all(len(eta(a)) == 1 for a in range(5))
    assert mu([()]) == ()
    assert mu([(0,), (1, 2)]) == (0, 1, 2)


def test_map_word_identity_and_naturality():
    f = TotalMap(FinSet(3), FinSet(3), (0, 1, 2))
    for w in enumerate_words(3, 3):
        assert map_word(f, w) == w
    g = TotalMap(FinSet(3), FinSet(2), (1, 0, 1))
    # eta naturality: map(eta(a)) == eta(g(a))
    for a in range(3):
        assert map_word(g, eta(a)) == eta(g.table[a])
    # mu naturality on all nestings of total length <= 3
    for nesting in enumerate_nestings(3, 3):
        lhs = map_word(g, mu(nesting))
        rhs = mu([map_word(g, inner) for inner in nesting])
        assert lhs == rhs


def test_enumerate_words_counts_and_order():
    words = list(enumerate_words(2, 2))
    assert len(words) == 1 + 2 + 4
    assert words == sorted(words, key=lambda w: (len(w), w))
    assert len(set(words)) == len(words)
    # alphabet 3, max_len 4: geometric sum computed independently
    assert len(list(enumerate_words(3, 4))) == sum(3 ** k for k in range(5))
    assert sum(3 ** k for k in range(5)) == 121


def test_enumerate_words_budget(monkeypatch):
    monkeypatch.setenv("PARAKIT_BUDGET", "10")
    with pytest.raises(BudgetError):
        list(enumerate_words(3, 4))


def count_nestings_oracle(alphabet: int, max_total: int) -> int:
    # independent recursive counter: words times capped compositions
    def comps(total: int, max_parts: int) -> int:
        if max_parts == 0:
            return 1 if total == 0 else 0
        return (1 if total == 0 else 0) + sum(
            comps(total - first, max_parts - 1) for first in range(total + 1))

    total = 0
    for n in range(max_total + 1):
        total += (alphabet ** n) * comps(n, default_inner_cap(n))
    return total


def test_enumerate_nestings_counts_match_oracle():
    for alphabet, max_total in [(1, 3), (2, 3), (3, 2)]:
        got = list(enumerate_nestings(alphabet, max_total))
        assert len(got) == count_nestings_oracle(alphabet, max_total)
        assert len(set(got)) == len(got)


def test_enumerate_nestings_empty_flattening():
    got = [n for n in enumerate_nestings(1, 2) if mu(n) == ()]
    assert got == [(), ((),), ((), ())]


def test_enumerate_nestings_contains_paddings():
    got = list(enumerate_nestings(1, 2))
    assert ((0, 0),) in got
    assert ((0,), (0,)) in got
    assert ((0,), ()) in got
    assert got.index(((0, 0),)) < got.index(((0,), (0,)))


def test_mu_associativity_bounded():
    # mu . T(mu) == mu . mu_T on depth-3 nestings of total length <= 4
    for nesting in enumerate_nestings(2, 4, inner_cap=3):
        outer = [nesting[:1], nesting[1:]] if len(nesting) > 1 else [nesting]
        flat_one = mu([mu(list(group)) for group in outer])
        flat_two = mu(mu([list(group) for group in outer]))
        assert flat_one == flat_two == mu(nesting)


def test_monad_unit_laws_bounded():
    for w in enumerate_words(2, 4):
        assert mu([w]) == w                       # mu . eta_T
        assert mu([eta(a) for a in w]) == w       # mu . T(eta)


def test_eta_cartesian_check():
    for size_src, size_dst in [(1, 1), (2, 2), (3, 2), (3, 1)]:
        for table in itertools.product(range(size_dst), repeat=size_src):
            f = TotalMap(FinSet(size_src), FinSet(size_dst), table)
            assert eta_is_cartesian_check(f)


def test_compositions_order():
    assert list(compositions(0, 2)) == [(), (0,), (0, 0)]
    first = next(iter(compositions(3, 5)))
    assert first == (3,)


two_cycle = Graph.build(2, [(0, 1), (1, 0)], ("u", "v"), ("uv", "vu"))


def test_paths_from_fixed_node():
    paths = list(enumerate_paths(two_cycle, 2, src=0))
    assert len(paths) == 3  # empty, one step, round trip
    assert all(p.src == 0 for p in paths)
    for p in paths:
        assert make_path(two_cycle, p.src, p.edges) == p


def test_path_composability_enforced():
    with pytest.raises(InputError):
        make_path(two_cycle, 0, (1,))  # edge 1 starts at node 1
    with pytest.raises(InputError):
        make_path(two_cycle, 0, (0, 0))


def test_mu_paths():
    p = make_path(two_cycle, 0, (0,))
    q = make_path(two_cycle, 1, (1,))
    assert mu_paths(two_cycle, [p, q]) == PathWord(0, (0, 1))
    assert path_cod(two_cycle, mu_paths(two_cycle, [p, q])) == 0
    with pytest.raises(InputError):
        mu_paths(two_cycle, [p, p])


def test_every_enumerated_path_is_a_path():
    for p in enumerate_paths(two_cycle, 4):
        make_path(two_cycle, p.src, p.edges)
