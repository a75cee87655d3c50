from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parakit.errors import InputError
from parakit.finset import (FinSet, PartialMap, Subset, TotalMap,
                            all_partial_maps, all_total_maps, compose_partial,
                            compose_total, identity_map, identity_partial,
                            image_factorisation, inverse_image, is_total,
                            kleene_eq, leq, nowhere_defined, partial_from_span,
                            product)

X2 = FinSet(2)
X3 = FinSet(3)


def test_finset_invariants():
    with pytest.raises(InputError):
        FinSet(-1)
    with pytest.raises(InputError):
        FinSet(2, ("a",))
    with pytest.raises(InputError):
        FinSet(2, ("a", "a"))
    assert FinSet(2, ("x", "y")).label(1) == "y"


def test_compose_with_identity_is_identity_case():
    for g in all_partial_maps(X2, X2):
        assert compose_partial(g, identity_partial(X2)) == g
        assert compose_partial(identity_partial(X2), g) == g


def test_compose_propagates_undefinedness():
    f = PartialMap(X2, X2, (1, None))
    g = PartialMap(X2, X2, (None, None))
    assert compose_partial(g, f) == nowhere_defined(X2, X2)


def test_compose_type_mismatch():
    f = PartialMap(X2, X3, (0, 0))
    with pytest.raises(InputError):
        compose_partial(f, f)


def test_composition_associative_exhaustive_on_two_element_sets():
    maps = list(all_partial_maps(X2, X2))
    assert len(maps) == (X2.size + 1) ** X2.size  # 9 partial endomaps of a 2-set
    for f, g, h in itertools.product(maps, repeat=3):
        lhs = compose_partial(h, compose_partial(g, f))
        rhs = compose_partial(compose_partial(h, g), f)
        assert kleene_eq(lhs, rhs)


def test_leq_is_partial_order_and_composition_monotone():
    maps = list(all_partial_maps(X2, X2))
    for f in maps:
        assert leq(f, f)
        assert leq(nowhere_defined(X2, X2), f)
    below = [(f, g) for f, g in itertools.product(maps, repeat=2) if leq(f, g)]
    for f, g in below:
        if leq(g, f):
            assert kleene_eq(f, g)
    for f, g in below:
        for h, k in below:
            assert leq(compose_partial(h, f), compose_partial(k, g))


def test_totals_are_maximal_on_two_element_sets():
    maps = list(all_partial_maps(X2, X2))
    for f in maps:
        if not is_total(f):
            continue
        for g in maps:
            if leq(f, g):
                assert kleene_eq(f, g)


def test_cancellation_of_total_composites():
    # total g.f forces f total, for all composable pairs over sets of size <= 3
    sets = [FinSet(n) for n in range(4)]
    for a, b, c in itertools.product(sets, repeat=3):
        for f in all_partial_maps(a, b):
            for g in all_partial_maps(b, c):
                if is_total(compose_partial(g, f)):
                    assert is_total(f)


def test_is_total_examples():
    assert is_total(identity_partial(X3))
    assert not is_total(nowhere_defined(X2, X3))
    for f in all_total_maps(X3, X2):
        for g in all_total_maps(X2, X3):
            assert is_total(compose_partial(g.as_partial(), f.as_partial()))


def test_kleene_eq_distinct_domains():
    f = PartialMap(X2, X2, (0, None))
    g = PartialMap(X2, X2, (0, 0))
    assert not kleene_eq(f, g)
    assert leq(f, g)


def test_product_identity_and_domain_sizes():
    i2 = identity_partial(X2)
    assert product(i2, i2) == identity_partial(FinSet(4))
    f = PartialMap(X2, X2, (0, None))
    g = PartialMap(X3, X3, (None, 1, 2))
    fg = product(f, g)
    assert fg.domain().size == f.domain().size * g.domain().size


def test_product_interchange_exhaustive_on_size_two():
    maps = list(all_partial_maps(X2, X2))
    for f, g, f2, g2 in itertools.islice(itertools.product(maps, repeat=4), 2000):
        lhs = compose_partial(product(f, g), product(f2, g2))
        rhs = product(compose_partial(f, f2), compose_partial(g, g2))
        assert kleene_eq(lhs, rhs)


def test_inverse_image_examples():
    f = TotalMap(X3, X2, (0, 1, 0))
    assert inverse_image(f, Subset.full(X2)) == Subset.full(X3)
    s = Subset.from_members(X3, (0, 2))
    assert inverse_image(identity_map(X3), s) == s
    # preimage of {0} under the fold of Z3 on pairs: the three pairs summing
    # to 0 mod 3, found here by direct enumeration
    pairs = FinSet(9)
    fold = TotalMap(pairs, X3, tuple((i // 3 + i % 3) % 3 for i in range(9)))
    expected = tuple(i for i in range(9) if (i // 3 + i % 3) % 3 == 0)
    got = inverse_image(fold, Subset.from_members(X3, (0,)))
    assert got.members == expected
    assert len(expected) == 3


def test_image_factorisation():
    f = TotalMap(X3, X3, (1, 1, 2))
    fac = image_factorisation(f)
    assert fac.recompose() == f
    assert fac.epi.is_surjective()
    assert fac.image.members == (1, 2)
    const = TotalMap(X3, X3, (2, 2, 2))
    assert image_factorisation(const).image.size == 1
    inj = TotalMap(X2, X3, (2, 0))
    assert image_factorisation(inj).epi.is_injective()


def test_image_factorisation_idempotent():
    for table in itertools.product(range(3), repeat=3):
        fac = image_factorisation(TotalMap(X3, X3, table))
        again = image_factorisation(fac.epi)
        assert again.image == Subset.full(fac.epi.dst)
        assert again.mono.table == tuple(range(fac.epi.dst.size))


def test_span_roundtrip():
    f = PartialMap(X3, X2, (1, None, 0))
    assert partial_from_span(f.domain(), f.total_part()) == f


@settings(max_examples=200, deadline=None)
@given(st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=3, max_size=3),
       st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=3, max_size=3))
def test_leq_antisymmetry_random(a, b):
    f = PartialMap(X3, X3, tuple(a))
    g = PartialMap(X3, X3, tuple(b))
    if leq(f, g) and leq(g, f):
        assert kleene_eq(f, g)
