from __future__ import annotations

import itertools

import pytest

from parakit.algebra import (InducedAlgebra, Monoid, Report, TableAlgebra,
                             check_laxity, check_saturation)
from parakit.catalog import n_table, z3_01
from parakit.envelope import build_envelope
from parakit.errors import InputError
from parakit.finset import FinSet, Subset
from parakit.morphisms import (AlgMorphism, cartesian_lift,
                               check_factorisation_saturation, check_morphism,
                               compose_morphisms, envelope_unit, factor,
                               identity_morphism, is_kleene)

E, A, B = 0, 1, 2


def total_algebra(monoid: Monoid) -> InducedAlgebra:
    return InducedAlgebra(monoid, Subset.full(monoid.carrier))


def all_morphisms(src, dst, bound):
    for table in itertools.product(range(dst.carrier.size),
                                   repeat=src.carrier.size):
        f = AlgMorphism(src, dst, table)
        if check_morphism(f, bound):
            yield f


def test_identity_is_morphism(z3_halves, table_n):
    for algebra in (z3_halves, table_n):
        ident = identity_morphism(algebra)
        assert check_morphism(ident, 4)
        assert is_kleene(ident, 4)


def test_morphism_witness(table_n):
    # swapping a and b breaks the [a,a] -> b entry
    swap = AlgMorphism(table_n, table_n, (E, B, A))
    report = Report()
    assert not check_morphism(swap, 4, report)
    assert report.witnesses


def test_unit_map_as_morphism_into_envelope(z3_halves, table_n):
    for algebra in (z3_halves, table_n):
        rho = envelope_unit(algebra, 6)
        assert check_morphism(rho, 4)  # laxity direction holds for any input


def test_is_kleene_requires_injective(z3_halves):
    collapse = AlgMorphism(z3_halves, z3_halves, (0, 0))
    with pytest.raises(InputError):
        is_kleene(collapse, 4)


def test_kleene_inclusion_of_saturated(z3_halves):
    z3 = Monoid.cyclic(3)
    incl = AlgMorphism(z3_halves, total_algebra(z3), (0, 1))
    assert check_morphism(incl, 5)
    assert is_kleene(incl, 5)


def test_kleene_fails_for_n_into_envelope(table_n):
    rho = envelope_unit(table_n, 6)
    report = Report()
    assert not is_kleene(rho, 4, report)
    assert report.witnesses[0]["word"] == (B, B)


def test_cartesian_lift_full_subset_is_iso(z3_halves):
    lift, incl = cartesian_lift(Subset.full(z3_halves.carrier), z3_halves, 4)
    for w in z3_halves.words_upto(4):
        assert lift.evaluate(w) == z3_halves.evaluate(w)
    assert incl.is_injective() and incl.is_surjective()


def test_cartesian_lift_recovers_induced_algebra():
    z3 = Monoid.cyclic(3)
    tot = total_algebra(z3)
    lift, incl = cartesian_lift(Subset.from_members(z3.carrier, (0, 1)), tot, 5)
    induced = z3_01()
    for w in induced.words_upto(5):
        assert lift.evaluate(w) == induced.evaluate(w)
    assert is_kleene(incl, 5)


def test_cartesian_lift_preserves_saturation(z3_halves, random_tables):
    z3 = Monoid.cyclic(3)
    bases = [total_algebra(z3), z3_halves]
    bases += [t for t in random_tables[:20] if check_saturation(t, 5)]
    for base in bases:
        n = base.carrier.size
        for bits in itertools.product((False, True), repeat=n):
            subset = Subset(base.carrier, bits)
            lift, incl = cartesian_lift(subset, base, 5)
            assert check_saturation(lift, 5)
            assert is_kleene(incl, 5)


def test_factor_injective_and_constant(z3_halves):
    z3 = Monoid.cyclic(3)
    tot = total_algebra(z3)
    inj = AlgMorphism(z3_halves, tot, (0, 1))
    epi, kleene = factor(inj, 4)
    assert epi.is_injective() and epi.is_surjective()
    assert compose_morphisms(kleene, epi).table == inj.table

    one = total_algebra(Monoid.cyclic(1))
    const = AlgMorphism(z3_halves, one, (0, 0))
    assert check_morphism(const, 4)
    epi, kleene = factor(const, 4)
    assert kleene.source.carrier.size == 1
    assert compose_morphisms(kleene, epi).table == const.table


def test_factor_composes_back_exhaustively(z3_halves, table_n):
    z2 = Monoid.cyclic(2)
    algebras = [z3_halves, table_n, total_algebra(z2),
                InducedAlgebra(z2, Subset.from_members(z2.carrier, (0,)))]
    for src, dst in itertools.product(algebras, repeat=2):
        for f in all_morphisms(src, dst, 4):
            epi, kleene = factor(f, 4)
            assert compose_morphisms(kleene, epi).table == f.table
            assert epi.is_surjective()
            assert kleene.is_injective()
            assert is_kleene(kleene, 4)


def test_morphisms_compose(z3_halves):
    z3 = Monoid.cyclic(3)
    tot = total_algebra(z3)
    f = AlgMorphism(z3_halves, tot, (0, 1))
    g = AlgMorphism(tot, tot, (0, 1, 2))
    gf = compose_morphisms(g, f)
    assert check_morphism(gf, 4)


def test_kleene_composition_closed(z3_halves):
    z3 = Monoid.cyclic(3)
    tot = total_algebra(z3)
    lift, incl = cartesian_lift(Subset.from_members(z3.carrier, (0, 1)), tot, 4)
    lift2, incl2 = cartesian_lift(Subset.from_members(lift.carrier, (0,)), lift, 4)
    comp = compose_morphisms(incl, incl2)
    assert check_morphism(comp, 4)
    assert is_kleene(comp, 4)


def test_pullback_stability_sampled(z3_halves, table_n):
    # pulling a Kleene mono back along a morphism stays Kleene
    z3 = Monoid.cyclic(3)
    tot = total_algebra(z3)
    m_subset = Subset.from_members(z3.carrier, (0, 1))
    m_lift, m_incl = cartesian_lift(m_subset, tot, 4)
    assert is_kleene(m_incl, 4)
    for g in all_morphisms(z3_halves, tot, 4):
        preimage = Subset(z3_halves.carrier,
                          tuple(g.table[a] in m_subset
                                for a in range(z3_halves.carrier.size)))
        lift, incl = cartesian_lift(preimage, z3_halves, 4)
        assert is_kleene(incl, 4)


def test_factorisation_saturation_examples(z3_halves, table_n):
    res = check_factorisation_saturation(z3_halves, 4, 6)
    assert res.saturated and res.kleene_unit
    res = check_factorisation_saturation(table_n, 4, 6)
    assert not res.saturated and not res.kleene_unit
    total = total_algebra(Monoid.cyclic(3))
    res = check_factorisation_saturation(total, 4, 6)
    assert res.saturated and res.kleene_unit


def test_factorisation_saturation_on_randoms(random_tables):
    for t in random_tables[:60]:
        assert check_factorisation_saturation(t, 4, 6).coincide


def diagonal_fillins(e, m, u, v, bound):
    """All h with h.e == u and m.h == v that are morphisms."""
    out = []
    for table in itertools.product(range(m.source.carrier.size),
                                   repeat=e.target.carrier.size):
        h = AlgMorphism(e.target, m.source, table)
        if (compose_morphisms(h, e).table == u.table
                and compose_morphisms(m, h).table == v.table
                and check_morphism(h, bound)):
            out.append(h)
    return out


def test_orthogonality_sample(z3_halves):
    z3 = Monoid.cyclic(3)
    tot = total_algebra(z3)
    # square: e = corestriction of the inclusion z3_halves -> tot, m = lift incl
    f = AlgMorphism(z3_halves, tot, (0, 1))
    e, m = factor(f, 4)
    u, v = e, m
    fills = diagonal_fillins(e, m, u, v, 4)
    assert len(fills) == 1
    assert fills[0].table == tuple(range(e.target.carrier.size))
