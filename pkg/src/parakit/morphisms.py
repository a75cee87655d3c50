"""Morphisms of partial algebras, Kleene morphisms, cartesian liftings, and
the epi/(monic Kleene) factorisation system.

A morphism is a total carrier map whose letterwise image of every domain word
is defined in the target with the matching value (the laxity direction only).
A monic morphism is Kleene when target-definedness over the image reflects
back: that is exactly the cartesian-lifting condition, so lifts are Kleene by
construction and every morphism factors as a surjection onto its image
followed by the lift's inclusion.

Verdicts carry the bound they were established at; composing verified
morphisms takes the minimum of the bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .algebra import PartialAlgebra, Report, check_saturation
from .envelope import EnvelopeClassAlgebra, build_envelope, unit_map
from .errors import InputError
from .finset import FinSet, Subset, image_factorisation
from .words import Word


@dataclass(frozen=True)
class AlgMorphism:
    source: PartialAlgebra
    target: PartialAlgebra
    table: tuple[int, ...]              # carrier map on letters
    verified_bound: int = 0
    node_table: Optional[tuple[int, ...]] = None  # for based-path algebras

    def __post_init__(self) -> None:
        if len(self.table) != self.source.carrier.size:
            raise InputError("carrier map length must equal source carrier size")
        for v in self.table:
            if v not in self.target.carrier:
                raise InputError("carrier map entry out of range")

    def apply(self, letter: int) -> int:
        return self.table[letter]

    def map_word(self, w: Any) -> Any:
        letters = [self.table[a] for a in self.source.letters_of(w)]
        if self.node_table is None:
            return self.target.make_word(letters, w)
        base = self.source.word_endpoints(w)
        assert base is not None
        from .words import PathWord
        return PathWord(self.node_table[base[0]], tuple(letters))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table) == set(self.target.carrier.elements())


def identity_morphism(algebra: PartialAlgebra, bound: int = 0) -> AlgMorphism:
    graph = getattr(algebra, "graph", None)
    nodes = tuple(range(graph.nodes.size)) if graph is not None else None
    return AlgMorphism(algebra, algebra, tuple(range(algebra.carrier.size)),
                       bound, nodes)


def compose_morphisms(g: AlgMorphism, f: AlgMorphism) -> AlgMorphism:
    if f.target is not g.source and f.target.carrier != g.source.carrier:
        raise InputError("morphisms are not composable")
    table = tuple(g.table[v] for v in f.table)
    nodes = None
    if f.node_table is not None and g.node_table is not None:
        nodes = tuple(g.node_table[v] for v in f.node_table)
    return AlgMorphism(f.source, g.target, table,
                       min(f.verified_bound, g.verified_bound), nodes)


def check_morphism(f: AlgMorphism, bound: int,
                   report: Optional[Report] = None) -> bool:
    """Every source-domain word maps into the target domain with the matching
    value (the tent condition), exhaustively to the bound."""
    witness = None
    for w in f.source.domain_words(bound):
        mapped = f.map_word(w)
        got = f.target.evaluate(mapped)
        want = f.table[f.source.evaluate(w)]
        if got != want:
            witness = {"word": w, "mapped": mapped, "target_value": got,
                       "expected": want}
            break
    ok = witness is None
    if report is not None:
        report.check = "morphism"
        if witness is not None:
            report.witnesses.append(witness)
        report.conclude(ok, bound)
    return ok


def is_kleene(f: AlgMorphism, bound: int,
              report: Optional[Report] = None) -> bool:
    """For a monic morphism: whenever the image of a source word is defined in
    the target with a value inside the image, the word itself must be defined
    (the value equality is then forced). Input error on non-monos."""
    if not f.is_injective():
        raise InputError("Kleene morphisms are only defined for injective carrier maps")
    if f.node_table is not None and len(set(f.node_table)) != len(f.node_table):
        raise InputError("Kleene functors need an injective node map as well")
    if not check_morphism(f, bound):
        raise InputError("is_kleene requires a verified morphism at the bound")
    preimage = {v: a for a, v in enumerate(f.table)}
    witness = None
    for w in f.source.words_upto(bound):
        mapped = f.map_word(w)
        got = f.target.evaluate(mapped)
        if got is None or got not in preimage:
            continue
        val = f.source.evaluate(w)
        if val is None or f.table[val] != got:
            witness = {"word": w, "mapped": mapped, "target_value": got,
                       "source_value": val}
            break
    ok = witness is None
    if report is not None:
        report.check = "kleene"
        if witness is not None:
            report.witnesses.append(witness)
        report.conclude(ok, bound)
    return ok


class RestrictionAlgebra(PartialAlgebra):
    """Cartesian lift of a carrier subset: a word over the subset is defined
    iff it is defined in the base with value inside the subset."""

    def __init__(self, base: PartialAlgebra, subset: Subset) -> None:
        if subset.ambient != base.carrier:
            raise InputError("subset must live on the base carrier")
        self.base = base
        self.subset = subset
        self._members = subset.members
        self._index = {m: k for k, m in enumerate(self._members)}
        self._carrier = subset.as_finset()

    @property
    def carrier(self) -> FinSet:
        return self._carrier

    @property
    def effective_bound(self) -> Optional[int]:
        return self.base.effective_bound

    def fold_start(self, w: Word) -> Any:
        return self.base.fold_start(())

    def fold_step(self, state: Any, letter: int) -> Any:
        return self.base.fold_step(state, self._members[letter])

    def fold_value(self, state: Any) -> Optional[int]:
        v = self.base.fold_value(state)
        return None if v is None else self._index.get(v)

    def member(self, letter: int) -> int:
        return self._members[letter]


def cartesian_lift(subset: Subset, base: PartialAlgebra,
                   bound: int) -> tuple[RestrictionAlgebra, AlgMorphism]:
    """Lift of the base algebra along a subset inclusion; the inclusion is a
    Kleene morphism by construction (verified at the bound)."""
    lift = RestrictionAlgebra(base, subset)
    incl = AlgMorphism(lift, base, subset.members, bound)
    if not check_morphism(incl, bound):
        raise InputError("lift inclusion failed the morphism check")
    if not is_kleene(incl, bound):
        raise InputError("lift inclusion failed the Kleene check")
    return lift, incl


def factor(f: AlgMorphism, bound: int) -> tuple[AlgMorphism, AlgMorphism]:
    """Epi/(monic Kleene) factorisation: corestriction onto the image followed
    by the cartesian lift's inclusion."""
    carrier_map = image_factorisation(
        _as_total_map(f))
    lift, incl = cartesian_lift(carrier_map.image, f.target, bound)
    epi = AlgMorphism(f.source, lift, tuple(carrier_map.epi.table), bound)
    if not check_morphism(epi, bound):
        raise InputError("epi part failed the morphism check at the bound")
    return epi, incl


def _as_total_map(f: AlgMorphism):
    from .finset import TotalMap
    return TotalMap(f.source.carrier, f.target.carrier, f.table)


@dataclass
class FactorisationSaturationResult:
    saturated: bool
    kleene_unit: bool

    @property
    def coincide(self) -> bool:
        return self.saturated == self.kleene_unit


def envelope_unit(algebra: PartialAlgebra, work_len: int) -> AlgMorphism:
    """rho: the algebra into its envelope-as-total-algebra (trivial
    distinguished subobject), a |-> class([a])."""
    env = build_envelope(algebra, work_len)
    target = EnvelopeClassAlgebra(env)
    um = unit_map(env)
    return AlgMorphism(algebra, target, um.assignment)


def check_factorisation_saturation(algebra: PartialAlgebra, query_len: int,
                                   work_len: int,
                                   report: Optional[Report] = None
                                   ) -> FactorisationSaturationResult:
    """Saturation iff the unit into the enveloping total algebra is Kleene.
    Both verdicts are computed and recorded; the return carries them and the
    equivalence holds by Cor. on genuine partial algebras."""
    saturated = check_saturation(algebra, query_len)
    rho = envelope_unit(algebra, work_len)
    if not rho.is_injective():
        kleene = False  # not an M-mono, so not a Kleene morphism
    elif not check_morphism(rho, query_len):
        kleene = False
    else:
        kleene = is_kleene(rho, query_len)
    result = FactorisationSaturationResult(saturated, kleene)
    if report is not None:
        report.check = "factorisation-saturation"
        report.notes.update({"saturated": saturated, "kleene_unit": kleene})
        report.conclude(result.coincide, query_len)
    return result
