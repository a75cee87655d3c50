"""parakit: finite paramonoids, paracategories and saturated partial algebras.

Partial algebras for the free-monoid and free-path monads with executable,
exactly-checkable versions of their structure theory: unit/laxity/saturation
checkers, bounded congruence closure with certificates, enveloping algebras
and their universal property, the saturation reflection, Kleene morphisms and
the epi/Kleene factorisation system.
"""

from .algebra import (
    InducedAlgebra,
    InternalCategory,
    Monoid,
    PartialAlgebra,
    Report,
    TableAlgebra,
    build_internal_category,
    check_descent_formulation,
    check_freyd_axioms_direct,
    check_laxity,
    check_paramonoid,
    check_saturation,
    check_unit,
    derived_laws_check,
    unit_totality_check,
)
from .envelope import (
    Congruence,
    EnvelopeAlgebra,
    EnvelopeClassAlgebra,
    RewriteStep,
    UnitMap,
    build_envelope,
    check_envelope_recovery,
    check_universal_property,
    congruence_close,
    naive_closure_oracle,
    replay_certificate,
    saturate,
    unit_map,
    word_eq,
)
from .errors import (
    BudgetError,
    ConstructionError,
    InputError,
    InternalCheckError,
    ParakitError,
)
from .finset import (
    FinSet,
    PartialMap,
    Subset,
    TotalMap,
    compose_partial,
    compose_total,
    identity_map,
    identity_partial,
    image_factorisation,
    inverse_image,
    is_total,
    kleene_eq,
    leq,
    partial_from_span,
    product,
)
from .morphisms import (
    AlgMorphism,
    RestrictionAlgebra,
    cartesian_lift,
    check_factorisation_saturation,
    check_morphism,
    compose_morphisms,
    envelope_unit,
    factor,
    identity_morphism,
    is_kleene,
)
from .paracat import (
    EnvelopeCategory,
    FiniteCategory,
    InducedPathAlgebra,
    ParaFunctor,
    PathAlgebra,
    PathTableAlgebra,
    check_freyd_axioms,
    check_parafunctor,
    enveloping_category,
    from_category,
    is_kleene_functor,
)
from .words import Graph, PathWord, Word, enumerate_nestings, enumerate_words, eta, mu

__version__ = "0.1.0"
