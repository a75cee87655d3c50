"""Finite sets, total and partial maps, subsets, and image factorisation.

Elements are the naturals 0..size-1; labels are display-only. Partial maps
are stored as one assignment list (None = undefined), from which the span
presentation (domain subset + total part) is recoverable. The 2-cells of the
partial-map world are the boolean ordering `leq`; hom-sets are mere preorders,
so no structural cells are kept.

Everything here is immutable and pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .errors import InputError


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.size < 0:
            raise InputError(f"FinSet size must be >= 0, got {self.size}")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise InputError("labels length must equal size")
            if len(set(self.labels)) != self.size:
                raise InputError("labels must be pairwise distinct")

    def elements(self) -> range:
        return range(self.size)

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.size


@dataclass(frozen=True)
class TotalMap:
    src: FinSet
    dst: FinSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.src.size:
            raise InputError("table length must equal src size")
        for v in self.table:
            if v not in self.dst:
                raise InputError(f"table entry {v} out of range for dst of size {self.dst.size}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table) == set(self.dst.elements())

    def as_partial(self) -> PartialMap:
        return PartialMap(self.src, self.dst, self.table)


def identity_map(x: FinSet) -> TotalMap:
    return TotalMap(x, x, tuple(range(x.size)))


def compose_total(g: TotalMap, f: TotalMap) -> TotalMap:
    if f.dst != g.src:
        raise InputError("compose_total: f.dst must equal g.src")
    return TotalMap(f.src, g.dst, tuple(g.table[v] for v in f.table))


@dataclass(frozen=True)
class Subset:
    ambient: FinSet
    mask: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.mask) != self.ambient.size:
            raise InputError("mask length must equal ambient size")

    @staticmethod
    def from_members(ambient: FinSet, members: Sequence[int]) -> Subset:
        mask = [False] * ambient.size
        for m in members:
            if m not in ambient:
                raise InputError(f"subset member {m} out of range")
            mask[m] = True
        return Subset(ambient, tuple(mask))

    @staticmethod
    def full(ambient: FinSet) -> Subset:
        return Subset(ambient, (True,) * ambient.size)

    @staticmethod
    def empty(ambient: FinSet) -> Subset:
        return Subset(ambient, (False,) * ambient.size)

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.mask) if b)

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.ambient.size and self.mask[i]

    def as_finset(self) -> FinSet:
        labels = None
        if self.ambient.labels is not None:
            labels = tuple(self.ambient.labels[i] for i in self.members)
        return FinSet(self.size, labels)

    def inclusion(self) -> TotalMap:
        return TotalMap(self.as_finset(), self.ambient, self.members)

    def index_of(self, ambient_elt: int) -> int:
        """Position of an ambient element inside the subset; raises if absent."""
        if ambient_elt not in self:
            raise InputError(f"element {ambient_elt} not in subset")
        return self.members.index(ambient_elt)

    def issubset(self, other: Subset) -> bool:
        if self.ambient != other.ambient:
            raise InputError("issubset: ambient mismatch")
        return all((not a) or b for a, b in zip(self.mask, other.mask))


@dataclass(frozen=True)
class PartialMap:
    src: FinSet
    dst: FinSet
    assignment: tuple[Optional[int], ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != self.src.size:
            raise InputError("assignment length must equal src size")
        for v in self.assignment:
            if v is not None and v not in self.dst:
                raise InputError(f"assignment entry {v} out of range")

    def __call__(self, i: int) -> Optional[int]:
        return self.assignment[i]

    def domain(self) -> Subset:
        return Subset(self.src, tuple(v is not None for v in self.assignment))

    def total_part(self) -> TotalMap:
        """The total map on the domain subset (the span presentation)."""
        dom = self.domain()
        return TotalMap(dom.as_finset(), self.dst,
                        tuple(self.assignment[i] for i in dom.members))  # type: ignore[arg-type]


def partial_from_span(domain: Subset, total: TotalMap) -> PartialMap:
    """Reassemble a partial map from its domain subset and total part."""
    if total.src.size != domain.size:
        raise InputError("span mismatch: total part must live on the domain subset")
    assignment: list[Optional[int]] = [None] * domain.ambient.size
    for k, i in enumerate(domain.members):
        assignment[i] = total.table[k]
    return PartialMap(domain.ambient, total.dst, tuple(assignment))


def identity_partial(x: FinSet) -> PartialMap:
    return PartialMap(x, x, tuple(range(x.size)))


def nowhere_defined(src: FinSet, dst: FinSet) -> PartialMap:
    return PartialMap(src, dst, (None,) * src.size)


def compose_partial(g: PartialMap, f: PartialMap) -> PartialMap:
    """(g o f)(a) defined iff f(a) and g(f(a)) are; composition of spans."""
    if f.dst != g.src:
        raise InputError("compose_partial: f.dst must equal g.src")
    assignment = tuple(
        None if v is None else g.assignment[v] for v in f.assignment
    )
    return PartialMap(f.src, g.dst, assignment)


def _check_parallel(f: PartialMap, g: PartialMap) -> None:
    if f.src != g.src or f.dst != g.dst:
        raise InputError("partial maps must share src and dst")


def leq(f: PartialMap, g: PartialMap) -> bool:
    """f <= g: dom(f) is contained in dom(g) and they agree there (g refines f)."""
    _check_parallel(f, g)
    return all(a is None or a == b for a, b in zip(f.assignment, g.assignment))


def kleene_eq(f: PartialMap, g: PartialMap) -> bool:
    """Equal domains and equal values on them."""
    _check_parallel(f, g)
    return f.assignment == g.assignment


def is_total(f: PartialMap) -> bool:
    return all(v is not None for v in f.assignment)


def product_finset(a: FinSet, b: FinSet) -> FinSet:
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple(f"({la},{lb})" for la in a.labels for lb in b.labels)
    return FinSet(a.size * b.size, labels)


def pair_index(a: int, b: int, b_size: int) -> int:
    return a * b_size + b


def product(f: PartialMap, g: PartialMap) -> PartialMap:
    """Componentwise map on the cartesian products, defined on dom(f) x dom(g)."""
    src = product_finset(f.src, g.src)
    dst = product_finset(f.dst, g.dst)
    assignment: list[Optional[int]] = []
    for a in f.assignment:
        for b in g.assignment:
            if a is None or b is None:
                assignment.append(None)
            else:
                assignment.append(pair_index(a, b, g.dst.size))
    return PartialMap(src, dst, tuple(assignment))


def inverse_image(f: TotalMap, s: Subset) -> Subset:
    """Pullback of a subset along a total map."""
    if s.ambient != f.dst:
        raise InputError("inverse_image: subset must live on f.dst")
    return Subset(f.src, tuple(f.table[a] in s for a in f.src.elements()))


@dataclass(frozen=True)
class ImageFactorisation:
    epi: TotalMap        # surjection onto the image
    mono: TotalMap       # inclusion of the image into dst
    image: Subset        # the image as a subset of dst

    def recompose(self) -> TotalMap:
        return compose_total(self.mono, self.epi)


def image_factorisation(f: TotalMap) -> ImageFactorisation:
    """Epi/mono factorisation; the image keeps dst's element order."""
    image = Subset.from_members(f.dst, sorted(set(f.table)))
    mono = image.inclusion()
    epi = TotalMap(f.src, mono.src, tuple(image.index_of(v) for v in f.table))
    return ImageFactorisation(epi, mono, image)


def all_total_maps(src: FinSet, dst: FinSet) -> Iterator[TotalMap]:
    for table in itertools.product(range(dst.size), repeat=src.size):
        yield TotalMap(src, dst, table)


def all_partial_maps(src: FinSet, dst: FinSet) -> Iterator[PartialMap]:
    # None sorts first so enumeration is deterministic: less-defined maps earlier.
    choices = (None, *range(dst.size))
    for assignment in itertools.product(choices, repeat=src.size):
        yield PartialMap(src, dst, assignment)
