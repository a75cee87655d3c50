"""Bounded congruence closure and the enveloping algebra.

The engine unions every word of length <= work_len with every one-step
rewrite p.[value].s of a factorisation p.u.s whose middle lies in the domain.
Replacements by a single letter never grow a word unless the replaced segment
is empty, so one-step rewrites stay inside the bound (empty segments insert a
letter and are applied only while the result still fits). Equality chains
whose peak exceeds work_len are invisible: the engine is a semi-decision,
sound for the true congruence and complete for chains bounded by work_len.

Certificates are rewrite chains replayable step by step. The naive oracle
recomputes the same partition by rule-major occurrence scanning plus graph
reachability and is used to cross-check the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Sequence

from .algebra import InducedAlgebra, PartialAlgebra, Report, TableAlgebra, check_saturation
from .errors import ConstructionError, InputError
from .finset import FinSet, Subset
from .words import Word


@dataclass(frozen=True)
class RewriteStep:
    """One rule application: at `pos`, `rule` (a domain word) is replaced by
    the single letter `value` when `forward`, or re-expanded otherwise."""
    pos: int
    rule: Any
    value: int
    forward: bool


class Congruence:
    """Union-find over all words of length <= work_len, generated by
    u ~ [evaluate(u)] and closed under in-bound one-step context rewrites."""

    def __init__(self, algebra: PartialAlgebra, work_len: int) -> None:
        self.algebra = algebra
        self.work_len = work_len
        self._parent: dict = {}
        self._edges: dict = {}
        self._canon: dict = {}

    # union-find

    def _find(self, w: Any) -> Any:
        parent = self._parent
        root = w
        while parent[root] != root:
            root = parent[root]
        while parent[w] != root:
            parent[w], w = root, parent[w]
        return root

    def _union(self, a: Any, b: Any, step: Optional[RewriteStep]) -> None:
        if step is not None:
            # the step is oriented a -> b; record both traversal directions
            self._edges.setdefault(a, []).append((b, step, True))
            self._edges.setdefault(b, []).append((a, step, False))
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self._parent[rb] = ra

    def _freeze(self) -> None:
        groups: dict = {}
        for w in self._parent:
            groups.setdefault(self._find(w), []).append(w)
        key = self.algebra.word_key
        for members in groups.values():
            rep = min(members, key=key)
            for w in members:
                self._canon[w] = rep

    # queries

    def words(self) -> list:
        return list(self._canon)

    def rep_of(self, w: Any) -> Any:
        if w not in self._canon:
            raise InputError(f"word {w} outside the work_len={self.work_len} universe")
        return self._canon[w]

    def same(self, w1: Any, w2: Any) -> bool:
        return self.rep_of(w1) == self.rep_of(w2)

    def partition(self) -> dict:
        return dict(self._canon)

    def classes(self) -> dict:
        out: dict = {}
        for w, rep in self._canon.items():
            out.setdefault(rep, []).append(w)
        key = self.algebra.word_key
        return {rep: sorted(ws, key=key) for rep, ws in sorted(out.items(), key=lambda kv: key(kv[0]))}

    def certificate(self, start: Any, goal: Any) -> Optional[list[tuple[Any, RewriteStep]]]:
        """Breadth-first rewrite chain from start to goal over recorded unions;
        each item is (word reached, step that reached it)."""
        if not self.same(start, goal):
            return None
        if start == goal:
            return []
        back: dict = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for other, step, fwd in self._edges.get(w, []):
                    if other in back:
                        continue
                    oriented = step if fwd else RewriteStep(
                        step.pos, step.rule, step.value, False)
                    back[other] = (w, oriented)
                    if other == goal:
                        chain = []
                        cur = other
                        while back[cur] is not None:
                            prev, st = back[cur]
                            chain.append((cur, st))
                            cur = prev
                        chain.reverse()
                        return chain
                    nxt.append(other)
            frontier = nxt
        return None


def replay_certificate(algebra: PartialAlgebra, start: Any,
                       chain: Sequence[tuple[Any, RewriteStep]]) -> Any:
    """Re-apply a rewrite chain, validating every step against the algebra."""
    w = start
    for expected, step in chain:
        if algebra.evaluate(step.rule) != step.value:
            raise InputError(f"certificate rule {step.rule} -> {step.value} is not in the domain")
        i = step.pos
        if step.forward:
            rl = algebra.word_len(step.rule)
            if algebra.word_len(w) < i + rl or algebra.segment(w, i, i + rl) != step.rule:
                raise InputError("certificate step does not match the word")
            w = algebra.splice(w, i, i + rl, step.value)
        else:
            if algebra.word_len(w) <= i or algebra.letters_of(w)[i] != step.value:
                raise InputError("certificate step does not match the word")
            w = _expand(algebra, w, i, step.rule)
        if w != expected:
            raise InputError("certificate step reached an unexpected word")
    return w


def _expand(algebra: PartialAlgebra, w: Any, i: int, rule: Any) -> Any:
    letters = list(algebra.letters_of(w))
    new_letters = letters[:i] + list(algebra.letters_of(rule)) + letters[i + 1:]
    if algebra.word_endpoints(w) is None:
        return tuple(new_letters)
    # based path: keep the basepoint
    return algebra.make_word(new_letters, w)


def congruence_close(algebra: PartialAlgebra, work_len: int) -> Congruence:
    cong = Congruence(algebra, work_len)
    parent = cong._parent
    for w in algebra.words_upto(work_len):
        parent[w] = w
    for w in list(parent):
        seg = algebra.segment_values(w)
        n = algebra.word_len(w)
        for i in range(n + 1):
            row = seg[i]
            for j in range(i, n + 1):
                v = row[j]
                if v is None:
                    continue
                if j == i and n + 1 > work_len:
                    continue  # insertion would leave the universe
                w2 = algebra.splice(w, i, j, v)
                if w2 == w:
                    continue
                step = RewriteStep(i, algebra.segment(w, i, j), v, True)
                cong._union(w, w2, step)
    cong._freeze()
    return cong


def naive_closure_oracle(algebra: PartialAlgebra, work_len: int) -> dict:
    """Recompute the bounded congruence naively: rule-major occurrence
    scanning for the one-step rewrite relation, then breadth-first reachability
    for its reflexive-symmetric-transitive closure. Returns word -> rep.

    The closure under composition from the enveloping-category proof is
    realised here, as in the engine, through single-step context rewrites
    p.u.s ~ p.[value].s; applying concatenation to *derived* pairs at a fixed
    work_len would identify strictly more (the padded chain can peak above
    the bound: over N at work_len 6, [e,e,a,e] ~ [e,e,e,a] has no in-bound
    chain although [a,e] ~ [e,a] does), so it would not be the partition the
    engine promises. Shares nothing with congruence_close beyond evaluate().
    """
    words = list(algebra.words_upto(work_len))
    rules = [(u, algebra.evaluate(u)) for u in algebra.domain_words(work_len)]

    neighbours: dict = {w: [] for w in words}
    for u, value in rules:
        k = algebra.word_len(u)
        for w in words:
            n = algebra.word_len(w)
            if k == 0 and n + 1 > work_len:
                continue
            for i in range(n - k + 1):
                if algebra.segment(w, i, i + k) != u:
                    continue
                w2 = algebra.splice(w, i, i + k, value)
                if w2 != w:
                    neighbours[w].append(w2)
                    neighbours[w2].append(w)

    key = algebra.word_key
    rep: dict = {}
    for start in sorted(words, key=key):
        if start in rep:
            continue
        component = [start]
        rep[start] = start
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for w2 in neighbours[w]:
                    if w2 not in rep:
                        rep[w2] = start
                        component.append(w2)
                        nxt.append(w2)
            frontier = nxt
    return rep


def word_eq(cong: Congruence, w1: Any, w2: Any) -> bool:
    return cong.same(w1, w2)


@dataclass
class EnvelopeAlgebra:
    """Classes of the bounded congruence with concatenation on representatives
    (defined while it stays inside work_len) and the distinguished classes:
    exactly those containing a singleton word."""
    congruence: Congruence
    reps: list
    distinguished: list[bool]
    _index: dict = field(repr=False, default_factory=dict)

    @property
    def algebra(self) -> PartialAlgebra:
        return self.congruence.algebra

    @property
    def work_len(self) -> int:
        return self.congruence.work_len

    def class_count(self) -> int:
        return len(self.reps)

    def class_of(self, w: Any) -> int:
        return self._index[self.congruence.rep_of(w)]

    def rep(self, c: int) -> Any:
        return self.reps[c]

    def members(self, c: int) -> list:
        return self.congruence.classes()[self.reps[c]]

    def concat_classes(self, c1: int, c2: int) -> Optional[int]:
        a = self.algebra
        r1, r2 = self.reps[c1], self.reps[c2]
        e1, e2 = a.word_endpoints(r1), a.word_endpoints(r2)
        if e1 is not None and e1[1] != e2[0]:
            return None
        if a.word_len(r1) + a.word_len(r2) > self.work_len:
            return None
        return self.class_of(a.concat([r1, r2]))

    def unit_class(self) -> int:
        units = list(self.algebra.unit_words())
        if len(units) != 1:
            raise InputError("unit_class is only defined for one-object algebras")
        return self.class_of(units[0])

    def singleton_class(self, letter: int) -> int:
        return self.class_of(self.algebra.singleton(letter))

    def generated_monoid(self) -> Optional[tuple[list[int], dict]]:
        """Closure of the unit and singleton classes under concatenation;
        None when a product leaves the work_len truncation."""
        unit = self.unit_class()
        frontier = sorted({unit} | {self.singleton_class(a)
                                    for a in range(self.algebra.carrier.size)})
        elements = list(frontier)
        mult: dict = {}
        while frontier:
            new: list[int] = []
            for c1 in list(elements):
                for c2 in list(elements):
                    if (c1, c2) in mult:
                        continue
                    prod = self.concat_classes(c1, c2)
                    if prod is None:
                        return None
                    mult[(c1, c2)] = prod
                    if prod not in elements:
                        elements.append(prod)
                        new.append(prod)
            frontier = new
        return sorted(elements), mult


def build_envelope(algebra: PartialAlgebra, work_len: int) -> EnvelopeAlgebra:
    cong = congruence_close(algebra, work_len)
    classes = cong.classes()
    reps = list(classes)
    singles = {cong.rep_of(algebra.singleton(a))
               for a in range(algebra.carrier.size)}
    distinguished = [rep in singles for rep in reps]
    env = EnvelopeAlgebra(cong, reps, distinguished)
    env._index = {rep: k for k, rep in enumerate(reps)}
    return env


@dataclass(frozen=True)
class UnitMap:
    """a |-> class([a]); injective whenever the input is a genuine (lax)
    partial algebra, since the monad unit is cartesian."""
    assignment: tuple[int, ...]
    injective: bool


def unit_map(env: EnvelopeAlgebra) -> UnitMap:
    assignment = tuple(env.singleton_class(a)
                       for a in range(env.algebra.carrier.size))
    return UnitMap(assignment, len(set(assignment)) == len(assignment))


def check_envelope_recovery(algebra: PartialAlgebra, query_len: int,
                            work_len: int,
                            report: Optional[Report] = None) -> bool:
    """Thm part 2, bounded: w ~ [b] iff w is in the domain with value b, for
    all |w| <= query_len. The saturation verdict at query_len is recorded
    alongside; the theorem says they agree."""
    if query_len > work_len:
        raise InputError("query_len must be <= work_len")
    cong = congruence_close(algebra, work_len)
    witness = None
    for w in algebra.words_upto(query_len):
        val = algebra.evaluate(w)
        for b in range(algebra.carrier.size):
            lhs = cong.same(w, algebra.singleton(b))
            rhs = val == b
            if lhs != rhs:
                witness = {"word": w, "letter": b,
                           "congruent": lhs, "evaluates": val}
                break
        if witness is not None:
            break
    ok = witness is None
    if report is not None:
        report.check = "envelope-recovery"
        if witness is not None:
            report.witnesses.append(witness)
        report.notes["saturation"] = check_saturation(algebra, query_len)
        report.notes["query_len"] = query_len
        report.notes["work_len"] = work_len
        report.conclude(ok, query_len)
    return ok


def saturate(algebra: PartialAlgebra, query_len: int,
             work_len: int) -> TableAlgebra:
    """The reflection into saturated algebras, as a table over the same
    carrier: w |-> b for every w ~ [b] with |w| <= query_len."""
    env = build_envelope(algebra, work_len)
    um = unit_map(env)
    if not um.injective:
        raise ConstructionError(
            "unit map is not injective; the reflection is not a table over "
            "the carrier (the input violates laxity)")
    cong = env.congruence
    singleton_rep = {cong.rep_of(algebra.singleton(a)): a
                     for a in range(algebra.carrier.size)}
    entries: dict[Word, int] = {}
    for w in algebra.words_upto(query_len):
        b = singleton_rep.get(cong.rep_of(w))
        if b is not None:
            entries[w] = b
    return TableAlgebra(algebra.carrier, entries, max(query_len, 1))


# -- the universal property (Thm part 1)


@dataclass
class UniversalPropertyResult:
    ok: bool
    left: list            # morphism tables A -> U(target)
    right: list           # generator assignments out of the envelope
    transpose: dict       # left index -> right assignment
    notes: dict = field(default_factory=dict)


def _is_morphism_into_induced(algebra: PartialAlgebra, target: InducedAlgebra,
                              table: tuple[int, ...], bound: int) -> bool:
    # inline check: letterwise image of every domain word must be defined in
    # the induced target with the matching value
    for w in algebra.domain_words(bound):
        mapped = tuple(table[a] for a in algebra.letters_of(w))
        got = target.evaluate(mapped)
        if got is None or got != table[algebra.evaluate(w)]:
            return False
    return True


def check_universal_property(algebra: PartialAlgebra,
                             target: tuple,  # (Monoid, Subset)
                             query_len: int, work_len: int,
                             report: Optional[Report] = None) -> UniversalPropertyResult:
    """Hom-set bijection between partial-algebra morphisms A -> U(target) and
    subset-preserving monoid maps out of the envelope. The envelope side is
    enumerated through assignments on the distinguished (singleton-generated)
    classes that respect every generating rule with |u| <= work_len; these are
    exactly the monoid morphisms off the quotient."""
    import itertools

    monoid, subset = target
    induced = InducedAlgebra(monoid, subset)
    env = build_envelope(algebra, work_len)
    cong = env.congruence

    n_src = algebra.carrier.size
    gen_classes = sorted({env.singleton_class(a) for a in range(n_src)})
    letter_class = [env.singleton_class(a) for a in range(n_src)]

    rules = [(w, algebra.evaluate(w)) for w in algebra.domain_words(work_len)]

    # right-hand side: rule-respecting assignments with values in the subset
    right: list[dict[int, int]] = []
    for values in itertools.product(subset.members, repeat=len(gen_classes)):
        g = dict(zip(gen_classes, values))
        ok = True
        for w, val in rules:
            folded = monoid.fold([g[letter_class[a]] for a in algebra.letters_of(w)])
            if folded != g[letter_class[val]]:
                ok = False
                break
        if ok:
            right.append(g)

    # left-hand side: partial-algebra morphisms into U(target)
    left: list[tuple[int, ...]] = []
    for table in itertools.product(range(induced.carrier.size), repeat=n_src):
        if _is_morphism_into_induced(algebra, induced, table, query_len):
            left.append(table)

    # transpose and bijectivity
    transpose: dict[int, dict[int, int]] = {}
    ok = True
    notes: dict = {}
    for idx, table in enumerate(left):
        g: dict[int, int] = {}
        consistent = True
        for a in range(n_src):
            y_val = induced.member(table[a])
            prev = g.get(letter_class[a])
            if prev is not None and prev != y_val:
                consistent = False
                break
            g[letter_class[a]] = y_val
        if not consistent:
            ok = False
            notes["ill_defined_transpose"] = table
            break
        transpose[idx] = g

    if ok:
        images = [tuple(sorted(g.items())) for g in transpose.values()]
        right_keys = {tuple(sorted(g.items())) for g in right}
        injective = len(set(images)) == len(images)
        lands = all(img in right_keys for img in images)
        surjective = set(images) == right_keys
        ok = injective and lands and surjective
        notes.update({"injective": injective, "lands_in_right": lands,
                      "surjective": surjective})

    result = UniversalPropertyResult(ok, left, right, transpose, notes)
    if report is not None:
        report.check = "universal-property"
        report.notes.update(notes)
        report.notes.update({"left_count": len(left), "right_count": len(right)})
        report.conclude(ok, query_len)
    return result


class EnvelopeClassAlgebra(PartialAlgebra):
    """The enveloping algebra as a total algebra on the classes (trivial
    distinguished subobject), partial only through the work_len truncation:
    folding multiplies classes by concatenating representatives."""

    def __init__(self, env: EnvelopeAlgebra) -> None:
        if len(tuple(env.algebra.unit_words())) != 1:
            raise InputError("EnvelopeClassAlgebra needs a one-object base algebra")
        self.env = env
        labels = tuple("~" + "".join(map(str, env.rep(c))) if env.rep(c) else "~e"
                       for c in range(env.class_count()))
        self._carrier = FinSet(env.class_count(), labels)

    @property
    def carrier(self) -> FinSet:
        return self._carrier

    def fold_start(self, w: Word) -> int:
        return self.env.unit_class()

    def fold_step(self, state: int, letter: int) -> int:
        if state < 0:
            return -1
        prod = self.env.concat_classes(state, letter)
        return -1 if prod is None else prod

    def fold_value(self, state: int) -> Optional[int]:
        return None if state < 0 else state
