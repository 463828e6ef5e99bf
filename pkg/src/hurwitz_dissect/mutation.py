"""Braid group action on exceptional dissections by left and right mutation.

Smoothing two arcs at a shared marked point ``q`` is the concatenation of the first arc
(run into ``q``) with the second (run out of ``q``), pushed off ``q`` into the sector
between them; on reduced paths that is concatenation followed by free reduction.

For a pair sharing both endpoints, orient both arcs from one common endpoint to the
other as ``w1`` and ``w2``.  Then ``L_{a1} a2 = w1 w2^-1 w1`` and ``R_{a2} a1 = w2 w1^-1 w2``.
Only this assignment makes ``sigma_i^-1 sigma_i`` the identity; the swapped assignment
already fails on the two-point annulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arcs import (
    ArcClass,
    ArcError,
    ArcWord,
    BaseChart,
    arc_system_violations,
    derived_skeleton,
    free_reduce,
    interior_crossings,
    invert,
    shares_endpoint,
)
from .perms import HurwitzSystem
from .surface import DissectionSkeleton, hurwitz_of, validate_dissection


class MutationError(ValueError):
    """Mutation requested on a pair that is not an ordered exceptional pair."""


class InvalidStateError(RuntimeError):
    """A braid move produced an invalid dissection; this is a bug, not a data condition."""


# counts how often each intersection case was mutated; read by the coverage tests
CASE_COUNTER = {"disjoint": 0, "one": 0, "two": 0}


def _pair_case(a1: ArcClass, a2: ArcClass) -> dict[int, str]:
    if a1.key() == a2.key():
        raise MutationError("a pair of identical arcs is not exceptional")
    shared = shares_endpoint(a1, a2)
    bad = [p for p, first in shared.items() if first != "a"]
    if bad:
        raise MutationError(f"second arc does not follow the first counterclockwise at {bad}")
    if interior_crossings(a1, a2):
        raise MutationError("arcs cross in their interiors")
    return shared


def _join(*words: ArcWord) -> ArcClass:
    chart = words[0].chart
    letters = []
    for a, b in zip(words, words[1:]):
        if a.end != b.start:
            raise ArcError("smoothing through mismatched endpoints")
    for w in words:
        letters.extend(w.letters)
    return ArcClass.of(ArcWord(chart, words[0].start, free_reduce(letters)))


def smooth_at(a: ArcClass, b: ArcClass, q: int) -> ArcWord:
    """Path running ``a`` into ``q`` and then ``b`` out of ``q`` (reduced)."""
    wa = a.oriented_from(q).inverse()
    wb = b.oriented_from(q)
    return ArcWord(a.chart, wa.start, free_reduce(wa.letters + wb.letters))


def _two_point_words(a1: ArcClass, a2: ArcClass, shared: Sequence[int]) -> tuple[ArcWord, ArcWord]:
    q1 = min(shared)
    return a1.oriented_from(q1), a2.oriented_from(q1)


def right_mutation(a1: ArcClass, a2: ArcClass) -> ArcClass:
    """``R_{a2} a1`` for an ordered exceptional pair ``(a1, a2)``."""
    shared = _pair_case(a1, a2)
    if not shared:
        CASE_COUNTER["disjoint"] += 1
        return a1
    if len(shared) == 1:
        CASE_COUNTER["one"] += 1
        (q,) = shared
        return ArcClass.of(smooth_at(a1, a2, q))
    CASE_COUNTER["two"] += 1
    return _double_smoothing(a2, a1, shared)


def left_mutation(a1: ArcClass, a2: ArcClass) -> ArcClass:
    """``L_{a1} a2`` for an ordered exceptional pair ``(a1, a2)``."""
    shared = _pair_case(a1, a2)
    if not shared:
        CASE_COUNTER["disjoint"] += 1
        return a2
    if len(shared) == 1:
        CASE_COUNTER["one"] += 1
        (q,) = shared
        return ArcClass.of(smooth_at(a1, a2, q))
    CASE_COUNTER["two"] += 1
    return _double_smoothing(a1, a2, shared)


def _double_smoothing(outer: ArcClass, inner: ArcClass, shared) -> ArcClass:
    """``outer * inner^-1 * outer`` as two successive one-point smoothings.

    Both endpoint orders are computed and compared; they must agree.
    """
    q1, q2 = sorted(shared)
    w_out, w_in = _two_point_words(outer, inner, shared)
    # smooth at q2 first: outer into q2, inner back out to q1, then outer again from q1
    first = _join(ArcWord(w_out.chart, q1, free_reduce(w_out.letters + invert(w_in.letters))), w_out)
    # smooth at q1 first
    second = _join(w_out, ArcWord(w_out.chart, q2, free_reduce(invert(w_in.letters) + w_out.letters)))
    if first.key() != second.key():
        raise InvalidStateError("double smoothing depends on the endpoint order")
    return first


@dataclass(frozen=True)
class Dissection:
    """Ordered arc classes on a chart; validated on construction unless told otherwise."""

    chart: BaseChart
    arcs: tuple[ArcClass, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if self.check:
            problems = self.violations()
            if problems:
                raise InvalidStateError("invalid dissection: " + "; ".join(problems))

    @classmethod
    def reference(cls, chart: BaseChart) -> Dissection:
        return cls(chart, tuple(ArcClass.of(chart.reference_arc(r)) for r in range(1, chart.n + 1)))

    @property
    def n(self) -> int:
        return len(self.arcs)

    def key(self) -> tuple[bytes, ...]:
        return tuple(a.key() for a in self.arcs)

    def skeleton(self) -> DissectionSkeleton:
        return derived_skeleton(self.arcs)

    def violations(self) -> list[str]:
        problems = arc_system_violations(self.arcs)
        if problems:
            return problems
        return validate_dissection(self.skeleton())

    def is_valid(self) -> bool:
        return not self.violations()

    def hurwitz(self) -> HurwitzSystem:
        return hurwitz_of(self.skeleton())

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Dissection) and other.chart is self.chart and other.key() == self.key()


def sigma(d: Dissection, i: int, inverse: bool = False, check: bool = True) -> Dissection:
    """One braid generator; raises :class:`InvalidStateError` if the result is invalid."""
    if not 1 <= i <= d.n - 1:
        raise MutationError(f"generator index {i} out of range 1..{d.n - 1}")
    arcs = list(d.arcs)
    a, b = arcs[i - 1], arcs[i]
    if inverse:
        arcs[i - 1], arcs[i] = left_mutation(a, b), a
    else:
        arcs[i - 1], arcs[i] = b, right_mutation(a, b)
    return Dissection(d.chart, tuple(arcs), check=check)


def parse_braid_word(text: str) -> tuple[int, ...]:
    """``"1,-2,3"`` -> ``(1, -2, 3)``; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    out = []
    for tok in text.replace(" ", "").split(","):
        g = int(tok)
        if g == 0:
            raise ValueError("generator index 0 does not exist")
        out.append(g)
    return tuple(out)


def braid_act(d: Dissection, word: Iterable[int], check: bool = True) -> Dissection:
    """Apply signed generators left to right, validating every intermediate state."""
    for g in word:
        if g == 0 or abs(g) > d.n - 1:
            raise MutationError(f"generator {g} out of range for n={d.n}")
        d = sigma(d, abs(g), inverse=g < 0, check=check)
    return d


def invert_braid_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-g for g in reversed(word))


def grading_after_mutation(alpha1_degree: int) -> int:
    """Degree of the boundary path from ``a_{i+1}`` to ``R_{a_{i+1}} a_i``.

    The mutated arc is graded so that this path has the negated degree of the path
    ``a_i -> a_{i+1}`` that was smoothed.
    """
    return -alpha1_degree
