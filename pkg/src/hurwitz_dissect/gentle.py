"""Graded gentle quiver of a dissection and Hom dimensions by boundary-path counting.

Arrows are the elementary boundary paths: one per pair of consecutive arc ends in the
fan of a marked point, running from the earlier arc to the later one.  Two arrows
compose to a non-zero path only when they sit at the same marked point; every other
composable pair is a relation.  The line field itself is not modelled; a
:class:`GradingData` only records arrow degrees, defaulting to zero (constant line field).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .surface import DissectionSkeleton, validate_dissection

ArrowId = tuple[int, int, int]  # (marked point, source arc, target arc)


class GradingError(ValueError):
    pass


class InfiniteHom(Exception):
    """Raised internally when boundary paths between two ends can wind forever."""


@dataclass(frozen=True)
class Arrow:
    name: str
    point: int
    source: int
    target: int
    degree: int = 0

    @property
    def ident(self) -> ArrowId:
        return (self.point, self.source, self.target)


@dataclass
class GradingData:
    """Degrees of elementary boundary paths keyed by ``(point, source, target)``."""

    degrees: dict[ArrowId, int] = field(default_factory=dict)
    default: int | None = 0

    def degree(self, ident: ArrowId) -> int:
        if ident in self.degrees:
            return self.degrees[ident]
        if self.default is None:
            raise GradingError(f"no degree given for boundary path {ident}")
        return self.default

    def path_degree(self, path: Sequence[ArrowId]) -> int:
        return sum(self.degree(a) for a in path)

    @classmethod
    def parse(cls, text: str, strict: bool = False) -> GradingData:
        """Lines ``point source target degree``; ``#`` starts a comment."""
        degrees = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise GradingError(f"line {lineno}: expected 'point source target degree', got {raw!r}")
            try:
                p, s, t, deg = (int(x) for x in parts)
            except ValueError:
                raise GradingError(f"line {lineno}: non-integer field in {raw!r}") from None
            degrees[(p, s, t)] = deg
        return cls(degrees, None if strict else 0)

    def dump(self) -> str:
        return "".join(f"{p} {s} {t} {d}\n" for (p, s, t), d in sorted(self.degrees.items()))


def elementary_arrows(sk: DissectionSkeleton) -> list[ArrowId]:
    out = []
    for p in sorted(sk.fans):
        fan = sk.fans[p]
        out.extend((p, a, b) for a, b in zip(fan, fan[1:]))
    return out


@dataclass
class GradedQuiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[str, str]]

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def degree_multiset(self) -> Counter:
        return Counter(a.degree for a in self.arrows)

    def is_gentle(self) -> bool:
        for v in self.vertices:
            if sum(a.source == v for a in self.arrows) > 2 or sum(a.target == v for a in self.arrows) > 2:
                return False
        for a in self.arrows:
            after = [b for b in self.arrows if b.source == a.target]
            zero = [b for b in after if (a.name, b.name) in self.relations]
            if len(zero) > 1 or len(after) - len(zero) > 1:
                return False
        return True

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for v in self.vertices:
            lines.append(f"  {v};")
        for a in self.arrows:
            lines.append(f'  {a.source} -> {a.target} [label="{a.name}:{a.degree}"];')
        lines.append("}")
        lines.append("# relations:")
        for x, y in sorted(self.relations):
            lines.append(f"#   {x} {y}")
        return "\n".join(lines) + "\n"


def quiver_of(sk: DissectionSkeleton, grading: GradingData | None = None) -> GradedQuiver:
    """Vertices are arcs, arrows are elementary boundary paths, relations come from fans."""
    grading = grading or GradingData()
    known = set(elementary_arrows(sk))
    stray = set(grading.degrees) - known
    if stray:
        raise GradingError(f"grading names boundary paths that do not exist: {sorted(stray)}")
    arrows = tuple(
        Arrow(f"p{p}:{s}->{t}", p, s, t, grading.degree((p, s, t))) for p, s, t in elementary_arrows(sk)
    )
    relations = frozenset(
        (a.name, b.name) for a in arrows for b in arrows if a.target == b.source and a.point != b.point
    )
    return GradedQuiver(tuple(range(1, sk.n + 1)), arrows, relations)


@dataclass(frozen=True)
class HomDim:
    total: int
    by_degree: Mapping[int, int]
    infinite: bool = False


def boundary_paths(sk: DissectionSkeleton, i: int, j: int) -> list[tuple[ArrowId, ...]]:
    """Non-zero boundary paths from arc ``i`` to arc ``j`` (the identity excluded)."""
    by_source: dict[int, list[ArrowId]] = {}
    for a in elementary_arrows(sk):
        by_source.setdefault(a[1], []).append(a)
    out = []

    def walk(path: list[ArrowId], used: set):
        last = path[-1]
        if last[2] == j:
            out.append(tuple(path))
        for nxt in by_source.get(last[2], []):
            if nxt[0] != last[0]:
                continue  # relation: paths only continue along one marked boundary
            if nxt in used:
                raise InfiniteHom(nxt)
            used.add(nxt)
            path.append(nxt)
            walk(path, used)
            path.pop()
            used.discard(nxt)

    for a in by_source.get(i, []):
        walk([a], {a})
    return out


def hom_dim(sk: DissectionSkeleton, i: int, j: int, grading: GradingData | None = None) -> HomDim:
    """``dim Hom(X_i, X_j)`` as boundary paths plus the identity when ``i == j``.

    Arcs of one dissection have no interior intersections, so boundary paths are the
    only contributions.
    """
    grading = grading or GradingData()
    if not (1 <= i <= sk.n and 1 <= j <= sk.n):
        raise IndexError(f"vertices must lie in 1..{sk.n}")
    try:
        paths = boundary_paths(sk, i, j)
    except InfiniteHom:
        return HomDim(-1, {}, infinite=True)
    degrees = Counter(grading.path_degree(p) for p in paths)
    if i == j:
        degrees[0] += 1
    return HomDim(sum(degrees.values()), dict(degrees))


@dataclass(frozen=True)
class SequenceCheck:
    ok: bool
    violation: str = ""

    def __bool__(self):
        return self.ok


def is_exceptional_sequence(arcs) -> SequenceCheck:
    """Exceptionality of the objects on an ordered list of arcs (ArcClass) on one chart."""
    from .arcs import arc_system_violations, derived_skeleton

    arcs = list(arcs)
    if not arcs:
        return SequenceCheck(False, "empty sequence")
    problems = arc_system_violations(arcs)
    if problems:
        return SequenceCheck(False, problems[0])
    sk = derived_skeleton(arcs)
    for i in range(1, sk.n + 1):
        h = hom_dim(sk, i, i)
        if h.infinite or h.total != 1 or h.by_degree != {0: 1}:
            return SequenceCheck(False, f"arc {i} is not exceptional: End = {h}")
    for i in range(1, sk.n + 1):
        for j in range(1, i):
            h = hom_dim(sk, i, j)
            if h.infinite or h.total:
                return SequenceCheck(False, f"order: backward morphism from arc {i} to arc {j}")
    if sk.n != sk.surface.n_arcs:
        return SequenceCheck(False, f"fullness: {sk.n} arcs, a full sequence has {sk.surface.n_arcs}")
    problems = validate_dissection(sk)
    if problems:
        return SequenceCheck(False, "fullness: " + problems[0])
    return SequenceCheck(True)


def index_symmetry_check(index12: int, index21: int) -> bool:
    """Indices of the two orientations of one transverse intersection sum to one."""
    return index12 + index21 == 1


def transport_grading(before: DissectionSkeleton, after: DissectionSkeleton, arc_keys_before: Sequence,
                      arc_keys_after: Sequence, grading: GradingData, i: int) -> tuple[GradingData, list[ArrowId]]:
    """Carry arrow degrees across ``sigma_i``.

    Arrows whose endpoint arcs (as isotopy classes) and marked point already existed keep
    their degree.  The new arrow from ``a_{i+1}`` to ``R a_i`` gets the negated degree of
    the smoothed arrow ``a_i -> a_{i+1}`` when there was exactly one such arrow.  Anything else is returned as unconstrained
    (degree 0), since fixing it needs the line field.
    """
    old = {}
    for p, s, t in elementary_arrows(before):
        old[(p, arc_keys_before[s - 1], arc_keys_before[t - 1])] = grading.degree((p, s, t))
    smoothed = {p: grading.degree((p, s, t)) for p, s, t in elementary_arrows(before) if (s, t) == (i, i + 1)}
    new = {}
    unconstrained = []
    for p, s, t in elementary_arrows(after):
        key = (p, arc_keys_after[s - 1], arc_keys_after[t - 1])
        if key in old:
            new[(p, s, t)] = old[key]
        elif (s, t) == (i, i + 1) and len(smoothed) == 1:
            # the connecting path sits at the far end of a_{i+1}, not at the smoothed point
            new[(p, s, t)] = -next(iter(smoothed.values()))
        else:
            new[(p, s, t)] = 0
            unconstrained.append((p, s, t))
    return GradingData(new, 0), unconstrained
