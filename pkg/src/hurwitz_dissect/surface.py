"""Marked surfaces and the ribbon structure of an ordered arc system.

A :class:`DissectionSkeleton` stores, for every marked point, the *linear* counterclockwise
order of arc ends met when turning from the boundary segment on one side of the point to
the boundary segment on the other side.  The full cyclic order at ``p`` is therefore::

    sR(p), fan(p)[0], ..., fan(p)[-1], sL(p)

where ``sR(p)`` / ``sL(p)`` are the ends of the two boundary segments at ``p``.  A boundary
component is listed as ``(p_1, ..., p_k)``; the segment from ``p_i`` to ``p_{i+1}`` has the
end ``sL(p_i)`` at ``p_i`` and ``sR(p_{i+1})`` at ``p_{i+1}``.

Faces are orbits of ``h -> rot(opp(h))`` on half-edges.  Each boundary component also
produces one "cap" orbit made of ``sR`` half-edges only (the outside of the surface);
those are discarded.  Euler bookkeeping: every marked point is a vertex, every arc and
every boundary segment is an edge, every non-cap orbit is a face.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .perms import HurwitzSystem, Transposition, product, surface_invariants


class SkeletonError(ValueError):
    """Structurally inconsistent skeleton data (not a validity violation)."""


@dataclass(frozen=True)
class MarkedSurface:
    g: int
    boundary_marks: tuple[int, ...]

    def __post_init__(self):
        marks = tuple(sorted(self.boundary_marks, reverse=True))
        object.__setattr__(self, "boundary_marks", marks)
        if self.g < 0:
            raise ValueError(f"genus must be non-negative, got {self.g}")
        if not marks:
            raise ValueError("a marked surface needs at least one boundary component")
        if any(k < 1 for k in marks):
            raise ValueError("every boundary component needs a marked point")

    @property
    def b(self) -> int:
        return len(self.boundary_marks)

    @property
    def m(self) -> int:
        return sum(self.boundary_marks)

    @property
    def n_arcs(self) -> int:
        return self.m + self.b + 2 * self.g - 2

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.g - self.b

    def __str__(self):
        return f"g={self.g} b={self.b} marks={list(self.boundary_marks)}"


# half-edge tags
ARC, SR, SL = "a", "r", "l"


@dataclass(frozen=True)
class DissectionSkeleton:
    """Ribbon data of an ordered arc system on a marked surface.

    ``arcs[i - 1] = (p, q)`` are the endpoints of arc ``i``; ``fans[p]`` lists arc indices
    ending at ``p`` in counterclockwise order.  Loops (``p == q``) are refused, which is
    what lets an arc index double as its own arc-end identifier inside a fan.
    """

    g: int
    boundary: tuple[tuple[int, ...], ...]
    fans: Mapping[int, tuple[int, ...]]
    arcs: tuple[tuple[int, int], ...]
    _nxt: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        boundary = tuple(tuple(c) for c in self.boundary)
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        points = [p for c in boundary for p in c]
        if sorted(points) != list(range(1, len(points) + 1)):
            raise SkeletonError(f"boundary lines must list each of 1..m exactly once, got {points}")
        fans = {p: tuple(self.fans.get(p, ())) for p in points}
        extra = set(self.fans) - set(points)
        if extra:
            raise SkeletonError(f"fans given for unknown marked points {sorted(extra)}")
        object.__setattr__(self, "fans", fans)
        nxt = {}
        for comp in boundary:
            for i, p in enumerate(comp):
                nxt[p] = comp[(i + 1) % len(comp)]
        object.__setattr__(self, "_nxt", nxt)
        for i, (p, q) in enumerate(self.arcs, start=1):
            if p == q:
                raise SkeletonError(f"arc {i} is a loop at marked point {p}")
            for end in (p, q):
                if end not in fans:
                    raise SkeletonError(f"arc {i} ends at unknown marked point {end}")
                if fans[end].count(i) != 1:
                    raise SkeletonError(f"arc {i} must appear exactly once in the fan of {end}")
        for p, fan in fans.items():
            for i in fan:
                if not 1 <= i <= len(self.arcs) or p not in self.arcs[i - 1]:
                    raise SkeletonError(f"fan of {p} lists arc {i}, which does not end there")

    @property
    def m(self) -> int:
        return len(self.fans)

    @property
    def n(self) -> int:
        return len(self.arcs)

    @property
    def surface(self) -> MarkedSurface:
        return MarkedSurface(self.g, tuple(len(c) for c in self.boundary))

    def next_on_boundary(self, p: int) -> int:
        return self._nxt[p]

    def other_end(self, i: int, p: int) -> int:
        a, b = self.arcs[i - 1]
        return b if p == a else a

    # ribbon-graph plumbing -------------------------------------------------

    def rotation(self, p: int) -> list[tuple]:
        """Cyclic counterclockwise order of half-edges at ``p``."""
        return [(SR, p)] + [(ARC, i, p) for i in self.fans[p]] + [(SL, p)]

    def _vertex(self, h) -> int:
        return h[-1]

    def _opposite(self, h):
        if h[0] == ARC:
            return (ARC, h[1], self.other_end(h[1], h[2]))
        if h[0] == SL:
            return (SR, self._nxt[h[1]])
        prev = {v: u for u, v in self._nxt.items()}
        return (SL, prev[h[1]])

    def _rotate(self, h):
        rot = self.rotation(self._vertex(h))
        return rot[(rot.index(h) + 1) % len(rot)]

    def half_edges(self) -> list[tuple]:
        return [h for p in sorted(self.fans) for h in self.rotation(p)]

    def orbits(self) -> list[list[tuple]]:
        seen = set()
        out = []
        for h in self.half_edges():
            if h in seen:
                continue
            orb = []
            while h not in seen:
                seen.add(h)
                orb.append(h)
                h = self._rotate(self._opposite(h))
            out.append(orb)
        return out


Face = tuple  # cyclic tuple of edge labels: ("arc", i) or ("bd", p, q)


def _edge_label(sk: DissectionSkeleton, h) -> tuple:
    if h[0] == ARC:
        return ("arc", h[1])
    return ("bd", h[1], sk.next_on_boundary(h[1]))


def face_traversal(sk: DissectionSkeleton) -> list[Face]:
    """Faces of the arc system, each a cyclic sequence of arc sides and boundary segments."""
    faces = []
    for orb in sk.orbits():
        if all(h[0] == SR for h in orb):
            continue
        faces.append(tuple(_edge_label(sk, h) for h in orb))
    return faces


def cap_count(sk: DissectionSkeleton) -> int:
    return sum(1 for orb in sk.orbits() if all(h[0] == SR for h in orb))


def euler_characteristic(sk: DissectionSkeleton) -> int:
    """V - E + F with marked points as vertices, arcs and boundary segments as edges."""
    return sk.m - (sk.n + sk.m) + len(face_traversal(sk))


def boundary_edge_count(face: Face) -> int:
    return sum(1 for e in face if e[0] == "bd")


def order_violations(sk: DissectionSkeleton) -> list[str]:
    out = []
    for p in sorted(sk.fans):
        fan = sk.fans[p]
        for a, b in zip(fan, fan[1:]):
            if b < a:
                out.append(f"order: at marked point {p} arc {b} follows arc {a} counterclockwise")
    return out


def validate_dissection(sk: DissectionSkeleton) -> list[str]:
    """Named violations of the exceptional-dissection conditions; empty means valid."""
    problems = []
    surf = sk.surface
    if sk.n != surf.n_arcs:
        problems.append(f"arc count: n={sk.n} but m+b+2g-2={surf.n_arcs}")
    caps = cap_count(sk)
    if caps != surf.b:
        problems.append(f"boundary: {caps} boundary cycles traced, expected {surf.b}")
    for k, face in enumerate(face_traversal(sk)):
        nb = boundary_edge_count(face)
        if nb != 1:
            problems.append(f"face {k}: {nb} boundary edges (need exactly 1): {face}")
    chi = euler_characteristic(sk)
    if chi != surf.euler_characteristic:
        problems.append(f"euler: V-E+F={chi} but 2-2g-b={surf.euler_characteristic}")
    problems.extend(order_violations(sk))
    return problems


def is_valid(sk: DissectionSkeleton) -> bool:
    return not validate_dissection(sk)


def validate_by_enclosure(sk: DissectionSkeleton) -> list[str]:
    """Second route: no boundary-free enclosed region, maximal arc count, order condition.

    The built surface must also be the declared one, which for a ribbon graph is the
    statement that the faces account for exactly ``2 - 2g - b``.
    """
    problems = []
    surf = sk.surface
    for k, face in enumerate(face_traversal(sk)):
        if boundary_edge_count(face) == 0:
            problems.append(f"enclosed: face {k} has no boundary segment: {face}")
    if sk.n != surf.n_arcs:
        problems.append(f"maximality: n={sk.n} but m+b+2g-2={surf.n_arcs}")
    if euler_characteristic(sk) != surf.euler_characteristic or cap_count(sk) != surf.b:
        problems.append("surface: ribbon structure does not build the declared surface")
    problems.extend(order_violations(sk))
    return problems


def hurwitz_of(sk: DissectionSkeleton) -> HurwitzSystem:
    """``tau_i`` is the transposition of the endpoints of arc ``i``."""
    return HurwitzSystem(sk.m, tuple(Transposition(p, q) for p, q in sk.arcs))


def surface_from_hurwitz(h: HurwitzSystem) -> MarkedSurface:
    g, _b, dist = surface_invariants(h)
    return MarkedSurface(g, dist)


def roundtrip_check(sk: DissectionSkeleton) -> bool:
    problems = validate_dissection(sk)
    if problems:
        raise ValueError("roundtrip_check needs a valid dissection: " + "; ".join(problems))
    return surface_from_hurwitz(hurwitz_of(sk)) == sk.surface


def skeleton_from_hurwitz(h: HurwitzSystem) -> DissectionSkeleton:
    """Cut-and-glue skeleton of the branched cover with monodromy ``h``.

    Arcs are lifts of the matching paths, so every fan lists its arcs in increasing
    index order.  Walking a face from ``sR(x)`` follows the arcs of the product
    permutation and closes at ``sL(W(x))`` with ``W = product(h)``; hence the boundary
    segment ending at ``x`` starts at ``W(x)``.
    """
    g, _b, _dist = surface_invariants(h)
    fans = {p: tuple(i for i, t in enumerate(h.taus, start=1) if p in t) for p in range(1, h.m + 1)}
    w = product(h)
    prev = w  # segment W(x) -> x, so the boundary successor of W(x) is x
    nxt = prev.inverse()
    boundary = []
    seen = set()
    for start in range(1, h.m + 1):
        if start in seen:
            continue
        comp = []
        p = start
        while p not in seen:
            seen.add(p)
            comp.append(p)
            p = nxt(p)
        boundary.append(tuple(comp))
    return DissectionSkeleton(g, tuple(boundary), fans, tuple((t.x, t.y) for t in h.taus))


def skeleton_with_fans(base: DissectionSkeleton, fans: Mapping[int, Sequence[int]],
                       arcs: Iterable[tuple[int, int]]) -> DissectionSkeleton:
    """Same surface and boundary as ``base`` with new arcs and fans."""
    return DissectionSkeleton(base.g, base.boundary, dict(fans), tuple(arcs))
