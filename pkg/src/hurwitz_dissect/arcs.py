"""Arcs on a marked surface as reduced edge paths in a reference arc system.

The arcs of an exceptional dissection form a ribbon graph onto which the surface
deformation retracts (every face is a polygon with one free boundary edge).  Homotopy
classes of paths between marked points are therefore reduced edge paths in that graph,
and for embedded arcs homotopy rel endpoints is isotopy.  A letter ``(r, +1)`` walks
reference arc ``r`` from its first endpoint to its second, ``(r, -1)`` the other way.

Crossings are read off the universal cover, which retracts onto a planar tree.  Each
lift of a marked point touches the boundary in the gap of its linear fan, and two lifts
of arcs cross iff their endpoints interleave in the resulting circular order.  Two lifts
can only interleave if they share a vertex; the interleaving is then decided by the
turning directions at the two ends of their common stretch.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .perms import Permutation
from .surface import DissectionSkeleton, SkeletonError, face_traversal, validate_dissection

Letter = tuple[int, int]  # (reference arc, +1 | -1)


class ArcError(ValueError):
    """Structurally impossible word or chart data."""


class BaseChart:
    """A fixed valid dissection used as the coordinate system for arcs.

    ``slot(p, r)`` is the counterclockwise position of reference arc ``r`` at ``p``
    (``1..deg(p)``); slot ``0`` is the boundary gap.
    """

    def __init__(self, reference: DissectionSkeleton, name: str = ""):
        problems = validate_dissection(reference)
        if problems:
            raise ArcError("reference arc system is not a valid dissection: " + "; ".join(problems))
        self.reference = reference
        self.name = name
        self.n = reference.n
        self.m = reference.m
        self._slot = {p: {r: k for k, r in enumerate(fan, start=1)} for p, fan in reference.fans.items()}
        self._deg = {p: len(fan) for p, fan in reference.fans.items()}
        self._ends = {r: reference.arcs[r - 1] for r in range(1, self.n + 1)}

    def __repr__(self):
        return f"BaseChart({self.name or self.reference.surface})"

    @property
    def surface(self):
        return self.reference.surface

    def deg(self, p: int) -> int:
        return self._deg[p]

    def slot(self, p: int, r: int) -> int:
        return self._slot[p][r]

    def tail(self, letter: Letter) -> int:
        r, s = letter
        a, b = self._ends[r]
        return a if s > 0 else b

    def head(self, letter: Letter) -> int:
        r, s = letter
        a, b = self._ends[r]
        return b if s > 0 else a

    def letters_from(self, p: int) -> list[Letter]:
        out = []
        for r in self.reference.fans[p]:
            a, _b = self._ends[r]
            out.append((r, 1 if a == p else -1))
        return out

    def reference_arc(self, r: int) -> ArcWord:
        return ArcWord(self, self._ends[r][0], ((r, 1),))

    def boundary_segment(self, p: int) -> tuple[Letter, ...]:
        """Path homotopic to the boundary segment from ``p`` to the next marked point."""
        sk = self.reference
        q = sk.next_on_boundary(p)
        # walk the face entered through sR(q): first arc at q, then the next arc at each
        # new endpoint, until the last arc of a fan is reached (which happens at p)
        chain = []
        x = q
        prev_arc = None
        while True:
            fan = sk.fans[x]
            k = 0 if prev_arc is None else fan.index(prev_arc) + 1
            if k >= len(fan):
                break
            r = fan[k]
            a, _b = self._ends[r]
            chain.append((r, 1 if a == x else -1))
            x = sk.other_end(r, x)
            prev_arc = r
        if x != p:
            raise ArcError(f"face walk from {q} closed at {x}, expected {p}")
        return tuple((r, -s) for r, s in reversed(chain))

    def boundary_loop(self, p: int) -> tuple[Letter, ...]:
        """Loop based at ``p`` running once around its boundary component."""
        out: list[Letter] = []
        x = p
        while True:
            out.extend(self.boundary_segment(x))
            x = self.reference.next_on_boundary(x)
            if x == p:
                break
        return free_reduce(out)


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for r, s in letters:
        if stack and stack[-1] == (r, -s):
            stack.pop()
        else:
            stack.append((r, s))
    return tuple(stack)


def invert(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple((r, -s) for r, s in reversed(letters))


class ArcWord:
    """An oriented edge path starting at marked point ``start``."""

    __slots__ = ("chart", "start", "letters", "_hash")

    def __init__(self, chart: BaseChart, start: int, letters: Sequence[Letter]):
        self.chart = chart
        self.start = start
        self.letters = tuple((int(r), 1 if s > 0 else -1) for r, s in letters)
        x = start
        for k, letter in enumerate(self.letters):
            if not 1 <= letter[0] <= chart.n:
                raise ArcError(f"letter {k}: no reference arc {letter[0]}")
            if chart.tail(letter) != x:
                raise ArcError(f"letter {k}: {letter} does not start at marked point {x}")
            x = chart.head(letter)
        self._hash = None

    @property
    def end(self) -> int:
        if not self.letters:
            return self.start
        return self.chart.head(self.letters[-1])

    def vertices(self) -> list[int]:
        out = [self.start]
        for letter in self.letters:
            out.append(self.chart.head(letter))
        return out

    def inverse(self) -> ArcWord:
        return ArcWord(self.chart, self.end, invert(self.letters))

    def __mul__(self, other: ArcWord) -> ArcWord:
        if self.end != other.start:
            raise ArcError(f"cannot concatenate: path ends at {self.end}, next starts at {other.start}")
        return ArcWord(self.chart, self.start, self.letters + other.letters)

    def is_reduced(self) -> bool:
        return all(b != (a[0], -a[1]) for a, b in zip(self.letters, self.letters[1:]))

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (isinstance(other, ArcWord) and self.chart is other.chart
                and self.start == other.start and self.letters == other.letters)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.start, self.letters))
        return self._hash

    def __repr__(self):
        return format_arc(self)


def reduce(word: ArcWord) -> ArcWord:
    """Cancel every backtrack ``r r^-1``; idempotent."""
    return ArcWord(word.chart, word.start, free_reduce(word.letters))


def _direction_key(word: ArcWord) -> tuple:
    return (word.start, word.letters)


def normalize(word: ArcWord) -> ArcWord:
    """Reduced representative in the lexicographically smaller traversal direction."""
    w = reduce(word)
    inv = w.inverse()
    return inv if _direction_key(inv) < _direction_key(w) else w


@dataclass(frozen=True)
class ArcClass:
    """Unoriented isotopy class of an arc: a normalized reduced path."""

    word: ArcWord

    @classmethod
    def of(cls, word: ArcWord) -> ArcClass:
        return cls(normalize(word))

    @property
    def chart(self) -> BaseChart:
        return self.word.chart

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.word.start, self.word.end

    def oriented_from(self, p: int) -> ArcWord:
        if self.word.start == p:
            return self.word
        if self.word.end == p:
            return self.word.inverse()
        raise ArcError(f"arc {self} does not end at {p}")

    def key(self) -> bytes:
        return canonical(self.word)

    def __len__(self):
        return len(self.word)

    def __repr__(self):
        return format_arc(self.word)

    def __lt__(self, other):
        return self.key() < other.key()


def canonical(word: ArcWord) -> bytes:
    """Byte string identifying the unoriented class of ``word``."""
    w = normalize(word)
    out = bytearray([w.start, len(w.letters) & 0xFF, len(w.letters) >> 8])
    for r, s in w.letters:
        out.append(r)
        out.append(1 if s > 0 else 0)
    return bytes(out)


def format_arc(word: ArcWord) -> str:
    letters = ",".join(f"({r},{'+' if s > 0 else '-'}1)" for r, s in word.letters)
    return f"start={word.start} letters=[{letters}] end={word.end}"


# turning data --------------------------------------------------------------


def _slots(word: ArcWord) -> list[tuple[int, int, int]]:
    """Per vertex of the path: (marked point, incoming slot, outgoing slot); gap = 0."""
    chart = word.chart
    verts = word.vertices()
    out = []
    k = len(word.letters)
    for j, v in enumerate(verts):
        s_in = chart.slot(v, word.letters[j - 1][0]) if j > 0 else 0
        s_out = chart.slot(v, word.letters[j][0]) if j < k else 0
        out.append((v, s_in, s_out))
    return out


def departure_key(word: ArcWord) -> tuple[int, ...]:
    """Circular position of the far endpoint of a lift, seen from the start's gap.

    Arcs leaving the same marked point are in counterclockwise order exactly when their
    departure keys are increasing.
    """
    chart = word.chart
    key = []
    for v, s_in, s_out in _slots(word):
        key.append((s_out - s_in) % (chart.deg(v) + 1))
    return tuple(key)


def _ccw(deg: int, ref: int, x: int) -> int:
    return (x - ref) % (deg + 1)


def _interleave(deg: int, a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Do chords ``a`` and ``b`` between slots of a vertex cross (no shared slot)?"""
    lo, hi = sorted(a)
    inside = [lo < x < hi for x in b]
    return inside[0] != inside[1]


def _crossings_oriented(sa: list, sb: list, la: tuple, lb: tuple, chart: BaseChart,
                        skip_identical: bool, single_vertex: bool) -> int:
    count = 0
    ka, kb = len(la), len(lb)
    for i in range(ka + 1):
        vi = sa[i][0]
        for j in range(kb + 1):
            if sb[j][0] != vi:
                continue
            if i > 0 and j > 0 and la[i - 1] == lb[j - 1]:
                continue  # not the start of a maximal common stretch
            t = 0
            while i + t < ka and j + t < kb and la[i + t] == lb[j + t]:
                t += 1
            if t == 0:
                if not single_vertex:
                    continue
                v, a_in, a_out = sa[i]
                _, b_in, b_out = sb[j]
                if {a_in, a_out} & {b_in, b_out}:
                    continue  # shared endpoint at the gap
                if _interleave(chart.deg(v), (a_in, a_out), (b_in, b_out)):
                    count += 1
                continue
            if skip_identical and i == 0 and j == 0 and t == ka == kb:
                continue
            v, a_in, _ = sa[i]
            _, b_in, _ = sb[j]
            d = chart.deg(v)
            h = sa[i][2]
            ra, rb = _ccw(d, h, a_in), _ccw(d, h, b_in)
            y, _, a_out = sa[i + t]
            _, _, b_out = sb[j + t]
            dy = chart.deg(y)
            hy = sa[i + t][1]
            ra2, rb2 = _ccw(dy, hy, a_out), _ccw(dy, hy, b_out)
            if ra == rb or ra2 == rb2:
                continue
            if (ra < rb) == (ra2 < rb2):
                count += 1
    return count


@lru_cache(maxsize=1 << 18)
def _crossings_cached(chart: BaseChart, a: tuple, b: tuple) -> int:
    wa = ArcWord(chart, a[0], a[1])
    if a == b:
        sa = _slots(wa)
        inv = wa.inverse()
        total = _crossings_oriented(sa, sa, wa.letters, wa.letters, chart, True, True)
        total += _crossings_oriented(sa, _slots(inv), wa.letters, inv.letters, chart, False, False)
        return total // 2
    wb = ArcWord(chart, b[0], b[1])
    sa = _slots(wa)
    total = _crossings_oriented(sa, _slots(wb), wa.letters, wb.letters, chart, False, True)
    inv = wb.inverse()
    total += _crossings_oriented(sa, _slots(inv), wa.letters, inv.letters, chart, False, False)
    return total


def interior_crossings(a: ArcClass, b: ArcClass) -> int:
    """Minimal number of interior intersection points (self-intersections if ``a == b``)."""
    if a.chart is not b.chart:
        raise ArcError("arcs live on different charts")
    ka = (a.word.start, a.word.letters)
    kb = (b.word.start, b.word.letters)
    if kb < ka:
        ka, kb = kb, ka
    return _crossings_cached(a.chart, ka, kb)


def is_embedded(a: ArcClass) -> bool:
    return a.word.start != a.word.end and len(a.word) > 0 and interior_crossings(a, a) == 0


def shares_endpoint(a: ArcClass, b: ArcClass) -> dict[int, str]:
    """Common marked points of two distinct arcs and which one comes first counterclockwise.

    Returns ``{p: "a" | "b"}``; its length is the number of shared endpoints.
    """
    if a.key() == b.key():
        raise ArcError("shares_endpoint needs two distinct arcs")
    out = {}
    for p in sorted(set(a.endpoints) & set(b.endpoints)):
        ka = departure_key(a.oriented_from(p))
        kb = departure_key(b.oriented_from(p))
        out[p] = "a" if ka < kb else "b"
    return out


def fan_order(arcs: Sequence[ArcClass], p: int) -> list[int]:
    """1-based indices of the arcs ending at ``p`` in counterclockwise order."""
    ends = []
    for i, a in enumerate(arcs, start=1):
        if p in a.endpoints:
            ends.append((departure_key(a.oriented_from(p)), i))
    ends.sort()
    return [i for _k, i in ends]


def derived_skeleton(arcs: Sequence[ArcClass]) -> DissectionSkeleton:
    """Ribbon data of an arc system given by words on a common chart."""
    if not arcs:
        raise ArcError("empty arc system")
    chart = arcs[0].chart
    ref = chart.reference
    for i, a in enumerate(arcs, start=1):
        if a.chart is not chart:
            raise ArcError(f"arc {i} lives on a different chart")
        p, q = a.endpoints
        if p == q:
            raise SkeletonError(f"arc {i} is a loop at marked point {p}")
    fans = {p: tuple(fan_order(arcs, p)) for p in ref.fans}
    return DissectionSkeleton(ref.g, ref.boundary, fans, tuple(a.endpoints for a in arcs))


def arc_system_violations(arcs: Sequence[ArcClass]) -> list[str]:
    """Embeddedness and pairwise disjointness violations of an arc system."""
    problems = []
    for i, a in enumerate(arcs, start=1):
        if a.word.start == a.word.end:
            problems.append(f"arc {i}: endpoints coincide at {a.word.start}")
            continue
        c = interior_crossings(a, a)
        if c:
            problems.append(f"arc {i}: {c} self-crossing(s)")
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if arcs[i].key() == arcs[j].key():
                problems.append(f"arcs {i + 1} and {j + 1} are isotopic")
                continue
            c = interior_crossings(arcs[i], arcs[j])
            if c:
                problems.append(f"arcs {i + 1} and {j + 1}: {c} interior crossing(s)")
    return problems


def enumerate_paths(chart: BaseChart, start: int, length: int) -> Iterator[ArcWord]:
    """All edge paths (reduced or not) of exactly ``length`` letters from ``start``."""

    def rec(p, acc):
        if len(acc) == length:
            yield ArcWord(chart, start, acc)
            return
        for letter in chart.letters_from(p):
            yield from rec(chart.head(letter), acc + [letter])

    yield from rec(start, [])


def enumerate_reduced(chart: BaseChart, start: int, max_length: int) -> Iterator[ArcWord]:
    """All reduced paths from ``start`` of length ``1..max_length``."""

    def rec(p, acc):
        if acc:
            yield ArcWord(chart, start, acc)
        if len(acc) == max_length:
            return
        for letter in chart.letters_from(p):
            if acc and letter == (acc[-1][0], -acc[-1][1]):
                continue
            yield from rec(chart.head(letter), acc + [letter])

    yield from rec(start, [])


def enumerate_arc_classes(chart: BaseChart, max_length: int, embedded_only: bool = True) -> list[ArcClass]:
    """Distinct arc classes with distinct endpoints and word length at most ``max_length``."""
    seen = {}
    for p in range(1, chart.m + 1):
        for w in enumerate_reduced(chart, p, max_length):
            if w.start == w.end:
                continue
            a = ArcClass.of(w)
            if a.key() in seen:
                continue
            if embedded_only and not is_embedded(a):
                continue
            seen[a.key()] = a
    return sorted(seen.values())


# deck involution and boundary twists --------------------------------------


class DeckInvolution:
    """Sheet swap of a double cover, acting on the chart as a ribbon automorphism.

    ``arc_map[r] = (r', e)`` sends letter ``(r, s)`` to ``(r', e * s)``.
    """

    def __init__(self, chart: BaseChart, point_swap: Permutation, arc_map: dict[int, tuple[int, int]]):
        self.chart = chart
        self.point_swap = point_swap
        self.arc_map = dict(arc_map)
        self._check()

    @classmethod
    def sheet_swap(cls, chart: BaseChart) -> DeckInvolution:
        """The involution of a two-point chart whose arcs all join points 1 and 2."""
        if chart.m != 2:
            raise ArcError("sheet swap needs exactly two marked points")
        swap = Permutation((2, 1))
        return cls(chart, swap, {r: (r, -1) for r in range(1, chart.n + 1)})

    def _check(self):
        ch = self.chart
        ps = self.point_swap
        if ps.m != ch.m or not all(ps(ps(p)) == p for p in range(1, ch.m + 1)):
            raise ArcError("point swap is not an involution of the marked points")
        for r in range(1, ch.n + 1):
            r2, e = self.arc_map[r]
            r3, e2 = self.arc_map[r2]
            if r3 != r or e * e2 != 1:
                raise ArcError(f"arc map is not an involution at {r}")
            letter = (r, 1)
            image = (r2, e)
            if ch.tail(image) != ps(ch.tail(letter)) or ch.head(image) != ps(ch.head(letter)):
                raise ArcError(f"arc map moves endpoints of {r} inconsistently")
        ref = ch.reference
        for p, fan in ref.fans.items():
            if [self.arc_map[r][0] for r in fan] != list(ref.fans[ps(p)]):
                raise ArcError(f"arc map does not preserve the fan at {p}")

    def letter(self, letter: Letter) -> Letter:
        r, s = letter
        r2, e = self.arc_map[r]
        return (r2, s * e)

    def word(self, w: ArcWord) -> ArcWord:
        return ArcWord(w.chart, self.point_swap(w.start), [self.letter(x) for x in w.letters])


def deck_image(arc: ArcClass, iota: DeckInvolution) -> ArcClass:
    if arc.chart is not iota.chart:
        raise ArcError("involution belongs to a different chart")
    return ArcClass.of(iota.word(arc.word))


def boundary_twist(arc: ArcClass, component: Sequence[int], power: int = 1) -> ArcClass:
    """Dehn twist about a curve parallel to the boundary component through ``component``.

    An arc from ``s`` to ``e`` becomes ``delta_s^k * arc * delta_e^-k`` where ``delta_p``
    is the boundary loop at ``p`` and a factor is only present if that end lies on the
    twisted component.
    """
    chart = arc.chart
    comp = set(component)
    w = arc.word
    letters = list(w.letters)
    if w.start in comp:
        loop = chart.boundary_loop(w.start)
        pre = loop if power > 0 else invert(loop)
        letters = list(pre) * abs(power) + letters
    if w.end in comp:
        loop = chart.boundary_loop(w.end)
        post = invert(loop) if power > 0 else loop
        letters = letters + list(post) * abs(power)
    return ArcClass.of(ArcWord(chart, w.start, free_reduce(letters)))


def faces_of(chart: BaseChart):
    return face_traversal(chart.reference)
