"""Permutations, transpositions and Hurwitz systems on a labelled point set.

Labels are the integers ``1..m``.  Products are read left to right: ``compose(p, q)``
applies ``p`` first and then ``q``, and ``product(H)`` is ``tau_1 * tau_2 * ... * tau_n``
in that sense.  Every other module uses this convention.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class HurwitzError(ValueError):
    """Raised for malformed permutations, tuples or move indices."""


class UnrealizableError(HurwitzError):
    """Raised when ``n = m + b + 2g - 2`` has no solution with integral ``g >= 0``."""


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..m}``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise HurwitzError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_cycles(cls, m: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(1, m + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.m
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles including fixed points, each starting at its smallest label."""
        seen = set()
        out = []
        for start in range(1, self.m + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.m + 1))

    def __str__(self):
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)


@dataclass(frozen=True, order=True)
class Transposition:
    x: int
    y: int

    def __post_init__(self):
        if self.x == self.y:
            raise HurwitzError(f"transposition needs two distinct labels, got ({self.x} {self.y})")
        if self.x > self.y:
            lo, hi = self.y, self.x
            object.__setattr__(self, "x", lo)
            object.__setattr__(self, "y", hi)

    def __call__(self, z: int) -> int:
        if z == self.x:
            return self.y
        if z == self.y:
            return self.x
        return z

    def __contains__(self, z: int) -> bool:
        return z == self.x or z == self.y

    def conjugate(self, by: Transposition) -> Transposition:
        """``by * self * by``, i.e. relabel both points of ``self`` by ``by``."""
        return Transposition(by(self.x), by(self.y))

    def as_permutation(self, m: int) -> Permutation:
        return Permutation.from_cycles(m, (self.x, self.y))

    def __str__(self):
        return f"({self.x} {self.y})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.m != q.m:
        raise HurwitzError(f"label sets differ: {p.m} vs {q.m}")
    return Permutation(tuple(q(p(i)) for i in range(1, p.m + 1)))


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths in non-increasing order, fixed points counted as 1-cycles."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def generates_full(taus: Sequence[Transposition], m: int) -> bool:
    """True iff the transpositions generate Sym(m).

    A set of transpositions generates the full symmetric group exactly when the
    graph with an edge ``{x, y}`` per transposition is connected.
    """
    if not taus:
        return m == 1
    parent = list(range(m + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t in taus:
        if t.y > m:
            raise HurwitzError(f"{t} is not a transposition of 1..{m}")
        parent[find(t.x)] = find(t.y)
    root = find(1)
    return all(find(i) == root for i in range(2, m + 1))


@dataclass(frozen=True)
class HurwitzSystem:
    m: int
    taus: tuple[Transposition, ...]

    def __post_init__(self):
        if self.m < 1:
            raise HurwitzError("need at least one marked point")
        taus = tuple(t if isinstance(t, Transposition) else Transposition(*t) for t in self.taus)
        object.__setattr__(self, "taus", taus)
        if not taus:
            raise HurwitzError("a Hurwitz system needs at least one transposition")
        if not generates_full(taus, self.m):
            raise HurwitzError(f"transpositions {self.pairs()} do not generate Sym({self.m})")

    @classmethod
    def of(cls, m: int, pairs: Iterable[tuple[int, int]]) -> HurwitzSystem:
        return cls(m, tuple(Transposition(x, y) for x, y in pairs))

    @property
    def n(self) -> int:
        return len(self.taus)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((t.x, t.y) for t in self.taus)

    def encode(self) -> bytes:
        """Length-prefixed normalised pairs; the hash key used by orbit search."""
        return bytes([self.m, self.n]) + bytes(v for t in self.taus for v in (t.x, t.y))

    def __str__(self):
        return "(" + ",".join(str(t) for t in self.taus) + ")"


def product(h: HurwitzSystem) -> Permutation:
    p = Permutation.identity(h.m)
    for t in h.taus:
        p = compose(p, t.as_permutation(h.m))
    return p


def hurwitz_move(h: HurwitzSystem, i: int, inverse: bool = False) -> HurwitzSystem:
    """Apply the braid generator ``sigma_i`` (or its inverse), ``1 <= i <= n - 1``.

    forward: ``(t_i, t_{i+1}) -> (t_{i+1}, t_{i+1} t_i t_{i+1})``
    inverse: ``(t_i, t_{i+1}) -> (t_i t_{i+1} t_i, t_i)``
    """
    if not 1 <= i <= h.n - 1:
        raise HurwitzError(f"move index {i} out of range 1..{h.n - 1}")
    taus = list(h.taus)
    a, b = taus[i - 1], taus[i]
    if inverse:
        taus[i - 1], taus[i] = b.conjugate(a), a
    else:
        taus[i - 1], taus[i] = b, a.conjugate(b)
    return HurwitzSystem(h.m, tuple(taus))


def apply_braid_word(h: HurwitzSystem, word: Iterable[int]) -> HurwitzSystem:
    """Apply signed generators left to right: ``+i`` is sigma_i, ``-i`` its inverse."""
    for g in word:
        h = hurwitz_move(h, abs(g), inverse=g < 0)
    return h


def surface_invariants(h: HurwitzSystem) -> tuple[int, int, tuple[int, ...]]:
    """Genus, boundary count and boundary distribution of the surface realising ``h``.

    Each k-cycle of the product is a boundary component carrying k marked points and
    the genus solves ``n = m + b + 2g - 2``.
    """
    dist = cycle_type(product(h))
    b = len(dist)
    twice_g = h.n - h.m - b + 2
    if twice_g < 0 or twice_g % 2:
        raise UnrealizableError(
            f"n={h.n}, m={h.m}, b={b} gives 2g={twice_g}; no surface realises this system"
        )
    return twice_g // 2, b, dist


def all_transpositions(m: int) -> list[Transposition]:
    return [Transposition(x, y) for x, y in itertools.combinations(range(1, m + 1), 2)]


def all_hurwitz_systems(m: int, n: int) -> Iterator[HurwitzSystem]:
    """Every generating n-tuple of transpositions of 1..m, in lexicographic order."""
    ts = all_transpositions(m)
    for combo in itertools.product(ts, repeat=n):
        if generates_full(combo, m):
            yield HurwitzSystem(m, combo)


@dataclass
class OrbitResult:
    systems: set[HurwitzSystem]
    complete: bool

    def __len__(self):
        return len(self.systems)


def hurwitz_orbit(h: HurwitzSystem, limit: int = 1_000_000) -> OrbitResult:
    """Breadth-first closure of ``h`` under all moves, deduplicated on ``encode()``."""
    if limit < 1:
        raise HurwitzError("limit must be positive")
    seen = {h.encode(): h}
    queue = deque([h])
    while queue:
        cur = queue.popleft()
        for i in range(1, cur.n):
            for inv in (False, True):
                nxt = hurwitz_move(cur, i, inv)
                key = nxt.encode()
                if key in seen:
                    continue
                if len(seen) >= limit:
                    return OrbitResult(set(seen.values()), False)
                seen[key] = nxt
                queue.append(nxt)
    return OrbitResult(set(seen.values()), True)


def move_graph_components(m: int, n: int) -> list[set[HurwitzSystem]]:
    """Connected components of the move graph on all Hurwitz systems of size (m, n)."""
    remaining = set(all_hurwitz_systems(m, n))
    comps = []
    for h in sorted(remaining, key=HurwitzSystem.encode):
        if h not in remaining:
            continue
        orb = hurwitz_orbit(h).systems
        remaining -= orb
        comps.append(orb)
    return comps


def relabel(h: HurwitzSystem, p: Permutation) -> HurwitzSystem:
    """Apply the relabelling ``x -> p(x)`` to every transposition."""
    return HurwitzSystem(h.m, tuple(Transposition(p(t.x), p(t.y)) for t in h.taus))
