"""Flat-file formats for Hurwitz systems, skeletons and dissections.

Hurwitz file::

    m n
    x y            (n lines, x < y)

Skeleton / dissection file (``#`` starts a comment)::

    g b m n
    boundary p1 p2 ...     (one line per boundary component, counterclockwise)
    fan p: i j ...         (one line per marked point, counterclockwise)
    arc i end0 end1        (one line per arc)
    words                  (optional: the arcs above become the chart, these the dissection)
    i: start=p letters=[(r,+1),(s,-1)] end=q
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .arcs import ArcClass, ArcWord, BaseChart, format_arc
from .mutation import Dissection
from .perms import HurwitzError, HurwitzSystem, Transposition
from .surface import DissectionSkeleton, SkeletonError


class FormatError(ValueError):
    def __init__(self, lineno: int, field: str, message: str):
        super().__init__(f"line {lineno}: {field}: {message}")
        self.lineno = lineno
        self.field = field


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(lineno: int, field: str, tokens) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(lineno, field, f"expected integers, got {' '.join(tokens)!r}") from None


# Hurwitz systems --------------------------------------------------------------


def parse_hurwitz(text: str) -> HurwitzSystem:
    lines = list(_lines(text))
    if not lines:
        raise FormatError(1, "header", "empty file")
    lineno, header = lines[0]
    head = header.split()
    if len(head) != 2:
        raise FormatError(lineno, "header", "expected 'm n'")
    m, n = _ints(lineno, "header", head)
    if len(lines) - 1 != n:
        raise FormatError(lineno, "n", f"header announces {n} transpositions, file has {len(lines) - 1}")
    taus = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(lineno, "transposition", "expected 'x y'")
        x, y = _ints(lineno, "transposition", parts)
        if not (1 <= x <= m and 1 <= y <= m):
            raise FormatError(lineno, "transposition", f"labels must lie in 1..{m}")
        if x >= y:
            raise FormatError(lineno, "transposition", "labels must satisfy x < y")
        taus.append(Transposition(x, y))
    try:
        return HurwitzSystem(m, tuple(taus))
    except HurwitzError as exc:
        raise FormatError(lines[0][0], "system", str(exc)) from None


def dump_hurwitz(h: HurwitzSystem) -> str:
    return f"{h.m} {h.n}\n" + "".join(f"{t.x} {t.y}\n" for t in h.taus)


# skeletons and dissections ---------------------------------------------------


@dataclass
class DissectionFile:
    skeleton: DissectionSkeleton
    dissection: Optional[Dissection] = None  # present when a words section was given

    @property
    def chart(self) -> BaseChart:
        return self.dissection.chart if self.dissection else BaseChart(self.skeleton)

    def as_dissection(self) -> Dissection:
        """Words if given, otherwise the skeleton's own arcs on itself as chart."""
        if self.dissection is not None:
            return self.dissection
        return Dissection.reference(BaseChart(self.skeleton))

    def effective_skeleton(self) -> DissectionSkeleton:
        return self.dissection.skeleton() if self.dissection is not None else self.skeleton


_WORD_RE = re.compile(r"^(\d+)\s*:\s*start=(\d+)\s+letters=\[(.*)\]\s+end=(\d+)$")
_LETTER_RE = re.compile(r"\((\d+),([+-]1)\)")


def parse_word(lineno: int, line: str, chart: BaseChart) -> tuple[int, ArcWord]:
    mt = _WORD_RE.match(line)
    if not mt:
        raise FormatError(lineno, "word", "expected 'i: start=p letters=[(r,+1),...] end=q'")
    idx, start, body, end = int(mt.group(1)), int(mt.group(2)), mt.group(3).replace(" ", ""), int(mt.group(4))
    letters = [(int(r), int(s)) for r, s in _LETTER_RE.findall(body)]
    if _LETTER_RE.sub("", body).replace(",", ""):
        raise FormatError(lineno, "letters", f"unreadable letters {body!r}")
    for r, _s in letters:
        if not 1 <= r <= chart.n:
            raise FormatError(lineno, "letters", f"reference arc {r} outside 1..{chart.n}")
    if not 1 <= start <= chart.m:
        raise FormatError(lineno, "start", f"marked point {start} outside 1..{chart.m}")
    try:
        w = ArcWord(chart, start, letters)
    except ValueError as exc:
        raise FormatError(lineno, "letters", str(exc)) from None
    if w.end != end:
        raise FormatError(lineno, "end", f"letters end at {w.end}, file says {end}")
    return idx, w


def parse_dissection(text: str) -> DissectionFile:
    lines = list(_lines(text))
    if not lines:
        raise FormatError(1, "header", "empty file")
    lineno, header = lines[0]
    head = header.split()
    if len(head) != 4:
        raise FormatError(lineno, "header", "expected 'g b m n'")
    g, b, m, n = _ints(lineno, "header", head)
    boundary, fans, arcs = [], {}, {}
    words_at = None
    for k, (lineno, line) in enumerate(lines[1:], start=1):
        tag, _, rest = line.partition(" ")
        if tag == "words":
            words_at = k + 1
            break
        if tag == "boundary":
            boundary.append(tuple(_ints(lineno, "boundary", rest.split())))
        elif tag == "fan":
            p, sep, ids = rest.partition(":")
            if not sep:
                raise FormatError(lineno, "fan", "expected 'fan p: i j ...'")
            (pp,) = _ints(lineno, "fan point", [p.strip()])
            if pp in fans:
                raise FormatError(lineno, "fan", f"second fan line for marked point {pp}")
            fans[pp] = tuple(_ints(lineno, "fan", ids.split()))
        elif tag == "arc":
            vals = _ints(lineno, "arc", rest.split())
            if len(vals) != 3:
                raise FormatError(lineno, "arc", "expected 'arc index end0 end1'")
            if vals[0] in arcs:
                raise FormatError(lineno, "arc", f"arc {vals[0]} listed twice")
            arcs[vals[0]] = (vals[1], vals[2])
        else:
            raise FormatError(lineno, "tag", f"unknown line kind {tag!r}")
    hdr = lines[0][0]
    if len(boundary) != b:
        raise FormatError(hdr, "b", f"header says {b} boundary components, file lists {len(boundary)}")
    if sorted(arcs) != list(range(1, len(arcs) + 1)):
        raise FormatError(hdr, "arc", "arc indices must be 1..n without gaps")
    if len(arcs) != n:
        raise FormatError(hdr, "n", f"header says {n} arcs, file lists {len(arcs)}")
    if sum(len(c) for c in boundary) != m:
        raise FormatError(hdr, "m", f"header says {m} marked points, boundary lines list {sum(len(c) for c in boundary)}")
    try:
        sk = DissectionSkeleton(g, tuple(boundary), fans, tuple(arcs[i] for i in range(1, n + 1)))
    except SkeletonError as exc:
        raise FormatError(hdr, "skeleton", str(exc)) from None
    if words_at is None:
        return DissectionFile(sk)
    try:
        chart = BaseChart(sk)
    except ValueError as exc:
        raise FormatError(hdr, "chart", str(exc)) from None
    words = {}
    for lineno, line in lines[words_at:]:
        idx, w = parse_word(lineno, line, chart)
        if idx in words:
            raise FormatError(lineno, "word", f"word {idx} listed twice")
        words[idx] = w
    if sorted(words) != list(range(1, len(words) + 1)) or not words:
        raise FormatError(lines[words_at - 1][0], "words", "word indices must be 1..k without gaps")
    d = Dissection(chart, tuple(ArcClass.of(words[i]) for i in range(1, len(words) + 1)), check=False)
    return DissectionFile(sk, d)


def dump_skeleton(sk: DissectionSkeleton) -> str:
    out = [f"{sk.g} {len(sk.boundary)} {sk.m} {sk.n}"]
    out += ["boundary " + " ".join(map(str, c)) for c in sk.boundary]
    out += [f"fan {p}: " + " ".join(map(str, sk.fans[p])) for p in sorted(sk.fans)]
    out += [f"arc {i} {p} {q}" for i, (p, q) in enumerate(sk.arcs, start=1)]
    return "\n".join(line.rstrip() for line in out) + "\n"


def dump_dissection(d: Dissection) -> str:
    body = [f"{i}: {format_arc(a.word)}" for i, a in enumerate(d.arcs, start=1)]
    return dump_skeleton(d.chart.reference) + "words\n" + "\n".join(body) + "\n"


def read_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()
