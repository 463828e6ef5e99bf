"""Named reference charts: small disks and the double covers of the disk."""

from __future__ import annotations

from functools import lru_cache

from .arcs import BaseChart
from .perms import HurwitzSystem
from .surface import skeleton_from_hurwitz


@lru_cache(maxsize=None)
def chart_from_pairs(m: int, pairs: tuple[tuple[int, int], ...], name: str = "") -> BaseChart:
    return BaseChart(skeleton_from_hurwitz(HurwitzSystem.of(m, pairs)), name)


def disk_chart(m: int) -> BaseChart:
    """``m``-marked disk with the fan of arcs from point 1 to every other point."""
    if m < 2:
        raise ValueError("a marked disk needs at least two marked points for an arc")
    return chart_from_pairs(m, tuple((1, k) for k in range(2, m + 1)), f"disk{m}")


def double_cover_chart(n: int) -> BaseChart:
    """Double cover of the disk branched at ``n`` points, charted by the lifts ``((1 2))^n``."""
    names = {1: "disk2", 2: "annulus", 3: "torus1", 4: "fig2"}
    return chart_from_pairs(2, ((1, 2),) * n, names.get(n, f"double{n}"))


def annulus_chart() -> BaseChart:
    return double_cover_chart(2)


def torus_chart() -> BaseChart:
    """Torus with one boundary component and two marked points on it."""
    return double_cover_chart(3)


def figure2_chart() -> BaseChart:
    """Genus one, two boundary components with one marked point each."""
    return double_cover_chart(4)


def corpus_charts() -> dict[str, BaseChart]:
    charts = {
        "disk2": disk_chart(2),
        "disk3": disk_chart(3),
        "disk4": disk_chart(4),
        "annulus": annulus_chart(),
        "torus1": torus_chart(),
        "fig2": figure2_chart(),
        "m3n4": chart_from_pairs(3, ((1, 2), (2, 3), (1, 2), (2, 3)), "m3n4"),
    }
    return charts
