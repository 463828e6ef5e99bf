"""Acceptance criteria, one test per criterion, each recording a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
import time

from hurwitz_dissect.arcs import enumerate_paths, reduce
from hurwitz_dissect.corpus import annulus_chart, corpus_charts, disk_chart, figure2_chart, torus_chart
from hurwitz_dissect.gentle import hom_dim, quiver_of
from hurwitz_dissect.mutation import Dissection, braid_act, sigma
from hurwitz_dissect.orbits import (
    Path,
    Witness,
    counterexample_g1b2,
    explore,
    genus0_transitivity_check,
    separate,
    twisted,
)
from hurwitz_dissect.perms import (
    Permutation,
    all_hurwitz_systems,
    apply_braid_word,
    cycle_type,
    hurwitz_move,
    move_graph_components,
    product,
    relabel,
)
from hurwitz_dissect.surface import surface_from_hurwitz, hurwitz_of, validate_dissection

from oracles import all_cancellation_normal_forms

RESULTS: list[str] = []

HURWITZ_RANGE = [(m, n) for m in range(2, 5) for n in range(max(1, m - 1), 6)]


def record(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {label}: {detail}"
    RESULTS.append(line)
    print(line)


_ORBIT_CACHE: dict = {}


def corpus_orbits(depth: int = 4):
    """Depth-limited orbits of every corpus seed, shared by several criteria."""
    if depth not in _ORBIT_CACHE:
        _ORBIT_CACHE[depth] = {name: explore(Dissection.reference(ch), max_depth=depth, max_states=200_000)
                               for name, ch in corpus_charts().items()}
    return _ORBIT_CACHE[depth]


def test_c01_hurwitz_group_laws():
    t0 = time.perf_counter()
    checked = failures = 0
    for m, n in [(m, n) for m, n in HURWITZ_RANGE if n >= 2]:
        for h in all_hurwitz_systems(m, n):
            for i in range(1, n):
                checked += 1
                if hurwitz_move(hurwitz_move(h, i), i, inverse=True) != h:
                    failures += 1
                if hurwitz_move(hurwitz_move(h, i, inverse=True), i) != h:
                    failures += 1
                if i + 1 < n and apply_braid_word(h, (i, i + 1, i)) != apply_braid_word(h, (i + 1, i, i + 1)):
                    failures += 1
                for j in range(i + 2, n):
                    if apply_braid_word(h, (i, j)) != apply_braid_word(h, (j, i)):
                        failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 10
    record("1", ok, f"braid relations, far commutation, inverse laws: {checked} (system, i) pairs, "
                    f"{failures} failures, {dt:.1f}s (limit 10s)")
    assert ok


def _component_table():
    rows = []
    for m, n in HURWITZ_RANGE:
        comps = move_graph_components(m, n)
        systems = sum(len(c) for c in comps)
        products = {product(h).images for c in comps for h in c}
        types = {cycle_type(product(h)) for c in comps for h in c}
        rows.append((m, n, systems, comps, len(products), len(types)))
    return rows


def test_c02_orbit_classification_as_stated():
    t0 = time.perf_counter()
    rows = _component_table()
    m3n3 = next(r for r in rows if r[:2] == (3, 3))
    single = m3n3[2] == 24 and len(m3n3[3]) == 1
    mismatches = [(m, n, len(c), t) for m, n, _s, c, _p, t in rows if len(c) != t]
    dt = time.perf_counter() - t0
    ok = single and not mismatches and dt < 60
    record("2", ok, f"m=3,n=3: {m3n3[2]} triples in {len(m3n3[3])} component(s) (stated: 1); "
                    f"(m,n,components,cycle types) mismatches {mismatches}; {dt:.1f}s")
    assert ok


def test_c02b_orbit_classification_corrected():
    """Components match product permutations; up to relabelling they match cycle types."""
    t0 = time.perf_counter()
    rows = _component_table()
    bad = []
    for m, n, _systems, comps, n_products, n_types in rows:
        if len(comps) != n_products:
            bad.append((m, n, "products", len(comps), n_products))
        index = {h.encode(): k for k, c in enumerate(comps) for h in c}
        parent = list(range(len(comps)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for k, c in enumerate(comps):
            h = next(iter(c))
            for perm in itertools.permutations(range(1, m + 1)):
                j = index[relabel(h, Permutation(perm)).encode()]
                parent[find(j)] = find(k)
        classes = len({find(k) for k in range(len(comps))})
        if classes != n_types:
            bad.append((m, n, "relabelled", classes, n_types))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record("2-corrected", ok, f"components == distinct products and, up to relabelling, == cycle types "
                              f"over {len(rows)} (m,n) sizes; mismatches {bad}; {dt:.1f}s")
    assert ok


def test_c03_product_preserved():
    exceptions = checked = 0
    for m, n in [(m, n) for m, n in HURWITZ_RANGE if n >= 2]:
        for h in all_hurwitz_systems(m, n):
            p = product(h)
            for i in range(1, n):
                for inv in (False, True):
                    checked += 1
                    exceptions += product(hurwitz_move(h, i, inverse=inv)) != p
    ok = exceptions == 0
    record("3", ok, f"product preserved on {checked} moves, {exceptions} exceptions")
    assert ok


def test_c04_riemann_hurwitz_consistency():
    bad = checked = 0
    for name, ch in corpus_charts().items():
        checked += 1
        bad += surface_from_hurwitz(hurwitz_of(ch.reference)) != ch.surface
    for name, rep in corpus_orbits().items():
        for d in rep.states.values():
            checked += 1
            bad += surface_from_hurwitz(hurwitz_of(d.skeleton())) != d.chart.surface
    ok = bad == 0
    record("4", ok, f"surface_from_hurwitz(hurwitz_of(.)) equals the ambient surface on {checked} skeletons, "
                    f"{bad} mismatches")
    assert ok


def test_c05_closure():
    total = valid = 0
    for name, rep in corpus_orbits().items():
        for d in rep.states.values():
            total += 1
            valid += validate_dissection(d.skeleton()) == []
    ok = total == valid and total > 0
    record("5", ok, f"{valid}/{total} states to depth 4 from {len(corpus_charts())} seeds are valid")
    assert ok


def test_c06_equivariance():
    checked = bad = 0
    for rep in corpus_orbits().values():
        for d in rep.states.values():
            h = d.hurwitz()
            for i in range(1, d.n):
                for inv in (False, True):
                    checked += 1
                    bad += sigma(d, i, inverse=inv).hurwitz() != hurwitz_move(h, i, inverse=inv)
    ok = bad == 0 and checked > 0
    record("6", ok, f"hurwitz_of intertwines the actions on {checked} (state, generator) pairs, {bad} failures")
    assert ok


def test_c07_braid_relations_on_dissections():
    checked = bad = 0
    for rep in corpus_orbits().values():
        for d in rep.states.values():
            for i in range(1, d.n - 1):
                checked += 1
                bad += braid_act(d, (i, i + 1, i)).key() != braid_act(d, (i + 1, i, i + 1)).key()
            for i in range(1, d.n):
                for j in range(i + 2, d.n):
                    checked += 1
                    bad += braid_act(d, (i, j)).key() != braid_act(d, (j, i)).key()
    ok = bad == 0 and checked > 0
    record("7", ok, f"braid relation and far commutation on {checked} instances, {bad} failures")
    assert ok


def test_c08_figure2_quiver():
    sk = figure2_chart().reference
    q = quiver_of(sk)
    top = {a.name for a in q.arrows if a.point == 1}
    cross = {(a.name, b.name) for a in q.arrows for b in q.arrows
             if a.target == b.source and ((a.name in top) != (b.name in top))}
    homs = hom_dim(sk, 1, 2).total == 2
    homs &= all(hom_dim(sk, i, i).total == 1 for i in range(1, 5))
    homs &= all(hom_dim(sk, j, i).total == 0 for i in range(1, 5) for j in range(i + 1, 5))
    ok = (len(q.vertices) == 4 and len(q.arrows) == 6 and q.degree_multiset() == {0: 6}
          and q.relations == cross and homs)
    record("8", ok, f"{len(q.vertices)} vertices, {len(q.arrows)} arrows, degrees {dict(q.degree_multiset())}, "
                    f"{len(q.relations)} cross-row relations, hom(1,2)={hom_dim(sk, 1, 2).total}")
    assert ok


def test_c09_genus0_transitivity():
    parts = []
    ok = True
    for m in (3, 4):
        rep = genus0_transitivity_check(disk_chart(m), bound=4, max_depth=8)
        ok &= rep.ok and rep.enumerated > 0 and rep.elapsed < 300
        parts.append(f"m={m}: {rep.reached}/{rep.enumerated} reached (orbit {rep.orbit_states}, "
                     f"radius {rep.depth}, {rep.elapsed:.1f}s)")
    record("9", ok, "; ".join(parts) + "; word-length bound 4")
    assert ok


def test_c10_counterexample():
    rep = counterexample_g1b2(max_depth=6)
    ok = rep.ok and rep.depth == 6 and rep.elapsed < 300
    record("10", ok, f"certificate={rep.certificate.kind}, base deck-invariant={rep.base_deck_invariant}, "
                     f"twisted deck-invariant={rep.twisted_deck_invariant}, same Hurwitz="
                     f"{rep.base_hurwitz == rep.twisted_hurwitz}, BFS depth {rep.depth} with {rep.states} states "
                     f"never reaches the twist={not rep.reached_twisted}, witness preserved={rep.witness_preserved}, "
                     f"{rep.elapsed:.1f}s")
    assert ok


def test_c11_double_covers_with_few_branch_points():
    t0 = time.perf_counter()
    counts = {"path": 0, "witness": 0, "inconclusive": 0}
    for ch, components in ((annulus_chart(), [(1,), (2,)]), (torus_chart(), [(1, 2)])):
        seed = Dissection.reference(ch)
        near = list(explore(seed, max_depth=2).states.values())
        far = [twisted(seed, c, k) for c in components for k in (1, -1)]
        pairs = [(x, y) for x, y in itertools.product(near, repeat=2)]
        pairs += [(seed, y) for y in far] + [(y, seed) for y in far]
        for x, y in pairs:
            assert x.hurwitz() == y.hurwitz()
            cert = separate(x, y, budget=200_000)
            counts[cert.kind] += 1
            if isinstance(cert, Path):
                assert braid_act(x, cert.word).key() == y.key()
    dt = time.perf_counter() - t0
    ok = counts["witness"] == 0 and counts["inconclusive"] == 0 and counts["path"] > 0
    record("11", ok, f"annulus and one-boundary torus: {counts['path']} paths, {counts['witness']} witnesses, "
                     f"{counts['inconclusive']} inconclusive ({dt:.1f}s)")
    assert ok


def test_c12_reduction_confluence():
    t0 = time.perf_counter()
    words = bad = 0
    for ch in corpus_charts().values():
        for p in range(1, ch.m + 1):
            for length in range(0, 7):
                for w in enumerate_paths(ch, p, length):
                    words += 1
                    bad += all_cancellation_normal_forms(w.letters) != {reduce(w).letters}
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60
    record("12", ok, f"reduce agrees with exhaustive cancellation on {words} words of length <= 6, "
                     f"{bad} disagreements, {dt:.1f}s (limit 60s)")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    print()
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
