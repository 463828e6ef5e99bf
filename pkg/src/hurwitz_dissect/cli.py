"""Command-line interface.

Exit codes: 0 success, 1 domain or input error (including an invalid dissection),
2 when a separation certificate is inconclusive.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .arcs import ArcError
from .formats import (
    FormatError,
    dump_dissection,
    dump_hurwitz,
    dump_skeleton,
    parse_dissection,
    parse_hurwitz,
    read_file,
)
from .gentle import GradingData, GradingError, quiver_of
from .mutation import Dissection, InvalidStateError, MutationError, braid_act, parse_braid_word
from .orbits import (
    Inconclusive,
    SeparationError,
    counterexample_g1b2,
    default_workers,
    explore,
    format_certificate,
    separate,
)
from .perms import HurwitzError, cycle_type, hurwitz_orbit, product, surface_invariants
from .surface import SkeletonError, validate_dissection

DOMAIN_ERRORS = (FormatError, HurwitzError, SkeletonError, ArcError, MutationError, GradingError,
                 SeparationError, InvalidStateError, OSError, ValueError)


@dataclass
class RunConfig:
    max_depth: int = 4
    max_states: int = 100_000
    budget: int = 20_000
    workers: int = 1

    def __post_init__(self):
        for name in ("max_depth", "max_states", "budget", "workers"):
            if getattr(self, name) < (0 if name == "max_depth" else 1):
                raise ValueError(f"{name} must be positive")


def load_dissection(path: str) -> Dissection:
    """Read a skeleton or dissection file and validate it as a dissection."""
    d = parse_dissection(read_file(path)).as_dissection()
    return Dissection(d.chart, d.arcs)


def _parts(ct) -> str:
    return ",".join(map(str, ct))


# hurwitz ----------------------------------------------------------------------


def cmd_hurwitz_orbit(args) -> int:
    h = parse_hurwitz(read_file(args.file))
    res = hurwitz_orbit(h, limit=args.limit)
    print(f"orbit_size={len(res)} complete={str(res.complete).lower()} cycle_type={_parts(cycle_type(product(h)))}")
    for s in sorted(res.systems, key=lambda x: x.encode()):
        print(s)
    return 0


def cmd_hurwitz_invariants(args) -> int:
    h = parse_hurwitz(read_file(args.file))
    g, b, dist = surface_invariants(h)
    print(f"system={h}")
    print(f"product={product(h)}")
    print(f"cycle_type={_parts(cycle_type(product(h)))}")
    print(f"g={g} b={b} boundary_marks={_parts(dist)}")
    return 0


# dissection ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    f = parse_dissection(read_file(args.file))
    if f.dissection is not None:
        from .arcs import arc_system_violations

        problems = arc_system_violations(f.dissection.arcs)
        if not problems:
            problems = validate_dissection(f.effective_skeleton())
    else:
        problems = validate_dissection(f.skeleton)
    if problems:
        print("Invalid")
        for p in problems:
            print(f"  {p}")
        return 1
    print("Valid")
    return 0


def cmd_dissection_hurwitz(args) -> int:
    d = load_dissection(args.file)
    sys.stdout.write(dump_hurwitz(d.hurwitz()))
    return 0


def cmd_mutate(args) -> int:
    d = load_dissection(args.file)
    word = parse_braid_word(args.word)
    out = braid_act(d, word)
    print(f"word={','.join(map(str, word))}")
    print(f"hurwitz_before={d.hurwitz()}")
    print(f"hurwitz_after={out.hurwitz()}")
    text = dump_dissection(out)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"written={args.output}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_quiver(args) -> int:
    d = load_dissection(args.file)
    grading = GradingData.parse(read_file(args.grading)) if args.grading else GradingData()
    q = quiver_of(d.skeleton(), grading)
    if args.format == "dot":
        sys.stdout.write(q.to_dot())
        return 0
    print("vertices " + " ".join(map(str, q.vertices)))
    for a in q.arrows:
        print(f"arrow {a.name} {a.source} {a.target} degree={a.degree}")
    for x, y in sorted(q.relations):
        print(f"relation {x} {y}")
    return 0


# orbit ----------------------------------------------------------------------------


def cmd_explore(args) -> int:
    cfg = RunConfig(max_depth=args.depth, max_states=args.max_states, workers=args.workers)
    d = load_dissection(args.file)
    rep = explore(d, max_depth=cfg.max_depth, max_states=cfg.max_states, workers=cfg.workers)
    print(f"states={len(rep)} depth={rep.depth} complete={str(rep.complete).lower()}")
    hs = sorted({v["hurwitz"] for v in rep.invariant_log.values()})
    print(f"hurwitz_systems={len(hs)}")
    decks = {v["deck_invariant"] for v in rep.invariant_log.values()}
    if decks != {None}:
        print(f"deck_invariant={','.join(sorted(str(x).lower() for x in decks))}")
    for key in sorted(rep.states, key=lambda k: (len(rep.words[k]), rep.words[k])):
        print("word=" + ",".join(map(str, rep.words[key])) + f" hurwitz={rep.invariant_log[key]['hurwitz']}")
    return 0


def cmd_separate(args) -> int:
    fa = load_dissection(args.a)
    fb = load_dissection(args.b)
    cert = separate(fa, fb, budget=args.budget)
    print(format_certificate(cert))
    print(f"certificate={cert.kind}")
    return 2 if isinstance(cert, Inconclusive) else 0


def cmd_counterexample(args) -> int:
    rep = counterexample_g1b2(max_depth=args.depth, workers=args.workers)
    for line in rep.lines():
        print(line)
    print(f"certificate={rep.certificate.kind}")
    return 0 if rep.ok else 1


# corpus ---------------------------------------------------------------------------


def cmd_corpus(args) -> int:
    from .corpus import corpus_charts

    os.makedirs(args.directory, exist_ok=True)
    for name, chart in corpus_charts().items():
        path = os.path.join(args.directory, f"{name}.dsc")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# {name}: {chart.surface}\n" + dump_skeleton(chart.reference))
        print(path)
    from .orbits import twisted

    presets = {"annulus_twisted": ("annulus", (1,)), "torus1_twisted": ("torus1", (1, 2)),
               "fig2_twisted": ("fig2", (1,))}
    charts = corpus_charts()
    for name, (base, component) in presets.items():
        path = os.path.join(args.directory, f"{name}.dsc")
        d = twisted(Dissection.reference(charts[base]), component)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# {name}: reference arcs of {base} twisted about boundary {list(component)}\n"
                     + dump_dissection(d))
        print(path)
    from .perms import HurwitzSystem

    path = os.path.join(args.directory, "m3n3.hur")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_hurwitz(HurwitzSystem.of(3, [(1, 2), (2, 3), (1, 2)])))
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hurwitz-dissect", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="group", required=True)

    hp = sub.add_parser("hurwitz", help="Hurwitz systems").add_subparsers(dest="cmd", required=True)
    p = hp.add_parser("orbit", help="braid orbit of a Hurwitz system")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=1_000_000)
    p.set_defaults(func=cmd_hurwitz_orbit)
    p = hp.add_parser("invariants", help="genus, boundary data and product cycle type")
    p.add_argument("file")
    p.set_defaults(func=cmd_hurwitz_invariants)

    dp = sub.add_parser("dissection", help="dissection files").add_subparsers(dest="cmd", required=True)
    p = dp.add_parser("validate")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    p = dp.add_parser("hurwitz")
    p.add_argument("file")
    p.set_defaults(func=cmd_dissection_hurwitz)
    p = dp.add_parser("mutate")
    p.add_argument("file")
    p.add_argument("--word", required=True, help='signed generators, e.g. "1,-2,3"')
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_mutate)
    p = dp.add_parser("quiver")
    p.add_argument("file")
    p.add_argument("--grading")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(func=cmd_quiver)

    op = sub.add_parser("orbit", help="braid orbits of dissections").add_subparsers(dest="cmd", required=True)
    p = op.add_parser("explore")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--max-states", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=default_workers())
    p.set_defaults(func=cmd_explore)
    p = op.add_parser("separate")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--budget", type=int, default=20_000)
    p.set_defaults(func=cmd_separate)

    cp = sub.add_parser("counterexample", help="preset scenarios").add_subparsers(dest="cmd", required=True)
    p = cp.add_parser("g1b2")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--workers", type=int, default=default_workers())
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("corpus", help="write the reference charts as skeleton files")
    p.add_argument("directory")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
