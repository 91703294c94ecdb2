"""Command line front end.

Commands: generate, triangulate, voronoi, relate, check, render.
Relation verdicts use the exit-code contract 0=true, 1=false, 2=error so
shell pipelines can branch on them; check exits 0 only when no suite
recorded a failure (expected divergences do not fail a run).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import complexes as cx
from . import harness, io, render
from .mesh import triangulate
from .rational import parse_rational

RELATIONS = {
    "near": cx.near,
    "snear": cx.strongly_near,
    "far": cx.far,
    "sfar": cx.strongly_far,
    "visible": cx.visible,
    "svisible": cx.strongly_visible,
    "invisible": cx.invisible,
    "sinvisible": cx.strongly_invisible,
}

SUITES = (
    "axioms",
    "lemma31",
    "lemma33",
    "thm35",
    "thm36",
    "thm37",
    "regions",
    "leader",
    "all",
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proximesh",
        description="Delaunay meshes, Voronoi duals, and the proximity/"
        "visibility relation algebra with runnable claim suites.",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("generate", help="draw a deterministic site set")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--bbox", type=_parse_box, default="0,0,1,1",
                   help="sampling box as xmin,ymin,xmax,ymax")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    for name, include_voronoi in (("triangulate", False), ("voronoi", True)):
        p = sub.add_parser(
            name,
            help="build the mesh file"
            + (" with voronoi cells included" if include_voronoi else ""),
        )
        p.add_argument("--sites", required=True)
        p.add_argument("--clip-margin", type=parse_rational,
                       default=Fraction(1, 10))
        p.add_argument("--out", required=True)
        p.set_defaults(func=_cmd_build_mesh, include_voronoi=include_voronoi)

    p = sub.add_parser("relate", help="evaluate one relation on two "
                       "subcomplex files")
    p.add_argument("--mesh", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--relation", required=True, choices=sorted(RELATIONS))
    p.add_argument("--witness", help="explicit witness subcomplex for sfar")
    p.set_defaults(func=_cmd_relate)

    p = sub.add_parser("check", help="run a claim suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mesh", help="run against this mesh file instead of "
                   "generated meshes")
    p.add_argument("--constraints", help="constraint file for the segment "
                   "visibility suite")
    p.add_argument("--mode", choices=("pairwise", "chain"),
                   default="pairwise",
                   help="region membership rule for the regions suite")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("render", help="render a mesh (and overlays) to SVG")
    p.add_argument("--mesh", required=True)
    p.add_argument("--subcomplex", action="append", default=[])
    p.add_argument("--voronoi", action="store_true")
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)
    return parser


def _parse_box(text: str) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "box must be xmin,ymin,xmax,ymax"
        )
    vals = tuple(parse_rational(p) for p in parts)
    return vals  # type: ignore[return-value]


def _cmd_generate(args: argparse.Namespace) -> int:
    config = harness.RunConfig(
        seed=args.seed, site_count=args.count, box=args.bbox
    )
    site_set, resamples = harness.generate_sites(
        config.seed, config.site_count, config.box
    )
    if resamples:
        print(f"resampled {resamples} degenerate draws", file=sys.stderr)
    box = ",".join(str(v) for v in config.box)
    io.write_sites(
        args.out,
        site_set.sites,
        header=[
            f"sites generated seed={config.seed} "
            f"count={config.site_count} bbox={box}",
            f"resamples={resamples}",
        ],
    )
    return 0


def _cmd_build_mesh(args: argparse.Namespace) -> int:
    from .mesh import SiteSet

    points = io.read_sites(args.sites)
    site_set = SiteSet(points, clip_margin=args.clip_margin)
    mesh = triangulate(site_set)
    io.write_mesh(args.out, mesh, include_voronoi=args.include_voronoi)
    return 0


def _cmd_relate(args: argparse.Namespace) -> int:
    mesh = io.read_mesh(args.mesh)
    a = io.read_subcomplex(args.a, mesh)
    b = io.read_subcomplex(args.b, mesh)
    if args.relation == "sfar":
        witness = (
            io.read_subcomplex(args.witness, mesh) if args.witness else None
        )
        report = cx.strongly_far(a, b, witness)
    else:
        if args.witness:
            raise ValueError("--witness only applies to sfar")
        report = RELATIONS[args.relation](a, b)
    print(f"relation {args.relation} verdict={str(report.verdict).lower()}")
    if report.witness is not None:
        print("witness " + " ".join(str(x) for x in report.witness))
    if report.counterexample is not None:
        print(
            "counterexample "
            + " ".join(str(x) for x in report.counterexample)
        )
    if report.note:
        print(f"note {report.note}")
    return 0 if report.verdict else 1


def _cmd_check(args: argparse.Namespace) -> int:
    from .regions import EDGE_CHAIN, PAIRWISE_STRONG

    config = harness.RunConfig(seed=args.seed, trials=args.trials)
    region_mode = PAIRWISE_STRONG if args.mode == "pairwise" else EDGE_CHAIN
    mesh = io.read_mesh(args.mesh) if args.mesh else None
    if args.constraints and args.suite not in ("thm37", "all"):
        raise ValueError("--constraints only applies to the thm37 suite")
    if args.constraints:
        constraints = io.read_constraints(args.constraints)
        if mesh is None:
            raise ValueError("--constraints requires --mesh")
        results = [
            harness.suite_segment_visibility(
                config.trials, config.seed, mesh, constraints
            )
        ]
        if args.suite == "all":
            results += harness.run_suite(
                "all", config.trials, config.seed, mesh,
                region_mode=region_mode,
            )
    else:
        results = harness.run_suite(
            args.suite, config.trials, config.seed, mesh,
            region_mode=region_mode,
        )
    text = (
        _format_structured(results)
        if args.format == "structured"
        else _format_text(results)
    )
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.ok() for r in results) else 1


def _format_text(results) -> str:
    lines = []
    for r in results:
        lines.append(f"suite {r.suite} seed={r.seed} trials={r.trials}")
        for rec in r.records:
            line = f"check {rec.label} status={rec.status}"
            if rec.detail:
                line += f" detail={rec.detail}"
            lines.append(line)
        lines.append(
            f"summary suite={r.suite} pass={r.passed} fail={r.failed} "
            f"expected_divergence={r.divergences}"
        )
    return "\n".join(lines) + "\n"


def _format_structured(results) -> str:
    docs = [
        {
            "suite": r.suite,
            "seed": r.seed,
            "trials": r.trials,
            "records": [
                {"label": rec.label, "status": rec.status, "detail": rec.detail}
                for rec in r.records
            ],
            "summary": {
                "pass": r.passed,
                "fail": r.failed,
                "expected_divergence": r.divergences,
            },
        }
        for r in results
    ]
    return json.dumps(docs, sort_keys=True, indent=1) + "\n"


def _cmd_render(args: argparse.Namespace) -> int:
    mesh = io.read_mesh(args.mesh)
    subs = [io.read_subcomplex(path, mesh) for path in args.subcomplex]
    svg = render.render_svg(
        mesh,
        subcomplexes=subs,
        include_voronoi=args.voronoi,
        include_labels=not args.no_labels,
    )
    Path(args.out).write_text(svg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
