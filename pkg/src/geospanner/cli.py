"""Command line front end: build, verify, gen, render, bench.

Exit codes: 0 success, 2 parse or parameter errors, 3 invalid geometry,
4 verification failure (a witness is printed for the violated bound).
"""

from __future__ import annotations

import argparse
import sys
import time

from .errors import (
    DegenerateInputError,
    InvalidParamsError,
    InvalidPolygonError,
    OutsidePolygonError,
    ParseError,
    VerificationError,
)
from .domain_spanner import build_domain_spanner
from .generators import (
    gen_lower_bound_3eps,
    gen_lower_bound_general,
    random_domain,
    random_simple_polygon,
    random_sites,
)
from .io_formats import (
    PolygonInstance,
    read_instance,
    read_spanner,
    spanner_from_file,
    write_instance,
    write_spanner,
)
from .polygon import PolygonalDomain
from .metrics import all_pairs_geodesic, measure, scaling_experiment
from .refinement import build_refined_spanner
from .render_svg import render_svg
from .simple_spanner import build_simple_spanner
from .spanner_graph import SpannerGraph

EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_VERIFY = 4

LENGTH_RTOL = 1e-9


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_instance(path: str) -> PolygonInstance:
    return read_instance(_read_text(path))


def _build_graph(inst: PolygonInstance, args: argparse.Namespace) -> SpannerGraph:
    sites = list(inst.sites)
    if len(sites) < 2:
        raise DegenerateInputError("need at least two sites")
    if args.variant == "domain":
        return build_domain_spanner(inst.domain, sites, k=args.k)
    if not inst.is_simple:
        raise InvalidPolygonError(
            f"variant {args.variant!r} needs a hole-free polygon; "
            "use --variant domain"
        )
    poly = inst.domain.outer
    if args.variant == "refined":
        return build_refined_spanner(poly, sites, k=args.k, eps=args.eps)
    return build_simple_spanner(poly, sites, variant=args.variant, k=args.k)


def cmd_build(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    mode = args.mode
    if args.variant == "domain":
        if mode == "implicit":
            raise InvalidParamsError(
                "variant domain stores explicit paths; drop --mode implicit"
            )
        mode = "explicit"
    elif mode is None:
        mode = "implicit"
    t0 = time.perf_counter()
    graph = _build_graph(inst, args)
    build_seconds = time.perf_counter() - t0
    oracle = all_pairs_geodesic(inst.domain, list(inst.sites))
    report = measure(graph, oracle, m=inst.m, build_seconds=build_seconds)
    _write_text(args.out, write_spanner(graph, mode=mode, m=inst.m, ratio=report.max_ratio))
    print(
        f"build: n={graph.n} edges={graph.edge_count} "
        f"complexity={graph.total_complexity} ratio={report.max_ratio:.6f} "
        f"({build_seconds:.2f}s)",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    data = read_spanner(_read_text(args.spanner))
    try:
        graph, _ = spanner_from_file(data, inst)
    except OutsidePolygonError as exc:
        raise VerificationError(f"edge path leaves the domain: {exc}") from exc
    for rec in data.records:
        key = (rec.i, rec.j) if rec.i < rec.j else (rec.j, rec.i)
        recomputed = graph.edges[key].length
        if abs(recomputed - rec.length) > LENGTH_RTOL * max(1.0, abs(rec.length)):
            raise VerificationError(
                f"length mismatch on edge {rec.i}-{rec.j}: "
                f"stored {rec.length!r}, recomputed {recomputed!r}"
            )
    oracle = all_pairs_geodesic(inst.domain, list(inst.sites))
    report = measure(graph, oracle, m=inst.m)
    if not report.connected:
        i, j = report.witness
        raise VerificationError(
            f"spanner is disconnected: no path between sites {i} and {j}"
        )
    declared = data.header.get("ratio", "-")
    if declared != "-":
        want = float(declared)
        if abs(report.max_ratio - want) > 1e-9 * max(1.0, want):
            i, j = report.witness
            raise VerificationError(
                f"stretch mismatch: header ratio {want!r}, measured "
                f"{report.max_ratio!r} (worst pair {i}-{j})"
            )
    print(
        f"verify: OK edges={graph.edge_count} ratio={report.max_ratio:.9f} "
        f"complexity={graph.total_complexity}"
    )
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    meta: list[tuple[str, str]] = [("family", args.family)]
    if args.family in ("lb3eps", "lbgeneral"):
        if args.family == "lb3eps":
            lb = gen_lower_bound_3eps(
                args.n, args.m, spike_length=args.spike_length, aperture=args.aperture
            )
        else:
            lb = gen_lower_bound_general(
                args.n,
                args.m,
                t=args.t,
                spike_length=args.spike_length,
                aperture=args.aperture,
            )
        domain = PolygonalDomain(lb.polygon)
        sites = lb.sites
        meta += [(key, repr(val)) for key, val in lb.params]
        meta += [
            ("spike_length", repr(lb.spike_length)),
            ("aperture", repr(lb.aperture)),
            ("passage_complexity", str(lb.passage_complexity)),
        ]
    else:
        meta.append(("seed", str(args.seed)))
        if args.family == "random_simple":
            domain = PolygonalDomain(random_simple_polygon(args.m, seed=args.seed))
        else:
            domain = random_domain(args.holes, args.m, seed=args.seed)
            meta.append(("holes", str(args.holes)))
        sites = random_sites(domain, args.n, seed=args.seed + 1)
    inst = PolygonInstance(domain, tuple(sites), tuple(meta))
    _write_text(args.out, write_instance(inst))
    print(
        f"gen: family={args.family} n={inst.n} m={inst.m}",
        file=sys.stderr,
    )
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    graph = None
    if args.spanner:
        data = read_spanner(_read_text(args.spanner))
        graph, _ = spanner_from_file(data, inst)
    _write_text(args.out, render_svg(inst, graph))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    result = scaling_experiment(args.k, args.sizes, m_factor=args.m_factor)
    print("k n m edges complexity seconds")
    for row in result.rows:
        print(
            f"{row.k} {row.n} {row.m} {row.edge_count} "
            f"{row.complexity} {row.seconds:.2f}"
        )
    for k in args.k:
        print(
            f"slope[k={k}] = {result.slopes[k]:.4f} "
            f"(raw {result.raw_slopes[k]:.4f}, expect ~{1.0 / k:.4f})"
        )
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geospanner",
        description="Geodesic spanners of low complexity for sites in polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a spanner for an instance file")
    p_build.add_argument("instance")
    p_build.add_argument(
        "--variant",
        choices=("plain", "grouped", "refined", "domain"),
        default="plain",
    )
    p_build.add_argument("--k", type=int, default=1)
    p_build.add_argument("--eps", type=float, default=0.5)
    p_build.add_argument("--mode", choices=("implicit", "explicit"), default=None)
    p_build.add_argument("--out", default=None)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="check a spanner file against its instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("spanner")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument(
        "family",
        choices=("lb3eps", "lbgeneral", "random_simple", "random_domain"),
    )
    p_gen.add_argument("--n", type=int, default=8)
    p_gen.add_argument("--m", type=int, default=64)
    p_gen.add_argument("--holes", type=int, default=2)
    p_gen.add_argument("--t", type=float, default=2.0)
    p_gen.add_argument("--spike-length", type=float, default=1.0)
    p_gen.add_argument("--aperture", type=float, default=None)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_render = sub.add_parser("render", help="render an instance (and spanner) to SVG")
    p_render.add_argument("instance")
    p_render.add_argument("--spanner", default=None)
    p_render.add_argument("--out", default=None)
    p_render.set_defaults(func=cmd_render)

    p_bench = sub.add_parser("bench", help="run the complexity scaling experiment")
    p_bench.add_argument("--k", type=int, action="append", default=None)
    p_bench.add_argument(
        "--sizes", type=lambda s: [int(tok) for tok in s.split(",")], default=None
    )
    p_bench.add_argument("--m-factor", type=int, default=8)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "bench":
        if args.k is None:
            args.k = [1, 2]
        if args.sizes is None:
            args.sizes = [16, 32, 64]
    try:
        return args.func(args)
    except (ParseError, InvalidParamsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidPolygonError, OutsidePolygonError, DegenerateInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except VerificationError as exc:
        print(f"verify: FAIL {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
