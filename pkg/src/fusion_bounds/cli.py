"""Command-line entry point.

JSON goes to stdout (or ``--out``), diagnostics to stderr.  Exit codes:
0 ok, 1 verification failure, 2 infeasible, 3 size guard, 4 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from math import ceil

from . import batteries, bounds, config, polytope, render, verify
from . import complex as cx
from .config import MeasurementVector, SensorConfiguration
from .errors import EmptyPolyhedron, FusionError, Infeasible, TooLarge, Unbounded

EXIT_OK, EXIT_VERIFY, EXIT_INFEASIBLE, EXIT_GUARD, EXIT_INPUT = 0, 1, 2, 3, 4


class BadInput(Exception):
    pass


def _parse_sets(text: str) -> list[list[int]]:
    """``"1,2,3;2,3,4"`` -> ``[[1,2,3],[2,3,4]]``."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            out.append([int(x) for x in part.split(",") if x.strip()])
    return out


def resolve_config(text: str) -> SensorConfiguration:
    """A config file path or a shorthand such as ``figure:1a`` or ``cycle:5``."""
    if os.path.exists(text):
        return config.load(text)
    kind, _, arg = text.partition(":")
    if kind == "figure":
        return config.figure(arg)
    if kind == "cycle":
        return config.gen_cycle(int(arg))
    if kind == "squares":
        return batteries.square(int(arg))
    if kind == "hex":
        return config.gen_hex_patch(config.HEX_PATCHES[arg])
    if kind == "example7":
        return config.example7(int(arg))
    named = batteries.named_configs()
    if text in named:
        return named[text]
    raise BadInput(f"no config file or shorthand {text!r}")


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _parse_n(C: SensorConfiguration, text: str) -> MeasurementVector:
    text = text.strip()
    if text.startswith("["):
        n = MeasurementVector(tuple(Fraction(x) for x in json.loads(text)))
    else:
        n = MeasurementVector.parse(text)
    if len(n.values) != C.region_count:
        raise BadInput(f"--n has {len(n.values)} entries, config has {C.region_count} regions")
    return n


# ---------------------------------------------------------------- commands

def cmd_config(args) -> int:
    gen = args.generator
    if gen.startswith("figure:"):
        C = config.figure(gen.split(":", 1)[1])
    elif gen == "from-complex":
        if args.regions is None or args.simplices is None:
            raise BadInput("from-complex needs --regions and --simplices")
        C = config.gen_generic_from_complex(cx.from_simplices(args.regions, _parse_sets(args.simplices)))
    elif gen == "squares":
        if args.cells:
            cells = _parse_sets(args.cells)
        else:
            k = args.size or (int(args.params[0]) if args.params else 2)
            cells = [(i, j) for i in range(k) for j in range(k)]
        C = config.gen_square_lattice(cells, args.norm)
    elif gen == "hex":
        if args.cells:
            C = config.gen_hex_patch(_parse_sets(args.cells))
        else:
            name = args.patch or (args.params[0] if args.params else "flower7")
            if name not in config.HEX_PATCHES:
                raise BadInput(f"unknown hex patch {name!r}; choose from {', '.join(config.HEX_PATCHES)}")
            C = config.gen_hex_patch(config.HEX_PATCHES[name])
    elif gen == "cycle":
        if not args.params:
            raise BadInput("cycle needs a length, e.g. 'config cycle 5'")
        C = config.gen_cycle(int(args.params[0]))
    elif gen == "tetrahedra":
        if args.case is not None:
            C = config.example7(args.case)
        elif args.tets:
            tets = [list(t.strip()) for t in args.tets.split(";") if t.strip()]
            glue = [tuple(p.split("=")) for p in (args.glue or "").split(",") if p.strip()]
            C = config.gen_glued_tetrahedra(tets, glue)
        else:
            raise BadInput("tetrahedra needs --case or --tets")
    else:
        raise BadInput(f"unknown generator {gen!r}")
    _emit(C.to_json(), args.out)
    s = config.summary(C)
    print(" ".join(f"{k}={v}" for k, v in s.items()), file=sys.stderr)
    return EXIT_OK


def cmd_polytope(args) -> int:
    C = resolve_config(args.config)
    H = polytope.positive_fusion_polytope(C) if args.positive else polytope.fusion_polytope(C)
    if args.format == "ine":
        _emit(polytope.write_ine(H), args.out)
        return EXIT_OK
    V = polytope.enumerate_vertices(H, force=args.force, budget=args.budget)
    D = polytope.dominant(V)
    if args.format == "ext":
        _emit(polytope.write_ext(D if args.dominant else V), args.out)
        return EXIT_OK
    out = {"h": H.to_dict(), "v": V.to_dict(), "dominant": D.to_dict()["vertices"]}
    _emit(_dumps(out), args.out)
    print(f"rows={len(H.rows)} vertices={len(V.vertices)} rays={len(V.rays)} "
          f"dominant={len(D.vertices)}", file=sys.stderr)
    return EXIT_OK


def cmd_bounds(args) -> int:
    C = resolve_config(args.config)
    if args.n is None:
        raise BadInput("bounds needs --n")
    n = _parse_n(C, args.n)
    rep = bounds.report(C, n, integers=args.integer_range, formula=args.formula,
                        force=args.force, cap=args.cap)
    _emit(_dumps(rep.to_dict(assignments=args.assignment)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run(args.selector, jobs=args.jobs, include_long=args.long or None)
    _emit(_dumps([r.to_dict() for r in results]), args.out)
    print(verify.table(results), file=sys.stderr)
    return EXIT_OK if all(r.status != verify.FAIL for r in results) else EXIT_VERIFY


def cmd_render(args) -> int:
    C = resolve_config(args.config)
    if args.point:
        # vertices may be negative, so no MeasurementVector here
        values = tuple(Fraction(t.strip()) for t in args.point.split(",") if t.strip())
    elif args.vertices:
        with open(args.vertices) as fh:
            text = fh.read()
        V = polytope.read_ext(text) if text.lstrip().startswith(("V-rep", "*", "begin", "linearity")) \
            else polytope.VRepresentation.from_dict(json.loads(text))
        if not 0 <= args.index < len(V.vertices):
            raise BadInput(f"--index {args.index} out of range (0..{len(V.vertices) - 1})")
        values = V.vertices[args.index]
    else:
        values = tuple(Fraction(0) for _ in range(C.region_count))
    _emit(render.render_svg(C, values), args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    """Is the rounded-up rational minimum always achieved by an integral assignment?"""
    r = batteries.rng(args.seed)
    rows = []
    for i, C in enumerate(batteries.random_generic_battery(args.configs, salt=args.seed)):
        for _ in range(args.samples):
            n = batteries.random_n(r, C.region_count, 3)
            lo = bounds.primal_min(C, n)[0]
            try:
                ints = bounds.integer_range(C, n, cap=args.cap)
            except TooLarge:
                continue
            rows.append({"config": i, "n": [str(x) for x in n], "rational_min": str(lo),
                         "integer_min": min(ints), "agrees": min(ints) == ceil(lo)})
    mismatches = [x for x in rows if not x["agrees"]]
    _emit(_dumps({"instances": len(rows), "mismatches": mismatches}), args.out)
    print(f"instances={len(rows)} mismatches={len(mismatches)}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusion-bounds", description="Exact bounds on fused sensor counts.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("config", help="generate a canonical configuration")
    c.add_argument("generator", help="from-complex | squares | hex | cycle | tetrahedra | figure:<name>")
    c.add_argument("params", nargs="*")
    c.add_argument("--regions", type=int)
    c.add_argument("--simplices", help='e.g. "1,2,3;2,3,4"')
    c.add_argument("--cells", help='e.g. "0,0;0,1;1,0"')
    c.add_argument("--size", type=int)
    c.add_argument("--norm", choices=config.SQUARE_NORMS, default="sup")
    c.add_argument("--patch")
    c.add_argument("--case", type=int)
    c.add_argument("--tets", help='e.g. "abcd;rstu"')
    c.add_argument("--glue", help='e.g. "a=r,u=w"')
    c.add_argument("--out")
    c.set_defaults(func=cmd_config)

    q = sub.add_parser("polytope", help="fusion polytope and its vertices")
    q.add_argument("--config", required=True)
    q.add_argument("--positive", action="store_true")
    q.add_argument("--dominant", action="store_true")
    q.add_argument("--force", action="store_true")
    q.add_argument("--budget", type=float, help="give up (exit 3) after this many seconds")
    q.add_argument("--format", choices=("json", "ine", "ext"), default="json")
    q.add_argument("--out")
    q.set_defaults(func=cmd_polytope)

    b = sub.add_parser("bounds", help="minimum and maximum fused count")
    b.add_argument("--config", required=True)
    b.add_argument("--n")
    b.add_argument("--integer-range", action="store_true")
    b.add_argument("--formula", action="store_true")
    b.add_argument("--assignment", action="store_true", help="include achieving atom assignments")
    b.add_argument("--force", action="store_true")
    b.add_argument("--cap", type=int, default=bounds.DEFAULT_CAP)
    b.add_argument("--format", choices=("json",), default="json")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run the self-check suite")
    v.add_argument("selector", nargs="?", default="all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--long", action="store_true", help="include long-running checks")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw a vector on a planar patch as SVG")
    r.add_argument("--config", required=True)
    r.add_argument("--point", help='region values, e.g. "1,0,1/2" (use --point=-1,... for negatives)')
    r.add_argument("--vertices", help=".ext or JSON V-representation")
    r.add_argument("--index", type=int, default=0)
    r.add_argument("--format", choices=("svg",), default="svg")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)

    e = sub.add_parser("experiment", help="integer minimum versus rounded rational minimum")
    e.add_argument("--configs", type=int, default=30)
    e.add_argument("--samples", type=int, default=10)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--cap", type=int, default=200_000)
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (Infeasible, Unbounded, EmptyPolyhedron) as e:
        msg = {"error": type(e).__name__, "message": str(e)}
        cert = getattr(e, "certificate", None)
        if cert is not None:
            msg["certificate"] = [str(x) for x in cert]
        print(json.dumps(msg, sort_keys=True), file=sys.stderr)
        return EXIT_INFEASIBLE
    except TooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (BadInput, FusionError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
