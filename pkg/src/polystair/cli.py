"""Command line interface.

Every subcommand routes through polystair.commands.dispatch, the same table
the serve mode uses.  `--json` prints the raw result object; without it a
compact text rendering is shown.  Exit codes: 0 success, 2 validation
error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .commands import dispatch
from .wire import WireError, polygon_from_json


def _load_polygon_arg(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise WireError(f"no such file: {path}", "polygon")
    except json.JSONDecodeError as exc:
        raise WireError(f"malformed JSON in {path}: {exc}", "polygon")
    polygon_from_json(data)  # validate early for a clean error location
    return data


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polystair",
        description="Exact toolkit for polygon mutations, cusp resolutions "
        "and ellipsoid-embedding staircases.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    def parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = parser("classify", help="vertex singularity reports")
    p.add_argument("polygon")

    p = parser("mutate", help="mutate a polygon at a vertex")
    p.add_argument("polygon")
    p.add_argument("--vertex", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--count", type=int)
    g.add_argument("--full", action="store_true")

    p = parser("mutation-graph", help="closure under full mutations")
    p.add_argument("polygon")
    p.add_argument("--max-nodes", type=int, default=25)
    p.add_argument("--max-coord", type=int, default=10**6)

    p = parser("resolve-cusp", help="minimal resolution of a cusp")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pairs", help="Puiseux pairs, e.g. '5,3;16,3'")
    g.add_argument("--char", help="characteristic, e.g. '9;15,16'")

    p = parser("ncr", help="normal-crossing chain of a (p,q) cusp")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = parser("staircase", help="corners of a del Pezzo staircase")
    p.add_argument("target")
    p.add_argument("--steps", type=int, default=6)
    p.add_argument("--plot", metavar="PNG", help="render the staircase to a file")
    p.add_argument("--csv", metavar="CSV", help="write the corner table")

    p = parser("twist", help="Orevkov twist of a cusp pair")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--psi", action="store_true", help="use the reflection twist")

    p = parser("ghost", help="the stabilized ghost-stairs family")
    p.add_argument("--count", type=int, default=5)

    p = parser("obstructions", help="visible obstruction certificates")
    p.add_argument("polygon")
    p.add_argument("--plot", metavar="PNG", help="render the polygon diagram")
    p.add_argument("--csv", metavar="CSV", help="write the certificate table")

    p = parser("staircase-mutate", help="staircase by iterated mutation")
    p.add_argument("polygon")
    p.add_argument("--steps", type=int, default=4)

    p = parser("perf-f1", help="perfect classes on F1")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--qmax", type=int)
    p.add_argument("--xmax", default="10")

    p = parser("balance", help="tropical balancing check")
    p.add_argument("polygon")
    p.add_argument("--tangencies", required=True, help='JSON, e.g. "[[2],[1],[1]]"')

    p = parser("eval-c", help="evaluate the staircase function")
    p.add_argument("--target", required=True)
    p.add_argument("--x", required=True)

    p = parser("seed", help="print a builtin seed polygon")
    p.add_argument("target")

    p = parser("serve", help="local HTTP API")
    p.add_argument("--port", type=int, default=8765)

    return ap


def _params_from_args(args) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "classify":
        return cmd, {"polygon": _load_polygon_arg(args.polygon)}
    if cmd == "mutate":
        params = {"polygon": _load_polygon_arg(args.polygon), "vertex": args.vertex}
        params["count"] = "full" if (args.full or args.count is None) else args.count
        return cmd, params
    if cmd == "mutation-graph":
        return cmd, {
            "polygon": _load_polygon_arg(args.polygon),
            "max_nodes": args.max_nodes,
            "max_coord": args.max_coord,
        }
    if cmd == "resolve-cusp":
        from .wire import parse_char_text, parse_pairs_text

        if args.char:
            c = parse_char_text(args.char)
            return cmd, {"char": [c.m, list(c.betas)]}
        return cmd, {"pairs": [list(p) for p in parse_pairs_text(args.pairs)]}
    if cmd == "ncr":
        return cmd, {"p": args.p, "q": args.q}
    if cmd == "staircase":
        return cmd, {"target": args.target, "steps": args.steps}
    if cmd == "twist":
        return cmd, {"K": args.K, "p": args.p, "q": args.q, "psi": args.psi}
    if cmd == "ghost":
        return cmd, {"count": args.count}
    if cmd == "obstructions":
        return cmd, {"polygon": _load_polygon_arg(args.polygon)}
    if cmd == "staircase-mutate":
        return cmd, {"polygon": _load_polygon_arg(args.polygon), "steps": args.steps}
    if cmd == "perf-f1":
        if args.scan:
            if args.qmax is None:
                raise WireError("--scan requires --qmax", "qmax")
            return cmd, {"scan": True, "qmax": args.qmax, "xmax": args.xmax}
        if args.p is None or args.q is None:
            raise WireError("need --p and --q (or --scan)", "perf-f1")
        return cmd, {"p": args.p, "q": args.q}
    if cmd == "balance":
        try:
            tang = json.loads(args.tangencies)
        except json.JSONDecodeError as exc:
            raise WireError(f"malformed tangencies: {exc}", "tangencies")
        return cmd, {"polygon": _load_polygon_arg(args.polygon), "tangencies": tang}
    if cmd == "eval-c":
        return cmd, {"target": args.target, "x": args.x}
    raise WireError(f"unknown command {cmd}", "command")


def _render_text(cmd: str, result: dict) -> str:
    if cmd == "classify":
        lines = []
        for r in result["reports"]:
            t = r["type"]
            line = f"vertex {r['index']}: 1/{t['n']}(1,{t['q']})"
            if "t_data" in r:
                td = r["t_data"]
                line += f"  (m,r,a)=({td['m']},{td['r']},{td['a_residue']})"
                line += f"  eigenray {tuple(r['eigenray'])}"
            lines.append(line)
        lines.append(
            f"T-polygon: {result['is_t_polygon']}  dual Fano: {result['is_dual_fano']}"
            f"  area: {result['area']}"
        )
        if "euler" in result:
            lines.append(f"euler: {result['euler']}  degree: {result['degree']}")
        return "\n".join(lines)
    if cmd == "staircase":
        lines = [
            f"{result['target']}: K={result['K']} J={result['J']} "
            f"seeds={result['seeds']} acc={result['acc']['str']}"
        ]
        for c in result["corners"]:
            lines.append(f"  {c['kind']:>5} k={c['k']}: ({c['x']}, {c['y']})")
        return "\n".join(lines)
    if cmd == "resolve-cusp":
        chain = " -> ".join(
            f"({m};{','.join(map(str, bs))})" for m, bs in result["chain"]
        )
        return f"{chain}\nmultiplicities: {result['multiplicities']}"
    if cmd == "twist":
        return f"({result['p']},{result['q']})"
    if cmd == "eval-c":
        return f"c({result['x']}) = {result['value']}"
    return json.dumps(result, indent=2)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "serve":
            from .serve import run_server

            run_server(args.port)
            return 0
        if args.command == "seed":
            from .obstruction import seed_polygon
            from .wire import polygon_to_json

            result = {"polygon": polygon_to_json(seed_polygon(args.target))}
            print(json.dumps(result) if args.json else json.dumps(result, indent=2))
            return 0
        cmd, params = _params_from_args(args)
        result = dispatch(cmd, params)
        if cmd == "staircase" and (args.plot or args.csv):
            from . import viz
            from .staircase import get_spec

            if args.plot:
                viz.plot_staircase(get_spec(args.target), args.steps, args.plot)
            if args.csv:
                viz.staircase_csv(get_spec(args.target), args.steps, args.csv)
        if cmd == "obstructions" and (args.plot or args.csv):
            from . import viz

            Q = polygon_from_json(params["polygon"])
            if args.plot:
                viz.plot_polygon(Q, args.plot)
            if args.csv:
                viz.certs_csv(Q, args.csv)
        if args.json:
            print(json.dumps(result, separators=(",", ":"), sort_keys=True))
        else:
            print(_render_text(cmd, result))
        return 0
    except (WireError, KeyError) as exc:
        err = {
            "code": "validation",
            "message": str(exc),
            "location": getattr(exc, "location", ""),
        }
        print(json.dumps({"ok": False, "error": err}), file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(
            json.dumps({"ok": False, "error": {"code": "internal", "message": str(exc)}}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
