"""Command dispatch shared by the CLI and the HTTP serve mode.

Every user-facing operation is a pure function from a JSON-compatible
parameter dict to a JSON-compatible result dict; the CLI and the server
call the same table, so their payloads agree byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from . import cusp, mutation, obstruction, perf_f1, polygon, staircase, tropical
from .wire import (
    WireError,
    cert_to_json,
    char_from_json,
    char_to_json,
    constraint_to_json,
    corner_to_json,
    polygon_from_json,
    polygon_to_json,
    rat_to_str,
    report_to_json,
    str_to_rat,
)


def _need(params: dict, key: str, kind=None):
    if key not in params:
        raise WireError(f"missing required parameter {key!r}", key)
    val = params[key]
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise WireError(f"parameter {key!r} must be an integer", key)
    return val


def cmd_classify(params: dict) -> dict:
    Q = polygon_from_json(_need(params, "polygon"))
    reports = polygon.classify_all(Q)
    out = {
        "reports": [report_to_json(r) for r in reports],
        "is_t_polygon": all(r.t_data is not None for r in reports),
        "is_dual_fano": polygon.is_dual_fano(Q),
        "area": rat_to_str(Q.area()),
    }
    if out["is_t_polygon"]:
        e, d = polygon.euler_and_degree(Q)
        out["euler"] = e
        out["degree"] = d
    return out


def cmd_mutate(params: dict) -> dict:
    Q = polygon_from_json(_need(params, "polygon"))
    vertex = _need(params, "vertex", int)
    count = params.get("count", "full")
    if params.get("full"):
        count = "full"
    if count != "full":
        if isinstance(count, bool) or not isinstance(count, int):
            raise WireError("count must be an integer or 'full'", "count")
    if not 0 <= vertex < len(Q):
        raise WireError(f"vertex index {vertex} out of range", "vertex")
    result = mutation.mutate(Q, vertex, count)
    return {"polygon": polygon_to_json(result)}


def cmd_mutation_graph(params: dict) -> dict:
    Q = polygon_from_json(_need(params, "polygon"))
    max_nodes = params.get("max_nodes", 25)
    max_coord = params.get("max_coord", 10**6)
    graph = mutation.explore_mutation_graph(Q, max_nodes, max_coord)
    order = list(graph.nodes)
    index = {q: i for i, q in enumerate(order)}
    nodes = []
    for q in order:
        payload = graph.nodes[q]
        node = {"polygon": polygon_to_json(q)}
        if "r_triple" in payload:
            node["r_triple"] = list(payload["r_triple"])
            node["m_multiset"] = list(payload["m_multiset"])
        nodes.append(node)
    edges = [
        {"from": index[a], "to": index[b], "vertex_type": t}
        for a, b, t in graph.edges
    ]
    return {"nodes": nodes, "edges": edges, "truncated": graph.truncated}


def cmd_resolve_cusp(params: dict) -> dict:
    if "char" in params:
        c = char_from_json(_need(params, "char"))
    elif "pairs" in params:
        pairs = _need(params, "pairs")
        try:
            c = cusp.pairs_to_char([(int(n), int(d)) for n, d in pairs])
        except cusp.InvalidPairs as exc:
            raise WireError(str(exc), "pairs") from None
    else:
        raise WireError("need 'char' or 'pairs'", "resolve-cusp")
    chain, mults = cusp.minimal_resolution(c)
    return {
        "char": char_to_json(c)["char"],
        "pairs": [list(p) for p in cusp.char_to_pairs(c)],
        "chain": [char_to_json(x)["char"] for x in chain],
        "multiplicities": mults,
    }


def cmd_ncr(params: dict) -> dict:
    p = _need(params, "p", int)
    q = _need(params, "q", int)
    chain = cusp.ncr_chain(p, q)
    return {
        "p": p,
        "q": q,
        "length": chain.length,
        "rays": [list(r) for r in chain.rays],
        "self_intersections": list(chain.self_intersections),
        "multiplicities": list(chain.multiplicity_sequence),
    }


def _spec_json(spec) -> dict:
    return {
        "target": spec.name,
        "K": spec.K,
        "J": spec.J,
        "seeds": list(spec.seeds),
        "acc": {
            "surd": {"u": spec.acc.u, "v": spec.acc.v, "d": spec.acc.d, "w": spec.acc.w},
            "str": str(spec.acc),
            "float": float(spec.acc),
        },
    }


def cmd_staircase(params: dict) -> dict:
    spec = _get_spec(params)
    steps = params.get("steps", 6)
    outer = staircase.outer_corners(spec, steps)
    inner = staircase.inner_corners(spec, steps)
    corners = []
    for o, i in zip(outer, inner):
        corners.append(corner_to_json(o))
        corners.append(corner_to_json(i))
    out = _spec_json(spec)
    out["corners"] = corners
    return out


def _get_spec(params: dict):
    target = _need(params, "target")
    try:
        return staircase.get_spec(str(target))
    except staircase.UnknownTarget as exc:
        raise WireError(str(exc), "target") from None


def cmd_twist(params: dict) -> dict:
    K = _need(params, "K", int)
    p = _need(params, "p", int)
    q = _need(params, "q", int)
    fn = staircase.twist_psi if params.get("psi") else staircase.twist_phi
    np_, nq = fn(K, p, q)
    return {"p": np_, "q": nq}


def cmd_ghost(params: dict) -> dict:
    count = params.get("count", 5)
    return {
        "members": [
            {"p": p, "q": q, "d": d} for p, q, d in staircase.ghost_family(count)
        ]
    }


def cmd_obstructions(params: dict) -> dict:
    Q = polygon_from_json(_need(params, "polygon"))
    certs = obstruction.find_obstructions(Q)
    out = []
    for c in certs:
        item = cert_to_json(c)
        item["constraint"] = constraint_to_json(obstruction.cert_to_constraints(c))
        out.append(item)
    return {"certificates": out}


def cmd_staircase_mutate(params: dict) -> dict:
    Q = polygon_from_json(_need(params, "polygon"))
    steps = params.get("steps", 4)
    run = obstruction.staircase_by_mutation(Q, steps)
    return {
        "steps": [
            {"polygon": polygon_to_json(q), "certificate": cert_to_json(c)}
            for q, c in run
        ]
    }


def cmd_perf_f1(params: dict) -> dict:
    if params.get("scan"):
        qmax = _need(params, "qmax", int)
        xmax = str_to_rat(_need(params, "xmax"), "xmax")
        quads = sorted(
            perf_f1.generate_perf_region(xmax, qmax),
            key=lambda t: (Fraction(t.p, t.q), t.q),
        )
        return {
            "quadruples": [
                {"p": t.p, "q": t.q, "d": t.d, "m": t.m, "epsilon": t.epsilon}
                for t in quads
            ]
        }
    p = _need(params, "p", int)
    q = _need(params, "q", int)
    quad = perf_f1.perf_candidate(p, q)
    if quad is None:
        return {"found": False}
    return {
        "found": True,
        "p": quad.p,
        "q": quad.q,
        "d": quad.d,
        "m": quad.m,
        "epsilon": quad.epsilon,
    }


def cmd_balance(params: dict) -> dict:
    Q = polygon_from_json(_need(params, "polygon"))
    tangencies = _need(params, "tangencies")
    if not isinstance(tangencies, list):
        raise WireError("tangencies must be a list of lists", "tangencies")
    try:
        report = tropical.check_balanced(Q, tangencies)
    except Exception as exc:
        raise WireError(str(exc), "tangencies") from None
    return {
        "ok": report.ok,
        "vector_balanced": report.vector_balanced,
        "residual": list(report.residual),
        "totals": list(report.totals),
        "gcd": report.gcd,
    }


def cmd_eval_c(params: dict) -> dict:
    spec = _get_spec(params)
    x = str_to_rat(_need(params, "x"), "x")
    try:
        value = staircase.evaluate_staircase(spec, x)
    except staircase.BeyondAccumulation as exc:
        raise WireError(str(exc), "x") from None
    return {"target": spec.name, "x": rat_to_str(x), "value": rat_to_str(value)}


COMMANDS = {
    "classify": cmd_classify,
    "mutate": cmd_mutate,
    "mutation-graph": cmd_mutation_graph,
    "resolve-cusp": cmd_resolve_cusp,
    "ncr": cmd_ncr,
    "staircase": cmd_staircase,
    "twist": cmd_twist,
    "ghost": cmd_ghost,
    "obstructions": cmd_obstructions,
    "staircase-mutate": cmd_staircase_mutate,
    "perf-f1": cmd_perf_f1,
    "balance": cmd_balance,
    "eval-c": cmd_eval_c,
}


def dispatch(command: str, params: dict) -> dict:
    """Run one command; raises WireError for validation problems and
    KeyError for unknown commands."""
    fn = COMMANDS.get(command)
    if fn is None:
        raise KeyError(command)
    try:
        return fn(params)
    except WireError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        # domain errors (non-T vertex, overrun, out-of-domain...) are
        # validation errors from the caller's point of view
        raise WireError(str(exc), command) from exc
