"""One-off search for the blown-up del Pezzo seed polygons.

Enumerates Fano lattice polygons (primitive vertices, origin interior),
dualizes, and keeps dual-Fano T-polygons whose Euler number, side count and
staircase-by-mutation run match the target's sequence data.  Results are
frozen into polystair.obstruction.SEED_POLYGONS.
"""

import itertools
import math
import sys

sys.path.insert(0, "src")

from polystair.polygon import (
    RationalPolygon,
    classify_all,
    convex_hull,
    dual_polygon,
    euler_and_degree,
    is_dual_fano,
    is_t_polygon,
    canonical_form,
)
from polystair.obstruction import staircase_by_mutation
from polystair.staircase import get_spec, outer_corners

TARGETS = {
    "bl1": (4, 4),  # (euler sum, sides)
    "bl2": (5, 4),
    "bl3": (6, 3),
    "bl4": (7, 3),
}

B = 4
prims = [
    (x, y)
    for x in range(-B, B + 1)
    for y in range(-B, B + 1)
    if (x, y) != (0, 0) and math.gcd(x, y) == 1
]


def fano_polygons(nv):
    for combo in itertools.combinations(prims, nv):
        try:
            P = convex_hull(combo)
        except Exception:
            continue
        if len(P) != nv:
            continue
        if set(P.vertices) != {(x, y) for x, y in combo}:
            continue
        if not P.contains_origin_interior():
            continue
        yield P


def matches(name, Q, steps=5):
    spec = get_spec(name)
    try:
        run = staircase_by_mutation(Q, steps + 2)
    except Exception:
        return False
    xs = [c.x for _, c in run if c.x > 1]
    want = [c.x for c in outer_corners(spec, len(xs))]
    if xs != want[: len(xs)] or len(xs) < steps:
        return False
    ys = [c.level for _, c in run if c.x > 1]
    wanty = [c.y for c in outer_corners(spec, len(ys))]
    return ys == wanty[: len(ys)]


def main():
    found = {}
    seen = {}
    for name, (euler, sides) in TARGETS.items():
        seen[name] = set()
        for P in fano_polygons(sides):
            Q = dual_polygon(P)
            if len(Q) != sides:
                continue
            if not is_dual_fano(Q) or not is_t_polygon(Q):
                continue
            if euler_and_degree(Q)[0] != euler:
                continue
            if not any(r.is_delzant for r in classify_all(Q)):
                continue
            key = canonical_form(Q)
            if key in seen[name]:
                continue
            seen[name].add(key)
            if matches(name, Q):
                found.setdefault(name, []).append(Q)
                print(name, "FOUND:", Q.vertices, flush=True)
        print(name, "done;", len(found.get(name, [])), "matches,", len(seen[name]), "candidates")
    for name, qs in found.items():
        print(name, "=>", [q.vertices for q in qs[:3]])


if __name__ == "__main__":
    main()
