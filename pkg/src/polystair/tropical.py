"""Balancing checks and degree data for rational curves in toric surfaces,
plus the chopped-vertex construction and a numeric sanity check of the
explicit torus parametrizations.

A tangency assignment gives each edge of the polygon a multiset of contact
orders; it is balanced when the contact-weighted sum of primitive inward
normals vanishes and the per-edge totals are coprime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact import InvalidType, Rat, vec_add, vec_scale, vec_sub
from .polygon import NotDelzant, RationalPolygon, classify_vertex, edges


class BadRatio(ValueError):
    pass


class NumericFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class BalanceReport:
    vector_balanced: bool
    residual: tuple
    totals: tuple[int, ...]
    gcd: int

    @property
    def ok(self) -> bool:
        return self.vector_balanced and self.gcd == 1

    def __bool__(self):
        return self.ok


def check_balanced(Q: RationalPolygon, tangencies) -> BalanceReport:
    """tangencies: per-edge list/multiset of positive contact orders, indexed
    like edges(Q).  Balanced iff sum k * inward_normal = 0 and the per-edge
    totals have gcd 1."""
    es = edges(Q)
    if len(tangencies) != len(es):
        raise InvalidType("one tangency multiset per edge required")
    rx = ry = 0
    totals = []
    for e, ks in zip(es, tangencies):
        ks = list(ks)
        if any(int(k) != k or k < 1 for k in ks):
            raise InvalidType("contact orders must be positive integers")
        d = sum(int(k) for k in ks)
        totals.append(d)
        rx += d * e.inward_normal[0]
        ry += d * e.inward_normal[1]
    g = math.gcd(*totals) if totals else 0
    return BalanceReport(rx == 0 and ry == 0, (rx, ry), tuple(totals), g)


def _partitions(n: int):
    """All multisets of positive integers summing to n (descending parts)."""
    if n == 0:
        yield ()
        return

    def rec(n, mx):
        if n == 0:
            yield ()
            return
        for first in range(min(n, mx), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def enumerate_degrees(Q: RationalPolygon, total_bound: int) -> list[tuple[tuple[int, ...], ...]]:
    """All balanced tangency assignments with total contact sum <= bound,
    up to per-edge multiset equality."""
    if total_bound < 1:
        return []
    es = edges(Q)
    normals = [e.inward_normal for e in es]
    k = len(normals)
    out = []
    # enumerate per-edge totals first (balance depends only on those)
    for totals in product(range(total_bound + 1), repeat=k):
        s = sum(totals)
        if not (1 <= s <= total_bound):
            continue
        rx = sum(d * n[0] for d, n in zip(totals, normals))
        ry = sum(d * n[1] for d, n in zip(totals, normals))
        if rx or ry:
            continue
        if math.gcd(*totals) != 1:
            continue
        for parts in product(*(_partitions(d) for d in totals)):
            out.append(parts)
    return out


def chop_vertex(Q: RationalPolygon, i: int, k: int):
    """Chop the Delzant vertex i at the midpoints of its edges.

    The adjacent edges must have affine lengths k*p and k*q with
    gcd(p, q) = 1.  Returns (chopped polygon, tangency template) where the
    template carries [k] on the new slant edge, the full affine length on
    each untouched edge, and nothing on the two truncated half-edges.
    """
    rep = classify_vertex(Q, i)
    if not rep.is_delzant:
        raise NotDelzant(f"vertex {i} is not Delzant")
    if k < 1:
        raise InvalidType("k must be positive")
    es = edges(Q)
    m = len(Q)
    i %= m
    len_out = es[i].affine_length  # edge i: from vertex i
    len_in = es[(i - 1) % m].affine_length  # edge i-1: into vertex i
    for L in (len_out, len_in):
        if (L / k).denominator != 1:
            raise BadRatio(f"edge length {L} not divisible by k = {k}")
    p, q = int(len_out / k), int(len_in / k)
    if math.gcd(p, q) != 1:
        raise BadRatio(f"adjacent lengths not of the form (kp, kq) coprime: {(p, q)}")
    v = Q.vertex(i)
    half = Fraction(1, 2)
    v_out = vec_add(vec_scale(half, v), vec_scale(half, Q.vertex(i + 1)))
    v_in = vec_add(vec_scale(half, v), vec_scale(half, Q.vertex(i - 1)))
    verts = [v_in, v_out]
    for j in range(1, m):
        verts.append(Q.vertex(i + j))
    chopped = RationalPolygon(verts)
    # chopped edges: [v_in, v_out] slant, [v_out, v_{i+1}] truncated,
    # full edges of Q, [v_{i-1}, v_in] truncated
    template: list[list[int]] = [[k], []]
    for j in range(1, m - 1):
        L = es[(i + j) % m].affine_length
        if L.denominator != 1:
            raise BadRatio(f"edge {j} has non-integral affine length {L}")
        template.append([int(L)])
    template.append([])
    report = check_balanced(chopped, template)
    assert report.vector_balanced, "chop template must balance"
    return chopped, [tuple(t) for t in template]


def numeric_vanishing_orders(exponents, samples: int = 12, radius: float = 1e-4):
    """Check the torus parametrization f(z) = prod (z - w_i)^{v_i} against
    its prescribed vanishing orders by log-log regression near each puncture.

    `exponents`: list of (puncture w_i as complex, (v_x, v_y)).  The vectors
    must sum to zero.  Returns a list of dicts with fitted orders; raises
    NumericFailure when a fit strays more than 1e-3 (relative for nonzero
    targets, absolute for zero)."""
    import cmath

    punctures = [complex(w) for w, _ in exponents]
    vecs = [(int(v[0]), int(v[1])) for _, v in exponents]
    if len(punctures) != len(set(punctures)):
        raise InvalidType("punctures must be distinct")
    sx = sum(v[0] for v in vecs)
    sy = sum(v[1] for v in vecs)
    if sx or sy:
        raise InvalidType("exponent vectors must sum to zero")
    if samples < 3 or radius <= 0:
        raise NumericFailure("degenerate sampling parameters")

    def f(z):
        fx = fy = complex(1)
        for w, (vx, vy) in zip(punctures, vecs):
            base = z - w
            fx *= base**vx
            fy *= base**vy
        return fx, fy

    results = []
    angle = cmath.exp(0.7291j)  # fixed generic direction
    for w, (vx, vy) in zip(punctures, vecs):
        radii = [radius * (0.5**j) for j in range(samples)]
        logs_r, logs_x, logs_y = [], [], []
        for r in radii:
            z = w + r * angle
            fx, fy = f(z)
            if fx == 0 or fy == 0:
                raise NumericFailure("sample hit a zero exactly")
            logs_r.append(math.log(r))
            logs_x.append(math.log(abs(fx)))
            logs_y.append(math.log(abs(fy)))
        fit_x = _slope(logs_r, logs_x)
        fit_y = _slope(logs_r, logs_y)
        for fit, target in ((fit_x, vx), (fit_y, vy)):
            err = abs(fit - target) / max(1, abs(target))
            if err > 1e-3:
                raise NumericFailure(
                    f"fitted order {fit:.6f} vs {target} at puncture {w}"
                )
        results.append({"puncture": w, "expected": (vx, vy), "fitted": (fit_x, fit_y)})
    return results


def _slope(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den
