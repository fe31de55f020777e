"""Rational convex polygons with vertex singularity data.

A vertex of a rational polygon carries a cyclic quotient type 1/n(1,q).
Types of the form n = m*r^2, q = m*r*a - 1 (gcd(r,a) = 1) admit one-parameter
smoothings and come with a distinguished eigenray; those are the vertices at
which polygons can be mutated.

Frame convention used throughout: at vertex v with primitive edge directions
E_next (toward the CCW-next vertex) and E_prev (toward the CCW-previous one),
det(E_next, E_prev) = n > 0.  The classifying frame is the unique-up-to-shear
det +1 lattice map F with F(E_next) = (0,-1), F(E_prev) = (n, 1 - m*r*a); the
eigenray is F^{-1}(r, -a).  The type read this way agrees with the
normal-cone convention (q = m*r*a - 1 mod n), which is the one that assigns
1/4(1,1) to the singular vertex of the (1,1,4) weighted projective plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (
    InvalidType,
    LatticeVec,
    Rat,
    RatVec,
    UnimodularAffine,
    det2,
    dot,
    frame_to,
    primitive_of_rational,
    vec_add,
    vec_scale,
    vec_sub,
)


class NotConvex(ValueError):
    pass


class NotCentered(ValueError):
    pass


class NotDelzant(ValueError):
    pass


class NotTPolygon(ValueError):
    pass


class NotTTriangle(ValueError):
    pass


@dataclass(frozen=True)
class EdgeData:
    start_index: int
    direction_primitive: LatticeVec
    affine_length: Rat
    inward_normal: LatticeVec
    height: Optional[Rat]  # None unless the origin is interior


@dataclass(frozen=True)
class VertexType:
    """Cyclic quotient type 1/n(1,q), stored with q = min(q, q^{-1} mod n)."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidType("n must be positive")

    @staticmethod
    def canonical(n: int, q: int) -> "VertexType":
        if n == 1:
            return VertexType(1, 0)
        q %= n
        qinv = pow(q, -1, n)
        return VertexType(n, min(q, qinv))

    def __str__(self):
        return f"1/{self.n}(1,{self.q})"


@dataclass(frozen=True)
class TData:
    m: int
    r: int
    a_residue: int  # in [1, r], coprime to r (1 when r = 1)


@dataclass(frozen=True)
class VertexReport:
    index: int
    vertex_type: VertexType
    t_data: Optional[TData]
    eigenray: Optional[LatticeVec]  # primitive, ambient coordinates, into Q
    is_delzant: bool
    # frame-dependent integer a with q = m*r*a - 1 exactly in the classifying
    # frame; differs from a_residue by a multiple of r.  Present iff t_data.
    a_frame: Optional[int] = None


class RationalPolygon:
    """Strictly convex polygon with rational vertices, stored CCW."""

    def __init__(self, vertices):
        vs = [(Fraction(x), Fraction(y)) for x, y in vertices]
        if len(vs) < 3:
            raise NotConvex("need at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise NotConvex("repeated vertex")
        n = len(vs)
        for i in range(n):
            a, b, c = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
            cross = det2(vec_sub(b, a), vec_sub(c, b))
            if cross <= 0:
                raise NotConvex(
                    "vertices must be strictly convex in counterclockwise order"
                )
        self.vertices: tuple[RatVec, ...] = tuple(vs)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, RationalPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        pts = ", ".join(f"({x},{y})" for x, y in self.vertices)
        return f"RationalPolygon[{pts}]"

    def vertex(self, i: int) -> RatVec:
        return self.vertices[i % len(self.vertices)]

    def edge_vector(self, i: int) -> RatVec:
        """Vector from vertex i to vertex i+1."""
        return vec_sub(self.vertex(i + 1), self.vertex(i))

    def area(self) -> Rat:
        tot = Fraction(0)
        vs = self.vertices
        for i in range(len(vs)):
            tot += det2(vs[i], vs[(i + 1) % len(vs)])
        return tot / 2

    def contains_origin_interior(self) -> bool:
        vs = self.vertices
        for i in range(len(vs)):
            d = vec_sub(vs[(i + 1) % len(vs)], vs[i])
            # origin strictly left of every directed edge
            if det2(d, vec_scale(Fraction(-1), vs[i])) <= 0:
                return False
        return True

    def contains(self, p: RatVec) -> bool:
        vs = self.vertices
        for i in range(len(vs)):
            d = vec_sub(vs[(i + 1) % len(vs)], vs[i])
            if det2(d, vec_sub(p, vs[i])) < 0:
                return False
        return True

    def translate(self, b) -> "RationalPolygon":
        return RationalPolygon([vec_add(v, b) for v in self.vertices])

    def transform(self, g: UnimodularAffine) -> "RationalPolygon":
        vs = [g.apply(v) for v in self.vertices]
        if g.det < 0:
            vs.reverse()
        return RationalPolygon(vs)


def convex_hull(points) -> RationalPolygon:
    """Exact convex hull of rational points (Andrew monotone chain), CCW."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) < 3:
        raise NotConvex("hull of fewer than 3 distinct points")

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and det2(vec_sub(out[-1], out[-2]), vec_sub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return RationalPolygon(hull)


def edges(Q: RationalPolygon) -> list[EdgeData]:
    """Per-edge primitive direction, affine length, inward normal, height."""
    centered = Q.contains_origin_interior()
    out = []
    for i in range(len(Q)):
        d = Q.edge_vector(i)
        prim, length = primitive_of_rational(d)
        normal = (-prim[1], prim[0])
        height = None
        if centered:
            height = -dot(normal, Q.vertex(i))
        out.append(EdgeData(i, prim, length, normal, height))
    return out


def _adjacent_primitives(Q: RationalPolygon, i: int) -> tuple[LatticeVec, LatticeVec]:
    """(E_next, E_prev): primitive directions from vertex i toward its
    CCW-next and CCW-previous neighbors."""
    v = Q.vertex(i)
    e_next, _ = primitive_of_rational(vec_sub(Q.vertex(i + 1), v))
    e_prev, _ = primitive_of_rational(vec_sub(Q.vertex(i - 1), v))
    return e_next, e_prev


def _classifying_frame(e_next: LatticeVec, y_shift: int = 0) -> UnimodularAffine:
    """A det +1 frame sending e_next to (0,-1); shears by y_shift fix (0,-1)
    and move the image of e_prev by (0, y_shift * n)."""
    # any integral solution of F(e_next) = (0,-1) with det F = 1
    x, y = e_next
    # find (u, v) with x*v - y*u = 1, then rows (a b; c d): a x + b y = 0,
    # c x + d y = -1, det = ad - bc = 1.  Take (a, b) = (-y, x) * s? simplest:
    # extended gcd gives u, v with u*x + v*y = 1 (x, y coprime); then
    # F = [[-y, x], [-u, -v]] has F(e_next) = (0, -1), det = y*u + x*v = 1.
    u, v = _bezout(x, y)
    f = UnimodularAffine(-y, x, -u, -v)
    if y_shift:
        f = UnimodularAffine(1, 0, y_shift, 1).compose(f)
    return f


def _bezout(x: int, y: int) -> tuple[int, int]:
    """(u, v) with u*x + v*y = gcd(x, y)."""
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_u, old_v = -old_u, -old_v
    return old_u, old_v


def _t_data_from(n: int, q: int) -> Optional[tuple[int, int, int]]:
    """Search (m, r, a_residue) with n = m r^2, q = m r a - 1 (mod n),
    gcd(a, r) = 1.  Returns None for non-T types."""
    r = 1
    while r * r <= n:
        if n % (r * r) == 0:
            m = n // (r * r)
            if (q + 1) % (m * r) == 0:
                a = ((q + 1) // (m * r)) % r
                if r == 1:
                    return (m, 1, 1)
                if a and math.gcd(a, r) == 1:
                    return (m, r, a)
        r += 1
    return None


def classify_vertex(Q: RationalPolygon, i: int) -> VertexReport:
    """Type, T-data and eigenray of vertex i."""
    e_next, e_prev = _adjacent_primitives(Q, i)
    n = det2(e_next, e_prev)
    if n <= 0:
        raise NotConvex("vertex cone is degenerate")
    frame = _classifying_frame(e_next)
    img_prev = frame.apply_vector(e_prev)
    assert img_prev[0] == n
    y = img_prev[1]
    q_raw = (-y) % n
    vtype = VertexType.canonical(n, q_raw)
    tdat = _t_data_from(n, q_raw)
    if tdat is None:
        return VertexReport(i % len(Q), vtype, None, None, n == 1)
    m, r, a_res = tdat
    # exact frame a: 1 - y = m*r*a_full (integer because the type matched)
    a_full = (1 - y) // (m * r)
    assert 1 - y == m * r * a_full
    inv = frame.inverse()
    ray = inv.apply_vector((r, -a_full))
    return VertexReport(
        i % len(Q), vtype, TData(m, r, a_res), ray, n == 1, a_full
    )


def classify_all(Q: RationalPolygon) -> list[VertexReport]:
    return [classify_vertex(Q, i) for i in range(len(Q))]


def is_t_polygon(Q: RationalPolygon) -> bool:
    return all(r.t_data is not None for r in classify_all(Q))


def dual_polygon(Q: RationalPolygon) -> RationalPolygon:
    """Q° = {u : <u,v> >= -1 for all v in Q}, for centered Q."""
    if not Q.contains_origin_interior():
        raise NotCentered("dual polygon requires the origin in the interior")
    # one facet of Q° per vertex of Q: <u, v_i> = -1; its vertices come from
    # consecutive vertex pairs of Q.
    verts = []
    m = len(Q)
    for i in range(m):
        a, b = Q.vertex(i), Q.vertex(i + 1)
        d = det2(a, b)
        # solve <u,a> = -1, <u,b> = -1
        verts.append((Fraction(-(b[1] - a[1]), d), Fraction(b[0] - a[0], d)))
    return RationalPolygon(verts)


def is_dual_fano(Q: RationalPolygon) -> bool:
    """True iff Q is centered with every edge at height one."""
    if not Q.contains_origin_interior():
        return False
    return all(e.height == 1 for e in edges(Q))


def toric_divisor_c1_and_selfint(Q: RationalPolygon, i: int) -> tuple[Rat, Rat]:
    """(c1, self-intersection) of the divisor over edge i of a centered
    Delzant polygon."""
    if not Q.contains_origin_interior():
        raise NotCentered("requires a centered polygon")
    reps = classify_all(Q)
    m = len(Q)
    if not (reps[i % m].is_delzant and reps[(i + 1) % m].is_delzant):
        raise NotDelzant("edge touches a singular vertex")
    es = edges(Q)
    h = lambda j: es[j % m].height
    self_int = (-h(i + 1) - h(i - 1) + es[i % m].affine_length) / h(i)
    return (2 + self_int, self_int)


def euler_and_degree(Q: RationalPolygon) -> tuple[int, int]:
    """(sum of vertex m-values, 12 - that sum) for a T-polygon.

    The first number is the Euler number of the smoothing, the second its
    anticanonical degree.
    """
    reps = classify_all(Q)
    if any(r.t_data is None for r in reps):
        raise NotTPolygon("polygon has a non-T vertex")
    e = sum(r.t_data.m for r in reps)
    return (e, 12 - e)


def markov_data(Q: RationalPolygon):
    """For a T-triangle: (m-multiset, r-triple, C) with
    sum m_i r_i^2 = C * sqrt(m1 m2 m3) * r1 r2 r3.

    C is returned as the exact pair (sum, m1*m2*m3*(r1*r2*r3)^2) so that
    C = pair[0] / sqrt(pair[1]).
    """
    if len(Q) != 3:
        raise NotTTriangle("not a triangle")
    reps = classify_all(Q)
    if any(r.t_data is None for r in reps):
        raise NotTTriangle("triangle has a non-T vertex")
    pairs = sorted((r.t_data.m, r.t_data.r) for r in reps)
    ms = tuple(p[0] for p in pairs)
    rs = tuple(p[1] for p in pairs)
    total = sum(m * r * r for m, r in pairs)
    mprod = ms[0] * ms[1] * ms[2]
    rprod = rs[0] * rs[1] * rs[2]
    return ms, rs, (total, mprod * rprod**2)


def canonical_form(Q: RationalPolygon) -> RationalPolygon:
    """Deterministic representative of the orbit of Q under orientation
    preserving integral affine maps.

    For each base vertex: translate it to the origin, frame its outgoing
    edge direction to (0,-1), shear the incoming edge image's y-component
    into [0, n); the lexicographically smallest resulting vertex list wins.
    """
    best = None
    m = len(Q)
    for base in range(m):
        e_next, e_prev = _adjacent_primitives(Q, base)
        n = det2(e_next, e_prev)
        f0 = _classifying_frame(e_next)
        y = f0.apply_vector(e_prev)[1]
        shear = -(y // n)  # brings y into [0, n)
        f = _classifying_frame(e_next, y_shift=shear)
        v0 = Q.vertex(base)
        candidate = tuple(
            f.apply_vector(vec_sub(Q.vertex(base + j), v0)) for j in range(m)
        )
        if best is None or candidate < best:
            best = candidate
    return RationalPolygon(best)
