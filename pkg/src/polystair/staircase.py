"""Staircase numerics for the six rigid del Pezzo targets.

Each target carries an integer sequence governed by g_{k+2J} = K g_{k+J} - g_k
whose ratios locate the steps of the ellipsoid embedding function: the k-th
outer corner sits at x = g_{k+J}/g_k with height y = g_{k+J}/(g_k + g_{k+J}),
and successive outer corners along a strand are related by the twist
(p, q) -> (Kp - q, p).  Accumulation points (K + sqrt(K^2-4))/2 are kept as
exact quadratic surds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import InvalidType, NotCoprime, Rat


class RequiresPGreater(ValueError):
    pass


class RequiresSlopeAboveK(ValueError):
    pass


class BeyondAccumulation(ValueError):
    pass


class UnknownTarget(KeyError):
    pass


@dataclass(frozen=True)
class Surd:
    """(u + v*sqrt(d)) / w with integer u, v, w > 0, d > 0 squarefree-ish."""

    u: int
    v: int
    d: int
    w: int

    def __float__(self):
        return (self.u + self.v * math.sqrt(self.d)) / self.w

    def compare_rational(self, x: Rat) -> int:
        """Sign of (self - x), computed exactly."""
        x = Fraction(x)
        # self - x = (u*xden - w*xnum + v*xden*sqrt(d)) / (w*xden)
        lin = self.u * x.denominator - x.numerator * self.w
        rad = self.v * x.denominator
        # sign of lin + rad*sqrt(d), with w*xden > 0
        if rad == 0:
            return (lin > 0) - (lin < 0)
        if lin >= 0 and rad >= 0:
            return 1 if (lin or rad) else 0
        if lin <= 0 and rad <= 0:
            return -1 if (lin or rad) else 0
        # opposite signs: compare lin^2 against rad^2*d
        lhs, rhs = lin * lin, rad * rad * self.d
        if lin > 0:  # lin > 0 > rad: positive iff lin^2 > rad^2 d
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def __str__(self):
        core = f"{self.u}+{self.v}*sqrt({self.d})" if self.v else str(self.u)
        return f"({core})/{self.w}" if self.w != 1 else f"({core})"


@dataclass(frozen=True)
class StaircaseSpec:
    name: str
    K: int
    J: int
    seeds: tuple[int, ...]
    acc: Surd

    def __post_init__(self):
        assert len(self.seeds) == 2 * self.J


@dataclass(frozen=True)
class CornerPoint:
    kind: str  # "outer" | "inner"
    k: int
    x: Rat
    y: Rat
    p: int | None = None
    q: int | None = None


_TABLE = [
    ("cp2", 7, 2, (2, 1, 1, 2), Surd(7, 3, 5, 2)),
    ("cp1xcp1", 6, 2, (1, 1, 1, 3), Surd(3, 2, 2, 1)),
    ("bl1", 6, 3, (1, 1, 1, 1, 2, 4), Surd(3, 2, 2, 1)),
    ("bl2", 5, 3, (1, 1, 1, 1, 2, 3), Surd(5, 1, 21, 2)),
    ("bl3", 4, 2, (1, 1, 1, 2), Surd(2, 1, 3, 1)),
    ("bl4", 3, 2, (1, 2, 1, 3), Surd(3, 1, 5, 2)),
]

TARGET_ALIASES = {
    "cp2": "cp2",
    "cp1xcp1": "cp1xcp1",
    "cp1xcp1(2)": "cp1xcp1",
    "bl1": "bl1",
    "bl2": "bl2",
    "bl3": "bl3",
    "bl4": "bl4",
    "#1": "bl1",
    "#2": "bl2",
    "#3": "bl3",
    "#4": "bl4",
}


@lru_cache(maxsize=None)
def builtin_specs() -> tuple[StaircaseSpec, ...]:
    return tuple(StaircaseSpec(*row) for row in _TABLE)


def get_spec(name: str) -> StaircaseSpec:
    key = TARGET_ALIASES.get(name.lower())
    if key is None:
        raise UnknownTarget(f"unknown target {name!r}; known: {sorted(set(TARGET_ALIASES))}")
    for s in builtin_specs():
        if s.name == key:
            return s
    raise UnknownTarget(name)


def sequence(spec: StaircaseSpec, n: int) -> list[int]:
    """g_0 .. g_n."""
    if n < 0:
        raise InvalidType("n must be >= 0")
    g = list(spec.seeds)
    while len(g) <= n:
        g.append(spec.K * g[-spec.J] - g[-2 * spec.J])
    return g[: n + 1]


def _first_outer_k(spec: StaircaseSpec) -> int:
    g = sequence(spec, 4 * spec.J)
    for k in range(3 * spec.J):
        if Fraction(g[k + spec.J], g[k]) > 1:
            return k
    raise AssertionError("no outer corner with x > 1 in range")


def outer_corners(spec: StaircaseSpec, count: int) -> list[CornerPoint]:
    """The first `count` outer corners with x > 1, in increasing x order."""
    k0 = _first_outer_k(spec)
    g = sequence(spec, k0 + count + spec.J)
    out = []
    for k in range(k0, k0 + count):
        p, q = g[k + spec.J], g[k]
        gcd = math.gcd(p, q)
        p, q = p // gcd, q // gcd
        out.append(
            CornerPoint("outer", k, Fraction(p, q), Fraction(p, p + q), p, q)
        )
    return out


def inner_corners(spec: StaircaseSpec, count: int) -> list[CornerPoint]:
    """Inner corners paired with the outer corners of outer_corners():
    the k-th inner corner follows the k-th outer corner."""
    k0 = _first_outer_k(spec)
    g = sequence(spec, k0 + count + 2 * spec.J + 1)
    out = []
    for k in range(k0, k0 + count):
        x = Fraction(
            g[k + spec.J] * (g[k + 1] + g[k + 1 + spec.J]),
            g[k + 1] * (g[k] + g[k + spec.J]),
        )
        y = Fraction(g[k + spec.J], g[k] + g[k + spec.J])
        out.append(CornerPoint("inner", k, x, y))
    return out


def twist_phi(K: int, p: int, q: int) -> tuple[int, int]:
    """(p, q) -> (Kp - q, p).  Needs p >= q >= 1 coprime."""
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    if p < q:
        raise RequiresPGreater(f"twist needs p >= q, got ({p},{q})")
    return (K * p - q, p)


def twist_psi(K: int, p: int, q: int) -> tuple[int, int]:
    """(p, q) -> (q + K(p - Kq), p - Kq).  Needs p/q > K.  Involution."""
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    if p <= K * q:
        raise RequiresSlopeAboveK(f"twist needs p/q > {K}, got ({p},{q})")
    return (q + K * (p - K * q), p - K * q)


def _fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def ghost_family(count: int) -> list[tuple[int, int, int]]:
    """(p_k, q_k, d_k) = (Fib_{4k+2}, Fib_{4k-2}, Fib_{4k}) for k = 1..count."""
    if count < 1:
        raise InvalidType("count must be >= 1")
    return [(_fib(4 * k + 2), _fib(4 * k - 2), _fib(4 * k)) for k in range(1, count + 1)]


def folding_value(x: Rat, ball_normalized: bool = False) -> Rat:
    """x/(x+1), or 3x/(x+1) in the ball normalization."""
    x = Fraction(x)
    if x <= 1:
        raise InvalidType("folding value defined for x > 1")
    v = x / (x + 1)
    return 3 * v if ball_normalized else v


def evaluate_staircase(spec: StaircaseSpec, x: Rat) -> Rat:
    """The staircase value max_k y_k * min(1, x/x_k) for rational
    1 <= x < accumulation point."""
    x = Fraction(x)
    if x < 1:
        raise InvalidType("staircase evaluated for x >= 1")
    if spec.acc.compare_rational(x) <= 0:
        raise BeyondAccumulation(f"{x} is at or beyond the accumulation point")
    best = Fraction(0)
    count = 4
    while True:
        corners = outer_corners(spec, count)
        for c in corners:
            best = max(best, c.y * min(Fraction(1), x / c.x))
        # contributions of corners beyond x decay like y/x' * x with
        # y/x' = q/(p+q) strictly decreasing, so once x_k > x the next
        # corner cannot beat the current best
        if corners[-1].x > x:
            return best
        count *= 2


def breakpoints(spec: StaircaseSpec, steps: int) -> list[Rat]:
    """x-values where evaluate_staircase changes slope: the merged outer and
    inner corner x-lists for the first `steps` steps."""
    xs = [c.x for c in outer_corners(spec, steps)]
    xs += [c.x for c in inner_corners(spec, steps)]
    return sorted(set(xs))
