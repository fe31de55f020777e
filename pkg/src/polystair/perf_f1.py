"""Perfect-class arithmetic on the first Hirzebruch surface.

A coprime pair p > q with t^2 = p^2 - 6pq + q^2 + 8 a perfect square can
carry a class d*l - m*e with d = (3p + 3q + e*t)/8, m = (p + q + 3*e*t)/8
for a unique sign e, subject to both values being non-negative integers.
Such quadruples satisfy d^2 - m^2 = pq - 1 and 3d - m = p + q exactly.
The shift S(x) = (6x-1)/x and reflection R(x) = (6x-35)/(x-6) generate the
slope symmetries; they coincide with the K = 6 twists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import InvalidType, NotCoprime, Rat


class OutOfDomain(ValueError):
    pass


class InternalInconsistency(AssertionError):
    pass


@dataclass(frozen=True)
class PerfQuadruple:
    p: int
    q: int
    d: int
    m: int
    epsilon: int

    def __post_init__(self):
        if self.d * self.d - self.m * self.m != self.p * self.q - 1:
            raise InternalInconsistency("d^2 - m^2 != pq - 1")
        if 3 * self.d - self.m != self.p + self.q:
            raise InternalInconsistency("3d - m != p + q")

    @property
    def slope(self) -> Rat:
        return Fraction(self.p, self.q)


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def perf_candidate(p: int, q: int):
    """The perfect-class quadruple carried by (p, q), or None."""
    if not (p > q >= 1):
        raise InvalidType(f"need p > q >= 1, got ({p},{q})")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    t = _isqrt_exact(p * p - 6 * p * q + q * q + 8)
    if t is None:
        return None
    found = None
    for eps in (1, -1):
        num_d = 3 * p + 3 * q + eps * t
        num_m = p + q + 3 * eps * t
        if num_d % 8 or num_m % 8:
            continue
        d, m = num_d // 8, num_m // 8
        if d < 0 or m < 0:
            continue
        if found is not None and (d, m) != (found.d, found.m):
            raise InternalInconsistency(f"both signs integral for ({p},{q})")
        found = PerfQuadruple(p, q, d, m, eps)
    return found


def shift(x: Rat) -> Rat:
    """S(x) = (6x - 1)/x, defined for x > 1."""
    x = Fraction(x)
    if x <= 1:
        raise OutOfDomain("shift defined for x > 1")
    return (6 * x - 1) / x


def shift_pq(p: int, q: int) -> tuple[int, int]:
    if Fraction(p, q) <= 1:
        raise OutOfDomain("shift defined for p/q > 1")
    g = math.gcd(6 * p - q, p)
    return ((6 * p - q) // g, p // g)


def reflect(x: Rat) -> Rat:
    """R(x) = (6x - 35)/(x - 6), an involution fixing 7, for x > 6."""
    x = Fraction(x)
    if x <= 6:
        raise OutOfDomain("reflection defined for x > 6")
    return (6 * x - 35) / (x - 6)


def reflect_pq(p: int, q: int) -> tuple[int, int]:
    if Fraction(p, q) <= 6:
        raise OutOfDomain("reflection defined for p/q > 6")
    np, nq = 6 * p - 35 * q, p - 6 * q
    g = math.gcd(np, nq)
    return (np // g, nq // g)


def monotone_strand(count: int) -> list[PerfQuadruple]:
    """Perfect quadruples along the K=6, J=3 monotone staircase strand."""
    from .staircase import get_spec, outer_corners

    spec = get_spec("bl1")
    out = []
    for c in outer_corners(spec, count):
        quad = perf_candidate(c.p, c.q)
        if quad is None:
            raise InternalInconsistency(f"strand member ({c.p},{c.q}) not perfect")
        out.append(quad)
    return out


def generate_perf_region(x_max: Rat, depth: int) -> set[PerfQuadruple]:
    """Perfect quadruples with q <= depth and p/q <= x_max, closed under
    shift_pq and reflect_pq within the same region."""
    x_max = Fraction(x_max)
    found: dict[tuple[int, int], PerfQuadruple] = {}
    for q in range(1, depth + 1):
        p = q + 1
        while Fraction(p, q) <= x_max:
            if math.gcd(p, q) == 1:
                quad = perf_candidate(p, q)
                if quad is not None:
                    found[(p, q)] = quad
            p += 1
    frontier = list(found)
    while frontier:
        nxt = []
        for p, q in frontier:
            images = []
            if Fraction(p, q) > 1:
                images.append(shift_pq(p, q))
            if Fraction(p, q) > 6:
                images.append(reflect_pq(p, q))
            for ip, iq in images:
                if iq <= depth and Fraction(ip, iq) <= x_max and (ip, iq) not in found:
                    quad = perf_candidate(ip, iq)
                    if quad is not None:
                        found[(ip, iq)] = quad
                        nxt.append((ip, iq))
        frontier = nxt
    return set(found.values())
