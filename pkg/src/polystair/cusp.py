"""Puiseux characteristics, blowup transforms, and resolution bookkeeping
for plane curve cusps.

A cusp branch is recorded either by its Puiseux pairs (n_1,d_1),...,(n_g,d_g)
or by the characteristic (m; b_1,...,b_g) with m = d_1...d_g and
b_i = n_i * d_{i+1}...d_g.  Blowing up transforms the characteristic by a
three-case rule; the residual data after the branch becomes smooth is kept
as (1; t), meaning a smooth branch with contact order t to the last
exceptional sphere, and each further blowup decrements t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import InvalidType, NotCoprime, cf_ordinary, det2, stern_brocot_path


class InvalidChar(ValueError):
    pass


class InvalidPairs(ValueError):
    pass


class Inconsistent(ValueError):
    pass


@dataclass(frozen=True)
class PuiseuxChar:
    m: int
    betas: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise InvalidChar("multiplicity must be positive")
        if self.m == 1:
            # smooth branch; at most one entry recording contact order
            if len(self.betas) > 1 or any(b < 1 for b in self.betas):
                raise InvalidChar(f"invalid tangential data (1;{self.betas})")
            return
        if not self.betas:
            raise InvalidChar("singular branch needs at least one exponent")
        if self.betas[0] <= self.m:
            raise InvalidChar("need beta_1 > m")
        if any(b2 <= b1 for b1, b2 in zip(self.betas, self.betas[1:])):
            raise InvalidChar("exponents must be strictly increasing")
        e = self.m
        for b in self.betas:
            if b % e == 0:
                raise InvalidChar(f"exponent {b} divisible by gcd level {e}")
            e2 = math.gcd(e, b)
            if e2 >= e:
                raise InvalidChar("gcd chain must strictly decrease")
            e = e2
        if e != 1:
            raise InvalidChar("gcd chain must terminate at 1")

    @property
    def is_smooth(self) -> bool:
        return self.m == 1 and (not self.betas or self.betas[0] == 1)

    @property
    def is_tangential(self) -> bool:
        return self.m == 1 and bool(self.betas)

    def __str__(self):
        return f"({self.m};{','.join(map(str, self.betas))})"


SMOOTH = PuiseuxChar(1, ())


def pairs_to_char(pairs) -> PuiseuxChar:
    """(n_1,d_1),...,(n_g,d_g) -> (m; b_1..b_g)."""
    pairs = [(int(n), int(d)) for n, d in pairs]
    if not pairs:
        raise InvalidPairs("need at least one pair")
    for i, (n, d) in enumerate(pairs):
        if n < 1 or d < 1:
            raise InvalidPairs("pair entries must be positive")
        if math.gcd(n, d) != 1:
            raise InvalidPairs(f"gcd{(n, d)} != 1")
        if i > 0 and d < 2:
            raise InvalidPairs("d_i >= 2 beyond the first pair")
    m = math.prod(d for _, d in pairs)
    betas = []
    for i, (n, _) in enumerate(pairs):
        tail = math.prod(d for _, d in pairs[i + 1 :])
        betas.append(n * tail)
    # the slopes n_i / (d_1...d_i) must strictly increase
    acc = 1
    prev = Fraction(0)
    for n, d in pairs:
        acc *= d
        s = Fraction(n, acc)
        if s <= prev:
            raise InvalidPairs("pair slopes must strictly increase")
        prev = s
    return PuiseuxChar(m, tuple(betas))


def char_to_pairs(char: PuiseuxChar) -> list[tuple[int, int]]:
    """Inverse of pairs_to_char: d_i = e_{i-1}/e_i, n_i = beta_i/e_i."""
    if char.m == 1:
        if char.is_tangential:
            return [(char.betas[0], 1)]
        raise InvalidChar("smooth branch has no pairs")
    pairs = []
    e = char.m
    for b in char.betas:
        e2 = math.gcd(e, b)
        pairs.append((b // e2, e // e2))
        e = e2
    return pairs


def blowup_char(char: PuiseuxChar) -> PuiseuxChar:
    """Puiseux characteristic of the proper transform after one blowup.

    Tangential data (1;t) decrements to (1;t-1); (1;1) becomes the smooth
    marker (1;).
    """
    if char.is_smooth and not char.betas:
        raise InvalidChar("branch is already smooth and transverse")
    m = char.m
    if m == 1:
        t = char.betas[0]
        return SMOOTH if t == 1 else PuiseuxChar(1, (t - 1,))
    b1 = char.betas[0]
    if b1 > 2 * m:
        return PuiseuxChar(m, tuple(b - m for b in char.betas))
    if b1 == 2 * m:
        raise InvalidChar("beta_1 = 2m violates the gcd-chain invariant")
    mp = b1 - m
    rest = tuple(b - b1 + m for b in char.betas[1:])
    if m % mp != 0:
        return PuiseuxChar(mp, (m,) + rest)
    if not rest:
        # valid chars force m' = b1 - m = 1 here; the transform is smooth
        # with contact order m to the exceptional sphere
        assert mp == 1
        return PuiseuxChar(1, (m,))
    return PuiseuxChar(mp, rest)


def minimal_resolution(char: PuiseuxChar) -> tuple[list[PuiseuxChar], list[int]]:
    """Blow up until the branch has multiplicity one.

    Returns (chain of characteristics starting at char, multiplicities of
    the points blown up).
    """
    chain = [char]
    mults = []
    cur = char
    while cur.m > 1:
        mults.append(cur.m)
        cur = blowup_char(cur)
        chain.append(cur)
    return chain, mults


def multiplicity_sequence(p: int, q: int) -> list[int]:
    """Multiplicities of the normal-crossing resolution of a (p,q) cusp
    (subtractive Euclid, trailing 1s included); sum of squares is p*q."""
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    a, b = max(p, q), min(p, q)
    out = []
    while b > 0:
        out.append(b)
        a, b = max(a - b, b), min(a - b, b)
    return out


@dataclass(frozen=True)
class ResolutionChain:
    """Exceptional data of the toric normal-crossing resolution of (p,q)."""

    p: int
    q: int
    rays: tuple[tuple[int, int], ...]  # insertion (blowup) order
    self_intersections: tuple[int, ...]  # same order; exactly one -1 (last)
    multiplicity_sequence: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.rays)

    def fan_order(self) -> list[tuple[tuple[int, int], int]]:
        """(ray, self-intersection) sorted by angle inside the first
        quadrant; adjacency in this order is sphere-chain adjacency."""
        pairs = sorted(
            zip(self.rays, self.self_intersections),
            key=lambda t: Fraction(t[0][1], t[0][0]) if t[0][0] else Fraction(10**18),
        )
        return pairs


def ncr_chain(p: int, q: int) -> ResolutionChain:
    """Normal-crossing resolution data of a (p,q) cusp, p > q >= 1 coprime."""
    if not (p > q >= 1):
        raise InvalidType(f"need p > q >= 1, got ({p},{q})")
    path = stern_brocot_path(p, q)
    full = [(1, 0)] + sorted(path, key=lambda v: Fraction(v[1], v[0])) + [(0, 1)]
    selfint = {}
    for i in range(1, len(full) - 1):
        v = full[i]
        s = (full[i - 1][0] + full[i + 1][0], full[i - 1][1] + full[i + 1][1])
        # neighbors satisfy v_prev + v_next = b * v with b = -selfint
        assert s[0] % v[0] == 0 if v[0] else s[0] == 0
        b = s[0] // v[0] if v[0] else s[1] // v[1]
        assert s == (b * v[0], b * v[1])
        selfint[v] = -b
    mults = multiplicity_sequence(p, q)
    assert len(mults) == len(path) == sum(cf_ordinary(p, q))
    assert sum(m * m for m in mults) == p * q
    return ResolutionChain(
        p, q, tuple(path), tuple(selfint[v] for v in path), tuple(mults)
    )


def nc_blowup_count(p: int, q: int) -> int:
    """Number of blowups in the normal-crossing resolution of (p,q)."""
    return sum(cf_ordinary(max(p, q), min(p, q)))


def self_intersection_drop(char: PuiseuxChar, c_squared: int) -> int:
    """Self-intersection after the L blowups that normal-cross the first
    Puiseux pair: c_squared - sum of the first L multiplicities squared.

    For the one-pair characteristic (q;p) the drop is p*q; for (kq;kp,kp+1)
    it is k^2*p*q.
    """
    pairs = char_to_pairs(char)
    n1, d1 = pairs[0]
    L = nc_blowup_count(n1, d1)
    total = 0
    cur = char
    for _ in range(L):
        total += cur.m * cur.m
        cur = blowup_char(cur)
    return c_squared - total


def curve_index(p: int, q: int, c1: int) -> int:
    """2*c1 - 2p - 2q, the deformation index of a (p,q)-cusp curve with
    first Chern number c1."""
    return 2 * c1 - 2 * p - 2 * q


def double_point_count(d: int, p: int, q: int) -> int:
    """(d-1)(d-2)/2 - (p-1)(q-1)/2 ordinary double points of a rational
    degree-d plane curve with one (p,q) cusp."""
    nodes = (d - 1) * (d - 2) // 2 - (p - 1) * (q - 1) // 2
    if ((d - 1) * (d - 2) - (p - 1) * (q - 1)) % 2:
        raise Inconsistent("genus bookkeeping is not integral")
    if nodes < 0:
        raise Inconsistent(f"no such curve: negative node count {nodes}")
    return nodes
