"""Exact rational and lattice arithmetic primitives.

Everything here is exact: rationals are `fractions.Fraction` (arbitrary
precision, always in lowest terms with positive denominator), lattice
vectors are plain integer pairs.  No floating point enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction

# Lattice vectors live in Z^2, points in Q^2.  Plain tuples keep them
# hashable and cheap; all operations below are free functions.
LatticeVec = tuple[int, int]
RatVec = tuple[Rat, Rat]


class ZeroVector(ValueError):
    pass


class NotCoprime(ValueError):
    pass


class InvalidType(ValueError):
    pass


def rat(x, y=None) -> Rat:
    """Build a Fraction from ints, strings like '3/4', or another Fraction."""
    if y is not None:
        return Fraction(x, y)
    return Fraction(x)


def ratvec(x, y) -> RatVec:
    return (Fraction(x), Fraction(y))


def vec_add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vec_sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vec_scale(c, v):
    return (c * v[0], c * v[1])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def det2(u, v):
    """Determinant of the 2x2 matrix with columns u, v."""
    return u[0] * v[1] - u[1] * v[0]


def gcd_pair(a: int, b: int) -> int:
    """gcd(|a|, |b|), with gcd(0, 0) = 0."""
    return math.gcd(a, b)


def primitive(v) -> tuple[LatticeVec, int]:
    """Write a nonzero integer vector as c * p with p primitive, c > 0.

    Returns (p, c).
    """
    if v[0] == 0 and v[1] == 0:
        raise ZeroVector("cannot normalize the zero vector")
    c = math.gcd(int(v[0]), int(v[1]))
    return ((int(v[0]) // c, int(v[1]) // c), c)


def primitive_of_rational(v: RatVec) -> tuple[LatticeVec, Rat]:
    """Primitive integer direction of a nonzero rational vector.

    Returns (p, c) with v = c * p, c a positive rational (the affine
    length of the segment from 0 to v).
    """
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise ZeroVector("cannot normalize the zero vector")
    den = math.lcm(x.denominator, y.denominator)
    ix, iy = int(x * den), int(y * den)
    g = math.gcd(ix, iy)
    return ((ix // g, iy // g), Fraction(g, den))


def affine_length(u: RatVec, v: RatVec) -> Rat:
    """Lattice-normalized length of the segment [u, v]."""
    _, c = primitive_of_rational(vec_sub(v, u))
    return c


def cf_ordinary(p: int, q: int) -> list[int]:
    """Ordinary continued fraction of p/q, canonical (last entry >= 2 unless
    the expansion is the single entry [p])."""
    if p <= 0 or q <= 0:
        raise InvalidType("p, q must be positive")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    out = []
    while q:
        out.append(p // q)
        p, q = q, p % q
    # Euclid on coprime input ends ...a_k, 1] exactly when a trailing 1
    # sneaks in; merge it to make lengths canonical.
    if len(out) > 1 and out[-1] == 1:
        out.pop()
        out[-1] += 1
    return out


def cf_hirzebruch_jung(n: int, q: int) -> list[int]:
    """Hirzebruch-Jung (negative-regular) continued fraction of n/q:
    n/q = b1 - 1/(b2 - 1/(...)), all bi >= 2."""
    if not (0 < q < n):
        raise InvalidType(f"need 0 < q < n, got ({n},{q})")
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n},{q}) != 1")
    out = []
    while q:
        b = -(-n // q)  # ceil(n/q)
        out.append(b)
        n, q = q, b * q - n
    return out


def eval_hj(coeffs: list[int]) -> Rat:
    """Evaluate a Hirzebruch-Jung fraction back to a rational."""
    val = Fraction(coeffs[-1])
    for b in reversed(coeffs[:-1]):
        val = b - 1 / val
    return val


def stern_brocot_path(p: int, q: int) -> list[LatticeVec]:
    """Mediant-insertion path from the cone <(1,0),(0,1)> to the ray (p,q).

    One ray per blowup, in insertion order, ending at (p,q).  The length
    equals sum(cf_ordinary(p,q)).
    """
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    lo, hi = (1, 0), (0, 1)
    target = (p, q)
    path = []
    while True:
        med = (lo[0] + hi[0], lo[1] + hi[1])
        path.append(med)
        if med == target:
            return path
        # compare p/q against med as slopes q/p around the cone: the target
        # is on the lo side iff det(med, target) < 0
        if det2(med, target) < 0:
            hi = med
        else:
            lo = med


@dataclass(frozen=True)
class UnimodularAffine:
    """u -> A u + b with A an integer matrix of determinant +-1."""

    a11: int
    a12: int
    a21: int
    a22: int
    shift: RatVec = (Fraction(0), Fraction(0))

    def __post_init__(self):
        if abs(self.det) != 1:
            raise InvalidType("linear part must have determinant +-1")

    @property
    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def apply(self, u):
        return (
            self.a11 * u[0] + self.a12 * u[1] + self.shift[0],
            self.a21 * u[0] + self.a22 * u[1] + self.shift[1],
        )

    def apply_vector(self, u):
        """Apply only the linear part (directions, not points)."""
        return (self.a11 * u[0] + self.a12 * u[1], self.a21 * u[0] + self.a22 * u[1])

    def compose(self, other: "UnimodularAffine") -> "UnimodularAffine":
        """self after other: (self.compose(other))(u) = self(other(u))."""
        sx, sy = other.shift
        tx, ty = self.apply((sx, sy))
        return UnimodularAffine(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
            (tx, ty),
        )

    def inverse(self) -> "UnimodularAffine":
        d = self.det
        inv = UnimodularAffine(self.a22 * d, -self.a12 * d, -self.a21 * d, self.a11 * d)
        bx, by = inv.apply_vector(self.shift)
        return UnimodularAffine(inv.a11, inv.a12, inv.a21, inv.a22, (-bx, -by))

    @staticmethod
    def identity() -> "UnimodularAffine":
        return UnimodularAffine(1, 0, 0, 1)

    @staticmethod
    def translation(b) -> "UnimodularAffine":
        return UnimodularAffine(1, 0, 0, 1, (Fraction(b[0]), Fraction(b[1])))


def frame_to(e1: LatticeVec, target1: LatticeVec, e2: LatticeVec, target2: LatticeVec) -> UnimodularAffine:
    """The linear map sending e1 -> target1 and e2 -> target2.

    Requires det(e1,e2) = det(target1,target2) != 0 so the map is integral
    with determinant +1.
    """
    d = det2(e1, e2)
    if d == 0:
        raise InvalidType("frame vectors are collinear")
    if det2(target1, target2) != d:
        raise InvalidType("frame does not preserve the determinant")
    # columns of M = (target1 target2) * (e1 e2)^{-1}
    a11 = (target1[0] * e2[1] - target2[0] * e1[1])
    a12 = (target2[0] * e1[0] - target1[0] * e2[0])
    a21 = (target1[1] * e2[1] - target2[1] * e1[1])
    a22 = (target2[1] * e1[0] - target1[1] * e2[0])
    if any(x % d for x in (a11, a12, a21, a22)):
        raise InvalidType("frame is not integral")
    return UnimodularAffine(a11 // d, a12 // d, a21 // d, a22 // d)
