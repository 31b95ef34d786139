"""Exact 2D lattice primitives: vectors, oriented cones, Hirzebruch-Jung
continued fractions, and Hilbert bases of two-dimensional cones.

All arithmetic is exact; rational numbers are ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

Rat = Union[int, Fraction]


def frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Vec2:
    """A point of the plane with exact rational coordinates."""

    x: Rat
    y: Rat

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __rmul__(self, c: Rat) -> "Vec2":
        return Vec2(c * self.x, c * self.y)

    def dot(self, other: "Vec2") -> Rat:
        return self.x * other.x + self.y * other.y

    def det(self, other: "Vec2") -> Rat:
        """Signed area det(self, other) = x1*y2 - y1*x2."""
        return self.x * other.y - self.y * other.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return frac(self.x).denominator == 1 and frac(self.y).denominator == 1

    def as_int_pair(self) -> tuple[int, int]:
        if not self.is_integral():
            raise ValueError(f"not a lattice point: {self}")
        return int(self.x), int(self.y)

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


def primitive(v: Vec2) -> Vec2:
    """Divide an integral vector by the gcd of its coordinates."""
    if v.is_zero():
        raise ValueError("zero vector has no primitive representative")
    a, b = v.as_int_pair()
    g = math.gcd(a, b)
    return Vec2(a // g, b // g)


def primitive_direction(v: Vec2) -> Vec2:
    """Primitive lattice vector on the ray through a rational point v != 0."""
    if v.is_zero():
        raise ValueError("zero vector has no direction")
    fx, fy = frac(v.x), frac(v.y)
    m = (fx.denominator * fy.denominator) // math.gcd(fx.denominator, fy.denominator)
    return primitive(Vec2(int(fx * m), int(fy * m)))


@dataclass(frozen=True)
class Cone2:
    """A strictly convex oriented 2D cone with primitive integral rays.

    The stored rays satisfy det(ray1, ray2) > 0; input rays are scaled to
    primitive vectors and reordered if needed.
    """

    ray1: Vec2
    ray2: Vec2

    def __init__(self, ray1: Vec2, ray2: Vec2):
        r1, r2 = primitive_direction(ray1), primitive_direction(ray2)
        d = r1.det(r2)
        if d == 0:
            raise ValueError("rays are collinear; cone is not strictly convex")
        if d < 0:
            r1, r2 = r2, r1
        object.__setattr__(self, "ray1", r1)
        object.__setattr__(self, "ray2", r2)

    def index(self) -> int:
        """Index of the sublattice spanned by the rays (the ray determinant)."""
        return int(self.ray1.det(self.ray2))

    def contains(self, v: Vec2) -> bool:
        return self.ray1.det(v) >= 0 and v.det(self.ray2) >= 0

    def contains_strictly(self, v: Vec2) -> bool:
        return self.ray1.det(v) > 0 and v.det(self.ray2) > 0


def dual_cone(cone: Cone2) -> Cone2:
    """The dual cone {u : <u, v> >= 0 for all v in cone}."""
    r1, r2 = cone.ray1, cone.ray2
    u1 = Vec2(-r1.y, r1.x)   # vanishes on ray1, positive on ray2
    u2 = Vec2(r2.y, -r2.x)   # vanishes on ray2, positive on ray1
    return Cone2(u1, u2)


@dataclass(frozen=True)
class ContinuedFraction:
    """A Hirzebruch-Jung continued fraction [c1,...,ck] = c1 - 1/[c2,...,ck]."""

    coeffs: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)


def cf_expand(num: int, den: int) -> ContinuedFraction:
    """Expand num/den > 1 (in lowest terms) as [c1,...,ck] with all ci >= 2."""
    if den < 1 or num <= den:
        raise ValueError(f"{num}/{den} is not of the form num > den >= 1")
    if math.gcd(num, den) != 1:
        raise ValueError(f"{num}/{den} is not in lowest terms")
    coeffs = []
    while den > 0:
        c = -(-num // den)  # ceiling division
        coeffs.append(c)
        num, den = den, c * den - num
    return ContinuedFraction(tuple(coeffs))


def cf_eval(cf: Union[ContinuedFraction, Sequence[int]]) -> Optional[Fraction]:
    """Evaluate a continued fraction; None when a zero denominator occurs."""
    coeffs = tuple(cf)
    if not coeffs:
        return None
    val = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        if val == 0:
            return None
        val = c - 1 / val
    return val


def _extend_to_unimodular(r: Vec2) -> tuple[tuple[int, int], tuple[int, int]]:
    """Rows of a unimodular matrix U with U*r = (1, 0), for primitive r."""
    a, b = r.as_int_pair()
    g, s, t = _xgcd(a, b)
    if g < 0:
        g, s, t = -g, -s, -t
    assert g == 1
    return (s, t), (-b, a)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def cone_normal_form(cone: Cone2) -> tuple[int, int]:
    """Parameters (n, q) such that the cone is lattice-isomorphic to
    cone((1,0), (-q, n)) with 0 <= q < n, gcd(n, q) = 1.  n = 1 means smooth.
    """
    n = cone.index()
    if n == 1:
        return 1, 0
    (s, t), _ = _extend_to_unimodular(cone.ray1)
    x2, y2 = cone.ray2.as_int_pair()
    x = s * x2 + t * y2
    q = (-x) % n
    return n, q


def hilbert_basis_2d(cone: Cone2) -> list[Vec2]:
    """Minimal generators of cone ∩ Z^2, swept from the ray2 side to ray1.

    Consecutive triples v_{i-1}, v_i, v_{i+1} satisfy v_{i-1}+v_{i+1} = c*v_i
    with integers c >= 2; the staircase is produced by the continued fraction
    expansion of the cone's normal-form parameters.
    """
    n = cone.index()
    if n == 1:
        return [cone.ray2, cone.ray1]
    row1, row2 = _extend_to_unimodular(cone.ray1)
    x2, y2 = cone.ray2.as_int_pair()
    x = row1[0] * x2 + row1[1] * y2
    m = row2[0] * x2 + row2[1] * y2
    assert m == n
    q = (-x) % n
    shear = (-q - x) // n  # (x + shear*n, n) == (-q, n)

    # Staircase in normal form: v0=(1,0), v1=(0,1), v_{j+1} = c_j v_j - v_{j-1}.
    pts = [(1, 0), (0, 1)]
    for c in cf_expand(n, q):
        vx = c * pts[-1][0] - pts[-2][0]
        vy = c * pts[-1][1] - pts[-2][1]
        pts.append((vx, vy))
    assert pts[-1] == (-q, n)

    # Undo the shear and the unimodular change of basis.
    # U = [[s, t], [-b, a]] has inverse [[a, -t], [b, s]]; the shear
    # [[1, k], [0, 1]] has inverse [[1, -k], [0, 1]].
    (s, t), (negb, a) = row1, row2
    b = -negb
    out = []
    for px, py in pts:
        ux, uy = px - shear * py, py
        out.append(Vec2(a * ux - t * uy, b * ux + s * uy))
    assert out[0] == cone.ray1 and out[-1] == cone.ray2
    out.reverse()
    return out
