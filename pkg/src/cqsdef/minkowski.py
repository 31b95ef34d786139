"""Height-one slices of the singularity cone and their admissible two-term
Minkowski decompositions, which classify the one-parameter toric
deformations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import Vec2, _xgcd
from .cqs import CqsModel


@dataclass(frozen=True)
class Segment:
    """The slice Q = {<v, w^h> = 1} ∩ sigma as an interval in the rank-one
    lattice induced on the slicing line.

    Canonical coordinates: the leftmost lattice point sits at 0 and the
    coordinate grows toward the endpoint on the (1,0)-ray (so beta lies in
    (-1, 0]).  origin and unit are the lattice points of N realizing the
    coordinates 0 and 1.
    """

    h: int
    beta: Fraction
    gamma: Fraction
    origin: Vec2
    unit: Vec2

    @property
    def length(self) -> Fraction:
        return self.gamma - self.beta

    @property
    def lattice_count(self) -> int:
        return math.floor(self.gamma) - math.ceil(self.beta) + 1

    def point_at(self, coord) -> Vec2:
        """The point of the slicing line at the given lattice coordinate."""
        return self.origin + coord * (self.unit - self.origin)

    def coord_of(self, pt: Vec2) -> Fraction:
        """Canonical coordinate of a point lying on the slicing line."""
        d = self.unit - self.origin
        diff = pt - self.origin
        c = Fraction(diff.x) / Fraction(d.x) if d.x != 0 else Fraction(diff.y) / Fraction(d.y)
        assert self.point_at(c) == pt, f"{pt} is not on the slicing line"
        return c

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "lattice_points": self.lattice_count,
        }


@lru_cache(maxsize=None)
def _segment_cached(n: int, q: int, h: int) -> Segment:
    from .cqs import cqs_new

    model = cqs_new(n, q)
    return _build_segment(model, h)


def segment(model: CqsModel, h: int) -> Segment:
    """The slice Q_sigma(w^h) in canonical coordinates, 2 <= h <= e-1."""
    if not 2 <= h <= model.e - 1:
        raise ValueError(f"h = {h} out of range 2..{model.e - 1}")
    return _segment_cached(model.n, model.q, h)


def _build_segment(model: CqsModel, h: int) -> Segment:
    w = model.wgen(h)
    w1, w2 = w.as_int_pair()
    n, q = model.n, model.q

    # Endpoints of the slice on the two boundary rays of sigma.
    p_gamma = Vec2(Fraction(1, w1), Fraction(0))
    denom = n * w2 - q * w1
    p_beta = Vec2(Fraction(-q, denom), Fraction(n, denom))

    # A lattice point on the slicing line and the primitive direction that
    # increases toward the (1,0)-ray endpoint.
    g, s, t = _xgcd(w1, w2)
    assert g == 1
    base = Vec2(s, t)
    direction = Vec2(w2, -w1)

    # Coordinate functional: u with <direction, u> = 1 and <w, u> = 0-free
    # normalization is not needed; measure relative to base along direction.
    def coord(pt: Vec2) -> Fraction:
        diff = pt - base
        if direction.x != 0:
            return Fraction(diff.x) / direction.x
        return Fraction(diff.y) / direction.y

    c_beta, c_gamma = coord(p_beta), coord(p_gamma)
    assert c_beta < c_gamma
    shift = math.ceil(c_beta)
    beta, gamma = c_beta - shift, c_gamma - shift
    origin = base + shift * direction

    length_formula = Fraction(n, w1 * (w2 * n - w1 * q))
    if gamma - beta != length_formula:
        raise AssertionError(
            f"slice length mismatch for (n,q)=({n},{q}) h={h}: "
            f"geometric {gamma - beta} vs formula {length_formula}"
        )
    return Segment(h=h, beta=beta, gamma=gamma, origin=origin, unit=origin + direction)


def segment_length(model: CqsModel, h: int) -> Fraction:
    """Length n / (w1 * (w2*n - w1*q)) of the slice at w^h."""
    w1, w2 = model.wgen(h).as_int_pair()
    return Fraction(model.n, w1 * (w2 * model.n - w1 * model.q))


def lattice_point_count(model: CqsModel, h: int) -> int:
    """Number of lattice points in the closed slice; a_h - 1 at interior h."""
    return segment(model, h).lattice_count


@dataclass(frozen=True)
class Decomposition:
    """An admissible two-term Minkowski decomposition of Q_sigma(w^h).

    kind "D": Q = (beta, gamma - p*d) + p*(0, d).
    kind "Dbar": Q = (beta, E) + (0, gamma - E) with E = ceil(beta + #(Q) - d),
    only at interior h and with p = 1.
    """

    kind: str  # "D" | "Dbar"
    h: int
    p: int
    d: int
    s0: tuple[Fraction, Fraction]
    s1: tuple[Fraction, Fraction]

    @property
    def label(self) -> str:
        if self.kind == "D":
            return f"pi_{{{self.h},{self.p}}}^{self.d}"
        return f"pibar_{{{self.h}}}^{self.d}"

    def validate(self, seg: Segment) -> None:
        """Re-check the admissibility invariants against the slice."""
        b0, g0 = self.s0
        b1, g1 = self.s1
        assert b0 <= g0 and b1 <= g1
        assert b0 + b1 == seg.beta and g0 + g1 == seg.gamma, "summands do not add up"
        if self.p == 1:
            assert any(x.denominator == 1 for x in (b0, b1)), "no lattice left endpoint"
            assert any(x.denominator == 1 for x in (g0, g1)), "no lattice right endpoint"
        else:
            assert b1.denominator == 1 and g1.denominator == 1
            assert (g1 - b1) % self.p == 0
        if self.kind == "Dbar":
            assert self.p == 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "h": self.h,
            "p": self.p,
            "d": self.d,
            "summands": [
                [str(self.s0[0]), str(self.s0[1])],
                [str(self.s1[0]), str(self.s1[1])],
            ],
        }


def decomposition_D(seg: Segment, p: int, d: int) -> Decomposition:
    pd = p * d
    if not 0 <= pd <= seg.length:
        raise ValueError(f"p*d = {pd} exceeds slice length {seg.length}")
    return Decomposition(
        kind="D",
        h=seg.h,
        p=p,
        d=d,
        s0=(seg.beta, seg.gamma - pd),
        s1=(Fraction(0), Fraction(pd)),
    )


def decomposition_Dbar(seg: Segment, d: int) -> Decomposition:
    cnt = seg.lattice_count
    if not 1 <= d <= cnt:
        raise ValueError(f"d = {d} out of range 1..{cnt}")
    e_cut = Fraction(math.ceil(seg.beta + cnt - d))
    return Decomposition(
        kind="Dbar",
        h=seg.h,
        p=1,
        d=d,
        s0=(seg.beta, e_cut),
        s1=(Fraction(0), seg.gamma - e_cut),
    )


def enum_decompositions(model: CqsModel) -> list[Decomposition]:
    """All admissible two-term decompositions over all degrees.

    D-decompositions run over 1 <= p < a_h with p*d bounded by the slice
    length; the Dbar family exists only at interior h (at the boundary
    indices each Dbar coincides with a D up to lattice shift).
    """
    out: list[Decomposition] = []
    for h in range(2, model.e):
        seg = segment(model, h)
        a_h = model.a(h)
        for p in range(1, a_h):
            d = 1
            while p * d <= seg.length:
                out.append(decomposition_D(seg, p, d))
                d += 1
        if 3 <= h <= model.e - 2:
            for d in range(1, seg.lattice_count + 1):
                out.append(decomposition_Dbar(seg, d))
    for dec in out:
        dec.validate(segment(model, dec.h))
    return out
